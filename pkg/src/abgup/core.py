"""Shared parameter containers, flux decomposition and deformed-momentum utilities.

This module holds the pieces every other module leans on:

* ``PhysicalParams``     -- the (hbar, beta, mass, charge, k) bundle.
* ``flux_split``         -- integer/fractional decomposition of the flux parameter.
* ``gup_bound``          -- deformed lower bound on the position uncertainty.
* ``minimal_length``     -- the minimum of that bound over all momentum spreads.
* ``momentum_map``       -- the cubic map from auxiliary to physical momentum.
* ``commutator_residual_1d`` -- grid check that the deformed commutator closes.

The error taxonomy lives here as well so that every module can raise the same
exception types without circular imports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


# =====================================================================
# Error taxonomy
# =====================================================================

class DomainValidationError(ValueError):
    """An input is outside the domain an operation is defined on."""


class SingularConfigError(DomainValidationError):
    """The configuration sits on (or hugs) a pole of the closed forms.

    Typical trigger: an integer flux parameter, or a Bessel order within the
    integer-order guard band where 1/sin(pi*nu) factors blow up.
    """


class ForwardSingularityError(DomainValidationError):
    """The scattering angle is inside the forward/backward margin.

    The amplitudes carry a 1/cos(phi/2) factor, so angles within a margin of
    +-pi (and, for the partial-wave series, of 0) are rejected rather than
    evaluated to garbage.
    """


class PoleError(DomainValidationError):
    """A special function was requested exactly on (or too close to) a pole."""


class AccuracyError(RuntimeError):
    """A numerical routine could not reach its accuracy target.

    Raised instead of silently returning a value that fails the requested
    tolerance (series that stop converging, extrapolation ladders that do not
    settle, quadratures whose error estimate stays too large).
    """


# =====================================================================
# Parameter containers
# =====================================================================

@dataclass(frozen=True)
class PhysicalParams:
    """Physical constants for one run.

    Parameters
    ----------
    hbar : float
        Planck constant (default 1; every figure-style run uses hbar = 1).
    beta : float
        Deformation parameter of the commutator, >= 0. beta = 0 recovers
        ordinary quantum mechanics / Newtonian dynamics.
    mass : float
        Particle mass M.
    charge : float
        Particle charge q.
    k : float
        Incident wave number.
    """

    hbar: float = 1.0
    beta: float = 0.0
    mass: float = 1.0
    charge: float = 1.0
    k: float = 1.0

    def __post_init__(self) -> None:
        if not (self.hbar > 0.0):
            raise DomainValidationError(f"hbar must be positive, got {self.hbar}")
        if self.beta < 0.0:
            raise DomainValidationError(f"beta must be >= 0, got {self.beta}")
        if not (self.mass > 0.0):
            raise DomainValidationError(f"mass must be positive, got {self.mass}")
        if not (self.k > 0.0):
            raise DomainValidationError(f"k must be positive, got {self.k}")


@dataclass(frozen=True)
class FluxSplit:
    """Flux parameter split into integer and fractional parts.

    ``n_part`` is an integer and ``gamma_part`` lies in [0, 1), always.
    The reassembly ``n_part + gamma_part == alpha_prime`` is exact in
    floating point except for alpha_prime in (-0.5, 0), the one regime
    where the subtraction ``alpha_prime - n_part`` must round (everywhere
    else it is exact by the Sterbenz lemma); there the reassembly is off
    by at most 2^-54, and an alpha_prime within half an ulp below 0 snaps
    to gamma_part = 0.0 to preserve the range invariant.
    """

    alpha_prime: float
    n_part: int
    gamma_part: float


def flux_split(alpha_prime: float) -> FluxSplit:
    """Split the flux parameter into floor and fractional part.

    Parameters
    ----------
    alpha_prime : float
        The (dimensionless) flux parameter. Any finite real value is valid.

    Returns
    -------
    FluxSplit
        ``n_part = floor(alpha_prime)``, ``gamma_part = alpha_prime - n_part``
        with ``gamma_part`` the correctly rounded fractional part, always in
        [0, 1). Reassembly is exact outside alpha_prime in (-0.5, 0) and off
        by at most 2^-54 inside it (see the FluxSplit docstring).
    """
    a = float(alpha_prime)
    if not math.isfinite(a):
        raise DomainValidationError(f"alpha_prime must be finite, got {a}")
    n = math.floor(a)
    gamma = a - n
    if gamma >= 1.0:  # can only happen through floating-point edge rounding
        n += 1
        gamma = a - n
        if gamma < 0.0:
            # a sits within half an ulp below the integer n; keeping the
            # range invariant beats keeping exact reassembly here
            gamma = 0.0
    return FluxSplit(alpha_prime=a, n_part=int(n), gamma_part=gamma)


# =====================================================================
# Uncertainty bound and minimal length
# =====================================================================

def gup_bound(delta_p: float, params: PhysicalParams) -> float:
    """Deformed lower bound on the position uncertainty.

    For a momentum spread ``delta_p`` the product inequality
    ``dx * dp >= (hbar/2) (1 + 3 beta dp^2)`` gives

        dx  >=  (hbar/2) (1/dp + 3 beta dp)

    which is what this returns.

    Parameters
    ----------
    delta_p : float
        Momentum uncertainty, > 0.
    params : PhysicalParams
        Supplies hbar and beta.

    Returns
    -------
    float
        The lower bound on the position uncertainty.
    """
    dp = float(delta_p)
    if not (dp > 0.0) or not math.isfinite(dp):
        raise DomainValidationError(f"delta_p must be positive and finite, got {dp}")
    return 0.5 * params.hbar * (1.0 / dp + 3.0 * params.beta * dp)


def minimal_length(params: PhysicalParams) -> float:
    """Smallest achievable position uncertainty.

    Minimising ``gup_bound`` over delta_p puts the optimum at
    ``delta_p = 1/sqrt(3 beta)`` and yields

        dx_min = hbar * sqrt(3 beta)

    For beta = 0 the bound has no minimum (dx can shrink indefinitely) and
    0 is returned.
    """
    if params.beta == 0.0:
        return 0.0
    return params.hbar * math.sqrt(3.0 * params.beta)


# =====================================================================
# Momentum map
# =====================================================================

def momentum_map(p, beta: float):
    """Map auxiliary momentum to physical momentum, ``P = p (1 + beta |p|^2)``.

    Parameters
    ----------
    p : array_like
        Momentum vector (any dimension) or a batch of vectors in the last
        axis. A scalar is treated as a 1-d momentum.
    beta : float
        Deformation parameter.

    Returns
    -------
    ndarray or float
        Same shape as ``p``.

    Notes
    -----
    The map is odd and, for beta >= 0, strictly monotone in |p|; both
    properties are relied on by tests. No inverse is provided since the
    library only needs the forward direction (first order in beta means the
    inverse would be ``P (1 - beta |P|^2) + O(beta^2)`` anyway).
    """
    if beta < 0.0:
        raise DomainValidationError(f"beta must be >= 0, got {beta}")
    arr = np.asarray(p, dtype=float)
    if arr.ndim == 0:
        val = float(arr)
        return val * (1.0 + beta * val * val)
    p2 = np.sum(arr * arr, axis=-1, keepdims=True)
    return arr * (1.0 + beta * p2)


# =====================================================================
# Discrete commutator residual
# =====================================================================

def _central_d1(values: np.ndarray, spacing: float) -> np.ndarray:
    """Central first difference; output is 2 samples shorter (one per edge)."""
    return (values[2:] - values[:-2]) / (2.0 * spacing)


def _central_d2(values: np.ndarray, spacing: float) -> np.ndarray:
    """Central second difference; output is 2 samples shorter."""
    return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / (spacing * spacing)


def commutator_residual_1d(
    grid_points: int,
    spacing: float,
    beta: float,
    params: PhysicalParams,
) -> float:
    """Grid residual of the deformed commutator ``[X, P] = i hbar (1 + 3 beta p^2)``.

    The 1-d deformed momentum operator ``P = p (1 + beta p^2)`` with
    ``p = -i hbar d/dx`` is discretised with composed central differences,

        P_h f = -i hbar D1 f + i beta hbar^3 D1(D1(D1 f)))

    and the commutator ``x (P_h f) - P_h (x f)`` is compared against the
    discretised target ``i hbar f + 3 i beta hbar (-hbar^2 D2 f)`` on a fixed
    polynomial test panel {x^2, x^3, x^4} over a centred grid.

    Parameters
    ----------
    grid_points : int
        Number of grid samples, >= 16.
    spacing : float
        Grid spacing h, > 0.
    beta : float
        Deformation parameter, >= 0 (overrides params.beta so the check can
        be run at several beta without rebuilding params).
    params : PhysicalParams
        Supplies hbar.

    Returns
    -------
    float
        The scale-invariant residual: the max interior residual magnitude
        divided by ``hbar * max|f|`` over the interior, maximised over the
        test panel. Normalising by the function scale keeps the answer
        independent of the (arbitrary) normalisation of the test functions;
        the raw residual for f = x^2 is exactly ``hbar h^2`` regardless of
        grid extent, so only the normalised number is meaningful as an
        accuracy statement.

    Notes
    -----
    The residual scales as O(h^2): halving the spacing over the *same
    physical extent* (i.e. doubling grid_points while halving spacing)
    divides the result by ~4.
    """
    n = int(grid_points)
    if n < 16:
        raise DomainValidationError(f"grid_points must be >= 16, got {n}")
    h = float(spacing)
    if not (h > 0.0):
        raise DomainValidationError(f"spacing must be positive, got {h}")
    if beta < 0.0:
        raise DomainValidationError(f"beta must be >= 0, got {beta}")

    hbar = params.hbar
    x = (np.arange(n) - 0.5 * (n - 1)) * h

    def apply_p(values: np.ndarray) -> tuple[np.ndarray, int]:
        """Apply P_h; returns (array, margin) where margin samples are lost per edge."""
        d1 = _central_d1(values, h)
        d3 = _central_d1(_central_d1(d1, h), h)
        out = -1j * hbar * d1[2:-2] + 1j * beta * hbar**3 * d3
        return out, 3

    worst = 0.0
    for power in (2, 3, 4):
        f = x**power
        pf, margin = apply_p(f)
        pxf, _ = apply_p(x * f)
        xi = x[margin:-margin]
        fi = f[margin:-margin]
        commutator = xi * pf - pxf
        d2 = _central_d2(f, h)[margin - 1 : -(margin - 1)]
        target = 1j * hbar * fi - 3j * beta * hbar**3 * d2
        resid = np.max(np.abs(commutator - target))
        scale = hbar * max(np.max(np.abs(fi)), 1e-300)
        worst = max(worst, resid / scale)
    return float(worst)
