"""Scattering amplitudes and cross sections for a magnetic flux line.

Two independent routes to the first-order amplitude correction are kept
deliberately separate:

* ``f1_series``  -- Abel-regularized partial-wave sum over the per-mode
                    asymptotic constants (the brute-force oracle);
* ``f1_amp``     -- the closed hypergeometric form assembled by ``g_fn``.

``dsigma`` evaluates the differential cross section per unit angle, either
as the squared modulus of the corrected amplitude or in the form linearized
in the deformation parameter; ``dsigma_integer_limits`` and ``width`` give
the one-sided limits and jump at integer flux. ``symmetry_probe`` measures
how the deformation breaks the two mirror symmetries of the undeformed
cross section.

Conventions: the flux parameter splits as alpha_prime = N + gamma with
N = floor(alpha_prime) and gamma in [0, 1). The angle phi is reduced to the
principal window (-pi, pi]; the amplitudes diverge at phi = +-pi (the
forward direction, which also carries an excluded delta-function term whose
weight is 1 - cos(pi alpha_prime)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AccuracyError,
    DomainValidationError,
    ForwardSingularityError,
    PhysicalParams,
    PoleError,
    flux_split,
)
from .specfun import gamma_fn, hyp2f1_11

_PI_MARGIN = 1e-6          # amplitude evaluations: keep |phi| away from pi
_SERIES_PHI_MARGIN = 1e-3  # series route additionally needs phi away from 0
_ENDPOINT_GAMMA = 1e-4     # dsigma routes to the integer-limit formulas inside this band
_INTEGER_TOL = 1e-6        # non-integer flux guard for the amplitude corrections
_ABEL_R_DEFAULT = (0.99, 0.995, 0.9975)
_TAIL_FLOOR = 1e-18        # truncate Abel tails at this fraction of the leading term
_TAIL_CAP = 400_000        # hard cap on tail length (hit only for r very close to 1)
_LADDER_REL_TOL = 1e-3     # extrapolation correction above this flags non-convergence


# =====================================================================
# Angle and parameter helpers
# =====================================================================

def _principal(phi: float) -> float:
    """Reduce an angle to the principal window (-pi, pi].

    The assembled amplitudes are 2 pi periodic (the half-angle factors and
    the e^{-i N phi} phases flip sign together), so the reduction is exact.
    """
    t = math.fmod(float(phi), 2.0 * math.pi)
    if t <= -math.pi:
        t += 2.0 * math.pi
    elif t > math.pi:
        t -= 2.0 * math.pi
    return t


def _check_away_from_pi(phi: float, margin: float) -> float:
    t = _principal(phi)
    if math.pi - abs(t) < margin:
        raise ForwardSingularityError(
            f"phi = {phi} is within {margin} of the forward direction +-pi, "
            "where the amplitude diverges and a delta-function term "
            "(weight 1 - cos(pi alpha')) is excluded from the pointwise value"
        )
    return t


def _sqrt_2pi_ik(k: float) -> complex:
    """Principal square root of 2 pi i k (k > 0)."""
    return math.sqrt(2.0 * math.pi * k) * cmath.exp(0.25j * math.pi)


def _require_noninteger(alpha_prime: float, what: str) -> None:
    if abs(alpha_prime - round(alpha_prime)) < _INTEGER_TOL:
        raise PoleError(
            f"{what}: alpha' = {alpha_prime} is within {_INTEGER_TOL} of an "
            "integer, where the correction amplitude has a pole"
        )


# =====================================================================
# Zeroth order amplitude
# =====================================================================

def f0_amp(phi: float, alpha_prime: float, k: float = 1.0, margin: float = _PI_MARGIN) -> complex:
    """Unperturbed scattering amplitude.

        f0 = (1/sqrt(2 pi i k)) (-i) e^{-iN(phi-pi)} sin(pi alpha')
             e^{-i phi/2} / cos(phi/2)

    The sine is evaluated as (-1)^N sin(pi gamma) with the exact fractional
    split, so integer flux returns exactly 0 (the reflectionless case).

    Parameters
    ----------
    phi : float
        Observation angle; any real value, reduced mod 2 pi. Must stay
        ``margin`` away from the forward direction +-pi.
    alpha_prime : float
        Flux parameter.
    k : float
        Wave number, > 0.

    Returns
    -------
    complex
    """
    if k <= 0.0:
        raise DomainValidationError(f"wave number must be positive, got {k}")
    t = _check_away_from_pi(phi, margin)
    split = flux_split(alpha_prime)
    n = split.n_part
    sin_a = (-1.0) ** n * math.sin(math.pi * split.gamma_part)
    if sin_a == 0.0:
        return 0.0 + 0.0j
    num = -1j * cmath.exp(-1j * n * (t - math.pi)) * sin_a * cmath.exp(-0.5j * t)
    return num / (math.cos(0.5 * t) * _sqrt_2pi_ik(k))


# =====================================================================
# Per-mode asymptotic constant (closed form with gamma reflection)
# =====================================================================

def _mode_bracket(w, alpha_prime: float):
    """The rational factor shared by g2m and the series summands:

        -2 a'^2 / w + 6 a' + a'^2 (1 - a'/2)/(1 - w) - a'^2 (1 + a'/2)/(1 + w)

    (this is the g2m bracket divided through by w). Works element-wise.
    """
    a = alpha_prime
    return (
        -2.0 * a * a / w
        + 6.0 * a
        + a * a * (1.0 - 0.5 * a) / (1.0 - w)
        - a * a * (1.0 + 0.5 * a) / (1.0 + w)
    )


def g2m(m: int, alpha_prime: float, params: PhysicalParams) -> complex:
    """Large-radius constant of the first-order mode, closed form.

        g2m = -e^{-i pi nu / 2} (hbar^2 k^2 / 4) Gamma(w) Gamma(-w)
              [ -2 a'^2 + 6 a' w + a'^2 w ((1-a'/2)/(1-w) - (1+a'/2)/(1+w)) ]

    with w = m + alpha' and nu = |w|. The gamma pair is evaluated through
    the reflection identity Gamma(w)Gamma(-w) = -pi / (w sin(pi w)), with
    sin(pi w) = (-1)^m sin(pi alpha') taken exactly, so the value stays
    finite for |m| far beyond direct-gamma overflow.

    Raises
    ------
    PoleError
        If m + alpha' is within 1e-6 of an integer.
    """
    w = float(m) + float(alpha_prime)
    if abs(w - round(w)) < _INTEGER_TOL:
        raise PoleError(f"g2m: m + alpha' = {w} is integer (gamma pole)")
    nu = abs(w)
    hk2 = (params.hbar * params.k) ** 2
    sin_pw = (-1.0) ** int(m) * math.sin(math.pi * flux_split(alpha_prime).gamma_part) * (
        (-1.0) ** flux_split(alpha_prime).n_part
    )
    gamma_pair = -math.pi / (w * sin_pw)
    return (
        -cmath.exp(-0.5j * math.pi * nu)
        * (hk2 / 4.0)
        * gamma_pair
        * (w * _mode_bracket(w, alpha_prime))
    )


# =====================================================================
# Abel-regularized partial-wave series (oracle route)
# =====================================================================

def _lerch_tail(q: complex, b: float, j_cut: int) -> complex:
    """sum_{j > j_cut} q^j / (j + b) for |q| < 1 by direct summation.

    The geometric envelope bounds the truncation: terms are cut once
    |q|^j falls below _TAIL_FLOOR relative to the first kept term.
    """
    r = abs(q)
    if r >= 1.0:
        raise DomainValidationError("Abel tail needs |q| < 1")
    length = min(int(math.log(_TAIL_FLOOR) / math.log(r)) + 1, _TAIL_CAP)
    js = np.arange(j_cut + 1, j_cut + 1 + length, dtype=float)
    powers = np.exp(js * cmath.log(q))
    return complex(np.sum(powers / (js + b)))


def _series_at_r(
    phi: float,
    alpha_prime: float,
    n: int,
    gamma: float,
    r: float,
    m_max: int,
) -> tuple[complex, complex]:
    """Explicit bilateral sums plus analytic tails at one Abel parameter.

    Returns (S_J, S_K): the w > 0 and w < 0 partial-wave sums, each
    including its infinite Abel tail beyond |m| = m_max.
    """
    a = alpha_prime
    sigma = (-1.0) ** n * math.sin(math.pi * gamma)  # sin(pi alpha'), exact split

    # ---- explicit positive-order part: m = -N .. m_max (w = m + a' > 0)
    ms = np.arange(-n, m_max + 1, dtype=float)
    w = ms + a
    signs = np.where(np.mod(ms, 2.0) == 0.0, 1.0, -1.0)
    gp1 = -signs * math.pi / sigma          # Gamma(w) Gamma(-w) w = -pi / sin(pi w)
    weights = r ** np.abs(ms) * np.exp(1j * ms * phi)
    s_j = complex(np.sum(weights * gp1 * _mode_bracket(w, a)))

    # ---- tail of the positive-order part in j = m + N > m_max + N
    q = -r * cmath.exp(1j * phi)
    j_cut = m_max + n
    c_j = -(math.pi / sigma) * cmath.exp(-1j * n * phi) * (-1.0) ** n * r ** (-n)
    tail_j = c_j * (
        -2.0 * a * a * _lerch_tail(q, gamma, j_cut)
        + 6.0 * a * q ** (j_cut + 1) / (1.0 - q)
        - a * a * (1.0 - 0.5 * a) * _lerch_tail(q, gamma - 1.0, j_cut)
        - a * a * (1.0 + 0.5 * a) * _lerch_tail(q, gamma + 1.0, j_cut)
    )

    # ---- explicit negative-order part: m = -m_max .. -N-1 (w < 0)
    ms2 = np.arange(-m_max, -n, dtype=float)
    w2 = ms2 + a
    signs2 = np.where(np.mod(ms2, 2.0) == 0.0, 1.0, -1.0)
    gp2 = -signs2 * math.pi / sigma
    weights2 = r ** np.abs(ms2) * np.exp(1j * ms2 * phi)
    s_k = complex(np.sum(weights2 * gp2 * _mode_bracket(w2, a)))

    # ---- tail of the negative-order part in l = -m - N - 1 > m_max - N - 1
    qp = -r * cmath.exp(-1j * phi)
    l_cut = m_max - n - 1
    c_k = (-1.0) ** n * (math.pi / sigma) * cmath.exp(-1j * (n + 1) * phi) * r ** (n + 1)
    tail_k = c_k * (
        2.0 * a * a * _lerch_tail(qp, 1.0 - gamma, l_cut)
        + 6.0 * a * qp ** (l_cut + 1) / (1.0 - qp)
        + a * a * (1.0 - 0.5 * a) * _lerch_tail(qp, 2.0 - gamma, l_cut)
        + a * a * (1.0 + 0.5 * a) * _lerch_tail(qp, -gamma, l_cut)
    )

    return s_j + tail_j, s_k + tail_k


def _neville_to_zero(hs: list[float], ys: list[complex]) -> tuple[complex, float]:
    """Polynomial extrapolation of (h, y) samples to h = 0.

    Returns (value, correction) where correction is the magnitude of the
    final Neville update, a working error estimate for the ladder.
    """
    level = list(ys)
    prev_best = level[-1]
    for step in range(1, len(hs)):
        nxt = []
        for i in range(len(hs) - step):
            num = -hs[i + step] * level[i] + hs[i] * level[i + 1]
            nxt.append(num / (hs[i] - hs[i + step]))
        prev_best = level[-1]
        level = nxt
    return level[0], abs(level[0] - prev_best)


def f1_series(
    phi: float,
    alpha_prime: float,
    params: PhysicalParams,
    m_max: int = 2000,
    abel_r: tuple[float, ...] = _ABEL_R_DEFAULT,
    margin: float = _SERIES_PHI_MARGIN,
) -> complex:
    """First-order amplitude by Abel-regularized partial-wave summation.

    For each regulator r the bilateral mode sum (weighted by r^|m|) is
    evaluated explicitly to |m| = m_max plus its exact analytic tails, then
    the ladder is extrapolated to r = 1 by a Neville polynomial in 1 - r.
    The per-mode summands do not decay in |m| (their magnitude approaches a
    constant), which is why the bare partial sums oscillate and the Abel
    factor is required.

    This is the expensive-but-direct oracle that arbitrates ``f1_amp``.

    Parameters
    ----------
    phi : float
        Observation angle, at least ``margin`` away from both 0 and +-pi.
    alpha_prime : float
        Non-integer flux parameter.
    params : PhysicalParams
        Supplies hbar and k.
    m_max : int
        Bilateral cutoff, >= 200.
    abel_r : tuple of float
        Regulator ladder, strictly inside (0, 1).

    Raises
    ------
    AccuracyError
        If the extrapolation correction exceeds 1e-3 of the result,
        with the per-r values in the message.
    """
    _require_noninteger(alpha_prime, "f1_series")
    if m_max < 200:
        raise DomainValidationError(f"m_max must be >= 200, got {m_max}")
    if len(abel_r) < 2 or any(not 0.0 < r < 1.0 for r in abel_r):
        raise DomainValidationError(f"invalid Abel ladder {abel_r!r}")
    t = _check_away_from_pi(phi, margin)
    if abs(t) < margin:
        raise DomainValidationError(
            f"phi = {phi} is within {margin} of 0; the regularized series "
            "loses its oscillatory convergence there (use f1_amp)"
        )

    split = flux_split(alpha_prime)
    n, gamma = split.n_part, split.gamma_part
    hk2 = (params.hbar * params.k) ** 2
    pref = -0.5j * hk2 * math.sin(math.pi * gamma) / _sqrt_2pi_ik(params.k)
    rot_j = cmath.exp(-1j * math.pi * gamma)
    rot_k = cmath.exp(1j * math.pi * gamma)

    ladder = sorted(abel_r)
    hs = [1.0 - r for r in ladder]
    ys = []
    for r in ladder:
        s_j, s_k = _series_at_r(t, alpha_prime, n, gamma, r, int(m_max))
        ys.append(pref * (rot_j * s_j - rot_k * s_k))
    value, corr = _neville_to_zero(hs, ys)
    if corr > _LADDER_REL_TOL * (abs(value) + 1e-12):
        detail = ", ".join(f"r={r}: {y}" for r, y in zip(ladder, ys))
        raise AccuracyError(
            f"Abel ladder did not converge at phi={phi}, alpha'={alpha_prime}: "
            f"correction {corr:.3e} vs value {abs(value):.3e} [{detail}]"
        )
    return value


def regularized_alternating_gamma_sum(
    phi: float,
    alpha_prime: float,
    m_max: int = 2000,
    abel_r: tuple[float, ...] = _ABEL_R_DEFAULT,
) -> complex:
    """Abel-regularized sum of e^{i m phi} Gamma(1+m+a') Gamma(-m-a') over
    the modes with m + a' > 0.

    A self-check target for the series machinery: the same regularization
    used in ``f1_series`` applied to a term family with the known closed
    form -pi e^{-i(N+1/2)phi} / (2 sin(pi gamma) cos(phi/2)).
    """
    _require_noninteger(alpha_prime, "regularized_alternating_gamma_sum")
    t = _check_away_from_pi(phi, _SERIES_PHI_MARGIN)
    if abs(t) < _SERIES_PHI_MARGIN:
        raise DomainValidationError("phi too close to 0 for the regularized sum")
    split = flux_split(alpha_prime)
    n, gamma = split.n_part, split.gamma_part
    sigma = (-1.0) ** n * math.sin(math.pi * gamma)

    ladder = sorted(abel_r)
    hs = [1.0 - r for r in ladder]
    ys = []
    for r in ladder:
        ms = np.arange(-n, m_max + 1, dtype=float)
        signs = np.where(np.mod(ms, 2.0) == 0.0, 1.0, -1.0)
        # Gamma(1+w) Gamma(-w) = -pi / sin(pi w)
        terms = r ** np.abs(ms) * np.exp(1j * ms * t) * (-math.pi / sigma) * signs
        explicit = complex(np.sum(terms))
        q = -r * cmath.exp(1j * t)
        j_cut = m_max + n
        tail = (
            -(math.pi / sigma)
            * cmath.exp(-1j * n * t)
            * (-1.0) ** n
            * r ** (-n)
            * q ** (j_cut + 1)
            / (1.0 - q)
        )
        ys.append(explicit + tail)
    value, corr = _neville_to_zero(hs, ys)
    if corr > _LADDER_REL_TOL * (abs(value) + 1e-12):
        raise AccuracyError(f"gamma-sum ladder did not converge: correction {corr:.3e}")
    return value


# =====================================================================
# Closed hypergeometric form
# =====================================================================

@dataclass(frozen=True)
class GValue:
    """Closed-form correction kernel G and the locus point x it was built at.

    x = e^{i phi/2} / (2 cos(phi/2)) = (1 + i tan(phi/2))/2, so Re x = 1/2
    identically; the conjugate point 1 - x = x* hosts the second argument
    family.
    """

    g: complex
    x: complex


def g_fn(alpha_prime: float, phi: float, margin: float = _PI_MARGIN) -> GValue:
    """Assemble the correction kernel G(alpha', phi).

    Six hypergeometric evaluations F(c; .) = 2F1(1, 1; c; .) at the locus
    point x and its conjugate, with c running over gamma-shifted values:

        G = 2 a'^2 [ e^{i pi g}/(1-g) F(2-g; x*) - e^{-i pi g}/g F(1+g; x) ]
            + 12 a' cos(pi g)
            + a'^2 (1-a'/2) [ e^{i pi g}/(2-g) F(3-g; x*)
                              + e^{-i pi g}/(1-g) F(g; x) ]
            - a'^2 (1+a'/2) [ e^{i pi g}/g F(1-g; x*)
                              + e^{-i pi g}/(1+g) F(2+g; x) ]

    with g = gamma the fractional part of alpha'. gamma * G stays finite as
    gamma -> 0 (the two 1/gamma terms combine), which is what produces the
    finite integer-flux limits of the cross section.

    Returns
    -------
    GValue
        The kernel value and the locus point x.
    """
    _require_noninteger(alpha_prime, "g_fn")
    t = _check_away_from_pi(phi, margin)
    a = float(alpha_prime)
    gamma = flux_split(alpha_prime).gamma_part

    x = 0.5 * (1.0 + 1j * math.tan(0.5 * t))
    xc = x.conjugate()
    e_plus = cmath.exp(1j * math.pi * gamma)
    e_minus = cmath.exp(-1j * math.pi * gamma)

    g = (
        2.0 * a * a * (
            e_plus / (1.0 - gamma) * hyp2f1_11(2.0 - gamma, xc)
            - e_minus / gamma * hyp2f1_11(1.0 + gamma, x)
        )
        + 12.0 * a * math.cos(math.pi * gamma)
        + a * a * (1.0 - 0.5 * a) * (
            e_plus / (2.0 - gamma) * hyp2f1_11(3.0 - gamma, xc)
            + e_minus / (1.0 - gamma) * hyp2f1_11(gamma, x)
        )
        - a * a * (1.0 + 0.5 * a) * (
            e_plus / gamma * hyp2f1_11(1.0 - gamma, xc)
            + e_minus / (1.0 + gamma) * hyp2f1_11(2.0 + gamma, x)
        )
    )
    return GValue(g=g, x=x)


def f1_amp(phi: float, alpha_prime: float, params: PhysicalParams, margin: float = _PI_MARGIN) -> complex:
    """First-order amplitude, closed hypergeometric form.

        f1 = i pi hbar^2 k^2 e^{-i(N + 1/2) phi}
             / (4 cos(phi/2) sqrt(2 pi i k)) * G(alpha', phi)

    Must agree with the ``f1_series`` oracle; their independent code paths
    (gamma reflection sums vs contiguous-shifted continued fractions) are
    the main cross-validation of this module.
    """
    t = _check_away_from_pi(phi, margin)
    kernel = g_fn(alpha_prime, t, margin=margin)
    n = flux_split(alpha_prime).n_part
    hk2 = (params.hbar * params.k) ** 2
    pref = (
        1j * math.pi * hk2 * cmath.exp(-1j * (n + 0.5) * t)
        / (4.0 * math.cos(0.5 * t) * _sqrt_2pi_ik(params.k))
    )
    return pref * kernel.g


# =====================================================================
# Cross section
# =====================================================================

def dsigma_integer_limits(n: int, phi: float, params: PhysicalParams) -> tuple[float, float]:
    """One-sided integer-flux limits of the cross section at alpha' = n.

        upper (alpha' -> n from above):
            beta (pi hbar^2 k n^2 / 2) [ 2(n-2) cos^2(phi/2) + 6 - n ]
        lower (alpha' -> n from below):
            beta (pi hbar^2 k n^2 / 2) [ n + 6 - 2(n+2) cos^2(phi/2) ]

    Both vanish identically at n = 0 and at beta = 0.
    """
    n = int(n)
    c2 = math.cos(0.5 * _principal(phi)) ** 2
    scale = params.beta * math.pi * params.hbar**2 * params.k * n * n / 2.0
    upper = scale * (2.0 * (n - 2.0) * c2 + 6.0 - n)
    lower = scale * (n + 6.0 - 2.0 * (n + 2.0) * c2)
    return upper, lower


def width(n: int, phi: float, params: PhysicalParams) -> float:
    """Jump of the cross section across integer flux alpha' = n.

    Computed as |upper - lower| from ``dsigma_integer_limits`` (same code
    path), which equals beta pi hbar^2 k n^3 |2 cos^2(phi/2) - 1| identically.
    """
    upper, lower = dsigma_integer_limits(n, phi, params)
    return abs(upper - lower)


def dsigma(
    phi: float,
    alpha_prime: float,
    params: PhysicalParams,
    form: str = "linearized",
    margin: float = _PI_MARGIN,
    with_flag: bool = False,
):
    """Differential cross section per unit angle.

    Forms
    -----
    ``linearized`` (default):
        sin(pi gamma) [ sin(pi gamma) - beta (pi hbar^2 k^2 / 2) Re G ]
        / (2 pi k cos^2(phi/2))
    ``modulus``:
        | sin(pi gamma) - (pi hbar^2 k^2 beta / 4) G |^2
        / (2 pi k cos^2(phi/2))

    The two agree to O(beta^2). The linearized form is the default because
    it has the correct one-sided limits at integer flux: in the modulus
    form the |G|^2 piece diverges as gamma -> 0 at fixed beta, an artifact
    of squaring the truncated amplitude.

    Routing near integer flux: within 1e-4 of an integer the value is taken
    from ``dsigma_integer_limits`` (flag "endpoint-upper"/"endpoint-lower").
    At beta = 0 the exact undeformed value sin^2(pi gamma)/(2 pi k cos^2)
    is returned directly, which is exactly 0 at integer flux.

    Parameters
    ----------
    with_flag : bool
        When true, return (value, flag) where flag is "" on the ordinary
        path and names the endpoint branch otherwise.
    """
    if form not in ("linearized", "modulus"):
        raise DomainValidationError(f"unknown cross-section form {form!r}")
    t = _check_away_from_pi(phi, margin)
    split = flux_split(alpha_prime)
    n, gamma = split.n_part, split.gamma_part
    k = params.k
    c2 = math.cos(0.5 * t) ** 2
    sin_g = math.sin(math.pi * gamma)

    if params.beta == 0.0:
        val = sin_g * sin_g / (2.0 * math.pi * k * c2)
        return (val, "") if with_flag else val

    if gamma < _ENDPOINT_GAMMA:
        val = dsigma_integer_limits(n, t, params)[0]
        return (val, "endpoint-upper") if with_flag else val
    if 1.0 - gamma < _ENDPOINT_GAMMA:
        val = dsigma_integer_limits(n + 1, t, params)[1]
        return (val, "endpoint-lower") if with_flag else val

    kernel = g_fn(alpha_prime, t, margin=margin)
    hk2 = (params.hbar * k) ** 2
    if form == "modulus":
        amp = sin_g - (math.pi * hk2 * params.beta / 4.0) * kernel.g
        val = abs(amp) ** 2 / (2.0 * math.pi * k * c2)
    else:
        val = (
            sin_g
            * (sin_g - params.beta * (math.pi * hk2 / 2.0) * kernel.g.real)
            / (2.0 * math.pi * k * c2)
        )
    return (val, "") if with_flag else val


def symmetry_probe(
    alpha_prime: float,
    theta: float,
    params: PhysicalParams,
    form: str = "linearized",
) -> tuple[float, float]:
    """Measure the two mirror symmetries of the cross section.

    Returns
    -------
    (delta_pi_symmetry, pm_phi_asymmetry):
        |dsigma(pi - theta) - dsigma(pi + theta)| and
        |dsigma(theta) - dsigma(-theta)|.

    Both vanish at beta = 0, where the cross section depends on phi only
    through cos^2(phi/2); the deformation kernel G breaks both.
    """
    theta = float(theta)
    if not _SERIES_PHI_MARGIN < theta < math.pi - _SERIES_PHI_MARGIN:
        raise DomainValidationError(
            f"theta = {theta} outside ({_SERIES_PHI_MARGIN}, pi - {_SERIES_PHI_MARGIN})"
        )
    d_back = dsigma(math.pi - theta, alpha_prime, params, form=form)
    d_fwd = dsigma(math.pi + theta, alpha_prime, params, form=form)
    d_plus = dsigma(theta, alpha_prime, params, form=form)
    d_minus = dsigma(-theta, alpha_prime, params, form=form)
    return abs(d_back - d_fwd), abs(d_plus - d_minus)


# =====================================================================
# Bundled sample
# =====================================================================

@dataclass(frozen=True)
class ScatterSample:
    """One evaluated scattering configuration.

    ``f1`` is the coefficient of the deformation parameter (the corrected
    amplitude is f0 + beta f1); ``dsigma`` is the cross section in the
    requested form at the beta carried by the parameters used to build the
    sample.
    """

    alpha_prime: float
    phi: float
    beta: float
    f0: complex
    f1: complex
    dsigma: float


def scatter_sample(
    phi: float,
    alpha_prime: float,
    params: PhysicalParams,
    form: str = "modulus",
) -> ScatterSample:
    """Evaluate amplitudes and cross section at one configuration.

    Uses the closed-form amplitude route; the modulus form is the default
    here so the stored cross section is the literal squared magnitude of
    the truncated amplitude (hence nonnegative). Raises PoleError at
    integer flux, where f1 has a pole (callers scanning grids should catch
    and skip).
    """
    t = _check_away_from_pi(phi, _PI_MARGIN)
    f0 = f0_amp(t, alpha_prime, params.k)
    f1 = f1_amp(t, alpha_prime, params)
    ds = dsigma(t, alpha_prime, params, form=form)
    return ScatterSample(
        alpha_prime=float(alpha_prime),
        phi=t,
        beta=params.beta,
        f0=f0,
        f1=f1,
        dsigma=float(ds),
    )
