"""Invariants of a polarized manifold blown up at fixed points.

Take an n-dimensional polarized manifold whose Hilbert coefficients
a_0..a_n are known and which is certified asymptotically Chow polystable,
so the linearization can be normalized to make the whole base weight
polynomial vanish.  Blow up a finite set of fixed points p_j of the torus
action, with multiplicities alpha_j, and polarize by the m-th power of the
base polarization twisted down by the exceptional divisors.  Sections
upstairs are sections downstairs vanishing to order alpha_j*k at each p_j,
which removes a skyscraper block of dimension binom(n + alpha_j k - 1,
alpha_j k - 1) per point and produces:

    chi~(k) = chi(mk) - sum_j binom(n + alpha_j k - 1, alpha_j k - 1),

    w~(k)   = sum_l [ (s_{n-l}/n!) m sum_j alpha_j^{n-l} phi(p_j)
              + ((s_{n-l} - s_{n+1-l})/(n+1)!) sum_j alpha_j^{n+1-l} lambda(p_j)
              ] k^{n+1-l},

where phi(p_j) is the normalized moment-map value, lambda(p_j) the total
isotropy weight on the tangent space, and the s_h generate the rising
factorial (see exactalg.stirling_coeffs).  The invariants then take the
fully explicit form

    F_l = (1 / (D^2 m^{l-1})) sum_j [ f_l(alpha_j/m) phi(p_j)
                                      - g_l(alpha_j/m) lambda(p_j) ],

with D = deg - sum_j (alpha_j/m)^n > 0 and one-variable polynomials f_l,
g_l built from D, the base coefficients and the s_h.  Every call of
futaki_blowup re-derives the invariants through the generic chi/w pipeline
and insists on exact agreement.

For blowups of the projective plane at coordinate points the space of
sections is a span of monomials, and oracle_p2 checks both polynomials by
direct enumeration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import chowcore
from .errors import CrossCheckError, DegenerateInputError, ResourceLimitError
from .exactalg import Poly, RatFn, choose, stirling_coeffs

__all__ = [
    "BaseSummary",
    "BlownPoint",
    "BlowupSpec",
    "projective_space_base",
    "chi_tilde",
    "chi_tilde_coeffs",
    "quotient_weight",
    "w_tilde",
    "w_tilde_coeffs",
    "futaki_point_sums",
    "d_f_g",
    "futaki_blowup",
    "chow_blowup",
    "adiabatic",
    "oracle_p2",
]

ORACLE_MAX_MK = 10_000


@dataclass(frozen=True)
class BaseSummary:
    """Hilbert coefficients of the base polarization, plus the certification
    that the base is asymptotically Chow polystable (which this module
    cannot verify and does not try to)."""

    n: int
    a: tuple[Fraction, ...]
    polystable_certified: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("base dimension must be >= 2")
        object.__setattr__(self, "a", tuple(Fraction(c) for c in self.a))
        if len(self.a) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} Hilbert coefficients")
        if self.a[0] <= 0:
            raise ValueError("leading Hilbert coefficient must be positive")

    @property
    def degree(self) -> Fraction:
        """deg(M, L) = n! * a_0."""
        return math.factorial(self.n) * self.a[0]

    def hilbert_poly(self) -> Poly:
        return Poly.from_descending(self.a)


@lru_cache(maxsize=None)
def projective_space_base(n: int) -> BaseSummary:
    """Projective n-space with the hyperplane polarization: chi(k) = binom(k+n, n)."""
    p = Poly.one()
    for i in range(1, n + 1):
        p = p * Poly((i, 1))
    p = p / math.factorial(n)
    return BaseSummary(n=n, a=p.descending(n + 1), polystable_certified=True)


@dataclass(frozen=True)
class BlownPoint:
    """A blown-up fixed point: multiplicity alpha, moment-map value phi under
    the normalized linearization, and total isotropy weight lam on the
    tangent space."""

    alpha: int
    phi: Fraction
    lam: int

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("multiplicity alpha must be >= 1")
        object.__setattr__(self, "phi", Fraction(self.phi))


@dataclass(frozen=True)
class BlowupSpec:
    """Base data, blown points, and the twist exponent m.

    Requires D = deg - sum (alpha_j/m)^n > 0; inputs with D <= 0 are not
    polarizations of the blowup and are rejected outright.
    """

    base: BaseSummary
    points: tuple[BlownPoint, ...]
    m: int

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("at least one blown point is required")
        if self.m < 1:
            raise ValueError("twist m must be >= 1")
        if not self.base.polystable_certified:
            raise ValueError("the base must be certified asymptotically Chow polystable")
        if self.volume_gap <= 0:
            raise DegenerateInputError(
                f"exceptional volume exhausts the base: D = {self.volume_gap}")

    @property
    def volume_gap(self) -> Fraction:
        """D = deg(M, L) - sum_j (alpha_j/m)^n."""
        return self.base.degree - sum(
            (Fraction(p.alpha, self.m) ** self.base.n for p in self.points), Fraction(0))

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(p.alpha for p in self.points)


def _alpha_power_sum(alphas, power: int) -> int:
    return sum(a**power for a in alphas)


def chi_tilde_coeffs(n: int, a, m: int, alphas) -> list[Fraction]:
    """Descending coefficients of chi~(k): a_l m^{n-l} - (s_{n-l}/n!) sum alpha_j^{n-l}."""
    s = stirling_coeffs(n)
    fact = math.factorial(n)
    return [
        Fraction(a[ell]) * m ** (n - ell)
        - Fraction(s[n - ell], fact) * _alpha_power_sum(alphas, n - ell)
        for ell in range(n + 1)
    ]


def chi_tilde(spec: BlowupSpec) -> Poly:
    """Hilbert polynomial of the blown-up polarization; degree n in k."""
    return Poly.from_descending(
        chi_tilde_coeffs(spec.base.n, spec.base.a, spec.m, spec.alphas))


def quotient_weight(spec: BlowupSpec, k: int) -> Fraction:
    """Weight of the skyscraper quotient (sections modulo those vanishing at Z).

    Equals -sum_j [ binom(n+ak-1, ak-1) mk phi_j + binom(n+ak-1, ak-2) lam_j ]
    with a = alpha_j; the blowup weight polynomial satisfies
    w~(k) == -quotient_weight(k) for every k >= 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n, m = spec.base.n, spec.m
    total = Fraction(0)
    for p in spec.points:
        ak = p.alpha * k
        total += choose(n + ak - 1, ak - 1) * m * k * p.phi
        total += choose(n + ak - 1, ak - 2) * p.lam
    return -total


def w_tilde_coeffs(n: int, m: int, alphas, phis, lams) -> list[Fraction]:
    """Descending coefficients [b_0..b_{n+1}] of the blowup weight polynomial."""
    s = stirling_coeffs(n) + [0]       # s_{n+1} = 0
    fact = math.factorial(n)
    out = []
    for ell in range(n + 1):
        phi_part = Fraction(s[n - ell] * m, fact) * sum(
            (Fraction(a) ** (n - ell) * Fraction(phi) for a, phi in zip(alphas, phis)),
            Fraction(0))
        lam_part = Fraction(s[n - ell] - s[n + 1 - ell], fact * (n + 1)) * sum(
            (Fraction(a) ** (n + 1 - ell) * lam for a, lam in zip(alphas, lams)),
            Fraction(0))
        out.append(phi_part + lam_part)
    out.append(Fraction(0))            # b_{n+1} = 0: the blowup is smooth
    return out


def w_tilde(spec: BlowupSpec) -> Poly:
    """Weight polynomial of the blown-up action; zero constant term."""
    return Poly.from_descending(
        w_tilde_coeffs(spec.base.n, spec.m,
                       spec.alphas,
                       [p.phi for p in spec.points],
                       [p.lam for p in spec.points]))


def futaki_point_sums(n: int, a, ratios, phis, lams) -> list:
    """The per-level weighted sums sum_j [f_l(x_j) phi_j - g_l(x_j) lam_j].

    x_j = ratios[j] stands for alpha_j/m.  The arithmetic is generic: the
    ratios may be Fractions (numeric invariants) or multivariate
    polynomial generators (symbolic reconstruction of vanishing loci), so
    both paths share one transcription of the formulas

        f_l(x) = D s_{n-l} x^{n-l} - (n! a_l - s_{n-l} sum_i x_i^{n-l}) x^n,
        g_l(x) = (D s_{n+1-l} x^{n+1-l} - x f_l(x)) / (n+1),
        D      = n! a_0 - sum_i x_i^n.
    """
    s = stirling_coeffs(n) + [0]
    fact = math.factorial(n)
    deg = fact * Fraction(a[0])
    pow_sums = {}
    for p in {n} | {n - ell for ell in range(1, n + 1)}:
        acc = ratios[0] ** p
        for x in ratios[1:]:
            acc = acc + x**p
        pow_sums[p] = acc
    d_val = deg - pow_sums[n]
    out = []
    for ell in range(1, n + 1):
        second = fact * Fraction(a[ell]) - s[n - ell] * pow_sums[n - ell]
        acc = d_val * 0
        for x, phi, lam in zip(ratios, phis, lams):
            f_val = d_val * s[n - ell] * x ** (n - ell) - second * x**n
            g_val = (d_val * s[n + 1 - ell] * x ** (n + 1 - ell) - x * f_val) * Fraction(1, n + 1)
            acc = acc + f_val * Fraction(phi) - g_val * lam
        out.append(acc)
    return out


def d_f_g(spec: BlowupSpec, ell: int) -> tuple[Fraction, Poly, Poly]:
    """The volume gap D and the one-variable polynomials f_l, g_l."""
    n = spec.base.n
    if not 1 <= ell <= n:
        raise ValueError(f"l must be in 1..{n}")
    s = stirling_coeffs(n) + [0]
    fact = math.factorial(n)
    d_val = spec.volume_gap
    ratio_sum = sum(
        (Fraction(p.alpha, spec.m) ** (n - ell) for p in spec.points), Fraction(0))
    f = Poly.monomial(n - ell, d_val * s[n - ell]) \
        - Poly.monomial(n, fact * spec.base.a[ell] - s[n - ell] * ratio_sum)
    g = (Poly.monomial(n + 1 - ell, d_val * s[n + 1 - ell]) - Poly((0, 1)) * f) / (n + 1)
    return d_val, f, g


def _futaki_direct(spec: BlowupSpec) -> list[Fraction]:
    n = spec.base.n
    ratios = [Fraction(p.alpha, spec.m) for p in spec.points]
    sums = futaki_point_sums(n, spec.base.a, ratios,
                             [p.phi for p in spec.points],
                             [p.lam for p in spec.points])
    d_val = spec.volume_gap
    return [sums[ell - 1] / (d_val**2 * spec.m ** (ell - 1)) for ell in range(1, n + 1)]


def _hilbert_weight_data(spec: BlowupSpec) -> tuple[chowcore.HilbertData, chowcore.WeightData]:
    n = spec.base.n
    h = chowcore.HilbertData.from_poly(chi_tilde(spec), n)
    w = chowcore.WeightData.from_poly(w_tilde(spec), n)
    return h, w


def futaki_blowup(spec: BlowupSpec) -> list[Fraction]:
    """The invariants [F_1..F_n] of the blown-up polarization.

    Computed from the explicit point-sum formula and re-derived through the
    generic pipeline on (chi~, w~) on every call; disagreement raises a
    cross-check error.
    """
    direct = _futaki_direct(spec)
    generic = chowcore.futaki_invariants(*_hilbert_weight_data(spec))
    if direct != generic:
        raise CrossCheckError(
            "point-sum invariants disagree with the chi/w pipeline")
    return direct


def chow_blowup(spec: BlowupSpec) -> RatFn:
    """Chow weight of the blown-up polarization as a rational function of k.

    Equals (leading chi~ coefficient / chi~(k)) * sum_l F_l k^{n+1-l}; also
    re-derived from (chi~, w~) directly, with exact agreement enforced.
    """
    n = spec.base.n
    chi = chi_tilde(spec)
    futaki = futaki_blowup(spec)
    num = Poly()
    a0 = chi.coefficient(n)
    for ell, f in enumerate(futaki, start=1):
        num = num + Poly.monomial(n + 1 - ell, a0 * f)
    closed = RatFn(num, chi)
    generic = chowcore.chow_weight_fn(*_hilbert_weight_data(spec))
    if closed != generic:
        raise CrossCheckError("Chow closed form disagrees with the chi/w pipeline")
    return closed


def adiabatic(spec: BlowupSpec) -> tuple[Fraction, Fraction]:
    """Leading term of F_1 for m large, and the zero-cycle Chow weight.

    Returns (leading, w_cw) where

        leading = n(n-1)/(2 deg) * sum_j (alpha_j/m)^{n-1} phi(p_j),
        w_cw    = sum_j alpha_j^{n-1} phi(p_j),

    the latter being the Chow weight of the cycle sum alpha_j^{n-1} p_j
    under the normalized linearization (base average of phi equal zero);
    F_1 - leading decays like m^{-n}.
    """
    n = spec.base.n
    w_cw = sum((Fraction(p.alpha) ** (n - 1) * p.phi for p in spec.points), Fraction(0))
    leading = Fraction(n * (n - 1), 2) / spec.base.degree * w_cw / spec.m ** (n - 1)
    return leading, w_cw


@lru_cache(maxsize=None)
def _admissible_monomial_stats(points: tuple[tuple[int, int], ...], m: int, k: int):
    """Count and exponent sums of degree-mk monomials in three variables
    vanishing to order alpha_j*k at each chosen coordinate point.

    A monomial x^e vanishes to order mk - e_i at the i-th coordinate point,
    so the conditions are upper bounds e_i <= mk - alpha_j*k.  Returns
    (count, (S_0, S_1, S_2)) with S_i the sum of e_i over admissible
    monomials; these determine the oracle weight for every weight vector.
    """
    d = m * k
    bound = [d, d, d]
    for axis, alpha in points:
        bound[axis] = d - alpha * k
    count = 0
    sums = [0, 0, 0]
    for e0 in range(min(d, bound[0]) + 1):
        rest = d - e0
        e1_max = min(rest, bound[1])
        e1_min = max(0, rest - bound[2])
        if e1_min > e1_max:
            continue
        width = e1_max - e1_min + 1
        count += width
        sums[0] += e0 * width
        # arithmetic sums over the e1 range; e2 = rest - e1
        s1 = (e1_min + e1_max) * width // 2
        sums[1] += s1
        sums[2] += rest * width - s1
    return count, tuple(sums)


def oracle_p2(weights: tuple[int, int, int],
              points: list[tuple[int, int]] | tuple[tuple[int, int], ...],
              m: int, k: int) -> tuple[int, int]:
    """Monomial-enumeration oracle for blowups of the plane at coordinate points.

    ``weights`` is a trace-zero integer triple acting diagonally on the
    coordinates; ``points`` lists (axis, alpha) pairs for distinct
    coordinate points.  Sections of the twisted polarization at power k are
    the degree-mk monomials vanishing to order alpha_j*k at each point; a
    monomial x^e contributes weight -<e, weights>.  Requires m >= sum alpha_j,
    which makes the counting exact at every k >= 1.
    """
    if sum(weights) != 0:
        raise ValueError("weight vector must have trace zero")
    pts = tuple(sorted(tuple(p) for p in points))
    axes = [axis for axis, _ in pts]
    if any(axis not in (0, 1, 2) for axis in axes):
        raise ValueError("only the three coordinate points of the plane are supported")
    if len(set(axes)) != len(axes):
        raise ValueError("blown points must be distinct")
    alphas = [alpha for _, alpha in pts]
    if any(alpha < 1 for alpha in alphas):
        raise ValueError("multiplicities must be >= 1")
    if m < sum(alphas):
        raise ValueError(f"exactness regime requires m >= sum(alpha) = {sum(alphas)}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if m * k > ORACLE_MAX_MK:
        raise ResourceLimitError(f"oracle guard exceeded: mk = {m * k} > {ORACLE_MAX_MK}")
    count, sums = _admissible_monomial_stats(pts, m, k)
    weight = -sum(s * w for s, w in zip(sums, weights))
    return count, weight
