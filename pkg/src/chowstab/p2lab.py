"""Blowups of the projective plane: fixed-point data, vanishing loci, search.

Two point configurations are covered, matching the two families where the
plane blown up at points carries residual torus actions worth studying:

* ``four_points_three_aligned`` -- p1 = (1:0:0), p2 = (0:1:0) and two more
  points on the line {x0 = 0}.  A single one-parameter group survives,
  generated by diag(t^2, t^-1, t^-1).  The vanishing of F_1 and F_2 on the
  polarization twisted by m and multiplicities alpha_1..alpha_4 is cut out
  by two homogeneous polynomials psi_1 (quartic) and psi_2 (cubic) in
  (m, alpha); psi_1 has a triple point at (1,1,0,0,0), which makes its
  rational zeros dense and drives the search for integer polarizations
  with F_1 = 0 but F_2 != 0 (asymptotically Chow unstable, yet cscK for
  suitable classes).
* ``three_general`` -- the three coordinate points, with the torus
  generated by diag(t,t^-1,1) and diag(1,t,t^-1).  Here F_1 and F_2 vanish
  together, exactly on {alpha_1 = alpha_2 = alpha_3} union
  {alpha_1 + alpha_2 + alpha_3 = m} inside the ample cone.

At a fixed point whose nonzero coordinates form a block on which the
diagonal action has a single weight, the normalized moment-map value is
that block weight and the isotropy weight is the sum of the outside
weights minus the block weight, once per outside direction.  Of the four
possible sign conventions for (phi, lambda) exactly this one makes the
symbolic reconstruction reproduce the closed-form quartic; it is frozen
here and covered by a calibration test.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm

from . import blowup
from .errors import CrossCheckError
from .exactalg import MPoly
from .blowup import BlownPoint, BlowupSpec, projective_space_base

__all__ = [
    "DiagAction",
    "PointConfig",
    "Candidate",
    "FOUR_POINTS_THREE_ALIGNED",
    "THREE_GENERAL",
    "PSI_VARIABLES",
    "fixed_point_data",
    "psi_reconstruct",
    "triple_point_check",
    "ample_check",
    "three_point_loci",
    "search_unstable",
]

FOUR_POINTS_THREE_ALIGNED = "four_points_three_aligned"
THREE_GENERAL = "three_general"

PSI_VARIABLES = ("m", "a1", "a2", "a3", "a4")

# Vanishing-locus polynomials live in P^4 with homogeneous point (m, a1..a4);
# the triple point of the quartic sits at m = a1 = 1, a2 = a3 = a4 = 0.
_BASE_POINT = (1, 1, 0, 0, 0)


@dataclass(frozen=True)
class DiagAction:
    """Diagonal one-parameter group diag(t^w0, t^w1, t^w2) with trace zero.

    Trace zero makes the total weight on every space of plane sections
    vanish, which is exactly the normalized linearization the blowup
    formulas assume on the base.
    """

    w: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(self.w))
        if len(self.w) != 3:
            raise ValueError("expected three weights")
        if sum(self.w) != 0:
            raise ValueError("weights must sum to zero")


@dataclass(frozen=True)
class PointConfig:
    """A named configuration of blown points, each known by its coordinate
    block (the set of indices where its coordinates are nonzero)."""

    kind: str
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def four_points_three_aligned(cls) -> "PointConfig":
        return cls(FOUR_POINTS_THREE_ALIGNED,
                   (frozenset({0}), frozenset({1}), frozenset({1, 2}), frozenset({1, 2})))

    @classmethod
    def three_general(cls) -> "PointConfig":
        return cls(THREE_GENERAL,
                   (frozenset({0}), frozenset({1}), frozenset({2})))


@dataclass(frozen=True)
class Candidate:
    """An integer polarization of the four-point blowup with F_1 = 0 and
    F_2 != 0, i.e. asymptotically Chow unstable; ``verified`` records that
    the full invariant pipeline confirmed both values."""

    m: int
    alphas: tuple[int, int, int, int]
    psi1_value: Fraction
    psi2_value: Fraction
    ample: bool
    verified: bool


def fixed_point_data(action: DiagAction, block) -> tuple[Fraction, int]:
    """Moment-map value and isotropy weight at a fixed point with the given block.

    The point is fixed iff the action has a single weight on its block;
    then phi is that common weight and lambda sums w_i - w_block over the
    directions outside the block.
    """
    idx = frozenset(block)
    if not idx or not idx <= {0, 1, 2}:
        raise ValueError(f"coordinate block must be a nonempty subset of {{0,1,2}}: {set(block)}")
    weights = {action.w[i] for i in idx}
    if len(weights) != 1:
        raise ValueError(f"point with block {set(idx)} is not fixed by weights {action.w}")
    w_block = weights.pop()
    lam = sum(action.w[i] - w_block for i in range(3) if i not in idx)
    return Fraction(w_block), lam


@lru_cache(maxsize=None)
def _psi_pair() -> tuple[MPoly, MPoly]:
    config = PointConfig.four_points_three_aligned()
    action = DiagAction((2, -1, -1))
    data = [fixed_point_data(action, b) for b in config.blocks]
    phis = [phi for phi, _ in data]
    lams = [lam for _, lam in data]
    base = projective_space_base(2)
    n = base.n
    ratio_vars = tuple(f"x{j}" for j in range(1, 5))
    ratios = MPoly.generators(ratio_vars)
    sums = blowup.futaki_point_sums(n, base.a, ratios, phis, lams)
    out = []
    for ell, total in enumerate(sums, start=1):
        # F_l = total / (D^2 m^{l-1}) and deg^2 = m^{2n} D^2, so clearing the
        # prefactors amounts to substituting x_j = alpha_j/m into total and
        # multiplying by m^{2n+1-l}: each monomial x^e becomes
        # alpha^e m^{2n+1-l-|e|}, a polynomial since total has degree <= 2n+1-l.
        target = 2 * n + 1 - ell
        terms = {}
        for exps, coeff in total.terms():
            spare = target - sum(exps)
            if spare < 0:
                raise CrossCheckError("weighted sum exceeds the clearing degree")
            terms[(spare,) + exps] = coeff
        out.append(MPoly(PSI_VARIABLES, terms))
    return out[0], out[1]


def psi_reconstruct(config: PointConfig) -> tuple[MPoly, MPoly]:
    """Vanishing-locus polynomials (psi_1, psi_2) of the aligned four-point family.

    Runs the blowup invariant pipeline symbolically in (m, alpha_1..alpha_4)
    and clears the deg^{-2} and power-of-m prefactors, so F_l = psi_l / deg^2
    with deg = m^2 - sum alpha_j^2.  Homogeneous of degrees 4 and 3.
    """
    if config.kind != FOUR_POINTS_THREE_ALIGNED:
        raise ValueError("symbolic reconstruction covers the aligned four-point family only")
    return _psi_pair()


def _partials_at(poly: MPoly, order: int, point: dict) -> list[Fraction]:
    values = []
    for combo in itertools.combinations_with_replacement(poly.variables, order):
        p = poly
        for name in combo:
            p = p.partial(name)
        values.append(p.evaluate(point))
    return values


def triple_point_check(psi1: MPoly) -> bool:
    """True iff the quartic has a point of multiplicity exactly three at (1,1,0,0,0)."""
    point = dict(zip(psi1.variables, _BASE_POINT))
    if psi1.evaluate(point) != 0:
        return False
    for order in (1, 2):
        if any(v != 0 for v in _partials_at(psi1, order, point)):
            return False
    return any(v != 0 for v in _partials_at(psi1, 3, point))


def ample_check(config: PointConfig, m: int, alphas) -> bool:
    """Positivity of the twisted polarization against every negative curve.

    Three general points: m > 0, alpha_i > 0 and m + alpha_j > sum(alpha)
    (equivalently each line through two points stays positive).  For the
    aligned four-point family the negative classes are the exceptional
    curves, the strict transform of the line through the three aligned
    points, the lines joining p1 to each aligned point, and the check of
    positive self-intersection.
    """
    alphas = tuple(alphas)
    if m <= 0 or any(a <= 0 for a in alphas):
        return False
    if config.kind == THREE_GENERAL:
        if len(alphas) != 3:
            raise ValueError("three multiplicities expected")
        total = sum(alphas)
        return all(m + a > total for a in alphas)
    if config.kind == FOUR_POINTS_THREE_ALIGNED:
        if len(alphas) != 4:
            raise ValueError("four multiplicities expected")
        a1, a2, a3, a4 = alphas
        if m - a2 - a3 - a4 <= 0:
            return False
        if any(m - a1 - aj <= 0 for aj in (a2, a3, a4)):
            return False
        return m * m - sum(a * a for a in alphas) > 0
    raise ValueError(f"unknown configuration kind: {config.kind}")


_THREE_POINT_ACTIONS = (DiagAction((1, -1, 0)), DiagAction((0, 1, -1)))


def three_point_loci(m: int, alphas) -> tuple[bool, bool]:
    """Vanishing of (F_1, F_2) for the three-coordinate-point blowup.

    Both generators of the torus are tested; a flag is True only when the
    corresponding invariant vanishes for every action.  Inputs outside the
    ample cone are rejected.
    """
    alphas = tuple(alphas)
    config = PointConfig.three_general()
    if not ample_check(config, m, alphas):
        raise ValueError(f"(m, alphas) = ({m}, {alphas}) is not ample")
    base = projective_space_base(2)
    f1_zero = True
    f2_zero = True
    for action in _THREE_POINT_ACTIONS:
        points = []
        for block, alpha in zip(config.blocks, alphas):
            phi, lam = fixed_point_data(action, block)
            points.append(BlownPoint(alpha=alpha, phi=phi, lam=lam))
        f1, f2 = blowup.futaki_blowup(BlowupSpec(base=base, points=tuple(points), m=m))
        f1_zero = f1_zero and f1 == 0
        f2_zero = f2_zero and f2 == 0
    return f1_zero, f2_zero


# ---------------------------------------------------------------------------
# Search for asymptotically Chow unstable integer polarizations.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_int_terms() -> tuple[tuple, tuple]:
    """psi_1/psi_2 as integer term lists, plus the cubic jet of psi_1 at the
    triple point, packaged for fast integer evaluation along lines."""
    psi1, psi2 = _psi_pair()

    def as_int_terms(p: MPoly):
        out = []
        for exps, coeff in p.terms():
            if coeff.denominator != 1:
                raise CrossCheckError("vanishing-locus polynomial is not integral")
            out.append((exps, coeff.numerator))
        return tuple(out)

    point = dict(zip(PSI_VARIABLES, _BASE_POINT))
    jet = []
    for combo in itertools.combinations_with_replacement(range(5), 3):
        p = psi1
        for i in combo:
            p = p.partial(PSI_VARIABLES[i])
        value = p.evaluate(point)
        mult = 1
        for _, group in itertools.groupby(combo):
            mult *= factorial(len(tuple(group)))
        value /= mult
        if value:
            if value.denominator != 1:
                raise CrossCheckError("cubic jet coefficient is not integral")
            jet.append((combo, value.numerator))
    return (as_int_terms(psi1), as_int_terms(psi2)), tuple(jet)


def _eval_int_terms(terms, v) -> int:
    total = 0
    for exps, coeff in terms:
        term = coeff
        for x, e in zip(v, exps):
            if e:
                if x == 0:
                    term = 0
                    break
                term *= x**e
        total += term
    return total


def _primitive_ray(point: tuple[Fraction, ...]) -> tuple[int, ...] | None:
    """Primitive integer representative of a projective point, signed so the
    first nonzero entry is positive; None for the zero vector."""
    denominators = lcm(*(c.denominator for c in point))
    ints = [int(c * denominators) for c in point]
    g = gcd(*ints)
    if g == 0:
        return None
    ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


def _residual_point(v: tuple[int, ...]) -> tuple[int, ...] | None:
    """Fourth intersection of the quartic with the line through the triple
    point in direction v, as a primitive integer vector; None when the line
    is skipped (direction on the quartic, or degenerate)."""
    (psi1_terms, _), jet = _psi_int_terms()
    c4 = _eval_int_terms(psi1_terms, v)
    if c4 == 0:
        return None
    c3 = 0
    for combo, coeff in jet:
        term = coeff
        for i in combo:
            term *= v[i]
        c3 += term
    t_star = Fraction(-c3, c4)
    point = tuple(Fraction(b) + t_star * d for b, d in zip(_BASE_POINT, v))
    return _primitive_ray(point)


def _directions(bound: int, start: int, stop: int):
    """Decode direction indices [start, stop) into vectors of the box
    [-bound, bound]^5, ordered lexicographically."""
    side = 2 * bound + 1
    for index in range(start, stop):
        v = []
        rem = index
        for power in range(4, -1, -1):
            digit = rem // side**power
            rem -= digit * side**power
            v.append(digit - bound)
        yield tuple(v)


def _scan_chunk(args) -> list[tuple[int, ...]]:
    bound, start, stop = args
    hits = []
    for v in _directions(bound, start, stop):
        if not any(v):
            continue
        point = _residual_point(v)
        if point is not None:
            hits.append(point)
    return hits


def _verify_candidate(m: int, alphas: tuple[int, ...]) -> Fraction:
    """Recompute F_1 and F_2 through the blowup pipeline; returns F_2 * deg^2.

    Raises if the candidate fails recomputation, which by construction
    should never happen.
    """
    config = PointConfig.four_points_three_aligned()
    action = DiagAction((2, -1, -1))
    points = []
    for block, alpha in zip(config.blocks, alphas):
        phi, lam = fixed_point_data(action, block)
        points.append(BlownPoint(alpha=alpha, phi=phi, lam=lam))
    spec = BlowupSpec(base=projective_space_base(2), points=tuple(points), m=m)
    f1, f2 = blowup.futaki_blowup(spec)
    if f1 != 0 or f2 == 0:
        raise CrossCheckError(
            f"candidate (m={m}, alphas={alphas}) failed recomputation: F1={f1}, F2={f2}")
    deg_sq = Fraction(m * m - sum(a * a for a in alphas)) ** 2
    return f2 * deg_sq


def search_unstable(grid_bound: int, scale_bound: int, workers: int = 1) -> list[Candidate]:
    """Hunt integer polarizations of the aligned four-point blowup that are
    cscK-compatible yet asymptotically Chow unstable (F_1 = 0, F_2 != 0).

    Every line through the triple point of the quartic meets it in one
    residual point with rational coordinates; sweeping integer directions
    with entries in [-grid_bound, grid_bound] (one representative per line)
    and scaling the resulting primitive points by 1..scale_bound yields
    candidates, kept when all five entries are positive, the polarization
    is ample and psi_2 does not vanish.  Each returned candidate is
    re-verified through the full invariant pipeline.  Output order is
    deterministic: directions lexicographically, scales increasing.
    """
    if grid_bound < 1 or scale_bound < 1:
        raise ValueError("bounds must be >= 1")
    (_, psi2_terms), _ = _psi_int_terms()
    side = 2 * grid_bound + 1
    total = side**5
    if workers > 1:
        chunk = max(1, total // (workers * 8))
        jobs = [(grid_bound, start, min(start + chunk, total))
                for start in range(0, total, chunk)]
        hits: list[tuple[int, ...]] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_chunk, jobs):
                hits.extend(part)
    else:
        hits = _scan_chunk((grid_bound, 0, total))

    candidates: list[Candidate] = []
    seen: set[tuple[int, ...]] = set()
    for point in hits:
        if point in seen:
            continue
        seen.add(point)
        if any(c < 1 for c in point):
            continue
        for scale in range(1, scale_bound + 1):
            m = scale * point[0]
            alphas = tuple(scale * c for c in point[1:])
            if not ample_check(PointConfig.four_points_three_aligned(), m, alphas):
                continue
            psi2_value = Fraction(_eval_int_terms(psi2_terms, (m,) + alphas))
            if psi2_value == 0:
                continue
            f2_scaled = _verify_candidate(m, alphas)
            if f2_scaled != psi2_value:
                raise CrossCheckError("psi_2 disagrees with the recomputed F_2")
            candidates.append(Candidate(
                m=m, alphas=alphas, psi1_value=Fraction(0),
                psi2_value=psi2_value, ample=True, verified=True))
    return candidates
