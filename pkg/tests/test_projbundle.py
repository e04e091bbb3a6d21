"""Projectivized bundles over curves: closed forms, oracle, classification."""
from fractions import Fraction

import pytest

from chowstab import chowcore
from chowstab.errors import AmplenessWarning, DegenerateInputError, ResourceLimitError
from chowstab.exactalg import Poly, RatFn, choose, cm_constants
from chowstab.projbundle import (
    POLYSTABLE,
    SEMISTABLE_NOT_POLYSTABLE,
    UNSTABLE,
    CurveBundleSpec,
    Summand,
    chow_weight,
    euler_char_poly,
    higher_futaki,
    oracle,
    slope_classify,
    weight_poly,
)


def trivial_rank2(genus=2, b_deg=1):
    """E = O + O over a genus-g curve."""
    return CurveBundleSpec(genus=genus,
                           summands=(Summand(1, 0, 1), Summand(1, 0, -1)),
                           b_deg=b_deg, b_weight=0, r=1)


def unstable_pair():
    """The worked spec: g=2, E = O(1) + O, weights (1, 0), deg B = 2, r = 1."""
    return CurveBundleSpec(genus=2,
                           summands=(Summand(1, 1, 1), Summand(1, 0, 0)),
                           b_deg=2, b_weight=0, r=1)


class TestEulerCharPoly:
    def test_trivial_rank2(self):
        assert euler_char_poly(trivial_rank2()) == Poly((-1, 0, 1))

    def test_depends_only_on_chern_data(self):
        single = CurveBundleSpec(genus=2, summands=(Summand(2, 0, 0),),
                                 b_deg=1, b_weight=0, r=1)
        assert euler_char_poly(single) == euler_char_poly(trivial_rank2())

    def test_genus3_twisted(self):
        spec = CurveBundleSpec(genus=3,
                               summands=(Summand(1, 1, 0), Summand(1, 0, 0)),
                               b_deg=2, b_weight=0, r=1)
        # (k+1)(3k/2 - 2)
        assert euler_char_poly(spec) == Poly((1, 1)) * Poly((-2, Fraction(3, 2)))

    def test_matches_oracle_pointwise(self):
        spec = unstable_pair()
        chi = euler_char_poly(spec)
        for k in range(1, 7):
            assert chi.evaluate(k) == oracle(spec, k)[0]


class TestWeightPoly:
    def test_symmetric_cancellation(self):
        assert weight_poly(trivial_rank2()).is_zero

    def test_vanishes_at_one(self):
        assert weight_poly(unstable_pair()).evaluate(1) == 0

    def test_uniform_weights_are_a_shift(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 3), Summand(2, -1, 3)),
                               b_deg=1, b_weight=0, r=1)
        w = weight_poly(spec)
        chi = euler_char_poly(spec)
        # w = c * k * chi for a constant c, so every invariant vanishes
        assert RatFn(w, Poly((0, 1)) * chi).num.degree in (None, 0)
        h = chowcore.HilbertData.from_poly(chi, spec.n)
        wd = chowcore.WeightData.from_poly(w, spec.n)
        assert chowcore.futaki_invariants(h, wd) == [0, 0, 0]

    def test_zero_constant_term(self):
        for spec in (trivial_rank2(), unstable_pair()):
            assert weight_poly(spec).coefficient(0) == 0

    def test_matches_oracle_pointwise(self):
        spec = unstable_pair()
        w = weight_poly(spec)
        for k in range(1, 7):
            assert w.evaluate(k) == oracle(spec, k)[1]


class TestOracle:
    def test_trivial_bundle_dimension(self):
        spec = trivial_rank2()
        assert oracle(spec, 3) == (8, 0)

    def test_weight_symmetry(self):
        assert oracle(trivial_rank2(), 3)[1] == 0

    def test_worked_k1(self):
        assert oracle(unstable_pair(), 1) == (1, 0)

    def test_guard(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 0, 0), Summand(1, 0, 0)),
                               b_deg=1, b_weight=0, r=2)
        with pytest.raises(ResourceLimitError):
            oracle(spec, 31)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            oracle(trivial_rank2(), 0)


class TestChowWeight:
    def test_single_summand_is_zero(self):
        spec = CurveBundleSpec(genus=2, summands=(Summand(2, 1, 1),),
                               b_deg=1, b_weight=0, r=1)
        assert chow_weight(spec).is_zero

    def test_equal_slopes_are_zero(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 2), Summand(1, 1, -1)),
                               b_deg=2, b_weight=0, r=1)
        assert chow_weight(spec).is_zero

    def test_closed_form_equals_pipeline(self):
        spec = unstable_pair()
        h = chowcore.HilbertData.from_poly(euler_char_poly(spec), spec.n)
        w = chowcore.WeightData.from_poly(weight_poly(spec), spec.n)
        assert chow_weight(spec) == chowcore.chow_weight_fn(h, w)

    def test_degenerate_twisted_slope_rejected(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 1), Summand(1, 1, 0)),
                               b_deg=1, b_weight=0, r=1)
        assert spec.twisted_slope == 0
        with pytest.raises(DegenerateInputError):
            chow_weight(spec)

    def test_non_ample_warns(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 2, 1), Summand(1, 0, 0)),
                               b_deg=0, b_weight=0, r=1)
        assert not spec.satisfies_ampleness_necessary
        with pytest.warns(AmplenessWarning):
            chow_weight(spec)


class TestHigherFutaki:
    def test_worked_value_both_paths(self):
        spec = unstable_pair()
        got = higher_futaki(spec)
        assert got == [Fraction(4, 27), Fraction(4, 27)]
        # closed form re-derived literally
        chi_det = spec.deg_e - Fraction(spec.n * spec.b_deg, spec.r) + 1 - spec.genus
        mu_twist = spec.slope - Fraction(spec.b_deg, spec.r)
        s_sum = spec.weighted_slope_sum
        assert chi_det == -4 and mu_twist == Fraction(-3, 2) and s_sum == Fraction(1, 2)
        expect = [-c * chi_det / mu_twist**2 * s_sum for c in cm_constants(2)]
        assert got == expect
        # generic pipeline re-derived explicitly
        h = chowcore.HilbertData.from_poly(euler_char_poly(spec), spec.n)
        w = chowcore.WeightData.from_poly(weight_poly(spec), spec.n)
        assert got == chowcore.futaki_invariants(h, w)

    def test_equal_slopes_vanish(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 2), Summand(1, 1, 0)),
                               b_deg=2, b_weight=0, r=1)
        assert higher_futaki(spec) == [0, 0]

    def test_global_weight_shift_invariance(self):
        base = unstable_pair()
        for c in (-2, 1, 5):
            shifted = CurveBundleSpec(
                genus=base.genus,
                summands=tuple(Summand(s.rank, s.degree, s.weight + c, s.stable)
                               for s in base.summands),
                b_deg=base.b_deg, b_weight=base.b_weight, r=base.r)
            assert higher_futaki(shifted) == higher_futaki(base)

    def test_b_weight_invariance(self):
        base = unstable_pair()
        for lam0 in (-3, 2, 7):
            shifted = CurveBundleSpec(genus=base.genus, summands=base.summands,
                                      b_deg=base.b_deg, b_weight=lam0, r=base.r)
            assert higher_futaki(shifted) == higher_futaki(base)

    def test_all_vanish_together(self):
        spec = unstable_pair()
        values = higher_futaki(spec)
        assert all(v != 0 for v in values)
        ratios = {v / values[0] for v in values}
        assert all(r > 0 for r in ratios)

    def test_r2_constants_depend_on_r(self):
        """For r > 1 the proportionality to the slope sum persists, but the
        constants are generated by prod_{i<n}(k + i/r)/(n(n+1)), not by the
        r = 1 generator."""
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 1), Summand(1, 0, 0)),
                               b_deg=2, b_weight=0, r=2)
        got = higher_futaki(spec)
        factor = -spec.twisted_det_chi / spec.twisted_slope**2 * spec.weighted_slope_sum
        gen = Poly.one()
        for i in range(spec.n):
            gen = gen * Poly((Fraction(i, spec.r), 1))
        gen = gen / (spec.n * (spec.n + 1))
        adjusted = [gen.coefficient(spec.n + 1 - ell) * factor
                    for ell in range(1, spec.n + 1)]
        n_only = [c * factor for c in cm_constants(spec.n)]
        assert got == adjusted
        assert got != n_only


class TestSlopeClassify:
    def test_unstable(self):
        verdict = slope_classify(unstable_pair())
        assert verdict.classification == UNSTABLE
        assert verdict.per_summand == (Fraction(1, 2), Fraction(-1, 2))

    def test_polystable(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 1, stable=True),
                                         Summand(1, 1, 0, stable=True)),
                               b_deg=2, b_weight=0, r=1)
        assert slope_classify(spec).classification == POLYSTABLE

    def test_single_stable_summand(self):
        spec = CurveBundleSpec(genus=2, summands=(Summand(2, 1, 0, stable=True),),
                               b_deg=1, b_weight=0, r=1)
        assert slope_classify(spec).classification == POLYSTABLE

    def test_semistable_not_polystable(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 1, stable=True),
                                         Summand(1, 1, 0, stable=False)),
                               b_deg=2, b_weight=0, r=1)
        assert slope_classify(spec).classification == SEMISTABLE_NOT_POLYSTABLE

    def test_polystable_forces_zero_invariants(self):
        spec = CurveBundleSpec(genus=2,
                               summands=(Summand(1, 1, 3, stable=True),
                                         Summand(2, 2, -5, stable=True)),
                               b_deg=2, b_weight=0, r=1)
        assert slope_classify(spec).classification == POLYSTABLE
        assert all(f == 0 for f in higher_futaki(spec))


class TestStatementPackaging:
    def test_binomial_identity(self):
        # binom(n-1+kr, n) == binom(n-1+kr, kr) * kr/n for all k, n, r in range
        for n in range(2, 6):
            for r in range(1, 4):
                for k in range(1, 9):
                    kr = k * r
                    assert choose(n - 1 + kr, n) * n == choose(n - 1 + kr, kr) * kr


class TestValidation:
    def test_genus_bound(self):
        with pytest.raises(ValueError):
            CurveBundleSpec(genus=1, summands=(Summand(2, 0, 0),), b_deg=1)

    def test_total_rank_bound(self):
        with pytest.raises(ValueError):
            CurveBundleSpec(genus=2, summands=(Summand(1, 0, 0),), b_deg=1)

    def test_no_summands(self):
        with pytest.raises(ValueError):
            CurveBundleSpec(genus=2, summands=(), b_deg=1)
