from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.algebra import Poly
from critvals.errors import (
    ConstantInput,
    DeltaTooLarge,
    DuplicatePoints,
    InputError,
    ZeroNearContour,
)
from critvals.exact import ExactComplex
from critvals.exprlang import EntireExpr, parse_expr
from critvals.typicality import (
    _to_field,
    classify_critical_cardinality,
    classify_surjectivity,
    degeneracy_measure,
    hermite_interpolant,
    split_zeros,
    theta_bound,
    theta_value,
    typicality_probe,
)


class TestSurjectivity:
    def test_normal_form(self):
        s = classify_surjectivity(parse_expr("3*exp(2z) + 5"))
        assert not s.surjective
        assert s.b == EntireExpr.constant(3) and s.Q == parse_expr("2z") and s.a == EntireExpr.constant(5)
        assert s.omitted_value == 5

    def test_examples(self):
        assert classify_surjectivity(parse_expr("exp(z) - z")).surjective
        s = classify_surjectivity(parse_expr("7"))
        assert not s.surjective and s.b.is_zero and s.a == EntireExpr.constant(7)
        assert not classify_surjectivity(parse_expr("exp(z^2 - z)")).surjective
        assert classify_surjectivity(parse_expr("z*exp(z)")).surjective
        assert classify_surjectivity(parse_expr("exp(z) + exp(2z)")).surjective

    def test_json(self):
        obj = classify_surjectivity(parse_expr("3*exp(2z) + 5")).to_json()
        assert obj["kind"] == "NonSurjective" and parse_expr(obj["Q"]) == parse_expr("2z")


class TestCriticalCardinality:
    def test_examples(self):
        c = classify_critical_cardinality(parse_expr("z^3 - 3z"))
        assert c.finite and c.m == 2
        assert classify_critical_cardinality(parse_expr("exp(z) - z")).kind == "Infinite"
        c = classify_critical_cardinality(parse_expr("exp(z)"))
        assert c.finite and c.m == 0
        c = classify_critical_cardinality(parse_expr("z^2*exp(z)"))
        assert c.finite and c.m == 2
        assert classify_critical_cardinality(parse_expr("z^2*exp(z) + z")).kind == "Infinite"
        c = classify_critical_cardinality(parse_expr("exp(z^2)"))
        assert c.finite and c.m == 1

    def test_constant(self):
        with pytest.raises(ConstantInput):
            classify_critical_cardinality(parse_expr("4"))

    @pytest.mark.parametrize("text", ["exp(z) - z", "3*exp(2z) + 5", "z^3 - 3z", "exp(z)",
                                      "7", "exp(z^2)*z + exp(z)"])
    @pytest.mark.parametrize("extra", ["z^4", "exp(3z)", "(2,1)*z*exp(z^2)"])
    def test_stable_under_add_subtract(self, text, extra):
        f = parse_expr(text)
        g = (f + parse_expr(extra)) - parse_expr(extra)
        assert classify_surjectivity(g) == classify_surjectivity(f)
        if not f.is_constant:
            assert classify_critical_cardinality(g) == classify_critical_cardinality(f)


class TestProbe:
    def test_exp_minus_z(self):
        rep = typicality_probe(parse_expr("exp(z) - z"), 10.0)
        assert rep.verdict == "TypicalEvidence" and rep.reasons == []
        pts = sorted(rep.critical_points_in_disk, key=lambda c: c.point.imag)
        for c, k in zip(pts, (-1, 0, 1)):
            assert abs(c.point - 2j * math.pi * k) < 1e-8
            assert abs(c.value - (1 - 2j * math.pi * k)) < 1e-8
            assert abs(c.second_derivative_modulus - 1) < 1e-8
        assert rep.corroboration["agrees"] is True

    def test_larger_radius_reproduces_all_critical_data(self):
        R = 33.0
        rep = typicality_probe(parse_expr("exp(z) - z"), R)
        ks = [k for k in range(-10, 11) if abs(2 * math.pi * k) < R]
        assert len(rep.critical_points_in_disk) == len(ks)
        for k in ks:
            w = 2j * math.pi * k
            c = min(rep.critical_points_in_disk, key=lambda c: abs(c.point - w))
            assert abs(c.point - w) < 1e-8 and abs(c.value - (1 - w)) < 1e-8

    def test_finite_critical_set(self):
        rep = typicality_probe(parse_expr("z^3 - 3z"), 2.0)
        assert rep.surjectivity.surjective
        assert rep.verdict == "NotTypical" and rep.reasons == ["finite critical set"]
        assert rep.min_value_gap == pytest.approx(4.0)

    def test_non_surjective(self):
        rep = typicality_probe(parse_expr("exp(z)"), 5.0)
        assert rep.verdict == "NotTypical"
        assert rep.reasons == ["non-surjective", "no critical points"]
        assert rep.min_value_gap is None

    def test_guard(self):
        with pytest.raises(ZeroNearContour):
            typicality_probe(parse_expr("exp(z) - z"), 2 * math.pi)

    def test_degeneracy_measure(self):
        assert degeneracy_measure(parse_expr("z^3"), 0) < 1e-12
        assert degeneracy_measure(parse_expr("z^2"), 0) == pytest.approx(1.0)

    @pytest.mark.parametrize("text,R,equal", [
        # even functions pair up critical points at +w and -w with equal values
        ("exp(z) + exp(-z) - z^2 + exp(2z) + exp(-2z)", 1.5, True),
        ("z^4 - 2z^2", 1.6, True),
        ("z^4 - 2z^2 + z/10", 1.6, False),
        ("exp(z) - z + z^3/50", 3.0, False),
        ("exp(z^2) + exp(-z^2) + z^4", 1.2, None),
        ("exp(z) - z + exp(-z) + z^2", 2.5, None),
    ])
    def test_corroboration(self, text, R, equal):
        rep = typicality_probe(parse_expr(text), R)
        corr = rep.corroboration
        assert corr["agrees"] is True, corr
        if equal is not None:
            assert corr["gap_criterion"] == (not equal)


class TestTheta:
    def test_examples(self):
        r = theta_bound(1.0, 1)
        assert r.theta == pytest.approx(math.pi - 1) and r.holds and not r.vacuous
        assert r.empirical_min >= r.theta
        assert theta_value(1.0, 4) == pytest.approx(4 * math.pi - 1)
        assert all(theta_value(1.0, m) < theta_value(1.0, m + 1) for m in range(1, 12))
        r = theta_bound(0.001, 1)
        assert r.vacuous and r.theta < 0

    def test_sample_floor(self):
        with pytest.raises(InputError):
            theta_bound(1.0, 1, samples=99)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.05, 20), st.integers(1, 6))
    def test_bound_holds(self, eps, m):
        assert theta_bound(eps, m, samples=512).holds


def _separated(rng, m, sep=0.1):
    while True:
        z = rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m)
        if m == 1 or min(abs(a - b) for i, a in enumerate(z) for b in z[:i]) >= sep:
            return z


class TestHermite:
    def test_examples(self):
        P = hermite_interpolant([0], [5])
        assert P == Poly([5, 0, 5])
        assert hermite_interpolant([0, 1, 2j], [0, 0, 0]).is_zero
        P = hermite_interpolant([0, 1], [1, 2])
        assert P.degree == 4
        assert P(0) == 1 and P(1) == 2
        dP = P.derivative()
        assert dP(0) == 0 and dP(1) == 0

    def test_duplicates(self):
        with pytest.raises(DuplicatePoints):
            hermite_interpolant([0, 1, 0], [1, 2, 3])

    def test_random_instances(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            m = int(rng.integers(1, 7))
            z = _separated(rng, m)
            y = rng.uniform(-1, 1, m) + 1j * rng.uniform(-1, 1, m)
            P = hermite_interpolant(z, y)
            dP = P.derivative()
            assert P.degree <= 2 * m
            for a, b in zip(z, y):
                za = _to_field(a)
                assert abs(P(za) - _to_field(b)) < 1e-10
                assert abs(dP(za)) < 1e-10

    def test_float_evaluation(self):
        z = [0.1, -0.4 + 0.3j, 0.7j]
        y = [1, 2j, -1]
        P = hermite_interpolant(z, y).to_complex()
        c = P.to_numpy()[::-1]
        assert np.allclose(np.polyval(c, z), y, atol=1e-9)


class TestSplit:
    def test_double_root(self):
        p = Poly.from_roots([1, 1, -2])
        res = split_zeros(p, 0.01)
        assert res.split and res.clusters == [(1, 2)]
        assert np.allclose(res.roots, [-2, 0.9, 1.1])
        assert np.allclose(np.sort_complex(np.roots(res.poly.to_complex().to_numpy()[::-1])),
                           [-2, 0.9, 1.1])

    def test_triple_root(self):
        res = split_zeros(Poly([0, 0, 0, 1]), 0.001)
        want = 0.1 * np.exp(2j * np.pi * np.arange(3) / 3)
        for w in want:
            assert np.min(np.abs(res.roots - w)) < 1e-12
        assert res.poly == Poly([Fraction(-1, 1000), 0, 0, 1])

    def test_no_multiple_roots(self):
        p = Poly.from_roots([1, 2])
        res = split_zeros(p, 0.01)
        assert res.flag == "NoMultipleRoots" and res.poly == p

    def test_delta_too_large(self):
        with pytest.raises(DeltaTooLarge):
            split_zeros(Poly.from_roots([1, 1, 2]), 0.5)

    def test_invariants(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            simple = [complex(int(rng.integers(-5, 6)), int(rng.integers(-5, 6))) for _ in range(3)]
            multiple = [complex(int(rng.integers(-5, 6)), int(rng.integers(-5, 6)))]
            distinct = list(dict.fromkeys(simple + multiple))
            if len(distinct) < 4:
                continue
            k = int(rng.integers(2, 5))
            p = Poly.from_roots([_exact(r) for r in simple + multiple * k])
            res = split_zeros(p, 1e-4)
            assert res.poly.degree == p.degree == len(res.roots)
            found = np.roots(res.poly.to_complex().to_numpy()[::-1])
            for r in simple:
                assert np.min(np.abs(found - r)) < 1e-8
            d = np.abs(found[:, None] - found[None, :])
            np.fill_diagonal(d, np.inf)
            assert d.min() > 1e-3



def _exact(z):
    return ExactComplex(int(z.real), int(z.imag))
