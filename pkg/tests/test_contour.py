from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.algebra import Poly, SquareMatrix, charpoly, cvd
from critvals.contour import (
    ContourConfig,
    _quadrature,
    cauchy_matrix_fn,
    circle_quadrature,
    count_zeros,
    find_zeros,
    newton_sums,
    newton_to_monic,
    truncated_cvd,
)
from critvals.errors import (
    NoConvergence,
    NonFiniteSample,
    ResolventNearSingular,
    ZeroNearContour,
)
from critvals.exprlang import EntireExpr, parse_expr
from critvals.roots import roots


def cfg(R, **kw):
    return ContourConfig(radius=R, **kw)


class TestConfig:
    @pytest.mark.parametrize("kw", [{"radius": 0}, {"nodes": 8}, {"nodes": 48},
                                    {"guard_tol": 0}, {"match_tol": -1}])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            ContourConfig(**kw)


class TestQuadrature:
    def test_examples(self):
        assert abs(circle_quadrature(lambda z: 1 / z, cfg(1)) - 1) < 1e-14
        assert abs(circle_quadrature(lambda z: z, cfg(1))) < 1e-14
        assert abs(circle_quadrature(lambda z: 1 / (z - 2), cfg(1))) < 1e-14

    def test_nonfinite_node_reported(self):
        with pytest.raises(NonFiniteSample) as info, np.errstate(all="ignore"):
            circle_quadrature(lambda z: 1 / (z - 1), cfg(1))
        assert info.value.details["node"] == 0

    def test_no_convergence(self):
        # pole very close to the circle: convergence needs far more nodes
        with pytest.raises(NoConvergence):
            circle_quadrature(lambda z: 1 / (z - 1.0001), cfg(1, max_doublings=1))

    def test_doubling_stability(self):
        g = lambda z: np.exp(z) / (z - 0.3)
        res = _quadrature(g, cfg(2.0))
        again = _quadrature(g, cfg(2.0, nodes=res.nodes * 2, max_doublings=0 + 1))
        assert abs(res.value - again.value) <= 1e-10 * max(1, abs(res.value))

    def test_matrix_valued(self):
        v = circle_quadrature(lambda z: np.stack([1 / z, z], axis=-1), cfg(1))
        assert np.allclose(v, [1, 0])


class TestCounting:
    def test_examples(self):
        assert count_zeros(parse_expr("exp(z) - 1"), cfg(1)) == 1
        assert count_zeros(parse_expr("exp(z) - 1"), cfg(7)) == 3
        assert count_zeros(parse_expr("3z^2 - 3"), cfg(2)) == 2

    def test_single_term_counted_directly(self):
        assert count_zeros(parse_expr("exp(z)"), cfg(30)) == 0
        assert count_zeros(parse_expr("z^2*exp(z)"), cfg(30)) == 2
        assert count_zeros(parse_expr("z^2*exp(z)"), ContourConfig(radius=1, center=3)) == 0

    def test_zero_near_contour(self):
        with pytest.raises(ZeroNearContour):
            count_zeros(parse_expr("z - 1"), cfg(1))

    def test_monotone_in_radius(self):
        f = parse_expr("exp(z) - z - 2")
        counts = [count_zeros(f, cfg(R)) for R in np.arange(0.55, 14, 0.9)]
        assert counts == sorted(counts)
        assert counts[-1] > counts[0]


class TestNewton:
    def test_power_sums(self):
        assert np.allclose(newton_sums(parse_expr("3z^2 - 3"), 2, cfg(2)), [0, 2], atol=1e-12)
        assert np.allclose(newton_sums(parse_expr("exp(z) - 1"), 1, cfg(1)), [0], atol=1e-12)
        s = newton_sums(parse_expr("exp(z) - 1"), 3, cfg(7))
        assert np.allclose(s, [0, -8 * math.pi ** 2, 0], atol=1e-9)

    def test_newton_to_monic(self):
        assert np.allclose(newton_to_monic([0, 2]).to_numpy(), [-1, 0, 1])
        assert np.allclose(newton_to_monic([2.5 + 1j]).to_numpy(), [-2.5 - 1j, 1])
        p = newton_to_monic([0, -8 * math.pi ** 2, 0])
        assert np.allclose(p.to_numpy(), [0, 4 * math.pi ** 2, 0, 1])

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.complex_numbers(max_magnitude=2, allow_nan=False), min_size=1, max_size=6))
    def test_power_sums_reproduced(self, rts):
        rts = np.array(rts)
        s = [np.sum(rts ** k) for k in range(1, len(rts) + 1)]
        p = newton_to_monic(s)
        assert np.allclose(p.to_numpy(), np.poly(rts)[::-1], atol=1e-8 * 4 ** len(rts))


class TestCauchyMatrix:
    def test_examples(self):
        C = SquareMatrix([[0, 1], [1, 0]])
        W = cauchy_matrix_fn(parse_expr("z"), C, cfg(2))
        assert np.allclose(W.to_numpy(), [[0, 1], [1, 0]], atol=1e-12)
        W = cauchy_matrix_fn(EntireExpr.constant(3), C, cfg(2))
        assert np.allclose(W.to_numpy(), 3 * np.eye(2), atol=1e-12)
        W = cauchy_matrix_fn(parse_expr("z^3 - 3z"), C, cfg(2))
        assert np.allclose(W.to_numpy(), [[0, -2], [-2, 0]], atol=1e-12)

    def test_eigenvalue_on_contour(self):
        with pytest.raises(ResolventNearSingular):
            cauchy_matrix_fn(parse_expr("z"), SquareMatrix([[1.0]]), cfg(1))

    def test_spectral_mapping(self):
        rng = np.random.default_rng(4)
        R = 3.0
        w = parse_expr("exp(z) - z^2 + (0,1)*z")
        for _ in range(10):
            n = int(rng.integers(2, 6))
            lam = (R / 2) * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
            V = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            C = SquareMatrix(V @ np.diag(lam) @ np.linalg.inv(V))
            W = cauchy_matrix_fn(w, C, cfg(R))
            got = np.sort_complex(roots(charpoly(W)))
            want = np.sort_complex(np.array([np.exp(x) - x ** 2 + 1j * x for x in lam]))
            # match as multisets
            for g in got:
                i = int(np.argmin(np.abs(want - g)))
                assert abs(want[i] - g) < 1e-6
                want = np.delete(want, i)


class TestTruncatedCvd:
    def test_examples(self):
        assert abs(truncated_cvd(parse_expr("z^3 - 3z"), cfg(2)).cvd_value - 16) < 1e-9
        rep = truncated_cvd(parse_expr("exp(z) - z"), cfg(7))
        assert rep.m == 3
        assert abs(rep.cvd_value - (-256 * math.pi ** 6)) <= 1e-6 * 256 * math.pi ** 6
        for R in (1, 5, 20):
            rep = truncated_cvd(parse_expr("exp(z)"), cfg(R))
            assert rep.m == 0 and rep.cvd_value == 1

    def test_report_shapes(self):
        rep = truncated_cvd(parse_expr("exp(z) - z"), cfg(7))
        assert rep.critical_poly.degree == rep.m == rep.U.degree
        assert rep.W.n == rep.m
        assert rep.diagnostics["min_critical_point_distance"] == pytest.approx(2 * math.pi)

    def test_stage_labels(self):
        with pytest.raises(ZeroNearContour) as info:
            truncated_cvd(parse_expr("z^3 - 3z"), cfg(1))
        assert info.value.stage == "count_zeros"

    def test_polynomial_consistency(self):
        rng = np.random.default_rng(8)
        done = 0
        while done < 15:
            m = int(rng.integers(3, 7))
            rts = np.round(2 * rng.uniform(-1, 1, m) + 2j * rng.uniform(-1, 1, m), 3)
            p = Poly([complex(c) for c in np.poly(rts)[::-1]])
            R = float(rng.uniform(2.5, 4))
            crit = roots(p.derivative())
            if np.min(np.abs(R - np.abs(crit))) < 0.1 or np.max(np.abs(crit)) > R:
                continue
            exact = cvd(list(p.coeffs[:-1]))
            got = truncated_cvd(EntireExpr.from_poly(p), cfg(R)).cvd_value
            assert abs(got - complex(exact)) <= 1e-6 * abs(complex(exact))
            done += 1

    def test_constant_shift_invariance(self):
        for text in ["exp(z) - z", "z^4 - 2z^2 + (0,1)*z", "exp(z^2/4) - z"]:
            w = parse_expr(text)
            a = truncated_cvd(w, cfg(4.3)).cvd_value
            b = truncated_cvd(w + EntireExpr.constant(5 - 2j), cfg(4.3)).cvd_value
            assert abs(a - b) <= 1e-6 * max(1.0, abs(a))


class TestFindZeros:
    def test_simple_and_multiple(self):
        pts, mult = find_zeros(parse_expr("exp(z) - 1"), cfg(10))
        assert mult == [1, 1, 1]
        assert np.allclose(sorted(p.imag for p in pts), [-2 * math.pi, 0, 2 * math.pi])
        pts, mult = find_zeros(parse_expr("3z^2"), cfg(1))
        assert mult == [2]
        pts, mult = find_zeros(parse_expr("(z - 1)^3 * (z + 1)"), cfg(2.5))
        assert sorted(mult) == [1, 3]

    def test_no_zeros(self):
        assert find_zeros(parse_expr("exp(z)"), cfg(3)) == ([], [])
