from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critvals.algebra import (
    Poly,
    SquareMatrix,
    charpoly,
    companion,
    cvd,
    cvd_value_poly,
    determinant,
    disc_variety_member,
    discriminant,
    matpoly_eval,
    monic_derivative,
    monic_from_coeffs,
    poly_gcd,
    resultant,
    squarefree_decomposition,
)
from critvals.errors import DegreeTooSmall, DegreeZero, NotMonic, ZeroPolynomial
from critvals.exact import ExactComplex, as_exact, parse_exact_token


def ec(re, im=0):
    return ExactComplex(Fraction(re), Fraction(im))


gauss = st.builds(
    lambda a, b, c, d: ExactComplex(Fraction(a, c), Fraction(b, d)),
    st.integers(-9, 9), st.integers(-9, 9), st.integers(1, 4), st.integers(1, 4),
)


# -- ExactComplex ----------------------------------------------------------

class TestExactComplex:
    def test_field_operations(self):
        a, b = ec(1, 2), ec(Fraction(1, 3), -1)
        assert (a * b) / b == a
        assert a - a == 0
        assert (a + b) - b == a
        assert ec(0, 1) ** 2 == -1
        assert ec(2) ** -2 == Fraction(1, 4)

    def test_reduced_storage(self):
        z = ExactComplex(Fraction(2, 4), Fraction(-6, 8))
        assert z.re == Fraction(1, 2) and z.im == Fraction(-3, 4)

    def test_tokens_round_trip(self):
        for text in ["16/1", "-3/7", "1/2+3/4i", "-5/1i", "0/1"]:
            z = parse_exact_token(text)
            assert parse_exact_token(z.to_token()) == z
        assert ec(16).to_token() == "16/1"
        assert ec(1, -2).to_json() == {"re": "1/1", "im": "-2/1"}
        assert ExactComplex.from_json(ec(1, -2).to_json()) == ec(1, -2)

    def test_decimals_rejected(self):
        with pytest.raises(ValueError):
            parse_exact_token("1.5")

    def test_hash_matches_ints(self):
        assert hash(ec(3)) == hash(3)
        assert {ec(3): 1}[3] == 1

    def test_float_operand_degrades(self):
        assert isinstance(ec(1, 1) * 0.5, complex)
        with pytest.raises(TypeError):
            as_exact(0.5)

    @given(gauss, gauss, gauss)
    def test_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        if b != 0:
            assert (a / b) * b == a


# -- polynomials and matrices ----------------------------------------------

class TestCompanion:
    def test_examples(self):
        assert companion(Poly([-1, 0, 1])).to_numpy().real.tolist() == [[0, 1], [1, 0]]
        assert companion(Poly([7, 1]))[0, 0] == -7
        assert companion(Poly([0, 0, 1])).to_numpy().real.tolist() == [[0, 0], [1, 0]]

    def test_errors(self):
        with pytest.raises(NotMonic):
            companion(Poly([1, 2]))
        with pytest.raises(DegreeZero):
            companion(Poly([1]))

    @settings(max_examples=40, deadline=None)
    @given(st.lists(gauss, min_size=1, max_size=8))
    def test_charpoly_of_companion_is_exact_identity(self, a):
        p = monic_from_coeffs(a)
        assert charpoly(companion(p)) == p


class TestMonicDerivative:
    def test_examples(self):
        assert monic_derivative(Poly([0, -3, 0, 1])) == Poly([-1, 0, 1])
        a0, a1 = ec(3, 1), ec(-5, 2)
        assert monic_derivative(Poly([a0, a1, 1])) == Poly([a1 / 2, 1])
        assert monic_derivative(Poly([0] * 5 + [1])) == Poly([0] * 4 + [1])

    def test_errors(self):
        with pytest.raises(DegreeTooSmall):
            monic_derivative(Poly([3, 1]))
        with pytest.raises(NotMonic):
            monic_derivative(Poly([0, 0, 2]))


class TestResultantDiscriminant:
    def test_resultant_examples(self):
        assert resultant(Poly([-1, 0, 1]), Poly([0, 2])) == -4
        assert resultant(Poly([-1, 0, 1]), Poly([-1, 1])) == 0
        assert resultant(Poly([1, 2, 3, 1]), Poly([5])) == 125

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            resultant(Poly(), Poly([1, 1]))
        with pytest.raises(ZeroPolynomial):
            discriminant(Poly())

    def test_discriminant_examples(self):
        assert discriminant(Poly([-4, 0, 1])) == 16
        assert discriminant(Poly([0, 0, 1])) == 0
        assert discriminant(Poly([5, 1])) == 1
        assert discriminant(Poly([7])) == 1

    @settings(max_examples=40, deadline=None)
    @given(st.lists(gauss, min_size=1, max_size=5), st.lists(gauss, min_size=1, max_size=4))
    def test_resultant_product_formula(self, rp, rq):
        p, q = Poly.from_roots(rp), Poly.from_roots(rq, lc=ec(2, 1))
        expected = 1
        for r in rp:
            expected = expected * q(r)
        assert resultant(p, q) == expected

    def test_discriminant_matches_root_product(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            n = int(rng.integers(2, 8))
            # well separated roots: a jittered lattice
            base = rng.permutation([complex(a, b) for a in range(-2, 3) for b in range(-2, 3)])[:n]
            rts = [complex(round(r.real + 0.2 * rng.uniform(), 3), round(r.imag, 3)) for r in base]
            exact_roots = [ExactComplex(Fraction(r.real).limit_denominator(1000),
                                        Fraction(r.imag).limit_denominator(1000)) for r in rts]
            p = Poly.from_roots(exact_roots)
            d = complex(discriminant(p))
            found = np.roots(p.to_numpy()[::-1])
            prod = 1
            for i, j in itertools.combinations(range(n), 2):
                prod *= (found[i] - found[j]) ** 2
            assert abs(d - prod) <= 1e-6 * abs(d)


class TestMatrices:
    def test_matpoly_examples(self):
        C = SquareMatrix([[0, 1], [1, 0]])
        assert matpoly_eval(Poly([0, -3, 0, 1]), C) == SquareMatrix([[0, -2], [-2, 0]])
        assert matpoly_eval(Poly([0, 1]), C) == C
        assert matpoly_eval(Poly([1]), C) == SquareMatrix.identity(2)

    def test_charpoly_examples(self):
        assert charpoly(SquareMatrix([[0, -2], [-2, 0]])) == Poly([-4, 0, 1])
        assert charpoly(SquareMatrix.identity(2)) == Poly([1, -2, 1])
        assert charpoly(SquareMatrix([[0, 0], [0, 0]])) == Poly([0, 0, 1])

    def test_determinant(self):
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[0, 1], [1, 0]]) == -1
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_float_instantiation(self):
        A = SquareMatrix(np.array([[1.0, 2.0], [0.5, -1.0]]))
        p = charpoly(A)
        assert np.allclose(p.to_numpy(), [-2.0, 0.0, 1.0])


class TestCvd:
    def test_examples(self):
        assert cvd([0, -3, 0]) == 16
        for m in range(3, 7):
            assert cvd([0] * m) == 0
        assert cvd([ec(3, 7), ec(-1, 2)]) == 1

    def test_too_small(self):
        with pytest.raises(DegreeTooSmall):
            cvd([5])

    def test_value_poly_has_critical_values_as_roots(self):
        U = cvd_value_poly(Poly([0, -3, 0, 1]))
        assert U == Poly([-4, 0, 1])

    def test_variety_examples(self):
        assert disc_variety_member([0, -3, 0]) is False
        assert disc_variety_member([0, 0, 0]) is True
        assert disc_variety_member([ec(2), ec(-9, 4)]) is False

    @settings(max_examples=30, deadline=None)
    @given(st.lists(gauss, min_size=2, max_size=4), gauss)
    def test_translation_invariance(self, a, c):
        shifted = [a[0] + c] + a[1:]
        assert cvd(shifted) == cvd(a)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(gauss, min_size=2, max_size=4), gauss)
    def test_variety_inside_cvd_zero_set(self, a, r):
        # force a double critical point at r: P' has (y - r)^2 as a factor
        m = len(a) + 1
        dP = Poly.from_roots([r, r] + a[: m - 3])
        P = Poly([0] + [c / k for k, c in enumerate(dP.coeffs, start=1)]) * m
        coeffs = list(P.coeffs[:-1])
        assert disc_variety_member(coeffs)
        assert cvd(coeffs) == 0

    def test_float_cvd_close_to_exact(self):
        v = cvd([0.0, -3.0, 0.0])
        assert abs(complex(v) - 16) < 1e-9


class TestDivision:
    def test_divmod_and_gcd(self):
        q, r = divmod(Poly([1, 0, 1]), Poly([1, 1]))
        assert q == Poly([-1, 1]) and r == Poly([2])
        g = poly_gcd(Poly.from_roots([1, 2, 3]), Poly.from_roots([2, 3, 5]))
        assert g == Poly.from_roots([2, 3])

    def test_squarefree(self):
        p = Poly.from_roots([1, 1, 1, -2, -2, 5])
        parts = squarefree_decomposition(p)
        assert parts == [(Poly([-5, 1]), 1), (Poly([2, 1]), 2), (Poly([-1, 1]), 3)]
