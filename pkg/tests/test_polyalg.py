"""Exact checks of the polynomial layer and the Casimir recipe."""

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadalg import polyalg, reps
from quadalg.polyalg import RationalPoly, discrete_antiderivative, casimir_matrix


def test_normalization_strips_trailing_zeros():
    p = RationalPoly([1, 2, 0, 0])
    assert p.coeffs == (F(1), F(2))
    assert RationalPoly([0, 0]).degree == -1


def test_shift_and_derivative():
    p = RationalPoly([0, 0, 1])           # x^2
    assert p.shift(1) == RationalPoly([1, 2, 1])
    assert p.derivative() == RationalPoly([0, 2])
    assert p(F(3, 2)) == F(9, 4)


def test_antiderivative_of_2x():
    g = discrete_antiderivative(RationalPoly([0, 2]))
    assert g.poly == RationalPoly([0, 1, 1])        # x^2 + x
    assert g(F(-1)) == 0
    assert g.convention_note == "g(-1) = 0"


def test_antiderivative_of_zero():
    g = discrete_antiderivative(RationalPoly([]))
    assert g.poly == RationalPoly([])


def test_antiderivative_compact_structure_closed_form():
    # for the compact structure polynomial the antiderivative must be
    # (x+1)^3 + (l-2)(x+1)^2 + (K - l^2 - 2l + 1)(x+1) with K = k(1-k)
    for k, l in [(F(1), F(1)), (F(1, 2), F(5, 4)), (F(3, 2), F(9, 4)), (F(2), F(3))]:
        kk = k * (1 - k)
        g = discrete_antiderivative(polyalg.compact_structure(k, l))
        u = RationalPoly([1, 1])  # x + 1
        expected = u * u * u + (l - 2) * (u * u) + (kk - l * l - 2 * l + 1) * u
        assert g.poly == expected


def test_antiderivative_su11():
    # -2x integrates to -(x^2 + x), matching raising@lowering - d(d-1) form
    g = discrete_antiderivative(polyalg.su11_structure())
    assert g.poly == RationalPoly([0, -1, -1])


rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=12)


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=0, max_size=6), st.lists(rationals, min_size=20, max_size=20))
def test_antiderivative_property(coeffs, xs):
    f = RationalPoly(coeffs)
    g = discrete_antiderivative(f)
    # symbolic identity and 20 random rational sample points, both exact
    assert g.poly - g.poly.shift(-1) == f
    for x in xs:
        assert g(x) - g(x - 1) == f(x)
    assert g(F(-1)) == 0


def test_casimir_matrix_su2_half():
    rep = reps.su2_rep(F(1, 2))
    g = discrete_antiderivative(polyalg.su2_structure())
    c = casimir_matrix(rep, g)
    assert np.array_equal(c, 0.75 * np.eye(2))


def test_casimir_matrix_compact_11_is_zero():
    rep = reps.compact_rep(reps.AlgebraLabel.compact(1, 1))
    g = discrete_antiderivative(polyalg.compact_structure(F(1), F(1)))
    c = casimir_matrix(rep, g)
    assert np.abs(c).max() < 1e-12
    # closed form l^3 + (l+1)[k(1-k)-1] + 1 = 1 + 2*(0-1) + 1 = 0
    assert reps.reference_casimir(rep.label) == 0


def test_casimir_matrix_two_dim_family_k1():
    rep = reps.two_dim_family(1)
    c = casimir_matrix(rep, reps.casimir_poly(rep))
    assert np.abs(c).max() < 1e-12
    assert F(-3 - 5 + 11 - 3, 8) == 0


def test_casimir_matrix_rejects_mismatched_shapes():
    rep = reps.su2_rep(1)

    class Broken:
        q0 = rep.q0
        qp = rep.qp[:2, :2]
        qm = rep.qm

    with pytest.raises(ValueError):
        casimir_matrix(Broken(), reps.casimir_poly(rep))


@pytest.mark.parametrize("rep", [
    reps.su2_rep(F(3, 2)),
    reps.su11_rep(F(1, 2), 8),
    reps.compact_rep(reps.AlgebraLabel.compact(F(3, 2), F(9, 4))),
    reps.noncompact_rep(reps.AlgebraLabel.noncompact(F(3, 2), F(1, 4)), 9),
])
def test_both_casimir_forms_agree(rep):
    # lowering@raising + g(q0) must equal raising@lowering + g(q0 - 1)
    g = reps.casimir_poly(rep).poly
    d = rep.dim
    lhs = rep.qm @ rep.qp + g.eval_matrix(rep.q0)
    rhs = rep.qp @ rep.qm + g.eval_matrix(rep.q0 - np.eye(d))
    mask = rep.interior
    assert np.abs((lhs - rhs)[np.ix_(mask, mask)]).max() < 1e-10
