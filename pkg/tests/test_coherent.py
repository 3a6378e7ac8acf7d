"""Hypergeometric series and coherent-state families."""

import io
import math
from fractions import Fraction as F

import mpmath as mp
import numpy as np
import pytest

from quadalg import coherent, reps
from quadalg.coherent import (
    HypergeomSeries,
    bg_state,
    bg_overlap_series,
    compact_norm_sq_formula,
    hypergeom,
    perelomov_compact,
    perelomov_noncompact,
    series_0f2,
    series_1f1,
    series_2f0,
)
from quadalg.errors import SeriesConvergenceError, TruncationError
from quadalg.reps import AlgebraLabel

mp.mp.dps = 40


def test_series_validation():
    with pytest.raises(ValueError):
        HypergeomSeries("3F2", (1, 2, 3), (4, 5))
    with pytest.raises(ValueError):
        HypergeomSeries("1F1", (1.0,), (0.0,))        # pole, no termination
    with pytest.raises(ValueError):
        HypergeomSeries("0F2", (), (1.0, -2.0))
    HypergeomSeries("1F1", (-2.0,), (-3.0,))          # terminates before the pole


def test_hypergeom_trivial_values():
    assert hypergeom(series_0f2(1, 1), 0.0).value == 1.0
    for a, b in [(1.0, 2.0), (0.5, 3.5), (7.0, 0.25)]:
        assert hypergeom(series_1f1(a, b), 0.0).value == 1.0


def test_hypergeom_1f1_exponential_identity():
    # 1F1(1;2;x) = (e^x - 1)/x
    res = hypergeom(series_1f1(1, 2), 1.0)
    assert res.converged
    assert res.value == pytest.approx(math.e - 1.0, rel=1e-14)
    res2 = hypergeom(series_1f1(1, 2), -3.0)
    assert res2.value == pytest.approx((math.exp(-3) - 1) / -3, rel=1e-13)


@pytest.mark.parametrize("b1,b2", [(1.0, 1.0), (2.0, 0.5), (3.0, 4.0), (1.5, 2.5)])
@pytest.mark.parametrize("x", [0.1, 1.0, 9.0, 25.0])
def test_0f2_against_mpmath(b1, b2, x):
    got = hypergeom(series_0f2(b1, b2), x)
    ref = float(mp.hyper([], [b1, b2], x))
    assert got.converged
    assert got.value == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("a,b", [(0.5, 1.5), (2.0, 5.0), (3.5, 1.25), (6.0, 2.0)])
@pytest.mark.parametrize("x", [2.5, -2.5, 20.0, -20.0, -60.0])
def test_1f1_against_mpmath(a, b, x):
    got = hypergeom(series_1f1(a, b), x)
    ref = float(mp.hyp1f1(a, b, x))
    assert got.value == pytest.approx(ref, rel=1e-12)


def test_terminating_1f1_is_polynomial():
    # first parameter a non-positive integer: exactly s+1 terms
    for s in range(0, 7):
        for twok in (1, 2, 3, 5):
            res = hypergeom(series_1f1(-float(s), 1.0 - s - twok), 0.9)
            assert res.converged
            assert res.terms == s + 1


def test_series_cap_raises():
    with pytest.raises(SeriesConvergenceError):
        hypergeom(series_0f2(1, 1), 30.0, max_terms=4)


def test_2f0_requires_order():
    with pytest.raises(ValueError):
        hypergeom(series_2f0(1, 1), 0.5)


def test_2f0_terminating_polynomial():
    # (-2)_m terminates after 3 terms: 1 - 2x + 2x^2... wait: check signs below
    res = hypergeom(series_2f0(-2, 1), 0.25, order=10)
    expected = 1 - 2 * 0.25 + 2 * 0.25 ** 2
    assert res.converged
    assert res.value == pytest.approx(expected, rel=1e-15)


def test_2f0_optimal_truncation_metadata():
    res = hypergeom(series_2f0(1, 1), 0.09, order=40)
    assert not res.converged
    assert res.smallest_term_index is not None and res.smallest_term_index >= 1
    assert res.error_estimate is not None and res.error_estimate > 0
    # smallest-term index matches an independent scan of the term magnitudes
    terms = [1.0]
    for m in range(40):
        terms.append(terms[-1] * (1 + m) * (1 + m) * 0.09 / (m + 1))
    import numpy as _np
    assert res.smallest_term_index == int(_np.argmin(terms[:res.terms]))


def test_2f0_alternating_direction_matches_borel_value():
    # on the alternating side the asymptotic sum has a well-defined value
    # reachable through the confluent function of the second kind
    for y in (0.09, 0.05):
        res = hypergeom(series_2f0(1, 1), -y, order=60)
        ref = float(mp.hyperu(1, 1, 1 / y)) / y
        assert abs(res.value - ref) <= res.error_estimate


def test_bg_state_alpha_zero():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    state = bg_state(label, 0.0)
    assert state.truncation == 1
    assert state.coeffs[0] == 1.0
    assert state.norm == pytest.approx(1.0, abs=1e-15)


def test_bg_state_cube_factorial_coefficients():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    state = bg_state(label, 1.0)
    f = float(mp.hyper([], [1, 1], 1.0))
    assert state.norm_constant == pytest.approx(f ** -0.5, rel=1e-13)
    for n in range(6):
        expected = state.norm_constant / math.factorial(n) ** 1.5
        assert state.coeffs[n].real == pytest.approx(expected, rel=1e-12)
    assert state.norm == pytest.approx(1.0, abs=1e-12)
    assert not state.divergence_flag


@pytest.mark.parametrize("k,l", [(F(1, 2), F(1, 4)), (1, F(1, 2)), (F(3, 2), F(1, 4))])
@pytest.mark.parametrize("alpha", [0.5, 1 + 1j, 3.0])
def test_bg_eigen_residual(k, l, alpha):
    label = AlgebraLabel.noncompact(k, l)
    state = bg_state(label, alpha)
    rep = reps.noncompact_rep(label, state.truncation)
    resid = np.linalg.norm(rep.qm @ state.coeffs - alpha * state.coeffs) / abs(alpha)
    assert resid <= 1e-8


def test_bg_residual_decreases_with_dim():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    alpha = 2.0
    resids = []
    for dim in range(6, 26, 2):
        state = bg_state(label, alpha, dim=dim, tail_rel=1.0)
        rep = reps.noncompact_rep(label, dim)
        resids.append(np.linalg.norm(rep.qm @ state.coeffs - alpha * state.coeffs) / alpha)
    above_noise = [r for r in resids if r > 1e-13]
    assert all(a > b for a, b in zip(above_noise, above_noise[1:]))
    assert resids[-1] < 1e-10


def test_bg_truncation_guard():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    with pytest.raises(TruncationError):
        bg_state(label, 3.0, dim=4)


def test_bg_overlap_two_routes():
    label = AlgebraLabel.noncompact(1, F(1, 2))
    for a1, a2 in [(0.5, 1.5), (1 + 1j, 0.5 - 0.25j), (2.0, 2.0)]:
        s1 = bg_state(label, a1)
        s2 = bg_state(label, a2)
        dim = max(s1.truncation, s2.truncation)
        c1 = np.pad(s1.coeffs, (0, dim - s1.truncation))
        c2 = np.pad(s2.coeffs, (0, dim - s2.truncation))
        direct = np.vdot(c1, c2)
        series = bg_overlap_series(label, a1, a2)
        assert direct == pytest.approx(series, rel=1e-9, abs=1e-12)


def test_perelomov_noncompact_basics():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    zero = perelomov_noncompact(label, 0.0, 6)
    assert zero.coeffs[0] == 1.0 and not np.any(zero.coeffs[1:])
    assert not zero.divergence_flag

    beta = 0.3
    state = perelomov_noncompact(label, beta, 10)
    assert state.divergence_flag
    assert state.norm == pytest.approx(1.0, abs=1e-12)
    # coefficient growth ratio beta * sqrt(n+1) for this label
    for n in range(8):
        ratio = state.coeffs[n + 1] / state.coeffs[n]
        assert ratio == pytest.approx(beta * math.sqrt(n + 1), rel=1e-12)
    assert state.provenance["series"] == "2F0-truncated"
    assert state.provenance["order"] == 10


def test_perelomov_compact_single_state():
    label = AlgebraLabel.compact(F(1, 2), F(1, 4))
    for alpha in (0.0, 2.5, 1 - 2j):
        state = perelomov_compact(label, alpha)
        assert state.truncation == 1
        assert abs(state.coeffs[0]) == pytest.approx(1.0, abs=1e-15)


def test_perelomov_compact_ratio_k1_l1():
    label = AlgebraLabel.compact(1, 1)
    alpha = 0.7
    state = perelomov_compact(label, alpha)
    assert state.truncation == 2
    assert state.coeffs[1] / state.coeffs[0] == pytest.approx(math.sqrt(2) * alpha, rel=1e-14)


def _compact_labels():
    for twok in range(1, 7):
        for step in range(0, 7):
            k = F(twok, 2)
            yield AlgebraLabel.compact(k, (k + step) / 2)


def test_perelomov_compact_gamma_norm_formula():
    # closed confluent form of the squared norm against the explicit sum
    for label in _compact_labels():
        s = label.step
        k = float(label.k)
        for gamma in (0.6, 1.0, 2.3):
            formula, phi = compact_norm_sq_formula(label, gamma)
            assert phi.terms == s + 1              # terminating polynomial
            direct = 0.0
            c = gamma ** (-s) * math.sqrt(
                math.exp(math.lgamma(s + 2 * k) - math.lgamma(2 * k)))
            for n in range(s + 1):
                direct += c * c
                if n < s:
                    c = c * gamma * math.sqrt((s - n) / ((n + 1) * (s + 2 * k - 1 - n)))
            assert formula == pytest.approx(direct, rel=1e-10)


def test_perelomov_compact_unit_norm():
    for label in _compact_labels():
        for form, par in (("alpha", 0.8), ("alpha", 1.7 + 0.4j),
                          ("gamma", 0.9), ("gamma", 1.25 - 1j)):
            state = perelomov_compact(label, par, form=form)
            assert abs(state.norm - 1.0) <= 1e-12, (label, form, par)


def test_perelomov_compact_gamma_rejects_zero():
    with pytest.raises(ValueError):
        perelomov_compact(AlgebraLabel.compact(1, 1), 0.0, form="gamma")


def test_gamma_and_alpha_forms_are_reversals():
    # with gamma = 1/alpha the two coefficient vectors agree up to reversal
    # and a global phase/modulus
    label = AlgebraLabel.compact(F(3, 2), F(9, 4))
    alpha = 0.8
    sa = perelomov_compact(label, alpha, form="alpha")
    sg = perelomov_compact(label, 1 / alpha, form="gamma")
    np.testing.assert_allclose(np.abs(sg.coeffs), np.abs(sa.coeffs[::-1]), rtol=1e-12)


def test_coefficients_csv():
    label = AlgebraLabel.noncompact(F(1, 2), F(1, 4))
    state = bg_state(label, 1j, dim=6, tail_rel=1.0)
    buf = io.StringIO()
    coherent.coefficients_csv(state, buf)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "n,re,im,abs2"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[3]) == pytest.approx(abs(state.coeffs[0]) ** 2)
