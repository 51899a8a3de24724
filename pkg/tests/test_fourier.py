"""Analysis/synthesis, distinguished kernels, powers, serialization."""

import math

import numpy as np
import pytest

from peterweyl.fourier import (
    BandLimitError,
    GridFunction,
    SpectralFunction,
    analyze,
    dirichlet,
    dump_spectral,
    load_spectral,
    partial_sum,
    pointwise_power,
    support_count,
    synthesize,
    zero_spectral,
)
from peterweyl.groups import (
    DomainError,
    enumerate_dual,
    matrix_coefficient,
    quadrature,
    rep_info,
    su2,
    torus,
    weyl_count,
)

T1 = torus(1)
T2 = torus(2)
T3 = torus(3)
SU2 = su2()


def _random_spectral(group, L, seed):
    rng = np.random.default_rng(seed)
    coeffs = {}
    for xi in enumerate_dual(group, L):
        d = rep_info(group, xi).dim
        coeffs[xi] = (
            rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        ) / math.sqrt(2.0)
    return SpectralFunction(group, coeffs)


def _max_err(F, G):
    keys = set(F.coeffs) | set(G.coeffs)
    err = 0.0
    for k in keys:
        a = F.coeffs.get(k)
        b = G.coeffs.get(k)
        if a is None:
            err = max(err, float(np.abs(b).max()))
        elif b is None:
            err = max(err, float(np.abs(a).max()))
        else:
            err = max(err, float(np.abs(a - b).max()))
    return err


# ---------------------------------------------------------------------------
# analyze / synthesize


def test_analyze_constant():
    rule = quadrature(T1, 2.0)
    f = GridFunction(rule, np.ones(rule.node_count))
    F = analyze(f, 2.0)
    assert F.support() == [(0,)]
    assert F.coeffs[(0,)][0, 0] == pytest.approx(1.0, abs=1e-14)


def test_synthesize_trivial_is_constant():
    for g in (T1, T2, SU2):
        rule = quadrature(g, 2.0)
        xi0 = (0,) * g.dim if g.kind == "torus" else 0
        F = SpectralFunction(g, {xi0: [[1.0]]})
        vals = synthesize(F, rule).values
        assert np.abs(vals - 1.0).max() < 1e-12


def test_analyze_single_mode():
    rule = quadrature(T1, 4.0)
    xs = rule.axes[0]
    F = analyze(GridFunction(rule, np.exp(3j * xs)), 4.0)
    assert F.support() == [(3,)]
    assert F.coeffs[(3,)][0, 0] == pytest.approx(1.0, abs=1e-13)


def test_su2_character_coefficients():
    # f = 2 chi_{1/2} synthesizes from fhat(1/2) = I and analyzes back to it
    rule = quadrature(SU2, 2.0)
    F = SpectralFunction(SU2, {1: np.eye(2)})
    f = synthesize(F, rule)
    back = analyze(f, 2.0)
    assert back.support() == [1]
    assert np.abs(back.coeffs[1] - np.eye(2)).max() < 1e-12


def test_synthesize_dirichlet_closed_form():
    rule = quadrature(T1, 2.0)
    xs = rule.axes[0]
    vals = synthesize(dirichlet(T1, 2.0), rule).values
    assert np.abs(vals - (1.0 + 2.0 * np.cos(xs))).max() < 1e-12


def test_su2_synthesis_matches_trace_formula():
    # non-symmetric coefficients pin row/column conventions
    rule = quadrature(SU2, 3.0)
    F = _random_spectral(SU2, 3.0, seed=5)
    vals = synthesize(F, rule).values
    rng = np.random.default_rng(0)
    for idx in rng.integers(0, rule.node_count, size=8):
        x = tuple(rule.nodes[idx])
        direct = sum(
            (twoL + 1) * np.trace(mat @ matrix_coefficient(SU2, twoL, x))
            for twoL, mat in F.items()
        )
        assert abs(vals[idx] - direct) < 1e-10


@pytest.mark.parametrize(
    "group,L", [(T1, 6.0), (T2, 4.0), (T3, 2.5), (SU2, 3.0)]
)
def test_round_trip_random(group, L):
    F = _random_spectral(group, L, seed=3)
    rule = quadrature(group, L)
    back = analyze(synthesize(F, rule), L)
    assert _max_err(F, back) < 1e-9


def test_analyze_band_guard():
    rule = quadrature(T1, 2.0)
    f = GridFunction(rule, np.ones(rule.node_count))
    with pytest.raises(BandLimitError):
        analyze(f, 8.0)


def test_synthesize_band_guard():
    rule = quadrature(T1, 2.0)
    F = SpectralFunction(T1, {(9,): [[1.0]]})
    with pytest.raises(BandLimitError):
        synthesize(F, rule)


def test_shape_mismatch_rejected():
    with pytest.raises(DomainError):
        SpectralFunction(SU2, {2: np.eye(2)})  # l = 1 needs 3x3


def test_linearity_and_conjugation():
    rule = quadrature(T1, 5.0)
    F = _random_spectral(T1, 5.0, seed=8)
    G = _random_spectral(T1, 5.0, seed=9)
    a, b = 2.0 - 1.0j, 0.5 + 0.25j
    combo = SpectralFunction(
        T1,
        {k: a * F.coeffs[k] + b * G.coeffs[k] for k in F.coeffs},
    )
    lhs = synthesize(combo, rule).values
    rhs = a * synthesize(F, rule).values + b * synthesize(G, rule).values
    assert np.abs(lhs - rhs).max() < 1e-12

    conj_grid = GridFunction(rule, np.conj(synthesize(F, rule).values))
    back = analyze(conj_grid, 5.0)
    for k, mat in F.items():
        assert abs(back.coeffs[(-k[0],)][0, 0] - np.conj(mat[0, 0])) < 1e-12


# ---------------------------------------------------------------------------
# dirichlet / partial_sum


def test_dirichlet_small():
    D = dirichlet(T1, 2.0)
    assert D.support() == [(-1,), (0,), (1,)]
    D = dirichlet(SU2, 2.0)
    assert D.support() == [0, 1, 2]
    assert D.coeffs[2].shape == (3, 3)


@pytest.mark.parametrize("group,L", [(T1, 4.0), (T2, 3.0), (SU2, 3.0)])
def test_dirichlet_identity_value_is_weyl_count(group, L):
    rule = quadrature(group, L)
    vals = synthesize(dirichlet(group, L), rule)
    assert vals.values[rule.identity_index].real == pytest.approx(
        weyl_count(group, L), rel=1e-12
    )


def test_partial_sum():
    F = _random_spectral(T1, 6.0, seed=1)
    assert partial_sum(F, 6.0).support() == F.support()
    assert partial_sum(F, 1.0).support() == [(0,)]
    assert partial_sum(dirichlet(T1, 4.0), 2.0).support() == dirichlet(T1, 2.0).support()


# ---------------------------------------------------------------------------
# pointwise powers


def test_power_single_mode():
    T = SpectralFunction(T1, {(2,): [[1.0]]})
    P = pointwise_power(T, 2)
    assert P.support() == [(4,)]
    assert P.coeffs[(4,)][0, 0] == pytest.approx(1.0, abs=1e-12)


def test_power_binomial_oracle():
    # (1 + e^{ix})^2 has coefficients numpy.polymul([1,1],[1,1]) = [1,2,1]
    expected = np.polymul([1.0, 1.0], [1.0, 1.0])
    T = SpectralFunction(T1, {(0,): [[1.0]], (1,): [[1.0]]})
    P = pointwise_power(T, 2)
    assert P.support() == [(0,), (1,), (2,)]
    for k, c in enumerate(expected):
        assert P.coeffs[(k,)][0, 0] == pytest.approx(c, abs=1e-12)


def test_power_identity():
    F = _random_spectral(SU2, 2.5, seed=12)
    P = pointwise_power(F, 1)
    assert _max_err(F, P) < 1e-9 * max(abs(m).max() for m in F.coeffs.values())


def test_power_su2_character_square():
    # chi_{1/2}^2 = chi_0 + chi_1 by Clebsch-Gordan; coefficients I_d / d
    T = SpectralFunction(SU2, {1: np.eye(2) / 2.0})
    P = pointwise_power(T, 2)
    assert P.support() == [0, 2]
    assert abs(P.coeffs[0][0, 0] - 1.0) < 1e-10
    assert np.abs(P.coeffs[2] - np.eye(3) / 3.0).max() < 1e-10


def test_power_support_growth_bound():
    # coefficients beyond rho * L_T vanish: analyze the square on a wider band
    T = _random_spectral(T1, 3.0, seed=4)
    w = T.max_weight()
    rule = quadrature(T1, 3.0 * w)
    sq = synthesize(T, rule).values ** 2
    wide = analyze(GridFunction(rule, sq), 3.0 * w)
    for k, mat in wide.items():
        if abs(mat[0, 0]) > 1e-9:
            assert 1 + k[0] ** 2 <= (2.0 * w * (1 + 1e-9)) ** 2


def test_power_validation():
    T = SpectralFunction(T1, {(1,): [[1.0]]})
    with pytest.raises(DomainError):
        pointwise_power(T, 0)
    assert not pointwise_power(zero_spectral(T1), 3)


def test_support_count_thresholds():
    F = SpectralFunction(T1, {(0,): [[1.0]], (1,): [[1e-6]], (2,): [[1e-13]]})
    assert support_count(F, 1e-12) == 2
    assert support_count(F, 1e-3) == 1
    assert support_count(F, 0.0) == 3
    assert support_count(zero_spectral(T1)) == 0


# ---------------------------------------------------------------------------
# serialization


def test_serialization_round_trip_bytes():
    for F in (_random_spectral(T2, 3.0, seed=2), _random_spectral(SU2, 2.5, seed=2)):
        text = dump_spectral(F)
        again = dump_spectral(load_spectral(text))
        assert again == text


def test_serialization_header_and_errors():
    F = _random_spectral(T1, 2.0, seed=0)
    text = dump_spectral(F)
    assert text.startswith("specfun v1\ngroup torus:1\n")
    with pytest.raises(DomainError):
        load_spectral("nonsense\n")
    with pytest.raises(DomainError):
        load_spectral("specfun v1\ngroup torus:1\nrep 0 1 0.5\n")  # odd entry count


def test_determinism_byte_identical():
    a = dump_spectral(_random_spectral(SU2, 2.5, seed=77))
    b = dump_spectral(_random_spectral(SU2, 2.5, seed=77))
    assert a == b


def test_immutability():
    F = _random_spectral(T1, 2.0, seed=6)
    with pytest.raises(AttributeError):
        F.group = T2
    with pytest.raises(ValueError):
        F.coeffs[(0,)][0, 0] = 5.0
