import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from xcoherence.measures import (
    MEASURE_FIELDS,
    Abscissa,
    c_l1,
    c_rel,
    c_skew,
    concurrence,
    d2_first_order,
    d2_max,
    k_coherence_summand,
    measure_all,
    mnms_c_rel_curve,
    mnms_c_skew_curve,
    mnms_ceiling_l1,
)
from xcoherence.numerics import BracketError, binary_entropy, eig_hermitian_4x4
from xcoherence.xstates import XState, make_family, mix, sample_random

from conftest import random_states, xstates

GRID = [k / 100 for k in range(101)]
SIGMA_YY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])


def _entropy_bits(p):
    p = np.clip(np.asarray(p, float), 0, None)
    p = p[p > 1e-300]
    return float(-(p * np.log2(p)).sum())


def oracle_c_rel(s):
    m = s.to_matrix()
    return _entropy_bits(np.diag(m).real) - _entropy_bits(np.linalg.eigvalsh(m))


def oracle_c_l1(s):
    m = s.to_matrix()
    return float(np.abs(m).sum() - np.abs(np.diag(m)).sum())


def oracle_c_skew(s):
    root = scipy.linalg.sqrtm(s.to_matrix())
    total = 0.0
    for i in range(4):
        p = np.zeros((4, 4))
        p[i, i] = 1
        c = root @ p - p @ root
        total += -0.5 * np.trace(c @ c).real
    return total


def oracle_concurrence(s):
    m = s.to_matrix()
    r = m @ SIGMA_YY @ m.conj() @ SIGMA_YY
    lam = np.sqrt(np.clip(np.sort(np.linalg.eigvals(r).real)[::-1], 0, None))
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def oracle_d2(s):
    m = s.to_matrix().reshape(2, 2, 2, 2)
    ra, rb = np.einsum("ijkj->ik", m), np.einsum("ijil->jl", m)
    pa, pb = np.trace(ra @ ra).real, np.trace(rb @ rb).real
    return ((2 * pa - 1) + (2 * pb - 1)) / 2


def test_c_rel_examples(bell):
    assert c_rel(XState(0.1, 0.2, 0.3, 0.4)) == 0.0
    assert c_rel(bell) == pytest.approx(1.0, abs=1e-15)
    assert c_rel(make_family("rho_l", 0.5)) == pytest.approx(0.5, abs=1e-12)


def test_c_l1_examples():
    assert c_l1(XState(0.1, 0.2, 0.3, 0.4)) == 0.0
    for e in GRID:
        assert c_l1(make_family("mnms", e)) == pytest.approx(e, abs=1e-15)
    assert c_l1(make_family("werner", 0.8)) == pytest.approx(0.8, abs=1e-15)


def test_c_skew_examples(bell):
    assert c_skew(XState(0.1, 0.2, 0.3, 0.4)) == pytest.approx(0.0, abs=1e-16)
    assert c_skew(bell) == pytest.approx(0.5, abs=1e-15)
    for e in GRID:
        s = make_family("rho_l", e)
        assert c_skew(s) == pytest.approx(e / 2, abs=1e-12)
        assert oracle_c_skew(s) == pytest.approx(e / 2, abs=1e-6)


def test_k_coherence_examples(bell):
    d = XState(0.1, 0.2, 0.3, 0.4)
    assert all(k_coherence_summand(d, i) == pytest.approx(0, abs=1e-16) for i in range(4))
    assert k_coherence_summand(bell, 0) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ValueError):
        k_coherence_summand(bell, 4)


def test_skew_reduction_equals_commutator_form():
    for s in random_states(21, 1000, phases=True):
        total = math.fsum(k_coherence_summand(s, i) for i in range(4))
        assert abs(c_skew(s) - total) <= 1e-11


def test_concurrence_examples(bell):
    assert concurrence(bell) == pytest.approx(1.0, abs=1e-15)
    assert concurrence(make_family("werner", 1 / 3)) == pytest.approx(0.0, abs=1e-15)
    assert concurrence(make_family("werner", 0.3)) == 0.0
    assert concurrence(make_family("werner", 0.34)) > 0
    for e in (0.2, 0.5, 0.9):
        assert concurrence(make_family("mems", e)) == pytest.approx(e, abs=1e-15)


def test_concurrence_zero_iff_separable_condition():
    for s in random_states(22, 2000):
        entangled = (s.r22 * s.r33 < abs(s.r14) ** 2) or (s.r11 * s.r44 < abs(s.r23) ** 2)
        assert (concurrence(s) > 0) == entangled


def test_d2_examples():
    for e in GRID:
        assert d2_first_order(make_family("mnms", e)) == 0.0
    assert d2_first_order(XState(1, 0, 0, 0)) == 1.0
    assert d2_first_order(make_family("mems", 0.5)) == pytest.approx(1 / 9, abs=1e-15)


def test_d2max_examples(bell):
    assert d2_max(bell) == pytest.approx(1.0, abs=1e-15)
    assert d2_max(make_family("mnms", 0.0)) == 0.5
    assert d2_max(make_family("mems", 0.0)) == pytest.approx(1 / 9, abs=1e-15)


@pytest.mark.parametrize("measure, oracle, tol", [
    (c_rel, oracle_c_rel, 1e-10),
    (c_l1, oracle_c_l1, 1e-14),
    (c_skew, oracle_c_skew, 1e-6),
    (concurrence, oracle_concurrence, 1e-7),
    (d2_first_order, oracle_d2, 1e-14),
])
def test_measures_against_full_matrix_oracles(measure, oracle, tol):
    for s in random_states(23, 300, phases=True):
        assert measure(s) == pytest.approx(oracle(s), abs=tol)


def test_d2max_with_oracle_spectrum():
    for s in random_states(24, 1000, phases=True):
        assert d2_max(s) == pytest.approx(d2_max(s, eig_hermitian_4x4(s.to_matrix())), abs=1e-9)


def test_mnms_curves_match_family_measures():
    for k in range(201):
        e = k / 200
        s = make_family("mnms", e)
        assert c_rel(s) == pytest.approx(mnms_c_rel_curve(e), abs=1e-12)
        assert c_skew(s) == pytest.approx(mnms_c_skew_curve(e), abs=1e-12)


def test_mnms_ceiling_examples():
    assert mnms_ceiling_l1(0.0, Abscissa.C_REL) == 0.0
    assert mnms_ceiling_l1(1.0, Abscissa.C_REL) == 1.0
    # mpmath: 1 - H2(3/4) = 0.188721875540867136...
    assert mnms_ceiling_l1(1 - binary_entropy(0.75), "c_rel") == pytest.approx(0.5, abs=1e-10)
    assert mnms_ceiling_l1(0.5, Abscissa.C_SKEW) == 1.0
    with pytest.raises(BracketError):
        mnms_ceiling_l1(1.2, Abscissa.C_REL)
    with pytest.raises(BracketError):
        mnms_ceiling_l1(0.6, Abscissa.C_SKEW)


def test_mnms_ceiling_inverts_skew_curve_in_closed_form():
    for k in range(1, 100):
        c = 0.5 * k / 100
        assert mnms_ceiling_l1(c, Abscissa.C_SKEW) == pytest.approx(
            math.sqrt(1 - (1 - 2 * c) ** 2), abs=1e-10)


def test_measure_all_examples(bell):
    d = measure_all(XState(0.1, 0.2, 0.3, 0.4))
    assert (d.c_rel, d.c_l1, d.c_skew, d.concurrence) == (0.0, 0.0, pytest.approx(0, abs=1e-16), 0.0)
    b = measure_all(bell)
    expected = dict(c_rel=1, c_l1=1, c_skew=0.5, concurrence=1, d2=0, d2max=1)
    for k, v in expected.items():
        assert getattr(b, k) == pytest.approx(v, abs=1e-15)


@given(xstates())
def test_aliases_and_nonnegativity(s):
    m = measure_all(s)
    assert m.c_tr == m.c_l1 and m.c_rob == m.c_l1
    assert min(m.as_tuple()) >= -1e-12
    assert m.d2 <= 1 + 1e-12 and m.d2max <= 1 + 1e-12
    assert m.c_l1 <= 1 + 1e-12


def test_nonnegativity_on_1e5_states():
    worst = {k: math.inf for k in MEASURE_FIELDS}
    for i in range(100_000):
        m = measure_all(sample_random(2024, i, phases=i % 2 == 1))
        for k, v in zip(MEASURE_FIELDS, m.as_tuple()):
            if v < worst[k]:
                worst[k] = v
    assert min(worst.values()) >= -1e-12


@given(st.lists(st.floats(0, 1), min_size=4, max_size=4))
def test_coherence_vanishes_on_diagonal_states(w):
    if sum(w) == 0:
        w = [1, 1, 1, 1]
    s = XState(*[x / sum(w) for x in w])
    assert c_rel(s) <= 1e-12 and c_l1(s) == 0 and c_skew(s) <= 1e-12


@given(xstates())
def test_inequalities_pointwise(s):
    m = measure_all(s)
    assert m.c_l1 >= m.c_rel - 1e-10
    assert m.c_l1 >= m.c_rel / 2 - 1e-10
    assert m.c_l1 >= m.concurrence - 1e-12


def test_convexity_under_mixing():
    rng = np.random.default_rng(25)
    states = random_states(26, 2000, phases=True)
    for a, b in zip(states[::2], states[1::2]):
        p = rng.random()
        m = mix(a, b, p)
        for f in (c_rel, c_l1, c_skew):
            assert f(m) <= p * f(a) + (1 - p) * f(b) + 1e-10


def test_rho_l_equality_line():
    for e in GRID:
        s = make_family("rho_l", e)
        assert abs(c_l1(s) - e) <= 1e-10 and abs(c_rel(s) - e) <= 1e-10
