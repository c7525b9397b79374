import itertools
import math

import numpy as np
import pytest

from bellcorr.bellstate import BellDiagonalState, to_density_matrix
from bellcorr.correlations import (
    binary_entropy,
    classical_correlation,
    closest_classical_state,
    hs_discord_bell,
    hs_discord_general,
    measure_all,
    mutual_information,
    nearest_zero_discord_state,
    quantum_discord,
    relative_entropy_discord,
)
from bellcorr.errors import UnphysicalStateError
from bellcorr.oracle import hs_distance

# mpmath, 40 digits: H(3/4), 1 - H(9/10), 2 + sum lambda log2 lambda over (0.675, 0.225, 0.075, 0.025)
H_075 = 0.81127812445913286391
C_BASE = 0.53100440641071877875
I_BASE = 0.71972628195158591484
D_BASE = 0.18872187554086713609

ZERO = BellDiagonalState(0, 0, 0)
BELL00 = BellDiagonalState(1, -1, 1)


@pytest.mark.parametrize("p, expected", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.75, H_075)])
def test_binary_entropy(p, expected):
    assert binary_entropy(p) == pytest.approx(expected, abs=1e-15)


def test_binary_entropy_domain():
    assert binary_entropy(-1e-13) == 0.0
    with pytest.raises(ValueError):
        binary_entropy(1.1)
    with pytest.raises(ValueError):
        binary_entropy(-0.01)


@pytest.mark.parametrize(
    "fn, zero, bell, base",
    [
        (classical_correlation, 0.0, 1.0, C_BASE),
        (mutual_information, 0.0, 2.0, I_BASE),
        (quantum_discord, 0.0, 1.0, D_BASE),
        (hs_discord_bell, 0.0, 0.5, 0.1025),
    ],
)
def test_measure_examples(fn, zero, bell, base, base_state):
    assert fn(ZERO) == pytest.approx(zero, abs=1e-14)
    assert fn(BELL00) == pytest.approx(bell, abs=1e-14)
    assert fn(base_state) == pytest.approx(base, abs=1e-14)


def test_relative_entropy_discord_examples(base_state):
    q, closest = relative_entropy_discord(base_state)
    assert q == pytest.approx(D_BASE, abs=1e-14)
    assert closest.Lambda == pytest.approx(0.9)
    assert closest.pairing == ((0, 0), (0, 1))
    np.testing.assert_allclose(closest.state.c, (0.8, 0, 0), atol=1e-15)
    assert relative_entropy_discord(ZERO)[0] == pytest.approx(0, abs=1e-14)
    assert relative_entropy_discord(BELL00)[0] == pytest.approx(1, abs=1e-14)


def test_hs_general_examples(base_state):
    ket00 = np.zeros((4, 4))
    ket00[0, 0] = 1
    assert hs_discord_general(ket00) == pytest.approx(0, abs=1e-15)
    assert hs_discord_general(to_density_matrix(base_state)) == pytest.approx(0.1025, abs=1e-14)
    assert hs_discord_general(np.eye(4) / 4) == pytest.approx(0, abs=1e-15)


def test_hs_general_pure_entangled():
    # |psi> = cos a |00> + sin a |11>: alpha = beta = (0,0,cos 2a), M = diag(s, -s, 1), s = sin 2a
    a = 0.3
    psi = np.array([math.cos(a), 0, 0, math.sin(a)])
    s = math.sin(2 * a)
    expected = (math.cos(2 * a) ** 2 + 2 * s * s + 1 - max(math.cos(2 * a) ** 2 + 1, s * s)) / 4
    assert hs_discord_general(np.outer(psi, psi)) == pytest.approx(expected, abs=1e-14)
    assert expected == pytest.approx(s * s / 2, abs=1e-14)


@pytest.mark.parametrize(
    "c, expected",
    [((0.8, -0.4, 0.5), (0.8, 0, 0)), ((0, 0, 0), (0, 0, 0)), ((0.5, -0.5, 0.5), (0.5, 0, 0)),
     ((0.1, -0.6, 0.2), (0, -0.6, 0))],
)
def test_nearest_zero_discord_state(c, expected):
    assert nearest_zero_discord_state(BellDiagonalState(*c)).c == pytest.approx(expected)


def test_measure_all_examples(base_state):
    m = measure_all(base_state)
    assert (m.D, m.Q_R, m.Q_S, m.C, m.I) == pytest.approx((D_BASE, D_BASE, 0.1025, C_BASE, I_BASE), abs=1e-14)
    m = measure_all(BELL00)
    assert (m.D, m.Q_R, m.Q_S, m.C, m.I) == pytest.approx((1, 1, 0.5, 1, 2), abs=1e-14)
    assert measure_all(ZERO).as_dict() == pytest.approx(dict(D=0, Q_R=0, Q_S=0, C=0, I=0), abs=1e-14)


def test_rejects_unphysical():
    with pytest.raises(UnphysicalStateError):
        measure_all(BellDiagonalState(1, 1, 1))


def test_discord_equals_relative_entropy_discord(random_states):
    for st in random_states:
        m = measure_all(st)
        assert abs(m.D - m.Q_R) < 1e-10
        assert m.D == m.I - m.C
        assert min(m.D, m.Q_R, m.Q_S, m.C, m.I) >= -1e-12


def test_local_unitary_invariance(random_states):
    flips = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))
    for st in random_states[:40]:
        ref = measure_all(st).as_dict()
        for perm in itertools.permutations(range(3)):
            for f in flips:
                c = [st.c[p] * s for p, s in zip(perm, f)]
                assert measure_all(BellDiagonalState(*c)).as_dict() == pytest.approx(ref, abs=1e-12)


def test_hs_closed_form_matches_general(random_states):
    for st in random_states:
        assert abs(hs_discord_bell(st) - hs_discord_general(to_density_matrix(st))) < 1e-12


def test_nearest_zero_discord_distance(random_states):
    for st in random_states:
        near = nearest_zero_discord_state(st)
        d = hs_distance(to_density_matrix(st), to_density_matrix(near))
        assert abs(d - hs_discord_bell(st)) < 1e-12


def test_closest_classical_coincides_with_nearest_zero_discord(random_states):
    for st in random_states:
        mags = sorted(abs(x) for x in st.c)
        if mags[2] - mags[1] < 1e-9:
            continue
        a = closest_classical_state(st).state.c
        b = nearest_zero_discord_state(st).c
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_closest_classical_state_is_classical(random_states):
    for st in random_states[:50]:
        cl = closest_classical_state(st)
        assert sum(1 for x in cl.state.c if abs(x) > 1e-12) <= 1
        assert hs_discord_bell(cl.state) == pytest.approx(0, abs=1e-15)
        assert 0.5 <= cl.Lambda <= 1.0


@pytest.mark.parametrize(
    "c",
    [(0.3, 0, 0), (0, -0.7, 0), (0, 0, 1), (0, 0, 0)],
)
def test_hs_zero_on_axes(c):
    assert hs_discord_bell(BellDiagonalState(*c)) == 0.0


def test_hs_positive_off_axes(random_states):
    for st in random_states:
        nonzero = sum(1 for x in st.c if x != 0)
        assert (hs_discord_bell(st) > 0) == (nonzero >= 2)


def test_tie_breaking_witness_only():
    st = BellDiagonalState(0.4, -0.4, 0.4)
    assert nearest_zero_discord_state(st).c == (0.4, 0.0, 0.0)
    # value does not depend on which tied axis is used
    assert hs_discord_bell(st) == pytest.approx(0.08)
