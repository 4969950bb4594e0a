import numpy as np
import pytest

from spin_entropy.errors import OutOfRangeError, SchmidtInvariantError
from spin_entropy.qstate_core import (
    SPIN_DOWN,
    SPIN_UP,
    fidelity,
    mean_spin_vector,
    partial_trace,
    spin_magnitude,
)
from spin_entropy.schmidt import (
    SchmidtDecomposition,
    clamp_magnitude,
    is_product_state,
    reconstruct,
    schmidt_decompose,
    schmidt_probs_from_magnitude,
)


def test_weighted_state_coefficients(weighted_state):
    d = schmidt_decompose(weighted_state)
    assert d.probabilities == pytest.approx((0.75, 0.25), abs=1e-12)
    assert not d.degenerate
    np.testing.assert_allclose(d.u1.vector, [1, 0], atol=1e-12)
    np.testing.assert_allclose(d.v1.vector, [1, 0], atol=1e-12)


def test_bell_states_are_degenerate(maximally_entangled_state):
    d = schmidt_decompose(maximally_entangled_state)
    assert d.c1 == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert d.c2 == pytest.approx(np.sqrt(0.5), abs=1e-12)
    assert d.degenerate
    assert fidelity(reconstruct(d), maximally_entangled_state) == pytest.approx(1.0, abs=1e-12)


def test_product_state(product_state, bell_state):
    d = schmidt_decompose(product_state)
    assert d.c1 == pytest.approx(1.0)
    assert d.c2 == pytest.approx(0.0, abs=1e-12)
    assert is_product_state(product_state)
    assert not is_product_state(bell_state)


def test_decomposition_invariants(haar_states):
    for psi in haar_states[:2000]:
        d = schmidt_decompose(psi)
        d.check_invariants()
        assert d.c1 >= d.c2 >= 0.0
        assert d.c1**2 + d.c2**2 == pytest.approx(1.0, abs=1e-10)


def test_reconstruct_recovers_state(haar_states):
    for psi in haar_states[:2000]:
        np.testing.assert_allclose(
            reconstruct(schmidt_decompose(psi)).amps, psi.amps, atol=1e-10
        )


def test_weight_gap_and_round_trip_over_random_states(haar_states):
    for psi in haar_states:
        d = schmidt_decompose(psi)
        half_gap = (d.c1**2 - d.c2**2) / 2
        for atom in (1, 2):
            assert abs(half_gap - spin_magnitude(mean_spin_vector(psi, atom))) <= 1e-11
        assert fidelity(reconstruct(d), psi) >= 1.0 - 1e-12


def test_phase_convention(haar_states):
    for psi in haar_states[:500]:
        d = schmidt_decompose(psi)
        for u in (d.u1, d.u2):
            pivot = u.amp_up if abs(u.amp_up) >= abs(u.amp_down) else u.amp_down
            assert abs(pivot.imag) <= 1e-12
            assert pivot.real >= 0.0


def test_weights_match_reduced_spectrum(haar_states):
    for psi in haar_states[:1000]:
        d = schmidt_decompose(psi)
        np.testing.assert_allclose(
            d.probabilities, partial_trace(psi, 1).eigenvalues, atol=1e-10
        )


def test_largest_weight_follows_mean_spin_magnitude(haar_states):
    for psi in haar_states:
        r = spin_magnitude(mean_spin_vector(psi, 1))
        p1, p2 = schmidt_probs_from_magnitude(r)
        assert p1 + p2 == 1.0
        assert schmidt_decompose(psi).c1 ** 2 == pytest.approx(p1, abs=1e-10)


def test_haar_mean_of_largest_weight(haar_states):
    weights = [schmidt_decompose(psi).c1 ** 2 for psi in haar_states]
    # largest reduced eigenvalue p has density proportional to (2p - 1)^2 on [1/2, 1]
    assert np.mean(weights) == pytest.approx(0.875, abs=0.01)


def test_invalid_decomposition_is_rejected():
    d = SchmidtDecomposition(0.9, 0.9, SPIN_UP, SPIN_DOWN, SPIN_UP, SPIN_DOWN)
    with pytest.raises(SchmidtInvariantError):
        reconstruct(d)
    d = SchmidtDecomposition(0.6, 0.8, SPIN_UP, SPIN_DOWN, SPIN_UP, SPIN_DOWN)
    with pytest.raises(SchmidtInvariantError):
        d.check_invariants()
    d = SchmidtDecomposition(np.sqrt(0.5), np.sqrt(0.5), SPIN_UP, SPIN_UP, SPIN_UP, SPIN_DOWN)
    with pytest.raises(SchmidtInvariantError):
        d.check_invariants()


@pytest.mark.parametrize(
    "r, expected",
    [(0.0, (0.5, 0.5)), (0.25, (0.75, 0.25)), (0.5, (1.0, 0.0))],
)
def test_probabilities_from_magnitude(r, expected):
    assert schmidt_probs_from_magnitude(r) == pytest.approx(expected)


def test_clamp_magnitude():
    assert clamp_magnitude(0.5 + 1e-13) == 0.5
    assert clamp_magnitude(-1e-13) == 0.0
    for bad in (0.6, -0.1, float("nan")):
        with pytest.raises(OutOfRangeError):
            clamp_magnitude(bad)
