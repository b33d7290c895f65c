import numpy as np
import pytest

from qtangle import (
    StateError,
    abd_components,
    bell,
    ghz,
    partial_trace,
    phi_abd,
    psi4,
    psi6,
    psi_n1,
    rho_abd,
    rho_ghz_w,
    rho_wn_mix,
    smolin,
    w,
)

from helpers import projector


def test_ghz_amplitudes():
    g = ghz(3)
    assert abs(g.amplitudes[0] - 1.0 / np.sqrt(2.0)) < 1e-15
    assert abs(g.amplitudes[7] - 1.0 / np.sqrt(2.0)) < 1e-15
    assert np.count_nonzero(g.amplitudes) == 2


def test_w_amplitudes():
    # Single-excitation states: indices 1, 2, 4 with qubit 0 most significant.
    psi = w(3)
    for idx in (1, 2, 4):
        assert abs(psi.amplitudes[idx] - 1.0 / np.sqrt(3.0)) < 1e-15
    assert np.count_nonzero(psi.amplitudes) == 3


def test_bell_convention():
    np.testing.assert_allclose(
        bell(0).amplitudes, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0), atol=1e-15
    )
    np.testing.assert_allclose(
        bell(3).amplitudes, np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0), atol=1e-15
    )
    with pytest.raises(StateError):
        bell(4)


def test_rho_ghz_w_is_advertised_mixture():
    for p in (0.0, 0.3, 1.0):
        rho = rho_ghz_w(p)
        expect = p * projector(ghz(3)) + (1.0 - p) * projector(w(3))
        np.testing.assert_allclose(rho.matrix, expect, atol=1e-14)


def test_psi4_purifies_rho_ghz_w():
    for p in np.linspace(0.0, 1.0, 11):
        reduced = partial_trace(psi4(p), (0, 1, 2))
        np.testing.assert_allclose(reduced.matrix, rho_ghz_w(p).matrix, atol=1e-12)


def test_abd_components_match_reduction():
    for p in (0.1, 0.5, 0.9):
        weight, first, second = abd_components(p)
        assert abs(weight - (2.0 + p) / 6.0) < 1e-12
        rebuilt = weight * projector(first) + (1.0 - weight) * projector(second)
        np.testing.assert_allclose(rebuilt, rho_abd(p).matrix, atol=1e-12)
        # The components are the conditional branches, so they are orthogonal.
        assert abs(np.vdot(first.amplitudes, second.amplitudes)) < 1e-12


def test_abd_component_profiles():
    p = 0.4
    _, first, second = abd_components(p)
    a = 3.0 * p / (2.0 + p)
    assert abs(abs(first.amplitudes[0]) ** 2 - (1.0 - a)) < 1e-12
    assert abs(abs(first.amplitudes[7]) ** 2 - a) < 1e-12
    b = 3.0 * p / (4.0 - p)
    assert abs(abs(second.amplitudes[1]) ** 2 - b) < 1e-12
    assert abs(abs(second.amplitudes[2]) ** 2 - (1.0 - b) / 2.0) < 1e-12
    assert abs(abs(second.amplitudes[4]) ** 2 - (1.0 - b) / 2.0) < 1e-12


def test_phi_abd_phase_zero_is_difference():
    alpha, p = 0.6, 0.3
    _, first, second = abd_components(p)
    expect = np.sqrt(alpha) * first.amplitudes - np.sqrt(1.0 - alpha) * second.amplitudes
    np.testing.assert_allclose(phi_abd(alpha, p, 0.0).amplitudes, expect, atol=1e-14)


def test_smolin_eigenvalues():
    p = 0.6
    eigs = np.linalg.eigvalsh(smolin(p).matrix)
    nonzero = eigs[eigs > 1e-12]
    np.testing.assert_allclose(
        np.sort(nonzero), np.sort([p / 4.0] * 3 + [1.0 - 3.0 * p / 4.0]), atol=1e-12
    )


def test_smolin_swap_symmetry():
    rho = smolin(0.8).matrix.reshape((2,) * 8)
    swapped = rho.transpose(1, 0, 2, 3, 5, 4, 6, 7)  # swap A<->B on both sides
    np.testing.assert_allclose(swapped, smolin(0.8).matrix.reshape((2,) * 8), atol=1e-13)
    swapped = rho.transpose(2, 3, 0, 1, 6, 7, 4, 5)  # swap pair AB <-> CD
    np.testing.assert_allclose(swapped, smolin(0.8).matrix.reshape((2,) * 8), atol=1e-13)


def test_psi6_purifies_smolin():
    for p in (0.0, 0.4, 0.7, 1.0):
        reduced = partial_trace(psi6(p), (0, 1, 2, 3))
        np.testing.assert_allclose(reduced.matrix, smolin(p).matrix, atol=1e-12)


def test_psi_n1_purifies_rho_wn_mix():
    for n in (3, 5):
        for alpha in (0.2, 1.0 / (n + 1.0), 0.9):
            reduced = partial_trace(psi_n1(n, alpha), tuple(range(n)))
            np.testing.assert_allclose(
                reduced.matrix, rho_wn_mix(n, alpha).matrix, atol=1e-12
            )


def test_domain_errors():
    with pytest.raises(StateError):
        rho_ghz_w(1.2)
    with pytest.raises(StateError):
        psi4(-0.1)
    with pytest.raises(StateError):
        smolin(1.0001)
    with pytest.raises(StateError):
        ghz(1)
    with pytest.raises(StateError):
        w(11)
    with pytest.raises(StateError):
        rho_wn_mix(10, 0.5)
    with pytest.raises(StateError):
        phi_abd(1.5, 0.5, 0.0)
