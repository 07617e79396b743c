from math import comb

import numpy as np
import pytest

import dickesim as ds
from conftest import ghz_qubit, qubit_fidelity, random_config, s_qubit, w_qubit


def _forward_qubits(config):
    return ds.dicke_coefficients(config).to_qubit_amplitudes()


# ---------------------------------------------------------------------------
# named recipes
# ---------------------------------------------------------------------------

def test_ghz_angles_odd_count():
    config = ds.ghz_config(3, 0.0)
    angles = sorted(np.mod(np.angle(p.beta / p.alpha) / 2, np.pi) for p in config)
    np.testing.assert_allclose(angles, [0.0, np.pi / 3, 2 * np.pi / 3], atol=1e-12)


def test_ghz_angles_even_count_carry_offset():
    config = ds.ghz_config(4, 0.0)
    angles = sorted(np.mod(np.angle(p.beta / p.alpha) / 2, np.pi) for p in config)
    np.testing.assert_allclose(
        angles, [np.pi / 8, np.pi / 8 + np.pi / 4, np.pi / 8 + np.pi / 2,
                 np.pi / 8 + 3 * np.pi / 4], atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("phi", [0.0, np.pi / 4, np.pi])
def test_ghz_recipe_reproduces_target(n, phi):
    psi = _forward_qubits(ds.ghz_config(n, phi))
    assert qubit_fidelity(psi, ghz_qubit(n, phi)) >= 1 - 1e-10


def test_ghz_two_emitters_opposite_phase():
    psi = _forward_qubits(ds.ghz_config(2, np.pi))
    target = np.zeros(4, dtype=complex)
    target[0], target[3] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    assert qubit_fidelity(psi, target) >= 1 - 1e-10


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("phi", [0.0, np.pi / 4, np.pi])
def test_product_recipe_reproduces_target(n, phi):
    psi = _forward_qubits(ds.s_config(n, phi))
    assert qubit_fidelity(psi, s_qubit(n, phi)) >= 1 - 1e-10


def test_product_recipe_coefficients():
    state = ds.dicke_coefficients(ds.s_config(3, 0.0)).canonicalized()
    expected = np.array([np.sqrt(comb(3, k)) for k in range(4)]) / np.sqrt(8)
    np.testing.assert_allclose(state.coeffs, expected, atol=1e-12)
    state4 = ds.dicke_coefficients(ds.s_config(4, np.pi / 2)).canonicalized()
    expected4 = np.array([np.sqrt(comb(4, k)) * np.exp(1j * k * np.pi / 2)
                          for k in range(5)]) / 4.0
    np.testing.assert_allclose(state4.coeffs, expected4, atol=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("phi", [0.0, np.pi / 4, np.pi])
def test_single_excitation_recipe_reproduces_target(n, phi):
    psi = _forward_qubits(ds.w_config(n, phi))
    assert qubit_fidelity(psi, w_qubit(n, phi)) >= 1 - 1e-10


def test_single_excitation_two_emitters_equals_bell_like_state():
    psi = _forward_qubits(ds.w_config(2, 0.0))
    # |1 0> + |0 1> in the rotated basis expands to |++> - |-->
    direct = np.zeros(4, dtype=complex)
    direct[0], direct[3] = 1 / np.sqrt(2), -1 / np.sqrt(2)
    assert qubit_fidelity(psi, direct) >= 1 - 1e-12
    assert qubit_fidelity(w_qubit(2, 0.0), direct) >= 1 - 1e-12


def test_single_excitation_sign_choice_is_cosmetic():
    a = ds.dicke_coefficients(ds.w_config(3, 0.7, sign=+1))
    b = ds.dicke_coefficients(ds.w_config(3, 0.7, sign=-1))
    assert ds.fidelity(a, b) >= 1 - 1e-12


def test_recipes_classify_as_expected():
    assert ds.classify_from_config(ds.ghz_config(3, 0.3)).predicted_class == ds.GHZ_CLASS
    assert ds.classify_from_config(ds.w_config(3, 0.3)).predicted_class == ds.W_CLASS
    assert ds.classify_from_config(ds.s_config(3, 0.3)).predicted_class == ds.S_CLASS
    assert ds.classify_from_state(ds.dicke_coefficients(ds.ghz_config(3, 0.3))) == ds.GHZ_CLASS
    assert ds.classify_from_state(ds.dicke_coefficients(ds.w_config(3, 0.3))) == ds.W_CLASS
    assert ds.classify_from_state(ds.dicke_coefficients(ds.s_config(3, 0.3))) == ds.S_CLASS


def test_recipe_preconditions():
    with pytest.raises(ValueError):
        ds.ghz_config(1, 0.0)
    with pytest.raises(ValueError):
        ds.w_config(1, 0.0)
    with pytest.raises(ValueError):
        ds.w_config(3, 0.0, sign=2)
    with pytest.raises(ValueError):
        ds.s_config(0, 0.0)


# ---------------------------------------------------------------------------
# generic synthesis
# ---------------------------------------------------------------------------

def test_synthesize_pure_plus_target_needs_no_roots():
    target = ds.SymmetricState.from_raw(4, [1.0, 0.0, 0.0, 0.0, 0.0])
    config = ds.synthesize(target)
    assert len(config) == 4
    assert all(p.beta == 0.0 for p in config)


def test_synthesize_fully_inverted_target():
    target = ds.SymmetricState.from_raw(4, [0.0, 0.0, 0.0, 0.0, 1.0])
    config = ds.synthesize(target)
    assert all(p.alpha == 0.0 for p in config)
    assert ds.fidelity(ds.dicke_coefficients(config), target) >= 1 - 1e-12


def test_synthesize_maximally_entangled_target_recovers_known_angles():
    target = ds.SymmetricState.from_raw(3, [1.0, 0.0, 0.0, 1.0])
    config = ds.synthesize(target)
    reference = ds.ghz_config(3, 0.0)
    matched = set()
    for p in config:
        hits = [i for i in range(3)
                if i not in matched and ds.same_orientation(p, reference[i])]
        assert hits, "no matching reference orientation"
        matched.add(hits[0])
    assert ds.fidelity(ds.dicke_coefficients(config), target) >= 1 - 1e-10


def test_synthesize_round_trip_random_targets():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        target = ds.SymmetricState.from_raw(
            n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1))
        config = ds.synthesize(target)
        assert len(config) == n
        assert ds.fidelity(ds.dicke_coefficients(config), target) >= 1 - 1e-8


def test_synthesize_is_idempotent_in_state_space():
    rng = np.random.default_rng(32)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        target = ds.SymmetricState.from_raw(
            n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1))
        once = ds.dicke_coefficients(ds.synthesize(target))
        twice = ds.dicke_coefficients(ds.synthesize(once))
        assert ds.fidelity(once, twice) >= 1 - 1e-8


def test_synthesize_orientations_ignore_global_phase():
    rng = np.random.default_rng(33)
    for _ in range(20):
        n = int(rng.integers(2, 6))
        raw = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        config_a = ds.synthesize(ds.SymmetricState.from_raw(n, raw))
        config_b = ds.synthesize(ds.SymmetricState.from_raw(
            n, raw * np.exp(1j * rng.uniform(0, 2 * np.pi))))
        unmatched = list(config_b)
        for p in config_a:
            hits = [q for q in unmatched if ds.same_orientation(p, q)]
            assert hits
            unmatched.remove(hits[0])
        assert not unmatched


def test_synthesize_pads_with_plus_polarizers():
    rng = np.random.default_rng(34)
    for _ in range(20):
        n = int(rng.integers(3, 8))
        k_top = int(rng.integers(1, n))
        raw = np.zeros(n + 1, dtype=complex)
        raw[:k_top + 1] = rng.normal(size=k_top + 1) + 1j * rng.normal(size=k_top + 1)
        raw[k_top] += 2.0  # keep the leading coefficient well above DEGREE_TOL
        config = ds.synthesize(ds.SymmetricState.from_raw(n, raw))
        assert sum(1 for p in config if p.beta == 0.0) == n - k_top


def test_synthesis_polynomial_shape():
    target = ds.SymmetricState.from_raw(3, [0.3, 0.0, 0.4, 0.0])
    poly = ds.SynthesisPolynomial.from_state(target)
    assert poly.degree == 2
    assert abs(poly.coeffs[-1]) > ds.DEGREE_TOL
    assert len(poly.roots()) == 2
