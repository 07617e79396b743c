from math import comb, factorial

import numpy as np
import pytest

import dickesim as ds
from conftest import enumerate_paths, oracle_forward, random_config, random_polarizer


def test_all_plus_configuration():
    config = ds.PolarizerConfig(tuple([ds.Polarizer.sigma_plus()] * 3))
    state = ds.dicke_coefficients(config)
    np.testing.assert_allclose(state.coeffs, [1.0, 0.0, 0.0, 0.0], atol=1e-15)


def test_uniformly_spread_angles_give_maximal_entanglement():
    config = ds.PolarizerConfig.from_angles([0.0, np.pi / 3, 2 * np.pi / 3])
    state = ds.dicke_coefficients(config)
    target = ds.SymmetricState.from_raw(3, [1.0, 0.0, 0.0, 1.0])
    assert ds.fidelity(state, target) >= 1 - 1e-10


def test_two_detector_closed_form_constants_match_oracle():
    rng = np.random.default_rng(21)
    p1, p2 = random_polarizer(rng), random_polarizer(rng)
    config = ds.PolarizerConfig((p1, p2))
    closed = ds.dicke_coefficients(config).canonicalized()
    brute = oracle_forward(config).canonicalized()
    np.testing.assert_allclose(closed.coeffs, brute.coeffs, atol=1e-12)
    # coefficient pattern (a1 a2, (a1 b2 + a2 b1)/sqrt(2), b1 b2), common scale
    pattern = np.array([p1.alpha * p2.alpha,
                        (p1.alpha * p2.beta + p2.alpha * p1.beta) / np.sqrt(2),
                        p1.beta * p2.beta])
    expected = ds.SymmetricState.from_raw(2, pattern)
    assert ds.fidelity(closed, expected) == pytest.approx(1.0, abs=1e-12)


def test_closed_form_matches_brute_force_oracle():
    rng = np.random.default_rng(22)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        config = random_config(rng, n)
        assert ds.fidelity(ds.dicke_coefficients(config),
                           oracle_forward(config)) >= 1 - 1e-10


def test_polarizer_order_is_irrelevant():
    rng = np.random.default_rng(23)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        config = random_config(rng, n)
        shuffled = ds.PolarizerConfig(tuple(config[i] for i in rng.permutation(n)))
        assert ds.fidelity(ds.dicke_coefficients(config),
                           ds.dicke_coefficients(shuffled)) >= 1 - 1e-12


def test_coefficient_vanishing_bounds():
    rng = np.random.default_rng(24)
    for _ in range(50):
        n = int(rng.integers(3, 7))
        n_plus = int(rng.integers(0, n))
        n_minus = int(rng.integers(0, n - n_plus))
        pols = ([ds.Polarizer.sigma_plus()] * n_plus
                + [ds.Polarizer.sigma_minus()] * n_minus
                + [random_polarizer(rng) for _ in range(n - n_plus - n_minus)])
        config = ds.PolarizerConfig(tuple(pols))
        coeffs = ds.dicke_coefficients(config).coeffs
        beta_count = sum(1 for p in config if p.beta != 0)
        alpha_count = sum(1 for p in config if p.alpha != 0)
        for k in range(n + 1):
            if k > beta_count or n - k > alpha_count:
                assert coeffs[k] == 0.0


# ---------------------------------------------------------------------------
# pyramid
# ---------------------------------------------------------------------------

def test_pyramid_first_levels():
    rng = np.random.default_rng(25)
    config = random_config(rng, 3)
    levels = ds.build_pyramid(config)
    assert levels[0].terms == {"eee": 1.0 + 0.0j}
    assert len(levels[1].terms) == 6
    for ket, amp in levels[1].terms.items():
        expected = config[0].alpha if "+" in ket else config[0].beta
        assert amp == pytest.approx(expected)
    for m, level in enumerate(levels):
        assert level.step == m
        for ket in level.terms:
            assert ket.count("e") == 3 - m


def test_pyramid_single_emitter():
    p = random_polarizer(np.random.default_rng(26))
    levels = ds.build_pyramid(ds.PolarizerConfig((p,)))
    assert len(levels) == 2
    assert levels[1].terms["+"] == pytest.approx(p.alpha)
    assert levels[1].terms["-"] == pytest.approx(p.beta)


def test_pyramid_final_level_reproduces_closed_form():
    rng = np.random.default_rng(27)
    for _ in range(20):
        n = int(rng.integers(1, 6))
        config = random_config(rng, n)
        levels = ds.build_pyramid(config)
        amps = np.zeros(3 ** n, dtype=complex)
        for ket, amp in levels[-1].terms.items():
            amps[ds.ket_index(ket)] = amp
        projected = ds.project_symmetric(ds.EmitterRegister(n, amps))
        assert ds.fidelity(projected, ds.dicke_coefficients(config)) >= 1 - 1e-10


def test_pyramid_levels_match_register_cascade():
    rng = np.random.default_rng(30)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        config = random_config(rng, n)
        levels = ds.build_pyramid(config)
        reg = ds.EmitterRegister.ground(n)
        for m, p in enumerate(config, start=1):
            reg = ds.apply_detection(reg, p)
            for idx in range(3 ** n):
                ket = ds.ket_string(idx, n)
                assert levels[m].terms.get(ket, 0.0) == pytest.approx(
                    reg.amps[idx], abs=1e-12)


def test_pyramid_final_level_matches_path_enumeration():
    rng = np.random.default_rng(28)
    config = random_config(rng, 3)
    final = ds.build_pyramid(config)[-1].terms
    for ket, amp in enumerate_paths(config).items():
        assert final.get(ket, 0.0) == pytest.approx(amp, abs=1e-12)


def test_path_count_classes():
    assert ds.path_count(3, "+++") == ds.PathCount(6, 1)
    assert ds.path_count(3, "++-") == ds.PathCount(6, 3)
    assert ds.path_count(3, "--+") == ds.PathCount(6, 3)
    assert ds.path_count(3, "---") == ds.PathCount(6, 1)
    assert ds.path_count(2, "+-") == ds.PathCount(2, 2)
    assert ds.path_count(5, "++-+-").orderings == factorial(5)
    assert ds.path_count(5, "++-+-").distinct_products == comb(5, 2)


def test_path_count_rejects_incomplete_kets():
    with pytest.raises(ds.InvalidKetError):
        ds.path_count(3, "+e-")
    with pytest.raises(ds.InvalidKetError):
        ds.path_count(3, "+-")


def test_pyramid_text_lists_every_level():
    config = ds.PolarizerConfig.from_angles([0.0, 1.0, 2.0])
    text = ds.pyramid_text(ds.build_pyramid(config))
    for m in range(4):
        assert f"step {m}:" in text
    assert "|eee>" in text and "|+++>" in text


def test_pyramid_edges_recompose_the_cascade():
    rng = np.random.default_rng(29)
    config = random_config(rng, 3)
    levels = ds.build_pyramid(config)
    edges = ds.pyramid_edges(config, levels)
    # walk the weighted transition graph level by level
    amps = {"eee": 1.0 + 0.0j}
    for m in range(1, 4):
        nxt: dict = {}
        for level, parent, child, weight in edges:
            if level == m and parent in amps:
                nxt[child] = nxt.get(child, 0.0) + amps[parent] * weight
        amps = nxt
    for ket, amp in levels[-1].terms.items():
        assert amps[ket] == pytest.approx(amp, abs=1e-12)


def test_config_validation():
    with pytest.raises(ValueError):
        ds.PolarizerConfig(())
    with pytest.raises(TypeError):
        ds.PolarizerConfig((1.0,))
