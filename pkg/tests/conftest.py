"""Shared helpers: independent oracles the library is checked against.

Everything here deliberately avoids the closed-form code paths.  Reference
states come from explicit tensor products, cascade outputs from repeated
operator application, and interference amplitudes from literal enumeration
of detector-to-emitter assignments.
"""

import itertools

import numpy as np

import dickesim as ds


def random_polarizer(rng):
    v = rng.normal(size=4)
    return ds.make_polarizer(complex(v[0], v[1]), complex(v[2], v[3]))


def random_config(rng, n):
    return ds.PolarizerConfig(tuple(random_polarizer(rng) for _ in range(n)))


def orientation_distance(p, q):
    return abs(p.alpha * q.beta - q.alpha * p.beta)


def separated_config(rng, min_sep=1e-3):
    """Random 3-polarizer configuration with all pairwise separations above min_sep."""
    while True:
        cfg = random_config(rng, 3)
        seps = [orientation_distance(cfg[i], cfg[j])
                for i, j in ((0, 1), (0, 2), (1, 2))]
        if min(seps) > min_sep:
            return cfg


def oracle_forward(config):
    """Brute-force cascade: apply each detection, then project."""
    reg = ds.EmitterRegister.ground(len(config))
    for p in config:
        reg = ds.apply_detection(reg, p)
    return ds.project_symmetric(reg)


def enumerate_paths(config):
    """Final amplitudes by explicit sum over detector-to-emitter bijections.

    Returns {ket string: amplitude} over the fully de-excited kets; each
    bijection contributes the product of the polarizer components selected
    by the ket letters at the emitters it assigns.
    """
    n = len(config)
    result = {}
    for letters in itertools.product("+-", repeat=n):
        ket = "".join(letters)
        total = 0.0 + 0.0j
        for assignment in itertools.permutations(range(n)):
            prod = 1.0 + 0.0j
            for detector, emitter in enumerate(assignment):
                p = config[detector]
                prod *= p.alpha if ket[emitter] == "+" else p.beta
            total += prod
        result[ket] = total
    return result


# --- reference states built from explicit tensor products -----------------

def qubit_kron(single_qubit_vectors):
    """Tensor product, little-endian: qubit 0 is the least significant bit."""
    out = np.array([1.0 + 0.0j])
    for v in single_qubit_vectors:
        out = np.kron(np.asarray(v, dtype=complex), out)
    return out


def one_basis(phi):
    return np.array([1.0, np.exp(1j * phi)]) / np.sqrt(2.0)


def zero_basis(phi):
    return np.array([1.0, -np.exp(1j * phi)]) / np.sqrt(2.0)


def ghz_qubit(n, phi):
    plus = np.array([1.0, 0.0])
    minus = np.array([0.0, 1.0])
    return (qubit_kron([plus] * n)
            + np.exp(1j * phi) * qubit_kron([minus] * n)) / np.sqrt(2.0)


def s_qubit(n, phi):
    return qubit_kron([one_basis(phi)] * n)


def w_qubit(n, phi):
    acc = np.zeros(2 ** n, dtype=complex)
    for j in range(n):
        acc += qubit_kron([one_basis(phi) if q == j else zero_basis(phi)
                           for q in range(n)])
    return acc / np.sqrt(n)


def qubit_fidelity(a, b):
    return abs(np.vdot(a, b)) ** 2
