"""Foundational types and the brute-force detection oracle.

Every other module is validated against the operations defined here, so the
representation conventions are fixed once and for all:

* An emitter is a three-level system: ``e`` (excited) decaying to the ground
  sublevels ``+`` and ``-``.  A register of ``n`` emitters is a dense complex
  vector of length ``3**n``.
* Register indexing is base-3 and little-endian: emitter ``j`` occupies digit
  ``j`` of the index (``index // 3**j % 3``) with level encoding
  ``e=0, +=1, -=2``.  The fully excited register ``|e,...,e>`` is index 0.
* Ket strings spell emitters left to right starting with emitter 0, over the
  alphabet ``e+-`` (so ``"+e-"`` has emitter 0 in ``+``, emitter 2 in ``-``).
* A detection event is non-unitary and shrinks the register norm; nothing is
  renormalized until a full cascade has been applied.
* Symmetric ``n``-qubit states are stored as coefficients ``d_0 .. d_n`` over
  the basis of equal-weight superpositions with ``k`` emitters in ``-``
  (``k``-excitation symmetric basis states).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

import numpy as np

from .errors import (
    AsymmetricResidueError,
    DimensionMismatchError,
    NoExcitedPopulationError,
    ResidualExcitationError,
    ZeroStateError,
    ZeroVectorError,
)

#: Tolerance for projective equality of polarizer orientations.  Far below any
#: physically meaningful angle, above accumulated rounding of the closed-form
#: pipeline.
ORIENT_TOL = 1e-9

#: Normalization tolerance for constructed states and polarizers.
NORM_TOL = 1e-12

#: Amplitude allowed outside the projected subspace before erroring.
RESIDUAL_TOL = 1e-10

LEVEL_CHARS = "e+-"


# ---------------------------------------------------------------------------
# polarizers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Polarizer:
    """Normalized complex polarization vector ``alpha*s+ + beta*s-``.

    ``alpha`` and ``beta`` are the amplitudes on the two circular components.
    Construction rescales to unit norm; the all-zero vector is rejected.
    The physically meaningful content is projective: ``alpha/beta`` is the
    orientation (see :func:`same_orientation`).
    """

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        a = complex(self.alpha)
        b = complex(self.beta)
        if not (np.isfinite(a.real) and np.isfinite(a.imag)
                and np.isfinite(b.real) and np.isfinite(b.imag)):
            raise ValueError("polarizer components must be finite")
        nrm = np.hypot(abs(a), abs(b))
        if nrm == 0.0:
            raise ZeroVectorError("polarizer components are both zero")
        object.__setattr__(self, "alpha", a / nrm)
        object.__setattr__(self, "beta", b / nrm)

    @staticmethod
    def sigma_plus() -> "Polarizer":
        return Polarizer(1.0, 0.0)

    @staticmethod
    def sigma_minus() -> "Polarizer":
        return Polarizer(0.0, 1.0)


@dataclass(frozen=True)
class LinearAngle:
    """Linear polarizer orientation, an angle reduced to ``[0, pi)``.

    Converts to the polarizer ``(e^{-i theta}, e^{i theta}) / sqrt(2)``.
    Orientation is invariant under ``theta -> theta + pi`` (the reduction
    only changes a global phase).
    """

    theta: float

    def __post_init__(self) -> None:
        t = float(self.theta) % np.pi
        if t == np.pi:  # tiny negative inputs can wrap onto pi itself
            t = 0.0
        object.__setattr__(self, "theta", t)

    def to_polarizer(self) -> Polarizer:
        return Polarizer(np.exp(-1j * self.theta) / np.sqrt(2.0),
                         np.exp(1j * self.theta) / np.sqrt(2.0))


def make_polarizer(alpha: complex, beta: complex) -> Polarizer:
    """Build a normalized polarizer from arbitrary complex components."""
    return Polarizer(alpha, beta)


def same_orientation(p: Polarizer, q: Polarizer) -> bool:
    """Projective equality test: ``|p.alpha*q.beta - q.alpha*p.beta|`` small.

    The cross term vanishes exactly when the two polarization vectors differ
    only by a global phase, which is the physically relevant equivalence.
    """
    return abs(p.alpha * q.beta - q.alpha * p.beta) <= ORIENT_TOL


# ---------------------------------------------------------------------------
# symmetric states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DickeIndex:
    """Index ``(n, k)`` of the symmetric basis state with ``k`` minus levels.

    The state expands into ``C(n, k)`` computational kets, each carrying
    amplitude ``1/sqrt(C(n, k))``.
    """

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"system size must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"excitation count {self.k} outside 0..{self.n}")

    @property
    def multiplicity(self) -> int:
        return comb(self.n, self.k)

    @property
    def ket_amplitude(self) -> float:
        return 1.0 / np.sqrt(self.multiplicity)

    def basis_vector(self) -> np.ndarray:
        """Qubit amplitudes (length ``2**n``, bit ``j`` set = emitter j in -)."""
        psi = np.zeros(2 ** self.n, dtype=complex)
        for idx in range(2 ** self.n):
            if _bit_counts(self.n)[idx] == self.k:
                psi[idx] = self.ket_amplitude
        return psi


@dataclass(frozen=True, eq=False)
class SymmetricState:
    """Normalized coefficients ``d_0 .. d_n`` over the symmetric basis.

    ``raw`` and ``norm`` optionally record the unnormalized coefficients the
    state was built from and the normalization factor applied to them
    (``coeffs = norm * raw``).  Producers that need the normalization
    constant downstream (for example the closed-form tangle) rely on these.

    Global phase is left untouched by construction; call
    :meth:`canonicalized` explicitly to rotate the first nonzero coefficient
    onto the positive real axis.
    """

    n: int
    coeffs: np.ndarray
    raw: np.ndarray | None = field(default=None, repr=False)
    norm: float | None = None

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=complex)
        if self.n < 1:
            raise ValueError(f"system size must be >= 1, got {self.n}")
        if c.shape != (self.n + 1,):
            raise ValueError(f"expected {self.n + 1} coefficients, got shape {c.shape}")
        if abs(np.linalg.norm(c) - 1.0) > NORM_TOL:
            raise ValueError("coefficients are not normalized; use from_raw()")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_raw(cls, n: int, raw: Iterable[complex]) -> "SymmetricState":
        """Normalize raw coefficients, keeping them and the applied factor."""
        r = np.asarray(list(raw) if not isinstance(raw, np.ndarray) else raw,
                       dtype=complex)
        nrm = np.linalg.norm(r)
        if nrm == 0.0:
            raise ZeroStateError("all coefficients vanish")
        factor = 1.0 / nrm
        return cls(n, r * factor, raw=r.copy(), norm=factor)

    def canonicalized(self, tol: float = NORM_TOL) -> "SymmetricState":
        """Copy with the first nonzero coefficient made real and positive."""
        for c in self.coeffs:
            if abs(c) > tol:
                phase = c / abs(c)
                break
        else:
            raise ZeroStateError("no coefficient above tolerance")
        raw = None if self.raw is None else self.raw * np.conj(phase)
        return SymmetricState(self.n, self.coeffs * np.conj(phase),
                              raw=raw, norm=self.norm)

    def to_qubit_amplitudes(self) -> np.ndarray:
        """Expand into the full ``2**n`` qubit register.

        Bit ``j`` of the index is 1 when emitter ``j`` sits in ``-``;
        every ket with ``k`` set bits receives ``d_k / sqrt(C(n, k))``.
        """
        counts = _bit_counts(self.n)
        weights = self.coeffs / np.sqrt([comb(self.n, k) for k in range(self.n + 1)])
        return weights[counts]


def fidelity(a: SymmetricState, b: SymmetricState) -> float:
    """Squared overlap ``|<a|b>|**2``; invariant under global phases."""
    if a.n != b.n:
        raise DimensionMismatchError(f"system sizes differ: {a.n} != {b.n}")
    return float(abs(np.vdot(a.coeffs, b.coeffs)) ** 2)


# ---------------------------------------------------------------------------
# emitter register and detection
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _digit_table(n: int) -> np.ndarray:
    """Base-3 digits of every register index, shape ``(3**n, n)``."""
    idx = np.arange(3 ** n)
    table = np.empty((3 ** n, n), dtype=np.int8)
    for j in range(n):
        table[:, j] = (idx // 3 ** j) % 3
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _excited_slots(n: int) -> tuple[np.ndarray, ...]:
    """For each emitter, the register indices with that emitter in ``e``."""
    dig = _digit_table(n)
    return tuple(np.nonzero(dig[:, j] == 0)[0] for j in range(n))


@lru_cache(maxsize=None)
def _ground_free_info(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Indices of kets without ``e``, their minus counts, and qubit indices."""
    dig = _digit_table(n)
    free = np.nonzero(~(dig == 0).any(axis=1))[0]
    minus = (dig[free] == 2).sum(axis=1)
    qubit = ((dig[free] == 2) << np.arange(n)).sum(axis=1)
    for a in (free, minus, qubit):
        a.setflags(write=False)
    return free, minus, qubit


@lru_cache(maxsize=None)
def _bit_counts(n: int) -> np.ndarray:
    counts = np.array([bin(i).count("1") for i in range(2 ** n)])
    counts.setflags(write=False)
    return counts


def ket_string(index: int, n: int) -> str:
    """Spell a register index as a ket string over ``e+-``, emitter 0 first."""
    return "".join(LEVEL_CHARS[(index // 3 ** j) % 3] for j in range(n))


def ket_index(ket: str) -> int:
    """Inverse of :func:`ket_string`."""
    return sum(LEVEL_CHARS.index(ch) * 3 ** j for j, ch in enumerate(ket))


@dataclass(frozen=True, eq=False)
class EmitterRegister:
    """Full ``3**n`` state vector of ``n`` three-level emitters."""

    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.amps, dtype=complex)
        if a.shape != (3 ** self.n,):
            raise ValueError(f"expected {3 ** self.n} amplitudes, got shape {a.shape}")
        object.__setattr__(self, "amps", a)

    @classmethod
    def ground(cls, n: int) -> "EmitterRegister":
        """The fully excited initial register ``|e,...,e>``."""
        amps = np.zeros(3 ** n, dtype=complex)
        amps[0] = 1.0
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, ket: str) -> complex:
        return complex(self.amps[ket_index(ket)])


def _detection_kernel(amps: np.ndarray, n: int,
                      alpha_weights: np.ndarray,
                      beta_weights: np.ndarray) -> np.ndarray:
    """Apply one detection with per-emitter weighted components.

    Emitter ``j``'s term ``alpha_j |+><e| + beta_j |-><e|`` moves amplitude
    from digit value 0 to values 1 and 2 of digit ``j``.  Shared by the
    plain detection operator (uniform weights) and the position-dependent
    one (far-field phase factors).
    """
    out = np.zeros_like(amps)
    for j, src in enumerate(_excited_slots(n)):
        step = 3 ** j
        contrib = amps[src]
        out[src + step] += alpha_weights[j] * contrib
        out[src + 2 * step] += beta_weights[j] * contrib
    return out


def apply_detection(register: EmitterRegister, polarizer: Polarizer) -> EmitterRegister:
    """Apply the detection operator for one polarized photodetection.

    The operator is ``alpha * sum_j |+>_j<e|  +  beta * sum_j |->_j<e|``:
    each emitter's excited amplitude branches coherently into ``+`` and
    ``-`` weighted by the polarizer components.  The constant prefactor of
    a physical detection is dropped; the result is unnormalized.

    Raises
    ------
    NoExcitedPopulationError
        If the resulting register is the zero vector (no excited amplitude
        was available, or everything cancelled).
    """
    n = register.n
    out = _detection_kernel(
        register.amps, n,
        np.full(n, polarizer.alpha, dtype=complex),
        np.full(n, polarizer.beta, dtype=complex),
    )
    if not out.any():
        raise NoExcitedPopulationError("detection produced the zero vector")
    return EmitterRegister(n, out)


def project_symmetric(register: EmitterRegister) -> SymmetricState:
    """Project a fully de-excited register onto the symmetric subspace.

    Returns the normalized symmetric state with coefficients
    ``d_k = (sum of amplitudes over kets with k minuses) / sqrt(C(n, k))``.

    Raises
    ------
    ResidualExcitationError
        If any ket containing ``e`` carries amplitude above ``RESIDUAL_TOL``.
    AsymmetricResidueError
        If the projection would lose more than ``RESIDUAL_TOL`` of the
        squared norm (the register has an antisymmetric component).
    ZeroStateError
        If the register is the zero vector.
    """
    n = register.n
    amps = register.amps
    free, minus, _ = _ground_free_info(n)
    excited_mask = np.ones(3 ** n, dtype=bool)
    excited_mask[free] = False
    if excited_mask.any():
        worst = np.abs(amps[excited_mask]).max()
        if worst > RESIDUAL_TOL:
            raise ResidualExcitationError(
                f"excited amplitude {worst:.3e} above {RESIDUAL_TOL:.0e}")
    total = float(np.vdot(amps, amps).real)
    if total == 0.0:
        raise ZeroStateError("register is the zero vector")
    raw = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        raw[k] = amps[free[minus == k]].sum() / np.sqrt(comb(n, k))
    kept = float(np.vdot(raw, raw).real)
    if 1.0 - kept / total > RESIDUAL_TOL:
        raise AsymmetricResidueError(
            f"projection keeps only {kept / total:.12f} of the squared norm")
    return SymmetricState.from_raw(n, raw)
