"""Monte-Carlo fidelity under finite detection windows and emitter motion.

The ideal cascade assumes every photodetection projects all emitters with a
common weight.  A real detector accepts photons over a finite angular window
and the emitters jitter around their trap centers, so emitter ``j``'s term
acquires the far-field phase ``exp(i k r_j . nhat)`` (``k = 2 pi /
wavelength``, ``nhat`` the detection direction).  When those phases do not
factor into a per-detector times per-emitter form, the interfering paths
dephase and the prepared state degrades.

Sampling model (all of it overridable through :class:`DetectionGeometry`):

* emitter positions are their means plus an isotropic Gaussian displacement
  in the plane transverse to the emitter line, drawn once per sample and
  held fixed for all detections of that sample (trap motion is slow against
  the detection cascade);
* each detection direction is drawn uniformly within the azimuthal window,
  i.e. the nominal direction rotated about the vertical (z) axis by an angle
  in ``[-window_halfangle, +window_halfangle]``;
* the default arrangement puts the emitter line along x and the detectors
  on a ring of directions perpendicular to it, which makes the nominal path
  differences vanish exactly (the zero-window, zero-jitter limit reproduces
  the ideal cascade bit for bit).

The wavelength and detector arrangement are free parameters of the model;
defaults use a 493 nm dipole transition typical of trapped ions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cascade import _as_config, dicke_coefficients
from .core import (
    EmitterRegister,
    Polarizer,
    SymmetricState,
    _detection_kernel,
    _ground_free_info,
)
from .errors import DimensionMismatchError, ZeroStateError

DEFAULT_WAVELENGTH = 493e-9

#: Register norm below which a sample counts as annihilated by cancellation.
ANNIHILATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DetectionGeometry:
    """Spatial layout of emitters and detectors for window sampling.

    Parameters
    ----------
    emitter_positions : (n, 3) array
        Mean emitter positions in meters.
    transverse_sigma : float
        Standard deviation (meters, per transverse axis) of the Gaussian
        positional jitter in the plane orthogonal to the emitter line.
    wavelength : float
        Emission wavelength in meters.
    detector_directions : (n, 3) array
        Nominal unit direction of each detector (normalized on construction).
    window_halfangle : float
        Angular half-width (radians) of each detector's azimuthal window.
    """

    emitter_positions: np.ndarray
    transverse_sigma: float
    wavelength: float
    detector_directions: np.ndarray
    window_halfangle: float

    def __post_init__(self) -> None:
        pos = np.asarray(self.emitter_positions, dtype=float)
        dirs = np.asarray(self.detector_directions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise ValueError(f"emitter_positions must be (n, 3), got {pos.shape}")
        if dirs.shape != pos.shape:
            raise ValueError(
                f"detector_directions {dirs.shape} must match emitter_positions {pos.shape}")
        if not np.all(np.isfinite(pos)) or not np.all(np.isfinite(dirs)):
            raise ValueError("positions and directions must be finite")
        if not self.wavelength > 0:
            raise ValueError("wavelength must be positive")
        if self.window_halfangle < 0:
            raise ValueError("window_halfangle must be >= 0")
        if self.transverse_sigma < 0:
            raise ValueError("transverse_sigma must be >= 0")
        norms = np.linalg.norm(dirs, axis=1)
        if np.any(norms == 0):
            raise ValueError("detector directions must be nonzero")
        object.__setattr__(self, "emitter_positions", pos)
        object.__setattr__(self, "detector_directions", dirs / norms[:, None])

    @property
    def n(self) -> int:
        return self.emitter_positions.shape[0]

    @property
    def wavenumber(self) -> float:
        return 2.0 * np.pi / self.wavelength

    @classmethod
    def linear_chain(cls, n: int, spacing: float = 5e-6,
                     transverse_sigma: float = 5e-9,
                     wavelength: float = DEFAULT_WAVELENGTH,
                     window_halfangle: float = np.deg2rad(0.5),
                     ) -> "DetectionGeometry":
        """Equally spaced emitters on the x axis, detectors on a transverse ring.

        Detector ``i`` looks along ``(0, cos a_i, sin a_i)`` with the ring
        angles ``a_i = 2 pi i / n`` in the plane orthogonal to the chain.
        Defaults follow a typical trapped-ion setting: 5 um spacing, 5 nm
        transverse confinement, 493 nm light, a 1-degree detection window.
        """
        xs = (np.arange(n) - (n - 1) / 2.0) * spacing
        positions = np.column_stack([xs, np.zeros(n), np.zeros(n)])
        ring = 2.0 * np.pi * np.arange(n) / n
        directions = np.column_stack([np.zeros(n), np.cos(ring), np.sin(ring)])
        return cls(positions, transverse_sigma, wavelength, directions,
                   window_halfangle)


@dataclass(frozen=True)
class FidelityEstimate:
    """Monte-Carlo mean with its standard error (sample std / sqrt(count))."""

    mean_fidelity: float
    standard_error: float
    sample_count: int
    excluded_count: int = 0


@dataclass(frozen=True, eq=False)
class PositionalDetection:
    """One detection with per-emitter far-field phases attached."""

    polarizer: Polarizer
    phases: np.ndarray

    def apply(self, register: EmitterRegister) -> EmitterRegister:
        out = _detection_kernel(
            register.amps, register.n,
            self.polarizer.alpha * self.phases,
            self.polarizer.beta * self.phases,
        )
        return EmitterRegister(register.n, out)


def positional_detection_operator(polarizer: Polarizer,
                                  direction: np.ndarray,
                                  positions: np.ndarray,
                                  wavelength: float) -> PositionalDetection:
    """Detection operator with emitter ``j`` weighted by ``exp(i k r_j . nhat)``.

    Reduces to the plain detection operator (up to a global phase) whenever
    the per-emitter phases coincide, e.g. for a direction orthogonal to the
    line the emitters sit on.
    """
    direction = np.asarray(direction, dtype=float)
    if abs(np.linalg.norm(direction) - 1.0) > 1e-9:
        raise ValueError("direction must be a unit vector")
    positions = np.asarray(positions, dtype=float)
    k = 2.0 * np.pi / wavelength
    phases = np.exp(1j * k * positions @ direction)
    return PositionalDetection(polarizer, phases)


def _transverse_basis(positions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors spanning the plane orthogonal to the emitter line."""
    centered = positions - positions.mean(axis=0)
    if np.allclose(centered, 0.0):
        axis = np.array([1.0, 0.0, 0.0])
    else:
        _, _, vt = np.linalg.svd(centered)
        axis = vt[0]
    seed = np.array([0.0, 0.0, 1.0])
    if abs(axis @ seed) > 0.9:
        seed = np.array([0.0, 1.0, 0.0])
    t1 = np.cross(axis, seed)
    t1 /= np.linalg.norm(t1)
    t2 = np.cross(axis, t1)
    return t1, t2


def _rotate_about_z(v: np.ndarray, angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]])


def estimate_fidelity(config, geometry: DetectionGeometry,
                      target: SymmetricState | None = None,
                      samples: int = 1000, seed: int = 0) -> FidelityEstimate:
    """Mean fidelity of the sampled cascade output against a symmetric target.

    Each sample draws the emitter displacements, then one unit deviate per
    detector which the window halfangle scales into the direction offset
    (in that order; the draw count per sample is independent of the window
    size, so sweeps over the window with a shared seed are paired sample by
    sample).  The position-dependent detections are then applied and the
    squared overlap with the target taken in the full qubit space: the
    positional phases break permutation symmetry, so a symmetric projection
    cannot be used here.

    ``target`` defaults to the ideal (zero window, zero jitter) output of
    ``config``.  Samples whose register norm falls below ``ANNIHILATION_TOL``
    are excluded as annihilated and counted separately.

    Raises
    ------
    DimensionMismatchError
        If configuration, geometry, and target sizes disagree.
    ZeroStateError
        If every sample was annihilated.
    """
    config = _as_config(config)
    n = len(config)
    if geometry.n != n:
        raise DimensionMismatchError(
            f"geometry has {geometry.n} emitters, configuration has {n}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if target is None:
        target = dicke_coefficients(config)
    if target.n != n:
        raise DimensionMismatchError(
            f"target has {target.n} qubits, configuration has {n}")
    target_qubit = target.to_qubit_amplitudes()

    rng = np.random.default_rng(seed)
    t1, t2 = _transverse_basis(geometry.emitter_positions)
    free, _, qubit_idx = _ground_free_info(n)
    k = geometry.wavenumber
    halfwidth = geometry.window_halfangle
    sigma = geometry.transverse_sigma

    fidelities = np.empty(samples)
    kept = 0
    excluded = 0
    for _ in range(samples):
        g1 = rng.normal(0.0, 1.0, size=n) * sigma
        g2 = rng.normal(0.0, 1.0, size=n) * sigma
        positions = (geometry.emitter_positions
                     + np.outer(g1, t1) + np.outer(g2, t2))
        amps = EmitterRegister.ground(n).amps
        for i, polarizer in enumerate(config):
            delta = rng.uniform(-1.0, 1.0) * halfwidth
            nhat = _rotate_about_z(geometry.detector_directions[i], delta)
            phases = np.exp(1j * k * (positions @ nhat))
            amps = _detection_kernel(amps, n, polarizer.alpha * phases,
                                     polarizer.beta * phases)
        psi = amps[free]
        nrm = np.linalg.norm(psi)
        if nrm < ANNIHILATION_TOL:
            excluded += 1
            continue
        overlap = np.vdot(target_qubit[qubit_idx], psi) / nrm
        fidelities[kept] = abs(overlap) ** 2
        kept += 1

    if kept == 0:
        raise ZeroStateError("every sample was annihilated")
    values = fidelities[:kept]
    stderr = float(values.std(ddof=1) / np.sqrt(kept)) if kept > 1 else 0.0
    return FidelityEstimate(float(values.mean()), stderr, kept, excluded)
