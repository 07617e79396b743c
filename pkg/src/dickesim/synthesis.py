"""Inverse design: polarizer settings for an arbitrary symmetric target.

The forward map sends polarizer components to the coefficients of the product
polynomial ``prod_i (alpha_i + beta_i z)``, so inverting it is root finding.
Given target coefficients ``d_k``, build

    P(z) = sum_k (-1)**(K-k) * sqrt(C(n,k)/C(n,K)) * d_k * z**k

with ``K`` the largest index carrying a nonzero coefficient.  The ``K`` roots
of ``P`` are the component ratios ``alpha_i / beta_i`` of ``K`` polarizers;
the remaining ``n - K`` polarizers sit on the pure ``+`` circular component.
The sign pattern makes the reconstructed product polynomial proportional to
the target coefficient list, which the round-trip tests pin down.

Named recipes for the standard maximally-entangled, single-excitation and
product targets are provided alongside the generic construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .cascade import PolarizerConfig
from .core import Polarizer, SymmetricState
from .errors import RootFindingError, ZeroTargetError

#: Coefficients below this magnitude do not count toward the polynomial degree.
DEGREE_TOL = 1e-12


@dataclass(frozen=True)
class SynthesisPolynomial:
    """Root-finding polynomial associated with a symmetric target state.

    ``coeffs[k]`` multiplies ``z**k``; the leading coefficient is nonzero by
    construction (the degree is the largest target index above
    ``DEGREE_TOL``).
    """

    degree: int
    coeffs: np.ndarray

    @classmethod
    def from_state(cls, target: SymmetricState) -> "SynthesisPolynomial":
        d = target.coeffs
        n = target.n
        above = np.nonzero(np.abs(d) > DEGREE_TOL)[0]
        if len(above) == 0:
            raise ZeroTargetError("target has no coefficient above tolerance")
        k_max = int(above[-1])
        scale = comb(n, k_max)
        coeffs = np.array([
            (-1) ** (k_max - k) * np.sqrt(comb(n, k) / scale) * d[k]
            for k in range(k_max + 1)
        ])
        return cls(k_max, coeffs)

    def roots(self) -> np.ndarray:
        """Roots via the balanced companion matrix; empty for degree 0."""
        if self.degree == 0:
            return np.zeros(0, dtype=complex)
        try:
            roots = np.roots(self.coeffs[::-1])
        except np.linalg.LinAlgError as exc:
            raise RootFindingError(f"companion eigensolver failed: {exc}") from exc
        if not np.all(np.isfinite(roots)):
            raise RootFindingError("non-finite root encountered")
        return roots


def synthesize(target: SymmetricState) -> PolarizerConfig:
    """Polarizer configuration whose cascade output is ``target``.

    Each root ``r`` becomes the polarizer ``(r, 1)/sqrt(1+|r|^2)``; targets
    with vanishing top coefficients get ``n - K`` pure-``+`` polarizers.
    The fully inverted target (only the top coefficient nonzero) needs no
    special casing: all roots are zero and every polarizer lands on the pure
    ``-`` component.
    """
    poly = SynthesisPolynomial.from_state(target)
    pols = [Polarizer(r, 1.0) for r in poly.roots()]
    pols.extend(Polarizer.sigma_plus() for _ in range(target.n - poly.degree))
    return PolarizerConfig(tuple(pols))


# ---------------------------------------------------------------------------
# named configurations
# ---------------------------------------------------------------------------

def ghz_config(n: int, phi: float) -> PolarizerConfig:
    """Linear polarizers generating ``(|+..+> + e^{i phi}|-..->)/sqrt(2)``.

    The ``n`` orientations are spread uniformly over the half-turn:
    ``theta_k = phi/(2n) + k*pi/n``, offset by an extra ``pi/(2n)`` when
    ``n`` is even (without the offset the relative phase of the two
    components comes out as ``-e^{i phi}``).
    """
    if n < 2:
        raise ValueError("maximally entangled target needs n >= 2")
    offset = np.pi / (2 * n) if n % 2 == 0 else 0.0
    return PolarizerConfig.from_angles(
        offset + phi / (2 * n) + k * np.pi / n for k in range(n))


def s_config(n: int, phi: float) -> PolarizerConfig:
    """Identical linear polarizers generating the product state.

    All angles sit at ``phi/2``; the output is the n-fold product of
    ``(|+> + e^{i phi}|->)/sqrt(2)``.
    """
    if n < 1:
        raise ValueError("system size must be >= 1")
    return PolarizerConfig.from_angles([phi / 2.0] * n)


def w_config(n: int, phi: float, sign: int = +1) -> PolarizerConfig:
    """Two orthogonal orientation groups generating the single-excitation state.

    The target is ``(1/sqrt(n)) * sum_j |0..1_j..0>`` in the rotated basis
    ``|0> = (|+> - e^{i phi}|->)/sqrt(2)``, ``|1> = (|+> + e^{i phi}|->)/sqrt(2)``.
    One polarizer sits at ``phi/2`` and contributes the lone ``|1>``; the
    other ``n - 1`` sit orthogonal to it at ``phi/2 + sign*pi/2`` and each
    contribute a ``|0>``.  Swapping the two angle groups would produce the
    mirrored state (the same pattern at phase ``phi + pi``).  ``sign`` picks
    the representative of the orthogonal angle; both choices reduce to the
    same orientation.
    """
    if n < 2:
        raise ValueError("single-excitation target needs n >= 2")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    angles = [phi / 2.0 + sign * np.pi / 2.0] * (n - 1) + [phi / 2.0]
    return PolarizerConfig.from_angles(angles)
