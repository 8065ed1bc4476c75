"""Spectral analysis of transition matrices: decomposition, the six-way
eigenvalue taxonomy, evolution in the eigenbasis, and checks that the
spectrum behaves the way stochastic matrices must."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import TransitionMatrix, validate_distribution
from .errors import NotDiagonalizable, NumericError, SingularMatrix
from .numlin import ComplexEigenpairs, eigen_from_schur, real_schur, solve_linear

TAXONOMY_EPSILON = 1e-8
SPECTRAL_RADIUS_SLACK = 1e-8

PERSISTENT_STRUCTURE = "persistent_structure"
PERSISTENT_OSCILLATION = "persistent_oscillation"
PERSISTENT_CYCLE = "persistent_cycle"
TRANSIENT_STRUCTURE = "transient_structure"
TRANSIENT_OSCILLATION = "transient_oscillation"
TRANSIENT_CYCLE = "transient_cycle"


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a chain plus a deterministic sorted view.

    order permutes values into descending |lambda|, ties broken by
    descending real part then ascending imaginary part. left_row_sums
    reports sum(l) per eigenvector; for irreducible chains every
    non-unit eigenvalue's left vector sums to zero, for non-recurrent
    chains the sums are informational only.
    """

    pairs: ComplexEigenpairs
    order: tuple[int, ...]
    unit_multiplicity: int
    left_row_sums: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.pairs.values

    def sorted_values(self) -> np.ndarray:
        return self.pairs.values[list(self.order)]


def decompose(chain: TransitionMatrix) -> SpectralDecomposition:
    """Eigendecomposition via the real Schur form.

    Asserts the spectral radius of a stochastic matrix never exceeds one
    (up to roundoff) and counts the multiplicity of the eigenvalue 1.
    """
    pairs = eigen_from_schur(real_schur(chain.p))
    values = pairs.values
    radius = float(np.max(np.abs(values))) if len(values) else 0.0
    if radius > 1.0 + SPECTRAL_RADIUS_SLACK:
        raise NumericError(f"stochastic spectral radius {radius} exceeds 1")
    order = tuple(sorted(range(len(values)),
                         key=lambda j: (-abs(values[j]), -values[j].real,
                                        values[j].imag)))
    unit = int(np.sum(np.abs(values - 1.0) < TAXONOMY_EPSILON))
    left_sums = pairs.left_complex().sum(axis=0)
    return SpectralDecomposition(pairs=pairs, order=order,
                                 unit_multiplicity=unit,
                                 left_row_sums=left_sums)


def taxonomy(decomp: SpectralDecomposition,
             epsilon: float = TAXONOMY_EPSILON) -> list[str]:
    """Classify each eigenvalue by persistence (|lambda| vs 1) and by
    kind: structure (real nonnegative), oscillation (real negative), or
    cycle (genuinely complex). Boundary values within epsilon classify
    toward the persistent side."""
    labels = []
    for lam in decomp.values:
        re, im, mod = lam.real, lam.imag, abs(lam)
        if abs(lam - 1.0) < epsilon:
            labels.append(PERSISTENT_STRUCTURE)
        elif abs(lam + 1.0) < epsilon:
            labels.append(PERSISTENT_OSCILLATION)
        elif abs(mod - 1.0) < epsilon and abs(im) >= epsilon:
            labels.append(PERSISTENT_CYCLE)
        elif abs(im) < epsilon and re >= 0:
            labels.append(TRANSIENT_STRUCTURE)
        elif abs(im) < epsilon:
            labels.append(TRANSIENT_OSCILLATION)
        else:
            labels.append(TRANSIENT_CYCLE)
    return labels


@dataclass(frozen=True)
class EigenEvolution:
    """A distribution expanded in the eigenbasis and pushed k steps.

    coordinates are the coefficients c_w = mu^T r_w. The persistent part
    collects unit-modulus modes, the transient part the rest; their sum
    reconstructs the evolved distribution.
    """

    coordinates: np.ndarray
    persistent_part: np.ndarray
    transient_part: np.ndarray
    evolved: np.ndarray


def _block_power(values: np.ndarray, k: int) -> np.ndarray:
    """k-th power of the block-diagonal real form of the eigenvalues:
    scalars for real eigenvalues, 2x2 rotation-scalings for pairs."""
    n = len(values)
    m = np.zeros((n, n))
    j = 0
    while j < n:
        lam = values[j]
        if lam.imag > 0:
            r = abs(lam) ** k
            th = np.angle(lam) * k
            c, s = r * np.cos(th), r * np.sin(th)
            m[j, j] = c
            m[j, j + 1] = s
            m[j + 1, j] = -s
            m[j + 1, j + 1] = c
            j += 2
        else:
            m[j, j] = lam.real ** k
            j += 1
    return m


def spectral_evolve(decomp: SpectralDecomposition, mu, k: int,
                    epsilon: float = TAXONOMY_EPSILON) -> EigenEvolution:
    """Evolve mu for k steps entirely in the eigenbasis.

    Expands mu over the right eigenvectors, scales each coordinate by
    lambda^k, and reassembles through the dual (left) basis. Complex
    arithmetic stays inside the paired real encoding, so everything here
    is real linear algebra.
    """
    if not decomp.pairs.diagonalizable:
        raise NotDiagonalizable("defective spectrum; fall back to direct evolution")
    r_enc = decomp.pairs.right
    n = r_enc.shape[0]
    mu = validate_distribution(mu, n)
    try:
        dual = solve_linear(r_enc, np.eye(n))
    except SingularMatrix as exc:
        raise NotDiagonalizable("eigenbasis numerically singular") from exc
    coords_enc = mu @ r_enc
    power = _block_power(decomp.values, k)
    scaled = coords_enc @ power
    persistent_mask = np.abs(np.abs(decomp.values) - 1.0) < epsilon
    persistent = (scaled * persistent_mask) @ dual
    transient = (scaled * ~persistent_mask) @ dual
    coordinates = mu @ decomp.pairs.right_complex()
    return EigenEvolution(coordinates=coordinates,
                          persistent_part=persistent,
                          transient_part=transient,
                          evolved=persistent + transient)


def unit_circle_values(decomp: SpectralDecomposition,
                       epsilon: float = TAXONOMY_EPSILON) -> np.ndarray:
    vals = decomp.values
    return vals[np.abs(np.abs(vals) - 1.0) < epsilon]


def perron_report(decomp: SpectralDecomposition,
                  recurrent_classes: int | None = None,
                  epsilon: float = TAXONOMY_EPSILON) -> dict:
    """Conformance summary for a stochastic spectrum: radius bound, the
    multiplicity of 1 against the recurrent-class count, and the second
    modulus |lambda_2|."""
    vals = decomp.sorted_values()
    radius = float(np.max(np.abs(vals))) if len(vals) else 0.0
    report = {
        "spectral_radius": radius,
        "radius_ok": radius <= 1.0 + SPECTRAL_RADIUS_SLACK,
        "unit_multiplicity": decomp.unit_multiplicity,
        "second_modulus": float(np.abs(vals[decomp.unit_multiplicity]))
        if len(vals) > decomp.unit_multiplicity else None,
    }
    if recurrent_classes is not None:
        report["unit_multiplicity_matches_recurrent_classes"] = (
            decomp.unit_multiplicity == recurrent_classes)
    return report
