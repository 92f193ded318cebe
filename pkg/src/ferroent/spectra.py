"""Sector eigendecomposition, ground-subspace extraction, and Gibbs weights.

Temperature is measured in the same dimensionless units as the couplings
(Boltzmann constant fixed to 1).  T = 0 is handled as an explicit uniform
mixture over the degenerate ground multiplet rather than as a limit of
Boltzmann factors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import SpinGraph
from .hilbert import SectorBasis, build_sector_hamiltonian, sector_basis

DEFAULT_N_SPINS_CAP = 14
DEFAULT_DEGENERACY_TOL = 1e-9

_SYMMETRY_TOL = 1e-14


@dataclass(frozen=True)
class SectorSpectrum:
    """Eigendecomposition of one S^z block: ascending eigenvalues, orthonormal columns."""

    basis: SectorBasis
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n_up(self) -> int:
        return self.basis.n_up


@dataclass(frozen=True)
class MixedStateSpec:
    """Incoherent mixture of eigenstates: (n_up, eigenstate index, weight) terms."""

    temperature: float
    terms: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        total = sum(weight for _, _, weight in self.terms)
        if any(weight < 0.0 for _, _, weight in self.terms):
            raise ValueError("mixture weights must be nonnegative")
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"mixture weights sum to {total}, expected 1")


def eig_sym(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix, eigenvalues ascending.

    Validates symmetry and finiteness, then defers to LAPACK's symmetric
    solver; non-convergence surfaces as a LinAlgError from the backend.
    """
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix has non-finite entries")
    if matrix.shape[0] > 1 and np.max(np.abs(matrix - matrix.T)) > _SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric to within 1e-14")
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    return eigenvalues, eigenvectors


def full_spectrum(
    graph: SpinGraph, b_field: float = 0.0, n_spins_cap: int = DEFAULT_N_SPINS_CAP
) -> list[SectorSpectrum]:
    """Diagonalize every S^z sector; 2^N eigenvalues in total."""
    n = graph.n_spins
    if n > n_spins_cap:
        raise ValueError(f"n_spins={n} exceeds the solver cap of {n_spins_cap}")
    spectra = []
    for n_up in range(n + 1):
        basis = sector_basis(n, n_up)
        matrix = build_sector_hamiltonian(graph, n_up, b_field)
        eigenvalues, eigenvectors = eig_sym(matrix)
        spectra.append(
            SectorSpectrum(basis=basis, eigenvalues=eigenvalues, eigenvectors=eigenvectors)
        )
    return spectra


def _flat_energies(spectra: list[SectorSpectrum]) -> list[tuple[float, int, int]]:
    return [
        (float(energy), spectrum.n_up, k)
        for spectrum in spectra
        for k, energy in enumerate(spectrum.eigenvalues)
    ]


def ground_energy(spectra: list[SectorSpectrum]) -> float:
    return min(float(spectrum.eigenvalues[0]) for spectrum in spectra)


def energy_gap(spectra: list[SectorSpectrum], degeneracy_tol: float = DEFAULT_DEGENERACY_TOL) -> float:
    """Gap from the ground multiplet to the first state above it (0 if none)."""
    energies = sorted(energy for energy, _, _ in _flat_energies(spectra))
    e_min, e_max = energies[0], energies[-1]
    threshold = e_min + degeneracy_tol * max(1.0, e_max - e_min)
    above = [energy for energy in energies if energy > threshold]
    return (above[0] - e_min) if above else 0.0


def ground_subspace(
    spectra: list[SectorSpectrum], degeneracy_tol: float = DEFAULT_DEGENERACY_TOL
) -> MixedStateSpec:
    """Uniform mixture over all eigenstates within the degeneracy window.

    The window is E_min + degeneracy_tol * max(1, spectral range): the
    spectrum is exactly degenerate in exact arithmetic and the tolerance
    only absorbs floating-point spread.
    """
    if not spectra:
        raise ValueError("no spectra given")
    energies = _flat_energies(spectra)
    e_min = min(energy for energy, _, _ in energies)
    e_max = max(energy for energy, _, _ in energies)
    threshold = e_min + degeneracy_tol * max(1.0, e_max - e_min)
    members = [(n_up, k) for energy, n_up, k in energies if energy <= threshold]
    weight = 1.0 / len(members)
    return MixedStateSpec(
        temperature=0.0, terms=tuple((n_up, k, weight) for n_up, k in members)
    )


def gibbs_weights(
    spectra: list[SectorSpectrum],
    temperature: float,
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL,
) -> MixedStateSpec:
    """Boltzmann mixture over all eigenstates; T = 0 falls back to the ground multiplet.

    Energies are shifted by E_min before exponentiation so weights stay
    finite at low temperature.
    """
    if temperature < 0.0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return ground_subspace(spectra, degeneracy_tol)
    energies = _flat_energies(spectra)
    e_min = min(energy for energy, _, _ in energies)
    factors = [
        (np.exp(-(energy - e_min) / temperature), n_up, k) for energy, n_up, k in energies
    ]
    partition = sum(factor for factor, _, _ in factors)
    return MixedStateSpec(
        temperature=temperature,
        terms=tuple((n_up, k, factor / partition) for factor, n_up, k in factors),
    )


def ground_degeneracy(
    spectra: list[SectorSpectrum], degeneracy_tol: float = DEFAULT_DEGENERACY_TOL
) -> int:
    return len(ground_subspace(spectra, degeneracy_tol).terms)
