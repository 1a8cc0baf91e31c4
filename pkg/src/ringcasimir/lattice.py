"""Lattice ring fields in 1+1 dimensions: mode frequencies, Casimir sums.

A field lives on a ring regulated by ``N`` retained normal modes.  Four
families are supported: boson/fermion statistics crossed with
periodic/twisted (antiperiodic) boundary conditions, plus the combined
boson+fermion system.  Everything is expressed in the dimensionless lattice
units fixed by the family prefactors 8/(2N+1) (bosons) and 32/(2N+1)
(fermions); those prefactors are taken as given and set the ring radius
implicitly.

Conventions:

* mode index runs i = 1..N for every family,
* a mode frequency is ``prefactor * 2 sin(theta_i)`` with
  ``theta_i = 2 pi i / (4N+2)`` (periodic) or ``2 pi (i+1/2) / (4N+2)``
  (twisted),
* the raw vacuum sum is ``+1/2 sum_i omega_i`` for bosons and
  ``-1/2 sum_i omega_i`` for fermions,
* the regularization constant (-8/pi bosons, +32/pi fermions, +24/pi
  combined) is *added* to the raw sum to produce the Casimir energy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import CapacityError, HamiltonianSpec, RING_QUBIT_CAP

__all__ = [
    "Statistics",
    "Boundary",
    "ModeFamily",
    "CasimirReport",
    "FAMILY_LABELS",
    "mode_frequency",
    "subtraction_constant",
    "mode_sum_energy",
    "casimir_exact",
    "large_n_series",
    "continuum_density",
    "mode_hamiltonian",
    "ring_hamiltonian",
    "coupling_matrix",
    "percent_difference",
]


class Statistics(enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"
    COMBINED = "combined"


class Boundary(enum.Enum):
    PERIODIC = "periodic"
    TWISTED = "twisted"


@dataclass(frozen=True)
class ModeFamily:
    """One of the ring field families at lattice size ``sites`` (the
    retained-mode count N)."""

    statistics: Statistics
    boundary: Boundary
    sites: int

    def __post_init__(self):
        if self.sites < 1:
            raise ValueError(f"sites must be >= 1, got {self.sites}")

    @property
    def label(self) -> str:
        return f"{self.statistics.value}-{self.boundary.value}"

    @property
    def qubits(self) -> int:
        """Qubits of the assembled ring register (2 per boson mode, 1 per
        fermion mode)."""
        n = self.sites
        if self.statistics is Statistics.BOSON:
            return 2 * n
        if self.statistics is Statistics.FERMION:
            return n
        return 3 * n

    @classmethod
    def from_label(cls, label: str, sites: int) -> "ModeFamily":
        try:
            stat_s, bc_s = label.split("-")
            return cls(Statistics(stat_s), Boundary(bc_s), sites)
        except ValueError:
            raise ValueError(
                f"unknown family {label!r}; expected one of {sorted(FAMILY_LABELS)}"
            ) from None


FAMILY_LABELS = tuple(
    f"{s.value}-{b.value}" for s in Statistics for b in Boundary
)


def _prefactor(statistics: Statistics, sites: int) -> float:
    if statistics is Statistics.BOSON:
        return 8.0 / (2 * sites + 1)
    if statistics is Statistics.FERMION:
        return 32.0 / (2 * sites + 1)
    raise ValueError("combined family has no single prefactor; use the constituents")


def _frequency(statistics: Statistics, boundary: Boundary, sites: int, index: float) -> float:
    # index is allowed to be non-integral / zero here; the public
    # mode_frequency enforces the 1..N range used in energy sums.
    shift = 0.0 if boundary is Boundary.PERIODIC else 0.5
    theta = 2.0 * math.pi * (index + shift) / (4 * sites + 2)
    return _prefactor(statistics, sites) * 2.0 * math.sin(theta)


def _constituents(family: ModeFamily):
    if family.statistics is Statistics.COMBINED:
        return (
            ModeFamily(Statistics.BOSON, family.boundary, family.sites),
            ModeFamily(Statistics.FERMION, family.boundary, family.sites),
        )
    return (family,)


def mode_frequency(family: ModeFamily, i: int) -> float:
    """Frequency of normal mode ``i`` (1-based, i <= sites); strictly positive."""
    if family.statistics is Statistics.COMBINED:
        raise ValueError("combined family: query the boson or fermion constituent")
    if not 1 <= i <= family.sites:
        raise ValueError(f"mode index {i} outside 1..{family.sites}")
    return _frequency(family.statistics, family.boundary, family.sites, i)


def subtraction_constant(statistics: Statistics) -> float:
    """Signed regularization constant, to be *added* to the raw mode sum."""
    if statistics is Statistics.BOSON:
        return -8.0 / math.pi
    if statistics is Statistics.FERMION:
        return 32.0 / math.pi
    return 24.0 / math.pi


def mode_sum_energy(family: ModeFamily) -> float:
    """Raw half-sum of mode frequencies, before any subtraction.

    Bosons contribute +omega/2 per mode, fermions -omega/2 (filled Dirac
    sea of the single-mode Hamiltonians).
    """
    if family.statistics is Statistics.COMBINED:
        return sum(mode_sum_energy(f) for f in _constituents(family))
    sign = 0.5 if family.statistics is Statistics.BOSON else -0.5
    return sign * sum(mode_frequency(family, i) for i in range(1, family.sites + 1))


def casimir_exact(family: ModeFamily) -> float:
    """Lattice Casimir energy: raw mode sum plus the family's constant."""
    return mode_sum_energy(family) + subtraction_constant(family.statistics)


# Asymptotic large-N coefficients (c2/N^2 + c3/N^3 + c4/N^4) for each family.
_SERIES = {
    (Statistics.BOSON, Boundary.PERIODIC): (
        -math.pi / 6.0,
        math.pi / 6.0,
        -(180.0 * math.pi + math.pi**3) / 1440.0,
    ),
    (Statistics.FERMION, Boundary.PERIODIC): (
        4.0 * math.pi / 6.0,
        -4.0 * math.pi / 6.0,
        4.0 * (180.0 * math.pi + math.pi**3) / 1440.0,
    ),
    (Statistics.BOSON, Boundary.TWISTED): (
        math.pi / 12.0,
        -math.pi / 12.0,
        math.pi / 16.0 - 7.0 * math.pi**3 / 11520.0,
    ),
    (Statistics.FERMION, Boundary.TWISTED): (
        -4.0 * math.pi / 12.0,
        4.0 * math.pi / 12.0,
        -4.0 * (math.pi / 16.0 - 7.0 * math.pi**3 / 11520.0),
    ),
}


def large_n_series(family: ModeFamily, order: int) -> float:
    """Asymptotic expansion truncated at 1/N^order, order in {2, 3, 4}.

    The fermion coefficients are -4x the boson ones term by term.  Note the
    twisted families' *exact* lattice sums contain a finite-size piece that
    this expansion does not capture; see README.
    """
    if order not in (2, 3, 4):
        raise ValueError(f"order must be 2, 3 or 4, got {order}")
    key = (family.statistics, family.boundary)
    if key not in _SERIES:
        raise ValueError("series is defined for the four boson/fermion families")
    coeffs = _SERIES[key]
    n = family.sites
    return sum(c / n**k for c, k in zip(coeffs[: order - 1], range(2, order + 1)))


_CONTINUUM = {
    (Statistics.BOSON, Boundary.PERIODIC): -math.pi / 6.0,
    (Statistics.BOSON, Boundary.TWISTED): math.pi / 12.0,
    (Statistics.FERMION, Boundary.PERIODIC): 4.0 * math.pi / 6.0,
    (Statistics.FERMION, Boundary.TWISTED): -4.0 * math.pi / 12.0,
}


def continuum_density(family: ModeFamily, radius: float) -> float:
    """Continuum Casimir energy density on a spatial circle of ``radius``."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    key = (family.statistics, family.boundary)
    if key not in _CONTINUUM:
        raise ValueError("density is defined for the four boson/fermion families")
    return _CONTINUUM[key] / radius**2


def _mode_diagonal(statistics: Statistics, omega: float) -> np.ndarray:
    if statistics is Statistics.BOSON:
        return omega * (np.arange(4, dtype=float) + 0.5)
    return omega * (np.arange(2, dtype=float) - 0.5)


def mode_hamiltonian(family: ModeFamily, i: int) -> HamiltonianSpec:
    """Single-mode Hamiltonian: omega (n_hat + 1/2) on two qubits for a boson
    mode, omega (n_hat - 1/2) on one qubit for a fermion mode.

    Ground eigenvalue is +omega/2 (boson) or -omega/2 (fermion).
    """
    if family.statistics is Statistics.COMBINED:
        raise ValueError("combined family: build the boson and fermion modes separately")
    omega = mode_frequency(family, i)
    diag = _mode_diagonal(family.statistics, omega)
    qubits = 2 if family.statistics is Statistics.BOSON else 1
    return HamiltonianSpec(
        qubits=qubits,
        matrix=np.diag(diag.astype(complex)),
        diagonal=diag,
        label=f"{family.label} N={family.sites} mode {i}",
    )


def ring_hamiltonian(family: ModeFamily) -> HamiltonianSpec:
    """Tensor-assembled sum of the per-mode Hamiltonians, modes 1..N.

    Mode 1 occupies the most significant register slot; for the combined
    family the boson register precedes the fermion register.  Every ring
    Hamiltonian is diagonal, so only the diagonal is stored; the ground
    eigenvalue equals ``mode_sum_energy`` exactly.
    """
    qubits = family.qubits
    if qubits > RING_QUBIT_CAP:
        raise CapacityError(
            f"{family.label} N={family.sites} needs {qubits} qubits "
            f"(cap {RING_QUBIT_CAP}); run per-mode partitioned VQE instead"
        )
    diag = np.zeros(1)
    for member in _constituents(family):
        for i in range(1, member.sites + 1):
            omega = mode_frequency(member, i)
            diag = np.add.outer(diag, _mode_diagonal(member.statistics, omega)).ravel()
    return HamiltonianSpec(
        qubits=qubits,
        diagonal=diag,
        label=f"{family.label} N={family.sites} ring",
    )


def coupling_matrix(N: int, boundary: Boundary) -> np.ndarray:
    """Second-difference matrix of a scalar ring on 2N+1 sites.

    Diagonal 2, off-diagonals -1; the corner entries are -1 for periodic and
    +1 for twisted boundary conditions.  The square roots of its eigenvalues,
    scaled by the family prefactor, reproduce the mode frequencies by Fourier
    decomposition: each frequency appears twice, alongside a zero mode for
    the periodic ring or the unpaired top mode for the twisted one.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    m = 2 * N + 1
    c = 2.0 * np.eye(m)
    for j in range(m - 1):
        c[j, j + 1] = c[j + 1, j] = -1.0
    corner = -1.0 if boundary is Boundary.PERIODIC else 1.0
    c[0, m - 1] = c[m - 1, 0] = corner
    return c


@dataclass
class CasimirReport:
    """Exact-versus-VQE summary for one family at one lattice size."""

    family: ModeFamily
    exact_energy: float
    vqe_energy: float
    percent_difference: float
    per_mode_energies: list = field(default_factory=list)
    subtraction: float = 0.0

    def to_dict(self) -> dict:
        return {
            "family": self.family.label,
            "sites": self.family.sites,
            "exact_energy": self.exact_energy,
            "vqe_energy": self.vqe_energy,
            "percent_difference": self.percent_difference,
            "per_mode_energies": list(self.per_mode_energies),
            "subtraction": self.subtraction,
        }


def percent_difference(vqe_energy: float, exact_energy: float) -> float:
    """Signed relative deviation in percent, denominated by the exact value."""
    if exact_energy == 0.0:
        return math.nan
    return 100.0 * (vqe_energy - exact_energy) / exact_energy
