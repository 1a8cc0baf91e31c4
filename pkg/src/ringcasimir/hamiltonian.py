"""Qubit Hamiltonian container shared by the lattice, VQE and chiral modules.

A :class:`HamiltonianSpec` carries a qubit count plus at least one concrete
representation: a dense Hermitian matrix, a real diagonal (every ring
Hamiltonian in this package is diagonal in the computational basis), or a
Pauli-sum.  Dense matrices are only materialized up to
``DENSE_QUBIT_CAP`` qubits; diagonal storage stretches to
``RING_QUBIT_CAP``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .operators import CapacityError, require_hermitian

__all__ = ["HamiltonianSpec", "DENSE_QUBIT_CAP", "RING_QUBIT_CAP", "CapacityError"]

DENSE_QUBIT_CAP = 12
RING_QUBIT_CAP = 16


@dataclass
class HamiltonianSpec:
    """A qubit Hamiltonian with provenance label.

    At least one of ``matrix`` (dense Hermitian), ``diagonal`` (real 1-D) or
    ``pauli`` (a :class:`ringcasimir.pauli.PauliSum`) must be supplied and all
    supplied representations must share the dimension ``2**qubits``.
    """

    qubits: int
    matrix: Optional[np.ndarray] = None
    diagonal: Optional[np.ndarray] = None
    pauli: Any = None
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.qubits < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.qubits}")
        if self.matrix is None and self.diagonal is None and self.pauli is None:
            raise ValueError("HamiltonianSpec needs a matrix, diagonal or pauli representation")
        dim = self.dim
        if self.matrix is not None:
            self.matrix = np.asarray(self.matrix, dtype=complex)
            if self.matrix.shape != (dim, dim):
                raise ValueError(f"matrix shape {self.matrix.shape} != ({dim}, {dim})")
            require_hermitian(self.matrix)
        if self.diagonal is not None:
            self.diagonal = np.asarray(self.diagonal, dtype=float)
            if self.diagonal.shape != (dim,):
                raise ValueError(f"diagonal length {self.diagonal.shape} != {dim}")
        if self.pauli is not None and self.pauli.qubits != self.qubits:
            raise ValueError(f"pauli qubit count {self.pauli.qubits} != {self.qubits}")

    @property
    def dim(self) -> int:
        return 2**self.qubits

    def as_matrix(self) -> np.ndarray:
        """Dense Hermitian matrix; materialized on demand below the cap."""
        if self.matrix is not None:
            return self.matrix
        if self.qubits > DENSE_QUBIT_CAP:
            raise CapacityError(
                f"{self.qubits} qubits exceed the {DENSE_QUBIT_CAP}-qubit dense cap"
            )
        if self.diagonal is not None:
            return np.diag(self.diagonal.astype(complex))
        from .pauli import reconstruct

        return reconstruct(self.pauli)

    def ground_energy(self) -> float:
        """Lowest eigenvalue, via the cheapest available representation."""
        if self.diagonal is not None:
            return float(self.diagonal.min())
        if self.matrix is not None:
            return float(np.linalg.eigvalsh(self.matrix)[0])
        from .pauli import diagonal_part, is_diagonal

        if is_diagonal(self.pauli):
            return float(diagonal_part(self.pauli).min())
        return float(np.linalg.eigvalsh(self.as_matrix())[0])
