"""Bloch-sphere geometry of a two-level state and of its driving Hamiltonian.

Basis ordering is (|e>, |g>), so sigma_z = diag(1, -1) and the density
matrix reads rho = (1 + n.sigma) / 2 with

    n = (2 Re rho_eg, -2 Im rho_eg, rho_ee - rho_gg).

All quantities broadcast over leading axes; the last axis holds the three
Cartesian components.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnphysicalStateError

EPS_NUM = 1e-10
# Inputs with |n| above this are rejected as unphysical.
NORM_TOLERANCE = 1e-9

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY = np.eye(2, dtype=complex)


def _vec(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape[-1:] != (3,):
        raise ValueError(f"expected trailing dimension 3, got shape {arr.shape}")
    return arr


def dot(a, b) -> np.ndarray:
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def norm(v) -> np.ndarray:
    return np.sqrt(dot(v, v))


def matrix_from_vector(v, trace: float = 1.0) -> np.ndarray:
    """Return (trace * 1 + v.sigma) / 2 as a complex 2x2 matrix."""
    v = np.asarray(v, dtype=float)
    return 0.5 * (trace * IDENTITY + np.einsum("...k,kij->...ij", v, PAULI))


def vector_from_matrix(rho) -> np.ndarray:
    """Bloch components Tr(rho sigma_k) of a 2x2 operator."""
    rho = np.asarray(rho)
    return np.real(np.einsum("...ij,kji->...k", rho, PAULI))


@dataclass(frozen=True)
class BlochState:
    """Two-level state stored as its real Bloch vector."""

    n_vec: np.ndarray

    def __post_init__(self):
        v = _vec(self.n_vec)
        if np.any(norm(v) > 1.0 + NORM_TOLERANCE):
            raise UnphysicalStateError(f"Bloch vector norm exceeds 1: {norm(v)}")
        object.__setattr__(self, "n_vec", v)

    @classmethod
    def from_matrix(cls, rho) -> "BlochState":
        return cls(vector_from_matrix(rho))

    @property
    def x(self):
        return self.n_vec[..., 0]

    @property
    def y(self):
        return self.n_vec[..., 1]

    @property
    def z(self):
        return self.n_vec[..., 2]

    @property
    def norm(self):
        return norm(self.n_vec)

    @property
    def population_inversion(self):
        return self.z

    @property
    def coherence(self):
        """rho_eg = (x - i y) / 2."""
        return 0.5 * (self.x - 1j * self.y)

    @property
    def coherence_phase(self):
        """Phase varphi with exp(-i varphi) = rho_eg / |rho_eg|; 0 when rho_eg = 0."""
        return np.arctan2(self.y, self.x)

    @property
    def gauge_arbitrary(self):
        """True where rho_eg vanishes and the coherence phase carries no information."""
        return np.hypot(self.x, self.y) == 0.0

    @property
    def mixing_angle(self):
        """The angle 2*phi with cos(2 phi) = Delta / n and sin(2 phi) = 2|rho_eg| / n."""
        return np.arctan2(np.hypot(self.x, self.y), self.z)

    @property
    def eigenvalues(self):
        n = self.norm
        return 0.5 * (1.0 + n), 0.5 * (1.0 - n)

    def matrix(self) -> np.ndarray:
        return matrix_from_vector(self.n_vec)


@dataclass(frozen=True)
class DrivingField:
    """Traceless Hamiltonian H = h.sigma (angular-frequency units)."""

    h_vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h_vec", _vec(self.h_vec))

    @property
    def norm(self):
        return norm(self.h_vec)

    @property
    def energies(self):
        h = self.norm
        return h, -h

    @property
    def mixing_angle(self):
        """The angle 2*theta with cos(2 theta) = h_z / h."""
        v = self.h_vec
        return np.arctan2(np.hypot(v[..., 0], v[..., 1]), v[..., 2])

    @property
    def phase(self):
        """Theta with <e|H|g> = |H_eg| exp(-i Theta)."""
        return np.arctan2(self.h_vec[..., 1], self.h_vec[..., 0])

    def matrix(self) -> np.ndarray:
        return matrix_from_vector(self.h_vec, trace=0.0) * 2.0

    def eigenvectors(self):
        return _spinors(self.mixing_angle, self.phase)


@dataclass(frozen=True)
class AlignmentAngle:
    """cos(alpha) between the state and field directions.

    ``degenerate`` marks n = 0 or h = 0, where cos_alpha is set to 0.
    """

    cos_alpha: np.ndarray
    degenerate: np.ndarray


def _spinors(two_angle, phase):
    half = 0.5 * np.asarray(two_angle)
    c, s = np.cos(half), np.sin(half)
    e = np.exp(1j * np.asarray(phase))
    plus = np.stack([c + 0j, e * s], axis=-1)
    minus = np.stack([-np.conj(e) * s, c + 0j], axis=-1)
    return plus, minus


def state_eigensystem(s: BlochState):
    """Eigenvalues and eigenvectors of the density matrix.

    Returns ``(n_plus, n_minus, eigvec_plus, eigvec_minus)`` with the
    eigenvectors as arrays of amplitudes on (|e>, |g>), parametrized as

        |n+> = cos(phi)|e> + exp(i varphi) sin(phi)|g>
        |n-> = -exp(-i varphi) sin(phi)|e> + cos(phi)|g>.
    """
    n_plus, n_minus = s.eigenvalues
    vp, vm = _spinors(s.mixing_angle, s.coherence_phase)
    return n_plus, n_minus, vp, vm


def purity(s: BlochState):
    return 0.5 * (1.0 + s.norm**2)


def binary_entropy(n):
    """Von Neumann entropy of a qubit with Bloch norm n, using 0 ln 0 = 0."""
    n = np.clip(np.asarray(n, dtype=float), 0.0, 1.0)
    p, m = 0.5 * (1.0 + n), 0.5 * (1.0 - n)
    with np.errstate(divide="ignore", invalid="ignore"):
        tp = np.where(p > 0, -p * np.log(np.where(p > 0, p, 1.0)), 0.0)
        tm = np.where(m > 0, -m * np.log(np.where(m > 0, m, 1.0)), 0.0)
    return tp + tm


def von_neumann_entropy(s: BlochState):
    return binary_entropy(s.norm)


def internal_energy(s: BlochState, f: DrivingField):
    """U = Tr(H rho) = n.h."""
    return dot(s.n_vec, f.h_vec)


def alignment(s: BlochState, f: DrivingField) -> AlignmentAngle:
    n, h = s.norm, f.norm
    degenerate = (n == 0.0) | (h == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = internal_energy(s, f) / (n * h)
    c = np.where(degenerate, 0.0, np.clip(c, -1.0, 1.0))
    return AlignmentAngle(c, degenerate)


def cos_alpha(s: BlochState, f: DrivingField):
    """Cosine of the angle between the Bloch vector and the field vector."""
    return alignment(s, f).cos_alpha


def cos_alpha_overlaps(s: BlochState, f: DrivingField):
    """|<E+|n+>|^2 - |<E-|n+>|^2 from the two eigenbases."""
    _, _, np_vec, _ = state_eigensystem(s)
    ep, em = f.eigenvectors()
    op = np.abs(np.sum(np.conj(ep) * np_vec, axis=-1)) ** 2
    om = np.abs(np.sum(np.conj(em) * np_vec, axis=-1)) ** 2
    return op - om
