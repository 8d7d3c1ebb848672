"""Exactly solvable driven open qubit.

A two-level atom (splitting omega0) is driven by a circularly polarized
laser of frequency Omega and amplitude epsilon,

    H_S(t) = omega0/2 sigma_z + epsilon (cos(Omega t) sigma_x + sin(Omega t) sigma_y),

and couples to a dephasing bath (through sigma_z) and a photon bath
(through sigma_x).  After the Floquet decomposition U_S(t) = P_t exp(-i Hbar t)
with P_t = exp(-i Omega t sigma_z / 2) and Hbar = delta/2 sigma_z + epsilon sigma_x,
the secular master equation in the interaction picture is a Lindblad equation
whose jump operators are the Pauli operators of the Floquet basis

    |e~> = cos(theta)|e> + sin(theta)|g>,   |g~> = -sin(theta)|e> + cos(theta)|g>.

Frequencies are in units of omega0 and times in units of 1/omega0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .bloch import SIGMA_X, SIGMA_Z, BlochState, DrivingField
from .errors import InvalidSpectrumError, NoRelaxationError, ValidationError
from .firstlaw import TrajectoryPoint

BATHS = ("z", "x")
QUASI = (-1, 0, 1)


@dataclass(frozen=True)
class ModelParams:
    omega0: float = 1.0
    Omega: float = 1.0
    epsilon: float = 0.3

    def __post_init__(self):
        if not self.omega0 > 0:
            raise ValidationError(f"omega0 must be positive, got {self.omega0}")
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be nonnegative, got {self.epsilon}")

    @property
    def delta(self) -> float:
        """Detuning omega0 - Omega."""
        return self.omega0 - self.Omega

    @property
    def rabi(self) -> float:
        """Rabi frequency Omega_r = sqrt(4 eps^2 + delta^2)."""
        return float(np.hypot(2.0 * self.epsilon, self.delta))

    @property
    def two_theta(self) -> float:
        return float(np.arctan2(2.0 * self.epsilon, self.delta))

    @property
    def theta(self) -> float:
        return 0.5 * self.two_theta

    @property
    def cos2t(self) -> float:
        return float(np.cos(self.two_theta))

    @property
    def sin2t(self) -> float:
        return float(np.sin(self.two_theta))

    @property
    def h0(self) -> float:
        """Constant norm of the driving field vector."""
        return float(np.hypot(self.epsilon, 0.5 * self.omega0))

    def h_vec(self, t):
        t = np.asarray(t, dtype=float)
        e = self.epsilon
        return np.stack([e * np.cos(self.Omega * t), e * np.sin(self.Omega * t),
                         np.full_like(t, 0.5 * self.omega0)], axis=-1)

    def dh_vec(self, t):
        t = np.asarray(t, dtype=float)
        eO = self.epsilon * self.Omega
        return np.stack([-eO * np.sin(self.Omega * t), eO * np.cos(self.Omega * t),
                         np.zeros_like(t)], axis=-1)

    def field(self, t) -> DrivingField:
        return DrivingField(self.h_vec(t))

    def hamiltonian(self, t) -> np.ndarray:
        return DrivingField(self.h_vec(t)).matrix()

    def average_hamiltonian(self) -> np.ndarray:
        return 0.5 * self.delta * SIGMA_Z + self.epsilon * SIGMA_X

    def floquet_basis(self) -> np.ndarray:
        """Columns are |e~>, |g~> in the atom basis."""
        c, s = np.cos(self.theta), np.sin(self.theta)
        return np.array([[c, -s], [s, c]], dtype=complex)

    def floquet_operators(self) -> dict:
        """sigma~_q for q = -1, 0, +1, written in the atom basis."""
        V = self.floquet_basis()
        e, g = V[:, 0], V[:, 1]
        plus = np.outer(e, g.conj())
        return {-1: plus.conj().T, 0: np.outer(e, e.conj()) - np.outer(g, g.conj()),
                1: plus}

    def micromotion(self, t) -> np.ndarray:
        """P_t = exp(-i Omega t sigma_z / 2)."""
        phase = np.exp(-0.5j * self.Omega * np.asarray(t, dtype=float))
        out = np.zeros(np.shape(t) + (2, 2), dtype=complex)
        out[..., 0, 0] = phase
        out[..., 1, 1] = np.conj(phase)
        return out

    def propagator(self, t) -> np.ndarray:
        """U_S(t) = P_t exp(-i Hbar t), with Hbar = Omega_r/2 sigma~_z."""
        t = np.asarray(t, dtype=float)
        V = self.floquet_basis()
        half = 0.5 * self.rabi * t
        diag = np.zeros(np.shape(t) + (2, 2), dtype=complex)
        diag[..., 0, 0] = np.exp(-1j * half)
        diag[..., 1, 1] = np.exp(1j * half)
        return self.micromotion(t) @ (V @ diag @ V.conj().T)


def fourier_coefficients(m: ModelParams) -> dict:
    """Real coefficients s[j][q+1, p+1] of sigma_j(t) = sum e^{i(q Omega_r + p Omega)t} s_qp sigma~_q."""
    c, s = m.cos2t, m.sin2t
    z = np.zeros((3, 3))
    z[1, 1] = c
    z[0, 1] = z[2, 1] = -s
    x = np.zeros((3, 3))
    x[1, 0] = x[1, 2] = 0.5 * s
    x[2, 2] = x[0, 0] = 0.5 * (c + 1.0)
    x[2, 0] = x[0, 2] = 0.5 * (c - 1.0)
    return {"z": z, "x": x}


@dataclass(frozen=True)
class BathRates:
    """Floquet-frame rates: gamma_plus pumps |g~> -> |e~>, gamma_minus decays, gamma_zero dephases.

    ``by_bath`` optionally keeps the per-bath split {bath: (g_minus, g_zero, g_plus)}.
    """

    gamma_plus: float
    gamma_minus: float
    gamma_zero: float
    by_bath: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("gamma_plus", "gamma_minus", "gamma_zero"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValidationError(f"{name} must be a finite nonnegative rate, got {v}")

    @property
    def Gamma1(self) -> float:
        return self.gamma_plus + self.gamma_minus

    @property
    def Gamma2(self) -> float:
        return 0.5 * self.Gamma1 + 2.0 * self.gamma_zero

    @property
    def kappa(self) -> float:
        """(gamma_minus - gamma_plus) / (2 Gamma1); 0 when there is no relaxation."""
        if self.Gamma1 == 0:
            return 0.0
        return (self.gamma_minus - self.gamma_plus) / (2.0 * self.Gamma1)

    def rate(self, q: int) -> float:
        return {-1: self.gamma_minus, 0: self.gamma_zero, 1: self.gamma_plus}[q]


class BathSpectrum(Protocol):
    coupling: float

    def G(self, omega): ...


@dataclass(frozen=True)
class OhmicBath:
    """Thermal bosonic bath with Ohmic exponential-cutoff spectral density.

    G(w > 0) = J(w) (N(w) + 1), G(-w) = J(w) N(w), J(w) = amplitude * w exp(-w/cutoff),
    so that G(-w) = exp(-beta w) G(w).  G(0) is the w -> 0 limit amplitude/beta.
    """

    coupling: float
    beta: float
    cutoff: float = 10.0
    amplitude: float = 1.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValidationError(f"bath beta must be positive, got {self.beta}")
        if not self.cutoff > 0:
            raise ValidationError(f"cutoff must be positive, got {self.cutoff}")

    def J(self, omega):
        w = np.abs(np.asarray(omega, dtype=float))
        return self.amplitude * w * np.exp(-w / self.cutoff)

    def G(self, omega):
        w = np.asarray(omega, dtype=float)
        a = np.abs(w)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            occ = 1.0 / np.expm1(self.beta * a)
        occ = np.where(a > 0, occ, 0.0)
        out = np.where(w > 0, self.J(a) * (occ + 1.0), self.J(a) * occ)
        zero_limit = self.amplitude / self.beta if np.isfinite(self.beta) else 0.0
        out = np.where(a == 0, zero_limit, out)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class SpectralModel:
    z: BathSpectrum
    x: BathSpectrum

    def bath(self, j: str) -> BathSpectrum:
        return {"z": self.z, "x": self.x}[j]


def _checked_G(bath: BathSpectrum, omega: float) -> float:
    g = float(bath.G(omega))
    if not np.isfinite(g) or g < 0:
        raise InvalidSpectrumError(f"spectrum G({omega}) = {g} is not a valid rate")
    return g


def rates_from_spectra(m: ModelParams, s: SpectralModel,
                       include_zero_frequency_dephasing: bool = False) -> BathRates:
    """Rates gamma_q = sum_j lambda_j^2 sum_p s_qp^(j)^2 G_j(-q Omega_r - p Omega).

    The zero-frequency channel of the dephasing bath, lambda_z^2 cos^2(2 theta) G_z(0),
    is dropped unless ``include_zero_frequency_dephasing`` is set.

    Raises:
        InvalidSpectrumError: if a spectrum is negative or non-finite where sampled.
    """
    coeffs = fourier_coefficients(m)
    by_bath = {}
    for j in BATHS:
        bath = s.bath(j)
        lam2 = bath.coupling**2
        per_q = []
        for q in QUASI:
            total = 0.0
            for p in QUASI:
                if j == "z" and q == 0 and p == 0 and not include_zero_frequency_dephasing:
                    continue
                c = coeffs[j][q + 1, p + 1]
                if c == 0.0:
                    continue
                total += c**2 * _checked_G(bath, -q * m.rabi - p * m.Omega)
            per_q.append(lam2 * total)
        by_bath[j] = tuple(per_q)
    g_minus, g_zero, g_plus = (sum(by_bath[j][i] for j in BATHS) for i in range(3))
    return BathRates(g_plus, g_minus, g_zero, by_bath=by_bath)


def explicit_rates(m: ModelParams, s: SpectralModel):
    """(Gamma1, Gamma2, kappa) written directly in atom/laser parameters.

    Uses g_{j,+-}(w) = G_j(w) +- G_j(-w) and Omega_+- = Omega +- Omega_r.
    """
    Wr, W, eps, w0 = m.rabi, m.Omega, m.epsilon, m.omega0
    Wp, Wm = W + Wr, W - Wr
    lz2, lx2 = s.z.coupling**2, s.x.coupling**2

    def gp(b, w):
        return _checked_G(b, w) + _checked_G(b, -w)

    def gm(b, w):
        return _checked_G(b, w) - _checked_G(b, -w)

    a_p = lx2 * (w0 - Wm) ** 2
    a_m = lx2 * (w0 - Wp) ** 2
    Gamma1 = (lz2 * (4 * eps) ** 2 * gp(s.z, Wr) + a_p * gp(s.x, Wp)
              + a_m * gp(s.x, Wm)) / (4 * Wr**2)
    Gamma2 = (a_p * gp(s.x, Wp) + a_m * gp(s.x, Wm)
              + (4 * eps) ** 2 * (lx2 * gp(s.x, W) + lz2 * gp(s.z, Wr))) / (8 * Wr**2)
    kappa = (a_p * gm(s.x, Wp) - a_m * gm(s.x, Wm)
             + lz2 * (4 * eps) ** 2 * gm(s.z, Wr)) / (8 * Wr**2 * Gamma1)
    return Gamma1, Gamma2, kappa


def thermal_vector(h_vec, beta: float) -> np.ndarray:
    """Bloch vector of exp(-beta h.sigma)/Z, i.e. -tanh(beta |h|) h^."""
    h_vec = np.asarray(h_vec, dtype=float)
    h = np.linalg.norm(h_vec)
    if h == 0:
        return np.zeros(3)
    return -np.tanh(beta * h) * h_vec / h


@dataclass(frozen=True)
class InitialState:
    """Initial lab-frame state together with its Floquet-frame coordinates."""

    state: BlochState

    @classmethod
    def from_vector(cls, n_vec) -> "InitialState":
        return cls(BlochState(n_vec))

    @classmethod
    def maximally_mixed(cls) -> "InitialState":
        return cls.from_vector([0.0, 0.0, 0.0])

    @classmethod
    def ground(cls) -> "InitialState":
        return cls.from_vector([0.0, 0.0, -1.0])

    @classmethod
    def excited(cls) -> "InitialState":
        return cls.from_vector([0.0, 0.0, 1.0])

    @classmethod
    def thermal(cls, m: ModelParams, beta: float, basis: str = "bare") -> "InitialState":
        """Gibbs state of omega0/2 sigma_z (``bare``) or of H_S(0) (``full``)."""
        if basis == "bare":
            h = np.array([0.0, 0.0, 0.5 * m.omega0])
        elif basis == "full":
            h = m.h_vec(0.0)
        else:
            raise ValidationError(f"thermal basis must be 'bare' or 'full', got {basis!r}")
        return cls.from_vector(thermal_vector(h, beta))

    def floquet_vector(self, m: ModelParams) -> np.ndarray:
        """(X0, Y0, Z0): the Bloch vector expressed on the Floquet Pauli operators."""
        nx, ny, nz = self.state.n_vec
        c, s = m.cos2t, m.sin2t
        return np.array([nx * c - nz * s, ny, nz * c + nx * s])

    def bar_delta0(self, m: ModelParams) -> float:
        return float(self.floquet_vector(m)[2])

    def rho0_bar_eg(self, m: ModelParams) -> complex:
        X0, Y0, _ = self.floquet_vector(m)
        return complex(0.5 * X0, -0.5 * Y0)


def floquet_components(m: ModelParams, r: BathRates, init: InitialState, t):
    """(X_t, Y_t, Z_t), the state in the frame co-rotating with P_t."""
    t = np.asarray(t, dtype=float)
    k = r.kappa
    coh = np.exp(-(r.Gamma2 + 1j * m.rabi) * t) * init.rho0_bar_eg(m)
    X = 2.0 * coh.real
    Y = -2.0 * coh.imag
    Z = np.exp(-r.Gamma1 * t) * (init.bar_delta0(m) + 2.0 * k) - 2.0 * k
    return X, Y, Z


def floquet_derivatives(m: ModelParams, r: BathRates, X, Y, Z):
    dX = -r.Gamma2 * X - m.rabi * Y
    dY = -r.Gamma2 * Y + m.rabi * X
    dZ = -r.Gamma1 * (Z + 2.0 * r.kappa)
    return dX, dY, dZ


def _to_lab(m: ModelParams, t, X, Y, Z):
    c, s = m.cos2t, m.sin2t
    mx, my, mz = X * c + Z * s, Y, Z * c - X * s
    ph = m.Omega * np.asarray(t, dtype=float)
    cp, sp = np.cos(ph), np.sin(ph)
    return np.stack([mx * cp - my * sp, mx * sp + my * cp, mz], axis=-1)


def closed_form_state(m: ModelParams, r: BathRates, init: InitialState, t) -> BlochState:
    """Lab-frame state at time(s) t >= 0."""
    return BlochState(_to_lab(m, t, *floquet_components(m, r, init, t)))


def closed_form_derivatives(m: ModelParams, r: BathRates, init: InitialState, t):
    """Return ((dX, dY, dZ), dn_vec, dh_vec) at time(s) t, all analytic."""
    X, Y, Z = floquet_components(m, r, init, t)
    dX, dY, dZ = floquet_derivatives(m, r, X, Y, Z)
    n = _to_lab(m, t, X, Y, Z)
    # d/dt R_z(Omega t) v = R_z(Omega t) dv/dt + Omega z^ x (R_z v)
    dn = _to_lab(m, t, dX, dY, dZ)
    dn[..., 0] -= m.Omega * n[..., 1]
    dn[..., 1] += m.Omega * n[..., 0]
    return (dX, dY, dZ), dn, m.dh_vec(t)


def trajectory_point(m: ModelParams, r: BathRates, init: InitialState, t) -> TrajectoryPoint:
    """State, field and exact derivatives at time(s) t, ready for the first-law rates."""
    t = np.asarray(t, dtype=float)
    _, dn, dh = closed_form_derivatives(m, r, init, t)
    return TrajectoryPoint(t, closed_form_state(m, r, init, t), m.field(t), dn, dh)


def internal_energy_model(m: ModelParams, X, Z):
    c, s, e, w = m.cos2t, m.sin2t, m.epsilon, 0.5 * m.omega0
    return Z * (w * c + e * s) + X * (e * c - w * s)


@dataclass(frozen=True)
class SteadyState:
    kappa: float
    n: float
    Delta: float
    rho_eg_amplitude: float
    purity: float
    entropy: float
    energy: float
    cos_phase: float
    Omega: float

    def rho_eg(self, t):
        """Steady-state coherence, rotating with the drive."""
        return self.rho_eg_amplitude * np.exp(-1j * self.Omega * np.asarray(t, dtype=float))


def steady_state(m: ModelParams, r: BathRates) -> SteadyState:
    """Closed-form fixed point X = Y = 0, Z = -2 kappa and derived quantities.

    ``cos_phase`` is cos(varphi - Omega t), constant in the steady state; it is
    reported as 0 when the steady coherence vanishes.

    Raises:
        NoRelaxationError: if Gamma1 = 0.
    """
    if r.Gamma1 <= 0:
        raise NoRelaxationError("Gamma1 = 0: no relaxation, steady state undefined")
    k = r.kappa
    ak = abs(k)
    if 2 * ak < 1:
        S = np.log(2.0 / np.sqrt(1.0 - 4 * k**2)) + ak * np.log((1 - 2 * ak) / (1 + 2 * ak))
    else:
        S = 0.0
    return SteadyState(
        kappa=k,
        n=2 * ak,
        Delta=-2 * k * m.cos2t,
        rho_eg_amplitude=-k * m.sin2t,
        purity=2 * k**2 + 0.5,
        entropy=float(S),
        energy=-k * (2 * m.epsilon * m.sin2t + m.omega0 * m.cos2t),
        cos_phase=float(-np.sign(k * m.sin2t)),
        Omega=m.Omega,
    )


def interaction_picture_state(m: ModelParams, r: BathRates, init: InitialState, t) -> np.ndarray:
    """rho~_t as a 2x2 matrix on the Floquet basis (|e~>, |g~>)."""
    t = np.asarray(t, dtype=float)
    rho0 = init.state.matrix()
    V = m.floquet_basis()
    rho0_bar = V.conj().T @ rho0 @ V
    ee0 = rho0_bar[0, 0].real
    if r.Gamma1 > 0:
        p_inf = r.gamma_plus / r.Gamma1
        ee = p_inf + (ee0 - p_inf) * np.exp(-r.Gamma1 * t)
    else:
        ee = np.full_like(t, ee0)
    eg = np.exp(-r.Gamma2 * t) * rho0_bar[0, 1]
    out = np.zeros(t.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = ee
    out[..., 1, 1] = 1.0 - ee
    out[..., 0, 1] = eg
    out[..., 1, 0] = np.conj(eg)
    return out


def lab_from_interaction(m: ModelParams, rho_tilde_bar, t) -> np.ndarray:
    """Map rho~ on the Floquet basis back to the lab-frame density matrix."""
    V = m.floquet_basis()
    U = m.propagator(t)
    rho_tilde = V @ rho_tilde_bar @ V.conj().T
    return U @ rho_tilde @ np.swapaxes(U.conj(), -1, -2)


__all__ = [
    "BathRates", "BathSpectrum", "InitialState", "ModelParams", "OhmicBath",
    "SpectralModel", "SteadyState", "closed_form_derivatives", "closed_form_state",
    "explicit_rates", "floquet_components", "floquet_derivatives", "fourier_coefficients",
    "interaction_picture_state", "internal_energy_model", "lab_from_interaction",
    "rates_from_spectra", "steady_state", "thermal_vector", "trajectory_point",
]
