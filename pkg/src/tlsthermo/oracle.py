"""Brute-force cross-checks: fixed-step Lindblad integration, differencing, quadrature.

Nothing here reuses the closed-form solution.  The integrator builds the
Lindblad generator from the Floquet-basis jump operators, steps the
interaction-picture density matrix with classical RK4, and returns to the
lab frame with a numerically exponentiated propagator.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np
import scipy.integrate
import scipy.linalg

from .bloch import vector_from_matrix
from .errors import StabilityError, ValidationError
from .model import BathRates, InitialState, ModelParams

STABILITY_LIMIT = 0.1


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float = 1e-3
    t_end: float = 30.0
    method: str = "rk4"
    sample_every: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValidationError(f"dt must be positive, got {self.dt}")
        if not self.t_end >= 0:
            raise ValidationError(f"t_end must be nonnegative, got {self.t_end}")
        if self.method != "rk4":
            raise ValidationError(f"unknown integration method {self.method!r}")
        if self.sample_every < 1:
            raise ValidationError("sample_every must be >= 1")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))

    def check_stability(self, m: ModelParams, r: BathRates) -> None:
        scale = max(r.Gamma1, r.Gamma2, m.rabi, abs(m.Omega))
        if self.dt * scale >= STABILITY_LIMIT:
            raise StabilityError(
                f"stability guard: dt * max(Gamma1, Gamma2, Omega_r, Omega) = "
                f"{self.dt * scale:.3g} >= {STABILITY_LIMIT}")


def lindblad_generator(jump_ops, rates) -> np.ndarray:
    """4x4 matrix L with vec(D(rho)) = L vec(rho) for row-major vec."""
    eye = np.eye(2)
    L = np.zeros((4, 4), dtype=complex)
    for A, g in zip(jump_ops, rates):
        AdA = A.conj().T @ A
        L += g * (np.kron(A, A.conj()) - 0.5 * np.kron(AdA, eye) - 0.5 * np.kron(eye, AdA.T))
    return L


def rk4_step(f, t, y, dt):
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass
class LindbladTrajectory:
    times: np.ndarray
    rho_tilde: np.ndarray  # interaction picture, atom basis
    rho: np.ndarray  # lab frame

    @property
    def bloch(self) -> np.ndarray:
        return vector_from_matrix(self.rho)


def propagator_expm(m: ModelParams, t: float) -> np.ndarray:
    """U_S(t) = exp(-i Omega t sigma_z/2) exp(-i Hbar t) by matrix exponentials."""
    Hz = 0.5 * np.array([[1, 0], [0, -1]], dtype=complex)
    return scipy.linalg.expm(-1j * m.Omega * t * Hz) @ scipy.linalg.expm(-1j * t * m.average_hamiltonian())


def integrate_lindblad(m: ModelParams, r: BathRates, init: InitialState,
                       cfg: IntegratorConfig) -> LindbladTrajectory:
    """Integrate d rho~/dt = sum_q gamma_q D[sigma~_q] rho~ with fixed-step RK4.

    Raises:
        StabilityError: if the step violates the stability guard.
    """
    cfg.check_stability(m, r)
    ops = m.floquet_operators()
    L = lindblad_generator([ops[q] for q in (-1, 0, 1)], [r.rate(q) for q in (-1, 0, 1)])

    def rhs(_t, y):
        return L @ y

    y = init.state.matrix().reshape(4)
    times, states = [0.0], [y]
    for k in range(1, cfg.n_steps + 1):
        y = rk4_step(rhs, (k - 1) * cfg.dt, y, cfg.dt)
        if k % cfg.sample_every == 0 or k == cfg.n_steps:
            times.append(k * cfg.dt)
            states.append(y)
    times = np.array(times)
    rho_tilde = np.array(states).reshape(-1, 2, 2)
    U = np.array([propagator_expm(m, t) for t in times])
    rho = U @ rho_tilde @ np.swapaxes(U.conj(), -1, -2)
    return LindbladTrajectory(times, rho_tilde, rho)


def finite_difference(f, t, h: float = 1e-5):
    """Central difference (f(t+h) - f(t-h)) / 2h."""
    if not h > 0:
        raise ValidationError("step h must be positive")
    return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)


def integrate_rate(samples, dt: float | None = None, times=None) -> float:
    """Composite Simpson on a uniform grid; trapezoid when the sample count is even.

    Raises:
        ValidationError: for fewer than 3 samples or a non-uniform grid.
    """
    y = np.asarray(samples, dtype=float)
    if y.ndim != 1 or y.size < 3:
        raise ValidationError("need a 1-D series of at least 3 samples")
    if times is not None:
        times = np.asarray(times, dtype=float)
        steps = np.diff(times)
        if times.shape != y.shape or not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            raise ValidationError("samples must lie on a uniform time grid")
        dt = float(steps[0])
    if dt is None or not dt > 0:
        raise ValidationError("a positive grid step is required")
    if y.size % 2 == 1:
        return float(scipy.integrate.simpson(y, dx=dt))
    return float(np.trapezoid(y, dx=dt))


@dataclass(frozen=True)
class NetVariation:
    """Integrals of every rate over the run, from t = 0 to the horizon."""

    dU: float
    dW_wc: float
    dQ_wc: float
    dw: float
    dq: float
    dW_eb: float
    dQ_eb: float
    dS: float
    dSi_wc: float
    dSi_hb: float
    dSi_eb: float

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def net_variation(times, rates, entropy=None) -> NetVariation:
    """Integrate a ``FirstLawRates`` series sampled on ``times``.

    A pure initial state makes dS/dt diverge at t = 0; the entropy change is
    then taken from the endpoints of ``entropy`` when given.
    """
    values = {}
    for f in fields(NetVariation):
        series = np.asarray(getattr(rates, f.name), dtype=float)
        if np.all(np.isfinite(series)):
            values[f.name] = integrate_rate(series, times=times)
        elif f.name == "dS" and entropy is not None:
            values[f.name] = float(entropy[-1] - entropy[0])
        else:
            values[f.name] = float("nan")
    return NetVariation(**values)
