"""Named invariant checks run by ``tlsthermo verify``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import firstlaw as fl
from .bloch import BlochState, DrivingField, binary_entropy, internal_energy
from .model import (OhmicBath, SpectralModel, closed_form_state, explicit_rates,
                    floquet_components, interaction_picture_state, lab_from_interaction,
                    rates_from_spectra, steady_state, trajectory_point)
from .oracle import IntegratorConfig, finite_difference, integrate_lindblad
from .scenario import Scenario


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    error: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<32s} max error {self.error:.3e} (tol {self.tolerance:.0e})"


def random_ball(rng, size, radius=1.0):
    v = rng.normal(size=(size, 3))
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    return v * radius * rng.uniform(0, 1, size=(size, 1)) ** (1 / 3)


def random_trajectory_points(rng, size) -> fl.TrajectoryPoint:
    """Random interior states with nonzero fields and arbitrary derivatives."""
    n = random_ball(rng, size, 0.999)
    h = rng.normal(size=(size, 3))
    return fl.TrajectoryPoint.from_vectors(n, h, rng.normal(size=(size, 3)),
                                           rng.normal(size=(size, 3)))


def covariance_beta(n_vec, h_vec) -> float:
    """-cov(H, ln rho) / (Delta H)^2 with explicit 2x2 matrices (d = 2)."""
    rho = BlochState(n_vec).matrix()
    H = DrivingField(h_vec).matrix()
    w, V = np.linalg.eigh(rho)
    log_rho = V @ np.diag(np.log(w)) @ V.conj().T
    d = 2
    cov = np.trace(H @ log_rho).real / d - np.trace(H).real * np.trace(log_rho).real / d**2
    var = np.trace(H @ H).real / d - np.trace(H).real ** 2 / d**2
    return -cov / var


def _closure_error(R: fl.FirstLawRates) -> float:
    return float(max(np.max(np.abs(R.dU - (R.dW_wc + R.dQ_wc))),
                     np.max(np.abs(R.dU - (R.dw + R.dq))),
                     np.max(np.abs(R.dU - (R.dW_eb + R.dQ_eb)))))


def run_checks(scenario: Scenario, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    m, r, init = scenario.model, scenario.bath_rates(), scenario.initial_state()
    times = scenario.grid.times
    p = trajectory_point(m, r, init, times)
    R = fl.first_law_rates(p)
    rand = random_trajectory_points(rng, 10_000)
    Rr = fl.first_law_rates(rand)
    out = []

    def add(name, err, tol):
        err = float(err)
        out.append(CheckResult(name, bool(np.isfinite(err) and err < tol), err, tol))

    add("first_law_closure", max(_closure_error(R), _closure_error(Rr)), 1e-10)
    add("eb_dissipative_work_identity",
        np.max(np.abs(Rr.dQ_wc - Rr.dQ_eb - fl.dissipative_work_rate(rand))), 1e-10)
    add("eb_irreversible_closed_form",
        np.max(np.abs(Rr.dSi_eb - fl.irreversible_entropy_eb_closed_form(rand))), 1e-10)
    sample = random_trajectory_points(rng, 200)
    beta = fl.inverse_temperature(sample)
    add("beta_covariance_form",
        max(abs(beta[i] - covariance_beta(sample.n_vec[i], sample.h_vec[i])) for i in range(200)),
        1e-9)

    X, Y, Z = floquet_components(m, r, init, times)
    add("model_hb_work_zero", np.max(np.abs(R.dw)), 1e-10)
    add("model_conventional_work", np.max(np.abs(R.dW_wc - m.epsilon * m.Omega * Y)), 1e-10)
    rho0 = init.rho0_bar_eg(m)
    add("floquet_norm_identity",
        np.max(np.abs(p.state.norm**2 - (np.exp(-2 * r.Gamma2 * times) * 4 * abs(rho0) ** 2 + Z**2))),
        1e-12)

    ts = rng.uniform(0, scenario.grid.t_end, size=50)
    rho_lab = lab_from_interaction(m, interaction_picture_state(m, r, init, ts), ts)
    add("frame_consistency",
        np.max(np.abs(rho_lab - closed_form_state(m, r, init, ts).matrix())), 1e-10)

    cfg = IntegratorConfig(dt=scenario.integrator_dt, t_end=scenario.grid.t_end,
                           sample_every=max(1, int(round(0.1 / scenario.integrator_dt))))
    traj = integrate_lindblad(m, r, init, cfg)
    add("oracle_equivalence",
        np.max(np.abs(traj.bloch - closed_form_state(m, r, init, traj.times).n_vec)), 1e-6)

    if r.Gamma1 > 0:
        ss = steady_state(m, r)
        late = closed_form_state(m, r, init, 200.0)
        U_late = internal_energy(late, m.field(200.0))
        add("steady_state_identities",
            max(abs(late.norm - ss.n), abs(late.z - ss.Delta),
                abs(0.5 * (1 + late.norm**2) - ss.purity),
                abs(binary_entropy(late.norm) - ss.entropy), abs(U_late - ss.energy)),
            1e-8)

    # Interior times only: the entropy of a pure initial state is not differentiable at t = 0.
    tf = np.linspace(0.5, scenario.grid.t_end - 0.5, 25)
    h = 1e-5
    pf = trajectory_point(m, r, init, tf)
    Rf = fl.first_law_rates(pf)

    def S_at(t):
        return binary_entropy(closed_form_state(m, r, init, t).norm)

    def U_at(t):
        return internal_energy(closed_form_state(m, r, init, t), m.field(t))

    add("finite_difference_consistency",
        max(np.max(np.abs(Rf.dS - finite_difference(S_at, tf, h))),
            np.max(np.abs(Rf.dU - finite_difference(U_at, tf, h)))), 1e-6)

    spec = scenario.spectral or SpectralModel(OhmicBath(0.3, 2.0, 5.0), OhmicBath(0.2, 1.0, 5.0))
    rs = rates_from_spectra(m, spec)
    G1, G2, k = explicit_rates(m, spec)
    add("spectral_route_consistency",
        max(abs(rs.Gamma1 - G1), abs(rs.Gamma2 - G2), abs(rs.kappa - k)), 1e-10)
    return out
