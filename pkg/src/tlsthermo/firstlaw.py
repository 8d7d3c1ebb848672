"""Heat and work rates under three splittings of dU, plus entropy bookkeeping.

The three splittings of dU = d(n.h)/dt are

* conventional (weak coupling): work from the Hamiltonian change, heat from
  the state change;
* Hamiltonian-based (HB): work from the change of the eigenenergies +-h,
  heat from the change of the populations in the energy eigenbasis;
* entropy-based (EB): heat from the change of the state eigenvalues
  (the Bloch norm n), everything else is work.

Positive heat means energy flowing into the system.  Derivatives are
inputs; nothing here differentiates numerically.  Everything broadcasts
over leading axes so whole trajectories can be evaluated at once.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .bloch import BlochState, DrivingField, dot, norm
from .errors import DegenerateFieldError

# Below this Bloch norm the direction n/|n| is replaced by dn/|dn|.
SMALL_NORM = 1e-12


@dataclass(frozen=True)
class TrajectoryPoint:
    """State, field and their time derivatives at time ``t``."""

    t: np.ndarray
    state: BlochState
    field: DrivingField
    dn_vec: np.ndarray
    dh_vec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dn_vec", np.asarray(self.dn_vec, dtype=float))
        object.__setattr__(self, "dh_vec", np.asarray(self.dh_vec, dtype=float))

    @classmethod
    def from_vectors(cls, n_vec, h_vec, dn_vec, dh_vec, t=0.0) -> "TrajectoryPoint":
        return cls(np.asarray(t, dtype=float), BlochState(n_vec), DrivingField(h_vec),
                   dn_vec, dh_vec)

    @property
    def n_vec(self):
        return self.state.n_vec

    @property
    def h_vec(self):
        return self.field.h_vec


@dataclass(frozen=True)
class FirstLawRates:
    dU: np.ndarray
    dW_wc: np.ndarray
    dQ_wc: np.ndarray
    dw: np.ndarray
    dq: np.ndarray
    dW_eb: np.ndarray
    dQ_eb: np.ndarray
    dS: np.ndarray
    beta: np.ndarray
    dSi_wc: np.ndarray
    dSi_hb: np.ndarray
    dSi_eb: np.ndarray

    @property
    def conventional(self):
        return self.dW_wc, self.dQ_wc

    @property
    def hamiltonian_based(self):
        return self.dw, self.dq

    @property
    def entropy_based(self):
        return self.dW_eb, self.dQ_eb

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _unit(v, length):
    with np.errstate(divide="ignore", invalid="ignore"):
        u = v / np.asarray(length)[..., None]
    return np.where(np.asarray(length)[..., None] > 0, u, 0.0)


def _field_unit(p: TrajectoryPoint):
    h = p.field.norm
    if np.any(h == 0.0):
        raise DegenerateFieldError("Hamiltonian norm vanishes; HB quantities undefined")
    return h, p.h_vec / h[..., None]


def _direction(p: TrajectoryPoint):
    """Unit vector n^ and norm rate dn/dt, with the n -> 0 limit.

    At vanishing norm the state leaves the origin along dn_vec, so
    n^ = dn_vec/|dn_vec| and dn/dt = |dn_vec|.
    """
    n = p.state.norm
    dn_len = norm(p.dn_vec)
    small = (n < SMALL_NORM)[..., None]
    n_hat = np.where(small, _unit(p.dn_vec, dn_len), _unit(p.n_vec, n))
    n_dot = np.where(n < SMALL_NORM, dn_len, dot(p.dn_vec, n_hat))
    return n_hat, n_dot


def norm_rate(p: TrajectoryPoint):
    """dn/dt, the rate of change of the Bloch-vector norm."""
    return _direction(p)[1]


def energy_rate(p: TrajectoryPoint):
    return dot(p.dh_vec, p.n_vec) + dot(p.h_vec, p.dn_vec)


def conventional_rates(p: TrajectoryPoint):
    """(dW_wc, dQ_wc) = (dh.n, h.dn)."""
    return dot(p.dh_vec, p.n_vec), dot(p.h_vec, p.dn_vec)


def hamiltonian_based_rates(p: TrajectoryPoint):
    """(dw, dq): work from the eigenenergy change dh/dt, heat from the populations.

    dw = (dh/dt) n cos(alpha) and dq = h d/dt(n cos alpha), the latter
    expanded as h (dn.h^ + n.dh^/dt).

    Raises:
        DegenerateFieldError: if h = 0 anywhere.
    """
    h, h_hat = _field_unit(p)
    h_dot = dot(p.dh_vec, h_hat)
    n_along = dot(p.n_vec, h_hat)
    dh_hat = (p.dh_vec - h_dot[..., None] * h_hat) / h[..., None]
    dw = h_dot * n_along
    dq = h * (dot(p.dn_vec, h_hat) + dot(p.n_vec, dh_hat))
    return dw, dq


def entropy_based_rates(p: TrajectoryPoint):
    """(dW, dQ) with heat dQ = (dn/dt) h cos(alpha) tied to the state eigenvalues."""
    n_hat, n_dot = _direction(p)
    dQ = n_dot * dot(n_hat, p.h_vec)
    return energy_rate(p) - dQ, dQ


def dissipative_work_rate(p: TrajectoryPoint):
    """h n (h^ . dn^/dt), the part of conventional heat that EB counts as work."""
    n = p.state.norm
    n_hat, n_dot = _direction(p)
    big = n >= SMALL_NORM
    safe_n = np.where(big, n, 1.0)
    dn_hat = (p.dn_vec - n_dot[..., None] * n_hat) / safe_n[..., None]
    # At the origin the state moves radially, so dn^/dt contributes nothing.
    return np.where(big, n * dot(p.h_vec, dn_hat), 0.0)


def _log_ratio(n):
    n = np.clip(n, 0.0, 1.0)
    with np.errstate(divide="ignore"):
        return np.log((1.0 - n) / (1.0 + n))


def entropy_rate(p: TrajectoryPoint):
    """dS/dt = (dn/dt / 2) ln((1 - n)/(1 + n)).

    Diverges for a pure state that changes its norm; the result is then
    +-inf.  A pure state with dn/dt = 0 has dS/dt = 0.
    """
    n_dot = norm_rate(p)
    L = _log_ratio(p.state.norm)
    with np.errstate(invalid="ignore"):
        return np.where(n_dot == 0.0, 0.0, 0.5 * n_dot * L)


def inverse_temperature(p: TrajectoryPoint):
    """Nonequilibrium inverse temperature beta = cos(alpha)/(2h) ln((1-n)/(1+n)).

    Pure states give a non-finite value (nan when cos(alpha) = 0 there).

    Raises:
        DegenerateFieldError: if h = 0 anywhere.
    """
    h, h_hat = _field_unit(p)
    n = p.state.norm
    n_hat, _ = _direction(p)
    cos_a = np.where(n > 0, dot(n_hat, h_hat), 0.0)
    L = _log_ratio(n)
    with np.errstate(invalid="ignore"):
        beta = cos_a / (2.0 * h) * L
    return np.where(n >= 1.0, np.where(cos_a == 0.0, np.nan, beta), beta)


def irreversible_entropy_rates(p: TrajectoryPoint):
    """(dSi_wc, dSi_hb, dSi_eb) = dS - beta * dQ for each heat definition."""
    return _irreversible(entropy_rate(p), inverse_temperature(p),
                         conventional_rates(p)[1], hamiltonian_based_rates(p)[1],
                         entropy_based_rates(p)[1])


def _irreversible(dS, beta, *heats):
    with np.errstate(invalid="ignore"):
        return tuple(dS - beta * q for q in heats)


def irreversible_entropy_eb_closed_form(p: TrajectoryPoint):
    """(dn/dt / 2) sin^2(alpha) ln((1 - n)/(1 + n))."""
    n_hat, n_dot = _direction(p)
    h_hat = _field_unit(p)[1]
    cos_a = dot(n_hat, h_hat)
    with np.errstate(invalid="ignore"):
        return np.where(n_dot == 0.0, 0.0,
                        0.5 * n_dot * (1.0 - cos_a**2) * _log_ratio(p.state.norm))


def first_law_rates(p: TrajectoryPoint) -> FirstLawRates:
    dW_wc, dQ_wc = conventional_rates(p)
    dw, dq = hamiltonian_based_rates(p)
    dW_eb, dQ_eb = entropy_based_rates(p)
    dS = entropy_rate(p)
    beta = inverse_temperature(p)
    dSi = _irreversible(dS, beta, dQ_wc, dq, dQ_eb)
    return FirstLawRates(energy_rate(p), dW_wc, dQ_wc, dw, dq, dW_eb, dQ_eb,
                         dS, beta, *dSi)
