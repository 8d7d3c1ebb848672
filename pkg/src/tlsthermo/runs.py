"""Run a scenario: time series, rate sweeps, steady state, and their file outputs."""
from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bloch import binary_entropy, internal_energy
from .firstlaw import FirstLawRates, TrajectoryPoint, first_law_rates
from .model import steady_state, trajectory_point
from .oracle import NetVariation, net_variation
from .scenario import Scenario

COLUMNS = ("t", "n_x", "n_y", "n_z", "n", "Delta", "abs_rho_eg", "S", "U", "dU",
           "dW_wc", "dQ_wc", "dw", "dq", "dW_eb", "dQ_eb", "dS", "beta",
           "dSi_wc", "dSi_hb", "dSi_eb")

SWEEP_COLUMNS = ("DeltaS", "DeltaU", "Deltaq", "DeltaQ_wc", "DeltaQ_eb",
                 "DeltaW_wc", "DeltaW_eb", "DeltaSi_wc", "DeltaSi_hb", "DeltaSi_eb")
_SWEEP_FIELDS = ("dS", "dU", "dq", "dQ_wc", "dQ_eb", "dW_wc", "dW_eb",
                 "dSi_wc", "dSi_hb", "dSi_eb")


def format_value(x) -> str:
    """12 significant digits; non-finite values become empty cells."""
    x = float(x)
    if not np.isfinite(x):
        return ""
    return f"{x:.12g}"


@dataclass
class TrajectoryRecord:
    times: np.ndarray
    point: TrajectoryPoint
    rates: FirstLawRates
    energy: np.ndarray
    entropy: np.ndarray

    @property
    def net(self) -> NetVariation:
        return net_variation(self.times, self.rates, self.entropy)

    def columns(self) -> dict:
        s = self.point.state
        r = self.rates
        return {
            "t": self.times, "n_x": s.x, "n_y": s.y, "n_z": s.z, "n": s.norm,
            "Delta": s.population_inversion, "abs_rho_eg": np.abs(s.coherence),
            "S": self.entropy, "U": self.energy, "dU": r.dU,
            "dW_wc": r.dW_wc, "dQ_wc": r.dQ_wc, "dw": r.dw, "dq": r.dq,
            "dW_eb": r.dW_eb, "dQ_eb": r.dQ_eb, "dS": r.dS, "beta": r.beta,
            "dSi_wc": r.dSi_wc, "dSi_hb": r.dSi_hb, "dSi_eb": r.dSi_eb,
        }

    def to_csv(self) -> str:
        cols = self.columns()
        out = io.StringIO()
        out.write(",".join(COLUMNS) + "\n")
        for i in range(len(self.times)):
            out.write(",".join(format_value(cols[c][i]) for c in COLUMNS) + "\n")
        return out.getvalue()


def simulate(scenario: Scenario) -> TrajectoryRecord:
    m, r = scenario.model, scenario.bath_rates()
    times = scenario.grid.times
    p = trajectory_point(m, r, scenario.initial_state(), times)
    return TrajectoryRecord(times, p, first_law_rates(p),
                            internal_energy(p.state, p.field), binary_entropy(p.state.norm))


def _net_for(args) -> NetVariation:
    scenario, param, value = args
    return simulate(scenario.with_rate(param, value)).net


def sweep(scenario: Scenario, param: str, values, jobs: int = 1) -> list[NetVariation]:
    """Net variations over [0, t_end] for each value of ``param``, in input order."""
    tasks = [(scenario, param, float(v)) for v in values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_net_for, tasks))
    return [_net_for(t) for t in tasks]


def sweep_csv(param: str, values, nets) -> str:
    out = io.StringIO()
    out.write(",".join((param,) + SWEEP_COLUMNS) + "\n")
    for v, net in zip(values, nets):
        d = net.as_dict()
        out.write(",".join([format_value(v)] + [format_value(d[f]) for f in _SWEEP_FIELDS]) + "\n")
    return out.getvalue()


def steady_record(scenario: Scenario) -> dict:
    ss = steady_state(scenario.model, scenario.bath_rates())
    return {"kappa": ss.kappa, "n_ss": ss.n, "Delta_ss": ss.Delta,
            "rho_eg_ss_amplitude": ss.rho_eg_amplitude, "P_ss": ss.purity,
            "S_ss": ss.entropy, "U_ss": ss.energy, "cos_phase_ss": ss.cos_phase}


_PLOTS = (
    ("Bloch vector", ("n_x", "n_y", "n_z", "n")),
    ("Heat rates", ("dU", "dQ_wc", "dq", "dQ_eb")),
    ("Work rates", ("dW_wc", "dw", "dW_eb")),
    ("Entropy and irreversible entropy rates", ("dS", "dSi_wc", "dSi_hb", "dSi_eb")),
    ("Inverse temperature and population inversion", ("beta", "Delta")),
)


def gnuplot_script(csv_name: str) -> str:
    """A gnuplot script plotting the CSV columns by header name, one PNG per panel."""
    lines = ["set datafile separator ','", "set key autotitle columnhead",
             "set xlabel 't [1/omega0]'", "set terminal pngcairo size 900,600"]
    stem = Path(csv_name).stem
    for k, (title, cols) in enumerate(_PLOTS):
        lines.append(f"set output '{stem}_{k}.png'")
        lines.append(f"set title '{title}'")
        series = ", ".join(f"'{csv_name}' using (column('t')):(column('{c}')) "
                           f"with lines title '{c}'" for c in cols)
        lines.append(f"plot {series}")
    lines.append("unset output")
    return "\n".join(lines) + "\n"


def plot_columns() -> set:
    return {c for _, cols in _PLOTS for c in cols} | {"t"}
