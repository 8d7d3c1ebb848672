import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from tlsthermo import firstlaw as fl
from tlsthermo.bloch import BlochState, DrivingField, binary_entropy
from tlsthermo.errors import DegenerateFieldError
from tlsthermo.model import InitialState, floquet_components, trajectory_point


def point(n, h, dn, dh):
    return fl.TrajectoryPoint.from_vectors(n, h, dn, dh)


def random_points(rng, size):
    n = rng.normal(size=(size, 3))
    n *= rng.uniform(0.01, 0.99, (size, 1)) / np.linalg.norm(n, axis=1, keepdims=True)
    return point(n, rng.normal(size=(size, 3)), rng.normal(size=(size, 3)), rng.normal(size=(size, 3)))


def rotation_generator(axis):
    axis = np.asarray(axis, float)
    return lambda v: np.cross(axis, v)


# --- conventional -----------------------------------------------------------

def test_static_hamiltonian_gives_no_conventional_work():
    p = point([0.2, 0.3, -0.1], [0.1, 0.0, 0.5], [0.4, -0.2, 0.3], [0, 0, 0])
    assert fl.conventional_rates(p)[0] == 0.0


def test_maximally_mixed_gives_no_conventional_work():
    p = point([0, 0, 0], [0.1, 0.0, 0.5], [0.4, -0.2, 0.3], [1.0, 2.0, 3.0])
    assert fl.conventional_rates(p)[0] == 0.0


def test_conventional_work_in_driven_model(resonant_model, default_rates, thermal_init):
    t = np.linspace(0, 20, 401)
    p = trajectory_point(resonant_model, default_rates, thermal_init, t)
    _, Y, _ = floquet_components(resonant_model, default_rates, thermal_init, t)
    np.testing.assert_allclose(fl.conventional_rates(p)[0], 0.3 * 1.0 * Y, atol=1e-12)


# --- Hamiltonian-based ------------------------------------------------------

def test_constant_field_norm_gives_no_hb_work():
    h = np.array([0.3, 0.1, 0.5])
    dh = rotation_generator([0.2, -0.7, 1.0])(h)
    p = point([0.1, -0.2, 0.4], h, [0.3, 0.3, -0.1], dh)
    assert fl.hamiltonian_based_rates(p)[0] == pytest.approx(0.0, abs=1e-15)


def test_static_everything_gives_no_hb_heat():
    p = point([0.1, -0.2, 0.4], [0.3, 0.1, 0.5], [0, 0, 0], [0, 0, 0])
    assert fl.hamiltonian_based_rates(p)[1] == 0.0


def test_hb_closure_against_direct_energy_rate(rng):
    p = random_points(rng, 200)
    dw, dq = fl.hamiltonian_based_rates(p)
    oracle = np.einsum("ij,ij->i", p.dh_vec, p.n_vec) + np.einsum("ij,ij->i", p.h_vec, p.dn_vec)
    np.testing.assert_allclose(dw + dq, oracle, atol=1e-12)


def test_hb_requires_nonzero_field():
    with pytest.raises(DegenerateFieldError):
        fl.hamiltonian_based_rates(point([0.1, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0]))


# --- entropy-based ----------------------------------------------------------

def test_norm_preserving_motion_has_no_eb_heat():
    n = np.array([0.3, -0.2, 0.5])
    p = point(n, [0.2, 0.4, 0.5], rotation_generator([1.0, 0.5, -0.3])(n), [0.1, -0.3, 0.2])
    dW, dQ = fl.entropy_based_rates(p)
    assert dQ == pytest.approx(0.0, abs=1e-15)
    assert dW == pytest.approx(fl.energy_rate(p), abs=1e-15)


def test_constant_angle_makes_hb_and_eb_agree():
    # common rotation plus a radial change of n keeps alpha fixed
    gen = rotation_generator([0.3, -0.1, 0.9])
    n, h = np.array([0.2, 0.1, 0.4]), np.array([0.5, -0.2, 0.3])
    p = point(n, h, gen(n) - 0.7 * n, gen(h))
    assert fl.entropy_based_rates(p)[1] == pytest.approx(fl.hamiltonian_based_rates(p)[1], abs=1e-14)


def test_eb_identity_with_dissipative_work(rng):
    p = random_points(rng, 500)
    gap = fl.conventional_rates(p)[1] - fl.entropy_based_rates(p)[1] - fl.dissipative_work_rate(p)
    assert np.max(np.abs(gap)) < 1e-10


def test_eb_limit_at_vanishing_norm():
    dn = np.array([0.1, -0.2, 0.3])
    h = np.array([0.4, 0.1, 0.5])
    p = point([0, 0, 0], h, dn, [0.3, 0.1, 0])
    # the state leaves the origin radially: all of h.dn is heat
    assert fl.entropy_based_rates(p)[1] == pytest.approx(h @ dn)
    static = point([0, 0, 0], h, [0, 0, 0], [0.3, 0.1, 0])
    assert fl.entropy_based_rates(static)[1] == 0.0


# --- entropy rate and temperature ------------------------------------------

def test_entropy_rate_zero_cases():
    assert fl.entropy_rate(point([0.3, 0, 0], [0, 0, 1], [0, 0.2, 0], [0, 0, 0])) == 0.0
    assert fl.entropy_rate(point([0, 0, 0], [0, 0, 1], [0.5, 0, 0], [0, 0, 0])) == 0.0
    small = point([1e-6, 0, 0], [0, 0, 1], [0.5, 0, 0], [0, 0, 0])
    assert fl.entropy_rate(small) == pytest.approx(-0.5 * 1e-6, rel=1e-6)


def test_entropy_rate_diverges_for_pure_state():
    p = point([0, 0, 1], [0, 0, 1], [0, 0, -0.1], [0, 0, 0])
    assert np.isinf(fl.entropy_rate(p)) and fl.entropy_rate(p) > 0
    unitary = point([0, 0, 1], [0, 0, 1], [0.1, 0, 0], [0, 0, 0])
    assert fl.entropy_rate(unitary) == 0.0
    assert not np.isfinite(fl.inverse_temperature(p))


def test_entropy_rate_matches_finite_difference_on_model(resonant_model, default_rates, thermal_init):
    from tlsthermo.model import closed_form_state
    h = 1e-5
    t = np.linspace(0.0, 25.0, 51)
    S = lambda tt: binary_entropy(closed_form_state(resonant_model, default_rates, thermal_init, tt).norm)
    fd = (S(t + h) - S(t - h)) / (2 * h)
    analytic = fl.entropy_rate(trajectory_point(resonant_model, default_rates, thermal_init, t))
    assert np.max(np.abs(fd - analytic)) < 1e-6


def test_inverse_temperature_trivial():
    assert fl.inverse_temperature(point([0, 0, 0], [0, 0, 1], [0, 0, 0], [0, 0, 0])) == 0.0
    assert fl.inverse_temperature(point([0.5, 0, 0], [0, 0, 1], [0, 0, 0], [0, 0, 0])) == 0.0


def covariance_oracle(n, h):
    rho, H = BlochState(n).matrix(), DrivingField(h).matrix()
    log_rho = scipy.linalg.logm(rho)
    d = 2
    cov = np.trace(H @ log_rho) / d - np.trace(H) * np.trace(log_rho) / d**2
    var = np.trace(H @ H) / d - np.trace(H) ** 2 / d**2
    return float(np.real(-cov / var))


def test_inverse_temperature_matches_covariance_form(rng):
    p = random_points(rng, 300)
    beta = fl.inverse_temperature(p)
    oracle = np.array([covariance_oracle(p.n_vec[i], p.h_vec[i]) for i in range(300)])
    np.testing.assert_allclose(beta, oracle, atol=1e-9)


def test_thermal_state_has_bath_temperature():
    h = np.array([0.3, -0.2, 0.6])
    beta = 1.7
    n = -np.tanh(beta * np.linalg.norm(h)) * h / np.linalg.norm(h)
    assert fl.inverse_temperature(point(n, h, [0, 0, 0], [0, 0, 0])) == pytest.approx(beta)


# --- irreversible entropy ---------------------------------------------------

def test_irreversible_entropy_equals_entropy_rate_at_infinite_temperature():
    # cos(alpha) = 0 makes beta vanish
    p = point([0.4, 0, 0], [0, 0, 1], [-0.1, 0.05, 0.2], [0.3, 0, 0])
    assert fl.inverse_temperature(p) == 0.0
    for dSi in fl.irreversible_entropy_rates(p):
        assert dSi == pytest.approx(fl.entropy_rate(p), abs=1e-15)


def test_constant_angle_makes_hb_and_eb_irreversible_entropy_agree():
    gen = rotation_generator([0.3, -0.1, 0.9])
    n, h = np.array([0.2, 0.1, 0.4]), np.array([0.5, -0.2, 0.3])
    _, hb, eb = fl.irreversible_entropy_rates(point(n, h, gen(n) - 0.7 * n, gen(h)))
    assert hb == pytest.approx(eb, abs=1e-14)


def test_eb_closed_form_and_sign(rng):
    p = random_points(rng, 2000)
    _, _, eb = fl.irreversible_entropy_rates(p)
    np.testing.assert_allclose(eb, fl.irreversible_entropy_eb_closed_form(p), atol=1e-10)
    assert np.all(eb[fl.norm_rate(p) <= 0] >= 0)


def test_maximally_mixed_model_point_all_heats_coincide(resonant_model, default_rates):
    init = InitialState.maximally_mixed()
    p = trajectory_point(resonant_model, default_rates, init, np.linspace(0, 30, 301))
    R = fl.first_law_rates(p)
    assert np.max(np.abs(R.dQ_wc - R.dq)) < 1e-10
    assert np.max(np.abs(R.dq - R.dQ_eb)) < 1e-10


# --- closure and finite differences ----------------------------------------

def test_first_law_closure_random(rng):
    R = fl.first_law_rates(random_points(rng, 10_000))
    for dW, dQ in (R.conventional, R.hamiltonian_based, R.entropy_based):
        assert np.max(np.abs(R.dU - dW - dQ)) < 1e-10


@settings(max_examples=200)
@given(st.lists(st.floats(-1, 1), min_size=12, max_size=12),
       st.floats(0.01, 0.98))
def test_first_law_closure_property(xs, r):
    n = np.array(xs[:3])
    if np.linalg.norm(n) < 1e-3 or np.linalg.norm(xs[3:6]) < 1e-3:
        return
    n = r * n / np.linalg.norm(n)
    R = fl.first_law_rates(point(n, xs[3:6], xs[6:9], xs[9:12]))
    for dW, dQ in (R.conventional, R.hamiltonian_based, R.entropy_based):
        assert R.dU == pytest.approx(dW + dQ, abs=1e-10)


def synthetic(t):
    """Smooth trajectory with varying norm, direction and field strength."""
    r = 0.5 + 0.3 * np.sin(0.7 * t)
    n = r[:, None] * np.stack([np.cos(t) * np.sin(1 + 0.2 * t), np.sin(t) * np.sin(1 + 0.2 * t),
                               np.cos(1 + 0.2 * t)], axis=-1)
    h = np.stack([0.3 * np.cos(2 * t), 0.4 + 0.1 * t, 1.0 + 0.2 * np.sin(t)], axis=-1)
    return n, h


def test_rates_match_finite_differences_of_state_functions():
    t = np.linspace(0.3, 4.0, 9)

    def deriv(step):
        n1, h1 = synthetic(t + step)
        n0, h0 = synthetic(t - step)
        return (n1 - n0) / (2 * step), (h1 - h0) / (2 * step)

    def state_fns(tt):
        n, h = synthetic(tt)
        hn = np.linalg.norm(h, axis=1)
        nn = np.linalg.norm(n, axis=1)
        return {"U": np.einsum("ij,ij->i", n, h), "S": binary_entropy(nn), "n": nn, "h": hn,
                "n_along": np.einsum("ij,ij->i", n, h) / hn}

    def errors(step):
        dn, dh = deriv(1e-7)
        n, h = synthetic(t)
        R = fl.first_law_rates(point(n, h, dn, dh))
        up, dn_ = state_fns(t + step), state_fns(t - step)
        fd = {k: (up[k] - dn_[k]) / (2 * step) for k in up}
        mid = state_fns(t)
        cos_a = mid["n_along"] / mid["n"]
        return np.array([
            np.max(np.abs(R.dU - fd["U"])),
            np.max(np.abs(R.dS - fd["S"])),
            np.max(np.abs(R.dw - fd["h"] * mid["n_along"])),
            np.max(np.abs(R.dq - mid["h"] * fd["n_along"])),
            np.max(np.abs(R.dQ_eb - fd["n"] * mid["h"] * cos_a)),
        ])

    e1, e2 = errors(1e-2), errors(5e-3)
    assert np.all(e1 < 1e-3)
    # central differences converge quadratically
    assert np.all(e1 / e2 > 3.5)
