"""Energies: per-mode, regulated grid sums, continuum integrals, references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tll.errors import ConsistencyError, DomainError, IncompleteGridError
from tll.model import ModeGrid
from tll.observables import (
    EnergyReport,
    adiabatic_energy,
    adiabatic_time_bound,
    e_gs_perturbative,
    energy_report,
    mean_energy,
    mode_energy,
    perturbative_residual_linear,
    perturbative_residual_long_time,
    perturbative_residual_short_time,
    perturbative_validity,
    residual_energy_continuum,
    residual_inverse_poly,
    sg_mean_energy,
    solve_grid,
    sudden_energy,
)
from tll.protocols import (
    constant_coupling,
    inverse_poly_ramp,
    linear_ramp,
    poly5_ramp,
)

PI = math.pi

# Reference values generated by tests/oracles/gen_reference_dynamics.py
# (scipy quadrature over the closed-form final state, cross-checked
# against an independent mpmath quadrature).  v_f=1, r0=1, L=100.
RESIDUAL_ALPHA0_5_TQ2_0 = 0.20229920301852086
RESIDUAL_ALPHA0_05_TQ0_5 = 0.012963948856314408
RESIDUAL_ALPHA1_0_TQ1_0 = 1.3368811469525097

# Same script: (B^2/2)*(L/2pi)*(1/v_f)*Gamma(0, 2*pi*r0/L) at L=100, r0=1.
INVERSE_POLY_DQ_B0_01 = 0.001792033703488409921622
INVERSE_POLY_DQ_B0_1 = 0.1792033703488409921622


# -------------------------------------------------------------- mode energy


def test_mode_energy_free_equilibrium():
    assert mode_energy(1.0, 0.0, 0.0, 2.0) == pytest.approx(1.0, rel=1e-15)
    # thermal occupation scales the whole bracket
    assert mode_energy(1.0, 0.0, 0.0, 2.0, n_b=1.5) == pytest.approx(
        4.0, rel=1e-15
    )


def test_mode_energy_adiabatic_point():
    # gamma* = sqrt(w0p/Omega) at rest gives exactly Omega/2 per mode
    w0p, omega = 1.0, 3.0
    g = math.sqrt(w0p / omega)
    e = mode_energy(g, 0.0, None, w0p, omega_sq=omega * omega)
    assert e == pytest.approx(omega / 2.0, rel=1e-14)


def test_mode_energy_reconstructs_either_input():
    # on-shell pair: gamma_ddot = -Omega^2 g + w0p^2/g^3
    g, gd, w0p, om_sq = 1.3, -0.4, 1.1, 2.7
    gdd = -om_sq * g + w0p * w0p / g ** 3
    e_both = mode_energy(g, gd, gdd, w0p, omega_sq=om_sq)
    e_from_gdd = mode_energy(g, gd, gdd, w0p)
    e_from_om = mode_energy(g, gd, None, w0p, omega_sq=om_sq)
    assert e_both == pytest.approx(e_from_gdd, rel=1e-14)
    assert e_both == pytest.approx(e_from_om, rel=1e-14)


def test_mode_energy_consistency_check():
    with pytest.raises(ConsistencyError):
        mode_energy(1.0, 0.0, 5.0, 1.0, omega_sq=1.0)
    with pytest.raises(DomainError):
        mode_energy(1.0, 0.0, None, 1.0)
    with pytest.raises(DomainError):
        mode_energy(-1.0, 0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        mode_energy(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        mode_energy(1.0, 0.0, 0.0, 1.0, n_b=-0.1)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=0.2, max_value=5.0),
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.3, max_value=3.0),
    st.floats(min_value=0.2, max_value=4.0),
)
def test_mode_energy_never_below_adiabatic(g, gd, omega, w0p):
    # AM-GM: the energy bracket is bounded below by the instantaneous Omega
    e = mode_energy(g, gd, None, w0p, omega_sq=omega * omega)
    assert 2.0 * e >= omega * (1.0 - 1e-12)


def test_energy_conserved_under_static_frequency():
    # after the jump the Hamiltonian is static: e_p(t) is constant in time
    from tll.ermakov import solve_ermakov_numeric
    from tll.protocols import ScheduleFrequency

    sched = constant_coupling(1.5)
    freq = ScheduleFrequency(sched)
    times = np.linspace(0.0, 5.0, 41)
    traj = solve_ermakov_numeric(freq, 1.0, 1.0, 0.0, times, tol=1e-11)
    es = [
        mode_energy(traj.gamma[i], traj.gamma_dot[i], traj.gamma_ddot[i],
                    traj.omega0p)
        for i in range(times.size)
    ]
    assert np.ptp(es) < 1e-8 * es[0]


# -------------------------------------------------------------- closed forms


def test_adiabatic_energy_value():
    # sqrt(1*(1+3)) = 2
    assert adiabatic_energy(1.5, 1.0, 1.0, 100.0) == pytest.approx(
        100.0 / PI, rel=1e-15
    )
    with pytest.raises(DomainError):
        adiabatic_energy(-0.5, 1.0, 1.0, 100.0)


def test_sudden_energy_value():
    assert sudden_energy(0.5, 1.0, 1.0, 100.0) == pytest.approx(
        (100.0 / (2.0 * PI)) * 1.5, rel=1e-15
    )
    with pytest.raises(DomainError):
        sudden_energy(-0.5, 1.0, 1.0, 100.0)


def test_sudden_quench_gap():
    # sudden-minus-adiabatic at alpha=0.5: (L/2pi)(1.5 - sqrt(2))
    dq0 = sudden_energy(0.5, 1.0, 1.0, 100.0) - adiabatic_energy(
        0.5, 1.0, 1.0, 100.0
    )
    assert dq0 == pytest.approx(1.3653335598566478, rel=1e-14)


def test_adiabatic_time_bound():
    assert adiabatic_time_bound(0.5, 100.0, 1.0) == pytest.approx(
        50.0 / PI, rel=1e-15
    )
    assert adiabatic_time_bound(0.5, 100.0, 1.0, n=2) == pytest.approx(
        25.0 / PI, rel=1e-15
    )
    with pytest.raises(DomainError):
        adiabatic_time_bound(0.5, 100.0, 1.0, n=0)


# ----------------------------------------------------- perturbative formulas


def test_perturbative_reference_points():
    e_gs = e_gs_perturbative(0.5, 1.0, 1.0, 100.0)
    assert e_gs == pytest.approx((100.0 / (2.0 * PI)) * 0.125, rel=1e-15)
    tau0 = 0.5  # r0/(2 v_f)
    # at tau_q = tau0 the suppression factor is exactly ln 2
    assert perturbative_residual_linear(0.5, tau0, 1.0, 1.0, 100.0) == (
        pytest.approx(e_gs * math.log(2.0), rel=1e-14)
    )
    # sudden plateau
    fast = perturbative_residual_linear(0.5, 1e-8, 1.0, 1.0, 100.0)
    assert fast == pytest.approx(e_gs, rel=1e-8)


def test_perturbative_companions_consistent():
    args = (0.1, 1.0, 1.0, 100.0)
    e_gs = e_gs_perturbative(0.1, *args[1:])
    short = perturbative_residual_short_time(0.1, 0.05, *args[1:])
    full = perturbative_residual_linear(0.1, 0.05, *args[1:])
    assert short == pytest.approx(full, rel=2e-3)
    assert short < e_gs
    long_t = perturbative_residual_long_time(0.1, 50.0, *args[1:])
    full_t = perturbative_residual_linear(0.1, 50.0, *args[1:])
    assert long_t == pytest.approx(full_t, rel=1e-3)
    with pytest.raises(DomainError):
        perturbative_residual_linear(0.1, 0.0, 1.0, 1.0, 100.0)


def test_perturbative_validity_threshold():
    assert perturbative_validity(0.2, 1.0)
    assert perturbative_validity(-0.2, 1.0)
    assert not perturbative_validity(0.3, 1.0)
    assert perturbative_validity(0.4, 2.0)


# ------------------------------------------------------- continuum integrals


def test_residual_continuum_reference_values():
    val = residual_energy_continuum(linear_ramp(0.5, 2.0), 1.0, 100.0)
    assert val == pytest.approx(RESIDUAL_ALPHA0_5_TQ2_0, rel=1e-10)
    val = residual_energy_continuum(linear_ramp(0.05, 0.5), 1.0, 100.0)
    assert val == pytest.approx(RESIDUAL_ALPHA0_05_TQ0_5, rel=1e-10)
    val = residual_energy_continuum(linear_ramp(1.0, 1.0), 1.0, 100.0)
    assert val == pytest.approx(RESIDUAL_ALPHA1_0_TQ1_0, rel=1e-10)


def test_residual_continuum_numeric_route_agrees():
    sched = linear_ramp(0.5, 2.0)
    airy = residual_energy_continuum(sched, 1.0, 100.0, method="airy")
    num = residual_energy_continuum(
        sched, 1.0, 100.0, method="numeric", tol=1e-10, p_max=20.0
    )
    airy_trunc = residual_energy_continuum(
        sched, 1.0, 100.0, method="airy", p_max=20.0
    )
    assert num == pytest.approx(airy_trunc, rel=1e-7)
    # p_max=20 truncation itself is below 1e-8 relative here
    assert airy_trunc == pytest.approx(airy, rel=1e-7)


def test_residual_continuum_validation():
    with pytest.raises(DomainError):
        residual_energy_continuum(poly5_ramp(0.5, 1.0), 1.0, 100.0)
    with pytest.raises(DomainError):
        residual_energy_continuum(
            linear_ramp(0.5, 1.0), 1.0, 100.0, method="simpson"
        )
    with pytest.raises(DomainError):
        residual_energy_continuum(
            linear_ramp(0.5, 1.0), 1.0, 100.0, p_max=1.0, ir_cutoff=2.0
        )


def test_residual_inverse_poly_reference_values():
    assert residual_inverse_poly(0.01, 1.0, 1.0, 100.0) == pytest.approx(
        INVERSE_POLY_DQ_B0_01, rel=1e-13
    )
    assert residual_inverse_poly(0.1, 1.0, 1.0, 100.0) == pytest.approx(
        INVERSE_POLY_DQ_B0_1, rel=1e-13
    )
    with pytest.raises(DomainError):
        residual_inverse_poly(0.1, -1.0, 1.0, 100.0)


def test_residual_inverse_poly_matches_numeric_integral():
    # dual route: closed form vs per-mode integration of the actual ramp
    b = inverse_poly_ramp(-0.05, 2.0).b_coeff
    sched = inverse_poly_ramp(b, 2.0)
    closed = residual_inverse_poly(b, 1.0, 1.0, 100.0)
    num = residual_energy_continuum(
        sched, 1.0, 100.0, method="numeric", tol=1e-11,
        ir_cutoff=2.0 * PI / 100.0,
    )
    assert num == pytest.approx(closed, rel=1e-6)


# ------------------------------------------------------------ grid pipeline


def test_grid_residual_tracks_continuum():
    grid = ModeGrid.auto(100.0, 1.0)
    sched = linear_ramp(0.5, 2.0)
    rep = energy_report(sched, grid, method="airy")
    assert rep.residual == pytest.approx(RESIDUAL_ALPHA0_5_TQ2_0, rel=5e-3)
    assert rep.protocol == "linear"
    assert rep.n_max == 440


def test_grid_per_mode_residual_nonnegative():
    grid = ModeGrid.auto(100.0, 1.0)
    sched = linear_ramp(0.5, 2.0)
    trajs = solve_grid(sched, grid, method="airy")
    omega_slope = math.sqrt(1.0 * (1.0 + 2.0 * 0.5))
    for tr in trajs:
        g, gd, gdd = tr.final()
        e_p = mode_energy(g, gd, gdd, tr.omega0p)
        assert e_p - 0.5 * omega_slope * tr.p >= -1e-13 * e_p


def test_grid_thermodynamic_limit_of_references():
    # closed forms are the L -> inf limit of the regulated sums; at L=100,
    # r0=1 the discrete sums sit within 0.5 percent
    grid = ModeGrid.auto(100.0, 1.0)
    rep = energy_report(constant_coupling(0.5), grid)
    assert rep.sudden_energy == pytest.approx(
        sudden_energy(0.5, 1.0, 1.0, 100.0), rel=5e-3
    )
    assert rep.adiabatic_energy == pytest.approx(
        adiabatic_energy(0.5, 1.0, 1.0, 100.0), rel=5e-3
    )


def test_constant_schedule_report_is_sudden():
    # the snapshot state IS the sudden state: grid mean == grid sudden
    grid = ModeGrid.auto(100.0, 1.0)
    rep = energy_report(constant_coupling(0.5), grid)
    assert rep.mean_energy == pytest.approx(rep.sudden_energy, rel=1e-13)
    assert rep.tau_q == math.inf


def test_fast_ramp_approaches_sudden():
    grid = ModeGrid.auto(100.0, 1.0)
    rep = energy_report(linear_ramp(0.5, 1e-4), grid, method="airy")
    assert rep.mean_energy == pytest.approx(rep.sudden_energy, rel=1e-3)
    assert rep.mean_energy < rep.sudden_energy  # any finite ramp does less work


def test_slow_ramp_approaches_adiabatic():
    grid = ModeGrid.auto(100.0, 1.0)
    rep = energy_report(linear_ramp(0.5, 50.0), grid, method="airy")
    assert rep.residual < 0.02 * (rep.sudden_energy - rep.adiabatic_energy)
    assert rep.residual > 0.0


def test_grid_doubling_stability():
    sched = linear_ramp(0.5, 2.0)
    r1 = energy_report(sched, ModeGrid(100.0, 440, 1.0), method="airy")
    r2 = energy_report(sched, ModeGrid(100.0, 600, 1.0), method="airy")
    assert r2.mean_energy == pytest.approx(r1.mean_energy, rel=1e-10)
    assert r2.residual == pytest.approx(r1.residual, rel=1e-8)


def test_thermal_occupation_raises_energies():
    grid = ModeGrid.auto(100.0, 1.0)
    sched = linear_ramp(0.5, 2.0)
    cold = energy_report(sched, grid, method="airy")
    warm = energy_report(sched, grid, beta0=0.5, method="airy")
    assert warm.mean_energy > cold.mean_energy
    assert warm.adiabatic_energy > cold.adiabatic_energy
    # residual stays nonnegative at finite temperature too
    assert warm.residual > 0.0


def test_solve_grid_validation():
    grid = ModeGrid(100.0, 440, 1.0)
    with pytest.raises(DomainError):
        solve_grid(poly5_ramp(0.5, 1.0), grid, method="airy")
    with pytest.raises(DomainError):
        solve_grid(linear_ramp(0.5, 1.0), grid, method="rk2")


def test_solve_grid_threaded_matches_serial():
    grid = ModeGrid.auto(10.0, 1.0)
    sched = linear_ramp(0.5, 2.0)
    serial = solve_grid(sched, grid, method="airy")
    threaded = solve_grid(sched, grid, method="airy", threads=4)
    for a, b in zip(serial, threaded):
        assert a.p == b.p
        assert np.array_equal(a.gamma, b.gamma)
        assert np.array_equal(a.gamma_dot, b.gamma_dot)


def test_mean_energy_incomplete_grid():
    grid = ModeGrid(100.0, 440, 1.0)
    sched = linear_ramp(0.5, 2.0)
    trajs = solve_grid(sched, grid, method="airy")
    with pytest.raises(IncompleteGridError):
        mean_energy(trajs[:-1], grid, 2.0)


def test_inverse_poly_grid_uses_initial_kick():
    # grid pipeline must seed gamma_dot(0) = B; the per-mode residual is
    # then exactly B^2/(4 w0p)
    grid = ModeGrid(100.0, 440, 1.0)
    sched = inverse_poly_ramp(0.05, 2.0)
    trajs = solve_grid(sched, grid, tol=1e-11)
    omega_slope = math.sqrt(sched.v_f * (sched.v_f + 2.0 * sched.final_value()))
    for tr in trajs[:20]:
        g, gd, gdd = tr.final()
        e_p = mode_energy(g, gd, gdd, tr.omega0p)
        expect = 0.05 ** 2 / (4.0 * tr.omega0p)
        assert e_p - 0.5 * omega_slope * tr.p == pytest.approx(
            expect, rel=1e-6
        )


# ------------------------------------------------------------ report object


def test_energy_report_serialization():
    grid = ModeGrid(100.0, 440, 1.0)
    rep = energy_report(linear_ramp(0.5, 2.0), grid, method="airy")
    header = EnergyReport.csv_header()
    row = rep.to_csv_row()
    assert header.split(",")[0] == "protocol"
    assert len(row.split(",")) == len(header.split(","))
    assert row.split(",")[0] == "linear"
    d = rep.to_json_dict()
    assert d["mean_energy"] == rep.mean_energy
    assert d["n_max"] == 440
    # round-trippable at reduced precision too
    short = rep.to_csv_row(precision=6)
    assert float(short.split(",")[8]) == pytest.approx(rep.mean_energy, rel=1e-5)


# --------------------------------------------------- gap-assisted mean energy


def test_sg_mean_energy_stationary_endpoint():
    # at a stationary point the bracket vanishes: exactly the adiabatic value
    val = sg_mean_energy(2.0, 0.0, 0.0, 2.0, 0.0, 1.0, 1.0, 100.0)
    assert val == pytest.approx(
        (100.0 / (2.0 * PI)) / 4.0, rel=1e-14
    )
    with pytest.raises(DomainError):
        sg_mean_energy(-1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 100.0)


def test_sg_mean_energy_curvature_sign():
    # negative curvature (decompression brake) raises the energy above
    # adiabatic; positive curvature lowers it
    base = sg_mean_energy(1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 100.0)
    braked = sg_mean_energy(1.0, 0.0, -1.0, 1.0, 0.0, 1.0, 1.0, 100.0)
    pushed = sg_mean_energy(1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 100.0)
    assert braked > base > pushed
