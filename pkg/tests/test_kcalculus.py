import math

import numpy as np
import pytest

from causet.kcalculus import (
    contracted_length, dilation_ratio, measure_moving_ruler, proper_time_at_reception,
    simulate_flash, sr_sweep, sweep_to_csv,
)

BETAS = np.linspace(0, 0.99, 50)


def gamma(b):
    return 1 / math.sqrt(1 - b * b)


def test_no_relative_motion():
    ex = simulate_flash(1.0, 0.0)
    assert ex.k == 1.0
    assert dilation_ratio(ex) == 1.0
    assert ex.returned.t == 1.0


def test_beta_0_6_events():
    ex = simulate_flash(1.0, 0.6, 1.0)
    assert ex.k == pytest.approx(2.0, abs=1e-15)
    assert ex.returned.t == pytest.approx(4.0, abs=1e-15)
    # reception solves x = c(t - T), x = v t simultaneously: t = cT/(c-v), x = vcT/(c-v)
    assert ex.reception.t == pytest.approx(2.5, abs=1e-15)
    assert ex.reception.x == pytest.approx(1.5, abs=1e-15)
    assert dilation_ratio(ex) == pytest.approx(1.25, abs=1e-15)


@pytest.mark.parametrize("v, c, T", [(0.3, 1.0, 2.0), (1.2, 3.0, 0.5), (2.9, 3.0, 1.0)])
def test_reception_event_general(v, c, T):
    ex = simulate_flash(T, v, c)
    assert ex.reception.t == pytest.approx(c * T / (c - v), rel=1e-14)
    assert ex.reception.x == pytest.approx(v * c * T / (c - v), rel=1e-14)


@pytest.mark.parametrize("v, expected", [(0.0, 1.0), (0.6, 1.25), (0.8, 5 / 3)])
def test_dilation_ratio_closed_forms(v, expected):
    assert dilation_ratio(simulate_flash(1.0, v)) == pytest.approx(expected, abs=1e-14)


def test_dilation_sweep_and_k_factor():
    for b in BETAS:
        ex = simulate_flash(1.0, b)
        assert abs(dilation_ratio(ex) - gamma(b)) < 1e-9
        assert abs(ex.k**2 - (1 + b) / (1 - b)) < 1e-9
        assert dilation_ratio(ex) >= 1.0
        assert (dilation_ratio(ex) == 1.0) == (b == 0)


def test_k_rule_matches_proper_time():
    for b in BETAS:
        ex = simulate_flash(1.7, b)
        assert ex.t2 == pytest.approx(proper_time_at_reception(ex), rel=1e-12)


def test_with_explicit_light_speed():
    ex = simulate_flash(1.0, 1.5e8, 3e8)
    assert dilation_ratio(ex) == pytest.approx(gamma(0.5), rel=1e-12)


@pytest.mark.parametrize("v, c", [(1.0, 1.0), (2.0, 1.0), (-0.1, 1.0), (0.5, 0.0)])
def test_invalid_speed(v, c):
    with pytest.raises(ValueError):
        simulate_flash(1.0, v, c)


def test_invalid_emission_time():
    with pytest.raises(ValueError):
        simulate_flash(0.0, 0.5)


def test_contracted_length_examples():
    assert contracted_length(2.0, 0.0).L == 2.0
    assert contracted_length(1.0, 0.6).L == pytest.approx(0.8, abs=1e-12)
    Ls = [contracted_length(1.0, v).L for v in np.arange(0, 1.0, 0.1)]
    assert all(a > b for a, b in zip(Ls, Ls[1:]))
    assert all(0 < m <= 1.0 for m in Ls)


def test_flash_ruler_measurement_agrees_with_contraction():
    for b in BETAS:
        for L0 in (0.5, 1.0, 3.0):
            sim = measure_moving_ruler(L0, b).L
            assert abs(sim - contracted_length(L0, b).L) < 1e-9 * L0
            # does not depend on when the rear end fires its flash
            assert measure_moving_ruler(L0, b, tau=4.2).L == pytest.approx(sim, abs=1e-12)


def test_length_times_dilation_is_rest_length():
    for b in BETAS:
        L = contracted_length(1.3, b).L
        assert abs(L * dilation_ratio(simulate_flash(1.0, b)) - 1.3) < 1e-9


def test_sweep_csv():
    rows = sr_sweep([0.0, 0.6, 0.8])
    assert rows[0]["t1_over_t2"] == 1.0
    assert rows[1]["t1_over_t2"] == pytest.approx(1.25, abs=1e-12)
    assert rows[2]["L_over_L0"] == pytest.approx(0.6, abs=1e-12)
    text = sweep_to_csv(rows)
    assert text.splitlines()[0] == "beta,k,t1_over_t2,gamma_closed_form,L_over_L0"
    assert len(text.splitlines()) == 4
