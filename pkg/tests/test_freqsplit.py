import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anisoflow import (
    CutoffSpec,
    DissipationSpec,
    chi0,
    default_mu,
    forward_transform,
    hgamma_seminorm,
    split,
)
from anisoflow.spectral import hermitian_defect

from conftest import random_field, single_mode_spectrum


class TestChi0:
    def test_plateau(self):
        assert chi0(0.0) == 1.0
        assert chi0(0.5) == 1.0
        assert chi0(1.0) == 1.0

    def test_support(self):
        assert chi0(2.0) == 0.0
        assert chi0(3.0) == 0.0
        assert chi0(1e6) == 0.0

    def test_midpoint_symmetry(self):
        # bridge value phi(0.5)/(2*phi(0.5)) at the middle of the ramp
        assert chi0(1.5) == 0.5

    def test_array_input(self):
        s = np.array([0.0, 1.0, 1.5, 2.0, 5.0])
        np.testing.assert_allclose(chi0(s), [1.0, 1.0, 0.5, 0.0, 0.0])

    def test_monotone_nonincreasing(self):
        s = np.linspace(0.0, 3.0, 4001)
        vals = chi0(s)
        assert np.all(np.diff(vals) <= 1e-15)
        assert np.all((vals >= 0.0) & (vals <= 1.0))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            chi0(-0.1)

    @given(st.floats(min_value=0.0, max_value=10.0), st.floats(min_value=0.0, max_value=10.0))
    @settings(max_examples=200, deadline=None)
    def test_hypothesis_monotone(self, a, b):
        lo, hi = min(a, b), max(a, b)
        assert chi0(lo) >= chi0(hi)


class TestCutoffSpec:
    def test_rejects_bad_mu(self):
        for mu in (0.0, -1.0, np.inf):
            with pytest.raises(ValueError):
                CutoffSpec(mu)

    def test_default_mu_value(self):
        assert default_mu(2.0, 2.0) == pytest.approx(8.0)
        assert default_mu(1.5, 2.0) == pytest.approx(4.0 * (2.0 / 3.0 + 0.5 + 1.0))


class TestSplit:
    def test_reconstruction(self, grid32):
        d = DissipationSpec(grid32, 1.5, 2.0)
        c = CutoffSpec(default_mu(1.5, 2.0))
        v = forward_transform(random_field(grid32, 0))
        ul, uh = split(v, 3.0, c, d)
        scale = np.max(np.abs(v.coeffs))
        # complementary by construction; exact to one rounding
        assert np.max(np.abs(ul.coeffs + uh.coeffs - v.coeffs)) <= 2 ** -52 * scale

    def test_large_time_leaves_only_zero_mode(self, grid16):
        d = DissipationSpec(grid16, 2.0, 2.0)
        mu = 8.0
        # smallest nonzero symbol value on the unit-spacing lattice is 1
        t = 2.0 * mu  # (1+t)/mu >= 2 on every nonzero mode
        v = forward_transform(random_field(grid16, 1))
        ul, uh = split(v, t, CutoffSpec(mu), d)
        off_zero = ul.coeffs.copy()
        off_zero[0, 0] = 0.0
        assert np.all(off_zero == 0.0)
        assert ul.coeffs[0, 0] == v.coeffs[0, 0]
        assert uh.coeffs[0, 0] == 0.0

    def test_huge_mu_keeps_everything_low(self, grid16):
        d = DissipationSpec(grid16, 2.0, 2.0)
        mu = 2.0 * float(np.max(d.symbol))
        v = forward_transform(random_field(grid16, 2))
        ul, uh = split(v, 0.0, CutoffSpec(mu), d)
        assert np.all(uh.coeffs == 0.0)
        np.testing.assert_array_equal(ul.coeffs, v.coeffs)

    def test_parts_hermitian(self, grid32):
        d = DissipationSpec(grid32, 1.2, 1.8)
        c = CutoffSpec(default_mu(1.2, 1.8))
        v = forward_transform(random_field(grid32, 3))
        ul, uh = split(v, 1.0, c, d)
        scale = np.max(np.abs(v.coeffs))
        assert hermitian_defect(ul.coeffs) <= 1e-12 * scale
        assert hermitian_defect(uh.coeffs) <= 1e-12 * scale

    def test_pythagoras_with_transition_slack(self, grid32):
        d = DissipationSpec(grid32, 1.5, 2.0)
        c = CutoffSpec(default_mu(1.5, 2.0))
        for seed in range(5):
            v = forward_transform(random_field(grid32, seed))
            # pick t so the transition annulus is populated
            ul, uh = split(v, 2.0, c, d)
            total = hgamma_seminorm(v, 0.0) ** 2
            low = hgamma_seminorm(ul, 0.0) ** 2
            high = hgamma_seminorm(uh, 0.0) ** 2
            assert low + high <= total * (1.0 + 1e-12)
            assert total <= 2.0 * (low + high) * (1.0 + 1e-12)

    def test_rejects_negative_time(self, grid16):
        d = DissipationSpec(grid16, 2.0, 2.0)
        v = single_mode_spectrum(grid16, 1, 0)
        with pytest.raises(ValueError):
            split(v, -0.5, CutoffSpec(8.0), d)


@pytest.fixture(scope="module")
def small_run():
    from anisoflow import GaussianIC, RunConfig, lp_norm, run_simulation
    from anisoflow.run import synthesize_ic
    from anisoflow.spectral import GridSpec

    a1, a2 = 1.5, 2.0
    # normalize the bump so ||u0||_L1 = 1
    grid = GridSpec(128, 128, 40 * np.pi, 40 * np.pi)
    raw = synthesize_ic(
        RunConfig(nx=128, ny=128, lx=grid.lx, ly=grid.ly, ic=GaussianIC(1.0, 2.0)),
        grid,
    )
    amp = 1.0 / lp_norm(raw, 1)
    cfg = RunConfig(
        nx=128, ny=128, lx=grid.lx, ly=grid.ly, alpha1=a1, alpha2=a2,
        t_end=30.0, sample_every=0.5, ic=GaussianIC(amp, 2.0),
        nonlinearity_enabled=True, timeseries_path="", checkpoint_path="",
    )
    series, _ = run_simulation(cfg)
    return series, (a1, a2)


class TestSplitAlongSimulation:
    def test_low_frequency_decay_law(self, small_run):
        series, (a1, a2) = small_run
        sigma = 0.5 * (1.0 / a1 + 1.0 / a2)
        scaled = [s.ul_l2 * (1.0 + s.t) ** sigma for s in series if 5.0 <= s.t]
        assert max(scaled) / min(scaled) <= 3.0

    def test_prop41_shadow_exponent_ordering(self, small_run):
        from anisoflow import fit_power_law

        series, _ = small_run
        window = (5.0, 30.0)
        u_fit = fit_power_law([(s.t, s.l2) for s in series], window)
        ul_fit = fit_power_law([(s.t, s.ul_l2) for s in series], window)
        assert u_fit.exponent <= ul_fit.exponent + 0.1
