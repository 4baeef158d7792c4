"""Time integration: integrating-factor RK4 over the stiff multiplier.

The linear flow exp(-t*m(xi)) is applied exactly each step, so only the
nonlinear flux limits the step size and the linear semigroup doubles as
an oracle for the stepper.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import BlowUpError, NonFiniteStateError
from .operators import DissipationSpec, FluxSpec, nonlinear_coeffs
from .spectral import GridSpec, PhysicalField, SpectralField, band_mask

#: Amplitude floor in the CFL denominator; keeps dt finite on a zero field.
CFL_AMPLITUDE_FLOOR = 1e-8


@dataclass(frozen=True)
class SimState:
    """One time level of the semi-discrete system u_hat' = -m*u_hat - N(u).

    flux=None disables the nonlinearity (pure multiplier decay).
    u_hat stays Hermitian-symmetric along any trajectory started from a
    real field; t is nondecreasing across steps.
    """

    t: float
    u_hat: SpectralField
    dissipation: DissipationSpec
    flux: FluxSpec | None

    def __post_init__(self):
        if not (self.t >= 0.0 and np.isfinite(self.t)):
            raise ValueError(f"t must be finite and >= 0, got {self.t}")
        if self.u_hat.grid != self.dissipation.grid:
            raise ValueError("state and dissipation symbol live on different grids")

    @property
    def grid(self) -> GridSpec:
        return self.u_hat.grid


def linear_exact(u0_hat: SpectralField, d: DissipationSpec, t: float) -> SpectralField:
    """Exact multiplier semigroup: coefficients scaled by exp(-t*m(xi))."""
    if not (t >= 0.0 and np.isfinite(t)):
        raise ValueError(f"t must be finite and >= 0, got {t}")
    if u0_hat.grid != d.grid:
        raise ValueError("field and dissipation symbol live on different grids")
    return SpectralField(u0_hat.grid, u0_hat.coeffs * np.exp(-t * d.symbol))


def step_ifrk4(s: SimState, dt: float) -> SimState:
    """Advance one step of classical RK4 on the integrating-factor variable.

    Exact on the linear part for any dt.  With the flux enabled the result
    is truncated to the alias-free band.  Nonfinite values anywhere in the
    step raise BlowUpError carrying the time the step was aiming for.
    """
    if not (dt > 0.0 and np.isfinite(dt)):
        raise ValueError(f"dt must be positive and finite, got {dt}")
    grid = s.grid
    m = s.dissipation.symbol
    c = s.u_hat.coeffs
    e_full = np.exp(-dt * m)
    if s.flux is None:
        new = e_full * c
    else:
        e_half = np.exp(-0.5 * dt * m)

        def rhs(coeffs):
            return -nonlinear_coeffs(grid, coeffs, s.flux)

        try:
            k1 = dt * rhs(c)
            k2 = dt * rhs(e_half * (c + 0.5 * k1))
            k3 = dt * rhs(e_half * c + 0.5 * k2)
            k4 = dt * rhs(e_full * c + e_half * k3)
        except NonFiniteStateError as exc:
            raise BlowUpError(s.t + dt, f"blow-up during step to t={s.t + dt:.6g}: {exc}") from exc
        new = e_full * c + (e_full * k1 + 2.0 * e_half * (k2 + k3) + k4) / 6.0
        new = np.where(band_mask(grid, s.flux.dealias_denom, strict=True), new, 0.0)
    if not np.all(np.isfinite(new)):
        raise BlowUpError(s.t + dt)
    return replace(s, t=s.t + dt, u_hat=SpectralField(grid, new))


def cfl_dt(u: PhysicalField, g: GridSpec, safety: float) -> float:
    """Advective step limit: safety * min(dx, dy) / max(|u|, floor).

    The linear part is integrated exactly and imposes no constraint.
    """
    if not (0.0 < safety <= 1.0):
        raise ValueError(f"safety must lie in (0, 1], got {safety}")
    if not np.all(np.isfinite(u.values)):
        raise ValueError("CFL estimate on nonfinite field")
    amp = max(float(np.max(np.abs(u.values))), CFL_AMPLITUDE_FLOOR)
    return safety * min(g.dx, g.dy) / amp
