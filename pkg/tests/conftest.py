import numpy as np
import pytest

from anisoflow import GridSpec, PhysicalField, SpectralField
from anisoflow.spectral import band_mask

TWO_PI = 2.0 * np.pi


@pytest.fixture
def grid16():
    return GridSpec(16, 16, TWO_PI, TWO_PI)


@pytest.fixture
def grid32():
    return GridSpec(32, 32, TWO_PI, TWO_PI)


def random_field(grid: GridSpec, seed: int, band_denom: int | None = None) -> PhysicalField:
    """Random real field, optionally truncated to an alias-free band."""
    rng = np.random.default_rng(seed)
    values = rng.standard_normal((grid.nx, grid.ny))
    if band_denom is not None:
        c = np.fft.fft2(values)
        values = np.fft.ifft2(np.where(band_mask(grid, band_denom, strict=True), c, 0.0)).real
    return PhysicalField(grid, values)


def cosine_field(grid: GridSpec, kx: int, ky: int, amplitude: float = 1.0) -> PhysicalField:
    phase = TWO_PI * (kx * grid.x[:, None] / grid.lx + ky * grid.y[None, :] / grid.ly)
    return PhysicalField(grid, amplitude * np.cos(phase))


def single_mode_spectrum(grid: GridSpec, kx: int, ky: int, amplitude: float = 1.0) -> SpectralField:
    """Spectrum of amplitude*cos(...) with exactly two nonzero coefficients."""
    c = np.zeros((grid.nx, grid.ny), dtype=complex)
    half = amplitude * grid.area() / 2.0
    c[kx % grid.nx, ky % grid.ny] += half
    c[(-kx) % grid.nx, (-ky) % grid.ny] += half
    return SpectralField(grid, c)
