import numpy as np
import pytest

from fracchemo import (
    Field,
    Grid,
    ParameterError,
    constant_field,
    dealias,
    divergence,
    fractional_laplacian,
    gradient,
    helmholtz_solve,
    laplacian,
    read_snapshot,
    write_snapshot,
)
from fracchemo.errors import CorruptedFieldError, GridMismatchError
from fracchemo.spectral import (
    forward_transform,
    helmholtz_residual,
    inverse_transform,
    spectral_tail_fraction,
)


def test_grid_validation():
    with pytest.raises(ParameterError, match="dim"):
        Grid(dim=3, extent=1.0, points_per_axis=16)
    with pytest.raises(ParameterError, match="extent"):
        Grid(dim=1, extent=-1.0, points_per_axis=16)
    with pytest.raises(ParameterError, match="points_per_axis"):
        Grid(dim=1, extent=1.0, points_per_axis=15)
    with pytest.raises(ParameterError, match="points_per_axis"):
        Grid(dim=1, extent=1.0, points_per_axis=4)


def test_grid_geometry(grid_1d):
    assert grid_1d.spacing == pytest.approx(2 * np.pi / 64)
    x = grid_1d.axis_coordinates
    assert x[0] == pytest.approx(-np.pi)
    assert x[-1] == pytest.approx(np.pi - grid_1d.spacing)
    assert grid_1d.cell_volume == pytest.approx(grid_1d.spacing)


def test_fractional_laplacian_plane_wave(grid_1d):
    # single Fourier mode: exact eigenfunction with eigenvalue |m * 2pi/L|^(2a)
    x = grid_1d.coordinates[0]
    for m, alpha in [(1, 0.75), (3, 0.6), (5, 0.9)]:
        f = Field(grid=grid_1d, values=np.cos(m * x))
        out = fractional_laplacian(f, alpha)
        expected = float(m) ** (2 * alpha) * np.cos(m * x)
        assert np.max(np.abs(out.values - expected)) <= 1e-12 * m ** (2 * alpha)


def test_fractional_laplacian_alpha_one_matches_laplacian(grid_1d):
    rng = np.random.default_rng(0)
    f = Field(grid=grid_1d, values=rng.standard_normal(64))
    frac = fractional_laplacian(f, 1.0)
    lap = laplacian(f)
    assert np.array_equal(frac.values, -lap.values)


def test_fractional_laplacian_2d_plane_wave(grid_2d):
    x, y = grid_2d.coordinates
    alpha = 0.8
    f = Field(grid=grid_2d, values=np.cos(2 * x + 3 * y))
    out = fractional_laplacian(f, alpha)
    expected = (4.0 + 9.0) ** alpha * np.cos(2 * x + 3 * y)
    assert np.max(np.abs(out.values - expected)) <= 1e-11


def test_fractional_laplacian_alpha_range(grid_1d):
    f = constant_field(grid_1d, 1.0)
    with pytest.raises(ParameterError, match="alpha"):
        fractional_laplacian(f, 1.2)
    with pytest.raises(ParameterError, match="alpha"):
        fractional_laplacian(f, 0.0)


def test_helmholtz_mode_formula(grid_1d):
    # (lam - Lap)^-1 applied to cos(m x) scales by mu/(lam + m^2)
    x = grid_1d.coordinates[0]
    lam, mu = 1.3, 0.7
    f = Field(grid=grid_1d, values=1.0 + 0.1 * np.cos(x))
    v = helmholtz_solve(f, lam, mu)
    expected = mu / lam + (0.1 * mu / (lam + 1.0)) * np.cos(x)
    assert np.max(np.abs(v.values - expected)) <= 1e-14
    assert helmholtz_residual(v, f, lam, mu) <= 1e-13


def test_helmholtz_positivity_and_sup_bound(grid_1d):
    rng = np.random.default_rng(1)
    for _ in range(20):
        u = Field(grid=grid_1d, values=rng.uniform(0.0, 2.0, size=64))
        v = helmholtz_solve(u, 1.5, 2.0)
        # contraction: sup bounded by (mu/lam) sup u for nonnegative input
        assert v.sup() <= 2.0 / 1.5 * u.sup() + 1e-12


def test_gradient_divergence_roundtrip(grid_2d):
    x, y = grid_2d.coordinates
    f = Field(grid=grid_2d, values=np.sin(x) * np.cos(2 * y))
    gx, gy = gradient(f)
    assert np.max(np.abs(gx.values - np.cos(x) * np.cos(2 * y))) <= 1e-12
    assert np.max(np.abs(gy.values + 2 * np.sin(x) * np.sin(2 * y))) <= 1e-12
    div = divergence((gx, gy))
    assert np.max(np.abs(div.values - laplacian(f).values)) <= 1e-11


def test_divergence_arity(grid_2d, grid_1d):
    f = constant_field(grid_2d, 1.0)
    with pytest.raises(GridMismatchError, match="components"):
        divergence((f,))
    with pytest.raises(GridMismatchError):
        divergence((f, constant_field(Grid(dim=2, extent=1.0, points_per_axis=32), 1.0)))


def test_nyquist_mode_dropped_from_derivatives():
    # odd derivative of the pure Nyquist mode must be zero, not noise
    grid = Grid(dim=1, extent=2 * np.pi, points_per_axis=16)
    x = grid.coordinates[0]
    f = Field(grid=grid, values=np.cos(8 * x))
    (g,) = gradient(f)
    assert np.max(np.abs(g.values)) <= 1e-12


def test_dealias_removes_high_modes(grid_1d):
    x = grid_1d.coordinates[0]
    n = grid_1d.points_per_axis
    keep = n // 3
    f = Field(grid=grid_1d, values=np.cos(keep * x) + np.cos((keep + 1) * x))
    cleaned = dealias(f)
    assert np.max(np.abs(cleaned.values - np.cos(keep * x))) <= 1e-12


def test_dealias_idempotent(grid_2d):
    rng = np.random.default_rng(2)
    f = Field(grid=grid_2d, values=rng.standard_normal(grid_2d.shape))
    once = dealias(f)
    twice = dealias(once)
    assert np.max(np.abs(once.values - twice.values)) <= 1e-14


def test_tail_fraction_detects_unresolved(grid_1d):
    x = grid_1d.coordinates[0]
    smooth = Field(grid=grid_1d, values=2.0 + np.cos(x))
    rough = Field(grid=grid_1d, values=2.0 + np.cos(30 * x))
    assert spectral_tail_fraction(smooth) <= 1e-28
    assert spectral_tail_fraction(rough) >= 0.9


def test_transform_roundtrip(grid_2d):
    rng = np.random.default_rng(3)
    f = Field(grid=grid_2d, values=rng.standard_normal(grid_2d.shape))
    back = inverse_transform(grid_2d, forward_transform(f))
    assert np.max(np.abs(back.values - f.values)) <= 1e-13


def test_snapshot_roundtrip(tmp_path, grid_2d):
    rng = np.random.default_rng(4)
    f = Field(grid=grid_2d, values=rng.standard_normal(grid_2d.shape), tag="u")
    path = tmp_path / "field.snap"
    write_snapshot(f, path)
    g = read_snapshot(path)
    assert g.grid == grid_2d
    assert np.array_equal(g.values, f.values)


def test_snapshot_rejects_corruption(tmp_path, grid_1d):
    f = constant_field(grid_1d, 1.0)
    path = tmp_path / "field.snap"
    write_snapshot(f, path)
    text = path.read_text()
    path.write_text("garbage\n" + text)
    with pytest.raises(CorruptedFieldError):
        read_snapshot(path)
    path.write_text("\n".join(text.splitlines()[:-5]))
    with pytest.raises(CorruptedFieldError):
        read_snapshot(path)


def test_field_rejects_bad_shape(grid_1d):
    with pytest.raises(GridMismatchError):
        Field(grid=grid_1d, values=np.zeros(12))
