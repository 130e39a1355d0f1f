"""Periodic Fourier machinery used by every solver in the package.

All fields live on a uniform grid over the box ``[-extent/2, extent/2)^dim``
with periodic boundary conditions.  Operators act through Fourier multipliers:

* fractional diffusion applies ``|k|^(2*alpha)``,
* the screened-Poisson (Helmholtz) inverse applies ``mu / (lam + |k|^2)``,
* partial derivatives apply ``i*k_j`` with the Nyquist mode removed,
* dealiasing zeroes every mode whose integer index exceeds ``n // 3``.

The forward transform is unscaled and the inverse carries the ``1/size``
factor, i.e. the numpy FFT convention.  Wavenumbers are integer multiples of
``2*pi / extent``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CorruptedFieldError,
    GridMismatchError,
    ParameterError,
)

SNAPSHOT_MAGIC = "fracchemo-field v1"

_HEADER_RE = re.compile(
    r"^fracchemo-field v1 dim=(\d+) n=(\d+) extent=([^ ]+)$"
)


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on ``[-extent/2, extent/2)^dim``.

    Parameters
    ----------
    dim : int
        Spatial dimension, 1 or 2.
    extent : float
        Side length of the periodic box.
    points_per_axis : int
        Number of samples per axis; must be even and at least 8 so the
        two-thirds dealiasing rule leaves a nonempty band.
    """

    dim: int
    extent: float
    points_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ParameterError(f"dim must be 1 or 2, got {self.dim}")
        if not (self.extent > 0.0 and np.isfinite(self.extent)):
            raise ParameterError(f"extent must be positive, got {self.extent}")
        n = self.points_per_axis
        if n < 8 or n % 2 != 0:
            raise ParameterError(
                f"points_per_axis must be even and >= 8, got {n}"
            )

    @property
    def spacing(self) -> float:
        return self.extent / self.points_per_axis

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.points_per_axis ** self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.dim

    @cached_property
    def axis_coordinates(self) -> np.ndarray:
        """Sample positions along one axis."""
        n = self.points_per_axis
        return -0.5 * self.extent + self.spacing * np.arange(n)

    @cached_property
    def coordinates(self) -> tuple[np.ndarray, ...]:
        """Coordinate arrays with the full grid shape, one per axis."""
        ax = self.axis_coordinates
        if self.dim == 1:
            return (ax,)
        return tuple(np.meshgrid(ax, ax, indexing="ij"))

    @cached_property
    def radius(self) -> np.ndarray:
        """Distance of each sample from the box center."""
        if self.dim == 1:
            return np.abs(self.coordinates[0])
        return np.sqrt(sum(c * c for c in self.coordinates))

    @cached_property
    def integer_modes(self) -> np.ndarray:
        """Signed integer mode index along one axis (fftfreq ordering)."""
        n = self.points_per_axis
        return np.rint(np.fft.fftfreq(n) * n).astype(int)

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        """Physical wavenumber arrays, one per axis, full grid shape."""
        k1 = self.integer_modes * (2.0 * np.pi / self.extent)
        if self.dim == 1:
            return (k1,)
        return tuple(np.meshgrid(k1, k1, indexing="ij"))

    @cached_property
    def derivative_wavenumbers(self) -> tuple[np.ndarray, ...]:
        """Wavenumbers for odd-order derivatives: Nyquist column removed."""
        n = self.points_per_axis
        k1 = self.integer_modes * (2.0 * np.pi / self.extent)
        k1 = k1.copy()
        k1[n // 2] = 0.0
        if self.dim == 1:
            return (k1,)
        kx, ky = np.meshgrid(k1, k1, indexing="ij")
        return (kx, ky)

    @cached_property
    def k_squared(self) -> np.ndarray:
        return sum(k * k for k in self.wavenumbers)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """True on modes kept by the two-thirds rule."""
        cutoff = self.points_per_axis // 3
        m = np.abs(self.integer_modes) <= cutoff
        if self.dim == 1:
            return m
        mx, my = np.meshgrid(m, m, indexing="ij")
        return mx & my

    def fractional_symbol(self, alpha: float) -> np.ndarray:
        """Multiplier ``|k|^(2*alpha)`` of the fractional Laplacian."""
        return np.power(self.k_squared, alpha)


@dataclass(frozen=True)
class Field:
    """A real scalar field sampled on a :class:`Grid`.

    Instances are immutable; operators return new fields.  ``tag`` is a free
    label ("concentration", "attractant", ...) used only for reporting.
    """

    grid: Grid
    values: np.ndarray
    tag: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, copy=True)
        if v.shape != self.grid.shape:
            raise GridMismatchError(
                f"values shape {v.shape} does not match grid shape "
                f"{self.grid.shape}"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def with_values(self, values: np.ndarray, tag: str | None = None) -> "Field":
        return Field(self.grid, values, self.tag if tag is None else tag)

    def sup(self) -> float:
        return float(np.max(self.values))

    def inf(self) -> float:
        return float(np.min(self.values))

    def require_finite(self, context: str = "field") -> None:
        if not np.all(np.isfinite(self.values)):
            raise CorruptedFieldError(f"{context} contains non-finite values")


def constant_field(grid: Grid, value: float, tag: str = "") -> Field:
    return Field(grid, np.full(grid.shape, float(value)), tag)


def _same_grid(a: Field, b: Field) -> None:
    if a.grid != b.grid:
        raise GridMismatchError("fields are sampled on different grids")


def forward_transform(f: Field) -> np.ndarray:
    """Unscaled forward FFT of the field values."""
    return np.fft.fftn(f.values)


def inverse_transform(grid: Grid, coefficients: np.ndarray) -> Field:
    """Inverse FFT (carries the ``1/size`` factor), real part kept."""
    if coefficients.shape != grid.shape:
        raise GridMismatchError(
            f"coefficient shape {coefficients.shape} does not match grid"
        )
    return Field(grid, np.real(np.fft.ifftn(coefficients)))


def _apply_multiplier(f: Field, multiplier: np.ndarray) -> np.ndarray:
    return np.real(np.fft.ifftn(np.fft.fftn(f.values) * multiplier))


def fractional_laplacian(f: Field, alpha: float) -> Field:
    """Apply ``(-Delta)^alpha`` through its Fourier symbol ``|k|^(2 alpha)``.

    ``alpha`` may be anything in ``(0, 1]``; ``alpha = 1`` reproduces the
    (negated) spectral Laplacian exactly.
    """
    if not (0.0 < alpha <= 1.0):
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
    f.require_finite("fractional_laplacian input")
    return f.with_values(_apply_multiplier(f, f.grid.fractional_symbol(alpha)))


def laplacian(f: Field) -> Field:
    """Spectral Laplacian (multiplier ``-|k|^2``)."""
    f.require_finite("laplacian input")
    return f.with_values(_apply_multiplier(f, -f.grid.k_squared))


def helmholtz_solve(f: Field, lam: float, mu: float) -> Field:
    """Solve ``lam * g - Delta g = mu * f`` on the periodic box.

    Parameters
    ----------
    f : Field
        Source term.
    lam : float
        Screening coefficient, must be positive so the operator is
        invertible on the mean mode.
    mu : float
        Source strength multiplying ``f``.
    """
    if not (lam > 0.0 and np.isfinite(lam)):
        raise ParameterError(f"lambda must be positive, got {lam}")
    if not (mu > 0.0 and np.isfinite(mu)):
        raise ParameterError(f"mu must be positive, got {mu}")
    f.require_finite("helmholtz_solve input")
    multiplier = mu / (lam + f.grid.k_squared)
    return f.with_values(_apply_multiplier(f, multiplier))


def helmholtz_residual(g: Field, f: Field, lam: float, mu: float) -> float:
    """Sup norm of ``lam * g - Delta g - mu * f``."""
    _same_grid(g, f)
    res = lam * g.values - laplacian(g).values - mu * f.values
    return float(np.max(np.abs(res)))


def gradient(f: Field) -> tuple[Field, ...]:
    """Spectral gradient; the Nyquist mode of each derivative is zeroed."""
    f.require_finite("gradient input")
    spectrum = np.fft.fftn(f.values)
    out = []
    for k in f.grid.derivative_wavenumbers:
        out.append(f.with_values(np.real(np.fft.ifftn(1j * k * spectrum))))
    return tuple(out)


def divergence(components: Sequence[Field]) -> Field:
    """Spectral divergence of a vector field, adjoint to :func:`gradient`."""
    comps = list(components)
    if len(comps) == 0:
        raise ParameterError("divergence needs at least one component")
    grid = comps[0].grid
    if len(comps) != grid.dim:
        raise GridMismatchError(
            f"expected {grid.dim} components, got {len(comps)}"
        )
    total = np.zeros(grid.shape, dtype=np.complex128)
    for comp, k in zip(comps, grid.derivative_wavenumbers):
        _same_grid(comp, comps[0])
        comp.require_finite("divergence input")
        total += 1j * k * np.fft.fftn(comp.values)
    return comps[0].with_values(np.real(np.fft.ifftn(total)))


def dealias(f: Field) -> Field:
    """Two-thirds rule: zero every mode with any ``|k_j| > n // 3``."""
    f.require_finite("dealias input")
    spectrum = np.fft.fftn(f.values)
    spectrum[~f.grid.dealias_mask] = 0.0
    return f.with_values(np.real(np.fft.ifftn(spectrum)))


def spectral_tail_fraction(f: Field) -> float:
    """Energy fraction carried by modes outside the dealiased band.

    The mean mode is excluded from the total so a constant field reports 0.
    """
    spectrum = np.fft.fftn(f.values)
    with np.errstate(over="ignore", invalid="ignore"):
        energy = np.abs(spectrum) ** 2
        zero = (0,) * f.grid.dim
        energy[zero] = 0.0
        total = float(np.sum(energy))
        if total == 0.0:
            return 0.0
        tail = float(np.sum(energy[~f.grid.dealias_mask]))
        ratio = tail / total
    return ratio if np.isfinite(ratio) else float("nan")


def write_snapshot(f: Field, path) -> None:
    """Write a field to the portable single-column text format.

    The first line is ``fracchemo-field v1 dim=<d> n=<n> extent=<L>`` and the
    remaining lines hold the row-major values, one decimal float per line,
    with enough digits for an exact float64 round trip.
    """
    header = (
        f"{SNAPSHOT_MAGIC} dim={f.grid.dim} n={f.grid.points_per_axis} "
        f"extent={f.grid.extent:.17g}"
    )
    lines = [header]
    lines.extend(f"{v:.17g}" for v in f.values.ravel(order="C"))
    with open(path, "w") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def read_snapshot(path) -> Field:
    """Read a field written by :func:`write_snapshot`."""
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        m = _HEADER_RE.match(header)
        if m is None:
            raise CorruptedFieldError(
                f"bad snapshot header: {header!r}"
            )
        dim, n = int(m.group(1)), int(m.group(2))
        extent = float(m.group(3))
        try:
            flat = np.loadtxt(fh, dtype=np.float64, ndmin=1)
        except ValueError as exc:
            raise CorruptedFieldError(f"bad snapshot payload: {exc}") from exc
    grid = Grid(dim, extent, n)
    if flat.size != grid.size:
        raise CorruptedFieldError(
            f"snapshot holds {flat.size} values, grid needs {grid.size}"
        )
    if not np.all(np.isfinite(flat)):
        raise CorruptedFieldError("snapshot contains non-finite values")
    return Field(grid, flat.reshape(grid.shape, order="C"))
