"""Front tracking and spreading-rate diagnostics for heavy-tailed dynamics.

Provides compactly supported and power-tailed initial data, a sub-cell
level-set radius, exponential-rate fitting of the front trajectory, and the
two confinement checks (persistence inside the slow cone, decay outside the
fast cone) used to bracket the propagation speed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    GeometryError,
    InsufficientDataError,
    ParameterError,
    TruncatedWindowWarning,
)
from .spectral import Field, Grid

_BOX_FRACTION = 0.4  # front radii beyond this fraction of the extent are suspect


def make_bump_initial(
    grid: Grid, radius: float, height: float = 1.0, floor: float = 0.0
) -> Field:
    """Smooth compact bump of the given height on a positive floor.

    Inside the ball the profile is ``height * exp(1 - 1/(1 - (r/radius)^2))``,
    which is infinitely differentiable and reaches ``height`` at the center.
    The positive floor reconciles a strictly positive infimum with compact
    support of the bump itself.
    """
    if not 0.0 < radius < 0.25 * grid.extent:
        raise GeometryError(
            f"radius = {radius} out of range: (0, extent/4 = {0.25 * grid.extent})"
        )
    if floor < 0.0:
        raise ParameterError(f"floor must be nonnegative, got {floor}")
    if height <= floor:
        raise ParameterError(
            f"height = {height} must exceed the floor = {floor}"
        )
    r = grid.radius
    values = np.full(grid.shape, float(floor))
    inside = r < radius
    s = np.zeros_like(r)
    s[inside] = (r[inside] / radius) ** 2
    with np.errstate(divide="ignore"):
        values[inside] += height * np.exp(1.0 - 1.0 / (1.0 - s[inside]))
    return Field(grid=grid, values=values, tag="bump")


def make_x0_initial(
    grid: Grid, c_star: float, alpha: float, floor: float = 0.0
) -> Field:
    """Initial datum with the critical algebraic tail ``c* |x|^(-dim-2a)``.

    The profile is capped at ``c_star`` near the origin and floored from
    below, matching the far-field decay of the fractional heat kernel.
    """
    if c_star <= 0.0:
        raise ParameterError(f"c_star must be positive, got {c_star}")
    if not (0.0 < alpha <= 1.0):
        raise ParameterError(f"alpha = {alpha} out of range: alpha in (0, 1]")
    if floor < 0.0:
        raise ParameterError(f"floor must be nonnegative, got {floor}")
    r = grid.radius
    values = np.full(grid.shape, float(c_star))
    positive = r > 0.0
    expo = -(grid.dim + 2.0 * alpha)
    values[positive] = np.minimum(c_star, c_star * r[positive] ** expo)
    values = np.maximum(values, floor)
    return Field(grid=grid, values=values, tag="x0")


def _bilinear_periodic(values: np.ndarray, grid: Grid, point: np.ndarray) -> float:
    """Periodic bilinear sample of a 2D array at a physical point."""
    n = grid.points_per_axis
    fx = (point + 0.5 * grid.extent) / grid.spacing
    i0 = np.floor(fx).astype(int)
    frac = fx - i0
    i0 %= n
    i1 = (i0 + 1) % n
    v00 = values[i0[0], i0[1]]
    v10 = values[i1[0], i0[1]]
    v01 = values[i0[0], i1[1]]
    v11 = values[i1[0], i1[1]]
    return float(
        v00 * (1 - frac[0]) * (1 - frac[1])
        + v10 * frac[0] * (1 - frac[1])
        + v01 * (1 - frac[0]) * frac[1]
        + v11 * frac[0] * frac[1]
    )


def level_radius(u: Field, level: float) -> float:
    """Largest distance from the origin at which ``u`` still reaches ``level``.

    Returns the radius of the outermost grid point with ``u >= level``,
    refined by linear interpolation toward the next sample along the outward
    ray (a periodic bilinear sample in 2D).  Returns 0 when the field is
    everywhere below the level.
    """
    if level <= 0.0:
        raise ParameterError(f"level must be positive, got {level}")
    grid = u.grid
    r = grid.radius
    mask = u.values >= level
    if not np.any(mask):
        return 0.0
    flat_idx = np.argmax(np.where(mask, r, -np.inf))
    idx = np.unravel_index(flat_idx, grid.shape)
    r0 = float(r[idx])
    u0 = float(u.values[idx])
    h = grid.spacing
    if r0 == 0.0:
        direction = np.zeros(grid.dim)
        direction[0] = 1.0
    else:
        point = np.array([grid.coordinates[d][idx] for d in range(grid.dim)])
        direction = point / r0
    outward = (
        np.array([grid.coordinates[d][idx] for d in range(grid.dim)])
        if r0 > 0.0
        else np.zeros(grid.dim)
    ) + h * direction
    if grid.dim == 1:
        n = grid.points_per_axis
        j = int(
            np.rint((outward[0] + 0.5 * grid.extent) / h)
        ) % n
        u_next = float(u.values[j])
    else:
        u_next = _bilinear_periodic(u.values, grid, outward)
    if u_next >= level or u0 <= u_next:
        return r0 + h
    frac = (u0 - level) / (u0 - u_next)
    return r0 + h * float(np.clip(frac, 0.0, 1.0))


@dataclass(frozen=True)
class RateFit:
    """Least-squares exponential spreading rate of a front trajectory."""

    rate: float
    r_squared: float
    n_points: int
    intercept: float


@dataclass(frozen=True)
class FrontTrace:
    """Level-set front trajectory with an optional completed fit."""

    times: np.ndarray
    radii: np.ndarray
    level: float
    fit_window: tuple[float, float] | None = None
    extent: float | None = None
    fitted_rate: float = float("nan")
    fit_r2: float = float("nan")

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        radii = np.asarray(self.radii, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "radii", radii)
        if times.shape != radii.shape:
            raise ParameterError("times and radii must have matching shapes")
        if times.size >= 2 and np.any(np.diff(times) <= 0.0):
            raise ParameterError("times must be strictly increasing")
        if self.level <= 0.0:
            raise ParameterError(f"level must be positive, got {self.level}")

    def with_fit(self) -> "FrontTrace":
        """Return a copy carrying the fitted rate and goodness of fit."""
        fit = fit_front(
            self.times, self.radii, extent=self.extent, window=self.fit_window
        )
        return FrontTrace(
            times=self.times,
            radii=self.radii,
            level=self.level,
            fit_window=self.fit_window,
            extent=self.extent,
            fitted_rate=fit.rate,
            fit_r2=fit.r_squared,
        )

    def to_csv(self) -> str:
        lines = ["t,R,level"]
        for t, r in zip(self.times, self.radii):
            lines.append("%.17g,%.17g,%.17g" % (t, r, self.level))
        return "\n".join(lines) + "\n"


def fit_rate(trace: FrontTrace) -> tuple[float, float]:
    """Least-squares exponential rate and goodness of fit of a front trace."""
    fit = fit_front(
        trace.times, trace.radii, extent=trace.extent, window=trace.fit_window
    )
    return fit.rate, fit.r_squared


def fit_front(
    times,
    radii,
    extent: float | None = None,
    window: tuple[float, float] | None = None,
) -> RateFit:
    """Fit ``ln R(t) = rate * t + c`` over the valid part of a front trace.

    Points with non-finite or non-positive radii are dropped; radii beyond
    40% of the box extent are truncated with a warning since they feel the
    periodic images.  At least 10 valid points are required.
    """
    times = np.asarray(times, dtype=float)
    radii = np.asarray(radii, dtype=float)
    if times.shape != radii.shape:
        raise ParameterError("times and radii must have matching shapes")
    valid = np.isfinite(radii) & (radii > 0.0) & np.isfinite(times)
    if window is not None:
        valid &= (times >= window[0]) & (times <= window[1])
    if extent is not None:
        boxed = radii >= _BOX_FRACTION * extent
        if np.any(valid & boxed):
            warnings.warn(
                "front radius reached 40% of the box extent; "
                "truncating the fit window",
                TruncatedWindowWarning,
            )
            valid &= ~boxed
    n = int(np.count_nonzero(valid))
    if n < 10:
        raise InsufficientDataError(
            f"only {n} valid front points, need at least 10"
        )
    t = times[valid]
    y = np.log(radii[valid])
    slope, intercept = np.polyfit(t, y, 1)
    fitted = slope * t + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    # constant radii leave only round-off in the total variation; the
    # ratio of two such residues is meaningless, so report no fit instead
    noise = (16.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(y))))) ** 2
    r2 = 0.0 if ss_tot <= noise * y.size else 1.0 - ss_res / ss_tot
    return RateFit(
        rate=float(slope), r_squared=r2, n_points=n, intercept=float(intercept)
    )


@dataclass(frozen=True)
class ConeReport:
    """Outcome of a persistence or decay check along an exponential cone."""

    ok: bool
    times: np.ndarray
    radii: np.ndarray
    extrema: np.ndarray


def check_inner_persistence(
    times,
    fields,
    lower_rate: float,
    delta: float,
    eps: float | None = None,
) -> ConeReport:
    """Verify the solution stays above ``delta`` inside the slow cone.

    At each sampled time the minimum of ``u`` is taken over the ball of
    radius ``exp((lower_rate - eps) t)`` and compared with ``delta``; the
    default safety margin is a quarter of the rate.
    """
    times = np.asarray(times, dtype=float)
    if len(fields) != times.size:
        raise ParameterError("times and fields must have matching lengths")
    if eps is None:
        eps = 0.25 * lower_rate
    if not 0.0 < eps < lower_rate:
        raise ParameterError(
            f"eps = {eps} out of range: (0, lower_rate = {lower_rate})"
        )
    radii = np.exp((lower_rate - eps) * times)
    minima = np.empty_like(radii)
    for i, field in enumerate(fields):
        r = field.grid.radius
        ball = r <= max(radii[i], field.grid.spacing)
        minima[i] = float(np.min(field.values[ball]))
    return ConeReport(
        ok=bool(np.all(minima >= delta)),
        times=times,
        radii=radii,
        extrema=minima,
    )


def check_outer_decay(
    times,
    fields,
    upper_rate: float,
    eps: float | None = None,
    threshold: float = 1e-3,
    slack: float = 1.05,
) -> ConeReport:
    """Verify the solution collapses outside the fast cone.

    At each sampled time the supremum of ``u`` is taken outside the ball of
    radius ``exp((upper_rate + eps) t)``; the sequence must be
    non-increasing (up to ``slack``) and end below ``threshold``.  Times at
    which the cone has left the box are skipped.  The default margin equals
    the rate itself, which keeps the exterior region inside a finite box for
    usable observation windows.
    """
    times = np.asarray(times, dtype=float)
    if len(fields) != times.size:
        raise ParameterError("times and fields must have matching lengths")
    if eps is None:
        eps = upper_rate
    if eps <= 0.0:
        raise ParameterError(f"eps must be positive, got {eps}")
    radii = np.exp((upper_rate + eps) * times)
    sups = np.full_like(radii, np.nan)
    for i, field in enumerate(fields):
        outside = field.grid.radius >= radii[i]
        if np.any(outside):
            sups[i] = float(np.max(field.values[outside]))
    seen = np.isfinite(sups)
    if np.count_nonzero(seen) < 2:
        raise InsufficientDataError(
            "outer cone left the box at all but one sampled time"
        )
    seq = sups[seen]
    monotone = bool(np.all(seq[1:] <= slack * seq[:-1]))
    ok = monotone and seq[-1] <= threshold
    return ConeReport(ok=ok, times=times, radii=radii, extrema=sups)
