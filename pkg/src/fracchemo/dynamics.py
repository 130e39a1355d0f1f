"""IMEX pseudo-spectral integration of the coupled chemotaxis system.

The concentration evolves by fractional diffusion, attraction toward one
screened-Poisson signal and repulsion from another, and a generalized
logistic reaction.  The stiff diffusion is treated implicitly (it is
diagonal in Fourier space), while transport and reaction stay explicit.
Both signals are re-solved from the concentration every step since they are
algebraic constraints, not evolution equations.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .comparison import equilibrium
from .errors import (
    BlowUpError,
    ParameterError,
    PositivityError,
    RegimeViolationWarning,
    ResolutionWarning,
)
from .params import Params
from .spectral import (
    Field,
    Grid,
    dealias,
    divergence,
    gradient,
    helmholtz_residual,
    helmholtz_solve,
    spectral_tail_fraction,
)
from .spreading import level_radius

BLOW_UP_THRESHOLD = 1e6
MAX_HALVINGS = 30
_NEGATIVITY_TOL = -1e-12


def floored_power(values: np.ndarray, exponent: float, floor: float) -> np.ndarray:
    """Pointwise power that is safe for non-integer exponents.

    Integer exponents use the plain power on the nonnegative part; fractional
    exponents clamp the base to ``floor`` first so the logarithm underneath
    stays finite.
    """
    rounded = np.rint(exponent)
    if abs(exponent - rounded) < 1e-12:
        return np.power(np.maximum(values, 0.0), rounded)
    return np.power(np.maximum(values, floor), exponent)


@dataclass(frozen=True)
class State:
    """Concentration and the two signals it generates, at one time."""

    u: Field
    v: Field
    w: Field
    t: float

    def __post_init__(self):
        if self.t < 0.0:
            raise ParameterError(f"t must be nonnegative, got {self.t}")
        if self.u.grid != self.v.grid or self.u.grid != self.w.grid:
            raise ParameterError("u, v, w must share one grid")

    @property
    def grid(self) -> Grid:
        return self.u.grid

    def signal_residuals(self, p: Params, floor: float = 1e-12) -> tuple[float, float]:
        """Relative spectral residuals of the two screened-Poisson constraints."""
        source = self.u.with_values(
            floored_power(self.u.values, p.k, floor), tag="u^k"
        )
        rv = helmholtz_residual(self.v, source, p.lambda1, p.mu1)
        rw = helmholtz_residual(self.w, source, p.lambda2, p.mu2)
        return rv, rw


@dataclass(frozen=True)
class StepperConfig:
    """Time-stepping controls.

    ``positivity_floor`` is the clamp used inside fractional powers of the
    concentration; the default 1e-12 keeps ``u^gamma`` finite when the
    projected solution touches zero.  ``level`` selects the contour whose
    radius is recorded per snapshot (omit to skip front tracking).
    """

    dt: float
    t_end: float
    snapshot_stride: int = 1
    positivity_floor: float = 1e-12
    level: float | None = None
    adaptive: bool = True

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ParameterError(f"dt must be positive, got {self.dt}")
        if self.t_end <= 0.0:
            raise ParameterError(f"t_end must be positive, got {self.t_end}")
        if self.snapshot_stride < 1:
            raise ParameterError(
                f"snapshot_stride must be >= 1, got {self.snapshot_stride}"
            )
        if self.positivity_floor < 0.0:
            raise ParameterError(
                f"positivity_floor must be nonnegative, got {self.positivity_floor}"
            )
        if self.level is not None and self.level <= 0.0:
            raise ParameterError(f"level must be positive, got {self.level}")


def elliptic_update(
    u: Field, p: Params, floor: float = 1e-12
) -> tuple[Field, Field]:
    """Solve both screened-Poisson constraints for the current concentration."""
    low = float(np.min(u.values))
    if low < _NEGATIVITY_TOL:
        raise PositivityError(
            f"concentration reaches {low:.3e}, below the -1e-12 tolerance"
        )
    with np.errstate(over="ignore", invalid="ignore"):
        production = floored_power(u.values, p.k, floor)
    if not np.all(np.isfinite(production)):
        raise BlowUpError(
            "non-finite signal production term", time=float("nan")
        )
    source = u.with_values(production, tag="u^k")
    v = helmholtz_solve(source, p.lambda1, p.mu1)
    w = helmholtz_solve(source, p.lambda2, p.mu2)
    return v.with_values(v.values, tag="v"), w.with_values(w.values, tag="w")


def drift_velocity(state: State, p: Params) -> tuple[Field, ...]:
    """Net drift field ``chi2 grad w - chi1 grad v``, component by component.

    Assembled from the signal difference first so that balanced attraction
    and repulsion cancel to round-off rather than to truncation level.
    """
    grad_v = gradient(state.v)
    grad_w = gradient(state.w)
    return tuple(
        gw.with_values(p.chi2 * gw.values - p.chi1 * gv.values, tag="drift")
        for gv, gw in zip(grad_v, grad_w)
    )


def rhs_explicit(state: State, p: Params, floor: float = 1e-12) -> Field:
    """Explicit part of the update: chemotactic transport plus reaction.

    Every quadratic product is dealiased before differentiation.  A NaN in
    the assembled right-hand side is treated as a blow-up signal.
    """
    u = state.u
    vel = drift_velocity(state, p)
    with np.errstate(over="ignore", invalid="ignore"):
        flux_values = [u.values * comp.values for comp in vel]
        power = floored_power(u.values, p.gamma, floor) if p.b != 0.0 else None
    for term in (*flux_values, power):
        if term is not None and not np.all(np.isfinite(term)):
            raise BlowUpError(
                "non-finite right-hand side", time=state.t, last_state=state
            )
    flux = tuple(
        dealias(u.with_values(fv, tag="flux")) for fv in flux_values
    )
    with np.errstate(over="ignore", invalid="ignore"):
        chemo = divergence(flux)
        reaction = p.a * u.values
        if power is not None:
            reaction = reaction - p.b * dealias(
                u.with_values(power, tag="u^gamma")
            ).values
        total = chemo.values + reaction
    if not np.all(np.isfinite(total)):
        raise BlowUpError(
            "non-finite right-hand side", time=state.t, last_state=state
        )
    return u.with_values(total, tag="rhs")


def dt_stability(
    state: State, p: Params, amplitude: float | None = None
) -> float:
    """Largest stable explicit step: transport CFL plus reaction scale.

    ``amplitude`` defaults to the current sup of the concentration; a known
    a-priori bound may be passed instead.
    """
    vel = drift_velocity(state, p)
    v_max = max(float(np.max(np.abs(comp.values))) for comp in vel)
    h = state.grid.spacing
    cfl = 0.5 * h / v_max if v_max > 0.0 else np.inf
    amp = float(state.u.sup()) if amplitude is None else float(amplitude)
    amp = max(amp, 0.0)
    scale = (
        p.a
        + p.b * amp ** (p.gamma - 1.0)
        + abs(p.chi1 * p.mu1 - p.chi2 * p.mu2) * amp**p.k
    )
    reaction = 0.2 / scale if scale > 0.0 else np.inf
    return float(min(cfl, reaction))


@dataclass
class StepDiagnostics:
    """Mutable per-step bookkeeping collected by the driver."""

    clipped_mass: float = 0.0
    regime_violations: int = 0


def step_imex(
    state: State,
    p: Params,
    dt: float,
    floor: float = 1e-12,
    c0_predicted: float | None = None,
    diagnostics: StepDiagnostics | None = None,
) -> State:
    """One implicit-diffusion, explicit-transport step.

    Applies ``u_new = (u + dt * rhs) / (1 + dt |k|^(2 alpha))`` mode by mode,
    projects onto the nonnegative cone (logging the clipped mass), and
    re-solves both signals.  Exceeding ten times a predicted bound is
    recorded as a regime violation, not a failure.
    """
    if dt <= 0.0:
        raise ParameterError(f"dt must be positive, got {dt}")
    rhs = rhs_explicit(state, p, floor)
    grid = state.grid
    symbol = grid.fractional_symbol(p.alpha)
    with np.errstate(over="ignore", invalid="ignore"):
        u_hat = np.fft.fftn(state.u.values)
        rhs_hat = np.fft.fftn(rhs.values)
        new_hat = (u_hat + dt * rhs_hat) / (1.0 + dt * symbol)
        u_new = np.real(np.fft.ifftn(new_hat))
    if not np.all(np.isfinite(u_new)):
        raise BlowUpError(
            "non-finite concentration after step",
            time=state.t + dt,
            last_state=state,
        )
    negative = np.minimum(u_new, 0.0)
    clipped = -float(np.sum(negative)) * grid.cell_volume
    u_new = np.maximum(u_new, 0.0)
    if diagnostics is not None:
        diagnostics.clipped_mass += clipped
    sup_new = float(np.max(u_new))
    if c0_predicted is not None and sup_new > 10.0 * c0_predicted:
        if diagnostics is not None:
            diagnostics.regime_violations += 1
        warnings.warn(
            f"sup u = {sup_new:.3e} exceeds 10x the predicted bound "
            f"{c0_predicted:.3e}",
            RegimeViolationWarning,
        )
    u_field = Field(grid=grid, values=u_new, tag="u")
    try:
        v, w = elliptic_update(u_field, p, floor)
    except BlowUpError as exc:
        raise BlowUpError(str(exc), time=state.t + dt, last_state=state) from None
    return State(u=u_field, v=v, w=w, t=state.t + dt)


_CSV_COLUMNS = (
    "t",
    "sup_u",
    "inf_u",
    "dist_u",
    "dist_v",
    "dist_w",
    "R_level",
    "clipped_mass",
    "tail_fraction",
)


@dataclass
class RunRecord:
    """Per-snapshot scalar history of one simulation."""

    params: Params
    columns: dict[str, list[float]] = field(default_factory=dict)
    sup_v: list[float] = field(default_factory=list)
    snapshots: list[State] = field(default_factory=list)
    blew_up: bool = False
    blow_time: float | None = None
    final_state: State | None = None
    halvings: int = 0

    def __post_init__(self):
        if not self.columns:
            self.columns = {name: [] for name in _CSV_COLUMNS}

    def column(self, name: str) -> np.ndarray:
        if name not in self.columns:
            raise KeyError(f"unknown column {name!r}")
        return np.asarray(self.columns[name], dtype=float)

    @property
    def times(self) -> np.ndarray:
        return self.column("t")

    def append(self, row: dict[str, float], sup_v: float) -> None:
        for name in _CSV_COLUMNS:
            self.columns[name].append(float(row[name]))
        self.sup_v.append(float(sup_v))

    def to_csv(self) -> str:
        lines = [",".join(_CSV_COLUMNS)]
        n = len(self.columns["t"])
        for i in range(n):
            lines.append(
                ",".join(
                    "%.17g" % self.columns[name][i] for name in _CSV_COLUMNS
                )
            )
        return "\n".join(lines) + "\n"

    def write_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(self.to_csv())


def _record_row(
    record: RunRecord,
    state: State,
    star: tuple[float, float, float] | None,
    level: float | None,
    clipped: float,
) -> None:
    u, v, w = state.u, state.v, state.w
    if star is None:
        dist_u = dist_v = dist_w = float("nan")
    else:
        dist_u = float(np.max(np.abs(u.values - star[0])))
        dist_v = float(np.max(np.abs(v.values - star[1])))
        dist_w = float(np.max(np.abs(w.values - star[2])))
    r_level = level_radius(u, level) if level is not None else float("nan")
    tail = spectral_tail_fraction(u)
    record.append(
        {
            "t": state.t,
            "sup_u": u.sup(),
            "inf_u": u.inf(),
            "dist_u": dist_u,
            "dist_v": dist_v,
            "dist_w": dist_w,
            "R_level": r_level,
            "clipped_mass": clipped,
            "tail_fraction": tail,
        },
        sup_v=v.sup(),
    )


def simulate(
    u0: Field,
    p: Params,
    cfg: StepperConfig,
    c0_predicted: float | None = None,
    keep_fields: bool = False,
) -> RunRecord:
    """Integrate from ``u0`` to ``t_end`` or blow-up, recording snapshots.

    Snapshots are taken every ``snapshot_stride`` accepted steps (plus the
    initial and final instants).  ``keep_fields`` retains the full state at
    each snapshot for later inspection at a memory cost.
    """
    low = float(np.min(u0.values))
    if low < _NEGATIVITY_TOL:
        raise PositivityError(
            f"initial concentration reaches {low:.3e}, below the "
            "-1e-12 tolerance"
        )
    u0 = u0.with_values(np.maximum(u0.values, 0.0), tag="u")
    if u0.grid.dim != p.dim:
        raise ParameterError(
            f"grid dim {u0.grid.dim} does not match params dim {p.dim}"
        )
    v, w = elliptic_update(u0, p, cfg.positivity_floor)
    state = State(u=u0, v=v, w=w, t=0.0)
    star: tuple[float, float, float] | None
    if p.a > 0.0 and p.b > 0.0:
        star = equilibrium(p)
    else:
        star = None
    record = RunRecord(params=p)
    diagnostics = StepDiagnostics()
    _record_row(record, state, star, cfg.level, diagnostics.clipped_mass)
    if keep_fields:
        record.snapshots.append(state)
    warned_resolution = False
    steps = 0
    t_final = cfg.t_end
    while state.t < t_final - 1e-12 * t_final:
        dt = min(cfg.dt, t_final - state.t)
        if cfg.adaptive:
            limit = dt_stability(state, p, amplitude=c0_predicted)
            step_halvings = 0
            while dt > limit and step_halvings < MAX_HALVINGS:
                dt *= 0.5
                step_halvings += 1
            record.halvings += step_halvings
        try:
            state = step_imex(
                state,
                p,
                dt,
                floor=cfg.positivity_floor,
                c0_predicted=c0_predicted,
                diagnostics=diagnostics,
            )
        except BlowUpError as exc:
            record.blew_up = True
            record.blow_time = exc.time
            if exc.last_state is not None:
                record.final_state = exc.last_state
            break
        steps += 1
        if state.u.sup() > BLOW_UP_THRESHOLD:
            record.blew_up = True
            record.blow_time = state.t
            record.final_state = state
            break
        at_end = state.t >= t_final - 1e-12 * t_final
        if steps % cfg.snapshot_stride == 0 or at_end:
            _record_row(record, state, star, cfg.level, diagnostics.clipped_mass)
            if keep_fields:
                record.snapshots.append(state)
            tail = record.columns["tail_fraction"][-1]
            if tail > 0.1 and not warned_resolution:
                warnings.warn(
                    f"spectral tail fraction {tail:.3e} exceeds 10%; "
                    "the run is under-resolved",
                    ResolutionWarning,
                )
                warned_resolution = True
    if record.final_state is None:
        record.final_state = state
    return record


def homogeneous_step_oracle(
    u: float, p: Params, dt: float, n_steps: int
) -> float:
    """Scalar recurrence matching the scheme on spatially constant data."""
    value = float(u)
    for _ in range(n_steps):
        value = value + dt * (p.a * value - p.b * value**p.gamma)
    return value
