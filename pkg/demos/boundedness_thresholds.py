"""Saturation sweep across the damping threshold.

With the repulsive signal switched off the high-exponent regime asks for
b > chi1 mu1: below the line no a-priori ceiling is claimed, above it the
classifier produces C0 and the simulated sup must stay under it.  The
sweep crosses the threshold and plots the measured peak of sup u against
b, with the predicted ceilings where they exist.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fracchemo import Field, Grid, Params, StepperConfig, classify, simulate

OUT = Path(__file__).resolve().parent / "output"


def run_one(b: float, grid: Grid, u0: Field):
    p = Params(dim=1, alpha=0.75, chi1=1.0, chi2=0.0, lambda1=1.0,
               lambda2=1.0, mu1=1.0, mu2=1.0, a=1.0, b=b, gamma=2.0, k=1.0)
    verdict = classify(p, u0_sup=u0.sup())
    record = simulate(
        u0, p, StepperConfig(dt=0.05, t_end=60.0, snapshot_stride=10)
    )
    peak = float(np.max(record.column("sup_u")))
    c0 = verdict.C0 if verdict.boundedness_case != "none" else np.nan
    return verdict.boundedness_case, c0, peak


def main() -> None:
    grid = Grid(1, 2.0 * np.pi, 128)
    x = grid.coordinates[0]
    u0 = Field(grid=grid, values=1.0 + 0.4 * np.cos(x))
    bs = np.linspace(0.6, 2.2, 9)

    cases, ceilings, peaks = [], [], []
    for b in bs:
        case, c0, peak = run_one(float(b), grid, u0)
        cases.append(case)
        ceilings.append(c0)
        peaks.append(peak)
        print(f"b = {b:.2f}: case {case:>4}, C0 = {c0:.4g}, peak = {peak:.4g}")

    fig, ax = plt.subplots(figsize=(6.5, 4))
    ax.plot(bs, peaks, "o-", label="measured max sup u")
    ax.plot(bs, ceilings, "s--", label="predicted ceiling C0")
    ax.axvline(1.0, color="gray", lw=0.8, ls=":",
               label="threshold b = chi1 mu1")
    for b, case in zip(bs, cases):
        ax.annotate(case, (b, 0.05), xycoords=("data", "axes fraction"),
                    ha="center", fontsize=8, color="gray")
    ax.set_xlabel("damping coefficient b")
    ax.set_ylabel("sup u")
    ax.set_title("peak concentration across the damping threshold")
    ax.legend()

    OUT.mkdir(exist_ok=True)
    fig.tight_layout()
    fig.savefig(OUT / "boundedness_thresholds.png", dpi=130)
    print(f"figure written to {OUT / 'boundedness_thresholds.png'}")


if __name__ == "__main__":
    main()
