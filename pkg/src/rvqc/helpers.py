import re

import numpy as np
import termplotlib as tpl


def normalize_name(name: str) -> str:
    # Normalize a method/backend name, e.g.,
    #   Sampled (noisy)  -> sampled-noisy
    return "-".join(
        filter(lambda item: item != "", re.split("-| |_|\\(|\\)", name.lower()))
    )


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator for one purpose, derived from the master seed.

    Keys in use:
      (0,)                target circuit generation
      (1, k)              initial parameters of step k
      (2, k, e)           training-cost shots of step k, epoch e
      (3, k, e, i, s)     gradient shots, parameter i, shift sign s (0: +, 1: -)
    """
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=key))


def print_stats(costs, extra_cols=None):
    extra_cols = [] if extra_cols is None else extra_cols

    costs = np.asarray(costs)
    hist, bin_edges = np.histogram(
        costs, bins=np.linspace(0.0, 1.0, num=41, endpoint=True)
    )

    grid = tpl.subplot_grid(
        (1, 2 + len(extra_cols)), column_widths=None, border_style=None
    )
    grid[0, 0].hist(hist, bin_edges, bar_width=1, strip=True)
    grid[0, 1].aprint(f"epochs:    {len(costs):5d}")
    grid[0, 1].aprint(f"min cost:  {np.min(costs):9.3e}")
    grid[0, 1].aprint(f"avg cost:  {np.average(costs):9.3e}")
    grid[0, 1].aprint(f"last cost: {costs[-1]:9.3e}")

    for k, col in enumerate(extra_cols):
        grid[0, 2 + k].aprint(col)

    grid.show()


def format_report(report) -> str:
    """Plain-text table of a fidelity report, see `rvqc.fidelity_report`."""
    header = (
        f"{'step':>4}  {'best epoch':>10}  {'train cost':>10}  {'ideal cost':>10}  "
        f"{'F[A^I,R^I]':>10}  {'F[A^N,R^I]':>10}  {'F[R^N,R^I]':>10}"
    )
    lines = [header, "-" * len(header)]
    for row in report["steps"]:
        lines.append(
            f"{row['step']:4d}  {row['best_epoch']:10d}  {row['train_cost']:10.3e}  "
            f"{row['ideal_cost']:10.3e}  {row['fidelity_ideal_ansatz']:10.4f}  "
            f"{row['fidelity_noisy_ansatz']:10.4f}  "
            f"{row['fidelity_noisy_target']:10.4f}"
        )
    return "\n".join(lines) + "\n"


def print_report(report):
    print(format_report(report))

    final = report["final"]
    if final is None:
        return
    fig = tpl.figure()
    fig.barh(
        [
            final["fidelity_ideal_ansatz"],
            final["fidelity_noisy_ansatz"],
            final["fidelity_noisy_target"],
        ],
        ["ideal ansatz", "noisy ansatz", "noisy target"],
        max_width=40,
    )
    fig.show()
