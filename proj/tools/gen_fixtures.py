"""Synthetic country panels for data/fixtures.

Each panel is simulated from a VAR(2) with the coefficient matrices of the
corresponding country model (levels: hdi, gov_exp_health, gov_exp_edu),
Gaussian noise with the reported equation standard errors and lag-0 residual
correlations, and a fixed seed. A few interior cells are blanked to exercise
gap filling. Output years 1992-2024.
"""

import csv
import pathlib

import numpy as np

SEED = 20240601
YEARS = list(range(1992, 2025))

_E2 = 8.7695e-5
_E1 = _E2 * 0.0827 / 2.1428

MODELS = {
    "bangladesh": dict(
        A1=[[0.8518, -0.0142, _E1], [-0.0526, 0.9870, 0.0001], [-1251.811, 80.2312, 0.4697]],
        A2=[[0.1196, 0.0051, _E2], [0.9226, -0.3488, 0.0004], [1194.255, -4.4162, 0.2109]],
        c=[0.0398, 0.2884, -96.5367],
        sd=[0.0040, 0.0609, 16.5207],
        corr=(0.076, -0.054, 0.0),
        start=[0.45, 2.0, 91.4],
        gaps={"gov_exp_edu": [1999, 2010], "hdi": [2005]},
    ),
    "india": dict(
        A1=[[1.169710, 0.000760, -0.000220], [-0.853283, 0.985286, 0.007740], [-50.07129, 0.214592, 0.392616]],
        A2=[[-0.153113, 0.005527, 0.000094], [-0.747140, -0.316836, -0.000371], [85.98501, 0.129737, -0.287181]],
        c=[-0.014017, 1.348080, 65.35003],
        sd=[0.0036, 0.1669, 1.7268],
        corr=(-0.122, 0.163, 0.0),
        start=[0.50, 3.8, 94.6],
        gaps={"gov_exp_health": [2001], "gov_exp_edu": [2015, 2016]},
    ),
    "pakistan": dict(
        A1=[[1.208064, -0.010693, 0.000116], [6.447433, 1.034967, -0.003323], [31.42752, 5.770959, 0.402232]],
        A2=[[-0.169124, 0.008712, -0.000357], [-5.071416, -0.364369, -0.002477], [88.57343, -7.172539, -0.104233]],
        c=[0.006860, 0.560176, -5.174003],
        sd=[0.0040, 0.1346, 2.3192],
        corr=(-0.073, 0.233, 0.0),
        start=[0.40, 2.4, 56.2],
        gaps={"hdi": [1997], "gov_exp_edu": [2008]},
    ),
}

COLUMNS = ["hdi", "gov_exp_health", "gov_exp_edu"]


def simulate(model, rng):
    A1, A2, c = (np.array(model[k], dtype=float) for k in ("A1", "A2", "c"))
    sd = np.array(model["sd"])
    r01, r02, r12 = model["corr"]
    corr = np.array([[1, r01, r02], [r01, 1, r12], [r02, r12, 1]])
    chol = np.linalg.cholesky(np.diag(sd) @ corr @ np.diag(sd))
    y = [np.array(model["start"]), np.array(model["start"])]
    while len(y) < len(YEARS):
        y.append(c + A1 @ y[-1] + A2 @ y[-2] + chol @ rng.standard_normal(3))
    return np.array(y)


def main():
    out_dir = pathlib.Path(__file__).resolve().parent.parent / "data" / "fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, (country, model) in enumerate(MODELS.items()):
        rng = np.random.default_rng(SEED + i)
        y = simulate(model, rng)
        assert (y[:, 0] >= 0).all() and (y[:, 0] <= 1).all(), country
        with open(out_dir / f"{country}.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["year"] + COLUMNS)
            for t, year in enumerate(YEARS):
                row = [year]
                for k, name in enumerate(COLUMNS):
                    row.append("" if year in model["gaps"].get(name, []) else f"{y[t, k]:.6f}")
                w.writerow(row)
        print(country, "hdi", y[0, 0].round(3), "->", y[-1, 0].round(3))


if __name__ == "__main__":
    main()
