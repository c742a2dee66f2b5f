"""Regenerates the Dickey-Fuller (constant, no trend) quantile response surfaces
embedded in src/critical_values.cpp.

For each sample size n the t-ratio on y_{t-1} in dy_t = a + g*y_{t-1} + e_t is
simulated under a driftless Gaussian random walk; quantiles at a fixed
probability grid are then regressed on (1, 1/n, 1/n^2).
"""
import numpy as np

PROBS = [0.0005, 0.001, 0.0025, 0.005, 0.01, 0.025, 0.05, 0.075, 0.10, 0.15,
         0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65, 0.70,
         0.75, 0.80, 0.85, 0.90, 0.925, 0.95, 0.975, 0.99, 0.995, 0.999]
SIZES = [20, 25, 30, 35, 40, 50, 60, 80, 100, 150, 200, 300, 500, 1000]
REPS = 1_000_000
BATCH = 25_000


def df_tstats(n, reps, rng):
    out = np.empty(reps)
    done = 0
    while done < reps:
        b = min(BATCH, reps - done)
        e = rng.standard_normal((b, n + 1))
        y = np.cumsum(e, axis=1)
        x = y[:, :-1]
        dy = np.diff(y, axis=1)
        xc = x - x.mean(axis=1, keepdims=True)
        dc = dy - dy.mean(axis=1, keepdims=True)
        sxx = np.einsum('ij,ij->i', xc, xc)
        sxy = np.einsum('ij,ij->i', xc, dc)
        syy = np.einsum('ij,ij->i', dc, dc)
        g = sxy / sxx
        s2 = (syy - g * sxy) / (n - 2)
        out[done:done + b] = g / np.sqrt(s2 / sxx)
        done += b
    return out


def main():
    rng = np.random.default_rng(20240601)
    q = np.empty((len(SIZES), len(PROBS)))
    for i, n in enumerate(SIZES):
        q[i] = np.quantile(df_tstats(n, REPS, rng), PROBS)
    X = np.column_stack([np.ones(len(SIZES)), 1.0 / np.array(SIZES), 1.0 / np.array(SIZES) ** 2])
    coef, *_ = np.linalg.lstsq(X, q, rcond=None)
    for j, p in enumerate(PROBS):
        print(f"    {{{p}, {coef[0, j]:.5f}, {coef[1, j]:.4f}, {coef[2, j]:.3f}}},")


if __name__ == "__main__":
    main()
