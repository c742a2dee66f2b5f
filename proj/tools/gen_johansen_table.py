"""Regenerates the asymptotic moments used for approximate Johansen p-values
(unrestricted intercept, no trend; data with linear drift) in
src/critical_values.cpp.

The limiting trace and max-eigenvalue functionals are simulated with N-step
Brownian motion discretisations for m = K - r = 1..12; the sample mean and
variance of each feed a two-parameter gamma approximation. The 5% quantile is
printed as a cross-check against the tabulated critical values.
"""
import numpy as np

N = 1000
REPS = 100_000
BATCH = 2_000


def functionals(m, rng):
    tr = np.empty(REPS)
    mx = np.empty(REPS)
    t = np.arange(N) / N
    done = 0
    while done < REPS:
        b = min(BATCH, REPS - done)
        e = rng.standard_normal((b, N, m)) / np.sqrt(N)
        w = np.cumsum(e, axis=1) - e  # W at t-1
        f = w.copy()
        f[:, :, m - 1] = t
        f -= f.mean(axis=1, keepdims=True)
        a = np.einsum('bti,btj->bij', f, e)
        bb = np.einsum('bti,btj->bij', f, f) / N
        s = np.linalg.solve(bb, a)
        stat = np.einsum('bji,bjk->bik', a, s)
        ev = np.linalg.eigvalsh(0.5 * (stat + np.transpose(stat, (0, 2, 1))))
        tr[done:done + b] = ev.sum(axis=1)
        mx[done:done + b] = ev[:, -1]
        done += b
    return tr, mx


def main():
    rng = np.random.default_rng(7)
    for m in range(1, 13):
        tr, mx = functionals(m, rng)
        print(f"    {{{m}, {tr.mean():.4f}, {tr.var():.4f}, {mx.mean():.4f}, {mx.var():.4f}}},"
              f"  // q95 trace {np.quantile(tr, .95):.3f} max {np.quantile(mx, .95):.3f}", flush=True)


if __name__ == "__main__":
    main()
