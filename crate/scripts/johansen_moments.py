"""Simulate the asymptotic trace and max-eigenvalue statistics of the
Johansen test (unrestricted intercept, linear trend in levels) for
m = 1..12 stochastic trends and report their first two moments.

The moments parameterise the gamma approximation used for p-values.
"""
import numpy as np

STEPS = 500
REPS = 200_000
CHUNK = 4_000
MAX_M = 12


def stats(rng, m, reps):
    eps = rng.standard_normal((reps, STEPS, m))
    w = np.cumsum(eps, axis=1)
    # F_{t-1}: lagged Brownian motions with the last one replaced by a trend
    f = np.zeros((reps, STEPS, m))
    f[:, 1:, : m - 1] = w[:, :-1, : m - 1]
    f[:, :, m - 1] = np.arange(STEPS, dtype=float)[None, :]
    f -= f.mean(axis=1, keepdims=True)
    s = np.einsum("rti,rtj->rij", f, eps)
    q = np.einsum("rti,rtj->rij", f, f)
    mm = np.einsum("rji,rjk->rik", s, np.linalg.solve(q, s))
    mm = 0.5 * (mm + np.transpose(mm, (0, 2, 1)))
    ev = np.linalg.eigvalsh(mm)
    return ev.sum(axis=1), ev[:, -1]


def main():
    rng = np.random.default_rng(20240101)
    print("// Generated by scripts/johansen_moments.py; do not edit by hand.")
    print(f"// {REPS} replications, {STEPS} steps. (m, trace mean, trace var, max mean, max var)")
    for m in range(1, MAX_M + 1):
        tr, mx = [], []
        for _ in range(REPS // CHUNK):
            a, b = stats(rng, m, CHUNK)
            tr.append(a)
            mx.append(b)
        tr = np.concatenate(tr)
        mx = np.concatenate(mx)
        print(f"    ({m}, {tr.mean():.4f}, {tr.var():.4f}, {mx.mean():.4f}, {mx.var():.4f}),"
              f" // q95 trace {np.quantile(tr, 0.95):.3f} max {np.quantile(mx, 0.95):.3f}")


if __name__ == "__main__":
    main()
