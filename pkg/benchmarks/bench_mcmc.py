#!/usr/bin/env python3
"""Throughput benchmark: compiled Metropolis core vs pure-numpy fallback.

The two backends run the identical algorithm on the identical random stream
(the fallback vectorizes across chains only, preserving the compiled loop's
pair order), so besides timing, the script cross-checks that both produce
the same chains.

Usage: python benchmarks/bench_mcmc.py [--count N] [--sizes 2,4,8,16]
"""

import argparse
import os
import sys
import time

import numpy as np


def run_once(m, alpha, count, seed, force_fallback):
    env = os.environ
    old = env.get("BURES_FORCE_FALLBACK")
    if force_fallback:
        env["BURES_FORCE_FALLBACK"] = "1"
    elif "BURES_FORCE_FALLBACK" in env:
        del env["BURES_FORCE_FALLBACK"]
    try:
        # reimport-free: backend choice is read at call time via active_backend
        from bureshall import moments, sampler
        p = moments.params_from_alpha(m, alpha)
        cfg = sampler.McmcConfig(seed=seed, chains=32)
        t0 = time.perf_counter()
        batch = sampler.sample_unconstrained(p, count, cfg)
        elapsed = time.perf_counter() - t0
        return batch, elapsed
    finally:
        if old is None:
            env.pop("BURES_FORCE_FALLBACK", None)
        else:
            env["BURES_FORCE_FALLBACK"] = old


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20000)
    ap.add_argument("--sizes", default="2,4,8,16")
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=17)
    args = ap.parse_args()

    from bureshall.sampler import compiled_available
    if not compiled_available():
        print("compiled core not built; nothing to compare", file=sys.stderr)
        return 1

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'m':>4} {'compiled':>12} {'fallback':>12} {'speedup':>9} "
          f"{'samples/s':>12}  chains match")
    for m in sizes:
        fast, t_fast = run_once(m, args.alpha, args.count, args.seed, False)
        slow, t_slow = run_once(m, args.alpha, args.count, args.seed, True)
        match = bool(np.allclose(fast.values, slow.values, rtol=0, atol=1e-10)
                     and fast.acceptance_rate == slow.acceptance_rate)
        print(f"{m:>4} {t_fast:>11.3f}s {t_slow:>11.3f}s {t_slow / t_fast:>8.1f}x "
              f"{args.count / t_fast:>12.0f}  {match}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
