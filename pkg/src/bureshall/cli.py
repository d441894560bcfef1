"""Command-line surface: moments, verify, sample, distribution, oracle.

Exit codes: 0 all checks pass, 1 numerical check failure, 2 sampler/tuning
failure, 64 usage error.  All structured output is JSON, all bulk output is
CSV with '#'-prefixed manifest header lines; bodies are byte-identical for
identical command lines (including seed).
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, closedforms, identities, kernels, moments, sampler
from .errors import BuresHallError, SingularParameterError, TuningError
from .reports import RunManifest, write_csv, write_json

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_TUNING = 2
EXIT_USAGE = 64

VERIFY_ALPHAS = (-0.5, 0.5, 1.5, 2.5, 1.25, 2.75)
KERNEL_CONTEXTS = ((1, 0.0), (2, 0.5), (2, -0.5), (3, 0.5))
SAMPLER_PAIRS = ((2, 2), (2, 3))


def worker_count() -> int:
    env = os.environ.get("BURES_THREADS", "")
    cap = int(env) if env.strip() else os.cpu_count() or 1
    return max(1, min(cap, os.cpu_count() or 1))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _params(args):
    if args.n is not None:
        return moments.params_from_dims(args.m, args.n)
    if args.alpha is not None:
        return moments.params_from_alpha(args.m, args.alpha)
    raise BuresHallError("either --n or --alpha is required")


# -- moments -------------------------------------------------------------------

def cmd_moments(args) -> int:
    p = _params(args)
    doc = {
        "m": p.m, "alpha": p.alpha, "d": p.d,
        "log_c": p.log_c, "log_c_prime": p.log_c_prime,
        "induced_mean_T": moments.induced_mean_T(p),
        "induced_variance_T": moments.induced_variance_T(p),
    }
    if p.physical:
        doc["n"] = p.n
        doc["mean_entropy"] = moments.mean_entropy(p)
        doc["variance_entropy"] = moments.variance_entropy(p)
        specialized = moments.induced_variance_T_physical(p)
        resid = abs(doc["induced_variance_T"] - specialized) / max(1.0, abs(specialized))
        doc["tv_specialization_residual"] = resid
        doc["tv_specialization_ok"] = bool(resid <= 1e-12)
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        write_json(args.out, _manifest("moments", args), doc)
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def _verify_identities(args):
    tol = args.tol if args.tol is not None else 1e-11
    rows = []

    def run_one(iid):
        out = []
        for idx, case in enumerate(identities.random_cases(iid, args.cases, args.seed)):
            out.append((iid, idx, case.m,
                        "" if case.a is None else case.a,
                        "" if case.b is None else case.b,
                        "" if case.alpha is None else case.alpha,
                        "" if case.i is None else case.i,
                        "" if case.s is None else case.s,
                        identities.identity_residual(case)))
        return out

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        for chunk in pool.map(run_one, identities.IDENTITY_IDS):
            rows.extend(chunk)
    worst = max(r[-1] for r in rows)
    failures = [r for r in rows if r[-1] > tol]
    summary = {"suite": "identities", "cases": len(rows), "tolerance": tol,
               "max_residual": worst, "failures": len(failures),
               "passed": not failures}
    header = ["identity", "case", "m", "a", "b", "alpha", "i", "s", "residual"]
    return rows, header, summary


def _verify_closedforms(args):
    tol = args.tol if args.tol is not None else 1e-9
    rows, failures = [], 0
    for m in range(1, 11):
        for alpha in VERIFY_ALPHAS:
            exact = moments.induced_variance_T(moments.params_from_alpha(m, alpha))
            cancel = closedforms.sum_block_cancels(m, alpha)
            try:
                bundle = closedforms.assemble_variance(m, alpha)
            except SingularParameterError:
                rows.append((m, alpha, "", exact, "", cancel, "singular"))
                if not cancel:
                    failures += 1
                continue
            resid = abs(bundle.v_h_t - exact) / abs(exact)
            ok = resid <= tol and cancel
            failures += 0 if ok else 1
            rows.append((m, alpha, bundle.v_h_t, exact, resid, cancel,
                         "ok" if ok else "FAIL"))
    summary = {"suite": "closedforms", "grid_points": len(rows), "tolerance": tol,
               "failures": failures, "passed": failures == 0}
    header = ["m", "alpha", "assembled", "exact", "rel_residual",
              "sum_block_cancels", "status"]
    return rows, header, summary


def _verify_kernels(args):
    tol = args.tol if args.tol is not None else 1e-6
    contexts = [(args.m, args.alpha)] if args.m and args.alpha is not None \
        else list(KERNEL_CONTEXTS)
    rows, failures = [], 0

    def add(m, alpha, quantity, got, want, tolerance):
        nonlocal failures
        resid = abs(got - want) / max(1.0, abs(want))
        ok = resid <= tolerance
        failures += 0 if ok else 1
        rows.append((m, alpha, quantity, got, want, resid, "ok" if ok else "FAIL"))

    for m, alpha in contexts:
        ctx = kernels.build_context(m, alpha)
        add(m, alpha, "biorthogonality", ctx.biorthogonality_residual, 0.0, 1e-8)
        res = kernels.oracle_integrals(ctx)
        p = moments.params_from_alpha(m, alpha)
        add(m, alpha, "e_h_t", res.e_h_t, moments.induced_mean_T(p), 1e-7)
        add(m, alpha, "variance_from_quadrature",
            res.e_h_t2 - res.e_h_t**2, moments.induced_variance_T(p), 1e-6)
        norms = kernels.density_normalizations(ctx)
        add(m, alpha, "h1_norm", norms["h1_norm"], 1.0, 1e-8)
        add(m, alpha, "h1_first_moment", norms["h1_mean"], p.d, 1e-7)
        if m >= 2:
            add(m, alpha, "h2_norm", norms["h2_norm"], 1.0, 1e-6)
            add(m, alpha, "h2_marginal", norms["h2_marginal_maxdev"], 0.0, 1e-6)
        try:
            add(m, alpha, "i_a", res.i_a, closedforms.closed_form_IA(m, alpha), tol)
            add(m, alpha, "i_bc", res.i_b + res.i_c,
                closedforms.closed_form_IBC(m, alpha), tol)
        except SingularParameterError:
            pass
        add(m, alpha, "i_d", res.i_d, closedforms.closed_form_ID(m, alpha), tol)
    summary = {"suite": "kernels", "checks": len(rows), "tolerance": tol,
               "failures": failures, "passed": failures == 0}
    header = ["m", "alpha", "quantity", "value", "reference", "residual", "status"]
    return rows, header, summary


def _verify_samplers(args):
    count = args.count or 20000
    rows, failures = [], 0

    def add(m, n, quantity, delta_se, limit=3.0, invert=False):
        nonlocal failures
        ok = delta_se > limit if invert else delta_se <= limit
        failures += 0 if ok else 1
        rows.append((m, n, quantity, delta_se, "ok" if ok else "FAIL"))

    for m, n in SAMPLER_PAIRS:
        p = moments.params_from_dims(m, n)
        cfg = sampler.McmcConfig(seed=args.seed, chains=32)
        raw = sampler.sample_unconstrained(p, count, cfg)
        theta = raw.spectra.sum(axis=1)
        add(m, n, "trace_mean",
            abs(theta.mean() - p.d) / (theta.std(ddof=1) / math.sqrt(count)))
        mc = sampler.to_constrained(raw)
        mat = sampler.sample_matrix_model(m, n, count, seed=args.seed + 1)
        for batch, name in ((mc, "mcmc"), (mat, "matrix")):
            rep = sampler.summarize(batch, p)
            add(m, n, f"{name}_mean",
                abs(rep.mean - moments.mean_entropy(p)) / rep.se_mean)
            add(m, n, f"{name}_variance",
                abs(rep.variance - moments.variance_entropy(p)) / rep.se_variance)
        _, pvalue = sampler.two_sample_ks(mc.values, mat.values)
        add(m, n, "cross_sampler_ks_pvalue", pvalue, limit=0.01, invert=True)
    summary = {"suite": "samplers", "checks": len(rows), "count": count,
               "failures": failures, "passed": failures == 0}
    header = ["m", "n", "quantity", "value", "status"]
    return rows, header, summary


_SUITES = {
    "identities": _verify_identities,
    "closedforms": _verify_closedforms,
    "kernels": _verify_kernels,
    "samplers": _verify_samplers,
}


def cmd_verify(args) -> int:
    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    all_passed = True
    summaries = []
    for name in suites:
        rows, header, summary = _SUITES[name](args)
        man = _manifest(f"verify {name}", args)
        write_csv(os.path.join(args.out_dir, f"verify_{name}.csv"), man, header, rows)
        write_json(os.path.join(args.out_dir, f"verify_{name}.json"), man, summary)
        summaries.append(summary)
        all_passed = all_passed and summary["passed"]
    print(json.dumps({"suites": summaries, "passed": all_passed},
                     indent=2, sort_keys=True))
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


# -- sample / distribution ------------------------------------------------------

def _sample_batch(m, n, count, seed, method):
    if method == "matrix":
        return sampler.sample_matrix_model(m, n, count, seed=seed)
    p = moments.params_from_dims(m, n)
    raw = sampler.sample_unconstrained(p, count, sampler.McmcConfig(seed=seed))
    return sampler.to_constrained(raw)


def cmd_sample(args) -> int:
    if args.count < 100:
        raise BuresHallError("count must be at least 100")
    batch = _sample_batch(args.m, args.n, args.count, args.seed, args.method)
    p = batch.params
    rep = sampler.summarize(batch, p)
    exact_mean = moments.mean_entropy(p)
    exact_var = moments.variance_entropy(p)
    doc = {
        "m": args.m, "n": args.n, "count": rep.count, "method": args.method,
        "mean": rep.mean, "variance": rep.variance, "skewness": rep.skewness,
        "se_mean": rep.se_mean, "se_variance": rep.se_variance,
        "ks_statistic": rep.ks_statistic, "degenerate": rep.degenerate,
        "exact_mean": exact_mean, "exact_variance": exact_var,
        "acceptance_rate": batch.acceptance_rate, "backend": batch.backend,
        "rhat": batch.rhat,
        "converged": bool(batch.rhat is None or math.isnan(batch.rhat)
                          or batch.rhat <= 1.05),
        "mean_delta_se": (abs(rep.mean - exact_mean) / rep.se_mean
                          if rep.se_mean > 0 else 0.0),
        "variance_delta_se": (abs(rep.variance - exact_var) / rep.se_variance
                              if rep.se_variance > 0 else 0.0),
    }
    man = _manifest("sample", args, ensemble=f"m={args.m},n={args.n}")
    if args.out:
        write_csv(args.out, man, ["value"], ([v] for v in batch.values),
                  extra=[f"# ensemble=m={args.m},n={args.n}"])
    if args.report:
        write_json(args.report, man, doc)
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_distribution(args) -> int:
    batch = _sample_batch(args.m, args.n, args.count, args.seed, args.method)
    z = moments.standardize(batch.values, batch.params)
    density, edges = np.histogram(z, bins=args.bins, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    gauss = np.exp(-0.5 * centers**2) / math.sqrt(2.0 * math.pi)
    man = _manifest("distribution", args, ensemble=f"m={args.m},n={args.n}")
    rows = zip(centers.tolist(), density.tolist(), gauss.tolist())
    write_csv(args.out, man, ["bin_center", "empirical_density", "gaussian_density"], rows)
    print(json.dumps({"out": args.out, "bins": int(args.bins),
                      "count": int(args.count)}, sort_keys=True))
    return EXIT_OK


# -- oracle ----------------------------------------------------------------------

def cmd_oracle(args) -> int:
    tol = args.tol if args.tol is not None else 1e-6
    ctx = kernels.build_context(args.m, args.alpha)
    res = kernels.oracle_integrals(ctx)
    p = moments.params_from_alpha(args.m, args.alpha)
    doc = {
        "m": args.m, "alpha": args.alpha,
        "biorthogonality_residual": ctx.biorthogonality_residual,
        "i_a": res.i_a, "i_b": res.i_b, "i_c": res.i_c, "i_d": res.i_d,
        "e_h_t": res.e_h_t, "e_h_t2": res.e_h_t2,
        "error_estimates": res.errors, "flags": list(res.flags),
        "exact_induced_mean": moments.induced_mean_T(p),
        "exact_induced_variance": moments.induced_variance_T(p),
    }
    worst = 0.0
    try:
        doc["closed_form_i_a"] = closedforms.closed_form_IA(args.m, args.alpha)
        doc["closed_form_i_bc"] = closedforms.closed_form_IBC(args.m, args.alpha)
        worst = max(worst,
                    abs(res.i_a - doc["closed_form_i_a"]) / abs(doc["closed_form_i_a"]),
                    abs(res.i_b + res.i_c - doc["closed_form_i_bc"])
                    / abs(doc["closed_form_i_bc"]))
    except SingularParameterError:
        doc["closed_form_i_a"] = None
        doc["closed_form_i_bc"] = None
    doc["closed_form_i_d"] = closedforms.closed_form_ID(args.m, args.alpha)
    worst = max(worst, abs(res.i_d - doc["closed_form_i_d"])
                / max(1.0, abs(doc["closed_form_i_d"])))
    doc["worst_relative_deviation"] = worst
    doc["passed"] = bool(worst <= tol)
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.out:
        write_json(args.out, _manifest("oracle", args), doc)
    return EXIT_OK if doc["passed"] else EXIT_CHECK_FAILED


# -- wiring ----------------------------------------------------------------------

def _manifest(command, args, **extra):
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "seed") and v is not None}
    params.update(extra)
    return RunManifest(command=command, params=params,
                       seed=getattr(args, "seed", None))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bureshall",
                     description="Bures-Hall entropy moments: exact formulas, "
                                 "verification suites, and Monte Carlo sampling")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("moments", help="exact moment formulas at (m, n) or (m, alpha)")
    pm.add_argument("--m", type=int, required=True)
    pm.add_argument("--n", type=int)
    pm.add_argument("--alpha", type=float)
    pm.add_argument("--out", help="also write the JSON report here")
    pm.set_defaults(func=cmd_moments)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=[*_SUITES, "all"])
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--cases", type=int, default=500,
                    help="random cases per identity (identities suite)")
    pv.add_argument("--count", type=int, help="samples per batch (samplers suite)")
    pv.add_argument("--tol", type=float, help="override the suite tolerance")
    pv.add_argument("--m", type=int, help="restrict the kernels suite to one context")
    pv.add_argument("--alpha", type=float)
    pv.add_argument("--out-dir", default=".")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("sample", help="draw an entropy batch and report moments")
    ps.add_argument("--m", type=int, required=True)
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--count", type=int, required=True)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--method", choices=["mcmc", "matrix"], default="mcmc")
    ps.add_argument("--out", help="batch CSV path")
    ps.add_argument("--report", help="JSON report path")
    ps.set_defaults(func=cmd_sample)

    pd = sub.add_parser("distribution",
                        help="histogram of the standardized entropy vs the Gaussian")
    pd.add_argument("--m", type=int, required=True)
    pd.add_argument("--n", type=int, required=True)
    pd.add_argument("--count", type=int, required=True)
    pd.add_argument("--bins", type=int, default=60)
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--method", choices=["mcmc", "matrix"], default="mcmc")
    pd.add_argument("--out", required=True)
    pd.set_defaults(func=cmd_distribution)

    po = sub.add_parser("oracle", help="kernel quadrature oracle vs closed forms")
    po.add_argument("--m", type=int, required=True)
    po.add_argument("--alpha", type=float, required=True)
    po.add_argument("--tol", type=float)
    po.add_argument("--out")
    po.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TuningError as exc:
        print(f"bureshall: tuning failure: {exc}", file=sys.stderr)
        return EXIT_TUNING
    except BuresHallError as exc:
        print(f"bureshall: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
