"""Command-line front end: ``dirlab <subcommand> ...``.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or
configuration error, 3 capacity or budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time

import numpy as np

from . import __version__, reports
from .exceptions import BudgetExceededError, CapacityError, ConstructionError

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
DEFAULT_SIEVE = 10**6


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sieve(limit):
    from .sieve import cached_sieve

    return cached_sieve(max(int(limit), 2))


def _rng(seed, stream=0):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(stream,))))


# -- subcommands: each returns (payload, passed or None, extra outputs) -------


def cmd_sieve(args):
    if args.limit < 2:
        raise ValueError("--limit must be >= 2")
    s = _sieve(args.limit)
    payload = {
        "limit": args.limit,
        "primeCount": s.prime_count(args.limit),
        "largestPrime": int(s.primes[s.primes <= args.limit][-1]),
        "csvPath": args.dump_csv,
        "csvRows": args.limit - 1,
    }
    if args.dump_csv:
        n = np.arange(2, args.limit + 1)
        big, small, _ = s.omega_tables(args.limit)
        cols = [
            n,
            np.asarray(s.spf[2 : args.limit + 1]),
            big[2:],
            small[2:],
            s.sigma_table(args.limit)[2:],
            s.divisor_count_table(2, args.limit)[2:],
            s.divisor_count_table(3, args.limit)[2:],
        ]
        header = "n,spf,bigOmega,smallOmega,sigma,d2,d3\n"
        body = "\n".join(",".join(map(str, row)) for row in zip(*(c.tolist() for c in cols)))
        reports.write_text(header + body + "\n", args.dump_csv)
    return payload, None


def cmd_zeta_approx(args):
    from .dirichlet import ZETA_ERROR_K, zeta_approx, zeta_reference

    s = complex(args.sigma, args.t)
    approx = zeta_approx(s, args.x, args.C)
    payload = {
        "s": [args.sigma, args.t],
        "x": args.x,
        "C": args.C,
        "approx": [approx.real, approx.imag],
        "reference": None,
        "absError": None,
        "bound": ZETA_ERROR_K * args.x ** (-args.sigma),
        "pass": None,
    }
    passed = None
    if args.compare:
        ref = zeta_reference(s)
        err = abs(approx - ref)
        passed = err <= payload["bound"]
        payload.update(reference=[ref.real, ref.imag], absError=err, **{"pass": passed})
    return payload, passed


def cmd_identity_check(args):
    from .dirichlet import square_identity_f1, square_identity_f3

    if args.n < 1:
        raise ValueError("--n must be >= 1")
    m = args.m if args.which == "f3" else None
    if m is not None and not 1 <= m <= args.n:
        raise ValueError("need 1 <= --m <= --n")
    t = _rng(args.seed).uniform(-args.t_max, args.t_max, args.trials)
    if args.which == "f1":
        lhs, rhs = square_identity_f1(args.n, t)
    else:
        lhs, rhs = square_identity_f3(m, args.n, t)
    dev = np.abs(lhs - rhs) / (1 + np.abs(lhs))
    j = int(np.argmax(dev))
    passed = bool(dev[j] <= args.tol)
    payload = {
        "which": args.which,
        "n": args.n,
        "m": m,
        "trials": args.trials,
        "tolerance": args.tol,
        "maxDeviation": float(dev[j]),
        "worstT": float(t[j]),
        "pass": passed,
    }
    return payload, passed


def cmd_mean_value(args):
    from .dirichlet import DirichletPolynomial, _rule_coefficients
    from .meanvalues import mean_value_report

    P = DirichletPolynomial(_rule_coefficients(args.d, args.N), args.sigma)
    rep = mean_value_report(P, args.k, args.T, args.tol)
    return rep.to_dict(), rep.passed


def cmd_mv_check(args):
    from .meanvalues import check_suite

    out = check_suite(args.which, args.trials, args.seed)
    return out, out["failCount"] == 0


def _load_coeffs(source, N):
    from .dirichlet import _rule_coefficients

    if source.startswith("file:"):
        vals = np.loadtxt(source[5:], dtype=float, ndmin=1)
        if vals.size < N:
            raise ValueError(f"{source[5:]} has {vals.size} coefficients, need {N}")
        return vals[:N]
    return _rule_coefficients(source, N)


def cmd_sup(args):
    from .bohr import bohr_lower_bound, lift, queffelec_lower_bound, sup_estimate
    from .dirichlet import DirichletPolynomial

    if args.N < 1:
        raise ValueError("--N must be >= 1")
    s = _sieve(max(args.N, 2))
    P = DirichletPolynomial(_load_coeffs(args.coeffs, args.N), args.sigma)
    est = sup_estimate(lift(P, s), restarts=args.restarts, iterations=args.iters, seed=args.seed)
    bohr = bohr_lower_bound(P, s)
    que = []
    for m in range(1, args.queffelec_max + 1):
        c, norm = queffelec_lower_bound(P, s, m)
        que.append({"m": m, "Cm": c, "norm": norm, "bound": norm / c})
    passed = bohr <= est.lower_bound + 1e-9 and est.lower_bound <= est.upper_envelope
    payload = {
        "N": args.N,
        "sigma": args.sigma,
        "coeffs": args.coeffs,
        "estimate": est.to_dict(),
        "bohrBound": bohr,
        "queffelec": que,
        "pass": passed,
    }
    return payload, passed


def cmd_random_sup(args):
    from .random_dirichlet import halasz_ratio_study

    if not args.N_list:
        raise ValueError("--N-list is empty")
    s = _sieve(max(args.N_list))
    study = halasz_ratio_study(
        args.rule, args.N_list, args.sigma, args.trials, s, args.restarts, args.iters, args.seed, args.jobs
    )
    payload = study.to_dict()
    payload["ratioSpread"] = study.ratio_spread
    return payload, None


def cmd_rh_scan(args):
    from .criteria import grytczuk_scan, lagarias_scan, robin_scan

    top = 2 * args.to if args.criterion == "grytczuk" else args.to
    s = _sieve(top)
    scan = {"robin": robin_scan, "lagarias": lagarias_scan, "grytczuk": grytczuk_scan}[args.criterion]
    res = scan(s, args.from_, args.to)
    return res.to_dict(), not res.violations


def cmd_ca(args):
    from .criteria import colossally_abundant

    seq = colossally_abundant(args.count, verify_bound=args.verify_bound)
    payload = seq.to_dict()
    payload["verifyBound"] = args.verify_bound
    return payload, True


def cmd_divisor_moment(args):
    from .meanvalues import divisor_moment_ratio, divisor_moment_slope

    if args.nu < 1:
        raise ValueError("--nu must be >= 1")
    s = _sieve(max(args.N_list))
    rows = divisor_moment_ratio(args.nu, args.N_list, s)
    slope = divisor_moment_slope(args.nu, args.N_list, s) if len(args.N_list) > 1 else None
    if args.csv:
        reports.write_text(reports.csv_text(["N", "sum", "ratio"], rows), args.csv)
    payload = {
        "nu": args.nu,
        "rows": [{"N": N, "sum": v, "ratio": r} for N, v, r in rows],
        "slope": slope,
        "target": args.nu**2,
    }
    return payload, None


def cmd_replay(args):
    import json

    with open(args.report) as fh:
        env = json.load(fh)
    argv = env["manifest"]["argv"]
    sub = build_parser().parse_args(argv)
    payload, _ = sub.func(sub)
    fresh = reports.make_envelope(env["manifest"]["subcommand"], payload, env["manifest"]["parameters"], argv, env["manifest"]["seeds"])
    same = fresh["manifest"]["outputDigest"] == env["manifest"]["outputDigest"]
    return {"report": args.report, "digest": fresh["manifest"]["outputDigest"], "reproduced": same}, same


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dirlab", description="Numerical experiments with Dirichlet polynomials.")
    p.add_argument("--version", action="version", version=f"dirlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    def add(name, func, help_text, seeded=False):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=func, command=name)
        sp.add_argument("--out", default="-", help="report path (default stdout)")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker processes (default: all cores)")
        sp.add_argument("--timing", action="store_true", help="print wall time to stderr")
        if seeded:
            sp.add_argument("--seed", type=int, default=0)
        return sp

    sp = add("sieve", cmd_sieve, "Smallest-prime-factor sieve with Omega, omega, sigma, d_2, d_3 tables.")
    sp.add_argument("--limit", type=int, required=True)
    sp.add_argument("--dump-csv", metavar="PATH", help="CSV with columns n,spf,bigOmega,smallOmega,sigma,d2,d3")

    sp = add("zeta-approx", cmd_zeta_approx, "Truncated zeta sum with the x^{1-s}/(1-s) correction (Hardy-Littlewood approximation), checked against Euler-Maclaurin.")
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--t", type=float, required=True)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--C", type=float, default=4.0, help="validity window |t| <= 2 pi x / C")
    sp.add_argument("--compare", action="store_true", help="compare against the Euler-Maclaurin reference")

    sp = add("identity-check", cmd_identity_check, "Exact square identities for the zeta approximant on the critical line.", seeded=True)
    sp.add_argument("--which", choices=["f1", "f3"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--t-max", type=float, default=100.0)
    sp.add_argument("--tol", type=float, default=1e-9)

    sp = add("mean-value", cmd_mean_value, "Mean of |P|^{2k} over [-T, T] against the diagonal limit (Montgomery-Vaughan mean value theorem).")
    sp.add_argument("--d", choices=["unit", "rs"], default="unit")
    sp.add_argument("--sigma", type=float, default=0.5)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--T", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-10)

    sp = add(
        "mv-check",
        cmd_mv_check,
        "Randomized checks: Montgomery-Vaughan (prop2), higher moments via linear spacing (prop3), "
        "Montgomery majorant principle (majorization), Ingham-Mordell (ingham), Fourier square function (sqfn).",
        seeded=True,
    )
    sp.add_argument("--which", choices=["prop2", "prop3", "majorization", "ingham", "sqfn"], required=True)
    sp.add_argument("--trials", type=int, default=100)

    sp = add("sup", cmd_sup, "Supremum via the Bohr lift to the torus, with Bohr's and Queffelec's lower bounds.", seeded=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--sigma", type=float, default=0.0)
    sp.add_argument("--coeffs", default="unit", help="unit | rs | file:PATH")
    sp.add_argument("--restarts", type=int, default=16)
    sp.add_argument("--iters", type=int, default=8)
    sp.add_argument("--queffelec-max", type=int, default=3)

    sp = add("random-sup", cmd_random_sup, "Expected suprema of Rademacher Dirichlet polynomials (Halasz-Queffelec band) with the cell lower bound and the three-regime upper bound.", seeded=True)
    sp.add_argument("--rule", default="unit", help="unit | coprime:K | lambda:L | smooth:TAU")
    sp.add_argument("--N-list", type=_int_list, required=True)
    sp.add_argument("--sigma", type=float, default=0.0)
    sp.add_argument("--trials", type=int, default=32)
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--iters", type=int, default=4)

    sp = add("rh-scan", cmd_rh_scan, "Scan Robin's, Lagarias's or Grytczuk's divisor-sum inequality over a range.")
    sp.add_argument("--criterion", choices=["robin", "lagarias", "grytczuk"], required=True)
    sp.add_argument("--from", dest="from_", type=int, required=True)
    sp.add_argument("--to", type=int, required=True)

    sp = add("ca", cmd_ca, "Colossally abundant numbers (Alaoglu-Erdos), each verified against its defining inequality.")
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--verify-bound", type=int, default=10**7)

    sp = add("divisor-moment", cmd_divisor_moment, "Growth of sum_{m<=N} d_nu(m)^2/m against (log N)^{nu^2}.")
    sp.add_argument("--nu", type=int, required=True)
    sp.add_argument("--N-list", type=_int_list, required=True)
    sp.add_argument("--csv", metavar="PATH", help="CSV with columns N,sum,ratio")

    sp = add("replay", cmd_replay, "Re-run the command recorded in a report's manifest and compare digests.")
    sp.add_argument("report")
    return p


_NON_PARAMS = {"func", "out", "timing", "command", "jobs"}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    start = time.perf_counter()
    try:
        payload, passed = args.func(args)
        if args.command != "replay":
            params = {k: v for k, v in vars(args).items() if k not in _NON_PARAMS}
            seeds = [args.seed] if hasattr(args, "seed") else []
            # the manifest replays without --out/--jobs/--timing, which never change the payload
            replay_argv = _strip_volatile(argv)
            env = reports.make_envelope(args.command, payload, params, replay_argv, seeds)
            reports.validate(env, args.command)
            payload_text = reports.canonical_json(env) + "\n"
        else:
            payload_text = reports.canonical_json(payload) + "\n"
        reports.write_text(payload_text, args.out)
    except (CapacityError, BudgetExceededError) as exc:
        print(f"dirlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConstructionError as exc:
        print(f"dirlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"dirlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        print(f"wall time {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return EXIT_CHECK if passed is False else EXIT_OK


def _strip_volatile(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
            continue
        if a in ("--out", "--jobs"):
            skip = True
            continue
        if a.startswith(("--out=", "--jobs=")) or a == "--timing":
            continue
        out.append(a)
    return out


if __name__ == "__main__":
    sys.exit(main())
