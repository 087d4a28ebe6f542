"""Command line front end.

Exit codes: 0 when every check passes, 1 when any verification fails, 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from contextlib import nullcontext
from concurrent.futures import ProcessPoolExecutor, as_completed

from . import classical, qseries, spectral
from .report import VerificationReport, reports_to_csv
from .valuation import slope_p11, slope_weight0

JOBS_ENV = "OVERSLOPES_JOBS"
CI_KMAX = 512
LONG_KMAX = 2048

SUITES = ("adb", "integrality", "minors", "selfadjoint", "nplemma", "appendix", "ufcross")


class UsageError(Exception):
    pass


def _default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None


def _emit(reports, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(reports_to_csv(reports))
    else:
        for r in reports:
            out.write(r.to_json() + "\n")
    out.flush()


def _stream(reports, fmt: str, out) -> list[VerificationReport]:
    """Write reports as they arrive (JSON) or all at once (CSV)."""
    seen = []
    for r in reports:
        seen.append(r)
        if fmt == "json":
            out.write(r.to_json() + "\n")
            out.flush()
    if fmt == "csv":
        _emit(seen, fmt, out)
    return seen


def _run_pool(fn, args, jobs: int, ordered: bool):
    if jobs <= 1:
        for a in args:
            yield fn(a)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        if ordered:
            yield from pool.map(fn, args)
        else:
            futures = [pool.submit(fn, a) for a in args]
            for fut in as_completed(futures):
                yield fut.result()


def _open_out(path):
    return open(path, "w") if path and path != "-" else nullcontext(sys.stdout)


# --------------------------------------------------------------------------
# commands


def _weights(ns) -> list[int]:
    if ns.k:
        ks = list(ns.k)
    else:
        hi = ns.to if ns.to is not None else (LONG_KMAX if ns.long else CI_KMAX)
        lo = ns.from_ if ns.from_ is not None else 12
        if ns.step < 1:
            raise UsageError("--step must be positive")
        ks = list(range(lo, hi + 1, ns.step))
    if not ks:
        raise UsageError("empty weight range")
    for k in ks:
        if k < 12 or k % 2:
            raise UsageError(f"weight {k} is not an even integer >= 12")
        if k > CI_KMAX and not ns.long:
            raise UsageError(f"weight {k} exceeds {CI_KMAX}; pass --long for the extended sweep")
    return ks


def cmd_verify_classical(ns) -> int:
    ks = _weights(ns)
    jobs = ns.jobs if ns.jobs is not None else _default_jobs()
    with _open_out(ns.output) as out:
        reports = _stream(_run_pool(classical.verify_conjecture1, ks, jobs, ns.ordered), ns.format, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_slopes(ns) -> int:
    if ns.count < 1:
        raise UsageError("--count must be >= 1")
    with _open_out(ns.output) as out:
        if ns.p11:
            out.write("n\tpredicted\n")
            for n in range(1, ns.count + 1):
                out.write(f"{n}\t{slope_p11(n)}\n")
            return 0
        try:
            computed = spectral.spectral_slopes(ns.count, cap=ns.cap)
        except spectral.StabilizationError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        size = computed.certificate["N"]
        out.write("n\tpredicted\tcomputed\tN\n")
        ok = True
        for n, s in enumerate(computed.as_ints(), start=1):
            pred = slope_weight0(n)
            ok = ok and pred == s
            out.write(f"{n}\t{pred}\t{s}\t{size}\n")
    return 0 if ok else 1


def _suite_reports(name: str, ns):
    if name == "adb":
        yield spectral.verify_adb_grid(ns.nmax or 60)
    elif name == "integrality":
        yield spectral.verify_integrality(ns.nmax or 200)
    elif name == "minors":
        yield spectral.verify_minor_identities(ns.nmax or 40)
    elif name == "selfadjoint":
        yield spectral.verify_selfadjoint(ns.nmax or 60)
    elif name == "nplemma":
        for n in range(1, (ns.nmax or 8) + 1):
            for seed in range(ns.seeds):
                yield spectral.np_lemma_check(n, seed)
    elif name == "appendix":
        yield from qseries.appendix_identities(ns.prec or 200)
    elif name == "ufcross":
        yield spectral.verify_uf_cross(ns.kmax)


def cmd_suite(ns) -> int:
    names = list(SUITES) if "all" in ns.names else ns.names
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; choose from {', '.join(SUITES)} or all")
    with _open_out(ns.output) as out:
        reports = _stream((r for n in names for r in _suite_reports(n, ns)), ns.format, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_qexp(ns) -> int:
    if ns.series not in qseries.NAMED_SERIES:
        raise UsageError(f"unknown series {ns.series!r}; choose from {', '.join(qseries.NAMED_SERIES)}")
    if ns.terms < 0:
        raise UsageError("--terms must be >= 0")
    s = qseries.named_series(ns.series, ns.terms)
    with _open_out(ns.output) as out:
        out.write(qseries.dump_series(s))
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="overslopes", description="2-adic slope verification")
    sub = p.add_subparsers(dest="command", required=True)

    def report_opts(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--output", "-o", default="-")

    v = sub.add_parser("verify-classical", help="compare det(1 - X T_2) with the product formula")
    v.add_argument("--k", type=int, action="append", help="single weight (repeatable)")
    v.add_argument("--from", dest="from_", type=int)
    v.add_argument("--to", type=int)
    v.add_argument("--step", type=int, default=2)
    v.add_argument("--long", action="store_true", help=f"allow weights up to {LONG_KMAX}")
    v.add_argument("--jobs", "-j", type=int, help=f"worker processes (default ${JOBS_ENV} or 1)")
    v.add_argument("--ordered", action="store_true", help="emit reports in weight order")
    report_opts(v)
    v.set_defaults(func=cmd_verify_classical)

    s = sub.add_parser("slopes", help="slope table")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight0", action="store_true")
    g.add_argument("--p11", action="store_true")
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--cap", type=int, default=1024, help="largest truncation tried")
    s.add_argument("--output", "-o", default="-")
    s.set_defaults(func=cmd_slopes)

    t = sub.add_parser("suite", help="run verification sweeps")
    t.add_argument("names", nargs="+", metavar="NAME", help=f"{', '.join(SUITES)} or all")
    t.add_argument("--nmax", type=int)
    t.add_argument("--prec", type=int)
    t.add_argument("--seeds", type=int, default=10)
    t.add_argument("--kmax", type=int, default=24)
    report_opts(t)
    t.set_defaults(func=cmd_suite)

    q = sub.add_parser("qexp", help="dump a q-expansion as n<TAB>num/den lines")
    q.add_argument("series", help=", ".join(qseries.NAMED_SERIES))
    q.add_argument("--terms", type=int, default=20)
    q.add_argument("--output", "-o", default="-")
    q.set_defaults(func=cmd_qexp)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except UsageError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
