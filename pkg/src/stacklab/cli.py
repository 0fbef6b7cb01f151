"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 safety bound
exceeded, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import asym, combinat, genfun
from .combinat import StackVariant
from .errors import NumericError, SafetyBoundError, StackLabError, UsageError
from .genfun import IdentityTag, Variant
from .series_core import PowerSeries

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND, EXIT_IO = 0, 1, 2, 3, 4

TABLE_ORDER = ["s", "ss", "g", "gs", "h", "hs", "d", "dm", "fphi", "f0", "p"]
_WITH_SUMMITS = {"s": "ss", "g": "gs", "h": "hs"}


class _IOFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    format: str = "text"
    cache_dir: Path | None = None
    force_recompute: bool = False
    safety_override: bool = False
    out: str | None = None


def default_cache_dir() -> Path:
    env = os.environ.get("STACKLAB_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "stacklab"


# ---------------------------------------------------------------------------
# coefficient cache


def cached_series(v: Variant, order: int, cfg: RunConfig) -> PowerSeries:
    """Series for ``v`` to ``order``, read from or written to the cache.

    One file per variant; a longer series supersedes a shorter one.
    """
    path = (cfg.cache_dir or default_cache_dir()) / f"{v.value}.json"
    if not cfg.force_recompute and path.exists():
        try:
            stored = PowerSeries.from_json(path.read_text(encoding="utf-8"))
            if stored.order >= order:
                return stored.truncate(order)
        except (OSError, ValueError, KeyError):
            pass
    s = genfun.series(v, order)
    _store(path, s, cfg)
    return s


def _store(path: Path, s: PowerSeries, cfg: RunConfig) -> None:
    try:
        if path.exists() and not cfg.force_recompute:
            old = PowerSeries.from_json(path.read_text(encoding="utf-8"))
            if old.order > s.order:
                return
    except (OSError, ValueError, KeyError):
        pass
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(s.to_json())
        os.replace(tmp, path)
    except OSError as exc:
        print(f"warning: cache not written ({exc})", file=sys.stderr)


# ---------------------------------------------------------------------------
# output


def emit(rows: list[dict], cfg: RunConfig, columns: list[str] | None = None) -> None:
    columns = columns or (list(rows[0]) if rows else [])
    if cfg.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif cfg.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    else:
        widths = {c: max([len(c)] + [len(str(r.get(c, ""))) for r in rows]) for c in columns}
        lines = ["  ".join(c.rjust(widths[c]) for c in columns)]
        lines += ["  ".join(str(r.get(c, "")).rjust(widths[c]) for c in columns) for r in rows]
        text = "\n".join(lines) + "\n"
    write_text(text, cfg)


def write_text(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise _IOFailure(str(exc)) from exc
    else:
        sys.stdout.write(text)


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def oracle_count(name: str, n: int, unsafe: bool) -> int:
    """Brute-force count for a variant name."""
    simple = {"s": StackVariant.STACK, "g": StackVariant.RECEDING, "h": StackVariant.SHIFTED,
              "d": StackVariant.STRICT, "dm": StackVariant.SEMISTRICT}
    summits = {"ss": StackVariant.STACK, "gs": StackVariant.RECEDING, "hs": StackVariant.SHIFTED}
    if name in simple:
        return combinat.count(simple[name], n, unsafe)
    if name in summits:
        return combinat.count_with_summits(summits[name], n, unsafe)
    if name in ("fphi", "f0", "p"):
        parts = combinat.partitions(n, unsafe)
        if name == "p":
            return len(parts)
        zero = sum(combinat.has_zero_top_row(combinat.partition_to_frobenius(p)) for p in parts)
        return zero if name == "f0" else len(parts) - zero
    raise UsageError(f"no brute-force oracle for {name}")


def cmd_count(args, cfg: RunConfig) -> int:
    name = args.variant.lower()
    if args.summits:
        if name not in _WITH_SUMMITS:
            raise UsageError(f"{name} has no with-summits form")
        name = _WITH_SUMMITS[name]
    v = Variant.parse(name)
    if args.n < 1:
        raise UsageError("n must be at least 1")
    value = cached_series(v, args.n, cfg)[args.n]
    row = {"variant": v.value, "n": args.n, "count": str(value)}
    status = EXIT_OK
    if args.oracle:
        ref = oracle_count(v.value, args.n, cfg.safety_override)
        row["oracle"] = str(ref)
        row["match"] = "match" if ref == value else "MISMATCH"
        status = EXIT_OK if ref == value else EXIT_FAIL
    if cfg.format == "text":
        extra = f" oracle={row['oracle']} {row['match']}" if args.oracle else ""
        write_text(f"{value}{extra}\n", cfg)
    else:
        emit([row], cfg)
    return status


def cmd_table(args, cfg: RunConfig) -> int:
    names = [t.strip().lower() for t in args.variants.split(",")] if args.variants else TABLE_ORDER
    variants = [Variant.parse(name) for name in names]
    if args.max < 0:
        raise UsageError("--max must be nonnegative")
    data = {v: cached_series(v, args.max, cfg) for v in variants}
    rows = [{"n": str(n), **{v.value: str(data[v][n]) for v in variants}} for n in range(args.max + 1)]
    emit(rows, cfg, ["n"] + [v.value for v in variants])
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    tags = list(IdentityTag) if args.identity.lower() == "all" else [IdentityTag.parse(args.identity)]
    reports = [genfun.verify_identity(t, args.order) for t in tags]
    if cfg.format == "text":
        write_text("".join(r.describe() + "\n" for r in reports), cfg)
    else:
        rows = [{"identity": r.tag.value, "order": r.order, "passed": r.passed,
                 "from_exponent": r.from_exponent,
                 "mismatch_exponent": r.exponent,
                 "left": None if r.left is None else str(r.left),
                 "right": None if r.right is None else str(r.right)} for r in reports]
        emit(rows, cfg)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _bijection_row(p: combinat.Partition) -> dict:
    f = combinat.partition_to_frobenius(p)
    seq, mark = combinat.partition_to_receding_summit(p)
    return {"partition": str(p), "frobenius": f"({f})", "stack": seq.format(mark)}


def cmd_bijection(args, cfg: RunConfig) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be at least 1")
    if n > combinat.SAFETY_BOUND and not cfg.safety_override:
        raise SafetyBoundError(f"n={n} exceeds the enumeration bound {combinat.SAFETY_BOUND}")
    if args.partition:
        parts = sorted(_csv_ints(args.partition), reverse=True)
        p = combinat.Partition(tuple(parts))
        if p.n > n or p.n < 1:
            raise UsageError(f"partition of {p.n} does not fit size bound {n}")
        emit([_bijection_row(p)], cfg)
        return EXIT_OK
    parts = combinat.partitions(n, cfg.safety_override)
    if args.check:
        return _bijection_check(n, parts, cfg)
    shown = parts if args.all else parts[: args.sample]
    emit([_bijection_row(p) for p in shown], cfg, ["partition", "frobenius", "stack"])
    return EXIT_OK


def _bijection_check(n: int, parts: list, cfg: RunConfig) -> int:
    round_trip = agree = 0
    zero_rows = 0
    for p in parts:
        f = combinat.partition_to_frobenius(p)
        seq, mark = combinat.partition_to_receding_summit(p)
        round_trip += (combinat.frobenius_to_partition(f) == p
                       and combinat.receding_summit_to_partition(seq, mark) == p)
        zero = combinat.has_zero_top_row(f)
        agree += zero == combinat.summit_dominates_b(seq, mark) == combinat.kth_part_is_k(p)
        zero_rows += zero
    g_n = genfun.series(Variant.G, n)[n]
    ok = round_trip == len(parts) and agree == len(parts) and zero_rows == g_n
    row = {"n": n, "partitions": len(parts), "round_trips_ok": round_trip,
           "zero_row_agreements": agree, "zero_top_row": zero_rows, "g": str(g_n),
           "fphi": len(parts) - zero_rows, "status": "OK" if ok else "FAIL"}
    emit([row], cfg)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_asym(args, cfg: RunConfig) -> int:
    if args.catalog:
        write_text(json.dumps(asym.catalog(), indent=2) + "\n", cfg)
        return EXIT_OK
    if not args.variant:
        raise UsageError("asym needs a variant or --catalog")
    v = Variant.parse(args.variant)
    mt = asym.main_term(v)
    ns = _csv_ints(args.n)
    if not ns or min(ns) < 1:
        raise UsageError("--n needs positive sizes")
    s = cached_series(v, max(ns), cfg)
    rows = []
    for n in ns:
        value = asym.main_term_value(mt, n)
        exact = s[n]
        ratio = asym.coeff_ratio(v, n, s) if exact > 0 else float("nan")
        rows.append({"n": n, "exact": str(exact), "main_term": value.scientific(),
                     "ratio": f"{ratio:.9f}"})
    emit(rows, cfg)
    return EXIT_OK


def cmd_eval(args, cfg: RunConfig) -> int:
    what = args.what.lower()
    rows = []
    for eps in _csv_floats(args.eps):
        if what == "saddle":
            a_int = asym.contour_A_log(eps)
            a_h = asym.A_from_H_log(eps)
            a_main = asym.A_mainterm(eps)
            rows.append({"eps": eps, "contour_A": a_int.scientific(9), "A_from_H": a_h.scientific(9),
                         "A_mainterm": a_main.scientific(9),
                         "contour_over_H": f"{a_int.ratio(a_h):.12f}",
                         "contour_over_main": f"{a_int.ratio(a_main):.9f}"})
        elif what == "hsratio":
            r = asym.hs_over_h(eps)
            rows.append({"eps": eps, "hs_over_h": f"{r:.12f}", "phi": f"{asym.PHI:.12f}",
                         "difference": f"{r - asym.PHI:.3e}"})
        else:
            v = Variant.parse(what)
            value = asym.eval_genfun(v, eps)
            row = {"eps": eps, "log_value": f"{value.log_magnitude:.12f}", "sign": value.sign}
            ref = asym.EPS_ASYM.get(v)
            if ref is not None:
                r = ref.value(eps)
                row["log_reference"] = f"{r.log_magnitude:.12f}"
                row["ratio"] = f"{value.ratio(r):.12f}"
            elif v is Variant.L:
                row["reference"] = "0.5"
                row["ratio"] = f"{float(value) / 0.5:.12f}"
            rows.append(row)
    emit(rows, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--cache-dir", type=Path)
    common.add_argument("--force-recompute", action="store_true")
    common.add_argument("--unsafe-large", action="store_true",
                        help="allow brute-force enumeration above the safety bound")

    parser = argparse.ArgumentParser(prog="stacklab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="exact count for one size")
    p.add_argument("variant")
    p.add_argument("n", type=int)
    p.add_argument("--summits", action="store_true", help="count with a marked summit")
    p.add_argument("--oracle", action="store_true", help="also enumerate by brute force")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="coefficient table n = 0..max")
    p.add_argument("--variants", help="comma-separated subset of " + ",".join(TABLE_ORDER))
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check series identities")
    p.add_argument("identity", help="identity name or 'all'")
    p.add_argument("--order", "-N", type=int, default=500)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="partition bijections")
    p.add_argument("n", type=int)
    p.add_argument("--partition", help="comma-separated parts")
    p.add_argument("--all", action="store_true")
    p.add_argument("--sample", type=int, default=10)
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("asym", parents=[common], help="exact counts against main terms")
    p.add_argument("variant", nargs="?")
    p.add_argument("--n", default="100,500,1000")
    p.add_argument("--catalog", action="store_true", help="emit the main-term catalog as JSON")
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("eval", parents=[common], help="numerics at q = exp(-eps)")
    p.add_argument("what", help="variant name, 'saddle' or 'hsratio'")
    p.add_argument("--eps", default="0.05,0.02")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(command=args.command, format=args.format, cache_dir=args.cache_dir,
                    force_recompute=args.force_recompute, safety_override=args.unsafe_large,
                    out=args.out)
    try:
        if args.command == "verify" and args.order < 0:
            raise UsageError("--order must be nonnegative")
        return args.func(args, cfg)
    except SafetyBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except _IOFailure as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except StackLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
