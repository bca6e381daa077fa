"""Command line interface: ``kron22 {g,gbar,verify,export-fan,counterexamples,stretch}``.

Exit codes: 0 success, 1 user error, 2 engines disagree.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from . import oracle
from .chambers import ChamberCatalog, default_catalog, in_delta_prime
from .core import InvalidTripleError, KronIndex, Partition, ZeroSignal, kron_indices, to_kron_index, validate_triple
from .kron import ReducedEngine, kron_two_row, reduced_terms
from .stretch import IndexBox, certificates_document, find_sh_counterexamples, stretch_profile

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USER, EXIT_MISMATCH = 0, 1, 2
ENGINES = ("count", "chamber", "oracle")


class UserError(Exception):
    pass


# ---------------------------------------------------------------------------
# Verification sweep (also used by the test suite)

@dataclass(frozen=True)
class Mismatch:
    index: KronIndex
    values: Dict[str, int]

    def to_json(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "index": list(self.index), "values": self.values}


def _engine_value(name: str, idx: KronIndex, catalog: Optional[ChamberCatalog], cap: int) -> int:
    if name == "oracle":
        return oracle.kron_oracle(idx.lam(), idx.mu(), idx.nu(), cap=cap)
    return kron_two_row(idx, name, catalog)


def _verify_slice(args) -> List[Mismatch]:
    n, engines, catalog, cap = args
    out = []
    for idx in kron_indices(n, n):
        values = {name: _engine_value(name, idx, catalog, cap) for name in engines}
        if len(set(values.values())) > 1:
            out.append(Mismatch(idx, values))
    return out


def verify(box: IndexBox, engines: Sequence[str] = ENGINES, catalog: Optional[ChamberCatalog] = None,
           cap: int = oracle.DEFAULT_CAP, workers: int = 1) -> List[Mismatch]:
    """Every index of ``box`` where the selected engines disagree, sorted by index."""
    for name in engines:
        if name not in ENGINES:
            raise UserError(f"unknown engine {name!r}")
    if "oracle" in engines and box.n_max > cap:
        raise oracle.OracleCapError(f"box reaches n={box.n_max} above the oracle cap {cap}")
    if box.empty:
        return []
    jobs = [(n, tuple(engines), catalog, cap) for n in range(box.n_max, box.n_min - 1, -1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = [m for chunk in pool.map(_verify_slice, jobs) for m in chunk]
    else:
        results = [m for job in jobs for m in _verify_slice(job)]
    return sorted(results, key=lambda m: m.index)


# ---------------------------------------------------------------------------
# Parsing helpers

def parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UserError(f"cannot parse partition {text!r}: {exc}") from exc


def parse_box(text: str) -> IndexBox:
    try:
        if ":" in text:
            lo, hi = (int(t) for t in text.split(":", 1))
        else:
            lo, hi = 0, int(text)
    except ValueError as exc:
        raise UserError(f"cannot parse box {text!r}; use NMAX or NMIN:NMAX") from exc
    if lo < 0 or hi < lo:
        raise UserError(f"box bounds must satisfy 0 <= NMIN <= NMAX, got {text!r}")
    return IndexBox(hi, lo)


def _emit(doc, fmt: str, table_lines: Iterable[str], out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for line in table_lines:
            out.write(line + "\n")


# ---------------------------------------------------------------------------
# Commands

def cmd_g(args, out) -> int:
    lam, mu, nu = (parse_partition(t) for t in (args.lam, args.mu, args.nu))
    report = validate_triple(lam, mu, nu)
    if not report:
        raise UserError(f"invalid triple: {report}")
    idx = to_kron_index(lam, mu, nu)
    doc = {"schema_version": SCHEMA_VERSION, "lambda": list(lam), "mu": list(mu), "nu": list(nu),
           "engine": args.engine}
    lines = []
    if isinstance(idx, ZeroSignal):
        doc.update(value=0, zero_reason=idx.reason)
        lines.append("0")
        if args.explain:
            lines.append(f"# zero: {idx.reason}")
    else:
        if args.engine == "oracle":
            value = oracle.kron_oracle(lam, mu, nu, cap=args.cap)
        else:
            value = kron_two_row(idx, args.engine)
        doc.update(value=value, index=list(idx))
        lines.append(str(value))
        if args.explain:
            terms = []
            catalog = default_catalog()
            for sign, h in zip("+-+", reduced_terms(idx)):
                val = ReducedEngine(args.engine).reduced(h)
                sides = [c.name for c in catalog.chambers_containing(h)] if in_delta_prime(h) else []
                terms.append({"sign": sign, "reduced_index": list(h), "value": val, "chambers": sides})
            doc["terms"] = terms
            lines.append(f"# index (n,r,s,g1,g2) = {tuple(idx)}")
            for t in terms:
                where = ",".join(t["chambers"]) or "outside Delta'"
                lines.append(f"# {t['sign']} gbar{tuple(t['reduced_index'])} = {t['value']}  [chambers: {where}]")
    _emit(doc, args.format, lines, out)
    return EXIT_OK


def cmd_gbar(args, out) -> int:
    h = (args.r, args.s, args.g1, args.g2)
    if not (args.r >= 0 and args.s >= 0 and args.g1 >= args.g2 >= 0):
        raise UserError(f"need r, s >= 0 and g1 >= g2 >= 0, got {h}")
    value = ReducedEngine(args.engine).reduced(h)
    doc = {"schema_version": SCHEMA_VERSION, "reduced_index": list(h), "engine": args.engine, "value": value}
    lines = [str(value)]
    if args.explain and in_delta_prime(h):
        names = [c.name for c in default_catalog().chambers_containing(h)]
        doc["chambers"] = names
        lines.append(f"# chambers: {','.join(names)}")
    _emit(doc, args.format, lines, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    box = parse_box(args.box)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    catalog = ChamberCatalog.loads(Path(args.catalog).read_text()) if args.catalog else None
    try:
        mismatches = verify(box, engines, catalog=catalog, cap=args.cap, workers=args.workers)
    except oracle.OracleCapError as exc:
        raise UserError(str(exc)) from exc
    for m in mismatches:
        out.write(json.dumps(m.to_json(), sort_keys=True) + "\n")
    summary = {"schema_version": SCHEMA_VERSION, "summary": True, "box": [box.n_min, box.n_max],
               "engines": engines, "checked": sum(1 for _ in box), "mismatches": len(mismatches)}
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_export_fan(args, out) -> int:
    text = default_catalog().dumps()
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_counterexamples(args, out) -> int:
    box = parse_box(args.box)
    try:
        certs = find_sh_counterexamples(box, engine=args.engine if args.engine != "oracle" else "chamber",
                                        cap=args.cap, workers=args.workers)
    except oracle.OracleCapError as exc:
        raise UserError(str(exc)) from exc
    doc = certificates_document(certs, box)
    text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        Path(args.output).write_text(text)
    if args.format == "json":
        out.write(text)
    else:
        for c in certs:
            values = [c.oracle_values[k] for k in sorted(c.oracle_values)]
            out.write(f"{tuple(c.index)}  g at N=1,2,3,5: {values}  systems: {','.join(c.systems)}\n")
        if not certs:
            out.write("# no counterexamples in box\n")
    return EXIT_OK


def cmd_stretch(args, out) -> int:
    idx = KronIndex(args.n, args.r, args.s, args.g1, args.g2)
    if not idx.valid():
        raise UserError(f"{tuple(idx)} does not index three partitions of n")
    profile = stretch_profile(idx, args.n_max, args.engine if args.engine != "oracle" else "chamber")
    doc = {"schema_version": SCHEMA_VERSION, "index": list(idx), "samples": profile.samples}
    lines = [f"N={N}: {v}" for N, v in profile.samples]
    if profile.fitted is not None:
        doc["fit"] = {str(res[0]): {str(m[0]): str(c) for m, c in sorted(p.items())}
                      for res, p in profile.fitted.pieces.items()}
        lines.append("fit:\n" + profile.fitted.describe())
    else:
        doc["failure"] = profile.failure
        lines.append(f"no fit: {profile.failure}")
    _emit(doc, args.format, lines, out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--engine", choices=ENGINES, default="chamber")
    common.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP, help="largest n for character tables")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache-dir", default=None, help=f"character table cache (default ${oracle.CACHE_ENV})")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--explain", action="store_true")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="kron22", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("g", parents=[common], help="Kronecker coefficient g(lambda; mu, nu)")
    p.add_argument("lam", metavar="LAMBDA")
    p.add_argument("mu", metavar="MU")
    p.add_argument("nu", metavar="NU")
    p.set_defaults(func=cmd_g)

    p = sub.add_parser("gbar", parents=[common], help="reduced coefficient of (r), (s), (g1, g2)")
    for name in ("r", "s", "g1", "g2"):
        p.add_argument(name, type=int)
    p.set_defaults(func=cmd_gbar)

    p = sub.add_parser("verify", parents=[common], help="compare engines on every index of a box")
    p.add_argument("--box", default="14", help="NMAX or NMIN:NMAX (default 14)")
    p.add_argument("--engines", default=",".join(ENGINES))
    p.add_argument("--catalog", default=None, help="fan JSON to use instead of the built-in one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-fan", parents=[common], help="write the chamber catalog as JSON")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_export_fan)

    p = sub.add_parser("counterexamples", parents=[common], help="certified saturation counterexamples")
    p.add_argument("--box", default="12")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_counterexamples)

    p = sub.add_parser("stretch", parents=[common], help="samples and fit of N -> g(N idx)")
    for name in ("n", "r", "s", "g1", "g2"):
        p.add_argument(name, type=int)
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_stretch)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.cache_dir:
        oracle.set_default_store(oracle.TableStore(args.cache_dir))
    try:
        return args.func(args, out)
    except (UserError, InvalidTripleError, oracle.OracleCapError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
