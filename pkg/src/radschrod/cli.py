"""Command-line front end.

Commands: ``solve``, ``converge``, ``table1``, ``dump-stencil``,
``dump-matrix``. Data goes to stdout (or ``--out``); logging goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, Sequence

from .assembly import assemble, write_matrix
from .config import ConfigError, RunConfig, load_config
from .eigen import eigenvalue_for
from .potential import PotentialSpec, exact_eigenvalue
from .solver import compute_spectrum, observed_order, relative_error
from .stencil import fd_weights, stencil_set
from .table1 import TABLE1, TABLE1_NPOINTS, TABLE1_ORDER
from .transform import build

THREADS_ENV = "RADSCHROD_THREADS"


def _workers() -> int:
    try:
        n = int(os.environ.get(THREADS_ENV, "0"))
    except ValueError:
        n = 0
    return max(1, n if n > 0 else (os.cpu_count() or 1))


def _pmap(fn: Callable, items: Sequence) -> list:
    """Ordered parallel map; output order follows ``items``."""
    if len(items) <= 1 or _workers() == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(fn, items))


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _write_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _spectrum(cfg: RunConfig, n: int, order: Optional[int] = None, xi=...):
    return compute_spectrum(
        cfg.potential_spec(),
        cfg.ell,
        transform=cfg.transform,
        order=order or cfg.order,
        n=n,
        xi=cfg.xi_value if xi is ... else xi,
        imag_tol=cfg.imag_tol,
        min_lambda=cfg.min_lambda,
    )


def _reference_levels(cfg: RunConfig, levels: Sequence[int]) -> dict[int, Optional[float]]:
    pot = cfg.potential_spec()
    if cfg.reference == "exact":
        return {n: exact_eigenvalue(pot, n, cfg.ell) for n in levels}
    ref = _spectrum(cfg, cfg.nref, order=cfg.order_ref)
    return {n: eigenvalue_for(n, cfg.ell, ref) for n in levels}


# ---------------------------------------------------------------- commands


def cmd_solve(cfg: RunConfig) -> str:
    """Filtered spectrum at the first N of ``cfg.npoints``."""
    n_points = cfg.npoints[0]
    res = _spectrum(cfg, n_points)
    levels = [nu + cfg.ell + 1 for nu in range(len(res))]
    if cfg.levels:
        levels = [n for n in cfg.levels if n - cfg.ell - 1 < len(res)]
    refs = _reference_levels(cfg, levels) if levels else {}

    records = []
    for n in levels:
        lam = eigenvalue_for(n, cfg.ell, res)
        ref = refs.get(n)
        err = None if ref is None else relative_error(lam, ref)
        records.append({"nu": n - cfg.ell - 1, "n": n, "lambda": lam, "lambda_half": lam / 2, "reference": ref, "rel_error": err})

    header = ["nu", "n", "lambda", "lambda_half", "reference", "rel_error"]
    if cfg.format == "json":
        doc = {
            "config": {"potential": cfg.potential, "alpha": cfg.alpha, "ell": cfg.ell, "transform": cfg.transform,
                       "order": cfg.order, "N": n_points, "xi": res.meta.get("xi")},
            "raw_count": res.raw_count,
            "discarded": res.discarded,
            "imag_tol": res.imag_tol_used,
            "levels": records,
        }
        return json.dumps(doc, indent=2) + "\n"
    if not records:
        rows = [["", "", "no bound states retained", "", "", ""]]
    elif cfg.format == "table":
        rows = [[str(r["nu"]), str(r["n"]), f"{r['lambda']:.15f}", f"{r['lambda_half']:.13f}",
                 "" if r["reference"] is None else f"{r['reference']:.15f}",
                 "" if r["rel_error"] is None else f"{r['rel_error']:.3e}"] for r in records]
    else:
        rows = [[str(r["nu"]), str(r["n"]), _fmt(r["lambda"]), _fmt(r["lambda_half"]), _fmt(r["reference"]), _fmt(r["rel_error"])]
                for r in records]
    if cfg.format == "table":
        return _write_table(header, rows)
    return _write_csv(header, rows)


def converge_data(cfg: RunConfig) -> tuple[list[dict], dict[int, Optional[float]]]:
    """Rows ``(n, N, h, lambda, reference, rel_error)`` and the fitted order per level."""
    npoints = list(cfg.npoints)
    if len(npoints) < 3:
        raise ConfigError("converge needs at least three values of N")
    if cfg.reference == "high-n" and cfg.nref <= max(npoints):
        raise ConfigError(f"reference N ({cfg.nref}) must exceed every N in the sweep (max {max(npoints)})")
    levels = list(cfg.levels) or [cfg.ell + 1]
    refs = _reference_levels(cfg, levels)
    missing = [n for n, r in refs.items() if r is None]
    if missing:
        raise ConfigError(f"no reference eigenvalue available for n={missing} ({cfg.reference} mode)")

    spectra = _pmap(lambda n: _spectrum(cfg, n), npoints)
    rows: list[dict] = []
    orders: dict[int, Optional[float]] = {}
    for level in levels:
        hs, errs = [], []
        for n_points, res in zip(npoints, spectra):
            lam = eigenvalue_for(level, cfg.ell, res)
            h = 1.0 / (n_points + 1)
            err = None if lam is None else relative_error(lam, refs[level])
            rows.append({"n": level, "N": n_points, "h": h, "lambda": lam, "reference": refs[level], "rel_error": err})
            if err is not None:
                hs.append(h)
                errs.append(err)
        orders[level] = observed_order(hs, errs, last=3) if len(hs) >= 3 else None
    return rows, orders


def cmd_converge(cfg: RunConfig) -> str:
    rows, orders = converge_data(cfg)
    header = ["n", "ell", "N", "h", "lambda", "reference", "rel_error", "observed_order"]
    out = [[str(r["n"]), str(cfg.ell), str(r["N"]), _fmt(r["h"]), _fmt(r["lambda"]), _fmt(r["reference"]),
            _fmt(r["rel_error"]), _fmt(orders[r["n"]])] for r in rows]
    if cfg.format == "json":
        return json.dumps({"rows": rows, "observed_order": {str(k): v for k, v in orders.items()}}, indent=2) + "\n"
    if cfg.format == "table":
        return _write_table(header, out)
    return _write_csv(header, out)


def table1_data(npoints: Sequence[int] = TABLE1_NPOINTS, imag_tol: Optional[float] = None) -> list[dict]:
    """Recompute the Yukawa table: one dict per row with ``lambda_half`` per N."""
    jobs = [(row, n) for row in TABLE1 for n in npoints]

    def run(job):
        row, n = job
        kwargs = {} if imag_tol is None else {"imag_tol": imag_tol}
        res = compute_spectrum(PotentialSpec.yukawa(row.alpha), row.ell, transform="tcii", order=TABLE1_ORDER, n=n, **kwargs)
        lam = eigenvalue_for(row.n, row.ell, res)
        return None if lam is None else lam / 2

    values = iter(_pmap(run, jobs))
    out = []
    for row in TABLE1:
        halves = {n: next(values) for n in npoints}
        published = {200: row.half_n200, 1500: row.half_n1500}
        out.append({"n": row.n, "ell": row.ell, "alpha": row.alpha, "lambda_half": halves,
                    "published": {n: published.get(n) for n in npoints}})
    return out


def cmd_table1(npoints: Sequence[int] = TABLE1_NPOINTS, fmt: str = "table") -> str:
    data = table1_data(npoints)
    header = ["n", "ell", "alpha"]
    for n in npoints:
        header += [f"lambda_half_N{n}", f"published_N{n}"]
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    rows = []
    for d in data:
        row = [str(d["n"]), str(d["ell"]), f"{d['alpha']:.3f}"]
        for n in npoints:
            v, p = d["lambda_half"][n], d["published"][n]
            row += ["" if v is None else f"{v:.13f}", "" if p is None else f"{p:.13f}"]
        rows.append(row)
    return _write_table(header, rows) if fmt == "table" else _write_csv(header, rows)


def cmd_dump_stencil(order: int) -> str:
    """All tables of the order-``order`` family, one coefficient per line."""
    k = order // 2
    st = stencil_set(k)
    rows = []
    for name, table in st.tables().items():
        for i, coeffs in enumerate(table):
            exact = _exact_row(name, i, k)
            for j, c in enumerate(coeffs):
                rows.append([name, str(i), str(j), repr(float(c)), str(exact[j])])
    return _write_csv(["table", "row", "col", "value", "rational"], rows)


def _exact_row(name: str, i: int, k: int):
    if name.startswith("main"):
        return fd_weights(range(-k, k + 1), 1 if name.endswith("first") else 2)
    if name == "bdf":
        return fd_weights(range(-2 * k, 1), 1)
    target = i + 1
    if name == "initial_first":
        return fd_weights([j - target for j in range(2 * k + 1)], 1)
    if name == "initial_second":
        return fd_weights([j - target for j in range(2 * k + 2)], 2)
    # final row i mirrors initial row k - 2 - i
    mirror = k - 1 - i
    if name == "final_first":
        return tuple(-w for w in reversed(fd_weights([j - mirror for j in range(2 * k + 1)], 1)))
    return tuple(reversed(fd_weights([j - mirror for j in range(2 * k + 2)], 2)))


def cmd_dump_matrix(cfg: RunConfig) -> str:
    pot = cfg.potential_spec()
    tp = build(cfg.transform, pot, cfg.ell, xi=cfg.xi_value, order=cfg.order)
    evp = assemble(tp, cfg.npoints[0], cfg.k)
    buf = io.StringIO()
    write_matrix(evp.a, buf)
    if evp.b is not None:
        write_matrix(evp.b, buf)
    return buf.getvalue()


# ---------------------------------------------------------------- argparse


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; explicit flags override it")
    p.add_argument("--potential", choices=["hydrogen", "hulthen", "yukawa"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--ell", type=int)
    p.add_argument("--transform", choices=["tds", "tcii", "atcii"])
    p.add_argument("--order", type=int, help="scheme order p = 2k")
    p.add_argument("--npoints", type=int, action="append", help="interior points N (repeatable)")
    p.add_argument("--xi", help="TCII scale, or 'auto' for the heuristic")
    p.add_argument("--imag-tol", type=float)
    p.add_argument("--reference", choices=["exact", "high-n"])
    p.add_argument("--nref", type=int)
    p.add_argument("--order-ref", type=int)
    p.add_argument("--n", dest="levels", type=int, action="append", help="principal quantum number (repeatable)")
    p.add_argument("--min-lambda", type=float)
    p.add_argument("--allow-high-order", action="store_true", default=None, help="permit orders 10 and 12")
    p.add_argument("--format", choices=["csv", "json", "table"])
    p.add_argument("--out", help="write output here instead of stdout")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    changes = {}
    for name in ("potential", "alpha", "ell", "transform", "order", "imag_tol", "reference", "nref", "order_ref",
                 "min_lambda", "allow_high_order", "format"):
        value = getattr(args, name, None)
        if value is not None:
            changes[name] = value
    if args.npoints:
        changes["npoints"] = tuple(args.npoints)
    if args.levels:
        changes["levels"] = tuple(args.levels)
    if args.xi is not None:
        if args.xi == "auto":
            changes["xi"] = "auto"
        else:
            try:
                changes["xi"] = float(args.xi)
            except ValueError:
                raise ConfigError(f"xi must be 'auto' or a number, got {args.xi!r}") from None
    return base.replace(**changes)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="radschrod", description="Radial Schrodinger bound states by finite-difference matrix methods.")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress informational logging")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("solve", "filtered spectrum for one configuration"),
                        ("converge", "relative errors over a sweep of N"),
                        ("dump-matrix", "write the assembled matrix (pencil) in plain-text form")):
        _add_run_args(sub.add_parser(name, help=help_))

    p = sub.add_parser("table1", help="recompute the Yukawa n=9/n=10 table")
    p.add_argument("--npoints", type=int, action="append", help=f"N values (default {TABLE1_NPOINTS})")
    p.add_argument("--format", choices=["csv", "json", "table"], default="table")
    p.add_argument("--out")

    p = sub.add_parser("dump-stencil", help="coefficient tables as CSV")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--out")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr, force=True)
    try:
        if args.command == "table1":
            text = cmd_table1(tuple(args.npoints) if args.npoints else TABLE1_NPOINTS, args.format)
        elif args.command == "dump-stencil":
            if args.order % 2 or not 2 <= args.order <= 12:
                raise ConfigError(f"order must be even and in [2, 12], got {args.order}")
            text = cmd_dump_stencil(args.order)
        else:
            cfg = _config_from_args(args)
            if args.command == "solve":
                text = cmd_solve(cfg)
            elif args.command == "converge":
                text = cmd_converge(cfg)
            else:
                text = cmd_dump_matrix(cfg)
    except (ConfigError, ValueError) as exc:
        print(f"radschrod: error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
