"""Command-line front end.

Subcommands: ``list`` (strata tables), ``census`` (exact counts, cached),
``conjectures`` (master comparison table), ``figure`` (per-genus min/max TSV
data for the epsilon and c_area plots).

Exit codes: 0 success, 2 usage or malformed input, 3 budget exceeded,
4 required data missing, 5 cache conflict.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from .census import CensusDB, count_by_component, count_direct, count_frobenius
from .errors import BudgetExceededError, CacheConflictError, DataMissingError
from .estimate import (
    InsufficientDataError,
    epsilon1,
    read_volume_table,
    volume_from_counts,
)
from .strata import (
    Component,
    Stratum,
    components_of,
    conjectural_volume,
    format_stratum,
    lyapunov_combinatorial_term,
    parse_stratum,
    strata_of_genus,
    sv_conjecture_value,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_DATA_MISSING = 4
EXIT_CACHE_CONFLICT = 5


@dataclass
class Config:
    max_n: int
    max_seconds: float
    threads: int
    cache_dir: str
    fmt: str  # csv | tsv | json
    digits: int

    def __post_init__(self) -> None:
        if self.max_n <= 0 or self.max_seconds <= 0:
            raise ValueError("budgets must be positive")
        if self.threads <= 0:
            raise ValueError("thread count must be positive")
        if self.fmt not in ("csv", "tsv", "json"):
            raise ValueError(f"unknown format {self.fmt!r}")
        os.makedirs(self.cache_dir, exist_ok=True)
        if not os.access(self.cache_dir, os.W_OK):
            raise ValueError(f"cache directory {self.cache_dir!r} not writable")

    def fnum(self, x: float) -> str:
        return format(float(x), f".{self.digits}g")


def _config_from(args) -> Config:
    return Config(
        max_n=args.nmax,
        max_seconds=args.max_seconds,
        threads=args.threads,
        cache_dir=args.cache_dir,
        fmt=args.format,
        digits=args.digits,
    )


def _emit_table(cfg: Config, columns: list[str], rows: list[dict], out=None) -> None:
    out = out or sys.stdout
    if cfg.fmt == "json":
        json.dump([{c: r.get(c, "") for c in columns} for r in rows], out, indent=1)
        out.write("\n")
        return
    sep = "," if cfg.fmt == "csv" else "\t"
    writer = csv.writer(out, delimiter=sep, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([r.get(c, "") for c in columns])


def _db_for(cfg: Config, st: Stratum) -> CensusDB:
    name = "s" + (format_stratum(st).replace(",", "-") or "torus") + ".jsonl"
    return CensusDB(os.path.join(cfg.cache_dir, name))


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# -- list ---------------------------------------------------------------------


def cmd_list(cfg: Config, genus: int) -> int:
    rows = []
    for st in strata_of_genus(genus):
        rows.append(
            {
                "stratum": format_stratum(st),
                "genus": st.genus,
                "dim": st.dimension,
                "components": "|".join(str(c) for c in components_of(st)),
                "conjectural_volume": _frac(conjectural_volume(st).coeff),
            }
        )
    _emit_table(cfg, ["stratum", "genus", "dim", "components", "conjectural_volume"], rows)
    return EXIT_OK


# -- census -------------------------------------------------------------------


def cmd_census(cfg: Config, st: Stratum, engine: str) -> int:
    db = _db_for(cfg, st)
    t0 = time.monotonic()
    engines = ["direct", "frobenius"] if engine == "both" else [engine]
    rows = []
    for n in range(st.min_squares, cfg.max_n + 1):
        if time.monotonic() - t0 > cfg.max_seconds:
            raise BudgetExceededError(
                f"time budget exhausted before N={n}", reached=n - 1
            )
        for eng in engines:
            rec = db.get(st, n, eng)
            if rec is None:
                if eng == "direct":
                    rec = count_direct(st, n, budget=cfg.max_n, threads=cfg.threads)
                else:
                    rec = count_frobenius(st, n, budget=max(cfg.max_n, 40))
                db.add(rec)  # cross-engine equality enforced here
            rows.append(
                {
                    "stratum": format_stratum(st),
                    "n": n,
                    "engine": eng,
                    "pairs": str(rec.pairs_transitive),
                    "weighted": _frac(rec.weighted),
                    "labeled_weighted": _frac(rec.labeled_weighted),
                }
            )
    _emit_table(
        cfg, ["stratum", "n", "engine", "pairs", "weighted", "labeled_weighted"], rows
    )
    return EXIT_OK


# -- volumes ------------------------------------------------------------------


def _census_volume(cfg: Config, st: Stratum) -> tuple[float, float] | None:
    """(volume, error bar) from cached/computed cumulative counts, or None."""
    need = st.min_squares + st.dimension + 1  # d+2 shells
    if need > cfg.max_n:
        return None
    db = _db_for(cfg, st)
    counts: dict[int, Fraction] = {}
    acc = Fraction(0)
    for n in range(st.min_squares, cfg.max_n + 1):
        rec = db.get(st, n, "frobenius")
        if rec is None:
            rec = count_frobenius(st, n)
            db.add(rec)
        acc += rec.labeled_weighted
        counts[n] = acc
    try:
        est = volume_from_counts(st, counts)
    except InsufficientDataError:
        return None
    return est.value, est.error_bar


def _load_volumes(path) -> dict[Stratum, tuple[float, str]]:
    out = {}
    for st, val, source in read_volume_table(path):
        if not st.is_degenerate and val.pi_exp != 2 * st.genus:
            raise ValueError(
                f"volume of {format_stratum(st)} must be rational * pi^(2g); "
                f"got pi^{val.pi_exp}"
            )
        out[st] = (val.value(), f"ingested:{source}")
    return out


# -- conjectures ----------------------------------------------------------------


def cmd_conjectures(cfg: Config, genus_lo: int, genus_hi: int, volumes_file) -> int:
    ingested = _load_volumes(volumes_file) if volumes_file else {}
    rows = []
    missing = []
    for g in range(genus_lo, genus_hi + 1):
        for st in strata_of_genus(g):
            conj = conjectural_volume(st)
            row = {
                "stratum": format_stratum(st),
                "genus": g,
                "dim": st.dimension,
                "components": "|".join(str(c) for c in components_of(st)),
                "conj_volume": _frac(conj.coeff),
                "conj_volume_src": "closed-form",
                "lyapunov_sum_conjectural": cfg.fnum(
                    float(lyapunov_combinatorial_term(st)) + math.pi**2 / 6
                ),
                "lyapunov_src": "closed-form",
                "carea_reference": _frac(sv_conjecture_value()),
            }
            vol = None
            if st in ingested:
                vol, src = ingested[st]
                err = 0.0
            else:
                got = _census_volume(cfg, st)
                if got:
                    vol, err = got
                    src = "census"
            if vol is not None:
                rec = epsilon1(st, vol, "census" if src == "census" else "ingested")
                row.update(
                    {
                        "volume": cfg.fnum(vol),
                        "volume_err": cfg.fnum(err),
                        "volume_src": src,
                        "eps1": cfg.fnum(rec.eps),
                        "abs_eps1_sqrt_g": cfg.fnum(abs(rec.eps) * math.sqrt(g)),
                    }
                )
            else:
                missing.append(format_stratum(st))
            rows.append(row)
    columns = [
        "stratum",
        "genus",
        "dim",
        "components",
        "conj_volume",
        "conj_volume_src",
        "volume",
        "volume_err",
        "volume_src",
        "eps1",
        "abs_eps1_sqrt_g",
        "lyapunov_sum_conjectural",
        "lyapunov_src",
        "carea_reference",
    ]
    _emit_table(cfg, columns, rows)
    if missing:
        print(
            f"# volumes unavailable within budget for: {', '.join(missing)}",
            file=sys.stderr,
        )
    return EXIT_OK


# -- figures --------------------------------------------------------------------


def _write_figure(out, rows, reference: float, sources: str) -> None:
    out.write("genus\tmin\tmax\targmin\targmax\n")
    out.write(f"# reference = {reference}\n")
    out.write(f"# sources = {sources}\n")
    for r in rows:
        out.write(
            f"{r['genus']}\t{r['min']}\t{r['max']}\t{r['argmin']}\t{r['argmax']}\n"
        )


def cmd_figure(cfg: Config, which: str, genus_lo: int, genus_hi: int, args) -> int:
    ingested = _load_volumes(args.volumes_file) if args.volumes_file else {}
    rows = []
    if which == "epsilon1":
        used = set()
        for g in range(genus_lo, genus_hi + 1):
            vals = []
            missing = []
            for st in strata_of_genus(g):
                if st in ingested:
                    vol = ingested[st][0]
                    used.add("ingested")
                else:
                    got = _census_volume(cfg, st)
                    if got is None:
                        missing.append(format_stratum(st))
                        continue
                    vol = got[0]
                    used.add("census")
                vals.append((vol / conjectural_volume(st).value(), st))
            if missing:
                raise DataMissingError(
                    f"genus {g}: no volume for {', '.join(missing)}", missing=missing
                )
            vals.sort(key=lambda t: (t[0], t[1].m))
            rows.append(_figrow(g, vals))
        _write_figure(sys.stdout, rows, 1.0, "+".join(sorted(used)) or "none")
        return EXIT_OK

    if which == "epsilon2":
        for g in range(genus_lo, genus_hi + 1):
            vals = []
            for st in strata_of_genus(g):
                comps = components_of(st)
                if Component.EVEN_SPIN not in comps or Component.ODD_SPIN not in comps:
                    continue
                ratio = _even_odd_ratio(cfg, st)
                if ratio is not None:
                    vals.append((ratio, st))
            if not vals:
                raise DataMissingError(
                    f"genus {g}: no even/odd census data within budget N<={cfg.max_n}"
                )
            vals.sort(key=lambda t: (t[0], t[1].m))
            rows.append(_figrow(g, vals))
        _write_figure(sys.stdout, rows, 1.0, "census")
        return EXIT_OK

    if which == "carea":
        from .strata import (
            carea_hyperelliptic_minimal,
            carea_hyperelliptic_pair,
        )

        component = Component(args.component) if args.component else None
        used = set()
        for g in range(genus_lo, genus_hi + 1):
            vals = []
            for st in strata_of_genus(g):
                comps = components_of(st)
                closed_ok = component in (None, Component.HYPERELLIPTIC)
                if closed_ok and (
                    Component.HYPERELLIPTIC in comps or comps == [Component.CONNECTED]
                ):
                    if st.m == (2 * g - 2,):
                        vals.append((carea_hyperelliptic_minimal(g).value(), st))
                        used.add("closed-form")
                    elif st.m == (g - 1, g - 1):
                        vals.append((carea_hyperelliptic_pair(g).value(), st))
                        used.add("closed-form")
                if args.samples and st.min_squares <= cfg.max_n:
                    from .svcount import carea_stratum

                    rep = carea_stratum(
                        st,
                        min(cfg.max_n, st.min_squares + 4),
                        args.L,
                        sample_budget=args.samples,
                        component=component,
                        threads=cfg.threads,
                    )
                    vals.append((rep.carea_fit, st))
                    used.add("census")
            if not vals:
                raise DataMissingError(f"genus {g}: no c_area values available")
            vals.sort(key=lambda t: (t[0], t[1].m))
            rows.append(_figrow(g, vals))
        _write_figure(sys.stdout, rows, 0.5, "+".join(sorted(used)) or "none")
        return EXIT_OK

    raise ValueError(f"unknown figure {which!r}")


def _figrow(g: int, vals) -> dict:
    return {
        "genus": g,
        "min": vals[0][0],
        "max": vals[-1][0],
        "argmin": format_stratum(vals[0][1]),
        "argmax": format_stratum(vals[-1][1]),
    }


def _even_odd_ratio(cfg: Config, st: Stratum) -> float | None:
    """Cumulative even/odd labeled-count ratio from the component census."""
    budget = min(cfg.max_n, 8)
    if st.min_squares > budget:
        return None
    even = Fraction(0)
    odd = Fraction(0)
    for n in range(st.min_squares, budget + 1):
        by = count_by_component(st, n, budget=budget)
        for comp, rec in by.items():
            if comp == Component.EVEN_SPIN:
                even += rec.labeled_weighted
            elif comp == Component.ODD_SPIN:
                odd += rec.labeled_weighted
    if even == 0 or odd == 0:
        return None
    return float(even / odd)


# -- argument parsing -------------------------------------------------------------


def _parse_genus_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
    else:
        lo = hi = text
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad genus range {text!r}") from exc
    if lo_i < 2 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad genus range {text!r}")
    return lo_i, hi_i


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stcensus",
        description="Census and conjecture tables for strata of square-tiled surfaces.",
    )
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--cache-dir", default=os.path.expanduser("~/.cache/stcensus"))
    parser.add_argument("--format", choices=["csv", "tsv", "json"], default="csv")
    parser.add_argument("--digits", type=int, default=12)
    parser.add_argument("--nmax", type=int, default=8, help="census budget: largest N")
    parser.add_argument(
        "--max-seconds", type=float, default=3600.0, help="census budget: wall time"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="strata of a genus with dimensions and components")
    p.add_argument("--genus", type=int, required=True)

    p = sub.add_parser("census", help="count square-tiled surfaces of a stratum")
    p.add_argument("--stratum", required=True)
    p.add_argument(
        "--engine", choices=["direct", "frobenius", "both"], default="both"
    )

    p = sub.add_parser("conjectures", help="master table of conjecture comparisons")
    p.add_argument("--genus", type=_parse_genus_range, required=True)
    p.add_argument("--volumes-file", default=None)

    p = sub.add_parser("figure", help="per-genus min/max TSV data")
    p.add_argument("which", choices=["epsilon1", "epsilon2", "carea"])
    p.add_argument("--genus", type=_parse_genus_range, required=True)
    p.add_argument("--volumes-file", default=None)
    p.add_argument("--component", default=None)
    p.add_argument("--L", type=float, default=30.0)
    p.add_argument("--samples", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command == "list":
            if args.genus < 2:
                parser.error("--genus must be >= 2")
            return cmd_list(cfg, args.genus)
        if args.command == "census":
            return cmd_census(cfg, parse_stratum(args.stratum), args.engine)
        if args.command == "conjectures":
            return cmd_conjectures(cfg, *args.genus, args.volumes_file)
        if args.command == "figure":
            return cmd_figure(cfg, args.which, *args.genus, args)
        parser.error(f"unknown command {args.command!r}")
    except BudgetExceededError as exc:
        print(f"stcensus: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DataMissingError as exc:
        print(f"stcensus: missing data: {exc}", file=sys.stderr)
        return EXIT_DATA_MISSING
    except CacheConflictError as exc:
        print(f"stcensus: cache conflict: {exc}", file=sys.stderr)
        return EXIT_CACHE_CONFLICT
    except ValueError as exc:
        print(f"stcensus: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
