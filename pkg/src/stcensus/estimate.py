"""Volume estimates and epsilon statistics from census counts.

The cumulative lattice-point count C(N) of a stratum of complex dimension d
grows like a_0 N^d; the volume of the unit-area hypersurface is 2d a_0.  We
fit a short descending polynomial on a window of N values, with an optional
even/odd split when the residuals show the 2-periodic oscillation typical of
lattice counts.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DataMissingError
from .exact import ExactReal
from .strata import (
    EpsilonRecord,
    Stratum,
    conjectural_volume,
    format_stratum,
    parse_stratum,
)


@dataclass(frozen=True)
class VolumeEstimate:
    stratum: Stratum
    value: float
    error_bar: float
    n_window: tuple[int, int]
    method: str

    def __post_init__(self) -> None:
        if self.value <= 0:
            raise ValueError("volume estimates must be positive")
        if self.error_bar < 0:
            raise ValueError("error bar must be nonnegative")


class InsufficientDataError(DataMissingError):
    pass


def _fit_leading(ns, cs, d: int, order: int) -> float:
    """Leading coefficient a_0 of C(N) ~ sum a_j N^(d-j), j = 0..order.

    Fitted on C(N)/N^d against N^-j for conditioning.
    """
    a = np.array([[float(n) ** (-j) for j in range(order + 1)] for n in ns])
    b = np.array([c / float(n) ** d for n, c in zip(ns, cs)])
    coef, *_ = np.linalg.lstsq(a, b, rcond=None)
    return float(coef[0])


def volume_from_counts(
    st: Stratum, counts: dict[int, Fraction] | list[tuple[int, Fraction]]
) -> VolumeEstimate:
    """Volume estimate 2d a_0 from cumulative counts keyed by N.

    Needs at least d+2 points.  The error bar is the spread of a_0 between
    the lower and upper half of the window (a heuristic, not a confidence
    interval).  If residuals alternate in sign with period 2, even and odd N
    are fit separately and averaged.
    """
    if isinstance(counts, dict):
        items = sorted(counts.items())
    else:
        items = sorted(counts)
    d = st.dimension
    if len(items) < d + 2:
        raise InsufficientDataError(
            f"need at least d+2 = {d + 2} cumulative counts for {st}, got {len(items)}"
        )
    ns = [n for n, _ in items]
    cs = [float(c) for _, c in items]
    order = min(3, len(items) - d - 1)
    order = max(order, 0)
    a0 = _fit_leading(ns, cs, d, order)
    method = f"poly(order={order})"

    # residual parity check: sign correlation with (-1)^N
    pred = _predict(ns, cs, d, order)
    resid = [c - p for c, p in zip(cs, pred)]
    signs = [(-1) ** n * (1 if r > 0 else -1 if r < 0 else 0) for n, r in zip(ns, resid)]
    if len(signs) >= 6 and abs(sum(signs)) >= 0.75 * len(signs):
        evens = [(n, c) for n, c in zip(ns, cs) if n % 2 == 0]
        odds = [(n, c) for n, c in zip(ns, cs) if n % 2 == 1]
        if len(evens) >= order + 2 and len(odds) >= order + 2:
            a_even = _fit_leading([n for n, _ in evens], [c for _, c in evens], d, order)
            a_odd = _fit_leading([n for n, _ in odds], [c for _, c in odds], d, order)
            a0 = (a_even + a_odd) / 2
            method += "+parity-split"

    half = len(items) // 2
    lo_pts, hi_pts = items[:half], items[half:]
    err = 0.0
    lo_order = min(order, len(lo_pts) - d - 1)
    hi_order = min(order, len(hi_pts) - d - 1)
    if len(lo_pts) >= d + 2 and len(hi_pts) >= d + 2:
        a_lo = _fit_leading([n for n, _ in lo_pts], [float(c) for _, c in lo_pts], d, max(lo_order, 0))
        a_hi = _fit_leading([n for n, _ in hi_pts], [float(c) for _, c in hi_pts], d, max(hi_order, 0))
        err = abs(a_hi - a_lo) * 2 * d
    return VolumeEstimate(
        stratum=st,
        value=2 * d * a0,
        error_bar=err,
        n_window=(ns[0], ns[-1]),
        method=method,
    )


def _predict(ns, cs, d: int, order: int):
    a = np.array([[float(n) ** (-j) for j in range(order + 1)] for n in ns])
    b = np.array([c / float(n) ** d for n, c in zip(ns, cs)])
    coef, *_ = np.linalg.lstsq(a, b, rcond=None)
    return [float(np.dot(row, coef)) * float(n) ** d for row, n in zip(a, ns)]


# -- epsilons -----------------------------------------------------------------


def epsilon1(st: Stratum, vol: float, provenance: str = "census") -> EpsilonRecord:
    """eps1 = vol / conjectural - 1, with the 1+eps in (0,2) sanity bound."""
    if vol <= 0:
        raise ValueError("volume must be positive")
    conj = conjectural_volume(st).value()
    ratio = vol / conj
    if not 0 < ratio < 2:
        raise ValueError(
            f"1+eps1 = {ratio:.6g} outside (0,2) for {st}: "
            f"volume {vol:.6g} vs conjectural {conj:.6g} (check normalization)"
        )
    return EpsilonRecord(stratum=st, eps=ratio - 1, which="eps1", provenance=provenance)


def epsilon2(
    st: Stratum, vol_even: float, vol_odd: float, provenance: str = "census"
) -> EpsilonRecord:
    """eps2 = Vol(even)/Vol(odd) - 1 for all-even strata."""
    if vol_even <= 0 or vol_odd <= 0:
        raise ValueError("component volumes must be positive")
    return EpsilonRecord(
        stratum=st, eps=vol_even / vol_odd - 1, which="eps2", provenance=provenance
    )


def epsilon3(st: Stratum, lambda_sum: float, provenance: str = "census") -> EpsilonRecord:
    """Observed lambda-sum minus combinatorial term minus pi^2/6."""
    from .strata import lyapunov_combinatorial_term

    eps = lambda_sum - float(lyapunov_combinatorial_term(st)) - math.pi**2 / 6
    return EpsilonRecord(stratum=st, eps=eps, which="eps3", provenance=provenance)


@dataclass(frozen=True)
class StrongBoundRow:
    genus: int
    n_strata: int
    max_abs_eps1: float
    implied_c: float  # max |eps1| sqrt(g) at this genus
    padded_max_abs_eps1: float | None  # over strata containing a 1
    monotone_from_prev: bool | None


def strong_bound_report(records: list[EpsilonRecord]) -> list[StrongBoundRow]:
    """Per-genus max |eps1| sqrt(g) table (the universal-constant check).

    The padded column restricts to strata with at least one simple cone
    point, the family for which convergence is expected to be faster.
    """
    per_genus: dict[int, list[EpsilonRecord]] = {}
    for rec in records:
        if rec.which != "eps1":
            continue
        per_genus.setdefault(rec.stratum.genus, []).append(rec)
    rows: list[StrongBoundRow] = []
    prev = None
    for g in sorted(per_genus):
        recs = per_genus[g]
        mx = max(abs(r.eps) for r in recs)
        padded = [abs(r.eps) for r in recs if 1 in r.stratum.m]
        rows.append(
            StrongBoundRow(
                genus=g,
                n_strata=len(recs),
                max_abs_eps1=mx,
                implied_c=mx * math.sqrt(g),
                padded_max_abs_eps1=max(padded) if padded else None,
                monotone_from_prev=None if prev is None else mx <= prev,
            )
        )
        prev = mx
    return rows


def implied_constant(rows: list[StrongBoundRow]) -> float:
    """Smallest C that would satisfy |eps1| <= C/sqrt(g) on the dataset."""
    return max((r.implied_c for r in rows), default=0.0)


@dataclass(frozen=True)
class FigureRow:
    genus: int
    min_value: float
    max_value: float
    argmin: Stratum
    argmax: Stratum


def figure_epsilon_table(
    volumes: dict[Stratum, float], genus_range: tuple[int, int]
) -> list[FigureRow]:
    """Per-genus (min, max) of 1+eps1 with the extremizing strata.

    ``volumes`` must cover every stratum of every genus in range; missing
    ones are reported in the error.
    """
    from .strata import strata_of_genus

    lo, hi = genus_range
    rows = []
    missing: list[str] = []
    for g in range(lo, hi + 1):
        vals = []
        for st in strata_of_genus(g):
            if st not in volumes:
                missing.append(format_stratum(st))
                continue
            vals.append((volumes[st] / conjectural_volume(st).value(), st))
        if missing:
            continue
        vals.sort(key=lambda t: (t[0], t[1].m))
        rows.append(
            FigureRow(
                genus=g,
                min_value=vals[0][0],
                max_value=vals[-1][0],
                argmin=vals[0][1],
                argmax=vals[-1][1],
            )
        )
    if missing:
        raise DataMissingError(
            f"missing volumes for strata: {', '.join(sorted(set(missing)))}",
            missing=sorted(set(missing)),
        )
    return rows


# -- exact volume table IO ------------------------------------------------------

VOLUME_CSV_HEADER = ["stratum", "pi_exp", "num", "den", "source"]


def write_volume_table(path, rows: list[tuple[Stratum, ExactReal, str]]) -> None:
    """CSV with header stratum,pi_exp,num,den,source."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(VOLUME_CSV_HEADER)
        for st, val, source in rows:
            writer.writerow(
                [
                    format_stratum(st),
                    val.pi_exp,
                    val.coeff.numerator,
                    val.coeff.denominator,
                    source,
                ]
            )


def read_volume_table(path) -> list[tuple[Stratum, ExactReal, str]]:
    """Parse an exact-volume CSV; the provenance column is mandatory."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != VOLUME_CSV_HEADER:
            raise ValueError(f"bad volume table header: {header!r}")
        for row in reader:
            if not row:
                continue
            if len(row) != 5 or not row[4]:
                raise ValueError(f"volume rows need 5 fields incl. source: {row!r}")
            st = parse_stratum(row[0])
            val = ExactReal(Fraction(int(row[2]), int(row[3])), int(row[1]))
            out.append((st, val, row[4]))
    return out
