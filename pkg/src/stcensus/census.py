"""Exact census of square-tiled surfaces by two independent engines.

``count_direct`` scans pairs of permutations (one representative per
conjugacy class of h, all v), ``count_frobenius`` evaluates the character
sum for the commutator class and then strips disconnected configurations by
inclusion-exclusion over splittings.  Their agreement on every overlapping
(stratum, N) is the central correctness property of the package.  Everything
is exact: big integers and Fractions, no floats.
"""
from __future__ import annotations

import datetime as _dt
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from . import kernels, perms
from .characters import character, class_size, hook_product
from .errors import BudgetExceededError, CacheConflictError
from .origami import Origami, component_of
from .strata import Component, Stratum, format_stratum, labeling_factor, parse_stratum

DIRECT_BUDGET_DEFAULT = 10  # full S_N scans get steep beyond this
FROBENIUS_BUDGET_DEFAULT = 40


@dataclass(frozen=True)
class CountRecord:
    """Exact census count for one (stratum, N, engine)."""

    stratum: Stratum
    n: int
    pairs_transitive: int
    engine: str  # direct | frobenius
    component: Component | None = None

    @property
    def weighted(self) -> Fraction:
        """pairs / N! = sum over isomorphism classes of 1/|Aut|."""
        return Fraction(self.pairs_transitive, math.factorial(self.n))

    @property
    def labeled_factor(self) -> int:
        return labeling_factor(self.stratum)

    @property
    def labeled_weighted(self) -> Fraction:
        """Weighted count in the named-cone-points normalization."""
        return self.weighted * self.labeled_factor


def commutator_class(st: Stratum, n: int) -> tuple[int, ...] | None:
    """Cycle type in S_n of the commutator for this stratum, or None if n too small."""
    body = sum(mi + 1 for mi in st.m)
    if n < body:
        return None
    return tuple(sorted([mi + 1 for mi in st.m] + [1] * (n - body), reverse=True))


# -- direct engine -----------------------------------------------------------


@lru_cache(maxsize=8)
def _full_scan(n: int):
    return kernels.pair_type_census(n)


def _merged_scan(n: int, threads: int):
    if threads <= 1:
        return _full_scan(n)
    merged: dict[tuple, list[int]] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(kernels.pair_type_census, n, first) for first in range(n)]
        for fut in futures:  # fixed submission order keeps the reduce deterministic
            for key, (alla, trans) in fut.result().items():
                rec = merged.setdefault(key, [0, 0])
                rec[0] += alla
                rec[1] += trans
    return merged


def count_direct(
    st: Stratum, n: int, budget: int = DIRECT_BUDGET_DEFAULT, threads: int = 1
) -> CountRecord:
    """Exact transitive pair count by enumeration over (class rep h, all v)."""
    target = commutator_class(st, n)
    if target is None:
        return CountRecord(st, n, 0, "direct")
    if n > budget:
        raise BudgetExceededError(
            f"direct engine budget is N <= {budget}, asked for {n}", reached=budget
        )
    scan = _merged_scan(n, threads)
    total = 0
    for (htype, ctype), (_, trans) in scan.items():
        if ctype == target:
            total += class_size(n, htype) * trans
    return CountRecord(st, n, total, "direct")


def all_pairs_direct(st: Stratum, n: int, budget: int = DIRECT_BUDGET_DEFAULT) -> int:
    """Pairs with the right commutator class but no transitivity requirement."""
    target = commutator_class(st, n)
    if target is None:
        return 0
    if n > budget:
        raise BudgetExceededError(
            f"direct engine budget is N <= {budget}, asked for {n}", reached=budget
        )
    scan = _full_scan(n)
    return sum(
        class_size(n, htype) * alla
        for (htype, ctype), (alla, _) in scan.items()
        if ctype == target
    )


# -- Frobenius engine ---------------------------------------------------------


@lru_cache(maxsize=None)
def _all_pairs_frobenius(ctype: tuple[int, ...]) -> int:
    """#{(h,v) in S_n^2 : [h,v] in class ctype} via the character sum.

    N!/dim is the integer hook product, so the whole sum stays in Z.
    """
    n = sum(ctype)
    from .strata import partitions_of

    total = 0
    for lam in partitions_of(n):
        chi = character(lam, ctype)
        if chi:
            total += chi * hook_product(lam)
    return class_size(n, ctype) * total


def _submultisets(m: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = {()}
    for part in m:
        out |= {tuple(sorted(s + (part,), reverse=True)) for s in out}
    return sorted(out)


@lru_cache(maxsize=None)
def _pairs_any(mu: tuple[int, ...], k: int) -> int:
    """All (possibly intransitive) pairs on k letters with cone multiset mu."""
    if k == 0:
        return 1 if not mu else 0
    body = sum(x + 1 for x in mu)
    if body > k:
        return 0
    ctype = tuple(sorted([x + 1 for x in mu] + [1] * (k - body), reverse=True))
    return _all_pairs_frobenius(ctype)


@lru_cache(maxsize=None)
def _pairs_transitive(mu: tuple[int, ...], k: int) -> int:
    """Transitive pairs on k letters with cone multiset mu.

    Sieve on the component containing letter 1: every configuration splits
    uniquely as (transitive block of size j with cones nu) x (rest); blocks
    without cones are unramified torus covers and need no special casing.
    """
    if k <= 0:
        return 0
    total = _pairs_any(mu, k)
    if total == 0:
        return 0
    correction = 0
    for nu in _submultisets(mu):
        rest = _multiset_minus(mu, nu)
        for j in range(1, k + 1):
            if nu == mu and j == k:
                continue
            t = _pairs_transitive(nu, j)
            if not t:
                continue
            rem = _pairs_any(rest, k - j)
            if not rem:
                continue
            correction += math.comb(k - 1, j - 1) * t * rem
    return total - correction


def _multiset_minus(m: tuple[int, ...], mu: tuple[int, ...]) -> tuple[int, ...]:
    out = list(m)
    for x in mu:
        out.remove(x)
    return tuple(out)


def count_frobenius(
    st: Stratum, n: int, budget: int = FROBENIUS_BUDGET_DEFAULT
) -> CountRecord:
    """Exact transitive pair count via character sums + connectivity sieve."""
    if n > budget:
        raise BudgetExceededError(
            f"frobenius engine budget is N <= {budget}, asked for {n}",
            reached=budget,
        )
    if commutator_class(st, n) is None:
        return CountRecord(st, n, 0, "frobenius")
    return CountRecord(st, n, _pairs_transitive(st.m, n), "frobenius")


def count(st: Stratum, n: int, engine: str = "frobenius", **kw) -> CountRecord:
    if engine == "direct":
        return count_direct(st, n, **kw)
    if engine == "frobenius":
        return count_frobenius(st, n, **kw)
    raise ValueError(f"unknown engine {engine!r}")


def cumulative_count(
    st: Stratum, n_max: int, engine: str = "frobenius", db: "CensusDB | None" = None, **kw
) -> Fraction:
    """Sum of labeled weighted counts over all areas N <= n_max."""
    total = Fraction(0)
    for n in range(st.min_squares, n_max + 1):
        rec = None
        if db is not None:
            rec = db.get(st, n, engine)
        if rec is None:
            rec = count(st, n, engine, **kw)
            if db is not None:
                db.add(rec)
        total += rec.labeled_weighted
    return total


# -- per-component census ------------------------------------------------------


def count_by_component(
    st: Stratum, n: int, budget: int = 8
) -> dict[Component, CountRecord]:
    """Split of the direct census of (stratum, n) by connected component.

    Enumerates passing pairs explicitly (direct engine only) and classifies
    one representative per isomorphism class; conjugation invariance of the
    classifiers turns that into exact pair counts.
    """
    target = commutator_class(st, n)
    out: dict[Component, int] = {}
    if target is None:
        return {}
    if n > budget:
        raise BudgetExceededError(
            f"component census budget is N <= {budget}, asked for {n}", reached=budget
        )
    from .strata import partitions_of

    known: dict[tuple, Component] = {}
    for htype in partitions_of(n):
        h = perms.class_representative(n, htype)
        size = class_size(n, htype)
        hinv = perms.inverse(h)
        for v in permutations(range(n)):
            vinv = perms.inverse(v)
            comm = tuple(h[v[hinv[vinv[i]]]] for i in range(n))
            if perms.cycle_type(comm) != target:
                continue
            o = Origami(h, v)
            if not o.is_connected:
                continue
            key = o.canonical_pair()
            comp = known.get(key)
            if comp is None:
                comp = known[key] = component_of(o)
            out[comp] = out.get(comp, 0) + size
    return {
        comp: CountRecord(st, n, pairs, "direct", component=comp)
        for comp, pairs in sorted(out.items(), key=lambda kv: kv[0].value)
    }


# -- persistent cache ------------------------------------------------------------


class CensusDB:
    """Append-only JSON-lines store of census records.

    One object per line; counts are decimal strings so arbitrary precision
    survives serialization.  Re-adding an identical record is a no-op;
    adding a conflicting one (same key, different numbers, or a cross-engine
    mismatch) raises CacheConflictError.  Writes go to a temp file that is
    atomically renamed.  Single-writer, many-reader: concurrent readers are
    safe, concurrent writers are not coordinated.
    """

    def __init__(self, path: str | os.PathLike):
        self.path = str(path)
        self._records: dict[tuple, CountRecord] = {}
        if os.path.exists(self.path):
            self._load()

    @staticmethod
    def _key(rec: CountRecord) -> tuple:
        comp = rec.component.value if rec.component else ""
        return (format_stratum(rec.stratum), rec.n, rec.engine, comp)

    def _load(self) -> None:
        with open(self.path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    rec = _record_from_json(obj)
                except (ValueError, KeyError) as exc:
                    raise CacheConflictError(
                        f"{self.path}:{line_no}: malformed record: {exc}"
                    ) from exc
                self._check_and_store(rec, f"{self.path}:{line_no}")

    def _check_and_store(self, rec: CountRecord, where: str) -> bool:
        key = self._key(rec)
        old = self._records.get(key)
        if old is not None:
            if old.pairs_transitive != rec.pairs_transitive:
                raise CacheConflictError(
                    f"{where}: conflicting counts for {key}: "
                    f"{old.pairs_transitive} vs {rec.pairs_transitive}"
                )
            return False
        other_engine = "frobenius" if rec.engine == "direct" else "direct"
        twin = self._records.get((key[0], key[1], other_engine, key[3]))
        if twin is not None and twin.pairs_transitive != rec.pairs_transitive:
            raise CacheConflictError(
                f"{where}: engines disagree on {key[0]} N={key[1]}: "
                f"direct/frobenius give {twin.pairs_transitive} vs {rec.pairs_transitive}"
            )
        self._records[key] = rec
        return True

    def get(
        self, st: Stratum, n: int, engine: str, component: Component | None = None
    ) -> CountRecord | None:
        comp = component.value if component else ""
        return self._records.get((format_stratum(st), n, engine, comp))

    def records(self) -> list[CountRecord]:
        return [self._records[k] for k in sorted(self._records)]

    def add(self, rec: CountRecord) -> bool:
        """Store and persist; returns False when the record already existed."""
        if not self._check_and_store(rec, "add"):
            return False
        self._flush()
        return True

    def _flush(self) -> None:
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            for key in sorted(self._records):
                fh.write(json.dumps(_record_to_json(self._records[key])) + "\n")
        os.replace(tmp, self.path)


def _record_to_json(rec: CountRecord) -> dict:
    obj = {
        "stratum": format_stratum(rec.stratum),
        "n": rec.n,
        "pairs": str(rec.pairs_transitive),
        "weighted_num": str(rec.weighted.numerator),
        "weighted_den": str(rec.weighted.denominator),
        "labeled_factor": rec.labeled_factor,
        "engine": rec.engine,
        "created_at": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    if rec.component is not None:
        obj["component"] = rec.component.value
    return obj


def _record_from_json(obj: dict) -> CountRecord:
    st = parse_stratum(obj["stratum"])
    rec = CountRecord(
        stratum=st,
        n=int(obj["n"]),
        pairs_transitive=int(obj["pairs"]),
        engine=obj["engine"],
        component=Component(obj["component"]) if "component" in obj else None,
    )
    if rec.engine not in ("direct", "frobenius"):
        raise ValueError(f"unknown engine {rec.engine!r}")
    claimed = Fraction(int(obj["weighted_num"]), int(obj["weighted_den"]))
    if claimed != rec.weighted:
        raise ValueError(
            f"stored weighted count {claimed} inconsistent with pairs/{rec.n}!"
        )
    if int(obj["labeled_factor"]) != rec.labeled_factor:
        raise ValueError("stored labeling factor inconsistent with stratum")
    return rec
