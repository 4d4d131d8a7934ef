"""Counting closed-geodesic cylinders on square-tiled surfaces.

On a square-tiled surface every regular closed geodesic sits in a maximal
cylinder pointing in a rational direction, so the area-weighted counter
N_area(S, L) is a finite sum over primitive directions.  Directions are
unoriented (a family and its reverse are one family); this convention is
pinned by the unit torus, whose counter must give c_area = 3/pi^2 as forced
by the Lyapunov-sum formula.  Surfaces are rescaled to unit area, i.e. all
lengths are divided by sqrt(N).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import kernels
from .ensemble import origamis_in_stratum
from .origami import Origami
from .strata import Component, Stratum


@dataclass(frozen=True)
class Direction:
    """Primitive unoriented direction, canonical rep: q > 0, or (p, q) = (1, 0)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f"direction ({self.p},{self.q}) is not primitive")
        if not (self.q > 0 or (self.q == 0 and self.p == 1)):
            raise ValueError(f"direction ({self.p},{self.q}) is not canonical")

    @property
    def norm2(self) -> int:
        return self.p * self.p + self.q * self.q


def canonical_direction(p: int, q: int) -> Direction:
    if p == 0 and q == 0:
        raise ValueError("zero vector has no direction")
    g = math.gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Direction(p, q)


def direction_reduce(p: int, q: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Integer matrix of determinant 1 sending the primitive (p, q) to (1, 0)."""
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"({p},{q}) is not primitive")
    a, b = _bezout(p, q)
    mat = ((a, b), (-q, p))
    assert mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0] == 1
    assert (mat[0][0] * p + mat[0][1] * q, mat[1][0] * p + mat[1][1] * q) == (1, 0)
    return mat


def _bezout(p: int, q: int) -> tuple[int, int]:
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


@lru_cache(maxsize=64)
def primitive_directions(max_norm2: int) -> tuple[Direction, ...]:
    """Canonical primitive directions with p^2 + q^2 <= max_norm2, by norm."""
    out = []
    if max_norm2 >= 1:
        out.append(Direction(1, 0))
    qmax = math.isqrt(max_norm2)
    for q in range(1, qmax + 1):
        pmax = math.isqrt(max_norm2 - q * q)
        for p in range(-pmax, pmax + 1):
            if math.gcd(abs(p), q) == 1:
                out.append(Direction(p, q))
    out.sort(key=lambda d: (d.norm2, d.q, d.p))
    return tuple(out)


@dataclass(frozen=True)
class CareaSample:
    """Per-surface Siegel-Veech estimate at cutoff L."""

    origami: str
    L: float
    n_area: float
    carea_hat: float
    carea_fit: float | None = None

    def __post_init__(self) -> None:
        if self.n_area < 0 or self.carea_hat < 0:
            raise ValueError("counts are nonnegative")


def cylinder_length_spectrum(
    o: Origami, l_max: float
) -> list[tuple[Fraction, Fraction]]:
    """(core length squared, area weight) of every cylinder with core <= l_max.

    Lengths are in unit-area units: a cylinder of combinatorial width w in
    direction (p,q) has squared core length w^2 (p^2+q^2)/N and weight
    w*height/N.  Sorted by length then direction order; exact Fractions.
    """
    n = o.n_squares
    lim = l_max * l_max * n  # w^2(p^2+q^2) <= L^2 N, and w >= 1
    max_norm2 = int(math.floor(lim + 1e-9))
    dirs = primitive_directions(max_norm2)
    raw = [(d.p, d.q) for d in dirs]
    spectra = kernels.direction_spectra(o.h, o.v, raw)
    out = []
    for d, cyls in zip(dirs, spectra):
        for width, height in cyls:
            len2 = Fraction(width * width * d.norm2, n)
            if float(len2) <= l_max * l_max + 1e-12:
                out.append((len2, Fraction(width * height, n)))
    out.sort()
    return out


def n_area(o: Origami, l_cutoff: float) -> float:
    """Area-weighted count of closed-geodesic families of length <= L."""
    if l_cutoff <= 0:
        raise ValueError("cutoff must be positive")
    spec = cylinder_length_spectrum(o, l_cutoff)
    return math.fsum(float(w) for len2, w in spec if float(len2) <= l_cutoff**2)


def n_area_profile(
    o: Origami, l_values: list[float]
) -> list[float]:
    """n_area at several cutoffs from one direction sweep."""
    lmax = max(l_values)
    spec = cylinder_length_spectrum(o, lmax)
    out = []
    for lv in l_values:
        out.append(math.fsum(float(w) for len2, w in spec if float(len2) <= lv * lv))
    return out


def sweep_lengths(l_cutoff: float, points: int = 8) -> list[float]:
    """Deterministic fit window: points equally spaced over [L/2, L]."""
    lo = l_cutoff / 2
    step = (l_cutoff - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


def quadratic_growth_fit(o: Origami, l_values: list[float]) -> tuple[float, float, float]:
    """Affine fit of n_area against pi L^2: returns (slope, intercept, R^2)."""
    ys = n_area_profile(o, l_values)
    xs = [math.pi * lv * lv for lv in l_values]
    xbar = math.fsum(xs) / len(xs)
    ybar = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - xbar) ** 2 for x in xs)
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    ss_res = math.fsum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys))
    ss_tot = math.fsum((y - ybar) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r2


def carea_surface(o: Origami, l_cutoff: float, sweep_points: int = 8) -> CareaSample:
    """Endpoint estimate n_area/(pi L^2) plus the affine-fit slope estimator."""
    ls = sweep_lengths(l_cutoff, sweep_points)
    ys = n_area_profile(o, ls)
    slope, _, _ = _affine(ls, ys)
    na = ys[-1]
    return CareaSample(
        origami=o.to_text(),
        L=l_cutoff,
        n_area=na,
        carea_hat=na / (math.pi * l_cutoff**2),
        carea_fit=slope,
    )


def _affine(l_values, ys) -> tuple[float, float, float]:
    xs = [math.pi * lv * lv for lv in l_values]
    xbar = math.fsum(xs) / len(xs)
    ybar = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - xbar) ** 2 for x in xs)
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    return slope, ybar - slope * xbar, 0.0


@dataclass(frozen=True)
class StratumCareaReport:
    stratum: Stratum
    component: Component | None
    n: int
    L: float
    samples: int
    carea_mean: float
    carea_fit: float


def carea_stratum(
    st: Stratum,
    n: int,
    l_cutoff: float,
    sample_budget: int = 400,
    component: Component | None = None,
    threads: int = 1,
    seed: int = 0,
) -> StratumCareaReport:
    """1/|Aut|-weighted ensemble average of per-surface estimates.

    Enumerates every N-square origami of the stratum (optionally one
    component); if there are more classes than the budget, a deterministic
    uniform subsample is used.
    """
    from .origami import component_of

    oris = list(origamis_in_stratum(st, n))
    if component is not None:
        oris = [o for o in oris if component_of(o) == component]
    if not oris:
        raise ValueError(f"no origamis with {n} squares in {st} (component={component})")
    if len(oris) > sample_budget:
        import hashlib
        import random

        digest = hashlib.sha256(
            f"{st}|{n}|{sample_budget}|{seed}".encode()
        ).digest()
        rng = random.Random(int.from_bytes(digest[:8], "big"))
        oris = rng.sample(oris, sample_budget)
        oris.sort(key=lambda o: (o.h, o.v))
    samples = _map_samples(oris, l_cutoff, threads)
    weights = [1.0 / o.automorphism_count() for o in oris]
    wsum = math.fsum(weights)
    mean_hat = math.fsum(w * s.carea_hat for w, s in zip(weights, samples)) / wsum
    mean_fit = math.fsum(w * s.carea_fit for w, s in zip(weights, samples)) / wsum
    return StratumCareaReport(
        stratum=st,
        component=component,
        n=n,
        L=l_cutoff,
        samples=len(oris),
        carea_mean=mean_hat,
        carea_fit=mean_fit,
    )


SAMPLE_LOG_HEADER = ["origami", "N", "L", "n_area", "carea_hat"]
STRATUM_REPORT_HEADER = [
    "stratum",
    "component",
    "N",
    "L",
    "samples",
    "carea_mean",
    "carea_fit",
]


def write_sample_log(path, samples: list[CareaSample]) -> None:
    """CSV log of per-surface estimates: origami,N,L,n_area,carea_hat."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SAMPLE_LOG_HEADER)
        for s in samples:
            n = Origami.from_text(s.origami).n_squares
            writer.writerow([s.origami, n, s.L, s.n_area, s.carea_hat])


def write_stratum_report(path, reports: list[StratumCareaReport]) -> None:
    """CSV of ensemble results: stratum,component,N,L,samples,carea_mean,carea_fit."""
    import csv

    from .strata import format_stratum

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(STRATUM_REPORT_HEADER)
        for r in reports:
            writer.writerow(
                [
                    format_stratum(r.stratum),
                    str(r.component) if r.component else "",
                    r.n,
                    r.L,
                    r.samples,
                    r.carea_mean,
                    r.carea_fit,
                ]
            )


def _map_samples(oris, l_cutoff: float, threads: int) -> list[CareaSample]:
    if threads <= 1:
        return [carea_surface(o, l_cutoff) for o in oris]
    from concurrent.futures import ProcessPoolExecutor

    texts = [o.to_text() for o in oris]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_carea_worker, texts, [l_cutoff] * len(texts), chunksize=8))


def _carea_worker(text: str, l_cutoff: float) -> CareaSample:
    return carea_surface(Origami.from_text(text), l_cutoff)
