import math
import random

import pytest

from stcensus import _kernels_py, kernels
from stcensus.perms import random_perm

compiled = pytest.importorskip("stcensus._kernels", reason="compiled kernels not built")


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")
    assert "python" in kernels.available_backends()


def test_pair_scan_backends_agree():
    for n in range(1, 8):
        a = compiled.pair_type_census(n)
        b = _kernels_py.pair_type_census(n)
        assert {k: list(v) for k, v in a.items()} == {k: list(v) for k, v in b.items()}


def test_pair_scan_blocks_sum_to_total():
    n = 6
    full = {k: list(v) for k, v in compiled.pair_type_census(n).items()}
    merged = {}
    for first in range(n):
        for k, (a, t) in compiled.pair_type_census(n, first).items():
            rec = merged.setdefault(k, [0, 0])
            rec[0] += a
            rec[1] += t
    assert merged == full


def test_direction_spectra_backends_agree():
    rng = random.Random(5)
    dirs = [
        (p, q)
        for q in range(0, 9)
        for p in range(-8, 9)
        if (q > 0 or (q == 0 and p == 1)) and math.gcd(abs(p), abs(q)) == 1
    ]
    for _ in range(40):
        n = rng.randrange(1, 10)
        h, v = random_perm(n, rng), random_perm(n, rng)
        a = compiled.direction_spectra(h, v, dirs)
        b = _kernels_py.direction_spectra(h, v, dirs)
        assert [list(map(tuple, x)) for x in a] == [list(map(tuple, x)) for x in b]


def test_forced_pure_python(monkeypatch):
    # the dispatcher honors STCENSUS_PURE_PYTHON
    import importlib

    monkeypatch.setenv("STCENSUS_PURE_PYTHON", "1")
    import stcensus.kernels as kmod

    reloaded = importlib.reload(kmod)
    try:
        assert reloaded.BACKEND == "python"
    finally:
        monkeypatch.delenv("STCENSUS_PURE_PYTHON")
        importlib.reload(kmod)
