# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the S_N pair scan and the rational-direction sweep.

Same contracts as _kernels_py; selected by stcensus.kernels at import time.
"""
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "compiled"


def pair_type_census(int n, v_first=None):
    """Commutator census over (class rep h, all v); see _kernels_py for the contract."""
    from .perms import class_representative
    from .strata import partitions_of

    types = partitions_of(n)
    cdef int n_types = len(types)
    cdef int n_reps = n_types
    reps_py = [class_representative(n, t) for t in types]

    # type lookup: encode multiplicity vector of cycle lengths as a key
    type_key = {}
    cdef int ti
    for ti in range(n_types):
        cnt = [0] * (n + 1)
        for part in types[ti]:
            cnt[part] += 1
        key = 0
        for l in range(1, n + 1):
            key = key * (n + 1) + cnt[l]
        type_key[key] = ti

    cdef long long *counts = <long long *> malloc(n_reps * n_types * 2 * sizeof(long long))
    cdef int *reps = <int *> malloc(n_reps * n * sizeof(int))
    cdef int *repinv = <int *> malloc(n_reps * n * sizeof(int))
    cdef int *v = <int *> malloc(n * sizeof(int))
    cdef int *vinv = <int *> malloc(n * sizeof(int))
    cdef int *comm = <int *> malloc(n * sizeof(int))
    cdef int *cnt_arr = <int *> malloc((n + 1) * sizeof(int))
    cdef int *uf = <int *> malloc(n * sizeof(int))
    cdef int *seen = <int *> malloc(n * sizeof(int))
    if not (counts and reps and repinv and v and vinv and comm and cnt_arr and uf and seen):
        raise MemoryError

    cdef int r, i, j, first
    cdef long long key_c
    try:
        for r in range(n_reps * n_types * 2):
            counts[r] = 0
        for r in range(n_reps):
            for i in range(n):
                reps[r * n + i] = reps_py[r][i]
            for i in range(n):
                repinv[r * n + reps[r * n + i]] = i

        first = -1 if v_first is None else int(v_first)
        # iterate v in lexicographic order (optionally with v[0] fixed)
        if first >= 0:
            v[0] = first
            j = 0
            for i in range(1, n):
                if j == first:
                    j += 1
                v[i] = j
                j += 1
        else:
            for i in range(n):
                v[i] = i

        while True:
            _process(n, n_reps, reps, repinv, v, vinv, comm, cnt_arr, uf, seen,
                     counts, n_types, type_key)
            if not _next_perm(v, n, 1 if first >= 0 else 0):
                break

        out = {}
        for r in range(n_reps):
            for ti in range(n_types):
                a = counts[(r * n_types + ti) * 2]
                t = counts[(r * n_types + ti) * 2 + 1]
                if a or t:
                    out[(types[r], types[ti])] = [a, t]
        return out
    finally:
        free(counts); free(reps); free(repinv); free(v); free(vinv)
        free(comm); free(cnt_arr); free(uf); free(seen)


cdef inline int _next_perm(int *v, int n, int fixed_head):
    """Lexicographic successor on v[fixed_head:]; returns 0 when exhausted."""
    cdef int i = n - 2, j, tmp
    while i >= fixed_head and v[i] >= v[i + 1]:
        i -= 1
    if i < fixed_head:
        return 0
    j = n - 1
    while v[j] <= v[i]:
        j -= 1
    tmp = v[i]; v[i] = v[j]; v[j] = tmp
    i += 1
    j = n - 1
    while i < j:
        tmp = v[i]; v[i] = v[j]; v[j] = tmp
        i += 1; j -= 1
    return 1


cdef inline void _process(int n, int n_reps, int *reps, int *repinv, int *v,
                          int *vinv, int *comm, int *cnt_arr, int *uf, int *seen,
                          long long *counts, int n_types, dict type_key):
    cdef int i, r, a, b, x, y, m, ti
    cdef long long key
    for i in range(n):
        vinv[v[i]] = i
    for r in range(n_reps):
        # commutator h v h^-1 v^-1
        for i in range(n):
            comm[i] = reps[r * n + v[repinv[r * n + vinv[i]]]]
        # cycle type counts
        for i in range(n + 1):
            cnt_arr[i] = 0
        for i in range(n):
            seen[i] = 0
        for i in range(n):
            if not seen[i]:
                m = 1
                seen[i] = 1
                x = comm[i]
                while x != i:
                    seen[x] = 1
                    m += 1
                    x = comm[x]
                cnt_arr[m] += 1
        key = 0
        for i in range(1, n + 1):
            key = key * (n + 1) + cnt_arr[i]
        ti = type_key[key]
        counts[(r * n_types + ti) * 2] += 1
        # transitivity of <h, v> via union-find
        for i in range(n):
            uf[i] = i
        m = n
        for i in range(n):
            for x in range(2):
                y = reps[r * n + i] if x == 0 else v[i]
                a = i
                while uf[a] != a:
                    uf[a] = uf[uf[a]]
                    a = uf[a]
                b = y
                while uf[b] != b:
                    uf[b] = uf[uf[b]]
                    b = uf[b]
                if a != b:
                    uf[a] = b
                    m -= 1
        if m == 1:
            counts[(r * n_types + ti) * 2 + 1] += 1


def direction_spectra(h, v, dirs):
    """Per-direction maximal cylinder (width, height) lists; see _kernels_py."""
    cdef int n = len(h)
    cdef int *hh = <int *> malloc(n * sizeof(int))
    cdef int *vv = <int *> malloc(n * sizeof(int))
    cdef int *tmp = <int *> malloc(n * sizeof(int))
    cdef int *pw = <int *> malloc(n * sizeof(int))
    cdef int *seen = <int *> malloc(n * sizeof(int))
    cdef int *cyc = <int *> malloc(n * sizeof(int))
    cdef int *row_of = <int *> malloc(n * sizeof(int))
    cdef int *row_w = <int *> malloc(n * sizeof(int))
    cdef int *row_first = <int *> malloc(n * sizeof(int))
    cdef int *parent = <int *> malloc(n * sizeof(int))
    cdef int *height = <int *> malloc(n * sizeof(int))
    if not (hh and vv and tmp and pw and seen and cyc and row_of and row_w
            and row_first and parent and height):
        raise MemoryError

    cdef int i, x, m, s, idx, rid, nrows, a, b, root
    cdef long long p, q, k, t
    out = []
    try:
        for pq in dirs:
            p = pq[0]; q = pq[1]
            for i in range(n):
                hh[i] = h[i]
                vv[i] = v[i]
            while q != 0:
                k = p // q  # floor division
                p -= k * q
                if k != 0:
                    # pw = hh^k via cycle stepping, then vv <- vv o hh^k
                    for i in range(n):
                        seen[i] = 0
                    for i in range(n):
                        if not seen[i]:
                            m = 1
                            cyc[0] = i
                            seen[i] = 1
                            x = hh[i]
                            while x != i:
                                seen[x] = 1
                                cyc[m] = x
                                m += 1
                                x = hh[x]
                            s = <int> (k % m)
                            if s < 0:
                                s += m
                            for idx in range(m):
                                pw[cyc[idx]] = cyc[(idx + s) % m]
                    for i in range(n):
                        tmp[i] = vv[pw[i]]
                    memcpy(vv, tmp, n * sizeof(int))
                # S: (p,q) <- (-q,p), (h,v) <- (v^-1, h)
                t = p; p = -q; q = t
                for i in range(n):
                    tmp[vv[i]] = i
                memcpy(vv, hh, n * sizeof(int))
                memcpy(hh, tmp, n * sizeof(int))
            if p == -1:
                for i in range(n):
                    tmp[hh[i]] = i
                memcpy(hh, tmp, n * sizeof(int))
                for i in range(n):
                    tmp[vv[i]] = i
                memcpy(vv, tmp, n * sizeof(int))
            # horizontal cylinders of (hh, vv)
            nrows = 0
            for i in range(n):
                row_of[i] = -1
            for i in range(n):
                if row_of[i] < 0:
                    m = 1
                    row_of[i] = nrows
                    x = hh[i]
                    while x != i:
                        row_of[x] = nrows
                        m += 1
                        x = hh[x]
                    row_w[nrows] = m
                    row_first[nrows] = i
                    parent[nrows] = nrows
                    nrows += 1
            # merge rows with cone-free upper seam
            for i in range(n):
                seen[i] = 1 if vv[hh[i]] == hh[vv[i]] else 0
            for rid in range(nrows):
                x = row_first[rid]
                m = 1
                idx = x
                while True:
                    if not seen[idx]:
                        m = 0
                        break
                    idx = hh[idx]
                    if idx == x:
                        break
                if m:
                    a = rid
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = row_of[vv[x]]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[a] = b
            for rid in range(nrows):
                height[rid] = 0
            for rid in range(nrows):
                a = rid
                while parent[a] != a:
                    a = parent[a]
                height[a] += 1
            cylinders = []
            for rid in range(nrows):
                if parent[rid] == rid:
                    cylinders.append((row_w[rid], height[rid]))
            cylinders.sort()
            out.append(cylinders)
        return out
    finally:
        free(hh); free(vv); free(tmp); free(pw); free(seen); free(cyc)
        free(row_of); free(row_w); free(row_first); free(parent); free(height)
