# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled max-min kernels; mirrors ``_maxmin_py`` exactly."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef struct Search:
    int n_enb
    int n_users
    i64 n_rbs
    i64 over
    const i64 *tmat      # n_enb x n_users, row-major
    const i64 *demand
    i64 *need
    i64 *used
    int *serving
    int *best
    int found
    i64 phi
    # scratch for leaf evaluation
    i64 *k
    i64 *thr
    i64 *rates


cdef inline i64 ceil_div(i64 a, i64 b) noexcept nogil:
    # a >= 0, b > 0
    return (a + b - 1) // b


cdef i64 waterfill_c(i64 *rates, i64 *k, i64 *thr, int n, i64 left) noexcept nogil:
    """Greedy top-up of ``k`` (already holding floors); returns the min throughput."""
    cdef int q, j
    cdef i64 low, step
    for q in range(n):
        thr[q] = rates[q] * k[q]
    for step in range(left):
        j = 0
        low = thr[0]
        for q in range(1, n):
            if thr[q] < low:
                low = thr[q]
                j = q
        k[j] += 1
        thr[j] += rates[j]
    low = thr[0]
    for q in range(1, n):
        if thr[q] < low:
            low = thr[q]
    return low


cdef i64 assoc_phi(Search *s, int *serving) noexcept nogil:
    cdef int i, j, n
    cdef i64 total, left, low, phi = -2
    cdef i64 r
    for i in range(s.n_enb):
        n = 0
        total = 0
        for j in range(s.n_users):
            if serving[j] == i:
                r = s.tmat[i * s.n_users + j]
                s.rates[n] = r
                s.k[n] = ceil_div(s.demand[j], r)
                total += s.k[n]
                n += 1
        if n == 0:
            continue
        left = s.n_rbs - total
        if left < 0:
            return -1
        low = waterfill_c(s.rates, s.k, s.thr, n, left)
        if phi == -2 or low < phi:
            phi = low
    return 0 if phi == -2 else phi


cdef void set_target(Search *s, i64 t) noexcept nogil:
    cdef int i, j
    cdef i64 r, target
    for i in range(s.n_enb):
        for j in range(s.n_users):
            r = s.tmat[i * s.n_users + j]
            if r <= 0:
                s.need[i * s.n_users + j] = s.over
            else:
                target = s.demand[j] if s.demand[j] > t else t
                s.need[i * s.n_users + j] = ceil_div(target, r) if target > 0 else 0


cdef bint rest_fits(Search *s, int d) noexcept nogil:
    cdef int i, j
    cdef i64 total = 0, spare = 0, low, nij
    for i in range(s.n_enb):
        if s.used[i] > s.n_rbs:
            return False
        spare += s.n_rbs - s.used[i]
    for j in range(d, s.n_users):
        low = s.over
        for i in range(s.n_enb):
            nij = s.need[i * s.n_users + j]
            if nij < low and s.used[i] + nij <= s.n_rbs:
                low = nij
        if low == s.over:
            return False
        total += low
        if total > spare:
            return False
    return True


cdef void descend(Search *s, int d) noexcept nogil:
    cdef int i, j
    cdef i64 nij, phi
    if d == s.n_users:
        phi = assoc_phi(s, s.serving)
        for j in range(s.n_users):
            s.best[j] = s.serving[j]
        s.found = 1
        s.phi = phi
        set_target(s, phi + 1)
        for i in range(s.n_enb):
            s.used[i] = 0
        for j in range(s.n_users):
            s.used[s.serving[j]] += s.need[s.serving[j] * s.n_users + j]
        return
    for i in range(s.n_enb):
        nij = s.need[i * s.n_users + d]
        if s.used[i] + nij > s.n_rbs:
            continue
        s.used[i] += nij
        s.serving[d] = i
        if rest_fits(s, d + 1):
            descend(s, d + 1)
        s.used[i] -= s.need[i * s.n_users + d]


def _flatten(tmat):
    n_enb = len(tmat)
    n_users = len(tmat[0]) if n_enb else 0
    flat = [int(tmat[i][j]) for i in range(n_enb) for j in range(n_users)]
    return n_enb, n_users, flat


def waterfill(rates, floors, n_rbs):
    """Greedy max-min split; see ``_maxmin_py.waterfill``."""
    cdef int n = len(rates), q
    cdef i64 left = n_rbs - sum(floors)
    if left < 0:
        return None
    if n == 0:
        return []
    cdef i64 *buf = <i64 *> malloc(3 * n * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    try:
        for q in range(n):
            buf[q] = rates[q]
            buf[n + q] = floors[q]
        waterfill_c(buf, buf + n, buf + 2 * n, n, left)
        return [buf[n + q] for q in range(n)]
    finally:
        free(buf)


def search(tmat, n_rbs, demand, tau):
    """Lexicographically first association with the largest max-min value >= ``tau``."""
    cdef int n_enb, n_users, cells, q
    cdef Search s
    n_enb, n_users, flat = _flatten(tmat)
    if n_users == 0:
        return None, -1
    cells = n_enb * n_users
    cdef i64 *ibuf = <i64 *> malloc((2 * cells + n_users + n_enb + 3 * n_users) * sizeof(i64))
    cdef int *jbuf = <int *> malloc(2 * n_users * sizeof(int))
    if ibuf == NULL or jbuf == NULL:
        free(ibuf)
        free(jbuf)
        raise MemoryError()
    try:
        for q in range(cells):
            ibuf[q] = flat[q]
        for q in range(n_users):
            ibuf[cells + q] = demand[q]
        s.n_enb = n_enb
        s.n_users = n_users
        s.n_rbs = n_rbs
        s.over = n_rbs + 1
        s.tmat = ibuf
        s.demand = ibuf + cells
        s.need = ibuf + cells + n_users
        s.used = ibuf + 2 * cells + n_users
        s.k = s.used + n_enb
        s.thr = s.k + n_users
        s.rates = s.thr + n_users
        s.serving = jbuf
        s.best = jbuf + n_users
        s.found = 0
        s.phi = -1
        for q in range(n_enb):
            s.used[q] = 0
        for q in range(n_users):
            s.serving[q] = 0
        set_target(&s, tau)
        with nogil:
            if rest_fits(&s, 0):
                descend(&s, 0)
        if not s.found:
            return None, -1
        return [s.best[q] for q in range(n_users)], s.phi
    finally:
        free(ibuf)
        free(jbuf)
