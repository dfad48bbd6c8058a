"""Pure-Python max-min kernels; ``_maxmin_ext`` is the compiled twin.

Both modules expose the same two functions and must return identical results.

Integer inputs only: per-RB rates are whole bits/s, demands are rounded up to
whole bits/s (exact, because K * rate is an integer).
"""


def waterfill(rates, floors, n_rbs):
    """Greedy max-min split of ``n_rbs`` RBs over users with per-RB ``rates``.

    Starts from ``floors`` and hands out the remaining RBs one at a time to
    the user with the lowest current throughput (ties -> lowest position).
    Returns None when the floors alone exceed ``n_rbs``.
    """
    k = list(floors)
    left = n_rbs - sum(k)
    if left < 0:
        return None
    thr = [r * x for r, x in zip(rates, k)]
    n = len(k)
    if n == 0:
        return k
    for _ in range(left):
        j = 0
        low = thr[0]
        for q in range(1, n):
            if thr[q] < low:
                low = thr[q]
                j = q
        k[j] += 1
        thr[j] += rates[j]
    return k


def _ceil_div(a, b):
    return -(-a // b)


def association_phi(tmat, n_rbs, demand, serving):
    """Max-min value of a fixed association, or -1 if its demand floors do not fit."""
    n_enb = len(tmat)
    phi = None
    for i in range(n_enb):
        users = [j for j, s in enumerate(serving) if s == i]
        if not users:
            continue
        rates = [tmat[i][j] for j in users]
        floors = [_ceil_div(demand[j], r) for j, r in zip(users, rates)]
        k = waterfill(rates, floors, n_rbs)
        if k is None:
            return -1
        low = min(r * x for r, x in zip(rates, k))
        phi = low if phi is None else min(phi, low)
    return 0 if phi is None else phi


def search(tmat, n_rbs, demand, tau):
    """Lexicographically first association with the largest max-min value >= ``tau``.

    Depth-first over users in index order, eNodeBs in index order. A node is
    kept only if every unassigned user still fits on some eNodeB at the
    current target and the summed minimum needs fit in the spare RBs. Each
    leaf found raises the target to its value + 1.

    Returns ``(serving, phi)``; ``serving`` is None if nothing reaches ``tau``.
    """
    n_enb = len(tmat)
    n_users = len(tmat[0]) if n_enb else 0
    over = n_rbs + 1
    need = [[over] * n_users for _ in range(n_enb)]
    used = [0] * n_enb
    serving = [0] * n_users
    state = {"tau": tau, "best": None, "phi": -1}

    def set_target(t):
        state["tau"] = t
        for i in range(n_enb):
            row = tmat[i]
            for j in range(n_users):
                r = row[j]
                if r <= 0:
                    need[i][j] = over
                else:
                    target = demand[j] if demand[j] > t else t
                    need[i][j] = _ceil_div(target, r) if target > 0 else 0

    def rest_fits(d):
        total = 0
        spare = 0
        for i in range(n_enb):
            # ancestors' counts can overshoot once the target has been raised
            if used[i] > n_rbs:
                return False
            spare += n_rbs - used[i]
        for j in range(d, n_users):
            low = over
            for i in range(n_enb):
                nij = need[i][j]
                if nij < low and used[i] + nij <= n_rbs:
                    low = nij
            if low == over:
                return False
            total += low
            if total > spare:
                return False
        return True

    def descend(d):
        if d == n_users:
            phi = association_phi(tmat, n_rbs, demand, serving)
            state["best"] = list(serving)
            state["phi"] = phi
            set_target(phi + 1)
            for i in range(n_enb):
                used[i] = 0
            for j in range(n_users):
                used[serving[j]] += need[serving[j]][j]
            return
        for i in range(n_enb):
            nij = need[i][d]
            if used[i] + nij > n_rbs:
                continue
            used[i] += nij
            serving[d] = i
            if rest_fits(d + 1):
                descend(d + 1)
            used[i] -= need[i][d]

    set_target(tau)
    if n_users and rest_fits(0):
        descend(0)
    return state["best"], state["phi"]
