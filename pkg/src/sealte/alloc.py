"""Resource-block allocation: exact max-min, round robin, opportunistic, brute force.

Every method works on a throughput space matrix ``tmat`` of shape (I, J):
bits/s carried by one RB on the link eNodeB i -> user j.  Indices are
0-based internally; ``to_json`` and the CSV writers emit 1-based ids.

The exact max-min search runs in a compiled kernel when available and in a
pure-Python twin otherwise.  Set ``SEALTE_PURE_PYTHON=1`` to force the latter.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _maxmin_py

if os.environ.get("SEALTE_PURE_PYTHON"):
    _kernel = _maxmin_py
else:
    try:
        from . import _maxmin_ext as _kernel
    except ImportError:  # extension not built
        _kernel = _maxmin_py

BACKEND = "cython" if _kernel is not _maxmin_py else "python"

METHODS = ("maxmin", "roundrobin", "opportunistic")

ORACLE_MAX_ENODEBS = 3
ORACLE_MAX_USERS = 6
ORACLE_MAX_RBS = 10


class InfeasibleUserError(ValueError):
    """A user has no eNodeB with a positive per-RB throughput."""

    def __init__(self, user: int):
        super().__init__(f"user {user} has no usable link (all-zero throughput row)")
        self.user = user


class InfeasibleDemandError(ValueError):
    pass


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class AllocationResult:
    method: str
    association: tuple[int, ...]  # serving eNodeB index per user
    rbs: np.ndarray = field(compare=False)  # (I, J) int64 RB counts
    user_throughput: tuple[int, ...]  # bits/s
    n_rbs: int

    @property
    def phi(self) -> int:
        return min(self.user_throughput)

    @property
    def beta(self) -> tuple[float, ...]:
        return tuple(
            float(self.rbs[i, j]) / self.n_rbs for j, i in enumerate(self.association)
        )

    @property
    def user_rbs(self) -> tuple[int, ...]:
        return tuple(int(self.rbs[i, j]) for j, i in enumerate(self.association))

    def __eq__(self, other):
        if not isinstance(other, AllocationResult):
            return NotImplemented
        return (
            self.method == other.method
            and self.association == other.association
            and self.user_throughput == other.user_throughput
            and self.n_rbs == other.n_rbs
            and np.array_equal(self.rbs, other.rbs)
        )

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "association": [i + 1 for i in self.association],
            "rbs": self.rbs.tolist(),
            "user_throughput_bps": list(self.user_throughput),
            "phi_bps": self.phi,
        }


def _as_matrix(tmat) -> np.ndarray:
    values = getattr(tmat, "values", tmat)
    arr = np.asarray(values)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"throughput matrix must be a non-empty 2-D grid, got shape {arr.shape}")
    if np.any(arr < 0):
        raise ValueError("throughput matrix entries must be non-negative")
    out = arr.astype(np.int64)
    if not np.array_equal(out, arr):
        raise ValueError("throughput matrix entries must be whole bits/s")
    return out


def _check_users(tmat: np.ndarray) -> None:
    for j in range(tmat.shape[1]):
        if not np.any(tmat[:, j] > 0):
            raise InfeasibleUserError(j + 1)


def _demand_vector(demand, n_users: int) -> list[int]:
    if demand is None:
        return [0] * n_users
    values = list(getattr(demand, "per_user", demand))
    if len(values) != n_users:
        raise ValueError(f"demand has {len(values)} entries for {n_users} users")
    out = []
    for v in values:
        if v < 0:
            raise ValueError(f"demand must be non-negative, got {v!r}")
        # K * rate is an integer, so K * rate >= D  <=>  K * rate >= ceil(D)
        out.append(int(np.ceil(v)))
    return out


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_n_rbs(n_rbs) -> int:
    if isinstance(n_rbs, bool) or int(n_rbs) != n_rbs or n_rbs < 1:
        raise ValueError(f"n_rbs must be a positive integer, got {n_rbs!r}")
    return int(n_rbs)


def best_link_association(tmat: np.ndarray) -> list[int]:
    """Max-throughput serving eNodeB per user (ties -> lower eNodeB index)."""
    return [int(i) for i in np.argmax(tmat, axis=0)]


def _result(method, tmat, serving, per_enb_k, n_rbs) -> AllocationResult:
    n_enb, n_users = tmat.shape
    rbs = np.zeros((n_enb, n_users), dtype=np.int64)
    for j, k in per_enb_k.items():
        rbs[serving[j], j] = k
    thr = tuple(int(tmat[serving[j], j] * rbs[serving[j], j]) for j in range(n_users))
    return AllocationResult(method, tuple(serving), rbs, thr, n_rbs)


def _members(serving, i):
    return [j for j, s in enumerate(serving) if s == i]


def maxmin_allocate(tmat, n_rbs: int, demand=None) -> AllocationResult:
    """Exact max-min RB allocation with joint user association.

    Search is branch-and-bound over associations; each fixed association is
    solved per eNodeB by greedy water-filling, which is exact for linear
    per-RB rates.  Among optimal associations the lexicographically smallest
    serving list wins.
    """
    t = _as_matrix(tmat)
    n_rbs = _check_n_rbs(n_rbs)
    _check_users(t)
    d = _demand_vector(demand, t.shape[1])
    rows = t.tolist()

    start = _maxmin_py.association_phi(rows, n_rbs, d, best_link_association(t))
    serving, _ = _kernel.search(rows, n_rbs, d, max(start, 0))
    if serving is None:
        raise InfeasibleDemandError("demand floors exceed the RB budget under every association")

    per_user = {}
    for i in range(t.shape[0]):
        users = _members(serving, i)
        rates = [rows[i][j] for j in users]
        floors = [_ceil_div(d[j], r) for j, r in zip(users, rates)]
        for j, k in zip(users, _kernel.waterfill(rates, floors, n_rbs)):
            per_user[j] = k
    return _result("maxmin", t, serving, per_user, n_rbs)


def round_robin_allocate(tmat, n_rbs: int) -> AllocationResult:
    """Equal RB split per eNodeB over its best-link users; leftovers to lower user ids."""
    t = _as_matrix(tmat)
    n_rbs = _check_n_rbs(n_rbs)
    _check_users(t)
    serving = best_link_association(t)
    per_user = {}
    for i in range(t.shape[0]):
        users = _members(serving, i)
        if not users:
            continue
        base, extra = divmod(n_rbs, len(users))
        for rank, j in enumerate(users):
            per_user[j] = base + (1 if rank < extra else 0)
    return _result("roundrobin", t, serving, per_user, n_rbs)


def opportunistic_allocate(tmat, n_rbs: int, demand=None) -> AllocationResult:
    """Per-user floors (at least 1 RB), then every spare RB to the cell's strongest link."""
    t = _as_matrix(tmat)
    n_rbs = _check_n_rbs(n_rbs)
    _check_users(t)
    d = _demand_vector(demand, t.shape[1])
    serving = best_link_association(t)
    per_user = {}
    for i in range(t.shape[0]):
        users = _members(serving, i)
        if not users:
            continue
        floors = [max(1, _ceil_div(d[j], int(t[i, j]))) for j in users]
        spare = n_rbs - sum(floors)
        if spare < 0:
            raise InfeasibleDemandError(
                f"eNodeB {i + 1}: per-user floors need {sum(floors)} RBs, only {n_rbs} available"
            )
        # max() keeps the first maximum -> lowest user index on ties
        strongest = max(users, key=lambda j: t[i, j])
        for j, f in zip(users, floors):
            per_user[j] = f + (spare if j == strongest else 0)
    return _result("opportunistic", t, serving, per_user, n_rbs)


@lru_cache(maxsize=None)
def _splits(k: int, n: int) -> np.ndarray:
    """Every vector of k non-negative integers with sum <= n, in lexicographic order."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    blocks = []
    for v in range(n + 1):
        tail = _splits(k - 1, n - v)
        blocks.append(np.hstack([np.full((len(tail), 1), v, dtype=np.int64), tail]))
    return np.vstack(blocks)


def brute_force_oracle(tmat, n_rbs: int, demand=None) -> AllocationResult:
    """Exhaustive max-min optimum over all associations and all integer RB splits.

    Limited to I <= 3, J <= 6, N <= 10.  Within one association the eNodeBs
    do not interact, so the best split of each (eNodeB, user set) pair is
    enumerated once and reused.
    """
    t = _as_matrix(tmat)
    n_rbs = _check_n_rbs(n_rbs)
    n_enb, n_users = t.shape
    if n_enb > ORACLE_MAX_ENODEBS or n_users > ORACLE_MAX_USERS or n_rbs > ORACLE_MAX_RBS:
        raise OracleSizeError(
            f"instance {n_enb}x{n_users} with N={n_rbs} exceeds oracle limits "
            f"I<={ORACLE_MAX_ENODEBS}, J<={ORACLE_MAX_USERS}, N<={ORACLE_MAX_RBS}"
        )
    _check_users(t)
    d = np.array(_demand_vector(demand, n_users), dtype=np.int64)

    cell_cache: dict[tuple[int, tuple[int, ...]], tuple[int, np.ndarray] | None] = {}

    def best_cell(i, users):
        key = (i, users)
        if key not in cell_cache:
            cand = _splits(len(users), n_rbs)
            rates = t[i, list(users)]
            thr = cand * rates
            ok = np.all(thr >= d[list(users)], axis=1)
            if not ok.any():
                cell_cache[key] = None
            else:
                score = np.where(ok, thr.min(axis=1), -1)
                pick = int(np.argmax(score))
                cell_cache[key] = (int(score[pick]), cand[pick])
        return cell_cache[key]

    best = None
    for serving in itertools.product(range(n_enb), repeat=n_users):
        if any(t[i, j] == 0 for j, i in enumerate(serving)):
            continue
        phi = None
        splits = {}
        for i in range(n_enb):
            users = tuple(_members(serving, i))
            if not users:
                continue
            cell = best_cell(i, users)
            if cell is None:
                phi = None
                break
            splits.update(zip(users, cell[1].tolist()))
            phi = cell[0] if phi is None else min(phi, cell[0])
        else:
            if best is None or phi > best[0]:
                best = (phi, list(serving), splits)
    if best is None:
        raise InfeasibleDemandError("demand floors exceed the RB budget under every association")
    return _result("oracle", t, best[1], best[2], n_rbs)


def feasibility_violations(result: AllocationResult, tmat, demand=None) -> list[str]:
    """Constraint violations of ``result``: RB budget, single association,
    RBs only on the serving link, demand floors, and a usable serving link."""
    t = _as_matrix(tmat)
    n_enb, n_users = t.shape
    d = _demand_vector(demand, n_users)
    rbs = result.rbs
    problems = []
    if rbs.shape != t.shape:
        return [f"rbs shape {rbs.shape} != tmat shape {t.shape}"]
    if len(result.association) != n_users:
        problems.append("association length differs from user count")
    if np.any(rbs < 0):
        problems.append("negative RB count")
    for i in range(n_enb):
        if rbs[i].sum() > result.n_rbs:
            problems.append(f"eNodeB {i + 1} grants {rbs[i].sum()} > {result.n_rbs} RBs")
    for j, i in enumerate(result.association):
        if not 0 <= i < n_enb:
            problems.append(f"user {j + 1} served by unknown eNodeB {i + 1}")
            continue
        if t[i, j] <= 0:
            problems.append(f"user {j + 1} served over a zero-throughput link")
        others = np.delete(rbs[:, j], i)
        if np.any(others != 0):
            problems.append(f"user {j + 1} holds RBs from a non-serving eNodeB")
        if t[i, j] * rbs[i, j] < d[j]:
            problems.append(f"user {j + 1} below its demand")
        if result.user_throughput[j] != t[i, j] * rbs[i, j]:
            problems.append(f"user {j + 1} throughput mismatch")
    return problems


def allocate(method: str, tmat, n_rbs: int, demand=None) -> AllocationResult:
    if method == "maxmin":
        return maxmin_allocate(tmat, n_rbs, demand)
    if method == "roundrobin":
        return round_robin_allocate(tmat, n_rbs)
    if method == "opportunistic":
        return opportunistic_allocate(tmat, n_rbs, demand)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
