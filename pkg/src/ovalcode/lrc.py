"""Locality, single-erasure repair and LRC optimality bounds.

Repair is linear: a codeword h of the dual of the code being repaired with
i in supp(h) gives c_i = sum_{j != i} (h_j / h_i) c_j (characteristic 2).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from math import ceil
from typing import Collection, Sequence

import numpy as np

from .errors import FieldDomainError, InsufficientDataError, NoLocalRepairError
from .linalg import kernel_basis
from .nmds import (
    DualWeight3,
    LinearCode,
    dual_distance_and_weight3,
    minimum_weight_codewords,
    weight_distribution_bruteforce,
)


@dataclass(frozen=True)
class RepairPlan:
    i: int
    repair_set: tuple[int, ...]
    coefficients: tuple[int, ...]

    @property
    def locality(self) -> int:
        return len(self.repair_set)

    def to_json(self) -> dict:
        return {"i": self.i, "repair_set": list(self.repair_set),
                "coefficients": list(self.coefficients)}


def _plan_from_check(C: LinearCode, i: int, check: Sequence[int]) -> RepairPlan:
    ctx = C.ctx
    hi = ctx.inv(int(check[i]))
    rs = tuple(j for j, v in enumerate(check) if v and j != i)
    return RepairPlan(i, rs, tuple(ctx.mul(int(check[j]), hi) for j in rs))


def weight3_dual_codeword(C: LinearCode, support: Sequence[int]) -> list[int]:
    """The dual codeword (normalised by its first entry) on a rank-2 column triple."""
    basis = kernel_basis(C.G.submatrix(support))
    if len(basis) != 1 or not all(basis[0]):
        raise NoLocalRepairError(f"columns {tuple(support)} carry no unique weight-3 dependency")
    v = basis[0]
    s = C.ctx.inv(v[0])
    word = [0] * C.n
    for j, x in zip(support, v):
        word[j] = C.ctx.mul(x, s)
    return word


def repair_candidates(C: LinearCode, i: int, dual: DualWeight3 | None = None) -> list[tuple[int, ...]]:
    if not 0 <= i < C.n:
        raise FieldDomainError(f"coordinate {i} outside [0, {C.n})")
    dual = dual or dual_distance_and_weight3(C)
    return [s for s in dual.supports if i in s]


def repair_plan(C: LinearCode, i: int, dual: DualWeight3 | None = None) -> RepairPlan:
    """Local repair of coordinate i from two others, via the lexicographically
    smallest weight-3 dual support containing i."""
    cands = repair_candidates(C, i, dual)
    if not cands:
        raise NoLocalRepairError(f"no weight-3 dual codeword covers coordinate {i}")
    return _plan_from_check(C, i, weight3_dual_codeword(C, cands[0]))


def repair_plans(C: LinearCode, dual: DualWeight3 | None = None) -> list[RepairPlan]:
    dual = dual or dual_distance_and_weight3(C)
    return [repair_plan(C, i, dual) for i in range(C.n)]


def dual_repair_plan(C: LinearCode, i: int, min_words: np.ndarray | None = None,
                     max_m: int | None = None) -> RepairPlan:
    """Repair plan for the dual code from a minimum-weight codeword of C containing i.

    Ties go to the lexicographically smallest support.
    """
    if not 0 <= i < C.n:
        raise FieldDomainError(f"coordinate {i} outside [0, {C.n})")
    if min_words is None:
        _, min_words = minimum_weight_codewords(C, max_m=max_m)
    best = None
    for w in min_words:
        if w[i]:
            supp = tuple(np.flatnonzero(w).tolist())
            if best is None or supp < best[0]:
                best = (supp, w)
    if best is None:
        raise NoLocalRepairError(f"no minimum-weight codeword covers coordinate {i}")
    return _plan_from_check(C, i, best[1].tolist())


def repair(plan: RepairPlan, ctx, word: Sequence[int], erased: Collection[int] | None = None) -> int:
    """Recover symbol ``plan.i`` of ``word``; ``erased`` marks missing positions."""
    erased = {plan.i} if erased is None else set(erased)
    lost = erased & set(plan.repair_set)
    if lost:
        raise InsufficientDataError(f"repair set positions {sorted(lost)} are erased")
    acc = 0
    for j, c in zip(plan.repair_set, plan.coefficients):
        acc ^= ctx.mul(c, ctx.check(word[j]))
    return acc


def weight3_support_union(dual: DualWeight3) -> set[int]:
    return set().union(*dual.supports) if dual.supports else set()


def weight3_support_intersection(dual: DualWeight3) -> set[int]:
    if not dual.supports:
        return set()
    return reduce(lambda a, b: a & b, (set(s) for s in dual.supports))


def minimum_locality_primal(C: LinearCode, dual: DualWeight3 | None = None) -> int:
    """d_dual - 1 when minimum-weight dual supports cover every coordinate, else d_dual."""
    dual = dual or dual_distance_and_weight3(C)
    if weight3_support_union(dual) == set(range(C.n)):
        return dual.d_dual - 1
    return dual.d_dual


def minimum_locality_dual(C: LinearCode, dual: DualWeight3 | None = None,
                          d: int | None = None, max_m: int | None = None) -> int | None:
    """d(C) - 1 when minimum-weight dual supports have empty intersection.

    Returns None (no verdict) otherwise; see weight3_support_intersection.
    """
    dual = dual or dual_distance_and_weight3(C)
    if weight3_support_intersection(dual):
        return None
    if d is None:
        d = weight_distribution_bruteforce(C, max_m=max_m).min_distance
    return d - 1


def singleton_like_bound(n: int, k: int, r: int) -> int:
    if not (n > k >= 1 and r >= 1):
        raise FieldDomainError(f"need n > k >= 1 and r >= 1, got n={n}, k={k}, r={r}")
    return n - k - ceil(k / r) + 2


def k_opt_upper(n: int, d: int) -> int:
    """Classical Singleton bound on the dimension of a length-n code of distance d."""
    return n - d + 1 if n >= d else 0


def cm_bound_terms(n: int, d: int, r: int) -> list[tuple[int, int]]:
    """(t, r t + k_opt_upper(n - t(r+1), d)) for t = 1..floor((n-d)/(r+1))."""
    if not (n >= 1 and 1 <= d <= n and r >= 1):
        raise FieldDomainError(f"need 1 <= d <= n and r >= 1, got n={n}, d={d}, r={r}")
    return [(t, r * t + k_opt_upper(n - t * (r + 1), d))
            for t in range(1, (n - d) // (r + 1) + 1)]


def cm_bound_dimension(n: int, d: int, r: int, q: int | None = None) -> int:
    """Upper bound on k from the Cadambe-Mazumdar bound.

    k_opt is replaced by its Singleton upper bound, so the result does not
    depend on q; an empty t-range falls back to k_opt_upper(n, d).
    """
    terms = cm_bound_terms(n, d, r)
    if not terms:
        return k_opt_upper(n, d)
    return min(v for _, v in terms)


@dataclass
class OptimalityReport:
    n: int
    k: int
    d: int
    q: int | None
    r: int
    singleton_like_rhs: int
    cm_rhs: int
    cm_t: int | None

    @property
    def distance_optimal(self) -> bool:
        return self.d == self.singleton_like_rhs

    @property
    def dimension_optimal(self) -> bool:
        return self.k == self.cm_rhs

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "d": self.d, "q": self.q, "r": self.r,
            "singleton_like_rhs": self.singleton_like_rhs,
            "cm_rhs": self.cm_rhs, "cm_t": self.cm_t,
            "distance_optimal": self.distance_optimal,
            "dimension_optimal": self.dimension_optimal,
        }


def lrc_report(n: int, k: int, d: int, q: int, r: int) -> OptimalityReport:
    terms = cm_bound_terms(n, d, r)
    if terms:
        t, rhs = min(terms, key=lambda tv: (tv[1], tv[0]))
    else:
        t, rhs = None, k_opt_upper(n, d)
    return OptimalityReport(n, k, d, q, r, singleton_like_bound(n, k, r), rhs, t)


def optimality_report(C: LinearCode, dual: DualWeight3 | None = None, d: int | None = None,
                      max_m: int | None = None) -> tuple[OptimalityReport, OptimalityReport]:
    """Reports for C (locality 2) and its dual (locality d(C) - 1)."""
    dual = dual or dual_distance_and_weight3(C)
    if d is None:
        d = weight_distribution_bruteforce(C, max_m=max_m).min_distance
    r = minimum_locality_primal(C, dual)
    r_dual = minimum_locality_dual(C, dual, d)
    if r_dual is None:
        r_dual = d
    n, k = C.n, C.k
    return (lrc_report(n, k, d, C.q, r),
            lrc_report(n, n - k, dual.d_dual, C.q, r_dual))


def random_dual_codewords(C: LinearCode, count: int, rng: random.Random) -> list[list[int]]:
    """Random combinations of a kernel basis of G."""
    basis = kernel_basis(C.G)
    mul = C.ctx.mul
    out = []
    for _ in range(count):
        v = [0] * C.n
        for b in basis:
            c = rng.randrange(C.q)
            if c:
                v = [x ^ mul(c, y) for x, y in zip(v, b)]
        out.append(v)
    return out
