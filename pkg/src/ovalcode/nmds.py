"""The [q+5, 3, q+2] near-MDS code built from an oval polynomial.

Generator matrix columns, 0-indexed: ``(1, a_j, f(a_j))`` for the q field
elements in integer order, followed by the five fixed columns::

    T0 = (0,0,1)  T1 = (0,1,0)  T2 = (1,0,1)  T3 = (0,1,1)  T4 = (1,1,0)

at indices q..q+4.  A 1-based "location t" in printed proofs is index t-1.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    FieldDomainError,
    InternalConsistencyError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedParameterError,
)
from .gf2m import FieldContext
from .linalg import FieldMatrix, kernel_basis
from .ovalpoly import OvalPolynomial, check_oval_definition
from .weights import WeightDistribution

TAIL_COLUMNS = ((0, 0, 1), (0, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 0))
DEFAULT_MAX_M = 7
CHUNK = 1 << 16


def enumeration_cap(max_m: int | None = None) -> int:
    """Largest m for exhaustive enumeration: argument, then OVALCODE_MAX_M, then 7."""
    if max_m is not None:
        return max_m
    env = os.environ.get("OVALCODE_MAX_M")
    return int(env) if env else DEFAULT_MAX_M


@dataclass(frozen=True)
class LinearCode:
    ctx: FieldContext
    G: FieldMatrix
    oval: OvalPolynomial
    array: np.ndarray = field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def columns(self) -> list[tuple[int, ...]]:
        return self.G.columns()

    def to_json(self) -> dict:
        return {
            "m": self.ctx.m,
            "modulus": self.ctx.modulus,
            "oval": self.oval.to_json(),
            "n": self.n,
            "k": self.k,
            "columns": [list(c) for c in self.columns()],
        }


def build_generator(f: OvalPolynomial, check: bool = True) -> LinearCode:
    ctx = f.ctx
    if ctx.m < 3 or ctx.m % 2 == 0:
        raise UnsupportedParameterError(f"construction needs odd m >= 3, got m={ctx.m}")
    if check and not check_oval_definition(f):
        raise PreconditionError(f"{f.describe()} is not an oval polynomial of GF({ctx.q})")
    fv = f.values()
    cols = [(1, a, int(fv[a])) for a in ctx.elements()] + list(TAIL_COLUMNS)
    G = FieldMatrix.from_columns(ctx, cols)
    arr = np.array(cols, dtype=np.int64).T.copy()
    return LinearCode(ctx, G, f, arr)


def encode(C: LinearCode, msg: Sequence[int]) -> list[int]:
    if len(msg) != C.k:
        raise FieldDomainError(f"message must have length {C.k}, got {len(msg)}")
    for v in msg:
        C.ctx.check(v)
    return _encode_many(C, np.array([msg], dtype=np.int64))[0].tolist()


def _encode_many(C: LinearCode, msgs: np.ndarray) -> np.ndarray:
    out = np.zeros((len(msgs), C.n), dtype=np.int64)
    for r in range(C.k):
        out ^= C.ctx.mul_array(msgs[:, r:r + 1], C.array[r][None, :])
    return out


def is_codeword(C: LinearCode, word: Sequence[int]) -> bool:
    """Membership via the parity checks (a kernel basis of G)."""
    if len(word) != C.n:
        return False
    H = FieldMatrix.from_rows(C.ctx, parity_check_rows(C))
    return not any(H.matvec(list(word)))


def parity_check_rows(C: LinearCode) -> list[list[int]]:
    """Rows spanning the dual code (kernel basis of G)."""
    return kernel_basis(C.G)


def in_dual(C: LinearCode, word: Sequence[int]) -> bool:
    return len(word) == C.n and not any(C.G.matvec(list(word)))


def projective_messages(q: int, k: int = 3) -> Iterator[np.ndarray]:
    """Messages whose first nonzero entry is 1, in chunks."""
    for lead in range(k):
        free = k - lead - 1
        total = q ** free
        for start in range(0, total, CHUNK):
            idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
            msgs = np.zeros((len(idx), k), dtype=np.int64)
            msgs[:, lead] = 1
            for t in range(free):
                msgs[:, k - 1 - t] = idx % q
                idx = idx // q
            yield msgs


def all_messages(q: int, k: int = 3) -> Iterator[np.ndarray]:
    total = q ** k
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        msgs = np.zeros((len(idx), k), dtype=np.int64)
        for t in range(k):
            msgs[:, k - 1 - t] = idx % q
            idx = idx // q
        yield msgs


def _guard(C: LinearCode, max_m: int | None):
    cap = enumeration_cap(max_m)
    if C.ctx.m > cap:
        raise ResourceLimitError(
            f"m={C.ctx.m} exceeds the enumeration cap m <= {cap} (override with OVALCODE_MAX_M)"
        )


def weight_distribution_bruteforce(C: LinearCode, projective: bool = True,
                                   max_m: int | None = None) -> WeightDistribution:
    """Exact weight distribution by enumerating codewords.

    With ``projective`` only one message per scalar class is encoded and the
    nonzero counts are scaled by q-1.
    """
    _guard(C, max_m)
    hist = np.zeros(C.n + 1, dtype=np.int64)
    source = projective_messages(C.q, C.k) if projective else all_messages(C.q, C.k)
    for msgs in source:
        w = np.count_nonzero(_encode_many(C, msgs), axis=1)
        hist += np.bincount(w, minlength=C.n + 1)
    counts = [int(c) for c in hist]
    if projective:
        counts = [1] + [c * (C.q - 1) for c in counts[1:]]
    return WeightDistribution(C.n, tuple(counts))


def minimum_weight_codewords(C: LinearCode, weight: int | None = None,
                             max_m: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Projective representatives (messages, codewords) of the given weight.

    Defaults to the minimum nonzero weight.
    """
    _guard(C, max_m)
    msgs_out, words_out = [], []
    best = C.n + 1
    for msgs in projective_messages(C.q, C.k):
        words = _encode_many(C, msgs)
        w = np.count_nonzero(words, axis=1)
        if weight is None:
            lo = int(w.min())
            if lo < best:
                best = lo
                msgs_out, words_out = [], []
            target = best
        else:
            target = weight
        sel = w == target
        if sel.any():
            msgs_out.append(msgs[sel])
            words_out.append(words[sel])
    if not msgs_out:
        return np.zeros((0, C.k), dtype=np.int64), np.zeros((0, C.n), dtype=np.int64)
    return np.concatenate(msgs_out), np.concatenate(words_out)


@dataclass
class DualWeight3:
    d_dual: int
    supports: list[tuple[int, int, int]]
    A3_dual: int
    per_support: dict[tuple[int, int, int], int]


def _dependent_pairs(C: LinearCode) -> list[tuple[int, int]]:
    cols = C.array.T
    out = []
    mul = C.ctx.mul_array
    for i, j in itertools.combinations(range(C.n), 2):
        u, v = cols[i], cols[j]
        minors = [mul(u[a], v[b]) ^ mul(u[b], v[a]) for a, b in ((0, 1), (0, 2), (1, 2))]
        if not any(minors):
            out.append((i, j))
    return out


def _singular_triples(C: LinearCode) -> np.ndarray:
    """Column triples of G (3 rows) whose 3x3 minor vanishes."""
    mul = C.ctx.mul_array
    tri = np.array(list(itertools.combinations(range(C.n), 3)), dtype=np.int64)
    A, B, D = (C.array[:, tri[:, t]] for t in range(3))
    # characteristic 2: the determinant is the permanent
    det = np.zeros(len(tri), dtype=np.int64)
    for (r0, r1, r2) in itertools.permutations(range(3)):
        det ^= mul(mul(A[r0], B[r1]), D[r2])
    return tri[det == 0]


def _full_support_kernel_vectors(C: LinearCode, cols: Sequence[int]) -> int:
    basis = kernel_basis(C.G.submatrix(cols))
    if not basis:
        return 0
    if len(basis) == 1:
        return C.q - 1 if all(basis[0]) else 0
    q, mul = C.q, C.ctx.mul
    count = 0
    for coeffs in itertools.product(range(q), repeat=len(basis)):
        v = [0] * len(cols)
        for c, b in zip(coeffs, basis):
            v = [x ^ mul(c, y) for x, y in zip(v, b)]
        count += all(v)
    return count


def dual_distance_and_weight3(C: LinearCode) -> DualWeight3:
    """Dual minimum distance and all weight-3 dual codewords, from column dependencies."""
    if C.k != 3:
        raise FieldDomainError("column-triple analysis assumes k = 3")
    zero_cols = [j for j in range(C.n) if not C.array[:, j].any()]
    pairs = [] if zero_cols else _dependent_pairs(C)
    per_support = {}
    for t in _singular_triples(C):
        t = tuple(int(x) for x in t)
        cnt = _full_support_kernel_vectors(C, t)
        if cnt:
            per_support[t] = cnt
    if zero_cols:
        d = 1
    elif pairs:
        d = 2
    elif per_support:
        d = 3
    else:
        d = 4
    supports = sorted(per_support)
    return DualWeight3(d, supports, sum(per_support.values()), per_support)


def bucket_label(support: Sequence[int], q: int) -> str:
    free = [j for j in support if j < q]
    tail = "".join(f"T{j - q}" for j in sorted(support) if j >= q)
    if len(free) == 3:
        return "free3"
    if not free:
        return tail
    return f"free{len(free)}+{tail}"


def all_bucket_labels() -> list[str]:
    labels = ["free3"]
    labels += [f"free2+T{a}" for a in range(5)]
    labels += [f"free1+T{a}T{b}" for a, b in itertools.combinations(range(5), 2)]
    labels += ["".join(f"T{x}" for x in t) for t in itertools.combinations(range(5), 3)]
    return labels


def expected_case_counts(q: int) -> dict[str, int]:
    """Weight-3 dual codeword counts per bucket, closed forms from the case analysis."""
    out = dict.fromkeys(all_bucket_labels(), 0)
    out["free2+T2"] = (q - 2) * (q - 1) // 2
    out["free2+T3"] = q * (q - 1) // 2
    out["free2+T4"] = (q - 2) * (q - 1) // 2
    for lab in ("free1+T0T2", "free1+T0T4", "free1+T1T2", "free1+T1T4"):
        out[lab] = q - 1
    out["T0T1T3"] = q - 1
    out["T2T3T4"] = q - 1
    return out


def classify_weight3_supports(C: LinearCode, supports: Sequence[Sequence[int]]) -> dict[str, int]:
    """Codeword counts per bucket (support count times q-1).

    Buckets: ``free3``; ``free2+Tj``; ``free1+TaTb``; ``TaTbTc``, where
    "free" means one of the first q columns and ``Tj`` is column q+j.
    """
    out = dict.fromkeys(all_bucket_labels(), 0)
    for s in supports:
        if len(s) != 3 or len(set(s)) != 3 or not all(0 <= j < C.n for j in s):
            raise InternalConsistencyError(f"{s} is not a 3-subset of the coordinates")
        lab = bucket_label(s, C.q)
        if lab not in out:
            raise InternalConsistencyError(f"support {s} matches no case")
        out[lab] += C.q - 1
    return out


@dataclass
class NMDSReport:
    n: int
    k: int
    q: int
    d: int
    d_dual: int
    amds: bool
    dual_amds: bool
    nmds: bool
    mds: bool
    no_low_weight: bool
    distribution: WeightDistribution = field(repr=False)

    @property
    def ok(self) -> bool:
        return self.nmds and not self.mds and self.no_low_weight

    def to_json(self) -> dict:
        return {
            "n": self.n, "k": self.k, "q": self.q, "d": self.d, "d_dual": self.d_dual,
            "amds": self.amds, "dual_amds": self.dual_amds, "nmds": self.nmds,
            "mds": self.mds, "no_weight_in_1_to_q_plus_1": self.no_low_weight,
        }


def verify_nmds(C: LinearCode, W: WeightDistribution | None = None,
                dual: DualWeight3 | None = None, max_m: int | None = None) -> NMDSReport:
    W = W or weight_distribution_bruteforce(C, max_m=max_m)
    dual = dual or dual_distance_and_weight3(C)
    n, k = C.n, C.k
    d = W.min_distance
    return NMDSReport(
        n=n, k=k, q=C.q, d=d, d_dual=dual.d_dual,
        amds=d == n - k,
        dual_amds=dual.d_dual == k,
        nmds=d == n - k and dual.d_dual == k,
        mds=d == n - k + 1,
        no_low_weight=not any(W.counts[1:C.q + 2]),
        distribution=W,
    )


@dataclass
class PairingReport:
    min_weight: int
    primal_count: int
    dual_count: int
    classes_per_codeword: list[int]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "min_weight": self.min_weight,
            "primal_min_weight_codewords": self.primal_count,
            "dual_min_weight_codewords": self.dual_count,
            "classes_per_codeword": sorted(set(self.classes_per_codeword)),
            "violations": self.violations,
        }


def min_weight_support_pairing(C: LinearCode, dual: DualWeight3 | None = None,
                               max_m: int | None = None) -> PairingReport:
    """Pair each minimum-weight codeword with the dual minimum-weight classes on its zero set.

    Only classes of weight d_dual whose support is disjoint from the
    codeword's support are counted.
    """
    dual = dual or dual_distance_and_weight3(C)
    _, words = minimum_weight_codewords(C, max_m=max_m)
    d = int(np.count_nonzero(words[0])) if len(words) else 0
    classes = []
    violations = [] if dual.d_dual == 3 else [f"dual distance is {dual.d_dual}, not 3"]
    for word in words:
        zeros = tuple(int(j) for j in np.flatnonzero(word == 0))
        cnt = sum(dual.per_support.get(sub, 0) for sub in itertools.combinations(zeros, 3))
        cnt //= C.q - 1
        classes.append(cnt)
        if cnt != 1:
            violations.append(f"codeword zero set {zeros} carries {cnt} dual classes")
    primal = len(words) * (C.q - 1)
    if primal != dual.A3_dual:
        violations.append(f"{primal} primal vs {dual.A3_dual} dual minimum-weight codewords")
    return PairingReport(d, primal, dual.A3_dual, classes, violations)
