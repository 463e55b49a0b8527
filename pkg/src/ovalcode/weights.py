"""Weight distributions: closed form, NMDS recurrences and the MacWilliams transform.

All arithmetic is exact (Python ints / Fractions); counts for the dual code
overflow 64 bits quickly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import FieldDomainError, InconsistentInputError, InconsistentSeedError


@dataclass(frozen=True)
class WeightDistribution:
    """Counts A_0..A_n of codewords by Hamming weight."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise FieldDomainError(f"need {self.n + 1} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise FieldDomainError("negative weight count")

    @classmethod
    def from_dict(cls, n: int, counts: dict[int, int]) -> "WeightDistribution":
        out = [0] * (n + 1)
        for w, c in counts.items():
            out[w] = c
        return cls(n, tuple(out))

    def __getitem__(self, w: int) -> int:
        return self.counts[w]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}

    @property
    def min_distance(self) -> int | None:
        return next((w for w in range(1, self.n + 1) if self.counts[w]), None)

    def enumerator(self, var: str = "z") -> str:
        """Weight enumerator as a polynomial string, e.g. ``1 + 112z^10``."""
        parts = []
        for w, c in self.nonzero().items():
            if w == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}{var}" + (f"^{w}" if w > 1 else ""))
        return " + ".join(parts)

    def to_rows(self) -> list[tuple[int, int]]:
        return list(enumerate(self.counts))


def _check_q(q: int):
    m = q.bit_length() - 1
    if q < 8 or q != 1 << m or m % 2 == 0:
        raise FieldDomainError(f"q must be 2^m with m odd >= 3, got {q}")


def theoretical_weight_distribution(q: int) -> WeightDistribution:
    """Closed-form distribution of the [q+5, 3, q+2] code."""
    _check_q(q)
    n = q + 5
    return WeightDistribution.from_dict(n, {
        0: 1,
        q + 2: (q - 1) * (3 * q + 8) // 2,
        q + 3: (q - 2) * (q - 1) * (q + 2) // 2,
        q + 4: 3 * (q * q - 3 * q + 2) // 2,
        q + 5: (q - 1) * (q - 2) ** 2 // 2,
    })


def theoretical_dual_weight3(q: int) -> int:
    _check_q(q)
    return (q - 1) * (3 * q + 8) // 2


def _recurrence_term(n: int, top: int, bottom: int, s: int, q: int) -> int:
    # binom(n, bottom) * sum_{j<s} (-1)^j binom(top, j) (q^(s-j) - 1)
    return comb(n, bottom) * sum((-1) ** j * comb(top, j) * (q ** (s - j) - 1) for j in range(s))


def nmds_recurrence_dual(n: int, k: int, q: int, seed: int, strict: bool = True) -> WeightDistribution:
    """Dual distribution of an [n, k] NMDS code from A_k of the dual.

    A_{k+s} = binom(n, k+s) sum_{j<s} (-1)^j binom(k+s, j)(q^{s-j}-1)
              + (-1)^s binom(n-k, s) A_k,   s = 1..n-k.

    A negative count means the seed is not realizable and raises
    InconsistentSeedError; with ``strict=False`` the raw values come back as
    a :class:`RawDistribution` list instead.
    """
    if not 0 < k < n:
        raise FieldDomainError(f"need 0 < k < n, got n={n}, k={k}")
    raw = [0] * (n + 1)
    raw[0] = 1
    raw[k] = seed
    for s in range(1, n - k + 1):
        raw[k + s] = (_recurrence_term(n, k + s, k + s, s, q)
                      + (-1) ** s * comb(n - k, s) * seed)
    return _finish(n, raw, strict)


def nmds_recurrence_primal(n: int, k: int, q: int, seed: int, strict: bool = True) -> WeightDistribution:
    """Primal distribution of an [n, k] NMDS code from A_{n-k}.

    A_{n-k+s} = binom(n, k-s) sum_{j<s} (-1)^j binom(n-k+s, j)(q^{s-j}-1)
                + (-1)^s binom(k, s) A_{n-k},   s = 1..k.
    """
    if not 0 < k < n:
        raise FieldDomainError(f"need 0 < k < n, got n={n}, k={k}")
    raw = [0] * (n + 1)
    raw[0] = 1
    raw[n - k] = seed
    for s in range(1, k + 1):
        raw[n - k + s] = (_recurrence_term(n, n - k + s, k - s, s, q)
                          + (-1) ** s * comb(k, s) * seed)
    return _finish(n, raw, strict)


class RawDistribution(list):
    """Recurrence output that may contain negative entries (strict=False)."""


def _finish(n: int, raw: list[int], strict: bool):
    bad = [w for w, c in enumerate(raw) if c < 0]
    if bad:
        if strict:
            raise InconsistentSeedError(f"seed gives negative counts at weights {bad}")
        return RawDistribution(raw)
    return WeightDistribution(n, tuple(raw))


def krawtchouk(j: int, i: int, n: int, q: int) -> int:
    return sum((-1) ** h * (q - 1) ** (j - h) * comb(i, h) * comb(n - i, j - h)
               for h in range(j + 1))


def macwilliams_dual(W: WeightDistribution | Sequence[int], n: int, k: int, q: int) -> WeightDistribution:
    """A_j^perp = q^-k sum_i A_i K_j(i), exact."""
    counts = W.counts if isinstance(W, WeightDistribution) else tuple(W)
    if len(counts) != n + 1:
        raise FieldDomainError(f"need {n + 1} counts, got {len(counts)}")
    if sum(counts) != q ** k:
        raise InconsistentInputError(f"counts sum to {sum(counts)}, expected q^k = {q ** k}")
    support = [(i, a) for i, a in enumerate(counts) if a]
    out = []
    for j in range(n + 1):
        val = Fraction(sum(a * krawtchouk(j, i, n, q) for i, a in support), q ** k)
        if val.denominator != 1 or val < 0:
            raise InconsistentInputError(f"A_{j}^perp = {val} is not a non-negative integer")
        out.append(int(val))
    return WeightDistribution(n, tuple(out))
