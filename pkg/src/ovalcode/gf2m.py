"""Arithmetic in GF(2^m) over the polynomial basis.

Elements are plain Python ints in ``[0, q)``; bit ``i`` of an element is the
coefficient of ``x^i``.  A :class:`FieldContext` carries the modulus and, for
``m <= 16``, log/antilog tables that also back the vectorised numpy helpers.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import FieldDomainError, FieldZeroDivisionError, InvalidDegreeError

TABLE_MAX_M = 16


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials given as bitmasks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, p: int) -> int:
    """Remainder of ``a`` modulo ``p`` in GF(2)[x]."""
    dp = p.bit_length()
    while a.bit_length() >= dp:
        a ^= p << (a.bit_length() - dp)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    deg = p.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for t in range(1 << d, 1 << (d + 1)):
            if poly_mod(p, t) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(m: int) -> int:
    for p in range(1 << m, 1 << (m + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldContext:
    """GF(2^m) with a fixed irreducible modulus.

    Immutable after construction.  ``elements()`` gives the canonical
    ordering ``0, 1, 2, ..., q-1`` by integer value.
    """

    __slots__ = ("m", "q", "modulus", "_exp", "_log", "_generator")

    def __init__(self, m: int, modulus: int | None = None):
        if not isinstance(m, int) or m < 2:
            raise InvalidDegreeError(f"extension degree must be >= 2, got {m!r}")
        if modulus is None:
            modulus = smallest_irreducible(m)
        if modulus.bit_length() - 1 != m:
            raise InvalidDegreeError(f"modulus {modulus:#b} does not have degree {m}")
        if not is_irreducible(modulus):
            raise FieldDomainError(f"modulus {modulus:#b} is reducible over GF(2)")
        self.m = m
        self.q = 1 << m
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._generator = None
        if m <= TABLE_MAX_M:
            self._build_tables()

    def __repr__(self):
        return f"FieldContext(m={self.m}, modulus={self.modulus:#b})"

    def __eq__(self, other):
        return isinstance(other, FieldContext) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def _slow_mul(self, a: int, b: int) -> int:
        r = 0
        m, mod = self.m, self.modulus
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> m:
                a ^= mod
        return r

    def _build_tables(self):
        # the modulus need not be primitive, so search for a generator
        q = self.q
        for g in range(2, q):
            exp = np.zeros(2 * (q - 1), dtype=np.int64)
            x = 1
            ok = True
            for i in range(q - 1):
                if i > 0 and x == 1:
                    ok = False
                    break
                exp[i] = x
                x = self._slow_mul(x, g)
            if ok and x == 1:
                break
        exp[q - 1:] = exp[: q - 1]
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1)
        self._exp, self._log, self._generator = exp, log, g

    @property
    def generator(self) -> int | None:
        """Multiplicative generator used by the tables (None without tables)."""
        return self._generator

    def check(self, a) -> int:
        if not isinstance(a, (int, np.integer)) or not 0 <= a < self.q:
            raise FieldDomainError(f"{a!r} is not an element of GF({self.q})")
        return int(a)

    def elements(self) -> list[int]:
        return list(range(self.q))

    def add(self, a: int, b: int) -> int:
        return self.check(a) ^ self.check(b)

    sub = add

    def mul(self, a: int, b: int) -> int:
        a, b = self.check(a), self.check(b)
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return int(self._exp[self._log[a] + self._log[b]])
        return self._slow_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        a = self.check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        a = self.check(a)
        if a == 0:
            raise FieldZeroDivisionError("0 has no inverse")
        if self._log is not None:
            return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # vectorised helpers, used by exhaustive sweeps

    def mul_array(self, a, b) -> np.ndarray:
        """Elementwise product of broadcastable integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._log is not None:
            out = self._exp[self._log[a] + self._log[b]]
            return np.where((a == 0) | (b == 0), 0, out)
        a, b = np.broadcast_arrays(a, b)
        a = a.copy()
        b = b.copy()
        r = np.zeros_like(a)
        for _ in range(self.m):
            r ^= np.where(b & 1, a, 0)
            b >>= 1
            a <<= 1
            a = np.where(a >> self.m, a ^ self.modulus, a)
        return r

    def inv_array(self, a) -> np.ndarray:
        """Elementwise inverse with the convention 0 -> 0."""
        a = np.asarray(a, dtype=np.int64)
        if self._log is not None:
            out = self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
            return np.where(a == 0, 0, out)
        return np.vectorize(lambda v: self.inv(int(v)) if v else 0, otypes=[np.int64])(a)

    def pow_array(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        r = np.ones_like(a)
        while e:
            if e & 1:
                r = self.mul_array(r, a)
            a = self.mul_array(a, a)
            e >>= 1
        return r


def field_new(m: int) -> FieldContext:
    """Field GF(2^m) with the lexicographically smallest irreducible modulus."""
    return FieldContext(m)


def enumerate_elements(ctx: FieldContext) -> list[int]:
    return ctx.elements()
