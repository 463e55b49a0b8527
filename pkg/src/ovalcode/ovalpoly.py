"""Oval polynomials over GF(2^m): catalog families and exhaustive ovality checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    FieldDomainError,
    MalformedFamilyError,
    PreconditionError,
    UnsupportedParameterError,
)
from .gf2m import FieldContext

FAMILIES = (
    "translation", "segre", "glynn-a", "glynn-b34", "glynn-b14",
    "cherowitzo", "payne", "custom",
)


@dataclass(frozen=True)
class OvalPolynomial:
    """f(x) = sum of coeff * x^exp over ``terms``, a function on GF(q).

    Exponents live in [1, q-1]; terms are kept sorted by exponent and
    merged, so equal functions have equal ``terms``.
    """

    ctx: FieldContext
    terms: tuple[tuple[int, int], ...]
    family: str = "custom"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        q = self.ctx.q
        for e, c in self.terms:
            if not 1 <= e <= q - 1:
                raise FieldDomainError(f"exponent {e} outside [1, {q - 1}]")
            self.ctx.check(c)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    @property
    def degree(self) -> int:
        return max((e for e, c in self.terms if c), default=0)

    def has_binary_coefficients(self) -> bool:
        return all(c in (0, 1) for _, c in self.terms)

    def values(self) -> np.ndarray:
        """Table of f(x) for x = 0..q-1."""
        return _value_table(self)

    def describe(self) -> str:
        parts = []
        for e, c in self.terms:
            mono = "x" if e == 1 else f"x^{e}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"family": self.family, **self.params,
                "terms": [[e, c] for e, c in self.terms]}


def reduce_exponent(e: int, q: int) -> int:
    """Exponent in [1, q-1] giving the same function as x^e on GF(q)."""
    if e < 1:
        raise FieldDomainError(f"exponent must be positive, got {e}")
    return (e - 1) % (q - 1) + 1


def _merge_terms(ctx: FieldContext, terms) -> tuple[tuple[int, int], ...]:
    acc: dict[int, int] = {}
    for e, c in terms:
        e = reduce_exponent(e, ctx.q)
        acc[e] = acc.get(e, 0) ^ ctx.check(c)
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def custom(ctx: FieldContext, terms, reduce: bool = False) -> OvalPolynomial:
    """Polynomial from (exponent, coefficient) pairs.

    Exponents must already lie in [1, q-1] unless ``reduce`` is set.
    """
    terms = [(int(e), int(c)) for e, c in terms]
    if not reduce:
        for e, _ in terms:
            if not 1 <= e <= ctx.q - 1:
                raise FieldDomainError(f"exponent {e} outside [1, {ctx.q - 1}]")
    return OvalPolynomial(ctx, _merge_terms(ctx, terms), "custom")


def from_values(ctx: FieldContext, values) -> OvalPolynomial:
    """Interpolate a map with f(0) = 0 as sum_{e=1}^{q-1} c_e x^e.

    c_e = sum_{x != 0} f(x) x^(-e), since the power sums over GF(q)* vanish
    except at multiples of q-1, where they equal q-1 = 1.
    """
    vals = [ctx.check(int(v)) for v in values]
    if len(vals) != ctx.q or vals[0] != 0:
        raise FieldDomainError("need q values with f(0) = 0")
    xs = np.arange(1, ctx.q, dtype=np.int64)
    fx = np.array(vals[1:], dtype=np.int64)
    xinv = ctx.inv_array(xs)
    terms = []
    for e in range(1, ctx.q):
        c = np.bitwise_xor.reduce(ctx.mul_array(fx, ctx.pow_array(xinv, e)))
        if c:
            terms.append((e, int(c)))
    return OvalPolynomial(ctx, tuple(terms), "custom")


def _exact(num: int, den: int, what: str) -> int:
    fr = Fraction(num, den)
    if fr.denominator != 1:
        raise MalformedFamilyError(f"{what} exponent {num}/{den} is not an integer")
    return int(fr)


def _need_odd(family: str, m: int):
    if m < 3 or m % 2 == 0:
        raise UnsupportedParameterError(f"{family} needs odd m >= 3, got m={m}")


def family_exponents(family: str, m: int, h: int | None = None) -> list[int]:
    """Unreduced exponents of a catalog family at extension degree m."""
    if family == "translation":
        if h is None:
            raise UnsupportedParameterError("translation family needs h")
        if not 1 <= h < m or math.gcd(h, m) != 1:
            raise UnsupportedParameterError(f"translation needs 1 <= h < m and gcd(h, m) = 1, got h={h}, m={m}")
        return [2 ** h]
    _need_odd(family, m)
    e = (m + 1) // 2
    if family == "segre":
        return [6]
    if family == "glynn-a":
        return [3 * 2 ** e + 4]
    if family == "glynn-b34":
        if m % 4 != 3:
            raise UnsupportedParameterError(f"glynn-b34 needs m = 3 mod 4, got m={m}")
        return [2 ** e + 2 ** ((m + 1) // 4)]
    if family == "glynn-b14":
        if m % 4 != 1:
            raise UnsupportedParameterError(f"glynn-b14 needs m = 1 mod 4, got m={m}")
        return [2 ** e + 2 ** ((3 * m + 1) // 4)]
    if family == "cherowitzo":
        return [2 ** e, 2 ** e + 2, 3 * 2 ** e + 4]
    if family == "payne":
        half = 2 ** (m - 1)
        # taken exactly as printed; (3*2^(m-1) - 2)/3 is never integral for odd m
        return [_exact(half + 2, 3, "payne"), half, _exact(3 * half - 2, 3, "payne")]
    raise UnsupportedParameterError(f"unknown family {family!r}")


def make_family(family: str, ctx: FieldContext, h: int | None = None) -> OvalPolynomial:
    """Catalog oval polynomial, exponents reduced into [1, q-1].

    ``glynn-b`` picks the variant matching m mod 4.
    """
    m = ctx.m
    if family == "glynn-b":
        family = "glynn-b34" if m % 4 == 3 else "glynn-b14"
    exps = family_exponents(family, m, h)
    params = {"h": h} if family == "translation" else {}
    return OvalPolynomial(ctx, _merge_terms(ctx, [(e, 1) for e in exps]), family, params)


def catalog(ctx: FieldContext) -> list[OvalPolynomial]:
    """Every catalog family constructible at this field (Payne never is)."""
    out = []
    for h in range(1, ctx.m):
        if math.gcd(h, ctx.m) == 1:
            out.append(make_family("translation", ctx, h))
    for fam in ("segre", "glynn-a", "glynn-b34", "glynn-b14", "cherowitzo", "payne"):
        try:
            out.append(make_family(fam, ctx))
        except UnsupportedParameterError:
            pass
    return out


def parse_oval(text: str, ctx: FieldContext) -> OvalPolynomial:
    """Parse ``family=translation h=2`` or ``family=custom terms=4:1,2:1``."""
    kv = {}
    for tok in text.split():
        if "=" not in tok:
            raise UnsupportedParameterError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        kv[k.strip().lower()] = v.strip()
    fam = kv.pop("family", None)
    if fam is None:
        raise UnsupportedParameterError("missing family=")
    if fam == "custom":
        if "terms" not in kv:
            raise UnsupportedParameterError("custom family needs terms=exp:coeff,...")
        return custom(ctx, parse_terms(kv["terms"]))
    h = int(kv["h"]) if "h" in kv else None
    return make_family(fam, ctx, h)


def parse_terms(text: str) -> list[tuple[int, int]]:
    terms = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        e, _, c = item.partition(":")
        try:
            terms.append((int(e), int(c) if c else 1))
        except ValueError:
            raise UnsupportedParameterError(f"bad term {item!r}") from None
    return terms


def evaluate(f: OvalPolynomial, x: int) -> int:
    ctx = f.ctx
    x = ctx.check(x)
    acc = 0
    for e, c in f.terms:
        acc ^= ctx.mul(c, ctx.pow(x, e))
    return acc


def _value_table(f: OvalPolynomial) -> np.ndarray:
    ctx = f.ctx
    xs = np.arange(ctx.q, dtype=np.int64)
    out = np.zeros(ctx.q, dtype=np.int64)
    for e, c in f.terms:
        out ^= ctx.mul_array(c, ctx.pow_array(xs, e))
    return out


def is_permutation(f: OvalPolynomial) -> bool:
    return len(np.unique(f.values())) == f.ctx.q


def _is_two_to_one(values: np.ndarray, q: int) -> bool:
    counts = np.bincount(values, minlength=q)
    return bool(np.all((counts == 0) | (counts == 2)))


def is_two_to_one_shifted(f: OvalPolynomial, u: int) -> bool:
    """Whether x -> f(x) + u x is 2-to-1 on GF(q); u must be nonzero."""
    ctx = f.ctx
    if ctx.check(u) == 0:
        raise FieldDomainError("shift u must be nonzero")
    xs = np.arange(ctx.q, dtype=np.int64)
    return _is_two_to_one(f.values() ^ ctx.mul_array(u, xs), ctx.q)


def all_shifts_two_to_one(f: OvalPolynomial) -> bool:
    return all(is_two_to_one_shifted(f, u) for u in range(1, f.ctx.q))


def check_oval_definition(f: OvalPolynomial) -> bool:
    """Permutation with f(0)=0, f(1)=1, and every g_a(x) = (f(x+a)+f(a)) x^(q-2) a permutation.

    x^(q-2) is taken as the field inverse with 0 -> 0.
    """
    ctx = f.ctx
    fv = f.values()
    if fv[0] != 0 or fv[1] != 1 or f.degree >= ctx.q:
        return False
    if len(np.unique(fv)) != ctx.q:
        return False
    xs = np.arange(ctx.q, dtype=np.int64)
    xinv = ctx.inv_array(xs)
    for a in range(ctx.q):
        g = ctx.mul_array(fv[xs ^ a] ^ fv[a], xinv)
        if len(np.unique(g)) != ctx.q:
            return False
    return True


def check_slope_condition(f: OvalPolynomial) -> bool:
    """(f(x)+f(y))/(x+y) != (f(x)+f(z))/(x+z) for all pairwise distinct x, y, z.

    Exhaustive: for each x the q-1 slopes through x must be pairwise
    distinct, which is the triple condition with x fixed.
    """
    ctx = f.ctx
    fv = f.values()
    if len(np.unique(fv)) != ctx.q:
        raise PreconditionError("slope condition requires a permutation polynomial")
    xs = np.arange(ctx.q, dtype=np.int64)
    for x in range(ctx.q):
        ys = xs[xs != x]
        slopes = ctx.mul_array(fv[x] ^ fv[ys], ctx.inv_array(ys ^ x))
        if len(np.unique(slopes)) != ctx.q - 1:
            return False
    return True


def check_affine_nonvanishing(f: OvalPolynomial) -> bool:
    """True iff f(x) + x + 1 has no root in GF(q)."""
    if not f.has_binary_coefficients():
        raise PreconditionError("coefficients must lie in GF(2)")
    if f.ctx.m < 3 or f.ctx.m % 2 == 0:
        raise PreconditionError("requires odd m >= 3")
    xs = np.arange(f.ctx.q, dtype=np.int64)
    return bool(np.all((f.values() ^ xs ^ 1) != 0))


def oval_report(f: OvalPolynomial) -> dict:
    """All applicable checks; inapplicable ones are reported as None."""
    perm = is_permutation(f)
    fv = f.values()
    rep = {
        "polynomial": f.describe(),
        "family": f.family,
        "m": f.ctx.m,
        "f0_is_0": int(fv[0]) == 0,
        "f1_is_1": int(fv[1]) == 1,
        "permutation": perm,
        "definition": check_oval_definition(f),
        "all_shifts_two_to_one": all_shifts_two_to_one(f),
        "slope_condition": check_slope_condition(f) if perm else None,
    }
    try:
        rep["affine_nonvanishing"] = check_affine_nonvanishing(f)
    except PreconditionError:
        rep["affine_nonvanishing"] = None
    rep["oval"] = rep["definition"]
    return rep

