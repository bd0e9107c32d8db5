"""Sparse polynomials in u, v, w with exact integer coefficients."""

from __future__ import annotations

import json
import math
from typing import Iterable, Iterator, Mapping, Sequence

Key = tuple[int, int, int]


class TriPoly:
    """Immutable sparse polynomial in ``u, v, w``.

    Terms map exponent triples ``(a, b, c)`` of ``u^a v^b w^c`` to nonzero
    Python ints.  Iteration is ascending in the exponent triple.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        acc: dict[Key, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = tuple(key)
            if len(key) != 3 or any(e < 0 for e in key):
                raise ValueError(f"bad exponent triple {key}")
            if not isinstance(coeff, int):
                raise TypeError(f"coefficient {coeff!r} is not an integer")
            acc[key] = acc.get(key, 0) + coeff
        self._terms = {k: acc[k] for k in sorted(acc) if acc[k]}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> TriPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 0, coeff: int = 1) -> TriPoly:
        return cls({(a, b, c): coeff})

    def terms(self) -> Iterator[tuple[Key, int]]:
        return iter(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Key, int]]:
        return self.terms()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = TriPoly.const(other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other: TriPoly | int) -> TriPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return TriPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> TriPoly:
        return TriPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: TriPoly | int) -> TriPoly:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> TriPoly:
        return (-self) + other

    def __mul__(self, other: TriPoly | int) -> TriPoly:
        if isinstance(other, int):
            return scale(self, other)
        if not isinstance(other, TriPoly):
            return NotImplemented
        acc: dict[Key, int] = {}
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in other._terms.items():
                key = (a1 + a2, b1 + b2, c1 + c2)
                acc[key] = acc.get(key, 0) + x * y
        return TriPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TriPoly:
        if k < 0:
            raise ValueError("negative power")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, d: int) -> TriPoly:
        """Divide every coefficient by ``d``; raises if any division is inexact."""
        out = {}
        for k, c in self._terms.items():
            q, rem = divmod(c, d)
            if rem:
                raise ArithmeticError(f"coefficient {c} of {k} not divisible by {d}")
            out[k] = q
        return TriPoly(out)

    def __repr__(self) -> str:
        return f"TriPoly({self._terms!r})"

    def __str__(self) -> str:
        return to_text(self)


def _coerce(x):
    if isinstance(x, TriPoly):
        return x
    if isinstance(x, int):
        return TriPoly.const(x)
    return NotImplemented


ZERO = TriPoly()
ONE = TriPoly.const(1)
U = TriPoly.monomial(1, 0, 0)
V = TriPoly.monomial(0, 1, 0)
W = TriPoly.monomial(0, 0, 1)


def add(p: TriPoly, q: TriPoly) -> TriPoly:
    return p + q


def mul(p: TriPoly, q: TriPoly) -> TriPoly:
    return p * q


def scale(p: TriPoly, k: int) -> TriPoly:
    return TriPoly({key: c * k for key, c in p.terms()})


def subst_u1(p: TriPoly) -> TriPoly:
    return TriPoly(((0, b, c), x) for (a, b, c), x in p.terms())


def subst_w1(p: TriPoly) -> TriPoly:
    return TriPoly(((a, b, 0), x) for (a, b, c), x in p.terms())


def subst_v_wr(p: TriPoly, r: int) -> TriPoly:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    return TriPoly(((a, 0, c + r * b), x) for (a, b, c), x in p.terms())


def coeff(p: TriPoly, key: Key) -> int:
    return p._terms.get(tuple(key), 0)


def eval_int(p: TriPoly, u: int, v: int, w: int) -> int:
    return sum(x * u**a * v**b * w**c for (a, b, c), x in p.terms())


def multinomial(n: int, parts: Sequence[int]) -> int:
    """``n! / prod(part!)``; zero if any part is negative.

    A negative part marks a term outside the summation range, which the
    closed-form sums treat as contributing nothing.
    """
    if sum(parts) != n:
        raise ValueError(f"parts {list(parts)} do not sum to {n}")
    if any(k < 0 for k in parts):
        return 0
    result = 1
    remaining = n
    for k in parts:
        result *= math.comb(remaining, k)
        remaining -= k
    return result


def two_term_recurrence(A: TriPoly, B: TriPoly, N: int) -> list[TriPoly]:
    """``f_0 = 1``, ``f_n = A f_{n-1} + (n-1) B f_{n-2}`` for ``n = 1..N``.

    ``f_n`` equals ``n! [x^n] exp(A x + B x^2 / 2)``.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    out = [ONE]
    for n in range(1, N + 1):
        f = A * out[n - 1]
        if n >= 2:
            f = f + scale(B * out[n - 2], n - 1)
        out.append(f)
    return out


def _monomial_text(a: int, b: int, c: int) -> str:
    parts = []
    for name, e in (("u", a), ("v", b), ("w", c)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def to_text(p: TriPoly) -> str:
    """Plain rendering, ascending by exponent triple, e.g. ``u^2 + 2*u^2*w + v``."""
    if not p:
        return "0"
    out = []
    for (a, b, c), x in p.terms():
        mono = _monomial_text(a, b, c)
        mag = abs(x)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if x > 0 else f"-{body}")
        else:
            out.append(("+ " if x > 0 else "- ") + body)
    return " ".join(out)


def to_json_obj(p: TriPoly) -> dict:
    return {
        "terms": [
            {"u": a, "v": b, "w": c, "coeff": str(x)} for (a, b, c), x in p.terms()
        ]
    }


def to_json(p: TriPoly) -> str:
    return json.dumps(to_json_obj(p), sort_keys=True, separators=(",", ":"))


def from_json_obj(obj: Mapping) -> TriPoly:
    return TriPoly(((t["u"], t["v"], t["w"]), int(t["coeff"])) for t in obj["terms"])
