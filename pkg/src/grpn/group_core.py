"""Colored permutations: elements of G(r,n) and the subgroups G(r,p,n).

An element is stored in window notation: position ``i`` (1-based) is sent
to ``images[i-1]`` carrying color ``colors[i-1]``.  The element acts on the
colored alphabet of letters ``i^[c]`` by ``g(i^[c]) = images[i-1]^[colors[i-1]+c]``
with color arithmetic modulo ``r``.  Composition is composition of these
maps, so the group axioms hold by construction.
"""

from __future__ import annotations

import itertools
import math
import os
import re
from dataclasses import dataclass
from typing import Iterator

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "GRPN_BUDGET"


class GroupError(ValueError):
    """Invalid parameters or element data."""


class ElementParseError(GroupError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration would yield more objects than the configured ceiling."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise GroupError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise GroupError(f"{BUDGET_ENV} must be nonnegative, got {value}")
    return value


def check_params(r: int, p: int = 1, n: int = 0) -> None:
    if r < 1:
        raise GroupError(f"r must be positive, got {r}")
    if p < 1:
        raise GroupError(f"p must be positive, got {p}")
    if n < 0:
        raise GroupError(f"n must be nonnegative, got {n}")
    if r % p:
        raise GroupError(f"p={p} does not divide r={r}")


@dataclass(frozen=True)
class GroupParams:
    r: int
    p: int
    n: int

    def __post_init__(self) -> None:
        check_params(self.r, self.p, self.n)


@dataclass(frozen=True, order=False)
class SigmaLetter:
    """The letter ``value^[color]`` of the colored alphabet."""

    value: int
    color: int = 0

    def __str__(self) -> str:
        return str(self.value) if self.color == 0 else f"{self.value}^{self.color}"


@dataclass(frozen=True)
class ColoredElement:
    r: int
    images: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.r < 1:
            raise GroupError(f"r must be positive, got {self.r}")
        n = len(self.images)
        if len(self.colors) != n:
            raise GroupError("images and colors differ in length")
        if sorted(self.images) != list(range(1, n + 1)):
            raise GroupError(f"images {self.images} are not a permutation of 1..{n}")
        for c in self.colors:
            if not 0 <= c < self.r:
                raise GroupError(f"color {c} out of range for r={self.r}")

    @classmethod
    def _trusted(cls, r: int, images: tuple[int, ...], colors: tuple[int, ...]) -> ColoredElement:
        # Skips validation; callers guarantee the invariants.
        obj = object.__new__(cls)
        object.__setattr__(obj, "r", r)
        object.__setattr__(obj, "images", images)
        object.__setattr__(obj, "colors", colors)
        return obj

    @property
    def n(self) -> int:
        return len(self.images)

    def __str__(self) -> str:
        return format_element(self)


def identity(r: int, n: int) -> ColoredElement:
    check_params(r, 1, n)
    return ColoredElement._trusted(r, tuple(range(1, n + 1)), (0,) * n)


def _check_letter(g: ColoredElement, x: SigmaLetter) -> None:
    if not 1 <= x.value <= g.n or not 0 <= x.color < g.r:
        raise GroupError(f"letter {x} out of range for r={g.r}, n={g.n}")


def apply(g: ColoredElement, x: SigmaLetter) -> SigmaLetter:
    _check_letter(g, x)
    i = x.value - 1
    return SigmaLetter(g.images[i], (g.colors[i] + x.color) % g.r)


def _check_same(a: ColoredElement, b: ColoredElement) -> None:
    if a.r != b.r or a.n != b.n:
        raise GroupError(f"mismatched elements: (r,n)=({a.r},{a.n}) vs ({b.r},{b.n})")


def compose(a: ColoredElement, b: ColoredElement) -> ColoredElement:
    """Return ``a o b`` (apply ``b`` first)."""
    _check_same(a, b)
    r = a.r
    images = []
    colors = []
    for j, cb in zip(b.images, b.colors):
        images.append(a.images[j - 1])
        colors.append((a.colors[j - 1] + cb) % r)
    return ColoredElement._trusted(r, tuple(images), tuple(colors))


def inverse(g: ColoredElement) -> ColoredElement:
    images = [0] * g.n
    colors = [0] * g.n
    for i, (j, c) in enumerate(zip(g.images, g.colors), start=1):
        images[j - 1] = i
        colors[j - 1] = (-c) % g.r
    return ColoredElement._trusted(g.r, tuple(images), tuple(colors))


def power(g: ColoredElement, k: int) -> ColoredElement:
    result = identity(g.r, g.n)
    base = g if k >= 0 else inverse(g)
    for _ in range(abs(k)):
        result = compose(result, base)
    return result


def csum(g: ColoredElement) -> int:
    return sum(g.colors)


def is_member(g: ColoredElement, p: int) -> bool:
    """Membership of ``g`` in G(r,p,n)."""
    if p < 1 or g.r % p:
        raise GroupError(f"p={p} does not divide r={g.r}")
    return csum(g) % p == 0


def is_involution(g: ColoredElement) -> bool:
    r = g.r
    images, colors = g.images, g.colors
    for i in range(g.n):
        j = images[i] - 1
        if images[j] != i + 1 or (colors[i] + colors[j]) % r:
            return False
    return True


def color_order_key(x: SigmaLetter, r: int) -> tuple[int, int]:
    """Sort key for the color order: higher colors first, then by value."""
    return (r - 1 - x.color, x.value)


def cmp_color_order(x: SigmaLetter, y: SigmaLetter, r: int) -> int:
    """Three-way comparison in the color order; returns -1, 0 or 1."""
    kx, ky = color_order_key(x, r), color_order_key(y, r)
    return (kx > ky) - (kx < ky)


def alphabet(r: int, n: int) -> list[SigmaLetter]:
    """All ``r*n`` letters, ascending in the color order."""
    return [SigmaLetter(v, c) for c in range(r - 1, -1, -1) for v in range(1, n + 1)]


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_element(text: str, r: int, n: int) -> ColoredElement:
    """Parse window notation ``"v"`` / ``"v^c"`` tokens, e.g. ``"2^1 1 4^3 3^2"``."""
    check_params(r, 1, n)
    tokens = text.split()
    if len(tokens) != n:
        raise ElementParseError(f"expected {n} tokens, got {len(tokens)} in {text!r}")
    images: list[int] = []
    colors: list[int] = []
    seen: set[int] = set()
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m is None:
            raise ElementParseError(f"malformed token {tok!r}")
        v = int(m.group(1))
        c = int(m.group(2)) if m.group(2) is not None else 0
        if not 1 <= v <= n:
            raise ElementParseError(f"value out of range in token {tok!r} (n={n})")
        if v in seen:
            raise ElementParseError(f"repeated value in token {tok!r}")
        if not 0 <= c < r:
            raise ElementParseError(f"color out of range in token {tok!r} (r={r})")
        seen.add(v)
        images.append(v)
        colors.append(c)
    return ColoredElement._trusted(r, tuple(images), tuple(colors))


def format_element(g: ColoredElement) -> str:
    return " ".join(str(v) if c == 0 else f"{v}^{c}" for v, c in zip(g.images, g.colors))


def group_order(r: int, n: int) -> int:
    return r**n * math.factorial(n)


def enumerate_group(r: int, n: int, budget: int | None = None) -> Iterator[ColoredElement]:
    """Yield every element of G(r,n), lexicographic by images then colors."""
    check_params(r, 1, n)
    limit = default_budget() if budget is None else budget
    size = group_order(r, n)
    if size > limit:
        raise BudgetExceeded(f"|G({r},{n})| = {size} exceeds budget {limit}")
    return _enumerate_group(r, n)


def _enumerate_group(r: int, n: int) -> Iterator[ColoredElement]:
    color_tuples = list(itertools.product(range(r), repeat=n))
    for perm in itertools.permutations(range(1, n + 1)):
        for colors in color_tuples:
            yield ColoredElement._trusted(r, perm, colors)


def product_rule(a: ColoredElement, b: ColoredElement, indexing: str) -> ColoredElement:
    """The algebraic product rule on pairs ``(z, tau)``.

    ``(z, tau)(z', tau') = ((z_i + z'_{tau^{-1}(i)})_i, tau o tau')``, with the
    color vectors read either by window ``"position"`` or by image ``"value"``.
    Used to check which reading agrees with :func:`compose`.
    """
    _check_same(a, b)
    if indexing not in ("position", "value"):
        raise GroupError(f"unknown indexing {indexing!r}")
    r, n = a.r, a.n

    def to_z(g: ColoredElement) -> list[int]:
        if indexing == "position":
            return list(g.colors)
        z = [0] * n
        for v, c in zip(g.images, g.colors):
            z[v - 1] = c
        return z

    tau, tau2 = a.images, b.images
    tau_inv = [0] * n
    for i, v in enumerate(tau, start=1):
        tau_inv[v - 1] = i
    z, z2 = to_z(a), to_z(b)
    z_new = [(z[i] + z2[tau_inv[i] - 1]) % r for i in range(n)]
    images = tuple(tau[tau2[i] - 1] for i in range(n))
    if indexing == "position":
        colors = tuple(z_new)
    else:
        colors = tuple(z_new[v - 1] for v in images)
    return ColoredElement._trusted(r, images, colors)
