"""Involutions of G(r,p,n): atomic decomposition, generation, counting and
the last-digit reduction maps behind the recurrences."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Union

from .group_core import (
    BudgetExceeded,
    ColoredElement,
    GroupError,
    check_params,
    default_budget,
    is_involution,
)


class NotInvolution(GroupError):
    pass


class InvalidHalfTurn(NotInvolution):
    """A fixed position carries a color other than 0 or r/2."""


class DecompositionError(GroupError):
    pass


@dataclass(frozen=True)
class FixedPoint:
    i: int

    @property
    def support(self) -> tuple[int, ...]:
        return (self.i,)


@dataclass(frozen=True)
class HalfTurnPoint:
    """``pi(i) = i^[r/2]``; only exists for even ``r``."""

    i: int

    @property
    def support(self) -> tuple[int, ...]:
        return (self.i,)


@dataclass(frozen=True)
class TwoCycle:
    """``pi(i) = j^[k]`` and ``pi(j) = i^[(r-k) mod r]`` with ``i < j``."""

    i: int
    j: int
    k: int

    @property
    def support(self) -> tuple[int, ...]:
        return (self.i, self.j)


Atom = Union[FixedPoint, HalfTurnPoint, TwoCycle]

_KIND_ORDER = {FixedPoint: 0, HalfTurnPoint: 1, TwoCycle: 2}


def _atom_key(a: Atom) -> tuple:
    return (_KIND_ORDER[type(a)],) + tuple(a.__dict__.values())


@dataclass(frozen=True)
class InvolutionDecomposition:
    atoms: frozenset

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))

    def sorted_atoms(self) -> list[Atom]:
        return sorted(self.atoms, key=_atom_key)

    def count(self, kind: type) -> int:
        return sum(1 for a in self.atoms if type(a) is kind)

    @property
    def fixed_points(self) -> int:
        return self.count(FixedPoint)

    @property
    def half_turns(self) -> int:
        return self.count(HalfTurnPoint)

    @property
    def two_cycles(self) -> int:
        return self.count(TwoCycle)


def half_turns_allowed(r: int, p: int, h: int) -> bool:
    """Whether ``h`` half-turn points are compatible with membership in G(r,p,n)."""
    if h == 0:
        return True
    if r % 2:
        return False
    return (h * (r // 2)) % p == 0


def decompose(g: ColoredElement) -> InvolutionDecomposition:
    r = g.r
    for i, (v, c) in enumerate(zip(g.images, g.colors), start=1):
        if v == i and c != 0 and 2 * c != r:
            raise InvalidHalfTurn(f"position {i} is fixed with color {c} (r={r})")
    if not is_involution(g):
        raise NotInvolution(f"{g} does not square to the identity")
    atoms: list[Atom] = []
    for i, (v, c) in enumerate(zip(g.images, g.colors), start=1):
        if v == i:
            atoms.append(FixedPoint(i) if c == 0 else HalfTurnPoint(i))
        elif i < v:
            atoms.append(TwoCycle(i, v, c))
    return InvolutionDecomposition(frozenset(atoms))


def assemble(d: InvolutionDecomposition, r: int, n: int, p: int = 1) -> ColoredElement:
    """Build the involution described by ``d``.

    With ``p > 1`` the half-turn count is also checked against membership in
    G(r,p,n).
    """
    check_params(r, p, n)
    images = [0] * n
    colors = [0] * n
    covered: set[int] = set()
    h = 0
    for a in d.atoms:
        for x in a.support:
            if not 1 <= x <= n:
                raise DecompositionError(f"atom {a} outside 1..{n}")
            if x in covered:
                raise DecompositionError(f"overlapping supports at {x}")
            covered.add(x)
        if isinstance(a, FixedPoint):
            images[a.i - 1] = a.i
        elif isinstance(a, HalfTurnPoint):
            if r % 2:
                raise DecompositionError(f"half-turn point {a.i} needs even r, got r={r}")
            images[a.i - 1] = a.i
            colors[a.i - 1] = r // 2
            h += 1
        elif isinstance(a, TwoCycle):
            if not a.i < a.j:
                raise DecompositionError(f"two-cycle {a} needs i < j")
            if not 0 <= a.k < r:
                raise DecompositionError(f"two-cycle color {a.k} out of range for r={r}")
            images[a.i - 1] = a.j
            colors[a.i - 1] = a.k
            images[a.j - 1] = a.i
            colors[a.j - 1] = (r - a.k) % r
        else:
            raise DecompositionError(f"unknown atom {a!r}")
    if len(covered) != n:
        missing = sorted(set(range(1, n + 1)) - covered)
        raise DecompositionError(f"positions {missing} not covered")
    if not half_turns_allowed(r, p, h):
        raise DecompositionError(f"{h} half-turn points violate membership in G({r},{p},{n})")
    return ColoredElement._trusted(r, tuple(images), tuple(colors))


def count_involutions(r: int, p: int, n: int) -> int:
    """``|I(r,p,n)|`` summed over atom shapes (t two-cycles, h half-turns)."""
    check_params(r, p, n)
    total = 0
    for t in range(n // 2 + 1):
        # ways to pick and match the 2t paired points, then color each pair
        matched = math.comb(n, 2 * t) * math.prod(range(2 * t - 1, 0, -2)) * r**t
        rest = n - 2 * t
        total += matched * sum(
            math.comb(rest, h) for h in range(rest + 1) if half_turns_allowed(r, p, h)
        )
    return total


def matchings(points: tuple[int, ...], t: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Sets of ``t`` disjoint pairs from ``points``, lexicographic in the sorted pair list."""
    if t == 0:
        yield ()
        return
    if 2 * t > len(points):
        return
    for ai, a in enumerate(points):
        if len(points) - ai < 2 * t:
            break
        tail = points[ai + 1:]
        for b in tail:
            rest = tuple(x for x in tail if x != b)
            for more in matchings(rest, t - 1):
                yield ((a, b),) + more


def enumerate_involutions(
    r: int, p: int, n: int, budget: int | None = None
) -> Iterator[ColoredElement]:
    """Yield each element of I(r,p,n) once, built from atoms.

    Order: number of two-cycles ascending, then half-turn subset (by size,
    then lexicographic), then pair matching, then pair colors.
    """
    check_params(r, p, n)
    limit = default_budget() if budget is None else budget
    size = count_involutions(r, p, n)
    if size > limit:
        raise BudgetExceeded(f"|I({r},{p},{n})| = {size} exceeds budget {limit}")
    return _enumerate_involutions(r, p, n)


def _enumerate_involutions(r: int, p: int, n: int) -> Iterator[ColoredElement]:
    everything = tuple(range(1, n + 1))
    half = r // 2
    for t in range(n // 2 + 1):
        for h in range(n - 2 * t + 1):
            if not half_turns_allowed(r, p, h):
                continue
            for turns in itertools.combinations(everything, h):
                free = tuple(x for x in everything if x not in turns)
                for pairs in matchings(free, t):
                    for ks in itertools.product(range(r), repeat=t):
                        images = list(everything)
                        colors = [0] * n
                        for x in turns:
                            colors[x - 1] = half
                        for (i, j), k in zip(pairs, ks):
                            images[i - 1], images[j - 1] = j, i
                            colors[i - 1], colors[j - 1] = k, (r - k) % r
                        yield ColoredElement._trusted(r, tuple(images), tuple(colors))


@dataclass(frozen=True)
class LastFixed:
    """``pi(n) = n^[j]``."""

    j: int


@dataclass(frozen=True)
class LastPaired:
    """``pi(n) = k^[j]`` with ``k < n``."""

    k: int
    j: int


def reduce_last(g: ColoredElement) -> tuple[Union[LastFixed, LastPaired], ColoredElement]:
    """Remove the last digit of an involution.

    If ``n`` is an absolute fixed point it is dropped.  Otherwise ``n`` and its
    partner ``k`` are both dropped and the remaining positions and values are
    relabeled order-preservingly onto ``1..n-2``, keeping their colors.
    """
    n = g.n
    if n == 0:
        raise GroupError("cannot reduce an element with n = 0")
    if not is_involution(g):
        raise NotInvolution(f"{g} does not square to the identity")
    last, j = g.images[-1], g.colors[-1]
    if last == n:
        return LastFixed(j), ColoredElement._trusted(g.r, g.images[:-1], g.colors[:-1])
    k = last
    images = []
    colors = []
    for i in range(1, n):
        if i == k:
            continue
        v = g.images[i - 1]
        images.append(v if v < k else v - 1)
        colors.append(g.colors[i - 1])
    return LastPaired(k, j), ColoredElement._trusted(g.r, tuple(images), tuple(colors))
