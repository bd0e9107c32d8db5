"""Permutation statistics on colored permutations."""

from __future__ import annotations

from dataclasses import dataclass

from .group_core import (
    ColoredElement,
    SigmaLetter,
    alphabet,
    apply,
    cmp_color_order,
    csum,
)


@dataclass(frozen=True)
class StatProfile:
    fix: int
    exc_a: int
    csum: int
    exc_clr: int

    def as_dict(self) -> dict[str, int]:
        return {"fix": self.fix, "exc_a": self.exc_a, "csum": self.csum, "exc_clr": self.exc_clr}


def fix_abs(g: ColoredElement) -> int:
    """Number of absolute fixed points (``|g(i)| = i``, color ignored)."""
    return sum(1 for i, v in enumerate(g.images, start=1) if v == i)


def exc_a_set(g: ColoredElement, include_last: bool = True) -> set[int]:
    """Positions ``i`` with ``g(i) > i`` in the color order, ``i`` taken in color 0.

    ``include_last=False`` restricts ``i`` to ``1..n-1``; position ``n`` can
    never qualify, so both settings give the same set.
    """
    upto = g.n if include_last else g.n - 1
    out = set()
    for i in range(1, upto + 1):
        x = SigmaLetter(i, 0)
        if cmp_color_order(apply(g, x), x, g.r) > 0:
            out.add(i)
    return out


def exc_a(g: ColoredElement) -> int:
    # Only an uncolored image can exceed a color-0 letter.
    return sum(1 for i, (v, c) in enumerate(zip(g.images, g.colors), start=1) if c == 0 and v > i)


def exc_clr(g: ColoredElement) -> int:
    return g.r * exc_a(g) + csum(g)


def exc_sigma_set(g: ColoredElement) -> list[SigmaLetter]:
    """Excedance set over the whole alphabet, ascending in the color order."""
    return [x for x in alphabet(g.r, g.n) if cmp_color_order(apply(g, x), x, g.r) > 0]


def exc_sigma(g: ColoredElement) -> int:
    return len(exc_sigma_set(g))


def stat_profile(g: ColoredElement) -> StatProfile:
    e = exc_a(g)
    s = csum(g)
    return StatProfile(fix=fix_abs(g), exc_a=e, csum=s, exc_clr=g.r * e + s)
