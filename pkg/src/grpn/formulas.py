"""Distribution polynomials of (fix, exc_A, csum) over involutions of G(r,p,n),
their recurrences, explicit sums and closed counts.

Three regimes exist, depending on which absolute fixed points are allowed:

* ``ODD_R``: only uncolored fixed points.
* ``EVEN_R_HALF_DIVISIBLE`` (``p | r/2``): fixed points ``i`` or ``i^[r/2]``, freely.
* ``EVEN_R_HALF_INDIVISIBLE`` (``p`` does not divide ``r/2``): as above, but
  the number of half-turn points ``i^[r/2]`` must be even.

The classic recurrence for the last regime,
``f_n = u f_{n-1} + (n-1)(u^2 w^r + (r-1) w^r + v) f_{n-2}``, treats half-turn
points as if they came in matched pairs and overcounts from ``n = 4`` on
(e.g. 46 instead of 44 involutions in D_4).  :func:`f_poly` therefore uses
the parity-filtered form ``exp(ux + Bx^2/2) cosh(u w^{r/2} x)``; the classic
versions are kept as :func:`f_classic_recurrence` and
:func:`f_classic_explicit` so the discrepancy stays checkable.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .group_core import GroupError, check_params
from .polyalg import (
    ONE,
    U,
    V,
    W,
    TriPoly,
    multinomial,
    subst_u1,
    subst_v_wr,
    subst_w1,
    two_term_recurrence,
)


class CaseTag(enum.Enum):
    ODD_R = "OddR"
    EVEN_R_HALF_DIVISIBLE = "EvenR_HalfDivisible"
    EVEN_R_HALF_INDIVISIBLE = "EvenR_HalfIndivisible"


def classify(r: int, p: int) -> CaseTag:
    check_params(r, p)
    if r % 2:
        return CaseTag.ODD_R
    if (r // 2) % p == 0:
        return CaseTag.EVEN_R_HALF_DIVISIBLE
    return CaseTag.EVEN_R_HALF_INDIVISIBLE


def _colored_pair_weight(r: int) -> TriPoly:
    # one uncolored 2-cycle (v) or r-1 colored ones (w^r each)
    return V + TriPoly.monomial(0, 0, r, r - 1)


def fixed_point_weight(r: int) -> TriPoly:
    """``mu_r``: ``1 + w^{r/2}`` for even ``r``, else ``1``."""
    return ONE + W ** (r // 2) if r % 2 == 0 else ONE


def recurrence_AB(r: int, p: int) -> tuple[TriPoly, TriPoly]:
    """``(A, B)`` of the classic recurrence ``f_n = A f_{n-1} + (n-1) B f_{n-2}``."""
    case = classify(r, p)
    B = _colored_pair_weight(r)
    if case is CaseTag.ODD_R:
        return U, B
    if case is CaseTag.EVEN_R_HALF_DIVISIBLE:
        return U * fixed_point_weight(r), B
    return U, B + U**2 * W**r


def f_classic_recurrence(r: int, p: int, n: int) -> TriPoly:
    """The classic recurrence, taken literally."""
    check_params(r, p, n)
    A, B = recurrence_AB(r, p)
    return two_term_recurrence(A, B, n)[n]


def f_poly(r: int, p: int, n: int) -> TriPoly:
    """Sum of ``u^fix v^exc_A w^csum`` over the involutions of G(r,p,n)."""
    check_params(r, p, n)
    case = classify(r, p)
    B = _colored_pair_weight(r)
    if case is not CaseTag.EVEN_R_HALF_INDIVISIBLE:
        A, _ = recurrence_AB(r, p)
        return two_term_recurrence(A, B, n)[n]
    # keep only even powers of the half-turn weight s = w^{r/2}
    s = W ** (r // 2)
    plus = two_term_recurrence(U * (ONE + s), B, n)[n]
    minus = two_term_recurrence(U * (ONE - s), B, n)[n]
    return (plus + minus).exact_div(2)


def _pairing_coefficient(n: int, j: int) -> int:
    # (n-j)! * multinomial(n; n-j, n-j, 2j-n) / 2^(n-j): ways to choose the
    # 2j-n unpaired points and match the rest into n-j pairs
    q, e = n - j, 2 * j - n
    return (math.factorial(q) * multinomial(n, [q, q, e])) // 2**q


def _even_part(base: TriPoly, e: int) -> TriPoly:
    """Even-degree part in ``s`` of ``(1 + s)^e``, with ``s = base``."""
    return sum((base**i * math.comb(e, i) for i in range(0, e + 1, 2)), TriPoly())


def f_explicit(r: int, p: int, n: int) -> TriPoly:
    """Closed-form sum over the number ``n - j`` of 2-cycles."""
    check_params(r, p, n)
    case = classify(r, p)
    B = _colored_pair_weight(r)
    total = TriPoly()
    for j in range((n + 1) // 2, n + 1):
        e = 2 * j - n
        if case is CaseTag.EVEN_R_HALF_INDIVISIBLE:
            fixed = _even_part(W ** (r // 2), e)
        else:
            fixed = fixed_point_weight(r) ** e
        total = total + U**e * B ** (n - j) * fixed * _pairing_coefficient(n, j)
    return total


def f_classic_explicit(r: int, p: int, n: int) -> TriPoly:
    """The classic explicit sums, taken literally (the last regime uses
    ``(v + (u^2 + r - 1) w^r)^{n-j}`` and no fixed-point factor)."""
    check_params(r, p, n)
    case = classify(r, p)
    if case is CaseTag.EVEN_R_HALF_INDIVISIBLE:
        B = V + (U**2 + (r - 1)) * W**r
        mu = ONE
    else:
        B = _colored_pair_weight(r)
        mu = fixed_point_weight(r)
    total = TriPoly()
    for j in range((n + 1) // 2, n + 1):
        e = 2 * j - n
        total = total + U**e * B ** (n - j) * mu**e * _pairing_coefficient(n, j)
    return total


def excclr_distribution(r: int, p: int, n: int) -> dict[int, int]:
    """Number of involutions of G(r,p,n) for each value of exc^Clr."""
    g = subst_u1(subst_v_wr(f_poly(r, p, n), r))
    return {c: x for (_, _, c), x in g.terms()}


def fix_exca_table(r: int, p: int, n: int) -> dict[tuple[int, int], int]:
    """``(fix, exc_A) -> count``, i.e. ``f_poly`` at ``w = 1``."""
    g = subst_w1(f_poly(r, p, n))
    return {(a, b): x for (a, b, _), x in g.terms()}


def _as_number(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


VARIANTS = ("classic", "swapped", "corrected")


def _excclr_kfact(r: int, n: int, k: int) -> Fraction:
    # k! * multinomial(n; k, k, n-2k) * (r/2)^k
    return math.factorial(k) * multinomial(n, [k, k, n - 2 * k]) * Fraction(r, 2) ** k


def _excclr_sum(r: int, n: int, k: int) -> Fraction:
    total = Fraction(0)
    for j in range((n + 1) // 2, n + 1):
        parts = [n - j, n - j, n - 2 * k, 2 * k - 2 * n + 2 * j]
        total += math.factorial(n - j) * multinomial(n, parts) * Fraction(r, 2) ** (n - j)
    return total


def _excclr_rplus1(r: int, n: int, k: int) -> Fraction:
    return (
        Fraction(math.factorial(k), 2**k) * multinomial(n, [k, k, n - 2 * k]) * (r + 1) ** k
    )


def count_excclr_closed(r: int, p: int, n: int, m: int, variant: str = "classic") -> int | Fraction:
    """Closed-form count of involutions of G(r,p,n) with ``exc^Clr = m``.

    ``m`` must be a multiple of ``r``.  Variants:

    * ``"classic"``: the classic assignment (k!-formula for odd
      ``r``, sum for even ``r`` with ``p | r/2``, ``(r+1)^k``-formula otherwise).
    * ``"swapped"``: the first two formulas exchanged, which fails.
    * ``"corrected"``: as ``"classic"`` but the last regime uses the even-``r``
      sum, which counts only even numbers of half-turn points automatically.

    A result that is not an integer is returned as a ``Fraction``.
    """
    check_params(r, p, n)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if m % r:
        raise GroupError(f"m={m} is not a multiple of r={r}; use excclr_distribution")
    if m < 0:
        return 0
    k = m // r
    case = classify(r, p)
    if case is CaseTag.EVEN_R_HALF_INDIVISIBLE:
        value = _excclr_sum(r, n, k) if variant == "corrected" else _excclr_rplus1(r, n, k)
    elif (case is CaseTag.ODD_R) == (variant != "swapped"):
        value = _excclr_kfact(r, n, k)
    else:
        value = _excclr_sum(r, n, k)
    return _as_number(value)


def count_fix_exca_closed(
    r: int, p: int, n: int, m: int, l: int, variant: str = "classic"
) -> int | Fraction:
    """Closed-form count of involutions of G(r,p,n) with ``m`` absolute fixed
    points and ``exc_A = l``.

    ``"classic"`` (and ``"swapped"``) evaluate the classic closed form; in
    the last regime that is the five-part sum read off the classic explicit
    polynomial.  ``"corrected"`` replaces it by the parity-filtered count.
    Out-of-range arguments give 0.
    """
    check_params(r, p, n)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not 0 <= m <= n or l < 0 or (n - m) % 2:
        return 0
    t = (n - m) // 2
    if t - l < 0:
        return 0
    case = classify(r, p)
    colored = (r - 1) ** (t - l)
    if case is not CaseTag.EVEN_R_HALF_INDIVISIBLE:
        k = r % 2
        base = math.factorial(t) * colored * multinomial(n, [t, m, t - l, l])
        value = base * Fraction(2) ** ((m * (3 - 2 * k) - n) // 2)
    elif variant == "corrected":
        base = math.factorial(t) * colored * multinomial(n, [t, m, t - l, l])
        value = Fraction(base, 2**t) * (2 ** (m - 1) if m else 1)
    else:
        value = Fraction(0)
        for j in range((n + 1) // 2, n + 1):
            parts = [n - j, 2 * j - n, l, t - l, (m + n) // 2 - j]
            value += Fraction(math.factorial(n - j), 2 ** (n - j)) * multinomial(n, parts) * colored
    return _as_number(value)


def sn_exc_count(n: int, l: int) -> int:
    """Involutions of S_n with exactly ``l`` excedances."""
    if n < 0:
        raise GroupError(f"n must be nonnegative, got {n}")
    if l < 0 or 2 * l > n:
        return 0
    return math.factorial(l) * multinomial(n, [l, l, n - 2 * l]) // 2**l
