"""Brute-force ground truth and the claim-by-claim verification harness.

Every closed form, recurrence and structural claim is replayed against
exhaustive enumeration on a grid of small ``(r, p, n)``.  Claims whose
classic statement is known to be wrong on part of the grid are marked
*disputed*: their failures are reported with status ``"finding"`` and do
not fail the run.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import formulas
from .formulas import CaseTag, classify
from .group_core import (
    BudgetExceeded,
    ColoredElement,
    _enumerate_group,
    check_params,
    compose,
    csum,
    default_budget,
    format_element,
    group_order,
    is_involution,
    is_member,
    product_rule,
)
from .involutions import (
    LastFixed,
    LastPaired,
    TwoCycle,
    count_involutions,
    decompose,
    enumerate_involutions,
    reduce_last,
)
from .polyalg import U, W, TriPoly, coeff, eval_int, two_term_recurrence
from .stats import exc_a, exc_a_set, exc_clr, exc_sigma, fix_abs, stat_profile

# Largest |G(r,n)| walked element by element during verify_all.
DEFAULT_FILTER_LIMIT = 10**5
# Largest |G(r,n)| for the quadratic product-rule check.
PRODUCT_RULE_LIMIT = 200

DISPUTED = frozenset(
    {
        "classic-recurrence-vs-brute",
        "classic-explicit-vs-brute",
        "closed-excclr-halfindiv",
        "closed-fix-exca-halfindiv",
        "closed-excclr-swapped",
        "integrality-remark",
        "product-rule-position-indexing",
    }
)

CLAIMS = (
    "recurrence-vs-brute",
    "explicit-vs-recurrence",
    "brute-modes",
    "count-involutions",
    "generator-soundness",
    "atom-csum",
    "excclr-total",
    "excclr-support",
    "integrality-remark",
    "classic-recurrence-vs-brute",
    "classic-explicit-vs-brute",
    "pol1-vs-recurrence",
    "closed-excclr-odd",
    "closed-excclr-even",
    "closed-excclr-halfindiv",
    "closed-excclr-halfindiv-corrected",
    "closed-excclr-swapped",
    "closed-fix-exca",
    "closed-fix-exca-halfindiv",
    "closed-fix-exca-halfindiv-corrected",
    "sn-exc",
    "sn-2exc-fix",
    "reduce-last-deltas",
    "reduce-last-fibers",
    "lemma-exc",
    "exc-a-range",
    "product-rule-value-indexing",
    "product-rule-position-indexing",
    "egf-identity",
)


# ---------------------------------------------------------------------------
# brute force

def _accumulate(elements: Iterable[ColoredElement]) -> TriPoly:
    acc: dict[tuple[int, int, int], int] = {}
    for g in elements:
        s = stat_profile(g)
        key = (s.fix, s.exc_a, s.csum)
        acc[key] = acc.get(key, 0) + 1
    return TriPoly(acc)


def brute_distributions_filter(
    r: int, n: int, ps: Iterable[int], budget: int | None = None
) -> dict[int, TriPoly]:
    """One pass over all of G(r,n); for each ``p`` keep involutions in G(r,p,n)."""
    ps = list(ps)
    for p in ps:
        check_params(r, p, n)
    limit = default_budget() if budget is None else budget
    if group_order(r, n) > limit:
        raise BudgetExceeded(f"|G({r},{n})| = {group_order(r, n)} exceeds budget {limit}")
    accs: dict[int, dict] = {p: {} for p in ps}
    for g in _enumerate_group(r, n):
        if not is_involution(g):
            continue
        s = stat_profile(g)
        key = (s.fix, s.exc_a, s.csum)
        for p in ps:
            if is_member(g, p):
                acc = accs[p]
                acc[key] = acc.get(key, 0) + 1
    return {p: TriPoly(acc) for p, acc in accs.items()}


def brute_distribution(
    r: int, p: int, n: int, mode: str = "generator", budget: int | None = None
) -> TriPoly:
    """``sum u^fix v^exc_A w^csum`` over I(r,p,n) by direct enumeration.

    ``mode="generator"`` walks the atom-built involutions; ``mode="filter"``
    walks the whole group and keeps elements that square to the identity
    and lie in G(r,p,n).
    """
    if mode == "generator":
        return _accumulate(enumerate_involutions(r, p, n, budget=budget))
    if mode == "filter":
        return brute_distributions_filter(r, n, [p], budget=budget)[p]
    raise ValueError(f"unknown mode {mode!r}")


def egf_coefficients(A: TriPoly, B: TriPoly, N: int) -> list[TriPoly]:
    """``n! [x^n] exp(A x + B x^2 / 2)`` for ``n = 0..N``.

    Computed as the truncated sum of ``S^j / j!`` with rational coefficients,
    without using the two-term recurrence.
    """
    # series: x-degree -> {monomial: Fraction}
    S = {1: {k: Fraction(c) for k, c in A.terms()}, 2: {k: Fraction(c, 2) for k, c in B.terms()}}

    def smul(a: dict, b: dict) -> dict:
        out: dict[int, dict] = {}
        for da, pa in a.items():
            for db, pb in b.items():
                d = da + db
                if d > N:
                    continue
                bucket = out.setdefault(d, {})
                for (a1, b1, c1), x in pa.items():
                    for (a2, b2, c2), y in pb.items():
                        key = (a1 + a2, b1 + b2, c1 + c2)
                        bucket[key] = bucket.get(key, 0) + x * y
        return out

    total: dict[int, dict] = {0: {(0, 0, 0): Fraction(1)}}
    power = {0: {(0, 0, 0): Fraction(1)}}
    for j in range(1, N + 1):
        power = smul(power, S)
        for d, poly in power.items():
            bucket = total.setdefault(d, {})
            for key, x in poly.items():
                bucket[key] = bucket.get(key, 0) + x / math.factorial(j)
    out = []
    for n in range(N + 1):
        terms = {}
        for key, x in total.get(n, {}).items():
            y = x * math.factorial(n)
            if y.denominator != 1:
                raise ArithmeticError(f"non-integral coefficient {y} at n={n}")
            terms[key] = y.numerator
        out.append(TriPoly(terms))
    return out


# ---------------------------------------------------------------------------
# report types

@dataclass
class CheckResult:
    claim: str
    params: dict
    status: str  # pass | fail | finding | skipped
    witness: dict | None = None
    duration_ms: float | None = None
    note: str | None = None

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "claim": self.claim,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "duration_ms": round(self.duration_ms, 3) if timings and self.duration_ms is not None else None,
        }
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    grid: list[tuple[int, int, int]] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "finding": 0, "skipped": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "grid": [list(cell) for cell in self.grid],
            "ok": self.ok,
            "summary": self.counts(),
            "checks": [c.as_dict(timings) for c in self.checks],
            "elapsed_ms": round(self.elapsed * 1000, 3) if timings else None,
        }


def _poly_witness(expected: TriPoly, got: TriPoly) -> dict | None:
    keys = sorted(set(k for k, _ in expected.terms()) | set(k for k, _ in got.terms()))
    for key in keys:
        e, g = coeff(expected, key), coeff(got, key)
        if e != g:
            return {"monomial": list(key), "expected": str(e), "got": str(g)}
    return None


class _Cell:
    """Collects checks for one grid cell, memoizing shared computations."""

    def __init__(self, r: int, p: int, n: int, budget: int, filter_limit: int, wanted):
        self.r, self.p, self.n = r, p, n
        self.budget = budget
        self.filter_limit = filter_limit
        self.wanted = wanted
        self.results: list[CheckResult] = []
        self._cache: dict = {}

    def params(self, **extra) -> dict:
        out = {"r": self.r, "p": self.p, "n": self.n}
        out.update(extra)
        return out

    def memo(self, name: str, fn: Callable):
        if name not in self._cache:
            self._cache[name] = fn()
        return self._cache[name]

    def involutions(self) -> list[ColoredElement]:
        return self.memo("invs", lambda: list(enumerate_involutions(self.r, self.p, self.n, budget=self.budget)))

    def brute(self) -> TriPoly:
        return self.memo("brute", lambda: _accumulate(self.involutions()))

    def fpoly(self) -> TriPoly:
        return self.memo("fpoly", lambda: formulas.f_poly(self.r, self.p, self.n))

    def run(self, claim: str, fn: Callable[[], "tuple[bool, dict | None] | None"], **extra) -> None:
        if self.wanted is not None and claim not in self.wanted:
            return
        start = time.perf_counter()
        try:
            outcome = fn()
        except BudgetExceeded as exc:
            self.results.append(CheckResult(claim, self.params(**extra), "skipped", note=str(exc)))
            return
        elapsed = (time.perf_counter() - start) * 1000
        if outcome is None:
            return
        passed, witness = outcome
        if passed:
            status = "pass"
            witness = None
        else:
            status = "finding" if claim in DISPUTED else "fail"
        self.results.append(CheckResult(claim, self.params(**extra), status, witness, elapsed))


def _first(items: Iterable) -> dict | None:
    for item in items:
        return item
    return None


def _check_cell(args) -> list[CheckResult]:
    r, p, n, budget, filter_limit, wanted, n_max = args
    cell = _Cell(r, p, n, budget, filter_limit, wanted)
    case = classify(r, p)
    run = cell.run

    def equal(expected: TriPoly, got: TriPoly):
        w = _poly_witness(expected, got)
        return (w is None, w)

    run("recurrence-vs-brute", lambda: equal(cell.brute(), cell.fpoly()))
    run("explicit-vs-recurrence", lambda: equal(cell.fpoly(), formulas.f_explicit(r, p, n)))

    def brute_modes():
        if group_order(r, n) > filter_limit:
            raise BudgetExceeded(f"|G({r},{n})| = {group_order(r, n)} exceeds filter limit {filter_limit}")
        return equal(cell.brute(), brute_distribution(r, p, n, "filter", budget=filter_limit))

    run("brute-modes", brute_modes)

    def count_check():
        counted = count_involutions(r, p, n)
        streamed = len(cell.involutions())
        evaluated = eval_int(cell.fpoly(), 1, 1, 1)
        ok = counted == streamed == evaluated
        return ok, {"count_involutions": counted, "stream": streamed, "f_poly(1,1,1)": evaluated}

    run("count-involutions", count_check)

    def soundness():
        seen = set()
        for g in cell.involutions():
            key = (g.images, g.colors)
            if not is_involution(g) or not is_member(g, p) or key in seen:
                return False, {"element": format_element(g)}
            seen.add(key)
        return True, None

    run("generator-soundness", soundness)

    def atom_csum():
        for g in cell.involutions():
            d = decompose(g)
            colored = sum(1 for a in d.atoms if isinstance(a, TwoCycle) and a.k)
            expect_csum = (r // 2) * d.half_turns + r * colored
            expect_exc = r * d.two_cycles + (r // 2) * d.half_turns
            if csum(g) != expect_csum or exc_clr(g) != expect_exc:
                return False, {"element": format_element(g), "csum": csum(g), "exc_clr": exc_clr(g)}
        return True, None

    run("atom-csum", atom_csum)

    dist = cell.memo("dist", lambda: formulas.excclr_distribution(r, p, n))
    total = eval_int(cell.fpoly(), 1, 1, 1)
    run("excclr-total", lambda: (sum(dist.values()) == total, {"sum": sum(dist.values()), "count": total}))

    off_grid = [m for m in dist if m % r]
    if case is not CaseTag.EVEN_R_HALF_DIVISIBLE:
        run("excclr-support", lambda: (not off_grid, {"m": _first(off_grid)}))
    run(
        "integrality-remark",
        lambda: (not off_grid, {"m": _first(off_grid), "count": dist.get(_first(off_grid) or 0)}),
    )

    run("classic-recurrence-vs-brute", lambda: equal(cell.brute(), formulas.f_classic_recurrence(r, p, n)))
    run("classic-explicit-vs-brute", lambda: equal(cell.brute(), formulas.f_classic_explicit(r, p, n)))
    run(
        "pol1-vs-recurrence",
        lambda: equal(formulas.f_classic_recurrence(r, p, n), formulas.f_classic_explicit(r, p, n)),
    )

    def excclr_claim(variant: str):
        def check():
            for m in range(0, n * r + 1, r):
                got = formulas.count_excclr_closed(r, p, n, m, variant)
                if got != dist.get(m, 0):
                    return False, {"m": m, "expected": dist.get(m, 0), "got": str(got)}
            return True, None

        return check

    if case is CaseTag.ODD_R:
        run("closed-excclr-odd", excclr_claim("classic"))
    elif case is CaseTag.EVEN_R_HALF_DIVISIBLE:
        run("closed-excclr-even", excclr_claim("classic"))
    else:
        run("closed-excclr-halfindiv", excclr_claim("classic"))
        run("closed-excclr-halfindiv-corrected", excclr_claim("corrected"))
    if case is not CaseTag.EVEN_R_HALF_INDIVISIBLE:
        run("closed-excclr-swapped", excclr_claim("swapped"), case=case.value)

    table = cell.memo("table", lambda: formulas.fix_exca_table(r, p, n))

    def fix_claim(variant: str):
        def check():
            for m in range(n + 1):
                for l in range(n + 1):
                    got = formulas.count_fix_exca_closed(r, p, n, m, l, variant)
                    if got != table.get((m, l), 0):
                        return False, {"m": m, "l": l, "expected": table.get((m, l), 0), "got": str(got)}
            return True, None

        return check

    if case is CaseTag.EVEN_R_HALF_INDIVISIBLE:
        run("closed-fix-exca-halfindiv", fix_claim("classic"))
        run("closed-fix-exca-halfindiv-corrected", fix_claim("corrected"))
    else:
        run("closed-fix-exca", fix_claim("classic"))

    if r == 1:
        def sn_exc():
            for l in range(n + 1):
                expected = table.get((n - 2 * l, l), 0)
                if formulas.sn_exc_count(n, l) != expected:
                    return False, {"l": l, "expected": expected, "got": formulas.sn_exc_count(n, l)}
            return True, None

        run("sn-exc", sn_exc)

        def sn_relation():
            for g in cell.involutions():
                if 2 * exc_a(g) + fix_abs(g) != n:
                    return False, {"element": format_element(g)}
            return True, None

        run("sn-2exc-fix", sn_relation)

    if n >= 1:
        run("reduce-last-deltas", lambda: _reduce_last_deltas(cell.involutions(), r))
    if n >= 1 and p == 1:
        run("reduce-last-fibers", lambda: _reduce_last_fibers(r, n, cell.involutions(), budget))

    if p == 1:
        def full_group():
            if group_order(r, n) > filter_limit:
                raise BudgetExceeded(f"|G({r},{n})| = {group_order(r, n)} exceeds filter limit {filter_limit}")
            return _enumerate_group(r, n)

        def lemma():
            for g in full_group():
                if exc_sigma(g) != exc_clr(g):
                    return False, {"element": format_element(g), "exc": exc_sigma(g), "exc_clr": exc_clr(g)}
            return True, None

        run("lemma-exc", lemma)

        def exc_range():
            for g in full_group():
                if exc_a_set(g, True) != exc_a_set(g, False) or len(exc_a_set(g)) != exc_a(g):
                    return False, {"element": format_element(g)}
            return True, None

        run("exc-a-range", exc_range)

        def product_claim(indexing: str):
            def check():
                if group_order(r, n) > PRODUCT_RULE_LIMIT:
                    raise BudgetExceeded(
                        f"|G({r},{n})|^2 pairs exceed product-rule limit {PRODUCT_RULE_LIMIT}^2"
                    )
                elements = list(_enumerate_group(r, n))
                for a in elements:
                    for b in elements:
                        if product_rule(a, b, indexing) != compose(a, b):
                            return False, {"a": format_element(a), "b": format_element(b)}
                return True, None

            return check

        run("product-rule-value-indexing", product_claim("value"))
        run("product-rule-position-indexing", product_claim("position"))

    if n == n_max:
        def egf():
            pairs = [formulas.recurrence_AB(r, p)]
            if case is CaseTag.EVEN_R_HALF_INDIVISIBLE:
                s = W ** (r // 2)
                B = pairs[0][1] - U**2 * W**r
                pairs += [(U * (1 + s), B), (U * (1 - s), B)]
            for A, B in pairs:
                series = egf_coefficients(A, B, n)
                rec = two_term_recurrence(A, B, n)
                for k in range(n + 1):
                    if series[k] != rec[k]:
                        return False, {"A": str(A), "B": str(B), "n": k}
            return True, None

        run("egf-identity", egf)

    return cell.results


def _reduce_last_deltas(involutions: list[ColoredElement], r: int):
    for g in involutions:
        tag, h = reduce_last(g)
        if not is_involution(h):
            return False, {"element": format_element(g), "reduced": format_element(h)}
        s, t = stat_profile(g), stat_profile(h)
        if isinstance(tag, LastFixed):
            ok = s.fix == t.fix + 1 and s.exc_a == t.exc_a and s.csum == t.csum + tag.j
        else:
            d = 1 if tag.j == 0 else 0
            ok = s.fix == t.fix and s.exc_a == t.exc_a + d and s.csum == t.csum + r * (1 - d)
        if not ok:
            return False, {"element": format_element(g), "reduced": format_element(h)}
    return True, None


def _reduce_last_fibers(r: int, n: int, involutions: list[ColoredElement], budget: int):
    fibers: dict = {}
    for g in involutions:
        tag, h = reduce_last(g)
        fibers.setdefault(tag, []).append((h.images, h.colors))
    smaller = {
        n - 1: {(h.images, h.colors) for h in enumerate_involutions(r, 1, n - 1, budget=budget)},
    }
    if n >= 2:
        smaller[n - 2] = {(h.images, h.colors) for h in enumerate_involutions(r, 1, n - 2, budget=budget)}
    expected_tags = {LastFixed(j) for j in range(r) if (2 * j) % r == 0}
    expected_tags |= {LastPaired(k, j) for k in range(1, n) for j in range(r)}
    if set(fibers) != expected_tags:
        return False, {"missing": sorted(map(repr, expected_tags - set(fibers)))}
    for tag, images in fibers.items():
        target = smaller[n - 1] if isinstance(tag, LastFixed) else smaller[n - 2]
        if len(images) != len(set(images)) or set(images) != target:
            return False, {"fiber": repr(tag), "size": len(images), "target": len(target)}
    return True, None


def verify_lemma_exc(r: int, n: int, budget: int | None = None) -> CheckResult:
    """Check ``exc = exc^Clr`` on every element of G(r,n)."""
    check_params(r, 1, n)
    limit = default_budget() if budget is None else budget
    start = time.perf_counter()
    params = {"r": r, "n": n}
    if group_order(r, n) > limit:
        raise BudgetExceeded(f"|G({r},{n})| = {group_order(r, n)} exceeds budget {limit}")
    for g in _enumerate_group(r, n):
        if exc_sigma(g) != exc_clr(g):
            witness = {"element": format_element(g), "exc": exc_sigma(g), "exc_clr": exc_clr(g)}
            return CheckResult("lemma-exc", params, "fail", witness, (time.perf_counter() - start) * 1000)
    return CheckResult("lemma-exc", params, "pass", None, (time.perf_counter() - start) * 1000)


def grid(r_max: int, n_max: int) -> list[tuple[int, int, int]]:
    return [
        (r, p, n)
        for r in range(1, r_max + 1)
        for p in range(1, r + 1)
        if r % p == 0
        for n in range(n_max + 1)
    ]


def verify_all(
    r_max: int,
    n_max: int,
    claims: Iterable[str] | None = None,
    budget: int | None = None,
    filter_limit: int = DEFAULT_FILTER_LIMIT,
    jobs: int = 1,
) -> VerificationReport:
    """Run every claim on the grid ``r <= r_max, p | r, n <= n_max``.

    Failures become report entries, never exceptions.  Results are ordered
    by grid cell, then by claim, independent of ``jobs``.
    """
    wanted = None
    if claims is not None:
        wanted = frozenset(claims)
        unknown = wanted - set(CLAIMS)
        if unknown:
            raise ValueError(f"unknown claims: {sorted(unknown)}")
    limit = default_budget() if budget is None else budget
    cells = grid(r_max, n_max)
    start = time.perf_counter()
    tasks = [(r, p, n, limit, filter_limit, wanted, n_max) for r, p, n in cells]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_cell = list(pool.map(_check_cell, tasks))
    else:
        per_cell = [_check_cell(t) for t in tasks]
    report = VerificationReport(grid=cells)
    for results in per_cell:
        report.checks.extend(results)
    report.elapsed = time.perf_counter() - start
    return report
