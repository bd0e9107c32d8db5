import pytest

import naive
from grpn.formulas import recurrence_AB
from grpn.group_core import BudgetExceeded
from grpn.involutions import enumerate_involutions
from grpn.oracle import (
    CLAIMS,
    DISPUTED,
    brute_distribution,
    brute_distributions_filter,
    egf_coefficients,
    grid,
    verify_all,
    verify_lemma_exc,
)
from grpn.polyalg import ONE, U, V, W, TriPoly, eval_int, two_term_recurrence


def test_brute_distribution_examples():
    assert brute_distribution(1, 1, 3) == U**3 + 3 * U * V
    assert brute_distribution(2, 1, 1) == U + U * W
    for r, p in [(1, 1), (4, 2), (6, 3)]:
        assert brute_distribution(r, p, 0) == ONE
        assert brute_distribution(r, p, 0, "filter") == ONE


@pytest.mark.parametrize("r,p,n", [(2, 2, 3), (3, 1, 3), (4, 4, 3), (2, 1, 4)])
def test_modes_agree_with_definition_oracle(r, p, n):
    expected = TriPoly(naive.involution_stats(r, p, n))
    assert brute_distribution(r, p, n, "generator") == expected
    assert brute_distribution(r, p, n, "filter") == expected


def test_filter_pass_serves_all_divisors():
    polys = brute_distributions_filter(4, 3, [1, 2, 4])
    for p, poly in polys.items():
        assert poly == brute_distribution(4, p, 3)


def test_brute_budget_and_mode():
    with pytest.raises(BudgetExceeded):
        brute_distribution(3, 1, 4, "filter", budget=100)
    with pytest.raises(BudgetExceeded):
        brute_distribution(3, 1, 4, "generator", budget=10)
    with pytest.raises(ValueError):
        brute_distribution(2, 1, 2, "random")


def test_stream_length_is_evaluation():
    for r, p, n in [(3, 3, 4), (2, 2, 5), (6, 2, 3)]:
        assert eval_int(brute_distribution(r, p, n), 1, 1, 1) == sum(
            1 for _ in enumerate_involutions(r, p, n)
        )


def test_egf_coefficients():
    assert [eval_int(f, 1, 1, 1) for f in egf_coefficients(U, V, 6)] == naive.egf_by_taylor(1, 1, 6)
    for r, p in [(1, 1), (2, 1), (2, 2), (3, 1), (4, 2)]:
        A, B = recurrence_AB(r, p)
        assert egf_coefficients(A, B, 6) == two_term_recurrence(A, B, 6)


@pytest.mark.parametrize("r,n", [(3, 3), (1, 4), (2, 3)])
def test_verify_lemma_exc(r, n):
    result = verify_lemma_exc(r, n)
    assert result.status == "pass" and result.claim == "lemma-exc"


def test_verify_lemma_budget():
    with pytest.raises(BudgetExceeded):
        verify_lemma_exc(3, 4, budget=100)


def test_grid():
    assert grid(0, 5) == []
    assert grid(2, 1) == [(1, 1, 0), (1, 1, 1), (2, 1, 0), (2, 1, 1), (2, 2, 0), (2, 2, 1)]


def test_empty_report():
    rep = verify_all(0, 4)
    assert rep.ok and rep.checks == [] and rep.grid == []


def test_default_grid_has_no_hard_failures():
    rep = verify_all(4, 4)
    assert rep.ok
    failing = [c for c in rep.checks if c.status == "fail"]
    assert failing == []
    for c in rep.checks:
        if c.status == "finding":
            assert c.claim in DISPUTED
            assert c.witness
    claims = {c.claim for c in rep.checks}
    assert {"lemma-exc", "recurrence-vs-brute", "reduce-last-fibers", "egf-identity"} <= claims


def test_findings_are_the_expected_ones():
    rep = verify_all(4, 4)
    found = {(c.claim, c.params["r"], c.params["p"], c.params["n"]) for c in rep.checks if c.status == "finding"}
    halfindiv = {(2, 2, 4), (4, 4, 4)}
    for cell in halfindiv:
        for claim in ("classic-recurrence-vs-brute", "classic-explicit-vs-brute", "closed-excclr-halfindiv",
                      "closed-fix-exca-halfindiv"):
            assert (claim,) + cell in found
    # nothing from the last regime below n = 4
    assert not {f for f in found if f[0] == "classic-recurrence-vs-brute" and f[3] < 4}
    assert ("integrality-remark", 2, 1, 1) in found
    assert ("closed-excclr-swapped", 1, 1, 2) in found
    assert ("product-rule-position-indexing", 2, 1, 2) in found


def test_half_multiple_witness():
    rep = verify_all(2, 1, claims=["integrality-remark"])
    (hit,) = [c for c in rep.checks if c.params == {"r": 2, "p": 1, "n": 1}]
    assert hit.status == "finding" and hit.witness == {"m": 1, "count": 1}


def test_claim_filter_and_unknown_claim():
    rep = verify_all(2, 2, claims=["lemma-exc"])
    assert {c.claim for c in rep.checks} == {"lemma-exc"}
    with pytest.raises(ValueError):
        verify_all(2, 2, claims=["nope"])
    assert set(DISPUTED) <= set(CLAIMS)


def test_sn_claims_present():
    rep = verify_all(1, 6)
    claims = {c.claim for c in rep.checks}
    assert {"sn-exc", "sn-2exc-fix"} <= claims and rep.ok


def test_report_is_deterministic_and_job_independent():
    a = verify_all(3, 3).as_dict()
    b = verify_all(3, 3).as_dict()
    c = verify_all(3, 3, jobs=2).as_dict()
    assert a == b == c


def test_filter_limit_skips():
    rep = verify_all(3, 4, claims=["brute-modes"], filter_limit=100)
    statuses = {(c.params["r"], c.params["n"]): c.status for c in rep.checks}
    assert statuses[(3, 4)] == "skipped"
    assert statuses[(1, 4)] == "pass"
