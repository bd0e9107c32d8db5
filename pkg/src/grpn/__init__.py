"""Excedance and fixed-point statistics for involutions in G(r,p,n)."""

from .formulas import (
    CaseTag,
    classify,
    count_excclr_closed,
    count_fix_exca_closed,
    excclr_distribution,
    f_explicit,
    f_poly,
    recurrence_AB,
    sn_exc_count,
)
from .group_core import (
    BudgetExceeded,
    ColoredElement,
    GroupError,
    SigmaLetter,
    apply,
    cmp_color_order,
    compose,
    csum,
    enumerate_group,
    format_element,
    identity,
    inverse,
    is_involution,
    is_member,
    parse_element,
)
from .involutions import (
    count_involutions,
    decompose,
    assemble,
    enumerate_involutions,
    reduce_last,
)
from .oracle import brute_distribution, verify_all
from .polyalg import TriPoly
from .stats import StatProfile, exc_a, exc_clr, exc_sigma, fix_abs, stat_profile

__version__ = "0.1.0"

__all__ = [
    "apply",
    "assemble",
    "brute_distribution",
    "BudgetExceeded",
    "CaseTag",
    "classify",
    "cmp_color_order",
    "ColoredElement",
    "compose",
    "count_excclr_closed",
    "count_fix_exca_closed",
    "count_involutions",
    "csum",
    "decompose",
    "enumerate_group",
    "enumerate_involutions",
    "exc_a",
    "exc_clr",
    "exc_sigma",
    "excclr_distribution",
    "f_explicit",
    "f_poly",
    "fix_abs",
    "format_element",
    "GroupError",
    "identity",
    "inverse",
    "is_involution",
    "is_member",
    "parse_element",
    "recurrence_AB",
    "reduce_last",
    "SigmaLetter",
    "sn_exc_count",
    "stat_profile",
    "StatProfile",
    "TriPoly",
    "verify_all",
]
