import random

import pytest
from hypothesis import given, settings, strategies as st

from eqcut.checker import analyze, check
from eqcut.generate import random_eq_derivation
from eqcut.parser import parse_sequent as S, parse_term as T
from eqcut.search import (BudgetInvalid, SearchBudget, certify_underivable,
                          check_nonderivable_symmetry, prove, within_budget)
from eqcut.transform import eliminate_cuts_eq

COUNTEREXAMPLES = [
    ("a=c, b=c => a=b", "cf.{eq1,eq2l}"),
    ("c=b, c=a => a=b", "cf.{eq2,eq1l}"),
    ("a=b => f(a)=f(b)", "cf.{eq1l,eq2l}"),
]


@pytest.mark.parametrize("goal, system", COUNTEREXAMPLES)
def test_counterexamples_exhaust(goal, system):
    res = prove(goal, system)
    assert not res.found
    cert = res.certificate
    assert cert.exhausted and cert.visited and not cert.closed
    g = S(goal)
    assert str(type(g)(tuple(sorted(g.ant, key=str)), g.suc)) in cert.visited
    assert set(cert.universe) == {"a", "b", "c"} or "f(a)" in cert.universe


@pytest.mark.parametrize("goal, _", COUNTEREXAMPLES)
@pytest.mark.parametrize("system", ["cf.EQ12", "cf.EQ"])
def test_counterexamples_provable_with_all_rules(goal, _, system):
    res = prove(goal, system)
    assert res.found
    assert res.derivation.conclusion == S(goal)
    assert check(res.derivation, system).ok
    assert within_budget(res.derivation)


def test_found_depth_is_iterative_deepening_minimum():
    res = prove("a=b => f(a)=f(b)", "cf.EQ")
    assert res.depth == 2
    assert not prove("a=b => f(a)=f(b)", "cf.EQ", SearchBudget(max_depth=1)).found


def test_budget_validation():
    for bad in (SearchBudget(max_depth=0), SearchBudget(multiplicity_cap=0)):
        with pytest.raises(BudgetInvalid):
            prove("=> a=a", "cf.EQ", bad)


def test_unsupported_system():
    with pytest.raises((BudgetInvalid, ValueError)):
        prove("a=b => b=a", "LK")


def test_explicit_universe():
    universe = frozenset({T("a"), T("b")})
    res = prove("a=b => b=a", "cf.EQ", SearchBudget(universe=universe))
    assert res.found
    res = certify_underivable("a=c, b=c => a=b", "cf.{eq1,eq2l}", SearchBudget(universe=universe | {T("c")}))
    assert res.exhausted


@pytest.mark.parametrize("system, holds", [("cf.EQ1", True), ("cf.EQ2", True)])
def test_symmetry_underivable_in_single_rule_systems(system, holds):
    cert = check_nonderivable_symmetry(system)
    assert cert.exhausted and cert.invariant_holds is holds
    assert cert.invariant


def test_symmetry_derivable_in_eq12():
    from eqcut.systems import get_system
    spec = get_system("cf.EQ12").with_hypotheses(S("a=b => c=d"))
    res = prove("b=a => c=d", spec)
    assert res.found
    assert check(res.derivation, spec).ok


def test_memo_statistics_are_reported():
    res = prove("a=c, b=c => a=b", "cf.{eq1,eq2l}")
    assert res.statistics.expanded > 0
    d = res.certificate.to_dict()
    assert d["budget"]["maxDepth"] == 8 and d["statistics"]["nodesExpanded"] > 0


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_search_agrees_with_cut_elimination(seed):
    rng = random.Random(seed)
    d = random_eq_derivation(rng, max_nodes=rng.randint(3, 10))
    e = eliminate_cuts_eq(d)
    res = prove(d.conclusion, "cf.EQ")
    if within_budget(e):
        assert res.found
    if res.found:
        assert check(res.derivation, "cf.EQ").ok
        assert analyze(res.derivation).cutCount == 0
