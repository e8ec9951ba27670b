import random

import pytest
from hypothesis import given, settings, strategies as st

from eqcut import rules as R
from eqcut.checker import analyze, check, rank
from eqcut.derivation import Derivation, axiom, infer, refl
from eqcut.generate import random_eq_derivation, random_lk_derivation
from eqcut.parser import parse_formula as F, parse_sequent as S, parse_term as T
from eqcut.syntax import SIZE, Abstraction
from eqcut.systems import UnknownSystem, get_system

seeds = st.integers(min_value=0, max_value=10**6)


def test_eq1_schema():
    d = infer(R.Eq1(Abstraction(F("P(v)"), "v"), T("a"), T("b")), axiom(F("P(a)")))
    assert str(d.conclusion) == "P(a), a=b => P(b)"
    assert check(d, "cf.EQ1").ok


def test_eq2_operating_equality_is_reversed():
    d = infer(R.Eq2(Abstraction(F("P(v)"), "v"), T("a"), T("b")), axiom(F("P(a)")))
    assert d.conclusion.ant[-1] == F("b=a")
    assert check(d, "cf.EQ2").ok
    assert not check(d, "cf.EQ1").ok


def test_left_rule_rewrites_target():
    d = infer(R.Eq1L(Abstraction(F("P(v)"), "v"), T("a"), T("b"), 0), axiom(F("P(a)")))
    assert d.conclusion == S("P(b), a=b => P(a)")


def test_operating_equality_must_be_last():
    d = infer(R.Eq1(Abstraction(F("P(v)"), "v"), T("a"), T("b")), axiom(F("P(a)")))
    swapped = Derivation(S("a=b, P(a) => P(b)"), d.rule, d.premisses)
    rep = check(swapped, "cf.EQ")
    assert not rep.ok and rep.violations[0][0] == ()


def test_cut_needs_system_with_cut():
    a = axiom(F("P"))
    d = infer(R.Cut(F("P")), a, a)
    assert check(d, "LK").ok
    rep = check(d, "cf.LK")
    assert not rep.ok and "cut" in rep.lines()[0]


def test_intuitionistic_succedent_bound():
    d = infer(R.WeakR(F("Q")), axiom(F("P")))
    assert check(d, "LK").ok
    assert not check(d, "LJ").ok


def test_violation_paths_point_at_the_bad_node():
    good = refl(T("a"))
    bad = Derivation(S("=> a=b"), R.ReflAxiom(T("a")), ())
    d = Derivation(S("c=c => a=b"), R.WeakL(F("c=c")), (bad,))
    rep = check(d, "EQ")
    assert [p for p, _ in rep.violations] == [(0,)]
    assert check(infer(R.WeakL(F("c=c")), good), "EQ").ok


def test_flags():
    two = Abstraction(F("Q(v,v)"), "v")
    d = infer(R.Eq1(two, T("a"), T("b")), axiom(F("Q(a,a)")))
    assert check(d, "cf.EQ").ok
    assert not check(d, "cf.EQ@singleton").ok
    # the order counts r < s as shortening, so rewriting f(a) to a lengthens
    longer = infer(R.Eq1(Abstraction(F("P(v)"), "v"), T("f(a)"), T("a")), axiom(F("P(f(a))")))
    assert analyze(longer, SIZE).lengtheningCount == 1
    assert not check(longer, "cf.EQ@nonlength(size)").ok
    assert not check(longer, "cf.EQ@semishort(size)").ok


def test_atomic_flag():
    ab = Abstraction(F("P(v) & Q"), "v")
    d = infer(R.Eq1(ab, T("a"), T("b")), axiom(F("P(a) & Q")))
    assert check(d, "LK=").ok
    assert not check(d, "LK=@atomic").ok


def test_system_names():
    for name in ("LJ", "LK", "LJ=", "LK=", "LJ1=", "LKN=", "LJ=_12", "EQ", "EQN", "EQ1", "EQ2", "EQ12",
                 "cf.EQ12@semishort(size)", "cf.{eq1,eq2l}"):
        assert get_system(name).name
    with pytest.raises(UnknownSystem):
        get_system("XYZ")
    assert get_system("cf.{eq1,eq2l}").cut_free


def test_metrics_and_rank():
    a = axiom(F("P"))
    d = infer(R.Cut(F("P")), a, a)
    m = analyze(d)
    assert (m.height, m.cutCount, m.nodes) == (1, 1, 3)
    assert rank(F("P"), a, "suc") == 1


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_generated_lk_derivations_check(seed):
    rng = random.Random(seed)
    d = random_lk_derivation(rng, intuitionistic=seed % 2 == 1)
    assert check(d, "LJ=" if seed % 2 else "LK=").ok


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_generated_eq_derivations_check(seed):
    d = random_eq_derivation(random.Random(seed), left_rules=seed % 2 == 1)
    assert check(d, "EQ12" if seed % 2 else "EQ").ok


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_reinference_agrees_with_checker(seed):
    # rebuilding every node forward gives the same tree the checker accepted
    d = random_eq_derivation(random.Random(seed))

    def rebuild(x):
        return infer(x.rule, *map(rebuild, x.premisses))
    assert rebuild(d) == d
