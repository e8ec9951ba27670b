import random

import pytest
from hypothesis import given, settings, strategies as st

from eqcut import rules as R
from eqcut.checker import analyze, check
from eqcut.derivation import PreconditionViolation, axiom, infer, nodes
from eqcut.generate import random_eq_derivation, random_lk_derivation
from eqcut.parser import parse_formula as F, parse_sequent as S, parse_term as T
from eqcut.syntax import SIZE, Abstraction, get_order, register_order
from eqcut.transform import (admit_cng, basic_atomic, eliminate_cuts_eq, eliminate_cuts_eqn,
                             eliminate_cuts_full, embed_pure, eq_cng_interderive, g_transform,
                             is_semishortening, is_separated, l_rules_to_eq, left_symmetry,
                             project_intuitionistic, recording, semishorten, separate,
                             singletonize, to_atomic, transpose_eq)

seeds = st.integers(min_value=0, max_value=10**6)
slow = settings(max_examples=25, deadline=None)


def lk(seed):
    intu = seed % 2 == 1
    return random_lk_derivation(random.Random(seed), intuitionistic=intu), ("LJ=" if intu else "LK=")


def _same_end_and_valid(x, d, system):
    rep = check(x, system)
    assert rep.ok, rep.lines()[:5]
    assert x.conclusion == d.conclusion


def _no_bad_steps(tr):
    assert not tr.bad(), tr.bad()[:3]


# ------------------------------------------------------------ atomic / separate


@pytest.mark.parametrize("skel", ["P(v) & Q(v)", "forall x. R(x, v)", "~P(v) | (P(v) -> Q)"])
@pytest.mark.parametrize("variant", ["a", "b"])
def test_basic_atomic(skel, variant):
    d = basic_atomic(F(skel), "v", T("a"), T("b"), variant)
    assert check(d, "LK=@atomic").ok
    assert analyze(d).cutCount == 0


def test_basic_atomic_rejects_captured_hole():
    with pytest.raises(PreconditionViolation):
        basic_atomic(F("P(v)"), "v", T("v"), T("b"))


@given(seeds)
@slow
def test_to_atomic(seed):
    d, name = lk(seed)
    with recording() as tr:
        x = to_atomic(d)
    _same_end_and_valid(x, d, name + "@atomic")
    _no_bad_steps(tr)


@given(seeds)
@slow
def test_separate(seed):
    d, name = lk(seed)
    with recording() as tr:
        x = separate(d)
    _same_end_and_valid(x, d, name)
    assert is_separated(x)
    _no_bad_steps(tr)


def test_project_intuitionistic():
    a = axiom(F("a=b"))
    d = infer(R.WeakR(F("c=c")), a)
    x, _ = project_intuitionistic(d)
    assert len(x.conclusion.suc) == 1
    assert check(x, "EQ").ok
    with pytest.raises(PreconditionViolation):
        project_intuitionistic(infer(R.AndR(), axiom(F("P")), axiom(F("P"))))


# ------------------------------------------------------------ cut elimination


@given(seeds)
@slow
def test_eliminate_cuts_full(seed):
    d, name = lk(seed)
    with recording() as tr:
        x = eliminate_cuts_full(d, name)
    _same_end_and_valid(x, d, "cf." + name)
    assert analyze(x).cutCount == 0
    _no_bad_steps(tr)


@given(seeds)
@slow
def test_eliminate_cuts_eq_and_eqn(seed):
    d = random_eq_derivation(random.Random(seed))
    with recording() as tr:
        x = eliminate_cuts_eq(d)
    _same_end_and_valid(x, d, "cf.EQ")
    _no_bad_steps(tr)
    n = eq_cng_interderive(d, "toEQN")
    _same_end_and_valid(n, d, "EQN")
    m = eliminate_cuts_eqn(n)
    _same_end_and_valid(m, d, "cf.EQN")
    # back to EQ: each congruence inference costs a cut
    back = eq_cng_interderive(m, "toEQ")
    _same_end_and_valid(back, d, "EQ")
    _same_end_and_valid(eliminate_cuts_eq(back), d, "cf.EQ")


@given(seeds)
@slow
def test_l_rules_to_eq(seed):
    d = random_eq_derivation(random.Random(seed), left_rules=True)
    _same_end_and_valid(l_rules_to_eq(d), d, "EQ")


def test_admit_cng_precondition():
    with pytest.raises(PreconditionViolation):
        admit_cng(axiom(F("P(a)")), axiom(F("a=b")), Abstraction(F("P(v)"), "v"), T("b"), T("a"))


# ------------------------------------------------------------ singleton / transposition


@given(seeds)
@slow
def test_singletonize(seed):
    d = random_eq_derivation(random.Random(seed), left_rules=True)
    _same_end_and_valid(singletonize(d), d, "EQ12@singleton")


@given(seeds, st.sampled_from(["EQ1", "EQ2"]))
@slow
def test_transpose(seed, target):
    d = eliminate_cuts_eq(random_eq_derivation(random.Random(seed)))
    with recording() as tr:
        x = transpose_eq(d, target)
    _same_end_and_valid(x, d, "cf." + target)
    _no_bad_steps(tr)


@pytest.mark.parametrize("system", ["cf.EQ12", "cf.EQ", "cf.EQ1", "cf.EQ2"])
def test_left_symmetry(system):
    d = infer(R.WeakL(F("c=d")), axiom(F("e=h(e)")))
    d = infer(R.ExchL(0), d)
    x = left_symmetry(d, system)
    assert x.conclusion == S("c=d, h(e)=e => e=h(e)")
    assert check(x, system).ok


def test_left_symmetry_over_a_hypothesis():
    from eqcut.derivation import hypothesis
    from eqcut.systems import get_system
    h = S("c=d, e=h(e) => c=k")
    x = left_symmetry(hypothesis(h), "cf.EQ12")
    assert x.conclusion == S("c=d, h(e)=e => c=k")
    assert check(x, get_system("cf.EQ12").with_hypotheses(h)).ok


# ------------------------------------------------------------ semishortening


@given(seeds)
@slow
def test_semishorten(seed):
    d = random_eq_derivation(random.Random(seed), left_rules=True)
    x = semishorten(d, SIZE)
    _same_end_and_valid(x, d, "cf.EQ12@semishort(size)")
    assert is_semishortening(x, SIZE)
    # semishortening implies nonlengthening
    assert check(x, "cf.EQ12@nonlength(size)").ok


def test_semishorten_other_order():
    lex = register_order("lexstr", lambda a, b: str(a) < str(b))
    d = random_eq_derivation(random.Random(11), left_rules=True)
    x = semishorten(d, lex)
    _same_end_and_valid(x, d, "cf.EQ12@semishort(lexstr)")
    assert get_order("lexstr") is lex


def test_g_transform_fast_path_and_preconditions():
    ab = Abstraction(F("P(v)"), "v")
    a = axiom(F("P(a)"))
    x = g_transform(a, 1, ab, T("a"), T("f(a)"), SIZE)
    assert x.conclusion == S("P(a), a=f(a) => P(f(a))")
    assert check(x, "cf.EQ12@semishort(size)").ok
    with pytest.raises(PreconditionViolation):
        g_transform(a, 1, ab, T("b"), T("a"), SIZE)
    reflexive = register_order("refl_bad", lambda s, t: True, probes=0)
    with pytest.raises(PreconditionViolation):
        g_transform(a, 1, ab, T("a"), T("b"), reflexive)
    with pytest.raises(PreconditionViolation):
        semishorten(random_eq_derivation(random.Random(2), left_rules=True), reflexive)


# ------------------------------------------------------------ embedding


@given(seeds)
@slow
def test_embed_pure(seed):
    d, name = lk(seed)
    x = embed_pure(eliminate_cuts_full(d, name))
    _same_end_and_valid(x, d, "cf." + name.replace("=", "1="))
    assert not any(isinstance(n.rule, (R.Eq1, R.Eq1L, R.Cng)) for _, n in nodes(x))


def test_embed_needs_cut_free():
    a = axiom(F("P"))
    with pytest.raises(PreconditionViolation):
        embed_pure(infer(R.Cut(F("P")), a, a))


def test_deep_derivations_do_not_overflow():
    # a chain of 3000 equality inferences; every pass recurses along it
    d = axiom(F("P(a0)"))
    for i in range(3000):
        d = infer(R.Eq1(Abstraction(F("P(v)"), "v"), T(f"a{i}"), T(f"a{i + 1}")), d)
    for x in (singletonize(d), to_atomic(d), transpose_eq(d, "EQ1")):
        assert x.conclusion == d.conclusion
    x = embed_pure(d)
    assert check(x, "cf.LJ1=").ok


def test_transposition_grows_quadratically_on_chains():
    # each rewritten inference is pushed to the leaves, so output size is about n^2/2
    def chain(n):
        d = axiom(F("P(a0)"))
        for i in range(n):
            d = infer(R.Eq1(Abstraction(F("P(v)"), "v"), T(f"a{i}"), T(f"a{i + 1}")), d)
        return d
    sizes = [transpose_eq(chain(n), "EQ2").size for n in (10, 20)]
    assert sizes[0] < sizes[1] <= 5 * sizes[0]
