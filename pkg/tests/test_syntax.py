import random

import pytest
from hypothesis import given, settings, strategies as st

from eqcut.generate import rand_formula, rand_term
from eqcut.parser import ParseError, parse_formula, parse_sequent, parse_term
from eqcut.syntax import (SIZE, Abstraction, Var, enumerate_abstractions, free_vars, get_order,
                          register_order, subst, subterms, term_size)

seeds = st.integers(min_value=0, max_value=10**6)


@given(seeds)
def test_term_print_parse_roundtrip(seed):
    t = rand_term(random.Random(seed), depth=3, with_vars=True)
    assert parse_term(str(t)) == t


@given(seeds)
@settings(max_examples=200)
def test_formula_print_parse_roundtrip(seed):
    f = rand_formula(random.Random(seed), depth=3)
    assert parse_formula(str(f)) == f


@given(seeds)
def test_sequent_roundtrip(seed):
    rng = random.Random(seed)
    s = parse_sequent(", ".join(str(rand_formula(rng)) for _ in range(rng.randint(0, 3)))
                      + " => " + str(rand_formula(rng)))
    assert parse_sequent(str(s)) == s


def test_precedence_and_binding():
    f = parse_formula("P(a) & Q(a) | R -> S")
    assert str(f) == "P(a) & Q(a) | R -> S"
    assert parse_formula("forall x. P(x) -> Q(x)") == parse_formula("forall x. (P(x) -> Q(x))")


def test_bound_variable_is_not_free():
    f = parse_formula("forall x. P(x, y)")
    assert free_vars(f) == {"y"}


@pytest.mark.parametrize("text", ["P(a", "a = ", "=> =>", "P(a) &", "f(,)"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as e:
        parse_sequent(text)
    assert e.value.line == 1 and e.value.col >= 1


def test_substitution_and_subterms():
    t = parse_term("g(f(a), b)")
    assert {str(x) for x in subterms(t)} >= {"a", "b", "f(a)", "g(f(a),b)"}
    assert subst(parse_formula("P(x)"), "x", t) == parse_formula("P(g(f(a),b))")
    assert term_size(t) == 4


def test_abstraction_fill_and_count():
    ab = Abstraction(parse_formula("Q(v, f(v))"), "v")
    assert ab.count == 2
    assert ab.fill(parse_term("c")) == parse_formula("Q(c, f(c))")


def test_enumerate_abstractions_covers_every_subset():
    f = parse_formula("a = g(a, a)")
    abs_ = enumerate_abstractions(f, parse_term("a"))
    # three occurrences: every subset of positions, the vacuous one included
    assert len(abs_) == 8
    assert all(ab.fill(parse_term("a")) == f for ab in abs_)


def test_orders():
    assert get_order("size") is SIZE
    assert SIZE.less(parse_term("a"), parse_term("f(a)"))
    with pytest.raises(KeyError):
        get_order("nope")


def test_register_order_rejects_non_strict():
    with pytest.raises(ValueError):
        register_order("bad", lambda a, b: True)
    o = register_order("depth", lambda a, b: _depth(a) < _depth(b))
    assert get_order("depth") is o


def _depth(t):
    return 0 if isinstance(t, Var) or not getattr(t, "args", ()) else 1 + max(map(_depth, t.args))
