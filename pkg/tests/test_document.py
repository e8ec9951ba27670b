import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from eqcut.checker import check
from eqcut.document import parse, parse_document, print_document, same_tree
from eqcut.generate import random_eq_derivation, random_lk_derivation
from eqcut.parser import ParseError

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
seeds = st.integers(min_value=0, max_value=10**6)

SAMPLE = """\
# a=b gives f(a)=f(b)
format 1
system cf.EQ
let t = f(b)
eq2 hole=v skel="f(v)=$t" r="b" s="a" |- a=b => f(a)=f(b)
  refl term="$t" |- => f(b)=f(b)
"""


def test_sample_parses_and_checks():
    doc = parse_document(SAMPLE)
    assert doc.system_name == "cf.EQ"
    assert doc.abbreviations == {"t": "f(b)"}
    assert check(doc.derivation, doc.system).ok


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_roundtrip_random(seed):
    rng = random.Random(seed)
    if seed % 2:
        d, name = random_lk_derivation(rng), "LK="
    else:
        d, name = random_eq_derivation(rng, left_rules=True), "EQ12"
    text = print_document(d, name)
    back, spec = parse(text)
    assert same_tree(back, d)
    assert spec.name == name
    assert print_document(back, name) == text


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.drv")), ids=lambda p: p.stem)
def test_corpus_roundtrip(path):
    text = path.read_text()
    doc = parse_document(text)
    again = parse_document(print_document(doc.derivation, doc.system))
    assert same_tree(doc.derivation, again.derivation)


@pytest.mark.parametrize("text, line, needle", [
    ("", 1, "empty"),
    ("format 2\nax |- P => P\n", 1, "version"),
    ("system NOPE\nax |- P => P\n", 1, "NOPE"),
    ("frob |- P => P\n", 1, "unknown rule"),
    ("wl formula=\"Q\" |- Q, P => P\n   ax |- P => P\n", 2, "multiple of two"),
    ("wl formula=\"Q\" |- Q, P => P\n\tax |- P => P\n", 2, "tabs"),
    ("ax |- P => P\nax |- Q => Q\n", 2, "single"),
    ("ax |- P => P\n    ax |- Q => Q\n", 2, "more than one level"),
    ("ax |- P(a) => P(a, b)\n", 1, "arity"),
    ("ax bogus=1 |- P => P\n", 1, "no annotation"),
    ("refl term=\"$u\" |- => a=a\n", 1, "abbreviation"),
    ("eq1 r=\"a\" s=\"b\" |- P(a), a=b => P(b)\n  ax |- P(a) => P(a)\n", 1, "hole"),
])
def test_errors_have_line_numbers(text, line, needle):
    with pytest.raises(ParseError) as e:
        parse_document(text)
    assert e.value.line == line
    assert needle in str(e.value)


def test_parsed_but_invalid_tree_is_left_to_the_checker():
    doc = parse_document("format 1\nsystem EQ\nrefl term=\"a\" |- => a=b\n")
    assert not check(doc.derivation, doc.system).ok


def test_hypotheses_extend_the_system():
    doc = parse_document("system cf.EQ\nhypothesis a=b => c=d\nhyp |- a=b => c=d\n")
    assert "hyp" in doc.system.rules
    assert check(doc.derivation, doc.system).ok
