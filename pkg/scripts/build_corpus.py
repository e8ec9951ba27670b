"""Regenerate corpus/*.drv.

Each derivation is assembled with forward rule application, so the tree is
correct by construction; the acceptance suite then re-parses the text files
and checks them.  Schematic premisses (Gamma => F{v/r} and the like) become
extra initial sequents declared with ``hypothesis`` lines.
"""
from __future__ import annotations

import sys
from pathlib import Path

from eqcut import rules as R
from eqcut.checker import check
from eqcut.derivation import axiom, hypothesis, infer, refl, restructure
from eqcut.document import parse_document, print_document
from eqcut.parser import parse_formula, parse_sequent, parse_term
from eqcut.syntax import Abstraction, Sequent
from eqcut.systems import get_system

OUT = Path(__file__).resolve().parent.parent / "corpus"

F = parse_formula
T = parse_term
S = parse_sequent


def ab(text: str, hole: str = "v") -> Abstraction:
    return Abstraction(F(text), hole)


# Schematic instance used by the interderivations: F = P(f(v)), r = a, s = g(b),
# Gamma = G, Lambda = L, Delta = D.
FV = ab("P(f(v))")
R_, S_ = T("a"), T("g(b)")
Fr, Fs = FV.fill(R_), FV.fill(S_)


def eq_(x, y):
    from eqcut.syntax import eq
    return eq(x, y)


def intro_eq1_from_elim():
    """=1 from the elimination rule: Gamma => F{v/r} and an axiom."""
    d = infer(R.EqElim(FV, R_, S_), hypothesis(Sequent((F("G"),), (Fr,))), axiom(Fs))
    return d, "LJ1=", "=1 derived from the elimination rule without cut"


def intro_eq2_from_elim():
    inner, *_ = intro_eq1_from_elim()
    # elimination with changing formula v=s turns r=s into s=r
    outer = infer(R.EqElim(ab("w=g(b)", "w"), S_, R_), refl(S_), inner)
    return outer, "LJ1=", "=2 derived from the elimination rule and reflexivity without cut"


def intro_elim_from_eq1():
    left = infer(R.Eq1(FV, R_, S_), hypothesis(Sequent((F("L"),), (Fr,))))
    right = hypothesis(Sequent((F("G"), Fs), (F("D"),)))
    d = infer(R.Cut(Fs), left, right)
    d = restructure(d, Sequent((F("L"), F("G"), eq_(R_, S_)), (F("D"),)))
    return d, "LJ=", "the elimination rule derived from =1 with a cut"


def intro_elim_from_eq2():
    # => s=s gives r=s => s=r by =2 with changing formula s=v
    flip = infer(R.Eq2(ab("g(b)=w", "w"), S_, R_), refl(S_))
    main = infer(R.Eq2(FV, R_, S_), hypothesis(Sequent((F("L"),), (Fr,))))
    mid = infer(R.Cut(eq_(S_, R_)), flip, restructure(main, Sequent((F("L"), eq_(S_, R_)), (Fs,))))
    right = hypothesis(Sequent((F("G"), Fs), (F("D"),)))
    d = infer(R.Cut(Fs), mid, right)
    d = restructure(d, Sequent((F("L"), F("G"), eq_(R_, S_)), (F("D"),)))
    return d, "LJ=", "the elimination rule derived from =2 and reflexivity with cuts"


def intro_eq2l_from_elim():
    d = infer(R.EqElim(FV, S_, R_), axiom(Fs), hypothesis(Sequent((F("G"), Fr), (F("D"),))))
    d = restructure(d, Sequent((F("G"), Fs, eq_(S_, R_)), (F("D"),)))
    return d, "LJ1=", "=2^l derived from the elimination rule"


def intro_eq1l_from_elim():
    d, *_ = intro_eq2l_from_elim()
    # => r=r and changing formula v=r turn s=r into r=s
    d = infer(R.EqElim(ab("w=a", "w"), R_, S_), refl(R_), d)
    d = restructure(d, Sequent((F("G"), Fs, eq_(R_, S_)), (F("D"),)))
    return d, "LJ1=", "=1^l derived from the elimination rule and reflexivity"


def intro_elim_from_eq2l():
    p = hypothesis(Sequent((F("L"), Fs), (F("D"),)))
    e = infer(R.Eq2L(FV, S_, R_, 1), p)  # L, F{v/r}, r=s => D
    e = restructure(e, Sequent((F("L"), eq_(R_, S_), Fr), (F("D"),)))
    d = infer(R.Cut(Fr), hypothesis(Sequent((F("G"),), (Fr,))), e)
    d = restructure(d, Sequent((F("G"), F("L"), eq_(R_, S_)), (F("D"),)))
    return d, "LJ=_2", "the elimination rule derived from =2^l with a cut"


def intro_elim_from_eq1l():
    p = hypothesis(Sequent((F("L"), Fs), (F("D"),)))
    e = infer(R.Eq1L(FV, S_, R_, 1), p)  # L, F{v/r}, s=r => D
    e = infer(R.Eq1L(ab("g(b)=w", "w"), R_, S_, 2), e)  # L, F{v/r}, s=s, r=s => D
    e = restructure(e, Sequent((F("L"), Fr, eq_(R_, S_), eq_(S_, S_)), (F("D"),)))
    e = infer(R.Cut(eq_(S_, S_)), refl(S_), e)
    e = restructure(e, Sequent((F("L"), eq_(R_, S_), Fr), (F("D"),)))
    d = infer(R.Cut(Fr), hypothesis(Sequent((F("G"),), (Fr,))), e)
    d = restructure(d, Sequent((F("G"), F("L"), eq_(R_, S_)), (F("D"),)))
    return d, "LJ=_1", "the elimination rule derived from =1^l and reflexivity with cuts"


# ------------------------------------------------ counterexamples

a, b, c = T("a"), T("b"), T("c")


def ce_acbc_eq2():
    d = infer(R.Eq2(ab("a=v"), c, b), axiom(F("a=c")))
    return d, "cf.EQ", "a=c, b=c => a=b by =2 over an axiom"


def ce_acbc_eq1l():
    d = infer(R.Eq1L(ab("a=v"), b, c, 0), axiom(F("a=b")))
    return d, "cf.EQ1", "a=c, b=c => a=b by =1^l over an axiom"


def ce_cbca_eq1():
    d = infer(R.Eq1(ab("v=b"), c, a), axiom(F("c=b")))
    return d, "cf.EQ", "c=b, c=a => a=b by =1 over an axiom"


def ce_cbca_eq2l():
    d = infer(R.Eq2L(ab("v=b"), a, c, 0), axiom(F("a=b")))
    return d, "cf.EQ2", "c=b, c=a => a=b by =2^l over an axiom"


def fafb_eq1():
    d = infer(R.Eq1(ab("f(a)=f(v)"), a, b), refl(T("f(a)")))
    return d, "cf.EQ", "a=b => f(a)=f(b) by =1 over reflexivity"


def fafb_eq2():
    d = infer(R.Eq2(ab("f(v)=f(b)"), b, a), refl(T("f(b)")))
    return d, "cf.EQ", "a=b => f(a)=f(b) by =2 over reflexivity"


# left symmetry: Gamma = c=d, r = e, s = h(e), Delta = c=k
LS_HYP = S("c=d, e=h(e) => c=k")
r_, s_ = T("e"), T("h(e)")


def leftsym_eq12():
    d = hypothesis(LS_HYP)
    d = infer(R.Eq1L(ab("e=v"), s_, r_, 1), d)  # c=d, e=e, h(e)=e
    d = infer(R.Eq2L(ab("v=e"), r_, s_, 1), d)  # c=d, h(e)=e, h(e)=e, h(e)=e
    d = infer(R.ContrL(1), d)
    d = infer(R.ContrL(1), d)
    return d, "cf.EQ12", "left symmetry from =1^l, =2^l and contraction"


def leftsym_eq1():
    flip = infer(R.Eq1(ab("v=h(e)"), s_, r_), refl(s_))  # h(e)=e => e=h(e)
    d = infer(R.Cut(F("e=h(e)")), flip, hypothesis(LS_HYP))
    d = restructure(d, S("c=d, h(e)=e => c=k"))
    return d, "EQ1", "left symmetry in EQ1 with a cut"


def leftsym_eq2():
    flip = infer(R.Eq2(ab("e=v"), r_, s_), refl(r_))  # h(e)=e => e=h(e)
    d = infer(R.Cut(F("e=h(e)")), flip, hypothesis(LS_HYP))
    d = restructure(d, S("c=d, h(e)=e => c=k"))
    return d, "EQ2", "left symmetry in EQ2 with a cut"


# ------------------------------------------------ pipeline example


def cut_example():
    pa, qa = F("P(a)"), F("Q(a)")
    left = restructure(axiom(pa), Sequent((pa, qa), (pa,)))
    right = restructure(axiom(qa), Sequent((pa, qa), (qa,)))
    d = infer(R.AndR(), left, right)
    d = infer(R.Eq1(ab("P(v) & Q(v)"), a, b), d)  # P(a), Q(a), a=b => P(b) & Q(b)
    e = infer(R.AndL2(F("P(b) & Q(b)")), axiom(F("Q(b)")))
    d = infer(R.Cut(F("P(b) & Q(b)")), d, e)
    return d, "LK=", "a cut on a conjunction after a non-atomic equality inference"


BUILDERS = [
    intro_eq1_from_elim, intro_eq2_from_elim, intro_elim_from_eq1, intro_elim_from_eq2,
    intro_eq2l_from_elim, intro_eq1l_from_elim, intro_elim_from_eq2l, intro_elim_from_eq1l,
    ce_acbc_eq2, ce_acbc_eq1l, ce_cbca_eq1, ce_cbca_eq2l, fafb_eq1, fafb_eq2,
    leftsym_eq12, leftsym_eq1, leftsym_eq2, cut_example,
]


def main() -> int:
    OUT.mkdir(exist_ok=True)
    for build in BUILDERS:
        d, system, note = build()
        hyps = []
        from eqcut.derivation import nodes
        for _, x in nodes(d):
            if isinstance(x.rule, R.Hypothesis) and x.rule.sequent not in hyps:
                hyps.append(x.rule.sequent)
        spec = get_system(system).with_hypotheses(*hyps) if hyps else get_system(system)
        rep = check(d, spec)
        if not rep.ok:
            print(build.__name__, rep.lines(), file=sys.stderr)
            return 1
        text = print_document(d, spec, comment=note)
        doc = parse_document(text)
        assert check(doc.derivation, doc.system).ok
        (OUT / f"{build.__name__}.drv").write_text(text, encoding="utf-8")
        print(f"{build.__name__}.drv\t{system}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
