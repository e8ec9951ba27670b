"""Separated derivations: equational parts on top, logic below."""
from __future__ import annotations

from dataclasses import replace

from .. import rules as R
from ..deep import deep
from ..derivation import (
    Derivation, JoinSpec, PreconditionViolation, drop_positions, freshen, infer, nodes,
    premiss_extras, reapply, restructure, weak_left,
)
from ..syntax import Abstraction, Sequent, free_vars, is_atomic
from . import trace
from .atomic import to_atomic

#: rules allowed inside the equational layer
EQ_LAYER = (R.LogicalAxiom, R.ReflAxiom, R.Hypothesis, R.WeakL, R.ExchL, R.ContrL, R.Cut) + R.EQUALITY
LOGIC_FREE = EQ_LAYER + R.STRUCTURAL


def is_logic_free(d: Derivation) -> bool:
    return all(isinstance(x.rule, LOGIC_FREE) for _, x in nodes(d))


def is_eq_derivation(d: Derivation) -> bool:
    """Only equational-layer rules, one succedent formula everywhere."""
    return all(isinstance(x.rule, EQ_LAYER) and len(x.conclusion.suc) == 1 for _, x in nodes(d))


def is_separated(d: Derivation) -> bool:
    if is_eq_derivation(d):
        return True
    if isinstance(d.rule, R.LOGICAL + R.STRUCTURAL):
        return all(is_separated(p) for p in d.premisses)
    return False


# ------------------------------------------------------------ projection


@deep
def project_intuitionistic(d: Derivation) -> tuple[Derivation, int]:
    """Derivation of ``Gamma => F`` for some ``F`` in the succedent of ``d``.

    Returns the new derivation and the succedent position of ``F``.  Every
    sequent of the result has exactly one succedent formula.
    """
    if not is_logic_free(d):
        raise PreconditionViolation("projection needs a derivation without logical rules")
    return _project(d)


def _project(d):
    rule, c = d.rule, d.conclusion
    assert c.suc, f"empty succedent {c} in a logic-free derivation"
    if not d.premisses:
        if len(c.suc) != 1:
            raise PreconditionViolation(f"leaf {c} has several succedent formulas")
        return d, 0
    ps = [p.conclusion for p in d.premisses]
    if isinstance(rule, R.Cut):
        d1, k1 = _project(d.premisses[0])
        if k1 == len(ps[0].suc) - 1:
            e1, k2 = _project(d.premisses[1])
            out = infer(R.Cut(rule.formula), d1, e1)
            return out, len(ps[0].suc) - 1 + k2
        return weak_left(d1, *c.ant[len(ps[0].ant):]), k1
    if isinstance(rule, (R.EqElim, R.Cng)):
        raise PreconditionViolation(f"projection does not handle {rule.name}")
    p, k = _project(d.premisses[0])
    n = len(ps[0].suc)
    if isinstance(rule, R.WeakR):
        return p, k
    if isinstance(rule, R.ExchR):
        i = rule.index
        return p, {i: i + 1, i + 1: i}.get(k, k)
    if isinstance(rule, R.ContrR):
        i = rule.index
        return p, k if k <= i else k - 1
    if isinstance(rule, R.Eq1):
        if k == n - 1:
            return infer(rule, p), k
        return infer(R.WeakL(rule.op), p), k
    # left rules leave the succedent alone
    return infer(rule, p), k


# ------------------------------------------------------------ equalities


def _op(r, s, variant):
    from ..syntax import eq
    return eq(r, s) if variant in (1, "1", "a") else eq(s, r)


@deep
def sep_eq_step(d: Derivation, ab: Abstraction, r, s, variant=1, spec: JoinSpec | None = None) -> Derivation:
    """From separated ``Gamma => Delta#A{v/r}`` derive ``Gamma, op => Delta, A{v/s}``.

    ``op`` is ``r=s`` for variant 1 and ``s=r`` for variant 2; the result is
    separated.
    """
    if not is_atomic(ab.skeleton):
        raise PreconditionViolation("sep_eq_step needs an atomic formula")
    if not is_separated(d):
        raise PreconditionViolation("input is not separated")
    a = ab.fill(r)
    xd = spec.left if spec else frozenset(k for k, g in enumerate(d.conclusion.suc) if g == a)
    return _sep_eq(d, ab, r, s, variant, frozenset(xd))


def _sep_eq(d, ab, r, s, variant, xd):
    op = _op(r, s, variant)
    c = d.conclusion
    target = Sequent(c.ant + (op,), drop_positions(c.suc, xd) + (ab.fill(s),))
    if not xd:
        return restructure(d, target)
    if is_logic_free(d):
        p, k = _project(d)
        if k in xd:
            cls = R.Eq1 if variant in (1, "1", "a") else R.Eq2
            p = infer(cls(ab, r, s), p)
        else:
            p = infer(R.WeakL(op), p)
        return restructure(p, target)
    d = freshen(d, free_vars((op, ab.fill(s))))
    pe = premiss_extras(d, suc_x=xd)
    new = []
    for p, (_, sx) in zip(d.premisses, pe):
        if sx:
            trace.step("sep_eq_step", d.height, p.height)
            new.append(_sep_eq(p, ab, r, s, variant, sx))
        else:
            new.append(p)
    if isinstance(d.rule, R.STRUCTURAL):
        return restructure(new[0], target)
    return restructure(reapply(d, new), target)


@deep
def sep_cut_step(d: Derivation, e: Derivation, a, spec: JoinSpec | None = None) -> Derivation:
    """Join separated ``Gamma => Delta#A`` and ``Lambda#A => Theta`` on the atomic ``A``."""
    if not is_atomic(a):
        raise PreconditionViolation("sep_cut_step needs an atomic cut formula")
    if not (is_separated(d) and is_separated(e)):
        raise PreconditionViolation("inputs are not separated")
    if spec is None:
        spec = JoinSpec(frozenset(k for k, g in enumerate(d.conclusion.suc) if g == a),
                        frozenset(k for k, g in enumerate(e.conclusion.ant) if g == a))
    return _sep_cut(d, e, a, frozenset(spec.left), frozenset(spec.right))


def _sep_cut(d, e, a, xd, xe):
    target = Sequent(d.conclusion.ant + drop_positions(e.conclusion.ant, xe),
                     drop_positions(d.conclusion.suc, xd) + e.conclusion.suc)
    if not xd:
        return restructure(d, target)
    if not xe:
        return restructure(e, target)
    fd, fe = is_logic_free(d), is_logic_free(e)
    if fd and fe:
        p, k = _project(d)
        if k not in xd:
            return restructure(p, target)
        q, _ = _project(e)
        lam = drop_positions(e.conclusion.ant, xe)
        q = restructure(q, Sequent(lam + (a,), q.conclusion.suc))
        return restructure(infer(R.Cut(a), p, q), target)
    before = d.height + e.height
    if not fd:
        d = freshen(d, free_vars(e.conclusion))
        pe = premiss_extras(d, suc_x=xd)
        new = []
        for p, (_, sx) in zip(d.premisses, pe):
            if sx:
                trace.step("sep_cut_step", before, p.height + e.height)
                new.append(_sep_cut(p, e, a, sx, xe))
            else:
                new.append(p)
        base = d
    else:
        e = freshen(e, free_vars(d.conclusion))
        pe = premiss_extras(e, ant_x=xe)
        new = []
        for p, (ax, _) in zip(e.premisses, pe):
            if ax:
                trace.step("sep_cut_step", before, d.height + p.height)
                new.append(_sep_cut(d, p, a, xd, ax))
            else:
                new.append(p)
        base = e
    if isinstance(base.rule, R.STRUCTURAL):
        return restructure(new[0], target)
    return restructure(reapply(base, new), target)


# ------------------------------------------------------------ separation


@deep
def separate(d: Derivation) -> Derivation:
    """Separated derivation of the same endsequent (input in LJ=/LK=)."""
    from .eqn import l_rules_to_eq
    out = _separate(to_atomic(l_rules_to_eq(d)))
    assert out.conclusion == d.conclusion
    return out


def _separate(d):
    if is_eq_derivation(d):
        return d
    prems = [_separate(p) for p in d.premisses]
    rule = d.rule
    if isinstance(rule, R.Eq1):
        p = prems[0]
        xd = frozenset({len(p.conclusion.suc) - 1})
        variant = 2 if isinstance(rule, R.Eq2) else 1
        return restructure(_sep_eq(p, rule.ab, rule.r, rule.s, variant, xd), d.conclusion)
    if isinstance(rule, R.Cut):
        p, q = prems
        xd = frozenset({len(p.conclusion.suc) - 1})
        xe = frozenset({len(q.conclusion.ant) - 1})
        return restructure(_sep_cut(p, q, rule.formula, xd, xe), d.conclusion)
    if isinstance(rule, R.LOGICAL + R.STRUCTURAL) or not prems:
        return Derivation(d.conclusion, rule, tuple(prems))
    raise PreconditionViolation(f"cannot separate across {rule.name}")
