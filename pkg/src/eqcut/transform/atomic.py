"""Atomic equality inferences and the reduction of cuts to atomic cuts."""
from __future__ import annotations

from .. import rules as R
from ..deep import deep
from ..derivation import (
    Derivation, JoinSpec, PreconditionViolation, axiom, drop_positions, freshen, infer,
    premiss_extras, reapply, restructure, subst_derivation,
)
from ..syntax import (
    And, Abstraction, Exists, Forall, Imp, Not, Or, Sequent, Var, degree, eq, free_vars,
    fresh_var, instantiate, is_atomic, subst,
)
from . import trace

STRUCTURAL = R.STRUCTURAL
RIGHT_PRINCIPAL = (R.AndR, R.OrR1, R.ImpR, R.NotR, R.ForallR, R.ExistsR)
LEFT_PRINCIPAL = (R.AndL1, R.OrL, R.ImpL, R.NotL, R.ForallL, R.ExistsL)


def op_equality(r, s, variant: str):
    return eq(r, s) if variant == "a" else eq(s, r)


# -------------------------------------------------------------- basic


@deep
def basic_atomic(f, v: str, r, s, variant: str = "a") -> Derivation:
    """Cut-free derivation of ``F{v/r}, op => F{v/s}`` with atomic equality inferences.

    ``op`` is ``r=s`` for variant ``a`` and ``s=r`` for variant ``b``.
    """
    if v in free_vars((r, s)):
        raise PreconditionViolation(f"hole {v} occurs in {r} or {s}")
    return _basic(f, v, r, s, variant)


def _basic(f, v, r, s, variant):
    op = op_equality(r, s, variant)
    fr, fs = subst(f, v, r), subst(f, v, s)
    target = Sequent((fr, op), (fs,))
    if is_atomic(f):
        rule = (R.Eq1 if variant == "a" else R.Eq2)(Abstraction(f, v), r, s)
        return infer(rule, axiom(fr))
    flip = "b" if variant == "a" else "a"

    def sub(g, rr, ss, var):
        trace.step("basic_atomic", degree(f), degree(g))
        return _basic(g, v, rr, ss, var)

    if isinstance(f, Not):
        g = f.body
        d = infer(R.NotL(), sub(g, s, r, flip))
        d = restructure(d, Sequent((fr, op, subst(g, v, s)), ()))
        d = infer(R.NotR(), d)
    elif isinstance(f, And):
        parts = []
        for g, L in ((f.left, R.AndL1), (f.right, R.AndL2)):
            d = sub(g, r, s, variant)
            d = restructure(d, Sequent((op, subst(g, v, r)), d.conclusion.suc))
            parts.append(infer(L(fr), d))
        d = infer(R.AndR(), *parts)
    elif isinstance(f, Or):
        parts = []
        for g, Rr in ((f.left, R.OrR1), (f.right, R.OrR2)):
            d = infer(Rr(fs), sub(g, r, s, variant))
            parts.append(restructure(d, Sequent((op, subst(g, v, r)), (fs,))))
        d = infer(R.OrL(), *parts)
    elif isinstance(f, Imp):
        g, h = f.left, f.right
        d1 = sub(g, s, r, flip)
        d2 = sub(h, r, s, variant)
        d2 = restructure(d2, Sequent((op, subst(h, v, r)), d2.conclusion.suc))
        d = infer(R.ImpL(), d1, d2)
        d = restructure(d, Sequent((fr, op, subst(g, v, s)), (subst(h, v, s),)))
        d = infer(R.ImpR(), d)
    else:
        u = fresh_var(free_vars((f, r, s)) | {v})
        g = instantiate(f, Var(u))
        d = sub(g, r, s, variant)
        if isinstance(f, Forall):
            d = restructure(d, Sequent((op, subst(g, v, r)), d.conclusion.suc))
            d = infer(R.ForallL(Var(u), fr), d)
            d = infer(R.ForallR(u, fs), d)
        else:
            d = infer(R.ExistsR(Var(u), fs), d)
            d = restructure(d, Sequent((op, subst(g, v, r)), (fs,)))
            d = infer(R.ExistsL(u, fr), d)
    return restructure(d, target)


# ------------------------------------------------------------ atomize


def _eq_as_cut(d: Derivation, prem: Derivation) -> Derivation:
    """Replace a non-atomic equality inference by a cut against a basic derivation."""
    rule = d.rule
    ab = rule.ab
    f, v = ab.skeleton, ab.hole
    if isinstance(rule, R.Eq1):
        b = basic_atomic(f, v, rule.r, rule.s, "b" if isinstance(rule, R.Eq2) else "a")
        b = restructure(b, Sequent((rule.op, rule.before), (rule.after,)))
        out = infer(R.Cut(rule.before), prem, b)
    else:
        # left rules: F{s}, op => F{r} cut against the premiss
        b = basic_atomic(f, v, rule.s, rule.r, "a" if isinstance(rule, R.Eq2L) else "b")
        c = prem.conclusion
        p = restructure(prem, Sequent(_drop_index(c.ant, rule.target) + (rule.before,), c.suc))
        out = infer(R.Cut(rule.before), b, p)
    return restructure(out, d.conclusion)


def _drop_index(side, k):
    return side[:k] + side[k + 1:]


@deep
def atomize_equalities(d: Derivation) -> Derivation:
    """Every non-atomic ``=1``/``=2`` (and left variant) inference becomes a cut."""
    prems = tuple(atomize_equalities(p) for p in d.premisses)
    rule = d.rule
    if isinstance(rule, R.ORIENTED) and not is_atomic(rule.ab.skeleton):
        return _eq_as_cut(d, prems[0])
    if prems == d.premisses:
        return d
    return Derivation(d.conclusion, rule, prems)


# --------------------------------------------------------------- join


def _xrank(d: Derivation, xs, side: str) -> int:
    if not xs:
        return 0
    pe = premiss_extras(d, **({"suc_x": xs} if side == "suc" else {"ant_x": xs}))
    k = 0 if side == "ant" else 1
    return 1 + max((_xrank(p, px[k], side) for p, px in zip(d.premisses, pe)), default=0)


def _measure(d, e, f, xd, xe):
    if not trace.active():
        return None
    return (degree(f), _xrank(d, xd, "suc") + _xrank(e, xe, "ant"))


def _step(before, d, e, f, xd, xe):
    if before is not None:
        trace.step("join_with_atomic_cut", before, _measure(d, e, f, xd, xe))


def _only_atomic(d: Derivation) -> bool:
    from ..derivation import nodes
    for _, x in nodes(d):
        if isinstance(x.rule, R.EQUALITY) and not is_atomic(x.rule.ab.skeleton):
            return False
        if isinstance(x.rule, R.Cut) and not is_atomic(x.rule.formula):
            return False
    return True


@deep
def join_with_atomic_cut(d: Derivation, e: Derivation, f, spec: JoinSpec | None = None) -> Derivation:
    """Derive ``Gamma, Lambda => Delta, Theta`` from ``Gamma => Delta#F`` and ``Lambda#F => Theta``.

    ``spec`` gives the positions of the extra ``F`` occurrences in the
    succedent of ``d`` and the antecedent of ``e`` (default: all of them).
    Both inputs must contain only atomic equality and cut inferences.
    """
    xd, xe = (spec.left, spec.right) if spec else (None, None)
    if xd is None:
        xd = frozenset(k for k, g in enumerate(d.conclusion.suc) if g == f)
    if xe is None:
        xe = frozenset(k for k, g in enumerate(e.conclusion.ant) if g == f)
    for k in xd:
        if d.conclusion.suc[k] != f:
            raise PreconditionViolation(f"succedent position {k} does not hold {f}")
    for k in xe:
        if e.conclusion.ant[k] != f:
            raise PreconditionViolation(f"antecedent position {k} does not hold {f}")
    if not (_only_atomic(d) and _only_atomic(e)):
        raise PreconditionViolation("inputs must have atomic equality and cut inferences only")
    return _join(d, e, f, frozenset(xd), frozenset(xe))


def _join(d, e, f, xd, xe):
    gam, lam = d.conclusion.ant, drop_positions(e.conclusion.ant, xe)
    delta, theta = drop_positions(d.conclusion.suc, xd), e.conclusion.suc
    target = Sequent(gam + lam, delta + theta)
    if not xd:
        return restructure(d, target)
    if not xe:
        return restructure(e, target)
    if is_atomic(f):
        d1 = restructure(d, Sequent(gam, delta + (f,)))
        e1 = restructure(e, Sequent(lam + (f,), theta))
        return restructure(infer(R.Cut(f), d1, e1), target)
    if isinstance(d.rule, R.LogicalAxiom):
        return restructure(e, target)
    if isinstance(e.rule, R.LogicalAxiom):
        return restructure(d, target)
    before = _measure(d, e, f, xd, xe)
    pd = premiss_extras(d, suc_x=xd)
    if any(sx for _, sx in pd):
        return _reduce_left(d, e, f, xd, xe, target, before)
    pe = premiss_extras(e, ant_x=xe)
    if any(ax for ax, _ in pe):
        return _reduce_right(d, e, f, xd, xe, target, before)
    if isinstance(d.rule, R.WeakR):
        return restructure(d.premisses[0], target)
    if isinstance(e.rule, R.WeakL):
        return restructure(e.premisses[0], target)
    return _logical(d, e, f, target, before)


def _reduce_left(d, e, f, xd, xe, target, before):
    d = freshen(d, free_vars(e.conclusion))
    pd = premiss_extras(d, suc_x=xd)
    new = []
    for p, (_, sx) in zip(d.premisses, pd):
        if sx:
            _step(before, p, e, f, sx, xe)
            new.append(_join(p, e, f, sx, xe))
        else:
            new.append(p)
    if isinstance(d.rule, STRUCTURAL):
        return restructure(new[0], target)
    n = reapply(d, new)
    last = len(d.conclusion.suc) - 1
    if isinstance(d.rule, RIGHT_PRINCIPAL) and last in xd:
        nx = frozenset({len(n.conclusion.suc) - 1})
        _step(before, n, e, f, nx, xe)
        n = _join(n, e, f, nx, xe)
    return restructure(n, target)


def _reduce_right(d, e, f, xd, xe, target, before):
    e = freshen(e, free_vars(d.conclusion))
    pe = premiss_extras(e, ant_x=xe)
    new = []
    for p, (ax, _) in zip(e.premisses, pe):
        if ax:
            _step(before, d, p, f, xd, ax)
            new.append(_join(d, p, f, xd, ax))
        else:
            new.append(p)
    if isinstance(e.rule, STRUCTURAL):
        return restructure(new[0], target)
    n = reapply(e, new)
    last = len(e.conclusion.ant) - 1
    if isinstance(e.rule, LEFT_PRINCIPAL) and last in xe:
        nx = frozenset({len(n.conclusion.ant) - 1})
        _step(before, d, n, f, xd, nx)
        n = _join(d, n, f, xd, nx)
    return restructure(n, target)


def _last(side):
    return frozenset({len(side) - 1})


def _sub_join(before, d, e, g, xd, xe):
    _step(before, d, e, g, xd, xe)
    return _join(d, e, g, xd, xe)


def _logical(d, e, f, target, before):
    """Both cut formulas are principal: cut on the immediate subformulas."""
    dr, er = d.rule, e.rule
    if isinstance(f, And):
        (e1,) = e.premisses
        d1 = d.premisses[1 if isinstance(er, R.AndL2) else 0]
        out = _sub_join(before, d1, e1, e1.conclusion.ant[-1], _last(d1.conclusion.suc), _last(e1.conclusion.ant))
    elif isinstance(f, Or):
        (d1,) = d.premisses
        e1 = e.premisses[1 if isinstance(dr, R.OrR2) else 0]
        out = _sub_join(before, d1, e1, d1.conclusion.suc[-1], _last(d1.conclusion.suc), _last(e1.conclusion.ant))
    elif isinstance(f, Not):
        (d1,), (e1,) = d.premisses, e.premisses
        out = _sub_join(before, e1, d1, f.body, _last(e1.conclusion.suc), _last(d1.conclusion.ant))
    elif isinstance(f, Imp):
        (d1,) = d.premisses
        e1, e2 = e.premisses
        c = _sub_join(before, e1, d1, f.left, _last(e1.conclusion.suc), _last(d1.conclusion.ant))
        out = _sub_join(before, c, e2, f.right, _last(c.conclusion.suc), _last(e2.conclusion.ant))
    elif isinstance(f, Forall):
        (d1,), (e1,) = d.premisses, e.premisses
        d1 = subst_derivation(d1, dr.eigen, er.term)
        g = instantiate(f, er.term)
        out = _sub_join(before, d1, e1, g, _last(d1.conclusion.suc), _last(e1.conclusion.ant))
    elif isinstance(f, Exists):
        (d1,), (e1,) = d.premisses, e.premisses
        e1 = subst_derivation(e1, er.eigen, dr.term)
        g = instantiate(f, dr.term)
        out = _sub_join(before, d1, e1, g, _last(d1.conclusion.suc), _last(e1.conclusion.ant))
    else:
        raise PreconditionViolation(f"no reduction for {f} between {dr.name} and {er.name}")
    return restructure(out, target)


@deep
def to_atomic(d: Derivation) -> Derivation:
    """Same endsequent; all equality and cut inferences atomic."""
    return _discharge(atomize_equalities(d))


def _discharge(d: Derivation) -> Derivation:
    prems = tuple(_discharge(p) for p in d.premisses)
    if isinstance(d.rule, R.Cut) and not is_atomic(d.rule.formula):
        d1, e1 = prems
        out = _join(d1, e1, d.rule.formula, _last(d1.conclusion.suc), _last(e1.conclusion.ant))
        return restructure(out, d.conclusion)
    if prems == d.premisses:
        return d
    return Derivation(d.conclusion, d.rule, prems)
