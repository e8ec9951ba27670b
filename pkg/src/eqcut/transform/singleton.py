"""Singleton equality inferences, transposition into EQ1/EQ2, left symmetry."""
from __future__ import annotations

from .. import rules as R
from ..deep import deep
from ..derivation import Derivation, PreconditionViolation, infer, nodes, refl, restructure
from ..syntax import Abstraction, Sequent, Var, eq, free_vars, fresh_var, replace_at
from . import trace

_SINGLETON = (R.Eq1, R.Eq1L)  # Eq2 and Eq2L are subclasses


def _split(ab: Abstraction, r, s) -> list[Abstraction]:
    """The k singleton abstractions rewriting one hole position at a time."""
    paths = ab.paths()
    out = []
    for j in range(len(paths)):
        sk = ab.skeleton
        for i, p in enumerate(paths):
            if i < j:
                sk = replace_at(sk, p, s)
            elif i > j:
                sk = replace_at(sk, p, r)
        out.append(Abstraction(sk, ab.hole))
    return out


def singleton_replacement(node: Derivation, premiss: Derivation) -> Derivation:
    """Replace one k-hole equality inference by k singleton ones and k-1 contractions."""
    rule = node.rule
    k = rule.ab.count
    d = premiss
    for sab in _split(rule.ab, rule.r, rule.s):
        d = infer(_with_ab(rule, sab), d)
    n = len(d.conclusion.ant)
    for _ in range(k - 1):
        d = infer(R.ContrL(n - 2), d)
        n -= 1
    assert d.conclusion == node.conclusion
    return d


def _with_ab(rule, ab):
    from dataclasses import replace
    return replace(rule, ab=ab)


@deep
def singletonize(d: Derivation) -> Derivation:
    """Every oriented equality inference with k > 1 holes becomes k singleton ones."""
    prems = tuple(singletonize(p) for p in d.premisses)
    rule = d.rule
    if isinstance(rule, _SINGLETON) and rule.ab.count > 1:
        return singleton_replacement(d, prems[0])
    if prems == d.premisses:
        return d
    return Derivation(d.conclusion, rule, prems)


@deep
def transpose_eq(d: Derivation, target: str = "EQ1") -> Derivation:
    """Cut-free EQ derivation into a cut-free EQ1 (or EQ2) derivation of the same endsequent."""
    from .eqn import eliminate_cuts_eq
    from .semishort import admit_oriented
    target = target.replace("_", "").replace("cf.", "")
    if target not in ("EQ1", "EQ2"):
        raise ValueError(f"target must be EQ1 or EQ2, not {target!r}")
    if any(isinstance(x.rule, (R.Cut, R.Eq1L, R.Eq2L)) for _, x in nodes(d)):
        d = eliminate_cuts_eq(d)
    x = singletonize(d)
    out = _transpose(x, target, admit_oriented)
    assert out.conclusion == d.conclusion
    return out


def _transpose(d, target, admit):
    prems = [_transpose(p, target, admit) for p in d.premisses]
    rule = d.rule
    keep = R.Eq2 if target == "EQ2" else R.Eq1
    if isinstance(rule, R.Eq1) and (isinstance(rule, R.Eq2) != (keep is R.Eq2)):
        (p,) = prems
        direction = 2 if isinstance(rule, R.Eq2) else 1
        if rule.ab.trivial:
            return restructure(infer(R.WeakL(rule.op), p), d.conclusion)
        out = admit(p, direction, rule.ab, rule.r, rule.s, target)
        return restructure(out, d.conclusion)
    if tuple(prems) == d.premisses:
        return d
    return Derivation(d.conclusion, rule, tuple(prems))


@deep
def left_symmetry(d: Derivation, system: str = "cf.EQ", position: int | None = None) -> Derivation:
    """From ``Gamma, r=s => Delta`` derive ``Gamma, s=r => Delta`` in ``system``.

    ``position`` is the antecedent index of ``r=s`` (default: the last one).
    """
    name = system.replace("cf.", "").replace("_", "")
    c = d.conclusion
    k = len(c.ant) - 1 if position is None else position
    f = c.ant[k]
    if not (hasattr(f, "pred") and f.pred == "="):
        raise PreconditionViolation(f"antecedent formula {k} is not an equality")
    r, s = f.args
    rest = c.ant[:k] + c.ant[k + 1:]
    target = Sequent(rest + (eq(s, r),), c.suc)
    if r == s:
        return restructure(d, target)
    d = restructure(d, Sequent(rest + (f,), c.suc))
    w = fresh_var(free_vars((r, s)), prefix="w")
    if name == "EQ12":
        x = infer(R.Eq1L(Abstraction(eq(r, Var(w)), w), s, r, len(rest)), d)
        x = infer(R.Eq2L(Abstraction(eq(Var(w), r), w), r, s, len(rest)), x)
        x = infer(R.ContrL(len(rest)), x)
        x = infer(R.ContrL(len(rest)), x)
        return restructure(x, target)
    if name not in ("EQ", "EQ1", "EQ2"):
        raise ValueError(f"left symmetry is not provided for {system!r}")
    from .eqn import eliminate_cuts_eq
    # s=r => r=s, then a cut on r=s
    flip = infer(R.Eq1(Abstraction(eq(Var(w), s), w), s, r), refl(s))
    x = restructure(infer(R.Cut(f), flip, d), target)
    x = eliminate_cuts_eq(x)
    if name in ("EQ1", "EQ2"):
        x = transpose_eq(x, name)
    return x
