"""Express every equality inference by the elimination rule and reflexivity."""
from __future__ import annotations

from .. import rules as R
from ..deep import deep
from ..derivation import Derivation, PreconditionViolation, axiom, infer, nodes, refl, restructure
from ..syntax import Abstraction, Sequent, Var, eq, free_vars, fresh_var


def _reorient(right: Derivation, r, s, hole_avoid) -> Derivation:
    """From ``Gamma, r=s => Delta`` (``r=s`` last) derive ``Gamma, s=r => Delta``."""
    u = fresh_var(free_vars((r, s)) | set(hole_avoid), prefix="u")
    ab = Abstraction(eq(Var(u), s), u)
    # refl s=s is ab{u/s}; the right premiss carries ab{u/r} = r=s
    return infer(R.EqElim(ab, s, r), refl(s), right)


def _embed_node(d: Derivation, p: Derivation) -> Derivation:
    rule = d.rule
    ab, r, s = rule.ab, rule.r, rule.s
    if isinstance(rule, R.Eq1):
        out = infer(R.EqElim(ab, r, s), p, axiom(ab.fill(s)))
        if isinstance(rule, R.Eq2):
            out = _reorient(out, r, s, {ab.hole})
        return restructure(out, d.conclusion)
    # left rules: premiss with the changed formula moved last
    c = p.conclusion
    ant = c.ant[: rule.target] + c.ant[rule.target + 1:] + (rule.before,)
    p = restructure(p, Sequent(ant, c.suc))
    # F{v/s}, Gamma, s=r => Delta
    out = infer(R.EqElim(ab, s, r), axiom(ab.fill(s)), p)
    if not isinstance(rule, R.Eq2L):
        out = _reorient(out, s, r, {ab.hole})
    return restructure(out, d.conclusion)


@deep
def embed_pure(d: Derivation) -> Derivation:
    """Cut-free derivation using only the elimination rule and reflexivity for equality."""
    if any(isinstance(x.rule, R.Cut) for _, x in nodes(d)):
        raise PreconditionViolation("embed_pure needs a cut-free derivation")
    return _embed(d)


def _embed(d: Derivation) -> Derivation:
    prems = tuple(_embed(p) for p in d.premisses)
    if isinstance(d.rule, R.ORIENTED):
        return _embed_node(d, prems[0])
    if prems == d.premisses:
        return d
    return Derivation(d.conclusion, d.rule, prems)
