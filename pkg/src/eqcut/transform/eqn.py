"""Cut elimination for the pure equality calculi and for LJ=/LK=."""
from __future__ import annotations

from .. import rules as R
from ..deep import deep
from ..derivation import (
    Derivation, JoinSpec, PreconditionViolation, all_vars, axiom, drop_positions, infer, nodes,
    premiss_extras, reapply, refl, restructure, weak_left,
)
from ..syntax import Abstraction, Sequent, Var, eq, free_vars, fresh_var, subst
from ..systems import SystemSpec, get_system
from . import trace


def _rebuild(d: Derivation, prems) -> Derivation:
    prems = tuple(prems)
    if prems == d.premisses:
        return d
    return Derivation(d.conclusion, d.rule, prems)


def _hole(avoid) -> str:
    return fresh_var(free_vars(tuple(avoid)), prefix="u")


# ------------------------------------------------------------- EQ <-> EQN


def _flip_derivation(r, s) -> Derivation:
    """``s=r => r=s`` from reflexivity and one congruence step."""
    u = _hole((r, s))
    ab = Abstraction(eq(Var(u), s), u)
    return infer(R.Cng(ab, s, r), refl(s), axiom(eq(s, r)))


def eq_to_cng(d: Derivation) -> Derivation:
    rule = d.rule
    (p,) = d.premisses
    if isinstance(rule, R.Eq2):
        right = _flip_derivation(rule.r, rule.s)
    else:
        right = axiom(rule.op)
    return infer(R.Cng(rule.ab, rule.r, rule.s), p, right)


def cng_to_eq(d: Derivation) -> Derivation:
    rule = d.rule
    p, q = d.premisses
    e = infer(R.Eq1(rule.ab, rule.r, rule.s), p)
    out = infer(R.Cut(rule.op), q, e)
    return restructure(out, d.conclusion)


@deep
def eq_cng_interderive(d: Derivation, direction: str = "toEQN") -> Derivation:
    """Translate between EQ and EQN; the endsequent is unchanged."""
    if direction not in ("toEQN", "toEQ"):
        raise ValueError(f"unknown direction {direction!r}")
    prems = [eq_cng_interderive(p, direction) for p in d.premisses]
    x = _rebuild(d, prems)
    if direction == "toEQN" and isinstance(x.rule, R.Eq1):
        return eq_to_cng(x)
    if direction == "toEQ" and isinstance(x.rule, R.Cng):
        return cng_to_eq(x)
    return x


# ------------------------------------------------------------- cut in EQN


@deep
def cng_cut_join(d: Derivation, e: Derivation, f, spec: JoinSpec | None = None) -> Derivation:
    """From cut-free ``Gamma => F`` and ``Lambda#F => G`` derive ``Gamma, Lambda => G``."""
    for x in (d, e):
        if any(isinstance(n.rule, R.Cut) for _, n in nodes(x)):
            raise PreconditionViolation("cng_cut_join needs cut-free inputs")
    xe = spec.right if spec else frozenset(k for k, g in enumerate(e.conclusion.ant) if g == f)
    return _cng_join(d, e, f, frozenset(xe))


def _cng_join(d, e, f, xe):
    target = Sequent(d.conclusion.ant + drop_positions(e.conclusion.ant, xe), e.conclusion.suc)
    if not xe:
        return restructure(e, target)
    if isinstance(e.rule, R.LogicalAxiom):
        return restructure(d, target)
    if not e.premisses:
        raise PreconditionViolation(f"cannot join into leaf {e.rule.name}")
    pe = premiss_extras(e, ant_x=xe)
    new = []
    for p, (ax, _) in zip(e.premisses, pe):
        if ax:
            trace.step("cng_cut_join", e.height, p.height)
            new.append(_cng_join(d, p, f, ax))
        else:
            new.append(p)
    if isinstance(e.rule, R.STRUCTURAL):
        return restructure(new[0], target)
    return restructure(reapply(e, new), target)


@deep
def eliminate_cuts_eqn(d: Derivation) -> Derivation:
    """Cut-free EQN derivation of the same endsequent; topmost cuts first."""
    prems = [eliminate_cuts_eqn(p) for p in d.premisses]
    if isinstance(d.rule, R.Cut):
        p, q = prems
        out = _cng_join(p, q, d.rule.formula, frozenset({len(q.conclusion.ant) - 1}))
        return restructure(out, d.conclusion)
    return _rebuild(d, prems)


# ------------------------------------------------------ CNG admissibility


@deep
def admit_cng(d: Derivation, e: Derivation, ab: Abstraction, r, s) -> Derivation:
    """From cut-free EQ derivations of ``Gamma => F{v/r}`` and ``Lambda => r=s`` derive ``Gamma, Lambda => F{v/s}``."""
    c = Sequent(d.conclusion.ant + e.conclusion.ant, (ab.fill(s),))
    if d.conclusion.suc != (ab.fill(r),) or e.conclusion.suc != (eq(r, s),):
        raise PreconditionViolation("admit_cng: endsequents do not match the abstraction")
    return restructure(_admit(d, e, ab, r, s), c)


def _admit(d, e, ab, r, s):
    gam, lam = d.conclusion.ant, e.conclusion.ant
    target = Sequent(gam + lam, (ab.fill(s),))
    if r == s or ab.fill(r) == ab.fill(s):
        return restructure(d, target)
    rule = e.rule
    if isinstance(rule, R.LogicalAxiom):
        return infer(R.Eq1(ab, r, s), d)
    if isinstance(rule, R.STRUCTURAL):
        (p,) = e.premisses
        trace.step("admit_cng", e.height, p.height)
        return restructure(_admit(d, p, ab, r, s), target)
    if isinstance(rule, R.Eq1) and not isinstance(rule, (R.Cng,)):
        (e1,) = e.premisses
        f, v = ab.skeleton, ab.hole
        avoid = {v} | all_vars(e) | free_vars((f, r, s))
        u = fresh_var(avoid, prefix="u")
        eab = Abstraction(subst(rule.ab.skeleton, rule.ab.hole, Var(u)), u)
        t1, t2 = eab.skeleton.args
        p, q = rule.r, rule.s
        inner, outer = (R.Eq2, R.Eq1) if not isinstance(rule, R.Eq2) else (R.Eq1, R.Eq2)
        d1 = infer(inner(Abstraction(subst(f, v, t1), u), q, p), d)
        r1, s1 = subst(t1, u, p), subst(t2, u, p)
        trace.step("admit_cng", e.height, e1.height)
        mid = _admit(d1, e1, ab, r1, s1)
        out = infer(outer(Abstraction(subst(f, v, t2), u), p, q), mid)
        return restructure(out, target)
    raise PreconditionViolation(f"admit_cng cannot handle {rule.name}")


@deep
def eliminate_cuts_eq(d: Derivation) -> Derivation:
    """Cut-free EQ derivation of the same endsequent."""
    if any(isinstance(x.rule, (R.Eq1L, R.Eq2L)) for _, x in nodes(d)):
        d = l_rules_to_eq(d)
    n = eliminate_cuts_eqn(eq_cng_interderive(d, "toEQN"))
    out = _replay_cng(n)
    assert out.conclusion == d.conclusion
    return out


def _replay_cng(d):
    prems = [_replay_cng(p) for p in d.premisses]
    if isinstance(d.rule, R.Cng):
        p, q = prems
        out = admit_cng(p, q, d.rule.ab, d.rule.r, d.rule.s)
        return restructure(out, d.conclusion)
    return _rebuild(d, prems)


# ------------------------------------------------------------- left rules


@deep
def l_rules_to_eq(d: Derivation) -> Derivation:
    """Replace each left equality inference by a cut against a right one."""
    prems = [l_rules_to_eq(p) for p in d.premisses]
    rule = d.rule
    if isinstance(rule, (R.Eq1L, R.Eq2L)):
        (p,) = prems
        side = R.Eq1 if isinstance(rule, R.Eq2L) else R.Eq2
        # F{s}, op => F{r}
        left = infer(side(rule.ab, rule.s, rule.r), axiom(rule.after))
        c = p.conclusion
        ant = c.ant[: rule.target] + c.ant[rule.target + 1:] + (rule.before,)
        p = restructure(p, Sequent(ant, c.suc))
        return restructure(infer(R.Cut(rule.before), left, p), d.conclusion)
    return _rebuild(d, prems)


# --------------------------------------------------------------- full


def _maximal_eq(d: Derivation, fn) -> Derivation:
    from .separate import is_eq_derivation
    if is_eq_derivation(d):
        return fn(d)
    return _rebuild(d, [_maximal_eq(p, fn) for p in d.premisses])


def _n_to_eq(d: Derivation) -> Derivation:
    return eq_cng_interderive(d, "toEQ")


def _eq_to_n(d: Derivation) -> Derivation:
    prems = [_eq_to_n(p) for p in d.premisses]
    x = _rebuild(d, prems)
    if isinstance(x.rule, R.Eq1):
        return eq_to_cng(x)
    return x


@deep
def eliminate_cuts_full(d: Derivation, sys: SystemSpec | str | None = None) -> Derivation:
    """Cut-free derivation of the same endsequent in the same system."""
    from .separate import separate
    spec = get_system(sys) if isinstance(sys, str) else sys
    n_system = (spec is not None and "cng" in spec.rules) or any(
        isinstance(x.rule, R.Cng) for _, x in nodes(d))
    x = _n_to_eq(d) if n_system else d
    x = separate(x)
    x = _maximal_eq(x, eliminate_cuts_eq)
    if n_system:
        x = _eq_to_n(x)
    assert x.conclusion == d.conclusion
    return x
