"""The operators G1/G2 and the semishortening transformation.

``_g`` is written once for an arbitrary relation ``less``.  With a real
irreflexive term order it is G1/G2; with the constant relations it
becomes the transposers into the single-orientation calculi (see
``transpose_eq``).
"""
from __future__ import annotations

from dataclasses import replace

from .. import rules as R
from ..deep import deep
from ..derivation import (
    Derivation, PreconditionViolation, all_vars, axiom, infer, nodes, refl, restructure,
)
from ..syntax import (
    Abstraction, Atom, Sequent, TermOrder, Var, at_path, eq, free_vars, fresh_var, replace_at,
    subst,
)
from . import trace


def _op(direction, r, s):
    return eq(r, s) if direction == 1 else eq(s, r)


def _prefix(a: tuple, b: tuple) -> bool:
    return len(a) <= len(b) and b[: len(a)] == a


class _G:
    """One run of the mutual recursion under a fixed relation."""

    def __init__(self, less, step_name: str, check_steps: bool):
        self.less = less
        self.name = step_name
        self.check_steps = check_steps

    def checked(self, d: Derivation) -> Derivation:
        if self.check_steps:
            kind = R.order_predicate(d.rule, self.less)
            if kind == R.LENGTHENING:
                raise AssertionError(f"{d.rule.name} with {d.rule.r} -> {d.rule.s} is lengthening")
            if isinstance(d.rule, (R.Eq1, R.Eq1L)) and not isinstance(d.rule, (R.Eq2, R.Eq2L)) \
                    and kind != R.SHORTENING:
                raise AssertionError(f"{d.rule.name} with {d.rule.r} -> {d.rule.s} is not shortening")
        return d

    def run(self, d: Derivation, direction: int, ab: Abstraction, r, s) -> Derivation:
        """Derivation of ``Gamma, op => F{v/s}`` with ``op`` last in the antecedent."""
        op = _op(direction, r, s)
        gam = d.conclusion.ant
        target = Sequent(gam + (op,), (ab.fill(s),))
        less = self.less
        ck = self.checked
        if direction == 1 and less(r, s):
            return ck(infer(R.Eq1(ab, r, s), d))
        if direction == 2 and not less(s, r):
            return ck(infer(R.Eq2(ab, r, s), d))
        if ab.trivial:
            # F{v/r} and F{v/s} coincide: flip the orientation instead
            cls = R.Eq2 if direction == 1 else R.Eq1
            return ck(infer(cls(ab, s, r), d))
        rule = d.rule
        if isinstance(rule, R.LogicalAxiom):
            cls = R.Eq2L if direction == 1 else R.Eq1L
            return ck(infer(cls(ab, s, r, 0), axiom(ab.fill(s))))
        if isinstance(rule, R.ReflAxiom):
            return self._refl(d, direction, ab, r, s)
        if isinstance(rule, R.STRUCTURAL):
            (p,) = d.premisses
            trace.step(self.name, d.height, p.height)
            return restructure(self.run(p, direction, ab, r, s), target)
        if isinstance(rule, (R.Eq1L, R.Eq2L)):
            (p,) = d.premisses
            trace.step(self.name, d.height, p.height)
            inner = self.run(p, direction, ab, r, s)
            out = ck(infer(rule, inner))
            return restructure(out, target)
        if isinstance(rule, R.Eq1):
            return self._eq_case(d, direction, ab, r, s, target)
        raise PreconditionViolation(f"{self.name}: cannot handle {rule.name}")

    def _refl(self, d, direction, ab, r, s):
        v = ab.hole
        left, right = ab.skeleton.args
        # the new hole goes on the side opposite to the old one
        if v in free_vars(right):
            g = eq(right, subst(right, v, s))
        else:
            g = eq(subst(left, v, s), left)
        gab = Abstraction(g, v)
        cls = R.Eq2 if direction == 1 else R.Eq1
        return self.checked(infer(cls(gab, s, r), refl(gab.fill(s).args[0])))

    def _eq_case(self, d, direction, ab, r, s, target):
        rule = d.rule
        (d0,) = d.premisses
        v = ab.hole
        # cut-free equational derivations keep every variable in the endsequent
        avoid = {v} | free_vars((ab.skeleton, r, s, d.conclusion, rule.r, rule.s))
        u = fresh_var(avoid, prefix="u")
        dab = Abstraction(subst(rule.ab.skeleton, rule.ab.hole, Var(u)), u)
        u, p, q = dab.hole, rule.r, rule.s
        eq_cls = type(rule)
        l_cls = R.Eq2L if isinstance(rule, R.Eq2) else R.Eq1L
        pi = ab.paths()[0]
        sig = dab.paths()[0] if not dab.trivial else None
        ck = self.checked
        trace.step(self.name, d.height, d0.height)
        if sig is None or not (_prefix(sig, pi) or _prefix(pi, sig)):
            # the rewritten occurrence lies outside r
            h = replace_at(dab.skeleton, pi, Var(v)) if sig is not None else ab.skeleton
            inner = self.run(d0, direction, Abstraction(subst(h, u, p), v), r, s)
            out = ck(infer(eq_cls(Abstraction(subst(h, v, s), u), p, q), inner))
            return restructure(out, target)
        if _prefix(sig, pi):
            # v occurs inside q
            q0 = at_path(ab.skeleton, sig)
            qs = subst(q0, v, s)
            other = 2 if isinstance(rule, R.Eq2) else 1
            inner = self.run(d0, other, dab, p, qs)
            side = eq(p, q0) if other == 1 else eq(q0, p)
            lcls = R.Eq2L if direction == 1 else R.Eq1L
            k = len(inner.conclusion.ant) - 1
            out = ck(infer(lcls(Abstraction(side, v), s, r, k), inner))
            return restructure(out, target)
        # q occurs inside r
        rel = sig[len(pi):]
        r0 = replace_at(r, rel, Var(u))
        r1 = subst(r0, u, p)
        inner = self.run(d0, direction, ab, r1, s)
        side = eq(r0, s) if direction == 1 else eq(s, r0)
        k = len(inner.conclusion.ant) - 1
        out = ck(infer(l_cls(Abstraction(side, u), p, q, k), inner))
        return restructure(out, target)


def _singleton_chain(run, d: Derivation, direction: int, ab: Abstraction, r, s) -> Derivation:
    """Admit a possibly multi-hole inference one hole at a time, then contract."""
    paths = ab.paths()
    if len(paths) <= 1:
        return run(d, direction, ab, r, s)
    v = ab.hole
    op = _op(direction, r, s)
    for j, pj in enumerate(paths):
        sk = ab.skeleton
        for i, pi in enumerate(paths):
            if i < j:
                sk = replace_at(sk, pi, s)
            elif i > j:
                sk = replace_at(sk, pi, r)
        d = run(d, direction, Abstraction(sk, v), r, s)
    n = len(d.conclusion.ant)
    for _ in range(len(paths) - 1):
        d = infer(R.ContrL(n - 2), d)
        n -= 1
    return d


def _fresh_hole(ab: Abstraction, d: Derivation, r, s) -> Abstraction:
    avoid = free_vars((d.conclusion, r, s))
    if ab.hole not in avoid:
        return ab
    new = fresh_var(avoid | free_vars(ab.skeleton), prefix="v")
    return Abstraction(subst(ab.skeleton, ab.hole, Var(new)), new)


def _probe_irreflexive(order, *terms):
    for t in terms:
        if order(t, t):
            raise PreconditionViolation(f"order {getattr(order, 'name', order)} is reflexive on {t}")


def is_semishortening(d: Derivation, order) -> bool:
    for _, x in nodes(d):
        kind = R.order_predicate(x.rule, order)
        if kind == R.LENGTHENING:
            return False
        if isinstance(x.rule, (R.Eq1, R.Eq1L)) and not isinstance(x.rule, (R.Eq2, R.Eq2L)) \
                and kind != R.SHORTENING:
            return False
    return True


@deep
def g_transform(d: Derivation, direction: int, ab: Abstraction, r, s, order) -> Derivation:
    """G1 (direction 1) or G2 (direction 2) applied to ``d`` of ``Gamma => F{v/r}``.

    The result derives ``Gamma, r=s => F{v/s}`` (G1) or ``Gamma, s=r => F{v/s}``
    (G2) and is semishortening whenever ``d`` is.
    """
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    if d.conclusion.suc != (ab.fill(r),):
        raise PreconditionViolation(f"succedent of {d.conclusion} is not {ab.fill(r)}")
    _probe_irreflexive(order, r, s)
    if not is_semishortening(d, order):
        raise PreconditionViolation("input derivation is not semishortening")
    if any(isinstance(x.rule, R.Cut) for _, x in nodes(d)):
        raise PreconditionViolation("input derivation contains a cut")
    from .singleton import singletonize
    d = singletonize(d)
    ab = _fresh_hole(ab, d, r, s)
    g = _G(order, "g_transform", True)
    return _singleton_chain(g.run, d, direction, ab, r, s)


@deep
def semishorten(d: Derivation, order) -> Derivation:
    """Cut-free semishortening EQ12 derivation of the endsequent of ``d``."""
    from .eqn import eliminate_cuts_eq
    from .singleton import singletonize
    if isinstance(order, str):
        from ..syntax import get_order
        order = get_order(order)
    _probe_irreflexive(order, *{t for _, n in nodes(d) if isinstance(n.rule, R.EQUALITY)
                                for t in (n.rule.r, n.rule.s)})
    x = singletonize(eliminate_cuts_eq(d))
    g = _G(order, "g_transform", True)
    out = _replay(x, g)
    assert out.conclusion == d.conclusion
    return out


def _replay(d: Derivation, g: _G) -> Derivation:
    prems = [_replay(p, g) for p in d.premisses]
    rule = d.rule
    if isinstance(rule, R.Eq1):
        (p,) = prems
        direction = 2 if isinstance(rule, R.Eq2) else 1
        ab = _fresh_hole(rule.ab, p, rule.r, rule.s)
        out = _singleton_chain(g.run, p, direction, ab, rule.r, rule.s)
        return restructure(out, d.conclusion)
    if tuple(prems) == d.premisses:
        return d
    return Derivation(d.conclusion, rule, tuple(prems))


ALWAYS = TermOrder("always", lambda a, b: True)
NEVER = TermOrder("never", lambda a, b: False)


@deep
def admit_oriented(d: Derivation, direction: int, ab: Abstraction, r, s, target: str) -> Derivation:
    """Admit ``=1`` (direction 1) or ``=2`` in the single-orientation cut-free calculus ``target``."""
    rel = ALWAYS if target == "EQ1" else NEVER
    g = _G(rel, "transpose_eq", False)
    ab = _fresh_hole(ab, d, r, s)
    return _singleton_chain(g.run, d, direction, ab, r, s)
