"""Derivation trees and the bookkeeping shared by all transformations."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields, replace
from typing import Iterator

from . import rules as R
from .syntax import (
    Abstraction, Atom, Formula, Fun, Sequent, Var, eq, free_vars, fresh_var, subst,
)


class StructureError(ValueError):
    """A requested rearrangement would have to drop a formula."""


class PreconditionViolation(ValueError):
    pass


@dataclass(frozen=True)
class Derivation:
    conclusion: Sequent
    rule: R.Rule
    premisses: tuple = ()

    # height and size are filled in at construction so reading them never recurses
    height: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)

    def __post_init__(self):
        ps = self.premisses
        if ps:
            object.__setattr__(self, "height", 1 + max(p.height for p in ps))
            object.__setattr__(self, "size", 1 + sum(p.size for p in ps))

    def __str__(self) -> str:
        return render(self)


def render(d: Derivation, indent: int = 0) -> str:
    lines = []
    for path, x in nodes(d):
        lines.append("  " * (indent + len(path)) + f"{x.rule.name} |- {x.conclusion}")
    return "\n".join(lines)


def nodes(d: Derivation, path: tuple = ()) -> Iterator[tuple[tuple, Derivation]]:
    """Pre-order walk yielding (tree path, node)."""
    stack = [(path, d)]
    while stack:
        p, x = stack.pop()
        yield p, x
        for i in range(len(x.premisses) - 1, -1, -1):
            stack.append((p + (i,), x.premisses[i]))


def infer(rule: R.Rule, *premisses: Derivation) -> Derivation:
    """Apply ``rule`` forwards, recomputing its split annotations."""
    concs = tuple(p.conclusion for p in premisses)
    rule = rule.fit(*concs)
    return Derivation(rule.conclude(*concs), rule, tuple(premisses))


def axiom(f: Formula) -> Derivation:
    return Derivation(Sequent((f,), (f,)), R.LogicalAxiom(f))


def refl(t) -> Derivation:
    return Derivation(Sequent((), (eq(t, t),)), R.ReflAxiom(t))


def hypothesis(s: Sequent) -> Derivation:
    return Derivation(s, R.Hypothesis(s))


# --------------------------------------------------------------- variables


def all_vars(d: Derivation) -> set[str]:
    """Every variable name in sequents or annotations of ``d``."""
    out: set[str] = set()
    for _, x in nodes(d):
        out |= free_vars(x.conclusion)
        for f in fields(x.rule):
            v = getattr(x.rule, f.name)
            if isinstance(v, Abstraction):
                out |= free_vars(v.skeleton)
                out.add(v.hole)
            elif isinstance(v, str) and f.name == "eigen":
                out.add(v)
            elif v is not None and not isinstance(v, (int, str)):
                out |= free_vars(v)
    return out


def _subst_field(v, u, t):
    if v is None or isinstance(v, (int, str)):
        return v
    return subst(v, u, t)


def subst_derivation(d: Derivation, u: str, t) -> Derivation:
    """Replace the free variable ``u`` by the term ``t`` throughout ``d``.

    Eigenvariables that occur in ``t`` and hole variables that clash are
    renamed first; a subtree whose eigenvariable is ``u`` is left alone.
    """
    tv = free_vars(t)
    if u not in all_vars(d):
        return d
    return _subst(d, u, t, tv)


def _subst(d, u, t, tv):
    rule = d.rule
    if isinstance(rule, R.EIGEN):
        if rule.eigen == u:
            return d
        if rule.eigen in tv:
            d = rename_eigen(d, tv | {u})
            rule = d.rule
    prems = tuple(_subst(p, u, t, tv) for p in d.premisses)
    changes = {}
    for f in fields(rule):
        v = getattr(rule, f.name)
        if isinstance(v, Abstraction):
            ab = v
            if ab.hole == u or ab.hole in tv:
                new = fresh_var(free_vars(ab.skeleton) | tv | {u} | free_vars(rule.r) | free_vars(rule.s))
                ab = Abstraction(subst(ab.skeleton, ab.hole, Var(new)), new)
            changes[f.name] = Abstraction(subst(ab.skeleton, u, t), ab.hole)
        elif f.name != "eigen":
            changes[f.name] = _subst_field(v, u, t)
    return Derivation(subst(d.conclusion, u, t), replace(rule, **changes), prems)


def rename_eigen(d: Derivation, avoid: set[str]) -> Derivation:
    """Rename the eigenvariable of the last inference of ``d`` away from ``avoid``."""
    rule = d.rule
    if not isinstance(rule, R.EIGEN) or rule.eigen not in avoid:
        return d
    (p,) = d.premisses
    new = fresh_var(set(avoid) | all_vars(p) | free_vars(d.conclusion))
    p2 = subst_derivation(p, rule.eigen, Var(new))
    return Derivation(d.conclusion, replace(rule, eigen=new), (p2,))


# ------------------------------------------------------------ restructure


def _side_ops(cur: list, target: tuple, left: bool):
    """Yield structural rules turning side ``cur`` into ``target``; mutates cur."""
    X, C, W = (R.ExchL, R.ContrL, R.WeakL) if left else (R.ExchR, R.ContrR, R.WeakR)
    have, need = Counter(cur), Counter(target)
    for f in list(have):
        extra = have[f] - need[f]
        if extra > 0 and need[f] == 0:
            raise StructureError(f"cannot remove {f}")
        for _ in range(max(extra, 0)):
            idx = [k for k, g in enumerate(cur) if g == f]
            i, j = idx[0], idx[1]
            while j > i + 1:
                yield X(j - 1)
                cur[j - 1], cur[j] = cur[j], cur[j - 1]
                j -= 1
            yield C(i)
            del cur[i + 1]
    have = Counter(cur)
    for f in need:
        for _ in range(need[f] - have[f]):
            yield W(f)
            cur.append(f)
    for k, f in enumerate(target):
        if cur[k] == f:
            continue
        j = next(j for j in range(k + 1, len(cur)) if cur[j] == f)
        while j > k:
            yield X(j - 1)
            cur[j - 1], cur[j] = cur[j], cur[j - 1]
            j -= 1


def restructure(d: Derivation, target: Sequent) -> Derivation:
    """Reach ``target`` from the conclusion of ``d`` by weak structural rules.

    Every formula of the conclusion must occur in the target.
    """
    if d.conclusion == target:
        return d
    for side, left in ((target.ant, True), (target.suc, False)):
        cur = list(d.conclusion.ant if left else d.conclusion.suc)
        for rule in _side_ops(cur, side, left):
            d = infer(rule, d)
    assert d.conclusion == target, (d.conclusion, target)
    return d


def to_end(side: tuple, f) -> tuple:
    """``side`` with its last occurrence of ``f`` moved to the end."""
    for k in range(len(side) - 1, -1, -1):
        if side[k] == f:
            return side[:k] + side[k + 1:] + (f,)
    raise StructureError(f"{f} not present")


def remove_one(side: tuple, f) -> tuple:
    for k in range(len(side) - 1, -1, -1):
        if side[k] == f:
            return side[:k] + side[k + 1:]
    raise StructureError(f"{f} not present")


def weak_left(d: Derivation, *fs) -> Derivation:
    for f in fs:
        d = infer(R.WeakL(f), d)
    return d


# ------------------------------------------------------- ancestor tracing


def trace_map(d: Derivation) -> dict:
    """Map each conclusion position to its ancestor positions in the premisses.

    Returns ``{"ant": [...], "suc": [...]}``, one list of ``(premiss, pos)``
    pairs per conclusion position.  Principal, operating and changed
    formulas have no ancestors.
    """
    rule, c = d.rule, d.conclusion
    na, ns = len(c.ant), len(c.suc)
    ident = lambda n, ps: [[(i, j) for i in ps] for j in range(n)]
    if rule.is_axiom:
        return {"ant": [[] for _ in range(na)], "suc": [[] for _ in range(ns)]}
    if isinstance(rule, (R.WeakL, R.WeakR)):
        a, s = ident(na, (0,)), ident(ns, (0,))
        (a if isinstance(rule, R.WeakL) else s)[-1] = []
        return {"ant": a, "suc": s}
    if isinstance(rule, (R.ExchL, R.ExchR)):
        a, s = ident(na, (0,)), ident(ns, (0,))
        side = a if isinstance(rule, R.ExchL) else s
        i = rule.index
        side[i], side[i + 1] = side[i + 1], side[i]
        return {"ant": a, "suc": s}
    if isinstance(rule, (R.ContrL, R.ContrR)):
        n = na if isinstance(rule, R.ContrL) else ns
        i = rule.index
        m = [[(0, j)] if j < i else [(0, i), (0, i + 1)] if j == i else [(0, j + 1)] for j in range(n)]
        if isinstance(rule, R.ContrL):
            return {"ant": m, "suc": ident(ns, (0,))}
        return {"ant": ident(na, (0,)), "suc": m}
    if isinstance(rule, (R.Cut, R.EqElim, R.ImpL)):
        la, ls = rule.left_ant, rule.left_suc
        nctx = na - (0 if isinstance(rule, R.Cut) else 1)
        a = [[(0, j)] if j < la else [(1, j - la)] for j in range(nctx)]
        if nctx < na:
            a.append([])
        s = [[(0, j)] if j < ls else [(1, j - ls)] for j in range(ns)]
        return {"ant": a, "suc": s}
    if isinstance(rule, R.Cng):
        la, ls = rule.left_ant, rule.left_suc
        a = [[(0, j)] if j < la else [(1, j - la)] for j in range(na)]
        s = [[(0, j)] if j < ls else [(1, j - ls)] for j in range(ns - 1)] + [[]]
        return {"ant": a, "suc": s}
    if isinstance(rule, (R.Eq1L, R.Eq2L)):
        a = [[(0, j)] for j in range(na - 1)] + [[]]
        a[rule.target] = []
        return {"ant": a, "suc": ident(ns, (0,))}
    ps = tuple(range(rule.arity))
    # context formulas keep their position in every premiss
    left_principal = isinstance(rule, (R.AndL1, R.OrL, R.ForallL, R.ExistsL, R.NotL, R.ImpL))
    right_principal = isinstance(rule, (R.AndR, R.OrR1, R.ForallR, R.ExistsR, R.NotR, R.ImpR, R.Eq1))
    a = ident(na, ps)
    s = ident(ns, ps)
    if left_principal:
        a[-1] = []
    if right_principal:
        s[-1] = []
    if isinstance(rule, R.Eq1):
        a[-1] = []
    return {"ant": a, "suc": s}


def premiss_extras(d: Derivation, ant_x=frozenset(), suc_x=frozenset()) -> list[tuple[frozenset, frozenset]]:
    """Push extra-occurrence index sets of the conclusion up to each premiss."""
    m = trace_map(d)
    out = [(set(), set()) for _ in d.premisses]
    for side, xs, k in (("ant", ant_x, 0), ("suc", suc_x, 1)):
        for pos in xs:
            for i, j in m[side][pos]:
                out[i][k].add(j)
    return [(frozenset(a), frozenset(s)) for a, s in out]


def drop_positions(side: tuple, xs) -> tuple:
    return tuple(f for k, f in enumerate(side) if k not in xs)


# --------------------------------------------------------------- reapply


ADDITIVE = (R.AndR, R.OrL)


def _merge_ctx(ctxs):
    out: list = []
    for ctx in ctxs:
        have = Counter(out)
        need = Counter(ctx)
        for f in ctx:
            if need[f] > have[f]:
                out.append(f)
                have[f] += 1
    return tuple(out)


def reapply(node: Derivation, new: list[Derivation]) -> Derivation:
    """Apply the last inference of ``node`` to replacement premisses.

    The replacements may carry extra context; the active formulas of the
    old premisses are located by value and moved into place.
    """
    rule = node.rule
    olds = [p.conclusion for p in node.premisses]
    fixed = []
    for i, (old, p) in enumerate(zip(olds, new)):
        c = p.conclusion
        ant, suc = c.ant, c.suc
        if isinstance(rule, (R.Eq1L, R.Eq2L)):
            ant = to_end(ant, old.ant[rule.target])
        else:
            a_act, s_act = rule.active[i]
            if a_act:
                ant = to_end(ant, old.ant[-1])
            if s_act:
                suc = to_end(suc, old.suc[-1])
        fixed.append(Sequent(ant, suc))
    if isinstance(rule, ADDITIVE):
        if isinstance(rule, R.AndR):
            ctx_a = _merge_ctx([s.ant for s in fixed])
            ctx_s = _merge_ctx([s.suc[:-1] for s in fixed])
            fixed = [Sequent(ctx_a, ctx_s + (s.suc[-1],)) for s in fixed]
        else:
            ctx_a = _merge_ctx([s.ant[:-1] for s in fixed])
            ctx_s = _merge_ctx([s.suc for s in fixed])
            fixed = [Sequent(ctx_a + (s.ant[-1],), ctx_s) for s in fixed]
    prems = [restructure(p, s) for p, s in zip(new, fixed)]
    if isinstance(rule, (R.Eq1L, R.Eq2L)):
        rule = replace(rule, target=len(prems[0].conclusion.ant) - 1)
    out = infer(rule, *prems)
    if not R.eigen_condition(out.rule, out.conclusion):
        raise PreconditionViolation(f"eigenvariable {out.rule.eigen} clashes after reapplying {rule.name}")
    return out


def freshen(node: Derivation, avoid: set[str]) -> Derivation:
    """Rename ``node``'s eigenvariable if it occurs in ``avoid``."""
    return rename_eigen(node, avoid)


def permute_antecedent(d: Derivation, order: tuple) -> Derivation:
    """Exchange chain putting the antecedent of ``d`` in the given order."""
    return restructure(d, Sequent(tuple(order), d.conclusion.suc))


@dataclass(frozen=True)
class JoinSpec:
    """Positions of the extra occurrences of the joined formula.

    ``left`` indexes the succedent of the left derivation, ``right`` the
    antecedent of the right one.
    """

    left: frozenset = frozenset()
    right: frozenset = frozenset()
