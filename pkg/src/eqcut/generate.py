"""Random derivations built by forward rule application."""
from __future__ import annotations

import random

from . import rules as R
from .checker import check
from .derivation import Derivation, axiom, infer, refl, restructure
from .syntax import (
    And, Atom, BoundVar, Exists, Forall, Fun, Imp, Not, Or, Sequent, Var, abstract_occurrences, eq,
    free_vars, fresh_var, generalize, is_atomic, occurrences, subterms, terms_of,
)

CONSTS = ("a", "b", "c")
VARS = ("x", "y")


def rand_term(rng: random.Random, depth: int = 2, with_vars: bool = False) -> object:
    leaves = [Fun(c) for c in CONSTS] + ([Var(v) for v in VARS] if with_vars else [])
    if depth <= 0 or rng.random() < 0.55:
        return rng.choice(leaves)
    if rng.random() < 0.7:
        return Fun("f", (rand_term(rng, depth - 1, with_vars),))
    return Fun("g", (rand_term(rng, depth - 1, with_vars), rand_term(rng, depth - 1, with_vars)))


def rand_atom(rng: random.Random, with_vars: bool = False, eq_bias: float = 0.35) -> Atom:
    t = lambda: rand_term(rng, 2, with_vars)
    k = rng.random()
    if k < eq_bias:
        return eq(t(), t())
    if k < 0.75:
        return Atom("P", (t(),))
    return Atom("Q", (t(), t()))


def rand_formula(rng: random.Random, depth: int = 2, with_vars: bool = True) -> object:
    if depth <= 0 or rng.random() < 0.4:
        return rand_atom(rng, with_vars)
    k = rng.randrange(4)
    sub = lambda: rand_formula(rng, depth - 1, with_vars)
    return (lambda: Not(sub()), lambda: And(sub(), sub()), lambda: Or(sub(), sub()),
            lambda: Imp(sub(), sub()))[k]()


def _bound(f) -> str:
    return f"z{_qdepth(f)}"


def _qdepth(f) -> int:
    if isinstance(f, (Forall, Exists)):
        return 1 + _qdepth(f.body)
    if isinstance(f, Not):
        return _qdepth(f.body)
    if isinstance(f, (And, Or, Imp)):
        return max(_qdepth(f.left), _qdepth(f.right))
    return 0


def _loose(t) -> bool:
    if isinstance(t, BoundVar):
        return True
    return isinstance(t, Fun) and any(_loose(a) for a in t.args)


def _term_choices(f) -> list:
    return sorted({u for t in terms_of(f) for u in subterms(t) if not _loose(u)}, key=str)


def random_eq_rule(rng: random.Random, f, cls):
    """An equality rule rewriting some occurrences of a subterm of ``f``."""
    cands = _term_choices(f)
    if not cands:
        return None
    r = rng.choice(cands)
    occ = occurrences(f, r)
    if not occ:
        return None
    k = rng.randint(1, len(occ))
    chosen = rng.sample(occ, k)
    s = rand_term(rng, 1)
    hole = fresh_var(free_vars((f, r, s)), prefix="w")
    ab = abstract_occurrences(f, r, chosen, hole)
    return cls(ab, r, s)


# ------------------------------------------------------------ LK= / LJ=


class _Grower:
    def __init__(self, rng: random.Random, intuitionistic: bool, max_nodes: int, max_cuts: int):
        self.rng = rng
        self.lj = intuitionistic
        self.max_nodes = max_nodes
        self.cuts = max_cuts

    def leaf(self) -> Derivation:
        rng = self.rng
        if rng.random() < 0.2:
            return refl(rand_term(rng, 1))
        return axiom(rand_formula(rng, rng.choice((0, 0, 1, 2))))

    def suc_ok(self, d: Derivation) -> bool:
        return not self.lj or len(d.conclusion.suc) <= 1

    def grow(self, budget: int) -> Derivation:
        rng = self.rng
        d = self.leaf()
        while d.size < budget:
            room = budget - d.size
            nxt = self.step(d, room)
            if nxt is None or nxt.size > budget or not self.suc_ok(nxt):
                if rng.random() < 0.3:
                    break
                continue
            d = nxt
        return d

    def step(self, d: Derivation, room: int):
        rng = self.rng
        c = d.conclusion
        moves = ["wl", "eq", "eq", "andl", "orr", "notr", "notl", "impr", "alll", "exr", "allr", "exl", "xl", "cl"]
        if not self.lj:
            moves += ["wr", "xr", "cr"]
        if room >= 4:
            moves += ["andr", "orl", "impl"]
            if self.cuts > 0:
                moves += ["cut", "cut"]
        m = rng.choice(moves)
        try:
            return getattr(self, "m_" + m)(d, room)
        except (R.SchemaMismatch, IndexError, ValueError, KeyError):
            return None

    # unary moves
    def m_wl(self, d, room):
        return infer(R.WeakL(rand_formula(self.rng, 1)), d)

    def m_wr(self, d, room):
        return infer(R.WeakR(rand_formula(self.rng, 1)), d)

    def m_xl(self, d, room):
        n = len(d.conclusion.ant)
        return infer(R.ExchL(self.rng.randrange(n - 1)), d) if n > 1 else None

    def m_xr(self, d, room):
        n = len(d.conclusion.suc)
        return infer(R.ExchR(self.rng.randrange(n - 1)), d) if n > 1 else None

    def m_cl(self, d, room):
        ant = d.conclusion.ant
        for i in range(len(ant) - 1):
            if ant[i] == ant[i + 1]:
                return infer(R.ContrL(i), d)
        return None

    def m_cr(self, d, room):
        suc = d.conclusion.suc
        for i in range(len(suc) - 1):
            if suc[i] == suc[i + 1]:
                return infer(R.ContrR(i), d)
        return None

    def m_eq(self, d, room):
        if not d.conclusion.suc:
            return None
        cls = self.rng.choice((R.Eq1, R.Eq2))
        rule = random_eq_rule(self.rng, d.conclusion.suc[-1], cls)
        return infer(rule, d) if rule else None

    def m_andl(self, d, room):
        ant = d.conclusion.ant
        if not ant:
            return None
        g = rand_formula(self.rng, 1)
        if self.rng.random() < 0.5:
            return infer(R.AndL1(And(ant[-1], g)), d)
        return infer(R.AndL2(And(g, ant[-1])), d)

    def m_orr(self, d, room):
        suc = d.conclusion.suc
        if not suc:
            return None
        g = rand_formula(self.rng, 1)
        if self.rng.random() < 0.5:
            return infer(R.OrR1(Or(suc[-1], g)), d)
        return infer(R.OrR2(Or(g, suc[-1])), d)

    def m_notr(self, d, room):
        return infer(R.NotR(), d) if d.conclusion.ant else None

    def m_notl(self, d, room):
        return infer(R.NotL(), d) if d.conclusion.suc else None

    def m_impr(self, d, room):
        c = d.conclusion
        if not c.ant:
            return None
        if not c.suc:
            d = infer(R.WeakR(rand_atom(self.rng)), d)
        return infer(R.ImpR(), d)

    def m_alll(self, d, room):
        ant = d.conclusion.ant
        if not ant:
            return None
        g = ant[-1]
        ts = _term_choices(g)
        if not ts:
            return None
        t = self.rng.choice(ts)
        q = generalize(g, t, _bound(g), Forall)
        return infer(R.ForallL(t, q), d)

    def m_exr(self, d, room):
        suc = d.conclusion.suc
        if not suc:
            return None
        g = suc[-1]
        ts = _term_choices(g)
        if not ts:
            return None
        t = self.rng.choice(ts)
        return infer(R.ExistsR(t, generalize(g, t, _bound(g), Exists)), d)

    def m_allr(self, d, room):
        c = d.conclusion
        if not c.suc:
            return None
        g = c.suc[-1]
        vs = sorted(free_vars(g) - free_vars(Sequent(c.ant, c.suc[:-1])))
        if not vs:
            return None
        u = self.rng.choice(vs)
        return infer(R.ForallR(u, generalize(g, Var(u), _bound(g), Forall)), d)

    def m_exl(self, d, room):
        c = d.conclusion
        if not c.ant:
            return None
        g = c.ant[-1]
        vs = sorted(free_vars(g) - free_vars(Sequent(c.ant[:-1], c.suc)))
        if not vs:
            return None
        u = self.rng.choice(vs)
        return infer(R.ExistsL(u, generalize(g, Var(u), _bound(g), Exists)), d)

    # binary moves
    def _other(self, room):
        return self.grow(max(1, self.rng.randint(1, max(1, room // 2))))

    def m_andr(self, d, room):
        e = self._other(room - 1)
        if not (d.conclusion.suc and e.conclusion.suc):
            return None
        return infer(R.AndR(), *_share(d, e, "suc"))

    def m_orl(self, d, room):
        e = self._other(room - 1)
        if not (d.conclusion.ant and e.conclusion.ant):
            return None
        if self.lj and d.conclusion.suc != e.conclusion.suc:
            if len(d.conclusion.suc) + len(e.conclusion.suc) > 1:
                return None
        return infer(R.OrL(), *_share(d, e, "ant"))

    def m_impl(self, d, room):
        e = self._other(room - 1)
        if not (d.conclusion.suc and e.conclusion.ant):
            return None
        if self.lj and e.conclusion.suc == () and False:
            return None
        return infer(R.ImpL(), d, e)

    def m_cut(self, d, room):
        c = d.conclusion
        if not c.suc:
            return None
        f = c.suc[-1]
        self.cuts -= 1
        e = self.cut_partner(f, max(1, room // 2))
        return infer(R.Cut(f), d, e)

    def cut_partner(self, f, budget) -> Derivation:
        """A derivation keeping ``f`` at the end of its antecedent."""
        rng = self.rng
        e = _left_intro(rng, f)
        for _ in range(rng.randint(0, 3)):
            if e.size >= budget:
                break
            m = rng.choice(["orr", "eq", "wl", "notl", "andr"] + (["wr"] if not self.lj else []))
            try:
                if m == "orr" and e.conclusion.suc:
                    nxt = self.m_orr(e, budget)
                elif m == "eq" and e.conclusion.suc:
                    nxt = self.m_eq(e, budget)
                elif m == "wl":
                    nxt = self.m_wl(e, budget)
                elif m == "wr":
                    nxt = self.m_wr(e, budget)
                elif m == "notl" and e.conclusion.suc and not self.lj:
                    nxt = self.m_notl(e, budget)
                elif m == "andr" and e.conclusion.suc:
                    other = axiom(e.conclusion.suc[-1])
                    nxt = infer(R.AndR(), *_share(e, other, "suc"))
                else:
                    nxt = None
            except (R.SchemaMismatch, IndexError, ValueError):
                nxt = None
            if nxt is not None and self.suc_ok(nxt):
                e = nxt
        ant = e.conclusion.ant
        k = max(i for i, g in enumerate(ant) if g == f)
        order = ant[:k] + ant[k + 1:] + (f,)
        return restructure(e, Sequent(order, e.conclusion.suc))


def _share(d: Derivation, e: Derivation, active: str):
    """Give two premisses the same context for an additive rule."""
    cd, ce = d.conclusion, e.conclusion
    if active == "suc":
        ant = cd.ant + ce.ant
        sctx = cd.suc[:-1] + ce.suc[:-1]
        return (restructure(d, Sequent(ant, sctx + cd.suc[-1:])),
                restructure(e, Sequent(ant, sctx + ce.suc[-1:])))
    actx = cd.ant[:-1] + ce.ant[:-1]
    suc = _union(cd.suc, ce.suc)
    return (restructure(d, Sequent(actx + cd.ant[-1:], suc)),
            restructure(e, Sequent(actx + ce.ant[-1:], suc)))


def _union(a, b):
    out = list(a)
    for f in b:
        if out.count(f) < b.count(f):
            out.append(f)
    return tuple(out)


def _left_intro(rng: random.Random, f) -> Derivation:
    """``f`` introduced on the left when possible, else an axiom."""
    if isinstance(f, And) and rng.random() < 0.8:
        if rng.random() < 0.5:
            return infer(R.AndL1(f), axiom(f.left))
        return infer(R.AndL2(f), axiom(f.right))
    if isinstance(f, Imp) and rng.random() < 0.8:
        # A -> B, A => B
        return restructure(infer(R.ImpL(), axiom(f.left), axiom(f.right)),
                           Sequent((f.left, f), (f.right,)))
    if isinstance(f, Not) and rng.random() < 0.8:
        return restructure(infer(R.NotL(), axiom(f.body)), Sequent((f.body, f), ()))
    if isinstance(f, Or) and rng.random() < 0.8:
        a = restructure(axiom(f.left), Sequent((f.left,), (f.left, f.right)))
        b = restructure(axiom(f.right), Sequent((f.right,), (f.left, f.right)))
        return infer(R.OrL(), a, b)
    if isinstance(f, Forall) and rng.random() < 0.8:
        t = rand_term(rng, 1)
        from .syntax import instantiate
        return infer(R.ForallL(t, f), axiom(instantiate(f, t)))
    return axiom(f)


def random_lk_derivation(rng: random.Random, intuitionistic: bool = False, max_nodes: int = 25,
                         max_cuts: int = 3, min_cuts: int = 1) -> Derivation:
    """A checker-valid LK= (or LJ=) derivation with at most ``max_nodes`` nodes."""
    system = "LJ=" if intuitionistic else "LK="
    while True:
        g = _Grower(rng, intuitionistic, max_nodes, max_cuts)
        d = g.grow(max_nodes)
        cuts = sum(1 for _ in _cuts(d))
        if d.size <= max_nodes and min_cuts <= cuts <= max_cuts and check(d, system).ok:
            return d


def _cuts(d):
    from .derivation import nodes
    return (x for _, x in nodes(d) if isinstance(x.rule, R.Cut))


# ----------------------------------------------------------- EQ family


def random_eq_derivation(rng: random.Random, max_nodes: int = 20, max_cuts: int = 3,
                         left_rules: bool = False, system: str | None = None) -> Derivation:
    """A checker-valid EQ (or EQ12 with ``left_rules``) derivation."""
    system = system or ("EQ12" if left_rules else "EQ")
    while True:
        d = _grow_eq(rng, max_nodes, [max_cuts], left_rules)
        cuts = sum(1 for _ in _cuts(d))
        if d.size <= max_nodes and cuts <= max_cuts and check(d, system).ok:
            return d


def _eq_leaf(rng):
    if rng.random() < 0.4:
        return refl(rand_term(rng, 1))
    return axiom(rand_atom(rng, eq_bias=0.6))


def _grow_eq(rng, budget, cuts, left_rules):
    d = _eq_leaf(rng)
    tries = 0
    while d.size < budget and tries < 40:
        tries += 1
        room = budget - d.size
        moves = ["eq1", "eq2", "eq1", "eq2", "wl", "xl"]
        if left_rules:
            moves += ["eq1l", "eq2l", "eq1l", "eq2l"]
        if cuts[0] > 0 and room >= 3:
            moves += ["cut"]
        m = rng.choice(moves)
        nxt = None
        c = d.conclusion
        try:
            if m in ("eq1", "eq2"):
                rule = random_eq_rule(rng, c.suc[-1], R.Eq1 if m == "eq1" else R.Eq2)
                nxt = infer(rule, d) if rule else None
            elif m in ("eq1l", "eq2l") and c.ant:
                k = rng.randrange(len(c.ant))
                rule = random_eq_rule(rng, c.ant[k], R.Eq1L if m == "eq1l" else R.Eq2L)
                if rule:
                    from dataclasses import replace
                    nxt = infer(replace(rule, target=k), d)
            elif m == "wl":
                nxt = infer(R.WeakL(rand_atom(rng, eq_bias=0.7)), d)
            elif m == "xl" and len(c.ant) > 1:
                nxt = infer(R.ExchL(rng.randrange(len(c.ant) - 1)), d)
            elif m == "cut":
                cuts[0] -= 1
                if rng.random() < 0.5:
                    # d as left premiss
                    f = c.suc[-1]
                    e = _grow_eq_seed(rng, axiom(f), max(1, room // 2), cuts, left_rules)
                    ant = e.conclusion.ant
                    k = max(i for i, g in enumerate(ant) if g == f)
                    e = restructure(e, Sequent(ant[:k] + ant[k + 1:] + (f,), e.conclusion.suc))
                    nxt = infer(R.Cut(f), d, e)
                elif c.ant:
                    f = c.ant[-1]
                    e = _grow_eq(rng, max(1, room // 2), cuts, left_rules)
                    e = _force_suc(rng, e, f)
                    if e is not None:
                        nxt = infer(R.Cut(f), e, d)
        except (R.SchemaMismatch, IndexError, ValueError):
            nxt = None
        if nxt is not None and nxt.size <= budget:
            d = nxt
    return d


def _grow_eq_seed(rng, seed, budget, cuts, left_rules):
    d = seed
    for _ in range(rng.randint(0, 3)):
        if d.size >= budget:
            break
        rule = random_eq_rule(rng, d.conclusion.suc[-1], rng.choice((R.Eq1, R.Eq2)))
        if rule:
            d = infer(rule, d)
    return d


def _force_suc(rng, e, f):
    """``e`` if it already ends in ``f``, else a small derivation of ``f``."""
    if e.conclusion.suc[-1] == f:
        return e
    if f.pred == "=" and f.args[0] == f.args[1]:
        return refl(f.args[0])
    return infer(R.WeakL(rand_atom(rng, eq_bias=0.7)), axiom(f))
