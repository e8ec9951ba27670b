"""Bounded backward proof search for the cut-free equality calculi.

States are sequent classes: the antecedent as a multiset, so exchanges are
never searched but are inserted when a derivation is rebuilt.  Every
equality step rewrites with an operating equality already present in the
antecedent, so every term of a visited sequent stays inside a finite
universe (by default the subterms of the goal).  Exhaustion is relative to
that universe, the depth bound and the multiplicity cap; nothing more.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Union

from . import rules as R
from .checker import check
from .derivation import Derivation, PreconditionViolation, axiom, hypothesis, infer, refl, restructure
from .syntax import (
    Sequent, Var, enumerate_abstractions, eq, free_vars, fresh_var, is_eq, subterms, terms_of,
)
from .systems import SystemSpec, get_system

SUPPORTED = frozenset({"ax", "refl", "hyp", "wl", "xl", "cl", "cut", "eq1", "eq2", "eq1l", "eq2l"})


class BudgetInvalid(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 8
    multiplicity_cap: int = 3
    #: None means the subterms of the goal (and of any hypotheses)
    universe: Optional[frozenset] = None

    def validate(self) -> None:
        if not isinstance(self.max_depth, int) or self.max_depth < 1:
            raise BudgetInvalid(f"max_depth must be at least 1, got {self.max_depth!r}")
        if not isinstance(self.multiplicity_cap, int) or self.multiplicity_cap < 1:
            raise BudgetInvalid(f"multiplicity_cap must be at least 1, got {self.multiplicity_cap!r}")

    def to_dict(self) -> dict:
        return {
            "maxDepth": self.max_depth,
            "multiplicityCap": self.multiplicity_cap,
            "termUniverse": "derived" if self.universe is None else sorted(map(str, self.universe)),
        }


@dataclass
class Statistics:
    expanded: int = 0
    memo_hits: int = 0

    def to_dict(self) -> dict:
        return {"nodesExpanded": self.expanded, "memoHits": self.memo_hits}


@dataclass
class Found:
    derivation: Derivation
    statistics: Statistics
    depth: int

    found = True


@dataclass
class ExhaustedWithinBudget:
    statistics: Statistics
    certificate: "ExhaustionCertificate"

    found = False


SearchResult = Union[Found, ExhaustedWithinBudget]


@dataclass
class ExhaustionCertificate:
    goal: Sequent
    system: str
    budget: SearchBudget
    universe: tuple
    #: every sequent class reached backwards, as sorted text
    visited: tuple
    exhausted: bool
    statistics: Statistics
    #: classes derivable within the budget (non-empty only when something closed)
    closed: tuple = ()
    invariant: Optional[str] = None
    invariant_holds: Optional[bool] = None
    found: Optional[Derivation] = field(default=None, repr=False)
    closed_sequents: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        out = {
            "goal": str(self.goal),
            "system": self.system,
            "budget": self.budget.to_dict(),
            "universe": list(self.universe),
            "exhausted": self.exhausted,
            "visited": list(self.visited),
            "closed": list(self.closed),
            "statistics": self.statistics.to_dict(),
        }
        if self.invariant is not None:
            out["invariant"] = self.invariant
            out["invariantHolds"] = self.invariant_holds
        return out


# ------------------------------------------------------------ the search


def _key(ant, suc) -> tuple:
    return tuple(sorted(ant, key=str)), suc


def _class_text(key) -> str:
    ant, suc = key
    return str(Sequent(ant, (suc,)))


def _universe(goal: Sequent, hyps) -> frozenset:
    out = set()
    for s in (goal,) + tuple(hyps):
        for t in terms_of(s):
            out.update(subterms(t))
    return frozenset(out)


class _Search:
    def __init__(self, spec: SystemSpec, budget: SearchBudget, universe: frozenset):
        self.spec = spec
        self.budget = budget
        self.universe = universe
        self.rules = spec.rules
        self.hyps = [(Counter(h.ant), h.suc[0], h) for h in spec.hypotheses if len(h.suc) == 1]
        self.proved: dict = {}
        self.failed: dict = {}  # key -> largest depth bound known to fail
        self.visited: set = set()
        self.stats = Statistics()

    def in_universe(self, formulas) -> bool:
        for f in formulas:
            for t in terms_of(f):
                if t not in self.universe:
                    return False
        return True

    # -- closing moves (axioms up to weakening)
    def close(self, key) -> Optional[Derivation]:
        ant, suc = key
        target = Sequent(ant, (suc,))
        if "ax" in self.rules and suc in ant and ("wl" in self.rules or len(ant) == 1):
            return restructure(axiom(suc), target)
        if "refl" in self.rules and is_eq(suc) and suc.args[0] == suc.args[1] \
                and ("wl" in self.rules or not ant):
            return restructure(refl(suc.args[0]), target)
        have = Counter(ant)
        for need, hs, h in self.hyps:
            if hs == suc and not (need - have) and ("wl" in self.rules or need == have):
                return restructure(hypothesis(h), target)
        return None

    # -- backward moves, in the fixed order: contraction, then equality.
    # Weakening is never searched: in these calculi it can be pushed up to
    # the leaves without growing the height, and close() weakens there.
    def moves(self, key):
        ant, suc = key
        have = Counter(ant)
        cap = self.budget.multiplicity_cap
        if "cl" in self.rules:
            for f in have:
                if have[f] < cap:
                    yield ("cl", f), [_key(ant + (f,), suc)]
        eqs = [f for f in have if is_eq(f)]
        for op in eqs:
            x, y = op.args
            if x == y:
                continue
            rest = list(ant)
            rest.remove(op)
            rest = tuple(rest)
            # (class, r, s) with op = r=s for the 1-rules and s=r for the 2-rules
            for cls, r, s in ((R.Eq1, x, y), (R.Eq2, y, x)):
                if cls.name in self.rules:
                    for ab in self._abstractions(suc, s, r):
                        prem = ab.fill(r)
                        if self.in_universe((prem,)):
                            yield (cls, ab, r, s), [_key(rest, prem)]
            for cls, r, s in ((R.Eq1L, x, y), (R.Eq2L, y, x)):
                if cls.name not in self.rules:
                    continue
                for h in dict.fromkeys(rest):
                    for ab in self._abstractions(h, s, r):
                        new = ab.fill(r)
                        prem_ant = list(rest)
                        prem_ant.remove(h)
                        prem_ant.append(new)
                        if Counter(prem_ant)[new] > cap or not self.in_universe((new,)):
                            continue
                        yield (cls, ab, r, s, new), [_key(tuple(prem_ant), suc)]

    @staticmethod
    def _abstractions(f, s, r):
        hole = fresh_var(free_vars(f) | free_vars((r, s)), prefix="v")
        return [ab for ab in enumerate_abstractions(f, s, hole) if not ab.trivial]

    def build(self, key, move, prem: Derivation) -> Derivation:
        ant, suc = key
        target = Sequent(ant, (suc,))
        tag = move[0]
        if tag in ("cl", "wl"):
            return restructure(prem, target)
        cls, ab, r, s = move[:4]
        if cls in (R.Eq1, R.Eq2):
            return restructure(infer(cls(ab, r, s), prem), target)
        new = move[4]
        k = prem.conclusion.ant.index(new)
        return restructure(infer(cls(ab, r, s, k), prem), target)

    def solve(self, key, depth: int) -> Optional[Derivation]:
        self.visited.add(key)
        if key in self.proved:
            self.stats.memo_hits += 1
            return self.proved[key]
        if self.failed.get(key, -1) >= depth:
            self.stats.memo_hits += 1
            return None
        d = self.close(key)
        if d is None and depth > 1:
            self.stats.expanded += 1
            for move, prems in self.moves(key):
                (pk,) = prems
                sub = self.solve(pk, depth - 1)
                if sub is not None:
                    d = self.build(key, move, sub)
                    break
        if d is None:
            self.failed[key] = max(depth, self.failed.get(key, -1))
            return None
        self.proved[key] = d
        return d


def _prepare(goal, sys, budget):
    spec = get_system(sys) if isinstance(sys, str) else sys
    budget = budget or SearchBudget()
    budget.validate()
    if len(goal.suc) != 1:
        raise PreconditionViolation("search needs exactly one succedent formula")
    unsupported = spec.rules - SUPPORTED
    if unsupported:
        raise PreconditionViolation(f"search does not support rule(s) {sorted(unsupported)}")
    universe = budget.universe if budget.universe is not None else _universe(goal, spec.hypotheses)
    if not _Search(spec, budget, universe).in_universe(goal.ant + goal.suc):
        raise PreconditionViolation("the goal has terms outside the universe")
    return spec, budget, frozenset(universe)


def _run(goal, spec, budget, universe):
    s = _Search(spec, budget, universe)
    key = _key(goal.ant, goal.suc[0])
    found = None
    depth = 0
    # iterative deepening keeps derivations short; failures carry over
    for depth in range(1, budget.max_depth + 1):
        d = s.solve(key, depth)
        if d is not None:
            found = restructure(d, goal)
            break
    for k in s.visited:
        for f in k[0] + (k[1],):
            for t in terms_of(f):
                assert t in universe, f"{t} escaped the universe"
    return s, found, depth


def prove(goal: Sequent | str, sys: SystemSpec | str, budget: SearchBudget | None = None) -> SearchResult:
    """Depth-bounded backward search for a cut-free derivation of ``goal``."""
    if isinstance(goal, str):
        from .parser import parse_sequent
        goal = parse_sequent(goal)
    spec, budget, universe = _prepare(goal, sys, budget)
    s, found, depth = _run(goal, spec, budget, universe)
    if found is not None:
        assert check(found, spec).ok, check(found, spec).lines()
        return Found(found, s.stats, depth)
    return ExhaustedWithinBudget(s.stats, _certificate(goal, spec, budget, universe, s, None))


def _certificate(goal, spec, budget, universe, s, found) -> ExhaustionCertificate:
    return ExhaustionCertificate(
        goal=goal,
        system=spec.name,
        budget=budget,
        universe=tuple(sorted(map(str, universe))),
        visited=tuple(sorted(_class_text(k) for k in s.visited)),
        exhausted=found is None,
        statistics=s.stats,
        closed=tuple(sorted(_class_text(k) for k in s.visited if k in s.proved)),
        found=found,
        closed_sequents=tuple(Sequent(k[0], (k[1],)) for k in s.visited if k in s.proved),
    )


def certify_underivable(goal: Sequent | str, sys: SystemSpec | str,
                        budget: SearchBudget | None = None) -> ExhaustionCertificate:
    """Exhaustion report for ``goal``; ``exhausted`` is False if a derivation turned up."""
    if isinstance(goal, str):
        from .parser import parse_sequent
        goal = parse_sequent(goal)
    spec, budget, universe = _prepare(goal, sys, budget)
    s, found, _ = _run(goal, spec, budget, universe)
    return _certificate(goal, spec, budget, universe, s, found)


def check_nonderivable_symmetry(sys: SystemSpec | str, budget: SearchBudget | None = None) -> ExhaustionCertificate:
    """``b=a => c=d`` from the extra initial sequent ``a=b => c=d`` in EQ1 or EQ2.

    Also checks, on every visited class that closes within the budget, that
    the antecedent holds an equality ``a=t`` (EQ1) or ``t=b`` (EQ2).
    """
    spec = get_system(sys) if isinstance(sys, str) else sys
    a, b, c, d = (Var(n) for n in "abcd")
    hyp = Sequent((eq(a, b),), (eq(c, d),))
    if hyp not in spec.hypotheses:
        spec = spec.with_hypotheses(hyp)
    one = "eq1" in spec.rules and "eq2" not in spec.rules
    two = "eq2" in spec.rules and "eq1" not in spec.rules
    if not (one or two):
        raise PreconditionViolation("expected a single-orientation system (EQ1 or EQ2)")
    cert = certify_underivable(Sequent((eq(b, a),), (eq(c, d),)), spec, budget)
    if one:
        cert.invariant = "antecedent contains a=t"
        ok = lambda f: is_eq(f) and f.args[0] == a  # noqa: E731
    else:
        cert.invariant = "antecedent contains t=b"
        ok = lambda f: is_eq(f) and f.args[1] == b  # noqa: E731
    cert.invariant_holds = all(any(ok(f) for f in s.ant)
                               for s in cert.closed_sequents if s.suc == (eq(c, d),))
    return cert


def within_budget(d: Derivation, budget: SearchBudget | None = None) -> bool:
    """Whether the cut-free derivation ``d`` is one the search is bound to find.

    Every term of every sequent lies in the universe of the endsequent, no
    antecedent exceeds the multiplicity cap, and no branch has more than
    ``max_depth - 1`` inferences other than exchanges.
    """
    budget = budget or SearchBudget()
    goal = d.conclusion
    universe = budget.universe if budget.universe is not None else _universe(goal, ())
    depth: dict[int, int] = {}
    order = [x for _, x in _nodes(d)]
    for x in reversed(order):
        c = x.conclusion
        if len(c.suc) != 1 or isinstance(x.rule, R.Cut):
            return False
        if x is not d and max(Counter(c.ant).values(), default=0) > budget.multiplicity_cap:
            return False
        if any(t not in universe for f in c.ant + c.suc for t in terms_of(f)):
            return False
        below = max((depth[id(p)] for p in x.premisses), default=0)
        depth[id(x)] = below + (0 if isinstance(x.rule, R.ExchL) else 1)
    return depth[id(d)] <= budget.max_depth


def _nodes(d):
    from .derivation import nodes
    return nodes(d)
