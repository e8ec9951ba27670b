"""Derivation checking and metrics."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

from . import rules as R
from .derivation import Derivation, nodes
from .syntax import SIZE, Sequent, TermOrder, get_order, is_atomic, loose_bound, term_size, terms_of
from .systems import SystemSpec, get_system


@dataclass
class Metrics:
    height: int = 0
    cutCount: int = 0
    eqCount: int = 0
    nonAtomicEqCount: int = 0
    lengtheningCount: int = 0
    maxTermSize: int = 0
    nodes: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CheckReport:
    ok: bool
    violations: list = field(default_factory=list)
    census: Metrics = field(default_factory=Metrics)

    def lines(self) -> list[str]:
        return [f"{'.'.join(map(str, p)) or 'root'}\t{reason}" for p, reason in self.violations]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [{"path": list(p), "reason": r} for p, r in self.violations],
            "census": self.census.to_dict(),
        }


def _succedent_ok(spec: SystemSpec, s: Sequent) -> bool:
    if spec.succedent == "one":
        return len(s.suc) == 1
    if spec.succedent == "atmost1":
        return len(s.suc) <= 1
    return True


# sequents along a branch share most of their formulas, so per-formula work is cached
@lru_cache(maxsize=1 << 16)
def _loose(f) -> frozenset:
    return frozenset(loose_bound(f))


@lru_cache(maxsize=1 << 16)
def _max_term(f) -> int:
    return max((term_size(t) for t in terms_of(f)), default=0)


def _node_violations(x: Derivation, spec: SystemSpec, order: TermOrder | None) -> list[str]:
    out = []
    rule = x.rule
    if not spec.allows(rule.name):
        out.append(f"rule {rule.name} not allowed in {spec.name}")
    if len(x.premisses) != rule.arity:
        out.append(f"{rule.name} needs {rule.arity} premiss(es), has {len(x.premisses)}")
        return out
    try:
        expected = rule.premisses(x.conclusion)
    except R.SchemaMismatch as e:
        out.append(f"{rule.name}: {e}")
    except (AttributeError, TypeError) as e:
        out.append(f"{rule.name}: malformed annotation ({e})")
    else:
        for i, (want, p) in enumerate(zip(expected, x.premisses)):
            if p.conclusion != want:
                out.append(f"{rule.name}: premiss {i} is {p.conclusion}, schema requires {want}")
    loose = set().union(*map(_loose, x.conclusion.ant + x.conclusion.suc))
    if loose:
        out.append(f"unbound variable(s) {', '.join(sorted(loose))} in {x.conclusion}")
    if isinstance(rule, R.Hypothesis) and rule.sequent not in spec.hypotheses:
        out.append(f"{rule.sequent} is not a hypothesis of {spec.name}")
    if not R.eigen_condition(rule, x.conclusion):
        out.append(f"eigenvariable {rule.eigen} occurs in the conclusion")
    if not _succedent_ok(spec, x.conclusion):
        out.append(f"succedent of {x.conclusion} violates the {spec.succedent} bound of {spec.name}")
    if isinstance(rule, R.EQUALITY):
        if not rule.hole_ok():
            out.append(f"hole {rule.ab.hole} occurs in r or s")
        if spec.atomic_eq_only and not is_atomic(rule.ab.skeleton):
            out.append(f"non-atomic changing formula {rule.ab.skeleton}")
        if spec.singleton_eq_only and rule.ab.count > 1:
            out.append(f"changing formula {rule.ab.skeleton} has {rule.ab.count} hole occurrences")
        if spec.order and order is not None:
            kind = R.order_predicate(rule, order)
            if kind == R.LENGTHENING:
                out.append(f"{rule.name} replacing {rule.r} by {rule.s} is lengthening")
            elif spec.order[0] == "semishort" and isinstance(rule, (R.Eq1, R.Eq1L)) \
                    and not isinstance(rule, (R.Eq2, R.Eq2L)) and kind != R.SHORTENING:
                out.append(f"{rule.name} replacing {rule.r} by {rule.s} is not shortening")
    return out


def check(d: Derivation, spec: SystemSpec | str) -> CheckReport:
    """Validate every node of ``d`` against ``spec``; never raises on bad input."""
    if isinstance(spec, str):
        spec = get_system(spec)
    order = get_order(spec.order[1]) if spec.order else None
    violations = []
    for path, x in nodes(d):
        for reason in _node_violations(x, spec, order):
            violations.append((path, reason))
    violations.sort(key=lambda v: (len(v[0]), v[0]))
    return CheckReport(not violations, violations, analyze(d, order or SIZE))


def is_eq_inference(rule: R.Rule) -> bool:
    return isinstance(rule, R.EQUALITY)


def analyze(d: Derivation, order: TermOrder = SIZE) -> Metrics:
    """Census of ``d``.  Height ignores exchange inferences."""
    m = Metrics()
    for _, x in nodes(d):
        m.nodes += 1
        rule = x.rule
        if isinstance(rule, R.Cut):
            m.cutCount += 1
        if isinstance(rule, R.EQUALITY):
            m.eqCount += 1
            if not is_atomic(rule.ab.skeleton):
                m.nonAtomicEqCount += 1
            if R.order_predicate(rule, order) == R.LENGTHENING:
                m.lengtheningCount += 1
        for f in x.conclusion.ant + x.conclusion.suc:
            m.maxTermSize = max(m.maxTermSize, _max_term(f))
    m.height = _height(d)
    return m


def _height(d: Derivation) -> int:
    """Height counting every inference except exchanges."""
    memo: dict[int, int] = {}
    order = [x for _, x in nodes(d)]
    for x in reversed(order):
        if not x.premisses:
            memo[id(x)] = 0
            continue
        below = max(memo[id(p)] for p in x.premisses)
        memo[id(x)] = below + (0 if isinstance(x.rule, (R.ExchL, R.ExchR)) else 1)
    return memo[id(d)]


def rank(f, d: Derivation, side: str) -> int:
    """Longest run of sequents from the endsequent containing ``f`` on one side.

    ``side="left"`` looks at succedents (the rank of a left cut premiss),
    ``side="right"`` at antecedents.
    """
    key = "suc" if side == "left" else "ant"
    best = 0
    stack = [(d, 1)]
    while stack:
        x, k = stack.pop()
        if f not in getattr(x.conclusion, key):
            best = max(best, k - 1)
            continue
        best = max(best, k)
        for p in x.premisses:
            stack.append((p, k + 1))
    return best
