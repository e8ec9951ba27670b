"""Inference rules.

Layout conventions shared by every rule: principal formulas sit at the end of
their side, operating equalities are appended at the end of the antecedent,
and the formula changed by ``=1``/``=2`` is the last succedent formula.  The
left equality rules carry the index of the formula they change.  Two-premiss
rules with separate contexts carry the length of the first premiss's
contexts, so reading premisses off a conclusion never needs a search.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import ClassVar, Optional

from .syntax import (
    Abstraction, And, Atom, Exists, Forall, Formula, Imp, Not, Or, Sequent, Term, Var,
    eq, free_vars, instantiate, is_eq,
)


class SchemaMismatch(ValueError):
    """A conclusion does not fit the shape a rule requires."""


def _need(cond: bool, reason: str) -> None:
    if not cond:
        raise SchemaMismatch(reason)


def _last(side: tuple, what: str):
    _need(len(side) > 0, f"{what} is empty")
    return side[-1]


@dataclass(frozen=True)
class Rule:
    name: ClassVar[str] = "?"
    arity: ClassVar[int] = 0
    #: per premiss: (last antecedent formula active, last succedent formula active)
    active: ClassVar[tuple] = ()

    def premisses(self, c: Sequent) -> tuple:
        raise NotImplementedError

    def conclude(self, *ps: Sequent) -> Sequent:
        raise NotImplementedError

    def fit(self, *ps: Sequent) -> "Rule":
        """This rule with its split annotations recomputed for ``ps``."""
        return self

    @property
    def is_axiom(self) -> bool:
        return self.arity == 0


# ---------------------------------------------------------------- axioms


@dataclass(frozen=True)
class LogicalAxiom(Rule):
    name: ClassVar[str] = "ax"
    formula: Formula = None

    def premisses(self, c):
        _need(c == Sequent((self.formula,), (self.formula,)), f"axiom needs {self.formula} => {self.formula}")
        return ()

    def conclude(self):
        return Sequent((self.formula,), (self.formula,))


@dataclass(frozen=True)
class ReflAxiom(Rule):
    name: ClassVar[str] = "refl"
    term: Term = None

    def premisses(self, c):
        _need(c == Sequent((), (eq(self.term, self.term),)), f"reflexivity axiom needs => {self.term}={self.term}")
        return ()

    def conclude(self):
        return Sequent((), (eq(self.term, self.term),))


@dataclass(frozen=True)
class Hypothesis(Rule):
    """An extra initial sequent supplied by the system."""

    name: ClassVar[str] = "hyp"
    sequent: Sequent = None

    def premisses(self, c):
        _need(c == self.sequent, f"hypothesis is {self.sequent}")
        return ()

    def conclude(self):
        return self.sequent


# ------------------------------------------------------------ structural


@dataclass(frozen=True)
class WeakL(Rule):
    name: ClassVar[str] = "wl"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    formula: Formula = None

    def premisses(self, c):
        _need(_last(c.ant, "antecedent") == self.formula, f"last antecedent formula is not {self.formula}")
        return (Sequent(c.ant[:-1], c.suc),)

    def conclude(self, p):
        return Sequent(p.ant + (self.formula,), p.suc)


@dataclass(frozen=True)
class WeakR(Rule):
    name: ClassVar[str] = "wr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    formula: Formula = None

    def premisses(self, c):
        _need(_last(c.suc, "succedent") == self.formula, f"last succedent formula is not {self.formula}")
        return (Sequent(c.ant, c.suc[:-1]),)

    def conclude(self, p):
        return Sequent(p.ant, p.suc + (self.formula,))


def _swap(side: tuple, i: int) -> tuple:
    _need(0 <= i and i + 1 < len(side), f"no positions {i},{i + 1}")
    s = list(side)
    s[i], s[i + 1] = s[i + 1], s[i]
    return tuple(s)


@dataclass(frozen=True)
class ExchL(Rule):
    name: ClassVar[str] = "xl"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    index: int = 0

    def premisses(self, c):
        return (Sequent(_swap(c.ant, self.index), c.suc),)

    def conclude(self, p):
        return Sequent(_swap(p.ant, self.index), p.suc)


@dataclass(frozen=True)
class ExchR(Rule):
    name: ClassVar[str] = "xr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    index: int = 0

    def premisses(self, c):
        return (Sequent(c.ant, _swap(c.suc, self.index)),)

    def conclude(self, p):
        return Sequent(p.ant, _swap(p.suc, self.index))


def _dup(side: tuple, i: int) -> tuple:
    _need(0 <= i < len(side), f"no position {i}")
    return side[: i + 1] + (side[i],) + side[i + 1:]


def _merge(side: tuple, i: int) -> tuple:
    _need(0 <= i and i + 1 < len(side) and side[i] == side[i + 1], f"positions {i},{i + 1} differ")
    return side[: i + 1] + side[i + 2:]


@dataclass(frozen=True)
class ContrL(Rule):
    """Contract the equal adjacent antecedent formulas at ``index``, ``index+1``."""

    name: ClassVar[str] = "cl"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    index: int = 0

    def premisses(self, c):
        return (Sequent(_dup(c.ant, self.index), c.suc),)

    def conclude(self, p):
        return Sequent(_merge(p.ant, self.index), p.suc)


@dataclass(frozen=True)
class ContrR(Rule):
    name: ClassVar[str] = "cr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    index: int = 0

    def premisses(self, c):
        return (Sequent(c.ant, _dup(c.suc, self.index)),)

    def conclude(self, p):
        return Sequent(p.ant, _merge(p.suc, self.index))


STRUCTURAL = (WeakL, WeakR, ExchL, ExchR, ContrL, ContrR)


# ------------------------------------------------------------------- cut


@dataclass(frozen=True)
class Cut(Rule):
    name: ClassVar[str] = "cut"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((False, True), (True, False))
    formula: Formula = None
    left_ant: int = 0
    left_suc: int = 0

    def premisses(self, c):
        la, ls = self.left_ant, self.left_suc
        _need(la <= len(c.ant) and ls <= len(c.suc), "context split out of range")
        return (
            Sequent(c.ant[:la], c.suc[:ls] + (self.formula,)),
            Sequent(c.ant[la:] + (self.formula,), c.suc[ls:]),
        )

    def conclude(self, p0, p1):
        _need(_last(p0.suc, "left succedent") == self.formula, "left premiss does not end with the cut formula")
        _need(_last(p1.ant, "right antecedent") == self.formula, "right premiss does not end with the cut formula")
        return Sequent(p0.ant + p1.ant[:-1], p0.suc[:-1] + p1.suc)

    def fit(self, p0, p1):
        return replace(self, left_ant=len(p0.ant), left_suc=len(p0.suc) - 1)


# --------------------------------------------------------------- logical


def _principal(side, cls, what):
    f = _last(side, what)
    _need(isinstance(f, cls), f"last {what} formula {f} is not a {cls.__name__}")
    return f


@dataclass(frozen=True)
class AndL1(Rule):
    name: ClassVar[str] = "andl1"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((True, False),)
    formula: Optional[Formula] = None

    def _pick(self, f):
        return f.left

    def premisses(self, c):
        f = _principal(c.ant, And, "antecedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant[:-1] + (self._pick(f),), c.suc),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.ant, "antecedent") == self._pick(self.formula), "active formula mismatch")
        return Sequent(p.ant[:-1] + (self.formula,), p.suc)


@dataclass(frozen=True)
class AndL2(AndL1):
    name: ClassVar[str] = "andl2"

    def _pick(self, f):
        return f.right


@dataclass(frozen=True)
class AndR(Rule):
    name: ClassVar[str] = "andr"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((False, True), (False, True))

    def premisses(self, c):
        f = _principal(c.suc, And, "succedent")
        return (Sequent(c.ant, c.suc[:-1] + (f.left,)), Sequent(c.ant, c.suc[:-1] + (f.right,)))

    def conclude(self, p0, p1):
        _need(p0.ant == p1.ant and p0.suc[:-1] == p1.suc[:-1], "premiss contexts differ")
        return Sequent(p0.ant, p0.suc[:-1] + (And(_last(p0.suc, "succedent"), _last(p1.suc, "succedent")),))


@dataclass(frozen=True)
class OrL(Rule):
    name: ClassVar[str] = "orl"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((True, False), (True, False))

    def premisses(self, c):
        f = _principal(c.ant, Or, "antecedent")
        return (Sequent(c.ant[:-1] + (f.left,), c.suc), Sequent(c.ant[:-1] + (f.right,), c.suc))

    def conclude(self, p0, p1):
        _need(p0.ant[:-1] == p1.ant[:-1] and p0.suc == p1.suc, "premiss contexts differ")
        return Sequent(p0.ant[:-1] + (Or(_last(p0.ant, "antecedent"), _last(p1.ant, "antecedent")),), p0.suc)


@dataclass(frozen=True)
class OrR1(Rule):
    name: ClassVar[str] = "orr1"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, True),)
    formula: Optional[Formula] = None

    def _pick(self, f):
        return f.left

    def premisses(self, c):
        f = _principal(c.suc, Or, "succedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant, c.suc[:-1] + (self._pick(f),)),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.suc, "succedent") == self._pick(self.formula), "active formula mismatch")
        return Sequent(p.ant, p.suc[:-1] + (self.formula,))


@dataclass(frozen=True)
class OrR2(OrR1):
    name: ClassVar[str] = "orr2"

    def _pick(self, f):
        return f.right


@dataclass(frozen=True)
class ImpL(Rule):
    name: ClassVar[str] = "impl"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((False, True), (True, False))
    left_ant: int = 0
    left_suc: int = 0

    def premisses(self, c):
        f = _principal(c.ant, Imp, "antecedent")
        ctx = c.ant[:-1]
        la, ls = self.left_ant, self.left_suc
        _need(la <= len(ctx) and ls <= len(c.suc), "context split out of range")
        return (
            Sequent(ctx[:la], c.suc[:ls] + (f.left,)),
            Sequent(ctx[la:] + (f.right,), c.suc[ls:]),
        )

    def conclude(self, p0, p1):
        f = Imp(_last(p0.suc, "left succedent"), _last(p1.ant, "right antecedent"))
        return Sequent(p0.ant + p1.ant[:-1] + (f,), p0.suc[:-1] + p1.suc)

    def fit(self, p0, p1):
        return replace(self, left_ant=len(p0.ant), left_suc=len(p0.suc) - 1)


@dataclass(frozen=True)
class ImpR(Rule):
    name: ClassVar[str] = "impr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((True, True),)

    def premisses(self, c):
        f = _principal(c.suc, Imp, "succedent")
        return (Sequent(c.ant + (f.left,), c.suc[:-1] + (f.right,)),)

    def conclude(self, p):
        f = Imp(_last(p.ant, "antecedent"), _last(p.suc, "succedent"))
        return Sequent(p.ant[:-1], p.suc[:-1] + (f,))


@dataclass(frozen=True)
class NotL(Rule):
    name: ClassVar[str] = "notl"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, True),)

    def premisses(self, c):
        f = _principal(c.ant, Not, "antecedent")
        return (Sequent(c.ant[:-1], c.suc + (f.body,)),)

    def conclude(self, p):
        return Sequent(p.ant + (Not(_last(p.suc, "succedent")),), p.suc[:-1])


@dataclass(frozen=True)
class NotR(Rule):
    name: ClassVar[str] = "notr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((True, False),)

    def premisses(self, c):
        f = _principal(c.suc, Not, "succedent")
        return (Sequent(c.ant + (f.body,), c.suc[:-1]),)

    def conclude(self, p):
        return Sequent(p.ant[:-1], p.suc + (Not(_last(p.ant, "antecedent")),))


@dataclass(frozen=True)
class ForallL(Rule):
    name: ClassVar[str] = "alll"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((True, False),)
    term: Term = None
    formula: Optional[Formula] = None

    def premisses(self, c):
        f = _principal(c.ant, Forall, "antecedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant[:-1] + (instantiate(f, self.term),), c.suc),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.ant, "antecedent") == instantiate(self.formula, self.term), "instance mismatch")
        return Sequent(p.ant[:-1] + (self.formula,), p.suc)


@dataclass(frozen=True)
class ExistsR(Rule):
    name: ClassVar[str] = "exr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, True),)
    term: Term = None
    formula: Optional[Formula] = None

    def premisses(self, c):
        f = _principal(c.suc, Exists, "succedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant, c.suc[:-1] + (instantiate(f, self.term),)),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.suc, "succedent") == instantiate(self.formula, self.term), "instance mismatch")
        return Sequent(p.ant, p.suc[:-1] + (self.formula,))


@dataclass(frozen=True)
class ForallR(Rule):
    name: ClassVar[str] = "allr"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, True),)
    eigen: str = None
    formula: Optional[Formula] = None

    def premisses(self, c):
        f = _principal(c.suc, Forall, "succedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant, c.suc[:-1] + (instantiate(f, Var(self.eigen)),)),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.suc, "succedent") == instantiate(self.formula, Var(self.eigen)), "instance mismatch")
        return Sequent(p.ant, p.suc[:-1] + (self.formula,))


@dataclass(frozen=True)
class ExistsL(Rule):
    name: ClassVar[str] = "exl"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((True, False),)
    eigen: str = None
    formula: Optional[Formula] = None

    def premisses(self, c):
        f = _principal(c.ant, Exists, "antecedent")
        _need(self.formula in (None, f), "principal formula mismatch")
        return (Sequent(c.ant[:-1] + (instantiate(f, Var(self.eigen)),), c.suc),)

    def conclude(self, p):
        _need(self.formula is not None, "principal formula needed")
        _need(_last(p.ant, "antecedent") == instantiate(self.formula, Var(self.eigen)), "instance mismatch")
        return Sequent(p.ant[:-1] + (self.formula,), p.suc)


LOGICAL = (AndL1, AndL2, AndR, OrL, OrR1, OrR2, ImpL, ImpR, NotL, NotR, ForallL, ForallR, ExistsL, ExistsR)
EIGEN = (ForallR, ExistsL)


# -------------------------------------------------------------- equality


@dataclass(frozen=True)
class EqRule(Rule):
    ab: Abstraction = None
    r: Term = None
    s: Term = None

    @property
    def op(self) -> Atom:
        """The operating equality."""
        return eq(self.r, self.s)

    @property
    def before(self) -> Formula:
        return self.ab.fill(self.r)

    @property
    def after(self) -> Formula:
        return self.ab.fill(self.s)

    def hole_ok(self) -> bool:
        return self.ab.hole not in free_vars((self.r, self.s))


@dataclass(frozen=True)
class Eq1(EqRule):
    """Gamma => Delta, F{v/r}  /  Gamma, r=s => Delta, F{v/s}"""

    name: ClassVar[str] = "eq1"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, True),)

    def premisses(self, c):
        _need(_last(c.ant, "antecedent") == self.op, f"operating equality {self.op} is not last in the antecedent")
        _need(_last(c.suc, "succedent") == self.after, f"last succedent formula is not {self.after}")
        return (Sequent(c.ant[:-1], c.suc[:-1] + (self.before,)),)

    def conclude(self, p):
        _need(_last(p.suc, "succedent") == self.before, f"premiss does not end with {self.before}")
        return Sequent(p.ant + (self.op,), p.suc[:-1] + (self.after,))


@dataclass(frozen=True)
class Eq2(Eq1):
    """Gamma => Delta, F{v/r}  /  Gamma, s=r => Delta, F{v/s}"""

    name: ClassVar[str] = "eq2"

    @property
    def op(self) -> Atom:
        return eq(self.s, self.r)


@dataclass(frozen=True)
class Eq1L(EqRule):
    """Gamma, F{v/r} => Delta  /  Gamma, F{v/s}, r=s => Delta   (F at ``target``)"""

    name: ClassVar[str] = "eq1l"
    arity: ClassVar[int] = 1
    active: ClassVar[tuple] = ((False, False),)
    target: int = 0

    def premisses(self, c):
        _need(_last(c.ant, "antecedent") == self.op, f"operating equality {self.op} is not last in the antecedent")
        ctx = c.ant[:-1]
        _need(0 <= self.target < len(ctx), f"target {self.target} out of range")
        _need(ctx[self.target] == self.after, f"antecedent formula {self.target} is not {self.after}")
        ant = ctx[: self.target] + (self.before,) + ctx[self.target + 1:]
        return (Sequent(ant, c.suc),)

    def conclude(self, p):
        _need(0 <= self.target < len(p.ant), f"target {self.target} out of range")
        _need(p.ant[self.target] == self.before, f"antecedent formula {self.target} is not {self.before}")
        ant = p.ant[: self.target] + (self.after,) + p.ant[self.target + 1:]
        return Sequent(ant + (self.op,), p.suc)


@dataclass(frozen=True)
class Eq2L(Eq1L):
    """Gamma, F{v/r} => Delta  /  Gamma, F{v/s}, s=r => Delta"""

    name: ClassVar[str] = "eq2l"

    @property
    def op(self) -> Atom:
        return eq(self.s, self.r)


@dataclass(frozen=True)
class EqElim(EqRule):
    """Lambda => Theta, F{v/r}   Gamma, F{v/s} => Delta  /  Lambda, Gamma, r=s => Theta, Delta"""

    name: ClassVar[str] = "eqelim"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((False, True), (True, False))
    left_ant: int = 0
    left_suc: int = 0

    def premisses(self, c):
        _need(_last(c.ant, "antecedent") == self.op, f"operating equality {self.op} is not last in the antecedent")
        ctx = c.ant[:-1]
        la, ls = self.left_ant, self.left_suc
        _need(la <= len(ctx) and ls <= len(c.suc), "context split out of range")
        return (
            Sequent(ctx[:la], c.suc[:ls] + (self.before,)),
            Sequent(ctx[la:] + (self.after,), c.suc[ls:]),
        )

    def conclude(self, p0, p1):
        _need(_last(p0.suc, "left succedent") == self.before, f"left premiss does not end with {self.before}")
        _need(_last(p1.ant, "right antecedent") == self.after, f"right premiss does not end with {self.after}")
        return Sequent(p0.ant + p1.ant[:-1] + (self.op,), p0.suc[:-1] + p1.suc)

    def fit(self, p0, p1):
        return replace(self, left_ant=len(p0.ant), left_suc=len(p0.suc) - 1)


@dataclass(frozen=True)
class Cng(EqRule):
    """Gamma => Delta, F{v/r}   Lambda => Theta, r=s  /  Gamma, Lambda => Delta, Theta, F{v/s}"""

    name: ClassVar[str] = "cng"
    arity: ClassVar[int] = 2
    active: ClassVar[tuple] = ((False, True), (False, True))
    left_ant: int = 0
    left_suc: int = 0

    def premisses(self, c):
        _need(_last(c.suc, "succedent") == self.after, f"last succedent formula is not {self.after}")
        la, ls = self.left_ant, self.left_suc
        ctx = c.suc[:-1]
        _need(la <= len(c.ant) and ls <= len(ctx), "context split out of range")
        return (
            Sequent(c.ant[:la], ctx[:ls] + (self.before,)),
            Sequent(c.ant[la:], ctx[ls:] + (eq(self.r, self.s),)),
        )

    def conclude(self, p0, p1):
        _need(_last(p0.suc, "left succedent") == self.before, f"left premiss does not end with {self.before}")
        _need(_last(p1.suc, "right succedent") == eq(self.r, self.s), f"right premiss does not end with {self.r}={self.s}")
        return Sequent(p0.ant + p1.ant, p0.suc[:-1] + p1.suc[:-1] + (self.after,))

    def fit(self, p0, p1):
        return replace(self, left_ant=len(p0.ant), left_suc=len(p0.suc) - 1)


EQUALITY = (Eq1, Eq2, Eq1L, Eq2L, EqElim, Cng)
ORIENTED = (Eq1, Eq2, Eq1L, Eq2L)

ALL_RULES = (LogicalAxiom, ReflAxiom, Hypothesis) + STRUCTURAL + (Cut,) + LOGICAL + EQUALITY
RULES_BY_NAME = {cls.name: cls for cls in ALL_RULES}


# ------------------------------------------------------- side conditions


def premiss_schema(rule: Rule, conclusion: Sequent) -> tuple:
    """The premiss sequents forced by ``rule`` and ``conclusion``."""
    return rule.premisses(conclusion)


def eigen_condition(rule: Rule, conclusion: Sequent) -> bool:
    if isinstance(rule, EIGEN):
        return rule.eigen not in free_vars(conclusion)
    return True


SHORTENING = "shortening"
NONLENGTHENING = "nonlengthening"
LENGTHENING = "lengthening"
NOT_EQ = "not-an-eq-rule"


def order_predicate(rule: Rule, order) -> str:
    """Classify an oriented equality inference against a term order.

    With the rule's ``r`` (replaced term) and ``s`` (replacing term) the
    inference is shortening if ``r < s`` and nonlengthening unless ``s < r``.
    """
    if not isinstance(rule, ORIENTED):
        return NOT_EQ
    if order(rule.s, rule.r):
        return LENGTHENING
    return SHORTENING if order(rule.r, rule.s) else NONLENGTHENING


def is_equality_formula(f) -> bool:
    return is_eq(f)
