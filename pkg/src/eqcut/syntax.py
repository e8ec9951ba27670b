"""Terms, formulas and sequents of first-order logic with equality.

Free variables (:class:`Var`) and bound variables (:class:`BoundVar`) live in
disjoint syntactic classes.  A bound variable only ever appears inside the
body of a quantifier, and terms handed around outside formulas never contain
one, so substituting a term for a free variable cannot capture anything.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Union


class PathMismatch(ValueError):
    """An occurrence path does not address the expected subterm."""


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class BoundVar:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fun:
    symbol: str
    args: tuple = ()

    def __str__(self) -> str:
        return f"{self.symbol}({','.join(map(str, self.args))})"


Term = Union[Var, Fun, BoundVar]


def const(name: str) -> Fun:
    return Fun(name, ())


# ------------------------------------------------------------- formulas

EQ = "="


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()

    def __str__(self) -> str:
        if self.pred == EQ:
            return f"{self.args[0]}={self.args[1]}"
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self) -> str:
        return "~" + _wrap(self.body, 4)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left, 3)} & {_wrap(self.right, 4)}"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left, 2)} | {_wrap(self.right, 3)}"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return f"{_wrap(self.left, 2)} -> {_wrap(self.right, 1)}"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return f"forall {self.var}. {self.body}"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self) -> str:
        return f"exists {self.var}. {self.body}"


Formula = Union[Atom, Not, And, Or, Imp, Forall, Exists]
BINARY = (And, Or, Imp)
QUANTIFIERS = (Forall, Exists)

_PREC = {Atom: 5, Not: 4, And: 3, Or: 2, Imp: 1, Forall: 0, Exists: 0}


def _wrap(f: Formula, need: int) -> str:
    s = str(f)
    return s if _PREC[type(f)] >= need else f"({s})"



def _cached_hash(cls):
    """Memoize the generated field hash; formulas are hashed constantly."""
    base = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = base(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


for _cls in (Fun, Atom, Not, And, Or, Imp, Forall, Exists):
    _cached_hash(_cls)


def eq(left: Term, right: Term) -> Atom:
    return Atom(EQ, (left, right))


def is_eq(f) -> bool:
    return isinstance(f, Atom) and f.pred == EQ and len(f.args) == 2


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Atom)


# ------------------------------------------------------------- sequents


@dataclass(frozen=True)
class Sequent:
    ant: tuple = ()
    suc: tuple = ()

    def __post_init__(self):
        if not isinstance(self.ant, tuple):
            object.__setattr__(self, "ant", tuple(self.ant))
        if not isinstance(self.suc, tuple):
            object.__setattr__(self, "suc", tuple(self.suc))

    def __str__(self) -> str:
        left = ", ".join(map(str, self.ant))
        right = ", ".join(map(str, self.suc))
        return f"{left} => {right}".strip()


_cached_hash(Sequent)


# -------------------------------------------------------- substitution


def subst(x, v: str, r: Term):
    """Replace every occurrence of the free variable ``v`` in ``x`` by ``r``.

    ``x`` may be a term, a formula or a sequent.
    """
    if isinstance(x, Var):
        return r if x.name == v else x
    if isinstance(x, Fun):
        if not x.args:
            return x
        return Fun(x.symbol, tuple(subst(a, v, r) for a in x.args))
    if isinstance(x, BoundVar):
        return x
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(subst(a, v, r) for a in x.args))
    if isinstance(x, Not):
        return Not(subst(x.body, v, r))
    if isinstance(x, BINARY):
        return type(x)(subst(x.left, v, r), subst(x.right, v, r))
    if isinstance(x, QUANTIFIERS):
        return type(x)(x.var, subst(x.body, v, r))
    if isinstance(x, Sequent):
        return Sequent(tuple(subst(f, v, r) for f in x.ant), tuple(subst(f, v, r) for f in x.suc))
    raise TypeError(f"cannot substitute into {x!r}")


def instantiate(q: Formula, t: Term) -> Formula:
    """Body of the quantified formula ``q`` with its bound variable replaced by ``t``."""
    return _inst(q.body, q.var, t)


def _inst(x, x_name: str, t: Term):
    if isinstance(x, BoundVar):
        return t if x.name == x_name else x
    if isinstance(x, Var):
        return x
    if isinstance(x, Fun):
        return Fun(x.symbol, tuple(_inst(a, x_name, t) for a in x.args)) if x.args else x
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(_inst(a, x_name, t) for a in x.args))
    if isinstance(x, Not):
        return Not(_inst(x.body, x_name, t))
    if isinstance(x, BINARY):
        return type(x)(_inst(x.left, x_name, t), _inst(x.right, x_name, t))
    if isinstance(x, QUANTIFIERS):
        if x.var == x_name:
            return x
        return type(x)(x.var, _inst(x.body, x_name, t))
    raise TypeError(x)


def generalize(f: Formula, t: Term, bound: str, quant=None) -> Formula:
    """Replace every occurrence of ``t`` in ``f`` by the bound variable ``bound``."""
    body = _replace_term(f, t, BoundVar(bound))
    return (quant or Forall)(bound, body)


def _replace_term(x, t, new):
    if x == t:
        return new
    if isinstance(x, (Var, BoundVar)):
        return x
    if isinstance(x, Fun):
        return Fun(x.symbol, tuple(_replace_term(a, t, new) for a in x.args)) if x.args else x
    if isinstance(x, Atom):
        return Atom(x.pred, tuple(_replace_term(a, t, new) for a in x.args))
    if isinstance(x, Not):
        return Not(_replace_term(x.body, t, new))
    if isinstance(x, BINARY):
        return type(x)(_replace_term(x.left, t, new), _replace_term(x.right, t, new))
    if isinstance(x, QUANTIFIERS):
        return type(x)(x.var, _replace_term(x.body, t, new))
    raise TypeError(x)


# --------------------------------------------------------- inspection


def free_vars(x) -> set[str]:
    out: set[str] = set()
    _collect_vars(x, out)
    return out


def _collect_vars(x, out: set) -> None:
    if isinstance(x, Var):
        out.add(x.name)
    elif isinstance(x, (Fun, Atom)):
        for a in x.args:
            _collect_vars(a, out)
    elif isinstance(x, Not):
        _collect_vars(x.body, out)
    elif isinstance(x, BINARY):
        _collect_vars(x.left, out)
        _collect_vars(x.right, out)
    elif isinstance(x, QUANTIFIERS):
        _collect_vars(x.body, out)
    elif isinstance(x, Sequent):
        for f in x.ant + x.suc:
            _collect_vars(f, out)
    elif isinstance(x, (tuple, list, set, frozenset)):
        for y in x:
            _collect_vars(y, out)


def loose_bound(x, scope: frozenset = frozenset()) -> set[str]:
    """Bound-variable names used outside any binder for them."""
    if isinstance(x, BoundVar):
        return set() if x.name in scope else {x.name}
    if isinstance(x, (Fun, Atom)):
        return set().union(*(loose_bound(a, scope) for a in x.args)) if x.args else set()
    if isinstance(x, Not):
        return loose_bound(x.body, scope)
    if isinstance(x, BINARY):
        return loose_bound(x.left, scope) | loose_bound(x.right, scope)
    if isinstance(x, QUANTIFIERS):
        return loose_bound(x.body, scope | {x.var})
    if isinstance(x, Sequent):
        return set().union(*(loose_bound(f, scope) for f in x.ant + x.suc)) if x.ant + x.suc else set()
    return set()


def occurs(v: str, x) -> bool:
    return v in free_vars(x)


def term_size(t: Term) -> int:
    """Symbol count: function symbols plus variables."""
    if isinstance(t, Fun):
        return 1 + sum(term_size(a) for a in t.args)
    return 1


def terms_of(x) -> Iterator[Term]:
    """All maximal terms (atom arguments) of a formula or sequent."""
    if isinstance(x, Atom):
        yield from x.args
    elif isinstance(x, Not):
        yield from terms_of(x.body)
    elif isinstance(x, BINARY):
        yield from terms_of(x.left)
        yield from terms_of(x.right)
    elif isinstance(x, QUANTIFIERS):
        yield from terms_of(x.body)
    elif isinstance(x, Sequent):
        for f in x.ant + x.suc:
            yield from terms_of(f)


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, Fun):
        for a in t.args:
            yield from subterms(a)


def degree(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    if isinstance(f, Not):
        return 1 + degree(f.body)
    if isinstance(f, BINARY):
        return 1 + degree(f.left) + degree(f.right)
    return 1 + degree(f.body)


def fresh_var(avoid: Iterable[str], prefix: str = "v") -> str:
    """Smallest ``v<n>`` not in ``avoid``."""
    avoid = set(avoid)
    for n in itertools.count():
        name = f"{prefix}{n}"
        if name not in avoid:
            return name


# ---------------------------------------------------- occurrence paths


def _children(x) -> tuple:
    if isinstance(x, (Atom, Fun)):
        return x.args
    if isinstance(x, (Not, Forall, Exists)):
        return (x.body,)
    if isinstance(x, BINARY):
        return (x.left, x.right)
    return ()


def _rebuild(x, kids: tuple):
    if isinstance(x, Atom):
        return Atom(x.pred, kids)
    if isinstance(x, Fun):
        return Fun(x.symbol, kids)
    if isinstance(x, Not):
        return Not(kids[0])
    if isinstance(x, BINARY):
        return type(x)(*kids)
    if isinstance(x, QUANTIFIERS):
        return type(x)(x.var, kids[0])
    raise TypeError(x)


def at_path(x, path: tuple):
    for i in path:
        kids = _children(x)
        if i >= len(kids):
            raise PathMismatch(f"path {path} leaves {x}")
        x = kids[i]
    return x


def replace_at(x, path: tuple, new):
    if not path:
        return new
    kids = list(_children(x))
    if path[0] >= len(kids):
        raise PathMismatch(f"path {path} leaves {x}")
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return _rebuild(x, tuple(kids))


def occurrences(f, target: Term) -> list[tuple]:
    """Paths of the occurrences of ``target`` in ``f``, in left-to-right order."""
    out: list[tuple] = []

    def walk(x, path):
        if x == target and not isinstance(x, (Atom, Not, And, Or, Imp, Forall, Exists)):
            out.append(path)
            return
        for i, k in enumerate(_children(x)):
            walk(k, path + (i,))

    walk(f, ())
    return out


def var_paths(f, v: str) -> list[tuple]:
    return occurrences(f, Var(v))


# ---------------------------------------------------------- abstractions


@dataclass(frozen=True)
class Abstraction:
    """A changing formula ``skeleton`` together with its hole variable."""

    skeleton: Formula
    hole: str

    def fill(self, t: Term) -> Formula:
        return subst(self.skeleton, self.hole, t)

    @property
    def count(self) -> int:
        return len(var_paths(self.skeleton, self.hole))

    @property
    def singleton(self) -> bool:
        return self.count == 1

    @property
    def trivial(self) -> bool:
        return self.count == 0

    def paths(self) -> list[tuple]:
        return var_paths(self.skeleton, self.hole)

    def __str__(self) -> str:
        return f"({self.skeleton}, {self.hole})"


def abstract_occurrences(f: Formula, target: Term, positions: Iterable[tuple], fresh: str) -> Abstraction:
    if occurs(fresh, f):
        raise ValueError(f"{fresh} is not fresh for {f}")
    skel = f
    for p in positions:
        p = tuple(p)
        if at_path(f, p) != target:
            raise PathMismatch(f"{p} does not address {target} in {f}")
        skel = replace_at(skel, p, Var(fresh))
    return Abstraction(skel, fresh)


def enumerate_abstractions(f: Formula, target: Term, fresh: str | None = None) -> list[Abstraction]:
    """Every abstraction of a subset of the occurrences of ``target`` in ``f``.

    The empty (trivial) abstraction comes first; subsets are ordered
    lexicographically on their sorted path tuples.
    """
    if fresh is None:
        fresh = fresh_var(free_vars(f) | free_vars(target))
    occ = occurrences(f, target)
    subsets = []
    for k in range(len(occ) + 1):
        subsets.extend(itertools.combinations(occ, k))
    subsets.sort()
    return [abstract_occurrences(f, target, s, fresh) for s in subsets]


def rename_hole(ab: Abstraction, avoid: Iterable[str]) -> Abstraction:
    """Same abstraction with a hole variable outside ``avoid``."""
    avoid = set(avoid)
    if ab.hole not in avoid:
        return ab
    new = fresh_var(avoid | free_vars(ab.skeleton))
    return Abstraction(subst(ab.skeleton, ab.hole, Var(new)), new)


# ----------------------------------------------------------- term orders


@dataclass(frozen=True)
class TermOrder:
    name: str
    less: Callable[[Term, Term], bool]

    def __call__(self, a: Term, b: Term) -> bool:
        return self.less(a, b)


SIZE = TermOrder("size", lambda a, b: term_size(a) < term_size(b))

_ORDERS: dict[str, TermOrder] = {"size": SIZE}


def random_term(rng: random.Random, depth: int = 3, vars_=("a", "b", "c"), funs=(("f", 1), ("g", 2))) -> Term:
    if depth == 0 or rng.random() < 0.4:
        return Var(rng.choice(vars_))
    sym, ar = rng.choice(funs)
    return Fun(sym, tuple(random_term(rng, depth - 1, vars_, funs) for _ in range(ar)))


def register_order(name: str, less: Callable[[Term, Term], bool], probes: int = 200, seed: int = 0) -> TermOrder:
    """Register a term order after probing it for irreflexivity on random terms."""
    rng = random.Random(seed)
    for _ in range(probes):
        t = random_term(rng)
        if less(t, t):
            raise ValueError(f"order {name!r} is reflexive on {t}")
    order = TermOrder(name, less)
    _ORDERS[name] = order
    return order


def get_order(name: str) -> TermOrder:
    try:
        return _ORDERS[name]
    except KeyError:
        raise KeyError(f"unknown term order {name!r}") from None
