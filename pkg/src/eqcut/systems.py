"""Named calculi.

A name is ``[cf.]BASE[@flag...]`` where BASE is a registered system or a
brace list of rule names added to the pure equality base, for instance
``cf.{eq1,eq2l}``.  Flags: ``@singleton``, ``@atomic``,
``@nonlength(order)``, ``@semishort(order)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Optional

from .rules import RULES_BY_NAME

STRUCT_L = frozenset({"wl", "xl", "cl"})
STRUCT = STRUCT_L | {"wr", "xr", "cr"}
LOGIC = frozenset({"andl1", "andl2", "andr", "orl", "orr1", "orr2", "impl", "impr",
                   "notl", "notr", "alll", "allr", "exl", "exr"})
EQ_BASE = frozenset({"ax", "refl"}) | STRUCT_L


@dataclass(frozen=True)
class SystemSpec:
    name: str
    rules: frozenset
    #: "one" (exactly one succedent formula), "atmost1", or None (unbounded)
    succedent: Optional[str] = None
    atomic_eq_only: bool = False
    singleton_eq_only: bool = False
    cut_free: bool = False
    #: None, ("nonlength", order_name) or ("semishort", order_name)
    order: Optional[tuple] = None
    hypotheses: tuple = field(default=())

    @property
    def equational(self) -> bool:
        """True for the pure equality family (no logical rules)."""
        return not (self.rules & LOGIC)

    def allows(self, rule_name: str) -> bool:
        if rule_name == "cut" and self.cut_free:
            return False
        return rule_name in self.rules

    def with_hypotheses(self, *seqs) -> "SystemSpec":
        hs = self.hypotheses + tuple(seqs)
        return replace(self, hypotheses=hs, rules=self.rules | {"hyp"})


def _sys(name, rules, succedent=None):
    return SystemSpec(name, frozenset(rules), succedent)


_LJ = {"ax", "cut"} | STRUCT | LOGIC
_EQ = EQ_BASE | {"cut"}

REGISTRY: dict[str, SystemSpec] = {}


def register(spec: SystemSpec) -> SystemSpec:
    REGISTRY[spec.name] = spec
    return spec


for _prefix, _succ in (("LJ", "atmost1"), ("LK", None)):
    register(_sys(_prefix, _LJ, _succ))
    register(_sys(f"{_prefix}=", _LJ | {"refl", "eq1", "eq2"}, _succ))
    register(_sys(f"{_prefix}1=", _LJ | {"refl", "eqelim"}, _succ))
    register(_sys(f"{_prefix}N=", _LJ | {"refl", "cng"}, _succ))
    register(_sys(f"{_prefix}=_1", _LJ | {"refl", "eq1", "eq1l"}, _succ))
    register(_sys(f"{_prefix}=_2", _LJ | {"refl", "eq2", "eq2l"}, _succ))
    register(_sys(f"{_prefix}=_12", _LJ | {"refl", "eq1", "eq2", "eq1l", "eq2l"}, _succ))

register(_sys("EQ", _EQ | {"eq1", "eq2"}, "one"))
register(_sys("EQN", _EQ | {"cng"}, "one"))
register(_sys("EQ1", _EQ | {"eq1", "eq1l"}, "one"))
register(_sys("EQ2", _EQ | {"eq2", "eq2l"}, "one"))
register(_sys("EQ12", _EQ | {"eq1", "eq2", "eq1l", "eq2l"}, "one"))

_FLAG = re.compile(r"@(singleton|atomic|nonlength|semishort)(?:\(([^)]*)\))?")


class UnknownSystem(KeyError):
    pass


def get_system(name: str) -> SystemSpec:
    """Resolve a system name, including ``cf.`` prefixes, rule lists and flags."""
    text = name.strip()
    cut_free = text.startswith("cf.")
    core = text[3:] if cut_free else text
    at = core.find("@")
    base, flags = (core, "") if at < 0 else (core[:at], core[at:])
    if base.startswith("{") and base.endswith("}"):
        extra = {r.strip() for r in base[1:-1].split(",") if r.strip()}
        unknown = extra - set(RULES_BY_NAME)
        if unknown:
            raise UnknownSystem(f"unknown rule(s) {sorted(unknown)} in {name!r}")
        spec = SystemSpec(base, EQ_BASE | frozenset(extra) | {"cut"}, "one")
    elif base in REGISTRY:
        spec = REGISTRY[base]
    else:
        raise UnknownSystem(f"unknown system {name!r}")
    pos = 0
    while pos < len(flags):
        m = _FLAG.match(flags, pos)
        if not m:
            raise UnknownSystem(f"bad flag syntax in {name!r}")
        flag, arg = m.group(1), m.group(2)
        if flag == "singleton":
            spec = replace(spec, singleton_eq_only=True)
        elif flag == "atomic":
            spec = replace(spec, atomic_eq_only=True)
        else:
            if not arg:
                raise UnknownSystem(f"flag @{flag} needs an order, e.g. @{flag}(size)")
            from .syntax import get_order
            get_order(arg)
            spec = replace(spec, order=(flag, arg))
        pos = m.end()
    return replace(spec, name=text, cut_free=cut_free or spec.cut_free)
