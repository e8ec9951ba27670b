"""Derivation documents: a small header followed by one indented tree.

    # comment
    format 1
    system cf.EQ12
    order size
    let t = f(a)
    hypothesis a=b => c=d
    eq2 hole=v skel="v=$t" r="a" s="b" |- b=a => b=f(a)
      refl term="$t" |- => f(a)=f(a)

Each tree line is ``<rule> <key=value ...> |- <sequent>``; children sit two
spaces deeper than their parent.  ``$name`` expands an abbreviation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, fields
from typing import Optional

from . import rules as R
from .derivation import Derivation, nodes
from .parser import ParseError, Parser
from .syntax import Abstraction, Sequent, eq
from .systems import SystemSpec, UnknownSystem, get_system

FORMAT_VERSION = 1

_TERM_FIELDS = {"term", "r", "s"}
_INT_FIELDS = {"index", "target", "left_ant", "left_suc"}
_SPLIT = ("left_ant", "left_suc")
_ANNOT = re.compile(r'\s*([a-z_]+)=(?:"([^"]*)"|([^\s"]+))')
_ABBREV = re.compile(r"\$([A-Za-z_][A-Za-z0-9_]*)")


@dataclass
class Document:
    derivation: Derivation
    system: Optional[SystemSpec] = None
    system_name: Optional[str] = None
    order: Optional[str] = None
    abbreviations: dict = field(default_factory=dict)
    hypotheses: tuple = ()


class _Reader:
    def __init__(self, text: str):
        self.p = Parser()
        self.abbrev: dict[str, str] = {}
        self.text = text

    def expand(self, s: str, line: int, col: int) -> str:
        def sub(m):
            name = m.group(1)
            if name not in self.abbrev:
                raise ParseError(line, col + m.start() + 1, f"unknown abbreviation ${name}")
            return self.abbrev[name]
        return _ABBREV.sub(sub, s)

    # -- header
    def header(self, key: str, rest: str, line: int, col: int, doc: dict) -> None:
        if key == "format":
            if rest.strip() != str(FORMAT_VERSION):
                raise ParseError(line, col, f"unsupported format version {rest.strip()!r}")
            doc["format"] = True
        elif key == "system":
            doc["system_name"] = rest.strip()
            doc["system_line"] = (line, col)
        elif key == "order":
            from .syntax import get_order
            try:
                get_order(rest.strip())
            except KeyError as e:
                raise ParseError(line, col, f"unknown order {rest.strip()!r}") from e
            doc["order"] = rest.strip()
        elif key == "let":
            m = re.match(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.+)$", rest)
            if not m:
                raise ParseError(line, col, "expected 'let name = text'")
            name, body = m.group(1), self.expand(m.group(2).strip(), line, col)
            try:
                self.p.term(body, line)
                self.abbrev[name] = body
            except ParseError:
                self.p.formula(body, line, col)
                self.abbrev[name] = f"({body})"
            doc["abbreviations"][name] = m.group(2).strip()
        elif key == "hypothesis":
            doc["hypotheses"].append(self.p.sequent(self.expand(rest, line, col), line, col))
        else:
            raise ParseError(line, col, f"unknown header line {key!r}")

    # -- tree lines
    def node_line(self, body: str, line: int, col0: int):
        m = re.match(r"([a-z0-9]+)", body)
        if not m:
            raise ParseError(line, col0 + 1, "expected a rule name")
        name = m.group(1)
        cls = R.RULES_BY_NAME.get(name)
        if cls is None:
            raise ParseError(line, col0 + 1, f"unknown rule {name!r}")
        pos = m.end()
        annots: dict[str, tuple[str, int]] = {}
        while True:
            rest = body[pos:]
            if rest.lstrip().startswith("|-"):
                pos += len(rest) - len(rest.lstrip()) + 2
                break
            a = _ANNOT.match(body, pos)
            if not a:
                raise ParseError(line, col0 + pos + 1, "expected key=value or '|-'")
            val = a.group(2) if a.group(2) is not None else a.group(3)
            annots[a.group(1)] = (val, col0 + a.start(1) + 1)
            pos = a.end()
        seq_text = self.expand(body[pos:], line, col0 + pos)
        conclusion = self.p.sequent(seq_text, line, col0 + pos)
        return cls, annots, conclusion

    def build_rule(self, cls, annots, conclusion, kids, line, col0):
        names = {f.name for f in fields(cls)}
        kw = {}
        hole = skel = None
        for key, (val, col) in annots.items():
            val = self.expand(val, line, col)
            if key == "hole":
                hole = val
                continue
            if key == "skel":
                skel = (val, col)
                continue
            if key not in names:
                raise ParseError(line, col, f"rule {cls.name} has no annotation {key!r}")
            if key in _TERM_FIELDS:
                kw[key] = self.p.term(val, line, col)
            elif key in _INT_FIELDS:
                if not val.isdigit():
                    raise ParseError(line, col, f"{key} must be a natural number")
                kw[key] = int(val)
            elif key == "eigen":
                if not re.fullmatch(r"[a-z][A-Za-z0-9_']*", val):
                    raise ParseError(line, col, "eigen must be a variable name")
                kw[key] = val
            elif key == "sequent":
                kw[key] = self.p.sequent(val, line, col)
            else:
                kw[key] = self.p.formula(val, line, col)
        if "ab" in names:
            if hole is None or skel is None:
                raise ParseError(line, col0 + 1, f"{cls.name} needs hole= and skel=")
            kw["ab"] = Abstraction(self.p.formula(skel[0], line, skel[1]), hole)
            for k in ("r", "s"):
                if k not in kw:
                    raise ParseError(line, col0 + 1, f"{cls.name} needs {k}=")
        elif hole is not None or skel is not None:
            raise ParseError(line, col0 + 1, f"rule {cls.name} takes no abstraction")
        # axioms may leave their annotation implicit
        if cls is R.LogicalAxiom and "formula" not in kw and conclusion.ant:
            kw["formula"] = conclusion.ant[0]
        if cls is R.ReflAxiom and "term" not in kw and conclusion.suc and hasattr(conclusion.suc[0], "args"):
            kw["term"] = conclusion.suc[0].args[0] if conclusion.suc[0].args else None
        if cls is R.Hypothesis and "sequent" not in kw:
            kw["sequent"] = conclusion
        rule = cls(**kw)
        if any(k in names and k not in kw for k in _SPLIT) and len(kids) == cls.arity:
            try:
                rule = rule.fit(*(k.conclusion for k in kids))
            except (R.SchemaMismatch, IndexError):
                pass
        return rule


def parse_document(text: str) -> Document:
    """Parse a document; raises ``ParseError`` with line and column on the first error."""
    rd = _Reader(text)
    doc = {"abbreviations": {}, "hypotheses": []}
    stack: list[tuple[int, list]] = []  # (indent, [cls, annots, conclusion, kids, line, col])
    root = None
    in_tree = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "\t" in raw[: len(raw) - len(raw.lstrip())]:
            raise ParseError(lineno, 1, "indent with spaces, not tabs")
        indent = len(raw) - len(raw.lstrip(" "))
        word = stripped.split(None, 1)[0]
        if not in_tree and indent == 0 and word in ("format", "system", "order", "let", "hypothesis"):
            rest = stripped[len(word):]
            rd.header(word, rest, lineno, len(word) + 1, doc)
            continue
        if indent % 2:
            raise ParseError(lineno, indent + 1, "indentation must be a multiple of two spaces")
        depth = indent // 2
        if not in_tree:
            if depth:
                raise ParseError(lineno, 1, "the root must not be indented")
            in_tree = True
        elif depth == 0:
            raise ParseError(lineno, 1, "a document holds a single derivation tree")
        if depth > len(stack):
            raise ParseError(lineno, indent + 1, "child indented more than one level below its parent")
        cls, annots, conclusion = rd.node_line(raw[indent:], lineno, indent)
        entry = [cls, annots, conclusion, [], lineno, indent]
        while len(stack) > depth:
            _close(rd, stack)
        if stack:
            stack[-1][1][3].append(entry)
        stack.append((depth, entry))
        if root is None:
            root = entry
    if root is None:
        raise ParseError(max(1, len(text.splitlines())), 1, "empty document: no derivation")
    while stack:
        _close(rd, stack)
    derivation = root[6]
    spec = None
    name = doc.get("system_name")
    if name is not None:
        try:
            spec = get_system(name)
        except (UnknownSystem, KeyError) as e:
            line, col = doc["system_line"]
            raise ParseError(line, col, str(e).strip("'\"")) from e
        if doc["hypotheses"]:
            spec = spec.with_hypotheses(*doc["hypotheses"])
    return Document(derivation, spec, name, doc.get("order"), doc["abbreviations"], tuple(doc["hypotheses"]))


def _close(rd: _Reader, stack) -> None:
    _, entry = stack.pop()
    cls, annots, conclusion, kids, line, col = entry
    built = [k[6] for k in kids]
    rule = rd.build_rule(cls, annots, conclusion, built, line, col)
    entry.append(Derivation(conclusion, rule, tuple(built)))


def parse(text: str) -> tuple[Derivation, Optional[SystemSpec]]:
    doc = parse_document(text)
    return doc.derivation, doc.system


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# ------------------------------------------------------------- printing


def _q(x) -> str:
    return f'"{x}"'


def _annotations(rule: R.Rule) -> list[str]:
    out = []
    for f in fields(rule):
        v = getattr(rule, f.name)
        if v is None:
            continue
        if f.name == "ab":
            out.append(f"hole={v.hole}")
            out.append(f"skel={_q(v.skeleton)}")
        elif f.name in _INT_FIELDS:
            out.append(f"{f.name}={v}")
        elif f.name == "eigen":
            out.append(f"eigen={v}")
        else:
            out.append(f"{f.name}={_q(v)}")
    return out


def format_derivation(d: Derivation) -> str:
    lines = []
    for path, x in nodes(d):
        ann = " ".join(_annotations(x.rule))
        head = x.rule.name + (" " + ann if ann else "")
        lines.append("  " * len(path) + f"{head} |- {x.conclusion}")
    return "\n".join(lines)


def print_document(d: Derivation, system: str | SystemSpec | None = None, order: str | None = None,
                   comment: str | None = None) -> str:
    """Text of a document that parses back to ``d``."""
    out = []
    if comment:
        out += [f"# {c}" for c in comment.splitlines()]
    out.append(f"format {FORMAT_VERSION}")
    hyps = []
    if system is not None:
        name = system if isinstance(system, str) else system.name
        out.append(f"system {name}")
        if not isinstance(system, str):
            hyps = list(system.hypotheses)
    if order:
        out.append(f"order {order}")
    for _, x in nodes(d):
        if isinstance(x.rule, R.Hypothesis) and x.rule.sequent not in hyps:
            hyps.append(x.rule.sequent)
    out += [f"hypothesis {h}" for h in hyps]
    out.append(format_derivation(d))
    return "\n".join(out) + "\n"


def same_tree(a: Derivation, b: Derivation) -> bool:
    """Structural equality of two derivations, without recursion."""
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        if x.conclusion != y.conclusion or x.rule != y.rule or len(x.premisses) != len(y.premisses):
            return False
        stack.extend(zip(x.premisses, y.premisses))
    return True
