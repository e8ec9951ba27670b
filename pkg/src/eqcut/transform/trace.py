"""Induction-measure log for recursive transformation passes."""
from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TraceEntry:
    step: str
    before: object
    after: object

    @property
    def decreasing(self) -> bool:
        return self.after < self.before


@dataclass
class TransformTrace:
    entries: list = field(default_factory=list)

    def bad(self) -> list[TraceEntry]:
        return [e for e in self.entries if not e.decreasing]

    def passes(self) -> set[str]:
        return {e.step for e in self.entries}

    def to_list(self) -> list[dict]:
        return [{"step": e.step, "before": _plain(e.before), "after": _plain(e.after)} for e in self.entries]


def _plain(m):
    return list(m) if isinstance(m, tuple) else m


_current: ContextVar[TransformTrace | None] = ContextVar("eqcut_trace", default=None)


@contextmanager
def recording(trace: TransformTrace | None = None):
    """Collect every recursive step made inside the block."""
    trace = trace if trace is not None else TransformTrace()
    token = _current.set(trace)
    try:
        yield trace
    finally:
        _current.reset(token)


def step(name: str, before, after) -> None:
    t = _current.get()
    if t is not None:
        t.entries.append(TraceEntry(name, before, after))


def active() -> bool:
    return _current.get() is not None
