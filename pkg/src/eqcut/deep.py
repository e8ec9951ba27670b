"""Run deeply recursive passes on a thread with a large stack.

Transformations recurse along the height of a derivation, and exchange
chains make heights of several thousand common.
"""
from __future__ import annotations

import contextvars
import functools
import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 200_000

_local = threading.local()
_lock = threading.Lock()


def deep(fn):
    """Decorator: the outermost call runs on a big-stack worker thread."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_local, "inside", False):
            return fn(*args, **kwargs)
        ctx = contextvars.copy_context()
        box: dict = {}

        def target():
            _local.inside = True
            try:
                box["value"] = ctx.run(fn, *args, **kwargs)
            except BaseException as e:  # re-raised in the caller
                box["error"] = e

        with _lock:
            old_stack = threading.stack_size(STACK_BYTES)
            if sys.getrecursionlimit() < RECURSION_LIMIT:
                sys.setrecursionlimit(RECURSION_LIMIT)
            worker = threading.Thread(target=target, name=f"eqcut-{fn.__name__}")
            worker.start()
            threading.stack_size(old_stack)
        worker.join()
        if "error" in box:
            raise box["error"]
        return box["value"]

    return wrapper
