import sys

from eqcut.deep import RECURSION_LIMIT

# The big-stack worker raises the interpreter-wide limit on first use; doing it
# up front keeps hypothesis from seeing the limit change inside a test.
sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
