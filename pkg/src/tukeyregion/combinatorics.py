"""Ridge and tuple bookkeeping for the breadth-first search.

Ridges are sorted tuples of ``p - 1`` zero-based observation indices.  The
visited structure is either a dense bitset addressed by the colexicographic
rank of a ridge or a plain hash set, chosen by a memory budget.
"""
from __future__ import annotations

import itertools
import math
import threading
from collections import deque
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DuplicateIndex

__all__ = [
    "Ridge",
    "make_ridge",
    "encode_tuple",
    "positional_code",
    "ridge_rank",
    "ridge_unrank",
    "subridges",
    "colex_combinations",
    "VisitedSet",
    "RidgeQueue",
]

Ridge = tuple  # sorted tuple of p - 1 ints

_CODE_BITS = 63
DEFAULT_BITSET_BUDGET = 2 ** 31


def make_ridge(indices: Iterable[int]) -> Ridge:
    """Canonical ridge: sorted tuple of distinct indices."""
    r = tuple(sorted(int(i) for i in indices))
    if len(set(r)) != len(r):
        raise DuplicateIndex(f"repeated index in {r}")
    return r


def positional_code(indices: Sequence[int], n: int) -> int:
    """The positional code ``j_1 + j_2 n + ... + j_p n^(p-1)`` of a sorted tuple.

    Indices are taken as given (pass 1-based indices to reproduce the
    published convention).  Python integers never overflow, so this is kept
    only for cross-checking.
    """
    return sum(int(j) * n ** k for k, j in enumerate(sorted(int(i) for i in indices)))


def encode_tuple(indices: Iterable[int], n: int, one_based: bool = False):
    """Set-canonical key of a tuple of distinct indices.

    Returns the positional code (an ``int``) when ``n ** p`` fits in a signed
    64-bit integer, otherwise the sorted tuple itself.  Two inputs give
    equal codes iff they are equal as sets.

    Examples
    --------
    >>> encode_tuple([5, 2, 7], 10, one_based=True)
    752
    """
    t = tuple(sorted(int(i) for i in indices))
    if len(set(t)) != len(t):
        raise DuplicateIndex(f"repeated index in {t}")
    lo = 1 if one_based else 0
    hi = n if one_based else n - 1
    if t and (t[0] < lo or t[-1] > hi):
        raise ValueError(f"index out of range in {t} for n={n}")
    if n ** len(t) < 2 ** _CODE_BITS:
        return positional_code(t, n)
    return t


def ridge_rank(ridge: Sequence[int], n: int | None = None) -> int:
    """Colexicographic rank of a sorted tuple, in ``[0, C(n, len(ridge)))``."""
    return sum(math.comb(c, i + 1) for i, c in enumerate(ridge))


def ridge_unrank(rank: int, size: int) -> Ridge:
    """Inverse of :func:`ridge_rank`."""
    out = []
    for i in range(size, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        out.append(c)
        rank -= math.comb(c, i)
    return tuple(reversed(out))


def subridges(tup: Sequence[int]) -> list[Ridge]:
    """The ``p`` sorted (p-1)-subsets of a sorted p-tuple, dropping each element in turn."""
    t = tuple(tup)
    return [t[:i] + t[i + 1:] for i in range(len(t))]


def colex_combinations(n: int, r: int) -> np.ndarray:
    """All sorted r-subsets of ``range(n)`` as rows, in colexicographic order."""
    if r == 0:
        return np.zeros((1, 0), dtype=np.intp)
    combos = np.fromiter(itertools.chain.from_iterable(itertools.combinations(range(n), r)),
                         dtype=np.intp, count=math.comb(n, r) * r).reshape(-1, r)
    # lexsort treats the last key as primary: last column first, then the rest
    order = np.lexsort(tuple(combos[:, i] for i in range(r)))
    return combos[order]


class VisitedSet:
    """Set of ridges with idempotent insertion.

    Parameters
    ----------
    n, size : int
        Observation count and ridge size (``p - 1``).
    budget_bits : int
        Use the dense bitset when ``C(n, size)`` does not exceed this.
    mode : {"auto", "bitset", "hash"}
    """

    def __init__(self, n: int, size: int, budget_bits: int = DEFAULT_BITSET_BUDGET,
                 mode: str = "auto"):
        self.n = n
        self.size = size
        self.capacity = math.comb(n, size)
        if mode == "auto":
            mode = "bitset" if self.capacity <= budget_bits else "hash"
        if mode not in ("bitset", "hash"):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        self._count = 0
        self._lock = threading.Lock()
        if mode == "bitset":
            self._bits = bytearray((self.capacity + 7) // 8)
            # comb table: _comb[i][c] = C(c, i + 1)
            self._comb = [[math.comb(c, i + 1) for c in range(n)] for i in range(size)]
        else:
            self._set: set = set()

    def _rank(self, ridge) -> int:
        comb = self._comb
        return sum(comb[i][c] for i, c in enumerate(sorted(ridge)))

    def __contains__(self, ridge) -> bool:
        if self.mode == "bitset":
            r = self._rank(ridge)
            return bool(self._bits[r >> 3] & (1 << (r & 7)))
        return tuple(sorted(ridge)) in self._set

    def add(self, ridge) -> bool:
        """Insert ``ridge``; return True if it was not present before."""
        with self._lock:
            if self.mode == "bitset":
                r = self._rank(ridge)
                byte, bit = r >> 3, 1 << (r & 7)
                if self._bits[byte] & bit:
                    return False
                self._bits[byte] |= bit
            else:
                key = tuple(sorted(ridge))
                if key in self._set:
                    return False
                self._set.add(key)
            self._count += 1
            return True

    def __len__(self) -> int:
        return self._count


class RidgeQueue:
    """FIFO queue of ridges."""

    def __init__(self, items: Iterable[Ridge] = ()):
        self._q: deque = deque(items)
        self.pushed = len(self._q)

    def push(self, ridge: Ridge) -> None:
        self._q.append(ridge)
        self.pushed += 1

    def pop(self) -> Ridge:
        return self._q.popleft()

    def pop_many(self, k: int) -> list[Ridge]:
        q = self._q
        return [q.popleft() for _ in range(min(k, len(q)))]

    def __len__(self) -> int:
        return len(self._q)

    def __bool__(self) -> bool:
        return bool(self._q)

    def __iter__(self) -> Iterator[Ridge]:
        return iter(self._q)
