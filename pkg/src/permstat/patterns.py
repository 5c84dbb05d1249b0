"""Vincular pattern occurrence counting and the statistic registry.

A vincular pattern is a classical pattern in which some pairs of neighbouring
letters are required to sit next to each other in the host.  In text form the
adjacent blocks are bracketed: ``[31]2`` has its first two letters adjacent,
``1[32]`` its last two.

Statistics are formal sums of such patterns and are stored as data so they can
be printed, diffed and mutated in tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .errors import PermutationError, UnknownStatisticError
from .perm import Permutation

__all__ = [
    "VincularPattern",
    "StatisticDef",
    "parse_pattern",
    "count_occurrences",
    "contains",
    "contains_classical",
    "evaluate",
    "evaluate_many",
    "registry",
    "get_statistic",
    "INTEGER_STATISTICS",
]


@dataclass(frozen=True)
class VincularPattern:
    """Pattern letters plus the 1-based positions ``i`` whose letters i, i+1 are glued."""

    values: tuple[int, ...]
    adjacent: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "adjacent", frozenset(self.adjacent))
        k = len(values)
        if k == 0 or sorted(values) != list(range(1, k + 1)):
            raise PermutationError(f"pattern letters must be a permutation of 1..k: {values}")
        if any(not 1 <= i < k for i in self.adjacent):
            raise PermutationError(f"adjacency positions out of range for length {k}: {sorted(self.adjacent)}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_classical(self) -> bool:
        return not self.adjacent

    def __str__(self) -> str:
        out = []
        k = len(self.values)
        i = 0
        while i < k:
            j = i
            while (j + 1) in self.adjacent:
                j += 1
            block = "".join(str(v) for v in self.values[i : j + 1])
            out.append(f"[{block}]" if j > i else block)
            i = j + 1
        return "".join(out)

    def __repr__(self) -> str:
        return f"VincularPattern({str(self)!r})"


_PATTERN_RE = re.compile(r"\[(\d+)\]|(\d)")


def parse_pattern(text: str) -> VincularPattern:
    """Parse ``"[31]2"``-style text; the inverse of ``str(pattern)``."""
    text = text.strip()
    values: list[int] = []
    adjacent: set[int] = set()
    pos = 0
    for m in _PATTERN_RE.finditer(text):
        if m.start() != pos:
            break
        pos = m.end()
        if m.group(1) is not None:
            block = m.group(1)
            if len(block) < 2:
                raise PermutationError(f"bracketed block needs two or more letters: {text!r}")
            start = len(values) + 1
            adjacent.update(range(start, start + len(block) - 1))
            values.extend(int(ch) for ch in block)
        else:
            values.append(int(m.group(2)))
    if pos != len(text) or not values:
        raise PermutationError(f"cannot parse vincular pattern {text!r}")
    return VincularPattern(tuple(values), frozenset(adjacent))


# --- counting --------------------------------------------------------------


def _count_general(pat: VincularPattern, host: Sequence[int]) -> int:
    """Backtracking over index tuples, pruning on order and adjacency."""
    values = pat.values
    k = len(values)
    n = len(host)
    adjacent = pat.adjacent
    chosen: list[int] = []
    total = 0

    def fits(j: int, v: int) -> bool:
        pv = values[j]
        for t, w in enumerate(chosen):
            if (values[t] < pv) != (w < v):
                return False
        return True

    def extend(j: int, start: int) -> None:
        nonlocal total
        if j == k:
            total += 1
            return
        if j > 0 and j in adjacent:
            candidates: Iterable[int] = (start,) if start < n else ()
        else:
            candidates = range(start, n - (k - j) + 1)
        for i in candidates:
            v = host[i]
            if fits(j, v):
                chosen.append(v)
                extend(j + 1, i + 1)
                chosen.pop()

    extend(0, 0)
    return total


def _between_test(c: int, a: int, b: int) -> Callable[[int, int, int], bool]:
    """Where letter c sits relative to letters a, b, as a test on host values."""
    lo, hi = min(a, b), max(a, b)
    if c < lo:
        return lambda z, x, y: z < x and z < y
    if c > hi:
        return lambda z, x, y: z > x and z > y
    return lambda z, x, y: min(x, y) < z < max(x, y)


@lru_cache(maxsize=None)
def _compiled(pat: VincularPattern) -> Callable[[Sequence[int]], int]:
    """Pick a counting routine for ``pat``; O(n^2) for every length-3 vincular shape."""
    values, adjacent, k = pat.values, pat.adjacent, len(pat.values)

    if k == 1:
        return len
    if k == 2:
        up = values[0] < values[1]
        if adjacent:
            return lambda h: sum(1 for i in range(len(h) - 1) if (h[i] < h[i + 1]) == up)
        return lambda h: sum(1 for i, j in combinations(range(len(h)), 2) if (h[i] < h[j]) == up)
    if k == 3:
        a, b, c = values
        if adjacent == {1, 2}:
            return lambda h: sum(
                1
                for i in range(len(h) - 2)
                if (h[i] < h[i + 1]) == (a < b)
                and (h[i + 1] < h[i + 2]) == (b < c)
                and (h[i] < h[i + 2]) == (a < c)
            )
        if adjacent == {1}:
            up = a < b
            where = _between_test(c, a, b)

            def count_front(h):
                total = 0
                for i in range(len(h) - 2):
                    x, y = h[i], h[i + 1]
                    if (x < y) == up:
                        total += sum(1 for z in h[i + 2 :] if where(z, x, y))
                return total

            return count_front
        if adjacent == {2}:
            up = b < c
            where = _between_test(a, b, c)

            def count_back(h):
                total = 0
                for j in range(1, len(h) - 1):
                    y, z = h[j], h[j + 1]
                    if (y < z) == up:
                        total += sum(1 for x in h[:j] if where(x, y, z))
                return total

            return count_back
    return lambda h: _count_general(pat, h)


def count_occurrences(pat: VincularPattern | str, host: Sequence[int]) -> int:
    """Number of occurrences of a vincular pattern in ``host``.

    >>> count_occurrences("[31]2", Permutation((3, 6, 1, 5, 2, 4)))
    4
    """
    if isinstance(pat, str):
        pat = parse_pattern(pat)
    if len(pat) > len(host):
        return 0
    return _compiled(pat)(host)


def contains_classical(pat: Sequence[int], host: Sequence[int]) -> bool:
    """True iff ``host`` contains the classical pattern ``pat``."""
    pat = tuple(pat)
    k = len(pat)
    n = len(host)
    if k > n:
        return False
    if k != 3:
        return _count_general(VincularPattern(pat), host) > 0
    a, b, c = pat
    # Fix the middle entry, then only extremal left/right candidates matter.
    for j in range(1, n - 1):
        m = host[j]
        left = [x for x in host[:j] if (x < m) == (a < b)]
        if not left:
            continue
        right = [z for z in host[j + 1 :] if (z > m) == (c > b)]
        if not right:
            continue
        if a < c:
            if min(left) < max(right):
                return True
        elif max(left) > min(right):
            return True
    return False


def contains(pat: Sequence[int] | VincularPattern | str, host: Sequence[int]) -> bool:
    if isinstance(pat, str):
        pat = parse_pattern(pat)
    if isinstance(pat, VincularPattern):
        if pat.is_classical:
            return contains_classical(pat.values, host)
        return count_occurrences(pat, host) > 0
    return contains_classical(pat, host)


# --- statistics ------------------------------------------------------------


@dataclass(frozen=True)
class StatisticDef:
    """A named formal sum of vincular patterns; repeated terms count twice."""

    name: str
    terms: tuple[VincularPattern, ...]
    display: str = ""

    def __post_init__(self):
        if not self.terms:
            raise ValueError(f"statistic {self.name!r} needs at least one term")
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.display:
            object.__setattr__(self, "display", self.name)

    @classmethod
    def from_text(cls, name: str, formula: str, display: str = "") -> "StatisticDef":
        terms = tuple(parse_pattern(t) for t in formula.split("+"))
        return cls(name, terms, display)

    @property
    def formula(self) -> str:
        return " + ".join(str(t) for t in self.terms)

    def __call__(self, p: Sequence[int]) -> int:
        return evaluate(self, p)


# alias, display name, terms -- transcribed term by term, duplicates kept
_REGISTRY_ROWS = [
    ("inv", "inv", "[23]1 + [31]2 + [32]1 + [21]"),
    ("maj", "maj", "1[32] + 2[31] + 3[21] + [21]"),
    ("mad", "mad", "2[31] + 2[31] + [31]2 + [21]"),
    ("mak", "mak", "1[32] + [31]2 + [32]1 + [21]"),
    ("makl", "makl", "1[32] + 2[31] + [32]1 + [21]"),
    ("bast", "bast", "[13]2 + [21]3 + [32]1 + [21]"),
    ("bast1", "bast′", "[13]2 + [31]2 + [32]1 + [21]"),
    ("bast2", "bast″", "1[32] + 3[12] + 3[21] + [21]"),
    ("foze", "foze", "[21]3 + 3[21] + [13]2 + [21]"),
    ("foze1", "foze′", "1[32] + 2[31] + 2[31] + [21]"),
    ("foze2", "foze″", "[23]1 + [31]2 + [31]2 + [21]"),
    ("sist", "sist", "[13]2 + [13]2 + 2[13] + [21]"),
    ("sist1", "sist′", "[13]2 + [13]2 + 2[31] + [21]"),
    ("sist2", "sist″", "[13]2 + 2[31] + 2[31] + [21]"),
    ("des", "des", "[21]"),
]

INTEGER_STATISTICS: tuple[str, ...] = tuple(row[0] for row in _REGISTRY_ROWS)


@lru_cache(maxsize=1)
def _builtin_registry() -> dict[str, StatisticDef]:
    return {
        alias: StatisticDef.from_text(alias, formula, display)
        for alias, display, formula in _REGISTRY_ROWS
    }


def registry() -> dict[str, StatisticDef]:
    """Fresh copy of the built-in statistics keyed by ASCII alias."""
    return dict(_builtin_registry())


def _normalize_name(name: str) -> str:
    name = name.strip()
    return (
        name.replace("″", "2")
        .replace("′", "1")
        .replace("''", "2")
        .replace('"', "2")
        .replace("'", "1")
    )


def get_statistic(name: str, stats: Mapping[str, StatisticDef] | None = None) -> StatisticDef:
    """Look up an integer statistic by alias (``foze2``) or display name (``foze″``)."""
    stats = _builtin_registry() if stats is None else stats
    key = _normalize_name(name)
    if key in stats:
        return stats[key]
    raise UnknownStatisticError(f"unknown statistic {name!r}")


def evaluate(stat: StatisticDef | str, p: Sequence[int]) -> int:
    """Sum of occurrence counts of the statistic's terms in ``p``."""
    if isinstance(stat, str):
        stat = get_statistic(stat)
    return sum(count_occurrences(t, p) for t in stat.terms)


def evaluate_many(stats: Iterable[StatisticDef], p: Sequence[int]) -> tuple[int, ...]:
    """Evaluate several statistics on one permutation, counting each distinct term once."""
    cache: dict[VincularPattern, int] = {}
    out = []
    for stat in stats:
        total = 0
        for t in stat.terms:
            c = cache.get(t)
            if c is None:
                c = cache[t] = count_occurrences(t, p)
            total += c
        out.append(total)
    return tuple(out)
