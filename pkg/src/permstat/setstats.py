"""Set-valued statistics and inverse descent runs.

Every set statistic is returned as a sorted tuple (positions, values, or
``(position, value)`` pairs for the point-set statistics), so that results
can be used verbatim as distribution keys.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import UnknownStatisticError

__all__ = [
    "des_set",
    "asc_set",
    "dtop",
    "dbot",
    "atop",
    "dtop_minus_one",
    "lrmax",
    "rlmin",
    "lrmaxl",
    "lrminl",
    "rlmaxl",
    "rlminl",
    "idr_partition",
    "is_nested",
    "render",
    "SET_STATISTICS",
    "get_set_statistic",
]


def des_set(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i in range(1, len(p)) if p[i - 1] > p[i])


def asc_set(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i in range(1, len(p)) if p[i - 1] < p[i])


def dtop(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(p[i - 1] for i in range(1, len(p)) if p[i - 1] > p[i]))


def dbot(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(p[i] for i in range(1, len(p)) if p[i - 1] > p[i]))


def atop(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(p[i] for i in range(1, len(p)) if p[i - 1] < p[i]))


def dtop_minus_one(p: Sequence[int]) -> tuple[int, ...]:
    """Descent tops shifted down by one, the set written ``Dtop - 1``."""
    return tuple(v - 1 for v in dtop(p))


def lrmax(p: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out = []
    best = 0
    for i, v in enumerate(p, start=1):
        if v > best:
            out.append((i, v))
            best = v
    return tuple(out)


def rlmin(p: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out = []
    best = len(p) + 1
    for i in range(len(p), 0, -1):
        v = p[i - 1]
        if v < best:
            out.append((i, v))
            best = v
    return tuple(reversed(out))


def lrmaxl(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(v for _, v in lrmax(p))


def lrminl(p: Sequence[int]) -> tuple[int, ...]:
    out = []
    best = len(p) + 1
    for v in p:
        if v < best:
            out.append(v)
            best = v
    return tuple(sorted(out))


def rlmaxl(p: Sequence[int]) -> tuple[int, ...]:
    out = []
    best = 0
    for v in reversed(p):
        if v > best:
            out.append(v)
            best = v
    return tuple(sorted(out))


def rlminl(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(v for _, v in rlmin(p))


def idr_partition(p: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Inverse descent runs of ``p``, ordered by decreasing largest position.

    Values v, v-1, v-2, ... stay in one run while their positions increase.

    >>> idr_partition((7, 6, 1, 5, 3, 2, 4))
    ((1, 2, 4, 7), (5, 6), (3,))
    """
    n = len(p)
    if n == 0:
        return ()
    pos = [0] * (n + 1)
    for i, v in enumerate(p, start=1):
        pos[v] = i
    blocks = []
    run = [pos[n]]
    for v in range(n - 1, 0, -1):
        if pos[v] > pos[v + 1]:
            run.append(pos[v])
        else:
            blocks.append(tuple(run))
            run = [pos[v]]
    blocks.append(tuple(run))
    return tuple(sorted(blocks, key=lambda b: b[-1], reverse=True))


def is_nested(inner: Sequence[int], outer: Sequence[int]) -> bool:
    """True iff no element of ``outer`` lies strictly between two elements of ``inner``."""
    if len(inner) < 2:
        return True
    lo, hi = min(inner), max(inner)
    return not any(lo < x < hi for x in outer)


def render(value) -> str:
    """Canonical text: integers as-is, sets as ``{a,b}``, point sets as ``{(i,v),...}``."""
    if isinstance(value, int):
        return str(value)
    parts = []
    for item in value:
        if isinstance(item, tuple):
            parts.append("(" + ",".join(map(str, item)) + ")")
        else:
            parts.append(str(item))
    return "{" + ",".join(parts) + "}"


SET_STATISTICS: dict[str, Callable[[Sequence[int]], tuple]] = {
    "Des": des_set,
    "Asc": asc_set,
    "Dtop": dtop,
    "Dbot": dbot,
    "Atop": atop,
    "Dtop-1": dtop_minus_one,
    "Lrmax": lrmax,
    "Rlmin": rlmin,
    "Lrmaxl": lrmaxl,
    "Lrminl": lrminl,
    "Rlmaxl": rlmaxl,
    "Rlminl": rlminl,
}

_LOWER = {k.lower(): k for k in SET_STATISTICS}


def get_set_statistic(name: str) -> tuple[str, Callable[[Sequence[int]], tuple]]:
    """Resolve a set statistic name; exact case first, then case-insensitively."""
    if name in SET_STATISTICS:
        return name, SET_STATISTICS[name]
    key = _LOWER.get(name.lower())
    if key is None:
        raise UnknownStatisticError(f"unknown statistic {name!r}")
    return key, SET_STATISTICS[key]
