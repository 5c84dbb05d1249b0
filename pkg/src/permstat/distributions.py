"""Avoidance classes, distribution tables and the equidistribution scanner."""

from __future__ import annotations

import csv
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Callable, Iterator, Mapping, Sequence

from .errors import BoundExceededError, PermutationError, UnknownStatisticError
from .patterns import (
    INTEGER_STATISTICS,
    StatisticDef,
    contains_classical,
    evaluate_many,
    get_statistic,
    registry,
)
from .perm import Permutation, as_perm, complement, reverse, reverse_complement
from .setstats import get_set_statistic, render

__all__ = [
    "HARD_MAX_N",
    "max_n",
    "check_bound",
    "AvoidanceClass",
    "enumerate_class",
    "parse_class",
    "DistributionTable",
    "resolve_stats",
    "distribution",
    "equidistributed",
    "Quadruple",
    "ScanReport",
    "scan_quadruples",
    "CLASSICAL_3",
]

HARD_MAX_N = 12
CLASSICAL_3: tuple[str, ...] = ("123", "132", "213", "231", "312", "321")


def max_n() -> int:
    """Safety bound on n; ``PERMSTAT_MAX_N`` may lower or raise it up to 12."""
    raw = os.environ.get("PERMSTAT_MAX_N")
    if raw is None:
        return HARD_MAX_N
    try:
        value = int(raw)
    except ValueError:
        return HARD_MAX_N
    return max(0, min(value, HARD_MAX_N))


def check_bound(n: int) -> None:
    bound = max_n()
    if n < 0:
        raise BoundExceededError(f"n must be non-negative, got {n}")
    if n > bound:
        raise BoundExceededError(f"n = {n} exceeds the safety bound {bound}")


# --- enumeration ---------------------------------------------------------


def _avoiders_3(pattern: tuple[int, int, int], n: int, first: int | None = None) -> Iterator[Permutation]:
    """Lexicographic prefix-pruned generation of Av_n(pattern) for a length-3 pattern."""
    a, b, c = pattern
    prefix: list[int] = []
    used = [False] * (n + 1)

    def closes_occurrence(z: int) -> bool:
        # does z complete an occurrence as the last letter?
        for j in range(1, len(prefix)):
            y = prefix[j]
            if (y < z) != (b < c):
                continue
            for x in prefix[:j]:
                if (x < y) == (a < b) and (x < z) == (a < c):
                    return True
        return False

    def extend() -> Iterator[Permutation]:
        if len(prefix) == n:
            yield Permutation._trusted(prefix)
            return
        choices = (first,) if not prefix and first is not None else range(1, n + 1)
        for v in choices:
            if used[v] or closes_occurrence(v):
                continue
            used[v] = True
            prefix.append(v)
            yield from extend()
            prefix.pop()
            used[v] = False

    yield from extend()


@dataclass(frozen=True)
class AvoidanceClass:
    """Av_n(pattern), or with ``prime`` the members that begin with n.

    ``pattern=None`` stands for the whole of S_n.
    """

    pattern: Permutation | None
    n: int
    prime: bool = False

    def __post_init__(self):
        if self.pattern is not None:
            object.__setattr__(self, "pattern", as_perm(self.pattern))
            if not self.pattern:
                raise PermutationError("the avoided pattern must be non-empty")

    @property
    def label(self) -> str:
        base = "all" if self.pattern is None else str(self.pattern)
        return f"{base}'" if self.prime else base

    def members(self) -> Iterator[Permutation]:
        n = self.n
        pat = () if self.pattern is None else tuple(self.pattern)
        if n == 0:
            yield Permutation(())
            return
        first = n if self.prime else None
        if self.pattern is None:
            for p in permutations(range(1, n + 1)):
                if first is None or p[0] == first:
                    yield Permutation._trusted(p)
            return
        if len(pat) == 3:
            yield from _avoiders_3(pat, n, first)
            return
        for p in permutations(range(1, n + 1)):
            if first is not None and p[0] != first:
                continue
            if not contains_classical(pat, p):
                yield Permutation._trusted(p)

    def __iter__(self) -> Iterator[Permutation]:
        return self.members()

    def size(self) -> int:
        return sum(1 for _ in self.members())


def enumerate_class(pattern, n: int, prime: bool = False) -> AvoidanceClass:
    """Lazy handle on the pattern avoiders of length ``n`` (lexicographic order)."""
    check_bound(n)
    return AvoidanceClass(None if pattern is None else as_perm(pattern), n, prime)


def parse_class(label: str, n: int) -> AvoidanceClass:
    """``"231"`` for Av_n(231), ``"231'"`` for its members starting with n,
    ``"all"`` for S_n."""
    label = label.strip()
    prime = label.endswith("'")
    base = label.rstrip("'")
    return enumerate_class(None if base == "all" else base, n, prime)


# --- statistics resolution -------------------------------------------------


@dataclass(frozen=True)
class _Resolved:
    names: tuple[str, ...]
    displays: tuple[str, ...]
    # per column: ("int", index into int_stats) or ("set", name)
    columns: tuple[tuple[str, object], ...]
    int_stats: tuple[StatisticDef, ...]

    def key(self, p: Sequence[int]) -> tuple:
        ints = evaluate_many(self.int_stats, p) if self.int_stats else ()
        out = []
        for kind, ref in self.columns:
            if kind == "int":
                out.append(ints[ref])
            else:
                out.append(get_set_statistic(ref)[1](p))
        return tuple(out)


def resolve_stats(names: Sequence[str], stats: Mapping[str, StatisticDef] | None = None) -> _Resolved:
    """Map user-facing names to evaluators; integer statistics win over set ones."""
    if isinstance(names, str):
        names = [names]
    if not names:
        raise UnknownStatisticError("no statistic given")
    pool = stats if stats is not None else registry()
    canon, displays, columns, ints = [], [], [], []
    for name in names:
        try:
            st = get_statistic(name, pool)
        except UnknownStatisticError:
            key, _ = get_set_statistic(name)
            canon.append(key)
            displays.append(key)
            columns.append(("set", key))
            continue
        canon.append(st.name)
        displays.append(st.display)
        columns.append(("int", len(ints)))
        ints.append(st)
    return _Resolved(tuple(canon), tuple(displays), tuple(columns), tuple(ints))


# --- distribution tables ---------------------------------------------------


def _render_key_part(v):
    return v if isinstance(v, int) else render(v)


@dataclass
class DistributionTable:
    """Joint value counts of some statistics over one class of permutations."""

    key_schema: tuple[str, ...]
    counts: dict[tuple, int]
    n: int
    class_label: str
    display_schema: tuple[str, ...] = field(default=())

    def __post_init__(self):
        self.key_schema = tuple(self.key_schema)
        if not self.display_schema:
            self.display_schema = self.key_schema

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def rows(self) -> list[tuple[tuple, int]]:
        return sorted(self.counts.items())

    def to_plain(self) -> str:
        header = "  ".join(self.display_schema) + "  count"
        lines = [f"# class Av_{self.n}({self.class_label}), {self.total} permutations", header]
        for key, count in self.rows():
            lines.append("  ".join(str(_render_key_part(v)) for v in key) + f"  {count}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(self.key_schema) + ["count"])
        for key, count in self.rows():
            writer.writerow([_render_key_part(v) for v in key] + [count])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "schema": [{"name": a, "display": d} for a, d in zip(self.key_schema, self.display_schema)],
            "n": self.n,
            "class": self.class_label,
            "counts": [[[_render_key_part(v) for v in key], count] for key, count in self.rows()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True) + "\n"

    def polynomial(self) -> dict[int, int]:
        """Coefficients of the q-polynomial for a single integer statistic."""
        if len(self.key_schema) != 1:
            raise ValueError("polynomial() needs a single statistic")
        return {key[0]: count for key, count in self.rows()}


def _count_chunk(resolved: _Resolved, perms: list[Permutation]) -> Counter:
    return Counter(resolved.key(p) for p in perms)


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i : i + size] for i in range(0, len(items), size)]


def distribution(
    cls: AvoidanceClass,
    stat_names: Sequence[str],
    stats: Mapping[str, StatisticDef] | None = None,
    workers: int = 1,
) -> DistributionTable:
    """Exact joint distribution of ``stat_names`` over ``cls``.

    With ``workers > 1`` members are split across processes; counters are
    summed, so the result does not depend on the split.
    """
    resolved = resolve_stats(stat_names, stats)
    if workers <= 1:
        counts = _count_chunk(resolved, list(cls.members()))
    else:
        members = list(cls.members())
        counts = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_count_chunk, [resolved] * workers, _chunks(members, workers)):
                counts.update(part)
    return DistributionTable(resolved.names, dict(counts), cls.n, cls.label, resolved.displays)


def equidistributed(t1: DistributionTable, t2: DistributionTable) -> bool:
    if len(t1.key_schema) != len(t2.key_schema):
        raise ValueError(f"schema arity mismatch: {t1.key_schema} vs {t2.key_schema}")
    if t1.n != t2.n:
        raise ValueError(f"tables are for different lengths: {t1.n} vs {t2.n}")
    return t1.counts == t2.counts


# --- scanner -----------------------------------------------------------------

_SYMMETRIES: dict[str, Callable[[Permutation], Permutation]] = {
    "r": reverse,
    "c": complement,
    "rc": reverse_complement,
}


@lru_cache(maxsize=None)
def _all_perms(upto: int) -> tuple[Permutation, ...]:
    out = []
    for n in range(upto + 1):
        out.extend(Permutation._trusted(p) for p in permutations(range(1, n + 1)))
    return tuple(out)


def _symmetry_partners(
    pool: Mapping[str, StatisticDef], upto: int = 6
) -> list[tuple[str, str, str]]:
    """Triples (st, g, st') with st ∘ g equal to st' on every permutation of length <= upto."""
    perms = _all_perms(upto)
    index = {p: i for i, p in enumerate(perms)}
    vectors = {name: tuple(evaluate_many((st,), p)[0] for p in perms) for name, st in pool.items()}
    by_vector: dict[tuple, str] = {}
    for name, vec in vectors.items():
        by_vector.setdefault(vec, name)
    out = []
    for name, vec in vectors.items():
        for g, transform in _SYMMETRIES.items():
            composed = tuple(vec[index[transform(p)]] for p in perms)
            partner = by_vector.get(composed)
            if partner is not None:
                out.append((name, g, partner))
    return out


@dataclass(frozen=True)
class Quadruple:
    st1: str
    st2: str
    sigma: str
    tau: str
    annotation: str = ""
    class_id: int = 0

    def key(self) -> tuple[str, str, str, str]:
        return (self.st1, self.st2, self.sigma, self.tau)

    def matches(self, st1: str, st2: str, sigma: str, tau: str) -> bool:
        """Equality up to swapping the two sides."""
        return self.key() in {(st1, st2, sigma, tau), (st2, st1, tau, sigma)}

    def __str__(self) -> str:
        return f"({self.st1},{self.st2};{self.sigma},{self.tau})"


@dataclass
class ScanReport:
    stats: tuple[str, ...]
    patterns: tuple[str, ...]
    n_max: int
    quadruples: list[Quadruple]
    symmetry_pairs: list[tuple[str, str, str]]

    def find(self, st1: str, st2: str, sigma: str, tau: str) -> Quadruple | None:
        st1, st2 = get_statistic(st1).name, get_statistic(st2).name
        for q in self.quadruples:
            if q.matches(st1, st2, sigma, tau):
                return q
        return None

    def class_members(self, class_id: int) -> list[Quadruple]:
        return [q for q in self.quadruples if q.class_id == class_id]

    def to_plain(self) -> str:
        lines = [
            f"# equidistributed quadruples (st1,st2;sigma,tau) for all n <= {self.n_max}",
            f"# statistics: {','.join(self.stats)}; patterns: {','.join(self.patterns)}",
        ]
        for q in self.quadruples:
            note = f"  [{q.annotation}]" if q.annotation else ""
            lines.append(f"{q}  class={q.class_id}{note}")
        lines.append(f"# {len(self.quadruples)} quadruples")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["st1", "st2", "sigma", "tau", "class", "annotation"])
        for q in self.quadruples:
            writer.writerow([q.st1, q.st2, q.sigma, q.tau, q.class_id, q.annotation])
        return buf.getvalue()

    def to_json(self) -> str:
        pool = registry()
        payload = {
            "n_max": self.n_max,
            "statistics": [{"name": s, "display": pool[s].display if s in pool else s} for s in self.stats],
            "patterns": list(self.patterns),
            "symmetries": [list(t) for t in self.symmetry_pairs],
            "quadruples": [
                {
                    "st1": q.st1,
                    "st2": q.st2,
                    "sigma": q.sigma,
                    "tau": q.tau,
                    "class": q.class_id,
                    "annotation": q.annotation,
                }
                for q in self.quadruples
            ],
        }
        return json.dumps(payload, ensure_ascii=False, sort_keys=True) + "\n"


def _signatures(
    stat_defs: tuple[StatisticDef, ...], pattern: str, n_max: int
) -> list[tuple]:
    """For one pattern: per statistic, the tuple of distributions for n = 1..n_max."""
    per_stat: list[list[tuple]] = [[] for _ in stat_defs]
    for n in range(1, n_max + 1):
        counters = [Counter() for _ in stat_defs]
        for p in AvoidanceClass(as_perm(pattern), n).members():
            for c, v in zip(counters, evaluate_many(stat_defs, p)):
                c[v] += 1
        for acc, c in zip(per_stat, counters):
            acc.append(tuple(sorted(c.items())))
    return [tuple(acc) for acc in per_stat]


def _sig_job(args):
    return _signatures(*args)


def scan_quadruples(
    stat_names: Sequence[str] | None = None,
    patterns: Sequence[str] = CLASSICAL_3,
    n_max: int = 8,
    stats: Mapping[str, StatisticDef] | None = None,
    workers: int = 1,
) -> ScanReport:
    """Every (st1, st2; sigma, tau) with st1 over Av_n(sigma) equidistributed
    with st2 over Av_n(tau) for all n <= n_max.

    Quadruples are grouped into classes: two quadruples share a class when
    each side of one is obtained from the matching side of the other by
    reverse, complement or reverse-complement together with a registry
    statistic equal to the transformed one.  The first quadruple of a class is
    unannotated; the others say which one they derive from.
    """
    check_bound(n_max)
    pool = dict(stats) if stats is not None else registry()
    if stat_names is None:
        stat_names = [s for s in INTEGER_STATISTICS if s in pool]
    stat_defs = tuple(get_statistic(s, pool) for s in stat_names)
    names = tuple(s.name for s in stat_defs)
    pats = tuple(str(as_perm(p)) for p in patterns)

    jobs = [(stat_defs, pat, n_max) for pat in pats]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            sig_lists = list(ex.map(_sig_job, jobs))
    else:
        sig_lists = [_sig_job(j) for j in jobs]

    # nodes ordered by (statistic order, pattern order)
    nodes = [(s, pat) for s in names for pat in pats]
    sig = {(s, pat): sig_lists[pi][si] for pi, pat in enumerate(pats) for si, s in enumerate(names)}

    # symmetry orbits of nodes via union-find
    parent = {node: node for node in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    symmetry_pairs = _symmetry_partners({s: pool[s] for s in names})
    for s, g, partner in symmetry_pairs:
        transform = _SYMMETRIES[g]
        for pat in pats:
            image = str(transform(as_perm(pat)))
            if image in pats:
                ra, rb = find((s, pat)), find((partner, image))
                if ra != rb:
                    parent[rb] = ra

    order = {node: i for i, node in enumerate(nodes)}
    by_sig: dict[tuple, list] = {}
    for node in nodes:
        by_sig.setdefault(sig[node], []).append(node)

    pairs = []
    for group in by_sig.values():
        for i, a in enumerate(group):
            for b in group[i:]:
                pairs.append((a, b) if order[a] <= order[b] else (b, a))
    pairs.sort(key=lambda ab: (order[ab[0]], order[ab[1]]))

    class_of: dict[frozenset, int] = {}
    first_of: dict[int, Quadruple] = {}
    quads = []
    for a, b in pairs:
        orbit_key = frozenset((find(a), find(b))) if find(a) != find(b) else frozenset((find(a),))
        cid = class_of.setdefault(orbit_key, len(class_of) + 1)
        if a == b:
            note = "trivial"
        elif find(a) == find(b):
            note = "symmetry"
        elif cid in first_of:
            note = f"derived from {first_of[cid]}"
        else:
            note = ""
        q = Quadruple(a[0], b[0], a[1], b[1], note, cid)
        first_of.setdefault(cid, q)
        quads.append(q)
    return ScanReport(names, pats, n_max, quads, symmetry_pairs)
