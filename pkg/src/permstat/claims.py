"""Claims manifest and the exhaustive checker behind ``permstat verify``.

Each claim is data: the statistics and classes being compared, or the
pointwise property a bijection must satisfy on every member of a class.  The
suites are just labelled selections of claims, so the README table, the CLI
and the tests all read the same list.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .bijections import (
    ConsistentPair,
    build_asc_perm,
    build_atop_perm,
    conjugate_cr,
    conjugate_cr_inverse,
    phi,
    phi_inverse,
    psi,
    psi_inverse,
    theta,
    theta_inverse,
    theta_prime,
)
from .distributions import AvoidanceClass, parse_class, resolve_stats
from .patterns import StatisticDef, contains_classical, count_occurrences, evaluate, registry
from .perm import Permutation
from .setstats import (
    asc_set,
    atop,
    dbot,
    des_set,
    dtop,
    idr_partition,
    lrmax,
    lrmaxl,
    lrminl,
    render,
    rlmaxl,
    rlmin,
    rlminl,
)

__all__ = [
    "DistClaim",
    "PointwiseClaim",
    "NegativeClaim",
    "LengthClaim",
    "ClaimResult",
    "CLAIMS",
    "SUITES",
    "DEFAULT_N_MAX",
    "Verifier",
    "verify",
    "claims_for",
]

DEFAULT_N_MAX = 9


@dataclass(frozen=True)
class DistClaim:
    """stats_a over class_a has the same (joint) distribution as stats_b over class_b."""

    label: str
    suites: tuple[str, ...]
    stats_a: tuple[str, ...]
    class_a: str
    stats_b: tuple[str, ...]
    class_b: str
    source: str


@dataclass(frozen=True)
class PointwiseClaim:
    """``check(p, stats)`` returns None or a failure message for every p in the class."""

    label: str
    suites: tuple[str, ...]
    class_label: str
    check: Callable[[Permutation, Mapping[str, StatisticDef]], str | None]
    source: str
    injective: Callable[[Permutation], Permutation] | None = None
    n_min: int = 0


@dataclass(frozen=True)
class NegativeClaim:
    """stats_a over class_a must differ from every alternative for some n <= n_max."""

    label: str
    suites: tuple[str, ...]
    stats_a: tuple[str, ...]
    class_a: str
    alternatives: tuple[tuple[tuple[str, ...], str], ...]
    source: str


@dataclass(frozen=True)
class LengthClaim:
    """``check(n, stats)`` inspects a whole length at once; None means it holds."""

    label: str
    suites: tuple[str, ...]
    check: Callable[[int, Mapping[str, StatisticDef]], str | None]
    source: str
    n_min: int = 0


@dataclass
class ClaimResult:
    label: str
    passed: bool
    n_range: tuple[int, int]
    description: str
    detail: str = ""
    counterexample: Permutation | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lo, hi = self.n_range
        text = f"{status}  {self.label:<34} n={lo}..{hi}  {self.description}"
        if self.detail:
            text += f"  ({self.detail})"
        return text


# --- pointwise checks ----------------------------------------------------------


def _st(stats, name, p) -> int:
    return evaluate(stats[name], p)


def _check_thm1(p, stats):
    q = phi(p, check=False)
    if len(q) != len(p) or contains_classical((2, 3, 1), q):
        return f"phi({p}) = {q} is not a 231-avoider of the same length"
    if p and q[0] != p[0]:
        return f"phi({p}) = {q} changes the first entry"
    if _st(stats, "inv", q) != _st(stats, "foze2", p):
        return f"inv(phi({p})) = {_st(stats, 'inv', q)} but foze2 = {_st(stats, 'foze2', p)}"
    if lrmax(q) != lrmax(p):
        return f"Lrmax changes under phi: {render(lrmax(p))} -> {render(lrmax(q))}"
    if phi_inverse(q, check=False) != p:
        return f"phi_inverse(phi({p})) != {p}"
    return None


def _check_thm2(p, stats):
    q = psi(p, check=False)
    if contains_classical((3, 2, 1), q):
        return f"psi({p}) = {q} contains 321"
    if _st(stats, "foze2", p) != _st(stats, "inv", q):
        return f"foze2({p}) = {_st(stats, 'foze2', p)} but inv(psi) = {_st(stats, 'inv', q)}"
    if lrmax(q) != lrmax(p):
        return f"Lrmax changes under psi: {render(lrmax(p))} -> {render(lrmax(q))}"
    if psi_inverse(q, check=False) != p:
        return f"psi_inverse(psi({p})) != {p}"
    return None


def _check_thm2_reduction(p, stats):
    lhs = _st(stats, "foze2", p)
    rhs = count_occurrences("[23]1", p) + count_occurrences("[21]", p)
    if lhs != rhs:
        return f"foze2({p}) = {lhs} but ([23]1 + [21]) = {rhs}"
    return None


def _check_thm4(p, stats):
    t = theta_prime(p, check=False)
    if len(t) != len(p) or (p and t[0] != len(p)) or contains_classical((2, 3, 1), t):
        return f"theta'({p}) = {t} leaves the class"
    sizes_p = [len(b) for b in idr_partition(p)]
    sizes_t = [len(b) for b in idr_partition(t)]
    if sizes_p != sizes_t:
        return f"i.d.r. sizes {sizes_p} -> {sizes_t}"
    if asc_set(p) != atop(t):
        return f"Asc({p}) = {render(asc_set(p))} but Atop({t}) = {render(atop(t))}"
    if des_set(p) != dbot(t):
        return f"Des({p}) = {render(des_set(p))} but Dbot({t}) = {render(dbot(t))}"
    if rlmaxl(p) != rlmaxl(t) or rlminl(p) != rlminl(t):
        return f"Rlmaxl/Rlminl not preserved by theta' on {p}"
    return None


def _check_prop5(p, stats):
    t = theta(p, check=False)
    if contains_classical((2, 3, 1), t):
        return f"theta({p}) = {t} contains 231"
    got = (dbot(t), lrmax(t), rlmaxl(t), rlminl(t))
    want = (des_set(p), lrmax(p), rlmaxl(p), rlminl(p))
    if got != want:
        return f"(Des,Lrmax,Rlmaxl,Rlminl)({p}) != (Dbot,Lrmax,Rlmaxl,Rlminl)({t})"
    if theta_inverse(t, check=False) != p:
        return f"theta_inverse(theta({p})) != {p}"
    return None


def _check_prop6(p, stats):
    s = conjugate_cr(p, check=False)
    if contains_classical((3, 1, 2), s):
        return f"cr-conjugate({p}) = {s} contains 312"
    shifted = tuple(v - 1 for v in dtop(s))
    if des_set(p) != shifted:
        return f"Des({p}) = {render(des_set(p))} but Dtop({s}) - 1 = {render(shifted)}"
    if (rlmin(p), lrminl(p), lrmaxl(p)) != (rlmin(s), lrminl(s), lrmaxl(s)):
        return f"(Rlmin,Lrminl,Lrmaxl) not preserved on {p} -> {s}"
    if conjugate_cr_inverse(s, check=False) != p:
        return f"inverse does not recover {p}"
    return None


def _check_makl_231(p, stats):
    if _st(stats, "makl", p) != sum(dbot(p)):
        return f"makl({p}) = {_st(stats, 'makl', p)} but sum(Dbot) = {sum(dbot(p))}"
    if _st(stats, "maj", p) != sum(des_set(p)):
        return f"maj({p}) = {_st(stats, 'maj', p)} but sum(Des) = {sum(des_set(p))}"
    return None


def _check_makl_312(p, stats):
    want = sum(v - 1 for v in dtop(p))
    if _st(stats, "makl", p) != want:
        return f"makl({p}) = {_st(stats, 'makl', p)} but sum(Dtop - 1) = {want}"
    return None


# --- the manifest ---------------------------------------------------------------


def _dist(label, suites, a, ca, b, cb, source):
    return DistClaim(label, tuple(suites), tuple(a.split(",")), ca, tuple(b.split(",")), cb, source)


def _row(table, st1, st2, s1, s2):
    label = f"{table}:({st1},{st2};{s1},{s2})"
    return _dist(label, (table,), st1, s1, st2, s2, f"{st1} over Av({s1}) ~ {st2} over Av({s2})")


CLAIMS: list = [
    # phi: foze'' -> inv on Av(231)
    PointwiseClaim(
        "thm1:phi-transport",
        ("thm1",),
        "231",
        _check_thm1,
        "inv(phi(p)) = foze''(p), Lrmax and first entry kept, phi^-1 o phi = id on Av(231)",
        injective=lambda p: phi(p, check=False),
    ),
    _dist("thm1:(foze2,Lrmax)~(inv,Lrmax)", ("thm1",), "foze2,Lrmax", "231", "inv,Lrmax", "231",
          "(foze'',Lrmax) and (inv,Lrmax) equidistributed over Av(231)"),
    # psi: foze'' on Av(312) -> inv on Av(321)
    PointwiseClaim(
        "thm2:psi-transport",
        ("thm2",),
        "312",
        _check_thm2,
        "foze''(p) = inv(psi(p)), Lrmax kept, psi(p) avoids 321, psi^-1 o psi = id on Av(312)",
        injective=lambda p: psi(p, check=False),
    ),
    PointwiseClaim(
        "thm2:foze2=[23]1+[21]",
        ("thm2",),
        "312",
        _check_thm2_reduction,
        "foze'' = [23]1 + [21] on Av(312)",
    ),
    _dist("thm2:(foze2,Lrmax)~(inv,Lrmax)", ("thm2",), "foze2,Lrmax", "312", "inv,Lrmax", "321",
          "(foze'',Lrmax) over Av(312) ~ (inv,Lrmax) over Av(321)"),
    # further foze'' equidistributions
    _dist("cor1:foze2/231~inv/312", ("cor1",), "foze2", "231", "inv", "312",
          "foze'' over Av(231) ~ inv over Av(312)"),
    _dist("cor-mad:foze2/312~mad/231", ("cor-mad",), "foze2", "312", "mad", "231",
          "foze'' over Av(312) ~ mad over Av(231)"),
    _dist("cor-mad:foze2/231~mad/312", ("cor-mad",), "foze2", "231", "mad", "312",
          "foze'' over Av(231) ~ mad over Av(312)"),
    _dist("cor-other.1:foze2/231~foze1/132", ("cor-other",), "foze2", "231", "foze1", "132",
          "foze'' over Av(231) ~ foze' over Av(132)"),
    _dist("cor-other.2:foze2/231~sist/213", ("cor-other",), "foze2", "231", "sist", "213",
          "foze'' over Av(231) ~ sist over Av(213)"),
    _dist("cor-other.2:foze2/312~sist/132", ("cor-other",), "foze2", "312", "sist", "132",
          "foze'' over Av(312) ~ sist over Av(132)"),
    _dist("cor-other.3:foze2/312~sist1/132", ("cor-other",), "foze2", "312", "sist1", "132",
          "foze'' over Av(312) ~ sist' over Av(132)"),
    _dist("cor-other.3:foze2/231~sist1/231", ("cor-other",), "foze2", "231", "sist1", "231",
          "foze'' over Av(231) ~ sist' over Av(231)"),
    _dist("cor-other.4:foze2/231~sist2/132", ("cor-other",), "foze2", "231", "sist2", "132",
          "foze'' over Av(231) ~ sist'' over Av(132)"),
    _dist("cor-other.4:foze2/312~sist2/231", ("cor-other",), "foze2", "312", "sist2", "231",
          "foze'' over Av(312) ~ sist'' over Av(231)"),
    # theta' on 231-avoiders starting with n
    PointwiseClaim(
        "thm4:theta'-transport",
        ("thm4",),
        "231'",
        _check_thm4,
        "theta' keeps i.d.r. sizes, Rlmaxl, Rlminl; Asc -> Atop; Des -> Dbot on Av'(231)",
        injective=lambda p: theta_prime(p, check=False),
    ),
    _dist("thm4:(Des,Rlmaxl,Rlminl)~(Dbot,Rlmaxl,Rlminl)", ("thm4",), "Des,Rlmaxl,Rlminl", "231'",
          "Dbot,Rlmaxl,Rlminl", "231'", "(Des,Rlmaxl,Rlminl) ~ (Dbot,Rlmaxl,Rlminl) on Av'(231)"),
    LengthClaim(
        "thm4:construction-uniqueness",
        ("thm4",),
        lambda n, stats: check_construction_uniqueness(n),
        "each consistent pair gives exactly one Av'(231) member per construction",
        n_min=2,
    ),
    # theta, blockwise extension to all of Av(231)
    PointwiseClaim(
        "prop5:theta-transport",
        ("prop5",),
        "231",
        _check_prop5,
        "theta: (Des,Lrmax,Rlmaxl,Rlminl) -> (Dbot,Lrmax,Rlmaxl,Rlminl) on Av(231)",
        injective=lambda p: theta(p, check=False),
    ),
    _dist("prop5:(Des,Lrmax,Rlmaxl,Rlminl)~(Dbot,...)", ("prop5",), "Des,Lrmax,Rlmaxl,Rlminl", "231",
          "Dbot,Lrmax,Rlmaxl,Rlminl", "231", "4-tuple equidistribution over Av(231)"),
    # the c.r-conjugate of theta on Av(312)
    PointwiseClaim(
        "prop6:cr-conjugate-transport",
        ("prop6",),
        "312",
        _check_prop6,
        "c.r.theta.c.r: Des -> Dtop-1, keeps (Rlmin,Lrminl,Lrmaxl) on Av(312)",
        injective=lambda p: conjugate_cr(p, check=False),
    ),
    _dist("prop6:(Des,Rlmin,Lrminl,Lrmaxl)~(Dtop-1,...)", ("prop6",), "Des,Rlmin,Lrminl,Lrmaxl", "312",
          "Dtop-1,Rlmin,Lrminl,Lrmaxl", "312", "4-tuple equidistribution over Av(312)"),
    # maj / makl
    PointwiseClaim("cor-maj-makl:makl=sum(Dbot)", ("cor-maj-makl",), "231", _check_makl_231,
                   "makl = sum(Dbot) and maj = sum(Des) on Av(231)"),
    PointwiseClaim("cor-maj-makl:makl=sum(Dtop-1)", ("cor-maj-makl",), "312", _check_makl_312,
                   "makl = sum(Dtop - 1) on Av(312)"),
    _dist("cor-maj-makl:maj/231~makl/231", ("cor-maj-makl",), "maj", "231", "makl", "231",
          "maj ~ makl over Av(231)"),
    _dist("cor-maj-makl:maj/132~makl/231", ("cor-maj-makl",), "maj", "132", "makl", "231",
          "maj over Av(132) ~ makl over Av(231)"),
    _dist("cor-maj-makl:maj/312~makl/312", ("cor-maj-makl",), "maj", "312", "makl", "312",
          "maj ~ makl over Av(312)"),
    _dist("cor-maj-makl:maj/213~makl/312", ("cor-maj-makl",), "maj", "213", "makl", "312",
          "maj over Av(213) ~ makl over Av(312)"),
    # foze'' equidistribution ledger
    _row("table1", "inv", "foze2", "231", "231"),
    _row("table1", "inv", "foze2", "321", "312"),
    _row("table1", "inv", "foze2", "312", "231"),
    _row("table1", "mad", "foze2", "231", "312"),
    _row("table1", "mad", "foze2", "312", "231"),
    _row("table1", "foze1", "foze2", "132", "231"),
    _row("table1", "sist", "foze2", "213", "231"),
    _row("table1", "sist", "foze2", "132", "312"),
    _row("table1", "sist1", "foze2", "132", "312"),
    _row("table1", "sist1", "foze2", "231", "231"),
    _row("table1", "sist2", "foze2", "132", "231"),
    _row("table1", "sist2", "foze2", "231", "312"),
    # makl / bast equidistribution ledger
    _row("table2", "maj", "makl", "231", "231"),
    _row("table2", "maj", "makl", "132", "231"),
    _row("table2", "maj", "makl", "312", "312"),
    _row("table2", "maj", "makl", "213", "312"),
    _row("table2", "mak", "makl", "132", "231"),
    _row("table2", "mak", "makl", "312", "231"),
    _row("table2", "mak", "makl", "213", "312"),
    _row("table2", "mak", "makl", "231", "312"),
    _row("table2", "bast1", "makl", "132", "231"),
    _row("table2", "bast2", "makl", "231", "312"),
    _row("table2", "foze", "makl", "132", "231"),
    _row("table2", "foze", "makl", "231", "312"),
    _row("table2", "bast", "makl", "213", "231"),
    _row("table2", "bast", "makl", "231", "312"),
    _row("table2", "mak", "bast", "132", "213"),
    _row("table2", "mak", "bast", "312", "213"),
    _row("table2", "mak", "bast", "213", "231"),
    _row("table2", "mak", "bast", "231", "231"),
    _row("table2", "bast2", "bast", "231", "231"),
    _row("table2", "foze", "bast", "231", "231"),
    # Negative control
    NegativeClaim(
        "negative:(foze2,mad)/312 vs 231",
        ("negative-controls",),
        ("foze2", "mad"),
        "312",
        ((("foze2", "mad"), "231"), (("mad", "foze2"), "231")),
        "(foze'',mad) over Av(312) differs from (foze'',mad) and (mad,foze'') over Av(231)",
    ),
]

SUITES: tuple[str, ...] = (
    "thm1",
    "thm2",
    "cor1",
    "cor-mad",
    "cor-other",
    "thm4",
    "prop5",
    "prop6",
    "cor-maj-makl",
    "table1",
    "table2",
    "negative-controls",
    "all",
)


def claims_for(suite: str) -> list:
    if suite not in SUITES:
        raise KeyError(suite)
    if suite == "all":
        return list(CLAIMS)
    return [c for c in CLAIMS if suite in c.suites]


# --- running ------------------------------------------------------------------


@dataclass
class Verifier:
    """Runs claims with cached class members and distribution counters."""

    n_max: int = DEFAULT_N_MAX
    stats: Mapping[str, StatisticDef] = field(default_factory=registry)
    _members: dict = field(default_factory=dict, repr=False)
    _dists: dict = field(default_factory=dict, repr=False)

    def members(self, label: str, n: int) -> list[Permutation]:
        key = (label, n)
        if key not in self._members:
            self._members[key] = list(parse_class(label, n).members())
        return self._members[key]

    def dist(self, stat_names: Sequence[str], label: str, n: int) -> Counter:
        key = (tuple(stat_names), label, n)
        if key not in self._dists:
            resolved = resolve_stats(list(stat_names), self.stats)
            self._dists[key] = Counter(resolved.key(p) for p in self.members(label, n))
        return self._dists[key]

    def _witness(self, stat_names, label, n, key) -> Permutation | None:
        resolved = resolve_stats(list(stat_names), self.stats)
        for p in self.members(label, n):
            if resolved.key(p) == key:
                return p
        return None

    def run(self, claim) -> ClaimResult:
        if isinstance(claim, PointwiseClaim):
            return self._run_pointwise(claim)
        if isinstance(claim, DistClaim):
            return self._run_dist(claim)
        if isinstance(claim, LengthClaim):
            return self._run_length(claim)
        return self._run_negative(claim)

    def _run_pointwise(self, claim: PointwiseClaim) -> ClaimResult:
        lo = claim.n_min
        for n in range(lo, self.n_max + 1):
            images = set()
            for p in self.members(claim.class_label, n):
                msg = claim.check(p, self.stats)
                if msg is not None:
                    return ClaimResult(claim.label, False, (lo, self.n_max), claim.source,
                                       f"n={n}: {msg}", p)
                if claim.injective is not None:
                    img = claim.injective(p)
                    if img in images:
                        return ClaimResult(claim.label, False, (lo, self.n_max), claim.source,
                                           f"n={n}: image {img} hit twice", p)
                    images.add(img)
        return ClaimResult(claim.label, True, (lo, self.n_max), claim.source)

    def _run_length(self, claim: LengthClaim) -> ClaimResult:
        for n in range(claim.n_min, self.n_max + 1):
            msg = claim.check(n, self.stats)
            if msg is not None:
                return ClaimResult(claim.label, False, (claim.n_min, self.n_max), claim.source, msg)
        return ClaimResult(claim.label, True, (claim.n_min, self.n_max), claim.source)

    def _run_dist(self, claim: DistClaim) -> ClaimResult:
        for n in range(0, self.n_max + 1):
            da = self.dist(claim.stats_a, claim.class_a, n)
            db = self.dist(claim.stats_b, claim.class_b, n)
            if da != db:
                diff = sorted(k for k in set(da) | set(db) if da[k] != db[k])
                key = diff[0]
                if da[key] > db[key]:
                    wit = self._witness(claim.stats_a, claim.class_a, n, key)
                else:
                    wit = self._witness(claim.stats_b, claim.class_b, n, key)
                shown = ",".join(str(v) if isinstance(v, int) else render(v) for v in key)
                detail = f"n={n}: value ({shown}) occurs {da[key]} vs {db[key]} times; witness {wit}"
                return ClaimResult(claim.label, False, (0, self.n_max), claim.source, detail, wit)
        return ClaimResult(claim.label, True, (0, self.n_max), claim.source)

    def _run_negative(self, claim: NegativeClaim) -> ClaimResult:
        for n in range(0, self.n_max + 1):
            da = self.dist(claim.stats_a, claim.class_a, n)
            if all(da != self.dist(stats, label, n) for stats, label in claim.alternatives):
                return ClaimResult(claim.label, True, (0, self.n_max), claim.source,
                                   f"inequality witnessed at n={n}")
        return ClaimResult(claim.label, False, (0, self.n_max), claim.source,
                           f"no length n <= {self.n_max} separates the distributions")


def verify(
    suite: str = "all",
    n_max: int = DEFAULT_N_MAX,
    stats: Mapping[str, StatisticDef] | None = None,
) -> list[ClaimResult]:
    verifier = Verifier(n_max, dict(stats) if stats is not None else registry())
    return [verifier.run(c) for c in claims_for(suite)]


def consistent_pairs(n: int) -> Iterable[ConsistentPair]:
    """All consistent pairs for a given n (any k), in a fixed order."""

    def compositions(total, first_min):
        if total == 0:
            yield ()
            return
        for first in range(first_min, total + 1):
            for rest in compositions(total - first, 1):
                yield (first,) + rest

    for c in compositions(n, 2):
        k = len(c)
        # m_2 > ... > m_k chosen from below n with m_l >= c_l + ... + c_k + 1
        def markers(ell, upper):
            if ell == k:
                yield ()
                return
            low = sum(c[ell:]) + 1
            for v in range(upper - 1, low - 1, -1):
                for rest in markers(ell + 1, v):
                    yield (v,) + rest

        for tail in markers(1, n):
            yield ConsistentPair(c, (n,) + tail)


def check_construction_uniqueness(n: int) -> str | None:
    """Both constructions hit exactly the members of Av'_n(231) with the
    prescribed (run sizes, Asc) and (run sizes, Atop), one member per pair."""
    cls = AvoidanceClass(Permutation((2, 3, 1)), n, prime=True)
    by_asc: dict = {}
    by_atop: dict = {}
    for p in cls.members():
        sizes = tuple(len(b) for b in idr_partition(p))
        by_asc.setdefault((sizes, asc_set(p)), []).append(p)
        by_atop.setdefault((sizes, atop(p)), []).append(p)
    pairs = list(consistent_pairs(n))
    if len(pairs) != len(by_asc) or len(pairs) != len(by_atop):
        return f"n={n}: {len(pairs)} consistent pairs but {len(by_asc)}/{len(by_atop)} distinct keys"
    for cp in pairs:
        key_m = tuple(sorted(cp.m[1:]))
        asc_hits = by_asc.get((cp.c, key_m), [])
        atop_hits = by_atop.get((cp.c, key_m), [])
        if asc_hits != [build_asc_perm(cp)]:
            return f"n={n}: pair {cp} gives {build_asc_perm(cp)} but class has {asc_hits}"
        if atop_hits != [build_atop_perm(cp)]:
            return f"n={n}: pair {cp} gives {build_atop_perm(cp)} but class has {atop_hits}"
    return None
