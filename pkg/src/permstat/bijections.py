"""Statistic-transporting bijections on 231-, 312- and 321-avoiders.

* ``phi`` on Av(231) carries (foze'', Lrmax) to (inv, Lrmax).
* ``psi`` (Simion-Schmidt) from Av(312) to Av(321) carries foze'' to inv.
* ``theta_prime`` on 231-avoiders starting with n, extended blockwise to
  ``theta`` on Av(231), turns Asc into Atop and Des into Dbot.
* ``conjugate_cr`` is theta conjugated by reverse-complement, acting on Av(312).

Every public map validates its avoidance precondition unless called with
``check=False``; bulk callers that already enumerate the right class skip it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ContainmentError
from .patterns import contains_classical
from .perm import (
    Permutation,
    as_perm,
    decompose_231,
    decreasing,
    direct_sum,
    reverse_complement,
    skew_sum,
)
from .setstats import asc_set, atop, idr_partition, lrmax

__all__ = [
    "ConsistentPair",
    "phi",
    "phi_inverse",
    "psi",
    "psi_inverse",
    "extract_consistent_pair",
    "extract_consistent_pair_atop",
    "build_asc_perm",
    "build_atop_perm",
    "theta_prime",
    "theta_prime_inverse",
    "prime_blocks",
    "theta",
    "theta_inverse",
    "conjugate_cr",
    "conjugate_cr_inverse",
    "BIJECTIONS",
]

_EMPTY = Permutation(())
_ONE = Permutation((1,))


def _require_avoids(pattern: tuple[int, ...], p: Permutation) -> None:
    if contains_classical(pattern, p):
        raise ContainmentError("".join(map(str, pattern)), p)


def _require_prime(p: Permutation) -> None:
    _require_avoids((2, 3, 1), p)
    if p and p[0] != len(p):
        raise ContainmentError("231", p, f"{p} does not begin with its largest entry {len(p)}")


# --- phi ---------------------------------------------------------------


def _phi(p: Permutation) -> Permutation:
    if not p:
        return _EMPTY
    alpha, beta = decompose_231(p)
    if not alpha:
        return direct_sum(_ONE, _phi(beta))
    gamma, delta = decompose_231(_phi(alpha))
    head = skew_sum(_ONE, direct_sum(skew_sum(_ONE, delta), gamma))
    return direct_sum(head, _phi(beta))


def _phi_inverse(t: Permutation) -> Permutation:
    if not t:
        return _EMPTY
    a, rest = decompose_231(t)
    if not a:
        return direct_sum(_ONE, _phi_inverse(rest))
    # a = (1 ⊖ delta) ⊕ gamma, and phi(alpha) = (1 ⊖ gamma) ⊕ delta
    delta, gamma = decompose_231(a)
    alpha = _phi_inverse(direct_sum(skew_sum(_ONE, gamma), delta))
    return direct_sum(skew_sum(_ONE, alpha), _phi_inverse(rest))


def phi(p, check: bool = True) -> Permutation:
    """Recursive bijection on Av_n(231) with inv(phi(p)) = foze''(p).

    >>> str(phi("321654"))
    '312645'
    """
    p = as_perm(p)
    if check:
        _require_avoids((2, 3, 1), p)
    return _phi(p)


def phi_inverse(p, check: bool = True) -> Permutation:
    p = as_perm(p)
    if check:
        _require_avoids((2, 3, 1), p)
    return _phi_inverse(p)


# --- psi (Simion-Schmidt) ------------------------------------------------


def psi(p, check: bool = True) -> Permutation:
    """Keep left-to-right maxima in place, write the other entries increasingly."""
    p = as_perm(p)
    if check:
        _require_avoids((3, 1, 2), p)
    fixed = dict(lrmax(p))
    rest = iter(sorted(v for i, v in enumerate(p, start=1) if i not in fixed))
    return Permutation._trusted(fixed[i] if i in fixed else next(rest) for i in range(1, len(p) + 1))


def psi_inverse(p, check: bool = True) -> Permutation:
    """Inverse of ``psi``: keep left-to-right maxima, then fill each other slot
    greedily with the largest unused value below the current maximum."""
    p = as_perm(p)
    if check:
        _require_avoids((3, 2, 1), p)
    fixed = dict(lrmax(p))
    unused = sorted(set(p) - set(fixed.values()))
    out = []
    current = 0
    for i in range(1, len(p) + 1):
        if i in fixed:
            current = fixed[i]
            out.append(current)
            continue
        # unused is ascending; take the largest value below current
        k = len(unused) - 1
        while unused[k] > current:
            k -= 1
        out.append(unused.pop(k))
    return Permutation._trusted(out)


# --- consistent pairs and theta' -------------------------------------------


@dataclass(frozen=True)
class ConsistentPair:
    """Run sizes ``c`` and markers ``m`` describing a 231-avoider that starts with n."""

    c: tuple[int, ...]
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "m", tuple(self.m))

    @property
    def k(self) -> int:
        return len(self.c)

    @property
    def n(self) -> int:
        return sum(self.c)

    def violations(self) -> list[str]:
        c, m = self.c, self.m
        k = len(c)
        bad = []
        if k == 0 or len(m) != k:
            return ["c and m must be non-empty and of equal length"]
        if any(x < 1 for x in c + m):
            bad.append("entries must be positive")
        if c[0] < 2:
            bad.append("c1 must be at least 2")
        n = sum(c)
        if m[0] != n:
            bad.append(f"m1 must equal n = {n}")
        if any(m[i] <= m[i + 1] for i in range(k - 1)):
            bad.append("m must be strictly decreasing")
        for ell in range(1, k):
            if m[ell] < sum(c[ell:]) + 1:
                bad.append(f"m{ell + 1} = {m[ell]} is below c{ell + 1}+...+c{k}+1")
        return bad

    @property
    def is_consistent(self) -> bool:
        return not self.violations()

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ValueError(f"inconsistent pair c={self.c}, m={self.m}: " + "; ".join(bad))


def extract_consistent_pair(p, check: bool = True) -> ConsistentPair:
    """Run sizes from the i.d.r. partition and m = (n, ascents in decreasing order)."""
    p = as_perm(p)
    n = len(p)
    if n <= 1:
        raise ValueError("consistent pairs are only defined for n >= 2")
    if check:
        _require_prime(p)
    c = tuple(len(b) for b in idr_partition(p))
    m = (n,) + tuple(sorted(asc_set(p), reverse=True))
    return ConsistentPair(c, m)


def extract_consistent_pair_atop(p, check: bool = True) -> ConsistentPair:
    """Same as ``extract_consistent_pair`` with ascent tops in place of ascents."""
    p = as_perm(p)
    n = len(p)
    if n <= 1:
        raise ValueError("consistent pairs are only defined for n >= 2")
    if check:
        _require_prime(p)
    c = tuple(len(b) for b in idr_partition(p))
    m = (n,) + tuple(sorted(atop(p), reverse=True))
    return ConsistentPair(c, m)


def _build_asc(c: tuple[int, ...], m: tuple[int, ...]) -> list[int]:
    if len(c) == 1:
        return list(range(m[0], 0, -1))
    ck, mk = c[-1], m[-1]
    sigma = _build_asc(c[:-1], tuple(x - ck for x in m[:-1]))
    cut = mk - ck
    shifted = [v + ck for v in sigma]
    return shifted[:cut] + list(range(ck, 0, -1)) + shifted[cut:]


def build_asc_perm(cp: ConsistentPair) -> Permutation:
    """The unique 231-avoider starting with n whose run sizes are ``c`` and whose
    ascent set is {m2, ..., mk}.

    >>> str(build_asc_perm(ConsistentPair((4, 2, 1), (7, 6, 5))))
    '7653124'
    """
    cp.validate()
    return Permutation._trusted(_build_asc(cp.c, cp.m))


def _build_atop(c: tuple[int, ...], m: tuple[int, ...]) -> list[int]:
    k = len(c)
    n = m[0]
    if k == 1:
        return list(range(n, 0, -1))
    markers = set(m[1:])
    # smallest j (0-based here) whose value band avoids every marker
    j = None
    for jj in range(k):
        tail = sum(c[jj + 1 :])
        if not any(tail < x <= tail + c[jj] for x in markers):
            j = jj
            break
    assert j is not None, f"no admissible run for c={c}, m={m}"
    cj = c[j]
    tail = sum(c[j + 1 :])
    bound = n - sum(c[:j])
    larger = [idx for idx, x in enumerate(m) if x > bound]
    assert larger, f"no marker above {bound} for c={c}, m={m}"
    p_idx = min(larger, key=lambda idx: m[idx])
    m_sub = tuple(x - cj for x in m[:p_idx]) + m[p_idx + 1 :]
    c_sub = c[:j] + c[j + 1 :]
    sigma = _build_atop(c_sub, m_sub)
    shifted = [v + cj if v > tail else v for v in sigma]
    target = m[p_idx]
    assert target in shifted, f"value {target} missing after shifting"
    slot = shifted.index(target)
    run = list(range(tail + cj, tail, -1))
    return shifted[:slot] + run + shifted[slot:]


def build_atop_perm(cp: ConsistentPair) -> Permutation:
    """The unique 231-avoider starting with n whose run sizes are ``c`` and whose
    ascent-top set is {m2, ..., mk}.

    >>> str(build_atop_perm(ConsistentPair((4, 2, 1), (7, 6, 5))))
    '7163254'
    """
    cp.validate()
    return Permutation._trusted(_build_atop(cp.c, cp.m))


def theta_prime(p, check: bool = True) -> Permutation:
    """Bijection on 231-avoiders starting with n turning Asc into Atop.

    Length 0 and 1 are fixed points (no consistent pair exists for them).
    """
    p = as_perm(p)
    if check:
        _require_prime(p)
    if len(p) <= 1:
        return p
    return build_atop_perm(extract_consistent_pair(p, check=False))


def theta_prime_inverse(p, check: bool = True) -> Permutation:
    p = as_perm(p)
    if check:
        _require_prime(p)
    if len(p) <= 1:
        return p
    return build_asc_perm(extract_consistent_pair_atop(p, check=False))


def prime_blocks(p) -> list[Permutation]:
    """Split a 231-avoider into its direct-sum blocks, each starting with its maximum.

    A block starting at position s ends at position p_s.
    """
    p = as_perm(p)
    blocks = []
    s = 0
    while s < len(p):
        end = p[s]
        if end <= s:
            raise ContainmentError("231", p, f"{p} has no direct-sum block starting at position {s + 1}")
        blocks.append(Permutation._trusted(v - s for v in p[s:end]))
        s = end
    return blocks


def _blockwise(p: Permutation, f: Callable[[Permutation], Permutation]) -> Permutation:
    out: list[int] = []
    for block in prime_blocks(p):
        shift = len(out)
        out.extend(v + shift for v in f(block))
    return Permutation._trusted(out)


def theta(p, check: bool = True) -> Permutation:
    """Apply ``theta_prime`` to every direct-sum block of a 231-avoider.

    >>> str(theta("7653124"))
    '7163254'
    """
    p = as_perm(p)
    if check:
        _require_avoids((2, 3, 1), p)
    return _blockwise(p, lambda b: theta_prime(b, check=False))


def theta_inverse(p, check: bool = True) -> Permutation:
    p = as_perm(p)
    if check:
        _require_avoids((2, 3, 1), p)
    return _blockwise(p, lambda b: theta_prime_inverse(b, check=False))


def conjugate_cr(p, check: bool = True) -> Permutation:
    """c∘r ∘ theta ∘ c∘r on Av(312); turns Des into Dtop - 1."""
    p = as_perm(p)
    if check:
        _require_avoids((3, 1, 2), p)
    return reverse_complement(theta(reverse_complement(p), check=False))


def conjugate_cr_inverse(p, check: bool = True) -> Permutation:
    p = as_perm(p)
    if check:
        _require_avoids((3, 1, 2), p)
    return reverse_complement(theta_inverse(reverse_complement(p), check=False))


BIJECTIONS: dict[str, Callable[..., Permutation]] = {
    "phi": phi,
    "phi-inv": phi_inverse,
    "psi": psi,
    "psi-inv": psi_inverse,
    "theta": theta,
    "theta-inv": theta_inverse,
    "theta-prime": theta_prime,
    "theta-prime-inv": theta_prime_inverse,
    "cr-conjugate": conjugate_cr,
    "cr-conjugate-inv": conjugate_cr_inverse,
}
