"""Permutations in one-line notation and their structural operations.

Values are 1-based everywhere a user can see them.  A permutation is an
immutable tuple subclass, so it hashes, compares lexicographically and can be
used directly as a dictionary key.
"""

from __future__ import annotations

from typing import Iterable

from .errors import ContainmentError, PermutationError

__all__ = [
    "Permutation",
    "parse_perm",
    "identity",
    "decreasing",
    "reverse",
    "complement",
    "reverse_complement",
    "group_inverse",
    "direct_sum",
    "skew_sum",
    "decompose_231",
    "standardize",
]


class Permutation(tuple):
    """A rearrangement of 1..n, validated on construction.

    >>> Permutation([3, 1, 2])
    Permutation('312')
    >>> len(Permutation(()))
    0
    """

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        vals = tuple(int(v) for v in values)
        n = len(vals)
        if sorted(vals) != list(range(1, n + 1)):
            raise PermutationError(f"not a permutation of 1..{n}: {vals}")
        return tuple.__new__(cls, vals)

    @classmethod
    def _trusted(cls, values) -> "Permutation":
        # Internal constructor for values already known to be a permutation.
        return tuple.__new__(cls, values)

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


def parse_perm(text: str) -> Permutation:
    """Parse ``"3,2,1,6,5,4"``, ``"321654"`` or ``""`` (the empty permutation)."""
    text = text.strip()
    if not text:
        return Permutation(())
    try:
        if "," in text:
            values = [int(tok) for tok in text.split(",")]
        elif text.isdigit():
            values = [int(ch) for ch in text]
        else:
            raise ValueError(text)
    except ValueError:
        raise PermutationError(f"cannot parse permutation {text!r}") from None
    return Permutation(values)


def as_perm(p) -> Permutation:
    if isinstance(p, Permutation):
        return p
    if isinstance(p, str):
        return parse_perm(p)
    return Permutation(p)


def identity(n: int) -> Permutation:
    return Permutation._trusted(range(1, n + 1))


def decreasing(n: int) -> Permutation:
    return Permutation._trusted(range(n, 0, -1))


def standardize(values) -> Permutation:
    """Order-isomorphic permutation of a sequence of distinct numbers."""
    ranks = {v: i + 1 for i, v in enumerate(sorted(values))}
    return Permutation._trusted(ranks[v] for v in values)


def reverse(p: Permutation) -> Permutation:
    return Permutation._trusted(reversed(p))


def complement(p: Permutation) -> Permutation:
    n1 = len(p) + 1
    return Permutation._trusted(n1 - v for v in p)


def reverse_complement(p: Permutation) -> Permutation:
    """c(r(p)); the same as r(c(p)) and an involution."""
    n1 = len(p) + 1
    return Permutation._trusted(n1 - v for v in reversed(p))


def group_inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return Permutation._trusted(inv)


def direct_sum(a: Permutation, b: Permutation) -> Permutation:
    k = len(a)
    return Permutation._trusted(tuple(a) + tuple(v + k for v in b))


def skew_sum(a: Permutation, b: Permutation) -> Permutation:
    k = len(b)
    return Permutation._trusted(tuple(v + k for v in a) + tuple(b))


def decompose_231(p: Permutation, check: bool = False) -> tuple[Permutation, Permutation]:
    """Split a non-empty 231-avoider as ``(1 ⊖ alpha) ⊕ beta``.

    The split is positional: alpha is the block after the first entry up to
    position p[0], beta the rest.  Only the top-level block structure is
    validated unless ``check`` is set, in which case full 231-avoidance is
    verified as well.
    """
    if not p:
        raise PermutationError("cannot decompose the empty permutation")
    first = p[0]
    alpha = p[1:first]
    if any(v >= first for v in alpha):
        raise ContainmentError("231", p, f"{p} is not of the form (1⊖α)⊕β; it contains 231")
    if check:
        from .patterns import contains_classical

        if contains_classical((2, 3, 1), p):
            raise ContainmentError("231", p)
    beta = tuple(v - first for v in p[first:])
    return Permutation._trusted(alpha), Permutation._trusted(beta)
