"""Brute-force reference implementations used as test oracles.

Nothing here imports the counting, enumeration or bijection code under test;
only plain tuples and itertools.
"""

from itertools import combinations, permutations


def std(seq):
    ranks = sorted(seq)
    return tuple(ranks.index(v) + 1 for v in seq)


def naive_count(values, adjacent, host):
    """Occurrences of a vincular pattern by enumerating every index tuple."""
    k = len(values)
    total = 0
    for idx in combinations(range(len(host)), k):
        # adjacency i glues letters i and i+1 (1-based), i.e. idx[i-1], idx[i]
        if all(idx[i] == idx[i - 1] + 1 for i in adjacent):
            if std([host[i] for i in idx]) == tuple(values):
                total += 1
    return total


def naive_contains(pattern, host):
    k = len(pattern)
    return any(std([host[i] for i in idx]) == tuple(pattern) for idx in combinations(range(len(host)), k))


def all_perms(n):
    return [tuple(p) for p in permutations(range(1, n + 1))]


def naive_class(pattern, n):
    """Av_n(pattern) by filtering S_n, in lexicographic order."""
    return [p for p in all_perms(n) if not naive_contains(pattern, p)]


def inversions(p):
    return sum(1 for i, j in combinations(range(len(p)), 2) if p[i] > p[j])


def major_index(p):
    return sum(i for i in range(1, len(p)) if p[i - 1] > p[i])


def compose(p, q):
    """(p o q)(i) = p(q(i)), 1-based one-line notation."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def catalan(n):
    from math import comb

    return comb(2 * n, n) // (n + 1)


def direct_sum_splittings(p):
    """All ways to cut ``p`` into consecutive factors whose values are intervals
    starting right after the previous factor (the direct-sum factorizations)."""
    n = len(p)
    cuts = [i for i in range(1, n) if set(p[:i]) == set(range(1, i + 1))]
    out = []
    for r in range(len(cuts) + 1):
        for chosen in combinations(cuts, r):
            bounds = (0,) + chosen + (n,)
            out.append([tuple(v - bounds[t] for v in p[bounds[t] : bounds[t + 1]]) for t in range(len(bounds) - 1)])
    return out
