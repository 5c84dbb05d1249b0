import pytest
from hypothesis import given, strategies as st

from oracles import all_perms, naive_class, naive_contains
from permstat.errors import UnknownStatisticError
from permstat.perm import Permutation, group_inverse, parse_perm, reverse_complement
from permstat.setstats import (
    SET_STATISTICS,
    asc_set,
    atop,
    dbot,
    des_set,
    dtop,
    dtop_minus_one,
    get_set_statistic,
    idr_partition,
    is_nested,
    lrmax,
    lrmaxl,
    lrminl,
    render,
    rlmaxl,
    rlmin,
    rlminl,
)

perms = st.integers(0, 9).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def test_examples():
    p = parse_perm("321654")
    assert des_set(p) == (1, 2, 4, 5)
    assert dtop(p) == (2, 3, 5, 6) and dbot(p) == (1, 2, 4, 5)
    assert asc_set(p) == (3,) and atop(p) == (6,)
    assert lrmax(p) == ((1, 3), (4, 6))
    assert rlmin(p) == ((3, 1), (6, 4))
    assert render(lrmax(p)) == "{(1,3),(4,6)}"
    assert render(des_set(p)) == "{1,2,4,5}"
    assert render(()) == "{}"
    assert dtop_minus_one(parse_perm("4365271")) == (3, 4, 5, 6)


def test_left_right_letter_sets():
    p = parse_perm("4365271")
    assert lrmaxl(p) == (4, 6, 7)
    assert lrminl(p) == (1, 2, 3, 4)
    assert rlmaxl(p) == (1, 7)
    assert rlminl(p) == (1,)


@pytest.mark.parametrize(
    "text, runs",
    [
        ("7615324", ((1, 2, 4, 7), (5, 6), (3,))),
        ("7132654", ((1, 5, 6, 7), (3, 4), (2,))),
        ("", ()),
        ("1", ((1,),)),
        ("123", ((3,), (2,), (1,))),
    ],
)
def test_idr_examples(text, runs):
    assert idr_partition(parse_perm(text)) == runs


def _descent_runs(q):
    """Maximal decreasing factors of q as sets of values of q's inverse."""
    runs, cur = [], [1]
    for i in range(2, len(q) + 1):
        if q[i - 2] > q[i - 1]:
            cur.append(i)
        else:
            runs.append(cur)
            cur = [i]
    if q:
        runs.append(cur)
    return runs


@given(perms)
def test_idr_are_descent_runs_of_inverse(p):
    inv = group_inverse(p)
    want = {frozenset(inv[i - 1] for i in run) for run in _descent_runs(inv)}
    blocks = idr_partition(p)
    assert {frozenset(b) for b in blocks} == want
    maxima = [max(b) for b in blocks]
    assert maxima == sorted(maxima, reverse=True)
    for b in blocks:
        vals = sorted(p[i - 1] for i in b)
        assert vals == list(range(vals[0], vals[0] + len(vals)))


def _runs_nested(blocks):
    return all(is_nested(blocks[b], blocks[a]) for a in range(len(blocks)) for b in range(a + 1, len(blocks)))


def _runs_value_ordered(p, blocks):
    vals = [[p[i - 1] for i in b] for b in blocks]
    return all(min(vals[a]) > max(vals[a + 1]) for a in range(len(vals) - 1))


def test_nested_characterises_231_avoidance():
    for n in range(8):
        for p in all_perms(n):
            blocks = idr_partition(p)
            avoids = not naive_contains((2, 3, 1), p)
            if avoids:
                assert _runs_nested(blocks), p
            assert avoids == (_runs_nested(blocks) and _runs_value_ordered(p, blocks)), p


def test_nestedness_alone_is_not_enough():
    # runs {1,3} and {2}: nested, but the later run carries the larger value
    p = parse_perm("231")
    blocks = idr_partition(p)
    assert blocks == ((1, 3), (2,))
    assert _runs_nested(blocks) and not _runs_value_ordered(p, blocks)


def test_idr_structure_on_231_avoiders():
    for n in range(1, 8):
        for p in naive_class((2, 3, 1), n):
            blocks = idr_partition(p)
            rest = list(enumerate(p, start=1))
            for block in blocks:
                # the next run is the set of right-to-left maxima of what is left
                best, rl = 0, []
                for i, v in reversed(rest):
                    if v > best:
                        rl.append(i)
                        best = v
                assert sorted(rl) == list(block)
                rest = [(i, v) for i, v in rest if i not in block]
            assert sorted(max(b) for b in blocks) == [i for i, _ in rlmin(p)]


def test_is_nested():
    assert is_nested((2, 3), (1, 4))
    assert not is_nested((1, 4), (2,))
    assert is_nested((5,), (1, 9))
    assert is_nested((1, 2, 4), (4, 7))


def test_property_one_under_cr():
    for n in range(8):
        for p in all_perms(n):
            q = reverse_complement(p)
            assert des_set(q) == tuple(sorted(n - i for i in des_set(p)))
            assert dtop(q) == tuple(sorted(n - i + 1 for i in dbot(p)))
            assert rlmin(q) == tuple(sorted((n - i + 1, n - j + 1) for i, j in lrmax(p)))
            assert lrminl(q) == tuple(sorted(n - i + 1 for i in rlmaxl(p)))
            assert lrmaxl(q) == tuple(sorted(n - i + 1 for i in rlminl(p)))


@given(perms)
def test_des_asc_complementary(p):
    n = len(p)
    assert sorted(des_set(p) + asc_set(p)) == list(range(1, n))
    assert len(dtop(p)) == len(dbot(p)) == len(des_set(p))


def test_dbot_complements_atop_when_starting_with_n():
    for n in range(1, 8):
        for p in all_perms(n):
            if p[0] == n:
                assert set(dbot(p)) | set(atop(p)) == set(range(1, n))
                assert not set(dbot(p)) & set(atop(p))


def test_lookup():
    assert get_set_statistic("Lrmax")[1] is lrmax
    assert get_set_statistic("lrmax")[0] == "Lrmax"
    assert get_set_statistic("DTOP-1")[0] == "Dtop-1"
    assert len(SET_STATISTICS) == 12
    with pytest.raises(UnknownStatisticError):
        get_set_statistic("Foo")
