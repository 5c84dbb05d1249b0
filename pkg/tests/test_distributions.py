import json
from collections import Counter

import pytest

from oracles import all_perms, catalan, inversions, naive_class
from permstat.distributions import (
    CLASSICAL_3,
    AvoidanceClass,
    DistributionTable,
    check_bound,
    distribution,
    enumerate_class,
    equidistributed,
    max_n,
    parse_class,
    scan_quadruples,
)
from permstat.errors import BoundExceededError, PermutationError, UnknownStatisticError
from permstat.patterns import StatisticDef, registry
from permstat.perm import Permutation


@pytest.mark.parametrize("sigma", CLASSICAL_3)
def test_enumeration_matches_filter(sigma):
    pat = tuple(int(c) for c in sigma)
    for n in range(8):
        got = [tuple(p) for p in AvoidanceClass(Permutation(pat), n).members()]
        assert got == naive_class(pat, n)


@pytest.mark.parametrize("sigma", CLASSICAL_3)
def test_catalan_sizes(sigma):
    assert [enumerate_class(sigma, n).size() for n in range(10)] == [catalan(n) for n in range(10)]


def test_prime_class_and_other_patterns():
    got = [tuple(p) for p in enumerate_class("231", 5, prime=True)]
    assert got == [p for p in naive_class((2, 3, 1), 5) if p[0] == 5]
    assert len(got) == catalan(4)
    # length-4 patterns fall back to filtering
    assert enumerate_class("1234", 5).size() == 103
    assert enumerate_class(None, 4).size() == 24
    assert [tuple(p) for p in enumerate_class("12", 3)] == [(3, 2, 1)]
    assert list(enumerate_class("231", 0)) == [()]


def test_parse_class_labels():
    assert parse_class("231'", 4).label == "231'"
    assert parse_class("all", 3).size() == 6
    with pytest.raises(PermutationError):
        AvoidanceClass(Permutation(()), 3)


def test_bounds(monkeypatch):
    monkeypatch.delenv("PERMSTAT_MAX_N", raising=False)
    assert max_n() == 12
    with pytest.raises(BoundExceededError):
        check_bound(13)
    with pytest.raises(BoundExceededError):
        check_bound(-1)
    monkeypatch.setenv("PERMSTAT_MAX_N", "6")
    with pytest.raises(BoundExceededError):
        enumerate_class("231", 7)
    monkeypatch.setenv("PERMSTAT_MAX_N", "40")
    assert max_n() == 12


def test_inv_distribution_small():
    t = distribution(parse_class("231", 3), ["inv"])
    assert t.polynomial() == {0: 1, 1: 2, 2: 1, 3: 1}
    assert t.total == 5


def test_inv_distribution_against_oracle():
    for n in range(8):
        want = Counter(inversions(p) for p in naive_class((3, 1, 2), n))
        assert distribution(parse_class("312", n), ["inv"]).polynomial() == dict(want)


def test_output_formats_are_stable():
    t = distribution(parse_class("231", 3), ["inv", "Lrmax"])
    assert t.to_csv() == (
        "inv,Lrmax,count\n"
        '0,"{(1,1),(2,2),(3,3)}",1\n'
        '1,"{(1,1),(2,3)}",1\n'
        '1,"{(1,2),(3,3)}",1\n'
        '2,"{(1,3)}",1\n'
        '3,"{(1,3)}",1\n'
    )
    payload = json.loads(t.to_json())
    assert payload["schema"] == [{"name": "inv", "display": "inv"}, {"name": "Lrmax", "display": "Lrmax"}]
    assert payload["counts"][0] == [[0, "{(1,1),(2,2),(3,3)}"], 1]
    assert t.to_json() == distribution(parse_class("231", 3), ["inv", "Lrmax"]).to_json()
    plain = distribution(parse_class("231", 3), ["foze2"]).to_plain()
    assert plain.splitlines()[:2] == ["# class Av_3(231), 5 permutations", "foze″  count"]


def test_workers_do_not_change_results():
    cls = parse_class("132", 7)
    one = distribution(cls, ["maj", "Des"])
    two = distribution(cls, ["maj", "Des"], workers=2)
    assert one.counts == two.counts and one.to_csv() == two.to_csv()


def test_equidistributed_checks():
    a = distribution(parse_class("231", 6), ["maj"])
    b = distribution(parse_class("231", 6), ["makl"])
    assert equidistributed(a, b)
    assert not equidistributed(a, distribution(parse_class("231", 6), ["des"]))
    with pytest.raises(ValueError):
        equidistributed(a, distribution(parse_class("231", 6), ["maj", "des"]))
    with pytest.raises(ValueError):
        equidistributed(a, distribution(parse_class("231", 5), ["makl"]))
    with pytest.raises(ValueError):
        DistributionTable(("maj", "des"), {}, 0, "x").polynomial()


def test_unknown_and_custom_statistics():
    with pytest.raises(UnknownStatisticError):
        distribution(parse_class("231", 3), ["nope"])
    pool = registry()
    pool["asc"] = StatisticDef.from_text("asc", "[12]")
    t = distribution(parse_class("all", 4), ["asc"], stats=pool)
    # Eulerian numbers
    assert t.polynomial() == {0: 1, 1: 11, 2: 11, 3: 1}


@pytest.fixture(scope="module")
def small_scan():
    return scan_quadruples(["inv", "maj", "foze2", "makl", "des"], n_max=6)


def test_scan_contains_diagonal_and_known_rows(small_scan):
    for s in small_scan.stats:
        for sigma in small_scan.patterns:
            q = small_scan.find(s, s, sigma, sigma)
            assert q is not None and q.annotation == "trivial"
    assert small_scan.find("inv", "foze2", "231", "231") is not None
    assert small_scan.find("foze″", "inv", "312", "321") is not None
    assert small_scan.find("maj", "makl", "132", "231") is not None
    assert small_scan.find("inv", "des", "231", "231") is None


def test_scan_groups_symmetric_quadruples(small_scan):
    # inv is invariant under reverse-complement, which swaps 231 and 312
    a = small_scan.find("inv", "foze2", "231", "231")
    b = small_scan.find("inv", "foze2", "312", "231")
    assert a.class_id == b.class_id
    assert b.annotation.startswith("derived from") or a.annotation.startswith("derived from")
    assert ("inv", "rc", "inv") in small_scan.symmetry_pairs


def test_scan_is_sound(small_scan):
    pool = registry()
    for q in small_scan.quadruples:
        for n in range(1, 7):
            a = Counter(pool[q.st1](p) for p in naive_class(tuple(map(int, q.sigma)), n))
            b = Counter(pool[q.st2](p) for p in naive_class(tuple(map(int, q.tau)), n))
            assert a == b, q


def test_scan_outputs(small_scan):
    rows = small_scan.to_csv().splitlines()
    assert rows[0] == "st1,st2,sigma,tau,class,annotation"
    assert len(rows) == len(small_scan.quadruples) + 1
    payload = json.loads(small_scan.to_json())
    assert len(payload["quadruples"]) == len(small_scan.quadruples)
    assert small_scan.to_plain().rstrip().endswith(f"# {len(small_scan.quadruples)} quadruples")
