import pytest

from oracles import catalan
from permstat.claims import (
    CLAIMS,
    SUITES,
    Verifier,
    check_construction_uniqueness,
    claims_for,
    consistent_pairs,
    verify,
)
from permstat.patterns import StatisticDef, registry
from permstat.perm import Permutation


def test_manifest_shape():
    labels = [c.label for c in CLAIMS]
    assert len(labels) == len(set(labels))
    assert len(claims_for("table1")) == 12
    assert len(claims_for("table2")) == 20
    assert len(claims_for("all")) == len(CLAIMS)
    for suite in SUITES:
        assert claims_for(suite)
    with pytest.raises(KeyError):
        claims_for("thm9")


def test_everything_holds_for_small_n():
    results = verify("all", 6)
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]


def test_negative_control_reports_its_witness():
    (r,) = verify("negative-controls", 8)
    assert r.passed and "n=4" in r.detail
    (r,) = verify("negative-controls", 3)
    assert not r.passed


def _mutated(name, formula):
    pool = registry()
    pool[name] = StatisticDef.from_text(name, formula, pool[name].display)
    return pool


def test_mutating_foze2_breaks_the_transport():
    # drop one of the two copies of [31]2
    pool = _mutated("foze2", "[23]1 + [31]2 + [21]")
    results = verify("thm1", 6, stats=pool)
    failed = [r for r in results if not r.passed]
    assert failed
    assert failed[0].counterexample is not None
    assert "FAIL" in failed[0].line()


def test_mutating_makl_breaks_table2():
    pool = _mutated("makl", "1[32] + 2[31] + [31]2 + [21]")
    results = verify("table2", 6, stats=pool)
    assert not all(r.passed for r in results)


def test_dist_failure_has_witness_in_the_right_class():
    pool = _mutated("sist", "[13]2 + 2[13] + [21]")
    (r,) = [r for r in verify("cor-other", 6, stats=pool) if "sist/213" in r.label]
    assert not r.passed
    assert r.counterexample is not None


def test_consistent_pairs_enumeration():
    for n in range(2, 9):
        pairs = list(consistent_pairs(n))
        assert all(cp.is_consistent and cp.n == n for cp in pairs)
        # one pair per member of the class starting with n
        assert len(pairs) == catalan(n - 1)
        assert check_construction_uniqueness(n) is None


def test_verifier_caches_members():
    v = Verifier(5)
    assert v.members("231", 4) is v.members("231", 4)
    assert v.members("231'", 4) == [Permutation(p) for p in ("4123", "4132", "4213", "4312", "4321")]


def test_every_detectable_term_deletion_is_caught():
    # Dropping a term must break some claim, unless the term cannot occur in
    # any class the statistic is checked on: [13]2 and 1[32] are themselves
    # occurrences of 132, and bast' / foze' only appear over Av(132).
    base = registry()
    survivors = []
    for name, st in base.items():
        if name == "des":
            continue
        for i in range(len(st.terms)):
            pool = dict(base)
            pool[name] = StatisticDef(name, st.terms[:i] + st.terms[i + 1 :], st.display)
            if all(r.passed for r in verify("all", 5, stats=pool)):
                survivors.append((name, str(st.terms[i])))
    assert survivors == [("bast1", "[13]2"), ("foze1", "1[32]")]
    for name, _ in survivors:
        used_on = {c.class_a for c in CLAIMS if hasattr(c, "stats_b") and name in c.stats_a}
        used_on |= {c.class_b for c in CLAIMS if hasattr(c, "stats_b") and name in c.stats_b}
        assert used_on == {"132"}
