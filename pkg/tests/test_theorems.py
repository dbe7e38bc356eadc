"""Verification suite: honest passes, fabricated failures, hit persistence."""

from fractions import Fraction

import pytest

from quadunitary.factoring import factor_element
from quadunitary.rings import K, DomainError, ring
from quadunitary.search import (
    CheckpointError,
    SearchConfig,
    iter_sector_elements,
    run_search,
)
from quadunitary.theorems import (
    CHECK_IDS,
    Hit,
    check_thm_2_2,
    check_thm_2_3,
    check_thm_2_4,
    check_thm_2_5,
    check_thm_2_6,
    check_zeta,
    discover_hits,
    g_map,
    load_hits,
    run_check,
)
from quadunitary.udf import i_star, sigma_star_int


def test_g_map_frozen_values():
    r1 = ring(-1)
    assert g_map(1, r1) == r1.element(1)
    assert g_map(5, r1) == r1.element(3, 4)  # (2+i)^2
    assert g_map(6, r1) == r1.element(6)  # 2 ramified, 3 inert
    assert g_map(25, r1) == r1.element(24, 7)  # (2+i)^4 = -7+24i, rotated to the sector
    r7 = ring(-7)
    g2 = g_map(2, r7)
    assert g2 == r7.element(-2, 1)
    assert g2.norm() == 4


def test_g_map_preserves_absolute_value():
    for d in K:
        r = ring(d)
        for n in range(1, 300):
            gz = g_map(n, r)
            assert gz.norm() == n * n, (d, n)
    with pytest.raises(DomainError):
        g_map(0, ring(-1))


def test_g_map_index_identity():
    # i_star(g(n), 1) = sigma_star(n) / n, exactly
    for d in (-1, -7, -163):
        r = ring(d)
        for n in range(1, 200):
            value = i_star(g_map(n, r), 1)
            assert value.is_rational
            assert value.as_fraction() == Fraction(sigma_star_int(n), n), (d, n)


def test_g_map_multiplicative_on_coprime():
    r = ring(-11)
    for a, b in ((4, 9), (5, 8), (7, 27), (25, 49)):
        assert g_map(a * b, r) == g_map(a, r) * g_map(b, r)


def test_discover_hits_contains_known_hits():
    r = ring(-1)
    hits = discover_hits(r, (1, 2), (2, 3, 4, 5, 6), 10_000)
    keyed = {(h.n, h.z.a, h.z.b): h.t for h in hits}
    assert keyed[(2, 3, 9)] == 2
    assert keyed[(2, 9, 3)] == 2
    assert keyed[(2, 30, 0)] == 2
    order = [(h.n, h.z.norm(), h.z.a, h.z.b) for h in hits]
    assert order == sorted(order)


def test_thm_2_2_honest_pass_all_rings():
    for d in K:
        report = check_thm_2_2(ring(d), max_norm=10_000)
        assert report.passed, (d, report.violations)
        assert report.ring_d == d
        for w in report.witnesses:
            assert w["norm"] % 2 == 0


def test_thm_2_2_flags_fabricated_odd_hit():
    r = ring(-1)
    bad = [Hit(1, Fraction(2), r.element(3))]
    report = check_thm_2_2(r, hits=bad)
    assert not report.passed
    assert report.violations[0]["reason"] == "odd norm"
    assert report.checked == 1


def test_thm_2_3_honest_pass():
    report = check_thm_2_3(max_norm=10_000)
    assert report.passed
    assert report.checked >= 3  # the three known hits are in range
    for w in report.witnesses:
        assert w["odd_part_primes"] == w["gamma"] + w["v2_of_t"]


def test_thm_2_3_worked_example():
    r = ring(-1)
    report = check_thm_2_3(hits=[Hit(2, Fraction(2), r.element(30))])
    assert report.passed and report.checked == 1
    w = report.witnesses[0]
    assert w["gamma"] == 2
    assert w["two_exponent"] == 1
    assert w["v2_of_t"] == 1
    assert w["odd_part_primes"] == 3


def test_thm_2_3_flags_count_mismatch():
    r = ring(-1)
    report = check_thm_2_3(hits=[Hit(2, Fraction(4), r.element(30))])
    assert not report.passed
    assert report.violations[0]["reason"] == "prime count mismatch"


def test_thm_2_3_skips_fractional_targets():
    r = ring(-1)
    report = check_thm_2_3(hits=[Hit(2, Fraction(5, 2), r.element(30))])
    assert report.checked == 0
    assert report.vacuous
    assert any("skipped 1" in note for note in report.notes)


def test_thm_2_4_honest_pass():
    report = check_thm_2_4(max_norm=3000)
    assert report.passed
    assert report.checked == sum(1 for _ in iter_sector_elements(ring(-3), 1, 3000))
    assert report.violations == []


def test_thm_2_5_honest_passes():
    for d in (-1, -2, -7):
        report = check_thm_2_5(ring(d), max_norm=10_000)
        assert report.passed, (d, report.violations)


def test_thm_2_5_flags_fabricated_hits():
    r1 = ring(-1)
    # odd norm, coprime to 3
    report = check_thm_2_5(r1, hits=[Hit(2, Fraction(2), r1.element(3, 2))])
    assert not report.passed
    assert "norm is odd" in report.violations[0]["reasons"]
    # odd adic exponent of the even prime in d=-2
    r2 = ring(-2)
    z = r2.element(0, 5)  # sqrt(-2) * 5, norm 50
    assert z.norm() == 50
    report = check_thm_2_5(r2, hits=[Hit(2, Fraction(2), z)])
    assert not report.passed
    assert any("odd" in reason for reason in report.violations[0]["reasons"])


def test_thm_2_5_skips_norms_divisible_by_3():
    r = ring(-1)
    report = check_thm_2_5(r, hits=[Hit(2, Fraction(2), r.element(3, 9))])
    assert report.vacuous
    assert any("skipped 1" in note for note in report.notes)


def test_thm_2_6_unitary_perfect_numbers():
    report = check_thm_2_6(Fraction(2), bound=1000)
    assert report.passed
    assert report.witnesses[0]["members"] == [6, 60, 90]
    assert report.checked == 3 * len(K)


def test_thm_2_6_other_ratio():
    report = check_thm_2_6(Fraction(3, 2), bound=100)
    assert report.passed
    assert 2 in report.witnesses[0]["members"]
    with pytest.raises(DomainError):
        check_thm_2_6(Fraction(1), bound=10)


def test_zeta_check():
    report = check_zeta()
    assert report.passed
    assert report.checked == 4
    assert len(report.witnesses) == 4
    for w in report.witnesses:
        assert w["passed"]


def test_report_shapes():
    report = check_zeta()
    doc = report.to_json_dict()
    assert doc["schema_version"] == 1
    assert set(doc) == {
        "schema_version",
        "check",
        "statement",
        "ring",
        "population",
        "checked",
        "vacuous",
        "violations",
        "witnesses",
        "notes",
        "passed",
    }
    text = report.to_text()
    assert text.startswith("check zeta: PASS")
    bad = check_thm_2_2(ring(-1), hits=[Hit(1, Fraction(2), ring(-1).element(3))])
    assert bad.to_text().startswith("check thm2.2: FAIL")


def test_load_hits_round_trip_elements(tmp_path):
    r = ring(-1)
    path = str(tmp_path / "elements.jsonl")
    run_search(SearchConfig(r, 2, Fraction(2), 2000, checkpoint_path=path))
    hits = load_hits(path, r)
    assert [(h.z.a, h.z.b) for h in hits] == [(3, 9), (9, 3), (30, 0)]
    assert all(h.n == 2 and h.t == 2 for h in hits)


def test_load_hits_round_trip_signatures(tmp_path):
    r = ring(-1)
    path = str(tmp_path / "sigs.jsonl")
    run_search(SearchConfig(r, 2, Fraction(2), 2000, mode="signatures", checkpoint_path=path))
    hits = load_hits(path, r)
    assert [(h.z.a, h.z.b) for h in hits] == [(3, 9), (9, 3), (30, 0)]


def test_load_hits_feeds_checks(tmp_path):
    r = ring(-1)
    path = str(tmp_path / "sigs.jsonl")
    run_search(SearchConfig(r, 2, Fraction(2), 10_000, mode="signatures", checkpoint_path=path))
    report = check_thm_2_2(r, hits=load_hits(path, r))
    assert report.passed and report.checked == 3


def test_load_hits_rejects_bad_input(tmp_path):
    r = ring(-1)
    path = str(tmp_path / "x.jsonl")
    with open(path, "w") as fh:
        fh.write("")
    with pytest.raises(CheckpointError):
        load_hits(path, r)
    with open(path, "w") as fh:
        fh.write('{"kind":"other"}\n')
    with pytest.raises(CheckpointError):
        load_hits(path, r)
    good = str(tmp_path / "good.jsonl")
    run_search(SearchConfig(r, 2, Fraction(2), 2000, checkpoint_path=good))
    with pytest.raises(DomainError):
        load_hits(good, ring(-3))


def test_run_check_dispatch():
    assert run_check("zeta").passed
    assert run_check("thm2.2", ring_d=-7, max_norm=5000).passed
    assert run_check("thm2.4", max_norm=2000).passed
    assert run_check("thm2.6", target=Fraction(2), max_norm=1000).passed
    with pytest.raises(DomainError):
        run_check("thm9.9")
    with pytest.raises(DomainError):
        run_check("thm2.3", ring_d=-3)
    with pytest.raises(DomainError):
        run_check("thm2.4", ring_d=-1)
    assert set(CHECK_IDS) == {"thm2.2", "thm2.3", "thm2.4", "thm2.5", "thm2.6", "zeta"}
