import pytest

from rootproj.catalog import parse_label
from rootproj.classify import (classical_predicate, enumerate_records,
                               load_golden_tables, oracle_equivalence,
                               proper_subsets, verify_paper)


def pred(name, theta):
    return classical_predicate(parse_label(name), theta)


def test_predicate_a5_three_blocks():
    p = pred("A5", (1, 3, 5))
    assert str(p.predicted) == "A2"


def test_predicate_b4_two_blocks():
    p = pred("B4", (1, 3))
    assert str(p.predicted) == "BC2"


def test_predicate_c4_one_to_three():
    p = pred("C4", (2, 3))
    assert str(p.predicted) == "A2"
    assert "3m" in p.condition_trace or "A_2" in p.condition_trace


def test_predicate_a3_middle_no_prediction():
    assert pred("A3", (2,)).predicted is None


def test_predicate_b_tail_recovery():
    assert str(pred("B4", (4,)).predicted) == "B3"
    assert str(pred("B4", (3, 4)).predicted) == "B2"
    assert pred("B3", (2,)).predicted is None


def test_predicate_c_tail_gives_bc():
    assert str(pred("C3", (3,)).predicted) == "BC2"
    assert str(pred("C3", (2, 3)).predicted) == "BC1"
    assert str(pred("C4", (1, 3)).predicted) == "C2"


def test_predicate_d_cases():
    assert str(pred("D4", (3, 4)).predicted) == "B2"
    assert str(pred("D4", (1, 3)).predicted) == "C2"
    assert str(pred("D4", (1, 4)).predicted) == "C2"
    assert pred("D4", (2,)).predicted is None
    assert str(pred("D5", (3, 4, 5)).predicted) == "B2"


def test_predicate_rejects_exceptional_input():
    with pytest.raises(ValueError):
        pred("E6", (1,))


def test_proper_subset_count():
    assert len(list(proper_subsets(4))) == 2 ** 4 - 2
    subsets = list(proper_subsets(3))
    assert subsets == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3)]


def test_enumerate_g2():
    records = list(enumerate_records(parse_label("G2")))
    assert len(records) == 2
    for rec in records:
        assert rec.d == 1
        assert not any(r.found for r in rec.reports)


def test_enumerate_f4_exactly_two_g2_rows():
    records = list(enumerate_records(parse_label("F4")))
    assert len(records) == 14
    hits = [rec.theta for rec in records
            for r in rec.reports
            if str(r.target) == "G2" and r.found]
    assert hits == [(1, 2), (3, 4)]
    restricted_hits = [rec.theta for rec in records
                       for r in rec.reports
                       if str(r.target) == "G2" and r.basis_from_delta_theta]
    assert restricted_hits == [(1, 2), (3, 4)]


def test_enumerate_e6_unique_g2_row():
    records = list(enumerate_records(parse_label("E6")))
    assert len(records) == 62
    hits = [rec.theta for rec in records
            for r in rec.reports
            if str(r.target) == "G2" and r.basis_from_delta_theta]
    assert hits == [(1, 3, 5, 6)]


def test_golden_tables_parse():
    tables = load_golden_tables()
    assert set(tables) == {"E6", "E7", "E8", "F4"}
    e8 = tables["E8"]
    irr = e8.found["irreducible"]
    assert ((8,), "E7") in irr
    assert ((2, 3, 4, 5), "F4") in irr
    assert ((8,), "E7") in e8.not_found["irreducible-restricted"]


@pytest.mark.parametrize("name", ["F4", "E6"])
def test_verify_paper_small_systems_pass(name):
    report = verify_paper(parse_label(name))
    assert report.ok, "\n".join(report.summary_lines())


def test_verify_paper_rejects_classical():
    with pytest.raises(ValueError):
        verify_paper(parse_label("A5"))
    with pytest.raises(ValueError):
        verify_paper(parse_label("G2"))


def test_oracle_equivalence_a_family():
    for n in (3, 4, 5, 6):
        report = oracle_equivalence(parse_label(f"A{n}"))
        assert report.ok
        assert len(report.entries) == 2 ** n - 2


def test_oracle_equivalence_selected_rows():
    rep = oracle_equivalence(parse_label("B4"))
    assert rep.ok
    by_theta = {e.theta: e for e in rep.entries}
    assert by_theta[(1, 3)].prediction == "BC2"
    assert by_theta[(1, 3)].confirmed is True
    rep = oracle_equivalence(parse_label("C4"))
    assert rep.ok
    by_theta = {e.theta: e for e in rep.entries}
    assert by_theta[(2, 3)].prediction == "A2"
    assert by_theta[(2, 3)].confirmed is True
    rep = oracle_equivalence(parse_label("D4"))
    assert rep.ok
    by_theta = {e.theta: e for e in rep.entries}
    assert by_theta[(3, 4)].prediction == "B2"
    assert by_theta[(3, 4)].confirmed is True


def test_records_deterministic():
    a = [(r.theta, [(str(x.target), x.found) for x in r.reports])
         for r in enumerate_records(parse_label("F4"))]
    b = [(r.theta, [(str(x.target), x.found) for x in r.reports])
         for r in enumerate_records(parse_label("F4"))]
    assert a == b
