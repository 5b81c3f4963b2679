import pytest

from rootproj.catalog import (TypeLabel,
                              build_from_name, cartan_subtype, cyclic_e7_basis,
                              cyclic_e8_generators, detection_targets,
                              normalize_components, parse_label, parse_target,
                              simple_root_expansion)
from rootproj.detect import match_type, reflection_closure
from rootproj.linalg import matrix, vector

ALL_LABELS = ["A1", "A2", "A3", "A4", "A5", "A6",
              "B2", "B3", "B4", "B5", "B6",
              "C2", "C3", "C4", "C5", "C6",
              "D2", "D3", "D4", "D5", "D6",
              "BC1", "BC2", "BC3", "BC4",
              "E6", "E7", "E8", "F4", "G2"]


@pytest.mark.parametrize("name", ALL_LABELS)
def test_root_counts(name):
    sys = build_from_name(name)
    assert len(sys.roots) == sys.label.root_count
    assert len(set(sys.roots)) == len(sys.roots)


def test_root_count_formulas():
    assert build_from_name("E6").label.root_count == 72
    assert build_from_name("E8").label.root_count == 240
    assert build_from_name("A1").roots == (
        vector([-1, 1]), vector([1, -1]))


@pytest.mark.parametrize("name", ALL_LABELS)
def test_cartan_entries_are_valid(name):
    sys = build_from_name(name)
    n = sys.rank
    for i in range(n):
        for j in range(n):
            c = sys.cartan[i][j]
            assert c.denominator == 1
            if i == j:
                assert c == 2
            else:
                assert int(c) in (0, -1, -2, -3)


def _chain_cartan(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
             for j in range(n)] for i in range(n)]


def test_standard_cartan_matrices():
    assert build_from_name("A3").cartan == matrix(_chain_cartan(3))
    b3 = _chain_cartan(3)
    b3[1][2], b3[2][1] = -2, -1  # short end column carries the -2
    assert build_from_name("B3").cartan == matrix(b3)
    c3 = _chain_cartan(3)
    c3[1][2], c3[2][1] = -1, -2
    assert build_from_name("C3").cartan == matrix(c3)
    d4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    assert build_from_name("D4").cartan == matrix(d4)
    f4 = _chain_cartan(4)
    f4[1][2], f4[2][1] = -2, -1
    assert build_from_name("F4").cartan == matrix(f4)
    assert build_from_name("G2").cartan == matrix([[2, -1], [-3, 2]])
    e8 = build_from_name("E8").cartan
    edges = {(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)}
    for i in range(1, 9):
        for j in range(i + 1, 9):
            expect = -1 if (i, j) in edges else 0
            assert e8[i - 1][j - 1] == expect
            assert e8[j - 1][i - 1] == expect


@pytest.mark.parametrize("name", ALL_LABELS)
def test_every_root_has_one_signed_integral_expansion(name):
    sys = build_from_name(name)
    for r in sys.roots:
        coeff = simple_root_expansion(sys, r)
        assert all(c.denominator == 1 for c in coeff)
        assert all(c >= 0 for c in coeff) or all(c <= 0 for c in coeff)


def test_bc_contains_b_and_c_at_full_rank():
    roots = set(build_from_name("BC3").roots)
    assert set(build_from_name("B3").roots) < roots
    assert set(build_from_name("C3").roots) < roots


def test_e7_e6_sit_inside_e8():
    e8 = set(build_from_name("E8").roots)
    assert set(build_from_name("E7").roots) < e8
    assert set(build_from_name("E6").roots) < set(build_from_name("E7").roots)


def test_cyclic_generators_close_to_rank7_subsystem():
    e8 = build_from_name("E8")
    universe = frozenset(e8.roots)
    gens = cyclic_e8_generators()
    assert set(gens) < universe
    # coefficient sums vanish, so the span has rank 7 and the closure is
    # the E7 living in the sum-zero hyperplane
    assert all(sum(v) == 0 for v in gens)
    orbit = reflection_closure(gens, universe, max_size=240)
    assert len(orbit) == 126
    positives = sorted(v for v in orbit if v > tuple(-x for x in v))
    pset = set(positives)
    simples = [p for p in positives
               if not any(tuple(a - b for a, b in zip(p, q)) in pset
                          for q in positives if q != p)]
    decomp = match_type(simples)
    assert decomp is not None and str(decomp[0][0]) == "E7"


def test_cyclic_e7_basis_is_an_e7_inside_e8():
    e8 = build_from_name("E8")
    universe = frozenset(e8.roots)
    basis = cyclic_e7_basis()
    assert set(basis) < universe
    decomp = match_type(list(basis))
    assert decomp is not None and len(decomp) == 1
    assert str(decomp[0][0]) == "E7"
    orbit = reflection_closure(basis, universe, max_size=126)
    assert not isinstance(orbit, type(None)) and len(orbit) == 126


def test_cartan_subtype_e6_orthogonal_pair():
    e6 = build_from_name("E6")
    assert cartan_subtype(e6, (1, 2)) == matrix([[2, 0], [0, 2]])


def test_cartan_subtype_single():
    assert cartan_subtype(build_from_name("A3"), (2,)) == matrix([[2]])


def test_cartan_subtype_e8_star():
    # alpha_2, alpha_3, alpha_5 all pair with alpha_4 only: the rank-4
    # star, read off the Bourbaki simple roots
    e8 = build_from_name("E8")
    got = cartan_subtype(e8, (2, 3, 4, 5))
    assert got == matrix([
        [2, 0, -1, 0],
        [0, 2, -1, 0],
        [-1, -1, 2, -1],
        [0, 0, -1, 2],
    ])


def test_cartan_subtype_out_of_range():
    with pytest.raises(ValueError):
        cartan_subtype(build_from_name("A3"), (0,))
    with pytest.raises(ValueError):
        cartan_subtype(build_from_name("A3"), (4,))


def test_parse_labels():
    assert parse_label("E8") == TypeLabel("E", 8)
    assert parse_label("bc3") == TypeLabel("BC", 3)
    assert parse_label("a5") == TypeLabel("A", 5)
    with pytest.raises(ValueError):
        parse_label("H4")
    with pytest.raises(ValueError):
        parse_label("E9")
    with pytest.raises(ValueError):
        parse_label("G3")


def test_parse_target_products():
    t = parse_target("g2xa1")
    assert str(t) == "G2xA1"
    assert t.rank == 3
    assert t.root_count == 14
    assert parse_target("A1xG2") == t


def test_normalization():
    assert normalize_components((TypeLabel("C", 2),)) == (TypeLabel("B", 2),)
    assert normalize_components((TypeLabel("B", 1),)) == (TypeLabel("A", 1),)
    assert normalize_components((TypeLabel("D", 2),)) == (
        TypeLabel("A", 1), TypeLabel("A", 1))
    assert normalize_components((TypeLabel("D", 3),)) == (TypeLabel("A", 3),)
    assert normalize_components((TypeLabel("BC", 2),)) == (TypeLabel("BC", 2),)


def test_detection_targets_rank2():
    names = {str(t) for t in detection_targets(2)}
    assert names == {"A2", "B2", "C2", "G2", "BC2"}


def test_detection_targets_reducible_rank4():
    names = {str(t) for t in detection_targets(4, reducible=True,
                                               require_exceptional_component=True)}
    assert "A2xG2" in names
    assert "G2xA1xA1" in names
    assert "B2xG2" in names
    assert "F4" in names
    assert "G2xG2" in names
    assert all("G" in n or "F" in n or "E" in n for n in names)


def test_detection_targets_reducible_rank5():
    names = {str(t) for t in detection_targets(5, reducible=True,
                                               require_exceptional_component=True)}
    assert "F4xA1" in names
    assert "A3xG2" in names


def test_detection_targets_deterministic():
    a = detection_targets(4, reducible=True, require_exceptional_component=True)
    b = detection_targets(4, reducible=True, require_exceptional_component=True)
    assert [str(t) for t in a] == [str(t) for t in b]
    # irreducible entries come before products
    kinds = [t.is_irreducible for t in a]
    assert kinds == sorted(kinds, reverse=True)


def test_type_label_invariants():
    with pytest.raises(ValueError):
        TypeLabel("E", 5)
    with pytest.raises(ValueError):
        TypeLabel("F", 3)
    with pytest.raises(ValueError):
        TypeLabel("D", 1)
    with pytest.raises(ValueError):
        TypeLabel("A", 0)


def test_ambient_dimensions():
    assert build_from_name("A5").ambient_dim == 6
    assert build_from_name("B4").ambient_dim == 4
    assert build_from_name("E6").ambient_dim == 8
    assert build_from_name("F4").ambient_dim == 4
    assert build_from_name("G2").ambient_dim == 3
