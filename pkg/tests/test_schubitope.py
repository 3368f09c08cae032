import itertools
from fractions import Fraction

import pytest

from brute import compositions, perfect_exists, random_content, random_diagram
from schubvanish import lp
from schubvanish.core import Diagram, oneline_to_code, rothe_diagram
from schubvanish.oracle import schubert_polynomial
from schubvanish.schubitope import (
    Compression,
    build_compressed,
    build_polytope,
    compression_from_code,
    decide_nonvanishing,
    expand_compressed_point,
    schubitope_contains_direct,
    trivial_compression,
    witness_perfect_tableau,
    witness_point,
)
from schubvanish.tableaux import enumerate_perfect

D31524 = rothe_diagram((2, 0, 2))


def all_contents(code):
    return compositions(sum(code), len(code))


# -- direct oracle ------------------------------------------------------------------

def test_direct_oracle_examples():
    assert schubitope_contains_direct(D31524, (2, 1, 1))
    assert not schubitope_contains_direct(D31524, (4, 0, 0))
    assert schubitope_contains_direct(Diagram.from_boxes([], 3), (0, 0, 0))
    assert not schubitope_contains_direct(D31524, (2, 1, 0))
    assert not schubitope_contains_direct(D31524, (2, 1, 1, 0, 0, 1))


def test_direct_oracle_rejects_large_n():
    with pytest.raises(ValueError):
        schubitope_contains_direct(Diagram.from_boxes([(1, 1)], 20), (1,))


# -- polytope construction ----------------------------------------------------------

def test_polytope_shape():
    inst = build_polytope(D31524, (2, 1, 1, 0, 0))
    assert len(inst.variables) == 25
    feasible = lp.solve_feasibility(inst).feasible
    assert feasible == bool(enumerate_perfect(D31524, (2, 1, 1, 0, 0)))


def test_empty_diagram_polytope():
    inst = build_polytope(Diagram.from_boxes([], 2), (0, 0))
    res = lp.solve_feasibility(inst)
    assert res.feasible and all(v == 0 for v in res.point.values())


def test_trivial_compression_reproduces_polytope(rng):
    for _ in range(30):
        D = random_diagram(rng, 4)
        alpha = random_content(rng, len(D), 4)
        comp = trivial_compression(D)
        assert comp.is_valid_for(D)
        Q = build_compressed(comp.row_sets, comp.multiplicities, alpha, comp.m)
        P = build_polytope(D, alpha)
        assert Q.variables == P.variables
        assert [(r.coeffs, r.sense, r.rhs) for r in Q.rows] == \
            [(r.coeffs, r.sense, r.rhs) for r in P.rows]


def test_build_compressed_length_mismatch():
    with pytest.raises(ValueError):
        build_compressed([(1,)], [1, 2], (1,))


# -- compression --------------------------------------------------------------------

def test_compression_of_4252():
    comp = compression_from_code((4, 2, 5, 2))
    assert comp.column_classes == ((1, 2), (3,), (4,), (5,), (6, 7), (8,))
    assert comp.row_sets == ((1, 2, 3, 4), (1,), (1, 3), (), (3,), ())
    assert comp.multiplicities == (2, 1, 1, 1, 2, 1)
    assert comp.is_valid_for(rothe_diagram((4, 2, 5, 2)))
    singletons = {c[0] for c in comp.column_classes if len(c) == 1}
    assert {3, 5, 8} <= singletons


@pytest.mark.parametrize("k", [1, 2, 5, 9])
def test_compression_of_single_row(k):
    comp = compression_from_code((k,))
    nonempty = [(cols, rows) for cols, rows in zip(comp.column_classes, comp.row_sets) if rows]
    assert nonempty == [(tuple(range(1, k + 1)), (1,))]
    inst = build_compressed(comp.row_sets, comp.multiplicities, (k,), comp.m)
    res = lp.solve_feasibility(inst)
    assert res.feasible and res.point[("a", 1, 1)] == 1


def test_compression_of_202_matches_columns():
    comp = compression_from_code((2, 0, 2))
    assert comp.is_valid_for(D31524)
    rows = dict(zip(comp.column_classes, comp.row_sets))
    # w starts 3,1,5: the value 1 is its own class, column 2 is the gap before 3
    assert rows[(1,)] == (1,)
    assert rows[(2,)] == (1, 3)
    assert rows[(4,)] == (3,)


def test_compression_columns_identical_on_s6():
    for w in itertools.permutations(range(1, 7)):
        code = oneline_to_code(w)
        D = rothe_diagram(code)
        comp = compression_from_code(code)
        assert comp.size <= 2 * max(len(code), 1)
        assert comp.is_valid_for(D), w
        for cols in comp.column_classes:
            assert len({tuple(D.column_rows(c)) for c in cols}) == 1


def test_invalid_compression_is_detected():
    D = rothe_diagram((2, 0, 2))
    bad = Compression(3, ((1, 2, 3),), (1,), (3,), ((1,),))
    assert not bad.is_valid_for(D)


# -- decisions ----------------------------------------------------------------------

@pytest.mark.parametrize("code,alpha,expected", [
    ((2, 0, 2), (2, 1, 1), True),
    ((2, 0, 2), (4,), False),
    ((3, 2, 1), (3, 2, 1), True),
    ((3, 2, 1), (2, 2, 2), False),
    ((), (), True),
    ((0, 0), (0,), True),
    ((2, 0, 2), (), False),
    ((2, 0, 2), (0, 0, 0), False),
    ((2, 0, 2), (2, 1, 1, 0, 0), True),
    ((2, 0, 2), (2, 1, 0, 1), False),
    ((4, 2, 5, 2), (4, 2, 5, 2), True),
])
def test_decision_examples(code, alpha, expected):
    for compression in ("rothe", "trivial"):
        for engine in ("simplex", "flow", "auto"):
            assert decide_nonvanishing(code, alpha, compression=compression,
                                       engine=engine) is expected


def test_decision_rejects_unknown_options():
    with pytest.raises(ValueError):
        decide_nonvanishing((1,), (1,), compression="zip")
    with pytest.raises(ValueError):
        decide_nonvanishing((1,), (1,), engine="ellipsoid")


@pytest.mark.parametrize("n", [3, 4])
def test_chain_of_equivalences(n):
    for w in itertools.permutations(range(1, n + 1)):
        poly = schubert_polynomial(w)
        code = oneline_to_code(w)
        D = rothe_diagram(code)
        for alpha in all_contents(code):
            padded = alpha + (0,) * (D.n - len(alpha))
            c = poly.coefficient(alpha) > 0
            assert schubitope_contains_direct(D, padded) == c
            assert bool(enumerate_perfect(D, padded)) == c
            assert lp.solve_feasibility(build_polytope(D, padded)).feasible == c
            assert decide_nonvanishing(code, alpha) == c


def test_engines_agree_on_s6(rng):
    for w in itertools.permutations(range(1, 7)):
        if rng.random() > 0.15:
            continue
        code = oneline_to_code(w)
        for _ in range(3):
            alpha = random_content(rng, sum(code), len(code))
            answers = {decide_nonvanishing(code, alpha, compression=c, engine=e)
                       for c in ("rothe", "trivial") for e in ("simplex", "flow")}
            assert len(answers) == 1, (w, alpha)


def test_random_diagrams_lp_matches_perfect_tableaux(rng):
    for _ in range(150):
        D = random_diagram(rng, 4, rng.uniform(0.2, 0.7))
        alpha = random_content(rng, len(D), 4)
        assert lp.solve_feasibility(build_polytope(D, alpha)).feasible == perfect_exists(D, alpha)


def test_long_codes_flow_and_simplex_agree(rng):
    for _ in range(10):
        code = tuple(rng.randint(0, 4) for _ in range(7))
        alpha = random_content(rng, sum(code), len(code))
        assert decide_nonvanishing(code, alpha, engine="flow") == \
            decide_nonvanishing(code, alpha, engine="simplex")
        assert decide_nonvanishing(code, code)


# -- witnesses ----------------------------------------------------------------------

def test_witness_for_staircase():
    tab = witness_perfect_tableau((3, 2, 1), (3, 2, 1))
    assert tab.as_dict() == {b: b[0] for b in rothe_diagram((3, 2, 1)).boxes}


def test_witness_for_31524():
    tab = witness_perfect_tableau((2, 0, 2), (2, 1, 1))
    options = [
        {(1, 1): 1, (1, 2): 1, (3, 2): 2, (3, 4): 3},
        {(1, 1): 1, (1, 2): 1, (3, 2): 3, (3, 4): 2},
    ]
    assert tab.as_dict() in options
    assert witness_perfect_tableau((2, 0, 2), (4,)) is None


def check_witness(code, alpha, engine):
    point = witness_point(code, alpha, engine=engine)
    D = rothe_diagram(code)
    assert point is not None
    assert all(v in (0, 1) for v in point.values())
    for j in range(1, D.n + 1):
        assert sum(point[("a", i, j)] for i in range(1, D.n + 1)) == len(D.column_rows(j))
    tab = witness_perfect_tableau(code, alpha, engine=engine)
    padded = tuple(alpha) + (0,) * (D.n - len(alpha))
    assert tab.is_perfect() and tab.is_column_strict()
    assert tab.content() == padded


def test_witness_properties_on_s5():
    for w in itertools.permutations(range(1, 6)):
        code = oneline_to_code(w)
        poly = schubert_polynomial(w)
        for alpha in poly.support():
            alpha = tuple(alpha)[: len(code)] + (0,) * (len(code) - len(alpha))
            check_witness(code, alpha, "simplex")


def test_flow_witness_on_long_codes(rng):
    for _ in range(5):
        code = tuple(rng.randint(0, 5) for _ in range(12))
        check_witness(code, code, "flow")


def test_witness_absent_when_vanishing():
    assert witness_point((3, 2, 1), (2, 2, 2)) is None
    assert witness_point((1,), (2,)) is None


def test_expansion_copies_class_values():
    comp = compression_from_code((2, 0, 2))
    point = {("a", i, k): Fraction(0) for k in range(1, comp.size + 1) for i in range(1, 4)}
    point[("a", 1, 1)] = Fraction(1, 2)
    full = expand_compressed_point(comp, point, 5)
    for j in comp.column_classes[0]:
        assert full[("a", 1, j)] == Fraction(1, 2)
