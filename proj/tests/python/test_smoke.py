"""Smoke tests for the python bindings."""

import pytest

import hybsat


def test_parse_and_inspect():
    f = hybsat.parse_dimacs("p cnf 2 2\n1 -2 0\n2 0\n")
    assert f.num_vars == 2
    assert f.num_clauses == 2
    assert f.clauses == [[1, -2], [2]]


def test_parse_error():
    with pytest.raises(Exception, match="line"):
        hybsat.parse_dimacs("p cnf 2 1\n1 0 extra")


def test_solve_sat_and_verify():
    f = hybsat.from_clauses(3, [[1, 2], [-1, 3], [-2, -3]])
    out = hybsat.solve_hybrid(f, seed=1)
    assert out.status == "SAT"
    assert hybsat.verify_model(f, out.model)
    assert out.stats["flips"] >= 0


def test_solve_unsat_pigeonhole():
    f = hybsat.parse_dimacs(hybsat.pigeonhole_dimacs(4, 3))
    out = hybsat.solve_hybrid(f, seed=3, timeout=30.0)
    assert out.status == "UNSAT"
    assert out.model is None
    assert out.stats["conflicts"] > 0


def test_hybrid_and_cdcl_agree():
    for seed in range(12):
        text = hybsat.random_3sat_dimacs(12, 4.3, seed)
        a = hybsat.solve_hybrid(hybsat.parse_dimacs(text), seed=seed + 1)
        b = hybsat.solve_cdcl(hybsat.parse_dimacs(text))
        assert a.status == b.status != "UNKNOWN"


def test_determinism():
    text = hybsat.random_3sat_dimacs(20, 4.0, 5)
    a = hybsat.solve_hybrid(hybsat.parse_dimacs(text), seed=9)
    b = hybsat.solve_hybrid(hybsat.parse_dimacs(text), seed=9)
    assert a.status == b.status
    assert a.model == b.model
    assert a.stats["flips"] == b.stats["flips"]


def test_enumerate_mus():
    f = hybsat.from_clauses(
        5, [[-4, 5], [2, -3], [-4], [-1, 2], [1], [1, -3, 5], [-1, 3, 4], [-2]]
    )
    muses = hybsat.enumerate_mus(f)
    assert sorted(sorted(m) for m in muses) == [[1, 2, 4, 6, 7], [3, 4, 7]]


def test_dimacs_roundtrip():
    text = hybsat.random_3sat_dimacs(10, 3.0, 2)
    f = hybsat.parse_dimacs(text)
    assert hybsat.parse_dimacs(hybsat.to_dimacs(f)).clauses == f.clauses
