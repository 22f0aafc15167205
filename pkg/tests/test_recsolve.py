from fractions import Fraction

import pytest

from resrec.exactnum import poly_mul, poly_pow
from resrec.expander import DetIdentity, EquationSystem, run_procedure
from resrec.graphfam import DetSequence, FamilySpec, oracle_sequence
from resrec.recsolve import (
    DegenerateSystemError,
    LinearRecurrence,
    berlekamp_massey,
    build_recurrence,
    detect_cutoff,
    divides_over_q,
    eliminate,
    extend_backward,
    factor_annihilates,
    failing_windows,
    minimal_polynomial,
    y_to_X,
)
from resrec.stencil import MatrixFamily, laplacian_band, seed_family

QUARTIC = (1, -4, -1, -4, 1)
QUINTIC = (-1, 5, -3, 3, -5, 1)  # (X - 1)(X^4 - 4X^3 - X^2 - 4X + 1)
NUM14 = poly_mul(poly_mul(poly_pow((-1, 1), 2), poly_pow(QUARTIC, 2)), (1, 3, 6, 3, 1))


def _stub_system(rows):
    fams = [MatrixFamily(laplacian_band(1), label=str(i)) for i in range(len(rows))]
    eqs = [DetIdentity(i, tuple((c, j) for j, c in enumerate(r) if c)) for i, r in enumerate(rows)]
    return EquationSystem(fams, eqs)


def test_eliminate_path():
    system = run_procedure(seed_family(FamilySpec(1, "denominator")))
    assert eliminate(system) == (1, -2, 1)


def test_eliminate_single_equation():
    # M(0) = 3 y M(0) gives 1 - 3y
    assert eliminate(_stub_system([[(0, 3)]])) == (1, -3)
    with pytest.raises(DegenerateSystemError):
        eliminate(_stub_system([[(1,)]]))


def test_y_to_X():
    assert y_to_X((1, -2, 1)) == (1, -2, 1)
    assert y_to_X((1, -3)) == (-3, 1)
    assert y_to_X((-1, 5, -3, 3, -5, 1)) == QUINTIC
    with pytest.raises(ValueError):
        y_to_X(())


def test_minimal_polynomial_small():
    assert minimal_polynomial(DetSequence("c", 0, [7] * 8)) == (-1, 1)
    assert minimal_polynomial(DetSequence("lin", 0, list(range(1, 12)))) == (1, -2, 1)
    fib = [0, 1]
    for _ in range(20):
        fib.append(fib[-1] + fib[-2])
    assert minimal_polynomial(DetSequence("fib", 0, fib)) == (-1, -1, 1)
    with pytest.raises(ValueError, match="insufficient terms"):
        minimal_polynomial(DetSequence("x", 0, [1]))
    with pytest.raises(ValueError, match="insufficient terms"):
        minimal_polynomial(DetSequence("x", 0, [1, 2, 3]), expected_order=5)


def test_berlekamp_massey_connection():
    conn = berlekamp_massey([1, 2, 4, 8, 16])
    assert conn == (Fraction(1), Fraction(-2))


def test_3tree_minimal_polynomials():
    den = oracle_sequence(FamilySpec(3, "denominator"), 1, 45)
    num = oracle_sequence(FamilySpec(3, "numerator"), 0, 45)
    assert minimal_polynomial(den.window(5, 40)) == QUINTIC
    assert minimal_polynomial(num.window(4, 45)) == NUM14


def test_annihilator_divisible():
    for part, mp in (("denominator", QUINTIC), ("numerator", NUM14)):
        p = y_to_X(eliminate(run_procedure(seed_family(FamilySpec(3, part)))))
        assert divides_over_q(mp, p)


def test_factor_annihilates():
    lin = DetSequence("lin", 0, list(range(1, 12)))
    a = (1, -2, 1)
    assert not factor_annihilates(a, (-1, 1), (-1, 1), lin, 0)
    const = DetSequence("c", 0, [5] * 10)
    assert factor_annihilates(a, (-1, 1), (-1, 1), const, 0)
    with pytest.raises(ValueError):
        factor_annihilates(a, (1, 1), (-1, 1), const, 0)
    den = oracle_sequence(FamilySpec(3, "denominator"), 1, 40)
    big = poly_mul(QUINTIC, (1, 3, 6, 3, 1))
    assert factor_annihilates(big, (1, 3, 6, 3, 1), QUINTIC, den, 6)


def test_cutoff_detection():
    seq = DetSequence("s", 0, [9, 1, 2, 3, 4, 5, 6, 7, 8])
    assert detect_cutoff((1, -2, 1), seq) == 1
    assert failing_windows((1, -2, 1), seq) == [0]
    rec = build_recurrence((1, -2, 1), seq)
    assert rec.cutoff == 1 and rec.initial_terms == {1: 1, 2: 2}


def test_extend_backward():
    lin = DetSequence("lin", 3, [4, 5, 6, 7, 8, 9])
    sis = extend_backward(lin, LinearRecurrence((1, -2, 1), 3), 5)
    assert [sis[i] for i in range(-2, 3)] == [-1, 0, 1, 2, 3]
    geo = DetSequence("geo", 0, [1, 2, 4, 8, 16, 32])
    with pytest.raises(ArithmeticError, match="not backward-extendable"):
        extend_backward(geo, LinearRecurrence((-2, 1), 0), 1)


def test_sister_roundtrip():
    den = oracle_sequence(FamilySpec(3, "denominator"), 1, 40)
    rec = build_recurrence(QUINTIC, den)
    sis = extend_backward(den, rec, 6)
    assert [sis[i] for i in range(-3, 5)] == [96, 21, 4, 0, 0, 3, 16, 75]
    # forward from the extended window reproduces the oracle
    lo = sis.lo
    fresh = extend_backward(DetSequence("w", lo, [sis[i] for i in range(lo, lo + 5)]),
                            LinearRecurrence(QUINTIC, lo), 0)
    fresh.extend_forward(40)
    assert all(fresh[i] == den[i] for i in range(rec.cutoff, 41))
