import mpmath
import pytest
from mpmath import mp, mpf

from resrec.binet import PrecisionError, classify_roots, eval_binet, find_roots, fit_binet
from resrec.exactnum import poly_eval

QUARTIC = (1, -4, -1, -4, 1)


def test_find_roots_multiplicities():
    roots = find_roots((1, -2, 1), 30)
    assert len(roots) == 1 and roots[0][1] == 2
    assert abs(roots[0][0] - 1) < mpf(10) ** -25
    fib = find_roots((-1, -1, 1), 40)
    with mp.workdps(50):
        assert abs(fib[0][0] - (1 + mpmath.sqrt(5)) / 2) < mpf(10) ** -35


def test_palindromic_reciprocal_pairs():
    with mp.workdps(60):
        roots = [r for r, _ in find_roots(QUARTIC, 50)]
        for r in roots:
            assert abs(poly_eval(QUARTIC, r)) < mpf(10) ** -40
            assert min(abs(s - 1 / r) for s in roots) < mpf(10) ** -40


def test_conjugates_exact():
    roots = [r for r, _ in find_roots((1, 3, 6, 3, 1), 50)]
    with mp.workdps(60):
        for r in roots:
            assert any(s == mpmath.conj(r) for s in roots)


def test_fit_and_eval_fibonacci():
    fib = {0: 0, 1: 1}
    for n in range(2, 40):
        fib[n] = fib[n - 1] + fib[n - 2]
    form = fit_binet((-1, -1, 1), {0: 0, 1: 1}, 40)
    for n in range(40):
        assert int(mpmath.nint(eval_binet(form, n))) == fib[n]


def test_fit_needs_consecutive_anchors():
    with pytest.raises(ValueError):
        fit_binet((-1, -1, 1), {0: 0, 2: 1}, 30)


def test_denominator_coefficient(model3):
    form = model3.den.binet
    i = form.root_index(1)
    with mp.workdps(50):
        assert abs(form.coeffs[i][0] - mpf(-8) / 7) < mpf(10) ** -20


def test_root_magnitudes(model3):
    num = classify_roots(model3.num.binet)
    assert abs(num.magnitudes[num.dominant] - 4.42) < 1e-3
    assert abs(num.subdominant_magnitude - 2.1) < 1e-2
    assert sum(num.on_unit_circle) == 3


@pytest.mark.parametrize("part", ["num", "den"])
def test_exactness_bridge(model3, part):
    p = getattr(model3, part)
    with mp.workdps(60):
        for n in range(5, 61):
            v = eval_binet(p.binet, n)
            assert int(mpmath.nint(v)) == p.term(n)
            assert abs(v - p.term(n)) < mpf(10) ** -20 * max(1, abs(p.term(n)))


def test_conjugate_symmetry_real_values(model3):
    for n in range(0, 201, 7):
        eval_binet(model3.num.binet, n)  # raises on a large imaginary residue


def test_imaginary_residue_reported():
    from resrec.binet import BinetForm

    with mp.workdps(30):
        bad = BinetForm([(mpmath.mpc(0, 2), 1)], [[mpmath.mpc(1)]], 30)
    assert eval_binet(bad, 0) == 1
    with pytest.raises(PrecisionError, match="precision exhausted"):
        eval_binet(bad, 1)
