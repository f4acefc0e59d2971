from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from icl.lp import Unbounded, maximize


def test_small_textbook_problem():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
    res = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert res.value == 36
    assert res.primal == (2, 6)
    # dual optimum of min 4a + 12b + 18c s.t. a + 3c >= 3, 2b + 2c >= 5
    assert res.dual == (0, Fraction(3, 2), 1)


def test_unbounded():
    with pytest.raises(Unbounded):
        maximize([1, 1], [[1, -1]], [1])


def test_negative_rhs_rejected():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [-1])


def test_degenerate_problem_terminates():
    # many zero right-hand sides: the regime Bland's rule exists for
    A = [[1, -1, 0], [0, 1, -1], [-1, 0, 1], [1, 1, 1]]
    res = maximize([1, 2, 3], A, [0, 0, 0, 3])
    assert res.value == 6


@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(0, 5), min_size=n, max_size=n),
            st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=1, max_size=5),
        )
    ),
    st.data(),
)
def test_matches_scipy_and_strong_duality(problem, data):
    c, A = problem
    # every column needs a positive entry for boundedness
    A = [row[:] for row in A]
    for j in range(len(c)):
        if all(row[j] == 0 for row in A):
            A[0][j] = 1
    b = data.draw(st.lists(st.integers(0, 6), min_size=len(A), max_size=len(A)))
    res = maximize(c, A, b)
    ref = linprog(-np.array(c), A_ub=np.array(A), b_ub=np.array(b), bounds=(0, None), method="highs")
    assert ref.status == 0
    assert float(res.value) == pytest.approx(-ref.fun, abs=1e-9)
    # exact certificates
    y, x = res.primal, res.dual
    assert all(v >= 0 for v in y) and all(v >= 0 for v in x)
    assert all(sum(Fraction(a) * v for a, v in zip(row, y)) <= bi for row, bi in zip(A, b))
    for j in range(len(c)):
        assert sum(A[i][j] * x[i] for i in range(len(A))) >= c[j]
    assert sum(bi * xi for bi, xi in zip(b, x)) == res.value
