"""Linear algebra over F2: pinned examples plus randomized properties."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from torsioncomplex.gf2 import (
    BitMatrix,
    cokernel_dim,
    from_rows,
    identity,
    kernel_dim,
    rank,
    rank_of_spanning_set,
    zero,
)


def brute_rank(m: BitMatrix) -> int:
    """Rank as the size of the largest set of independent columns.

    Exponential in the column count; only usable as an oracle for tiny
    matrices, which is the point.
    """
    cols = [sum(bit << i for i, bit in enumerate(m.column(j))) for j in range(m.cols)]
    best = 0
    for size in range(len(cols), 0, -1):
        for subset in itertools.combinations(range(len(cols)), size):
            dependent = False
            span = {0}
            for j in subset:
                if cols[j] in span:
                    dependent = True
                    break
                span |= {v ^ cols[j] for v in span}
            if not dependent:
                best = size
                break
        if best:
            break
    return best


# ----------------------------------------------------------- pinned values


def test_zero_map_from_plane_to_line_has_kernel_dim_2():
    m = zero(1, 2)
    assert rank(m) == 0
    assert kernel_dim(m) == 2
    assert cokernel_dim(m) == 1


def test_zero_map_from_line_to_plane_has_cokernel_dim_2():
    m = zero(2, 1)
    assert rank(m) == 0
    assert kernel_dim(m) == 1
    assert cokernel_dim(m) == 2


def test_identity_is_full_rank():
    m = identity(4)
    assert rank(m) == 4
    assert kernel_dim(m) == 0
    assert cokernel_dim(m) == 0


def test_three_by_four_map_with_rank_2():
    # map F2^4 -> F2^3 whose columns are (1,0,1), (0,1,1), (1,0,1), (0,1,1)
    m = from_rows([[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1]])
    assert (m.rows, m.cols) == (3, 4)
    assert rank(m) == 2
    assert kernel_dim(m) == 2
    assert cokernel_dim(m) == 1


def test_from_rows_and_accessors():
    m = from_rows([[1, 0], [1, 1], [0, 0]])
    assert m.entry(0, 0) == 1
    assert m.entry(0, 1) == 0
    assert m.entry(1, 1) == 1
    assert m.to_lists() == [[1, 0], [1, 1], [0, 0]]
    assert m.column(0) == [1, 1, 0]
    assert m.transpose().to_lists() == [[1, 1, 0], [0, 1, 0]]


def test_xor_adds_matrices():
    a = from_rows([[1, 0], [0, 1]])
    b = from_rows([[1, 1], [0, 0]])
    assert (a ^ b).to_lists() == [[0, 1], [0, 1]]
    with pytest.raises(ValueError):
        a ^ zero(3, 2)


def test_from_rows_rejects_ragged_input():
    with pytest.raises(ValueError):
        from_rows([[1, 0], [1]])


def test_empty_shapes():
    assert rank(zero(0, 3)) == 0
    assert kernel_dim(zero(0, 3)) == 3
    assert cokernel_dim(zero(3, 0)) == 3
    assert rank(zero(0, 0)) == 0


def test_rank_of_spanning_set():
    assert rank_of_spanning_set([]) == 0
    assert rank_of_spanning_set([0b101, 0b011, 0b110]) == 2
    assert rank_of_spanning_set([0b1, 0b10, 0b11, 0]) == 2


# ------------------------------------------------------------- properties


def random_matrix(rng: random.Random, rows: int, cols: int) -> BitMatrix:
    data = [[rng.randint(0, 1) for _ in range(cols)] for _ in range(rows)]
    return from_rows(data, cols=cols)


def test_rank_agrees_with_brute_force_on_small_matrices():
    rng = random.Random(20260818)
    for _ in range(60):
        rows = rng.randint(0, 5)
        cols = rng.randint(0, 5)
        m = random_matrix(rng, rows, cols)
        assert rank(m) == brute_rank(m), m.to_lists()


@settings(deadline=None, max_examples=80, derandomize=True)
@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 2**30))
def test_rank_equals_rank_of_transpose(rows, cols, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols)
    assert rank(m) == rank(m.transpose())


@settings(deadline=None, max_examples=80, derandomize=True)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**30))
def test_rank_is_invariant_under_row_and_column_permutation(rows, cols, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols)
    rows_list = m.to_lists()
    rng.shuffle(rows_list)
    perm = list(range(cols))
    rng.shuffle(perm)
    shuffled = from_rows([[row[j] for j in perm] for row in rows_list])
    assert rank(m) == rank(shuffled)


@settings(deadline=None, max_examples=80, derandomize=True)
@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 2**30))
def test_rank_nullity(rows, cols, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols)
    assert rank(m) + kernel_dim(m) == m.cols
    assert rank(m) + cokernel_dim(m) == m.rows


@settings(deadline=None, max_examples=60, derandomize=True)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**30))
def test_rank_of_spanning_set_matches_matrix_rank(rows, cols, seed):
    rng = random.Random(seed)
    m = random_matrix(rng, rows, cols)
    assert rank_of_spanning_set(list(m.row_bits)) == rank(m)
