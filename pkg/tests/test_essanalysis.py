"""Existence, super-essential subsystem, Jacobi order bounds."""

import random
from itertools import permutations

import pytest

from sdres.diffpoly import support_matrix
from sdres.errors import RankDrop
from sdres.essanalysis import (
    RankOracle,
    Specialization,
    find_super_essential,
    is_transformally_essential,
    jacobi_number,
    jacobi_numbers_hat,
    modified_jacobi_bounds,
    select_and_specialize,
    symbolic_rank,
)

from systems import golden_system, mono, poly, rank_deficient_system, toy_system


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------

def test_golden_rank_is_four():
    m = support_matrix(golden_system().polys, 4)
    assert symbolic_rank(m, seed=0).rank == 4
    assert symbolic_rank(m, seed=0, exact=True).rank == 4


def test_rank_seed_stability():
    m = support_matrix(golden_system().polys, 4)
    assert symbolic_rank(m, seed=0) == symbolic_rank(m, seed=0)
    assert symbolic_rank(m, seed=7).rank == 4


def test_transformally_essential():
    assert is_transformally_essential(golden_system())
    assert is_transformally_essential(toy_system())
    assert not is_transformally_essential(rank_deficient_system())
    assert not is_transformally_essential(rank_deficient_system(), exact=True)


def test_shared_direction_system_not_essential():
    # all ratios proportional to y1*y2: rank 1 < 2
    shared = mono({(1, 0): 1, (2, 0): 1})
    from sdres.diffpoly import DiffSystem
    polys = tuple(poly(i, [mono({}), shared]) for i in range(3))
    sys2 = DiffSystem(polys=polys, nvars=2)
    assert not is_transformally_essential(sys2)


# ---------------------------------------------------------------------------
# super-essential subset
# ---------------------------------------------------------------------------

def test_golden_super_essential():
    assert find_super_essential(golden_system(), seed=0) == (0, 1, 2)
    assert find_super_essential(golden_system(), seed=3) == (0, 1, 2)
    assert find_super_essential(golden_system(), seed=0, exact=True) == (0, 1, 2)


def test_toy_super_essential_is_everything():
    assert find_super_essential(toy_system(), seed=0) == (0, 1)


def test_super_essential_rejects_non_essential_input():
    with pytest.raises(RankDrop):
        find_super_essential(rank_deficient_system(), seed=0)


# ---------------------------------------------------------------------------
# Jacobi numbers
# ---------------------------------------------------------------------------

def brute_force_jacobi(matrix):
    nrows, ncols = len(matrix), len(matrix[0]) if matrix else 0
    if nrows == 0 or ncols == 0:
        return 0
    transposed = nrows > ncols
    if transposed:
        matrix = [[matrix[r][c] for r in range(nrows)] for c in range(ncols)]
        nrows, ncols = ncols, nrows
    best = None
    for cols in permutations(range(ncols), nrows):
        total = 0
        ok = True
        for r, c in zip(range(nrows), cols):
            v = matrix[r][c]
            if v is None:
                ok = False
                break
            total += v
        if ok and (best is None or total > best):
            best = total
    return best


def test_jacobi_examples():
    assert jacobi_number([[1, 2], [2, 1]]) == 4
    assert jacobi_number([[1, 1], [2, 1]]) == 3
    assert jacobi_number([[None, None], [1, 2]]) is None
    assert jacobi_number([[None, 3], [1, None]]) == 4
    assert jacobi_number([[5]]) == 5
    assert jacobi_number([]) == 0
    # rectangular: best min(m,n)-selection
    assert jacobi_number([[1, 10, 2]]) == 10
    assert jacobi_number([[1], [10], [2]]) == 10


def test_jacobi_matches_brute_force():
    rng = random.Random(31)
    for _ in range(150):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = [[None if rng.random() < 0.25 else rng.randint(-6, 9)
              for _ in range(nc)] for _ in range(nr)]
        assert jacobi_number(m) == brute_force_jacobi(m)


def test_jacobi_numbers_hat_golden():
    omat = ((1, 1), (1, 2), (2, 1))
    assert jacobi_numbers_hat(omat) == (4, 3, 3)


# ---------------------------------------------------------------------------
# pivot selection and modified bounds
# ---------------------------------------------------------------------------

def test_golden_specialization_defaults_to_minimal_bounds():
    sys = golden_system()
    spec = select_and_specialize(sys, (0, 1, 2), seed=0)
    assert isinstance(spec, Specialization)
    assert spec.kept_vars == (1, 4)
    assert spec.bounds.order_mat == ((1, 1), (1, 2), (2, 1))
    assert spec.bounds.jacobi == (4, 3, 3)
    assert spec.bounds.gcd_degree == 1
    assert spec.bounds.modified == (3, 2, 2)
    assert not spec.has_collisions
    # the specialized polynomials live in y1, y4 only
    for p in spec.polys:
        assert p.variables() <= {1, 4}


def test_golden_specialization_override():
    sys = golden_system()
    spec = select_and_specialize(sys, (0, 1, 2), seed=0, kept_override=(1, 2))
    assert spec.kept_vars == (1, 2)
    assert spec.bounds.order_mat == ((1, 1), (1, 1), (2, 2))
    assert spec.bounds.jacobi == (3, 3, 2)
    assert spec.bounds.gcd_degree == 0
    assert spec.bounds.modified == (3, 3, 2)


def test_golden_override_must_have_full_rank():
    sys = golden_system()
    with pytest.raises(RankDrop):
        # a single column cannot have rank 2
        select_and_specialize(sys, (0, 1, 2), seed=0, kept_override=(1,))


def test_modified_bounds_direct():
    sys = golden_system()
    spec = select_and_specialize(sys, (0, 1, 2), seed=0, kept_override=(1, 4))
    b = modified_jacobi_bounds(spec.polys, spec.kept_vars)
    assert b.modified == (3, 2, 2)


def test_toy_specialization():
    spec = select_and_specialize(toy_system(), (0, 1), seed=0)
    assert spec.kept_vars == (1,)
    assert spec.bounds.order_mat == ((0,), (1,))
    assert spec.bounds.jacobi == (1, 0)
    assert spec.bounds.modified == (1, 0)


def test_rank_oracle_submatrix_queries():
    m = support_matrix(golden_system().polys, 4)
    oracle = RankOracle(m, seed=0)
    assert oracle.rank() == 4
    assert oracle.rank(row_indices=(0, 1, 2)) == 2
    assert oracle.rank(row_indices=(0, 1, 2, 4)) == 3
    assert oracle.rank(row_indices=(1, 2, 3, 4)) == 4
    assert oracle.rank(row_indices=(0, 1, 2), col_indices=(0, 3)) == 2
