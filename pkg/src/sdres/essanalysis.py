"""Existence analysis and order bounds for generic difference systems.

Three questions are answered here, all driven by the symbolic support
matrix:

* is the system transformally essential (does the sparse difference
  resultant exist)?  --  rank test over the shift-operator field
* which subsystem actually carries the resultant?  --  the unique
  super-essential subset, found by greedy row removal
* how far must each polynomial be transformed before the problem becomes
  algebraic?  --  modified Jacobi bounds of the specialized system

Ranks are computed by substituting large random integers for the generic
coefficients (correct with overwhelming probability; several independent
trials are taken and an exact symbolic path is available for paranoid runs).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from scipy.optimize import linear_sum_assignment

from .diffpoly import (
    SupportMatrix,
    norm_form,
    order_matrix,
    specialize_poly,
    support_matrix,
    symbolic_support_vector,
)
from .errors import InfiniteJacobiBound, RankDrop
from .multipoly import MultiPoly, rank_and_pivots, uni_gcd

RANK_TRIALS = 3
RAND_BOUND = 2 ** 31


def stage_rng(seed, tag):
    # str seeding hashes via sha512 inside random, stable across platforms
    return random.Random(f"{seed}/{tag}")


@dataclass(frozen=True)
class RankReport:
    rank: int
    pivot_cols: tuple   # column positions achieving the rank (lex smallest)
    trials: int
    exact: bool


class RankOracle:
    """Rank queries against row/column subsets of one support matrix.

    Each trial substitutes one random integer point for all generic
    coefficients; queries run fraction-free elimination on the selected
    submatrix.  The reported rank is the maximum over trials (substitution
    can only ever lower the rank).
    """

    def __init__(self, matrix, seed=0, trials=RANK_TRIALS, exact=False):
        self.matrix = matrix
        self.exact = exact
        self.trials = 1 if exact else trials
        refs = sorted(matrix.coeff_refs())
        if exact:
            self._numeric = [self._symbolic_matrix(matrix, refs)]
        else:
            self._numeric = []
            for t in range(self.trials):
                rng = stage_rng(seed, f"rank-trial-{t}")
                values = {r: rng.randint(-RAND_BOUND, RAND_BOUND) for r in refs}
                self._numeric.append(matrix.substituted(values))

    @staticmethod
    def _symbolic_matrix(matrix, refs):
        # exact route: entries become multivariate polynomials in the
        # coefficients and the shift indeterminate
        ids = {r: i for i, r in enumerate(refs)}
        x_id = len(refs)
        out = []
        for row in matrix.rows:
            out_row = []
            for entry in row:
                acc = MultiPoly()
                for r, d in entry.items():
                    for k, c in enumerate(d.coeffs):
                        if c:
                            acc = acc + MultiPoly({((ids[r], 1), (x_id, k)) if k
                                                   else ((ids[r], 1),): c})
                out_row.append(acc)
            out.append(out_row)
        return out

    def rank(self, row_indices=None, col_indices=None):
        rank, _ = self.rank_with_pivots(row_indices, col_indices)
        return rank

    def rank_with_pivots(self, row_indices=None, col_indices=None):
        nrows = len(self.matrix.rows)
        ncols = len(self.matrix.col_labels)
        rows = range(nrows) if row_indices is None else row_indices
        cols = range(ncols) if col_indices is None else col_indices
        best = (-1, ())
        for numeric in self._numeric:
            sub = [[numeric[r][c] for c in cols] for r in rows]
            rank, pivots = rank_and_pivots(sub)
            if rank > best[0]:
                best = (rank, pivots)
        return best

    def report(self):
        rank, pivots = self.rank_with_pivots()
        return RankReport(rank=rank, pivot_cols=pivots,
                          trials=self.trials, exact=self.exact)


def symbolic_rank(matrix, seed=0, trials=RANK_TRIALS, exact=False):
    return RankOracle(matrix, seed=seed, trials=trials, exact=exact).report()


def is_transformally_essential(system, seed=0, exact=False):
    """rank(support matrix) == n decides existence of the resultant."""
    m = support_matrix(system.polys, system.nvars)
    return symbolic_rank(m, seed=seed, exact=exact).rank == system.nvars


def find_super_essential(system, seed=0, exact=False):
    """The unique minimal subset T with card(T) - rank = 1.

    Greedy removal in increasing index order; restarts after every
    successful removal.  T is a circuit of the row matroid, so greedy
    removal of any element whose absence keeps the rows dependent converges
    to it.  Precondition: the system is transformally essential.
    """
    matrix = support_matrix(system.polys, system.nvars)
    oracle = RankOracle(matrix, seed=seed, exact=exact)
    t = list(range(len(system.polys)))
    if oracle.rank(t) != len(t) - 1:
        raise RankDrop("system is not transformally essential")
    changed = True
    while changed:
        changed = False
        for i in list(t):
            rest = [j for j in t if j != i]
            if oracle.rank(rest) == len(rest) - 1:
                t = rest
                changed = True
                break
    return tuple(t)


# ---------------------------------------------------------------------------
# Jacobi numbers
# ---------------------------------------------------------------------------

def jacobi_number(matrix):
    """Maximum diagonal sum over all k x k submatrices, k = min(rows, cols).

    Entries are ints or None (None = -infinity, a forbidden cell).  Returns
    None when no feasible selection exists.  This is a maximum-weight
    assignment problem; scipy's solver does the matching, the tests check it
    against brute-force permutation enumeration.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return 0
    cost = []
    for row in matrix:
        vals = []
        for v in row:
            if v is None:
                vals.append(float("-inf"))
            else:
                assert abs(v) < 2 ** 40, "order entry out of safe float range"
                vals.append(float(v))
        cost.append(vals)
    try:
        ri, ci = linear_sum_assignment(cost, maximize=True)
    except ValueError:
        return None
    total = 0
    for r, c in zip(ri, ci):
        v = matrix[r][c]
        if v is None:
            return None
        total += v
    return total


def jacobi_numbers_hat(order_mat):
    """For each row i: the Jacobi number of the matrix with row i deleted."""
    out = []
    for i in range(len(order_mat)):
        rest = [row for j, row in enumerate(order_mat) if j != i]
        out.append(jacobi_number(rest))
    return tuple(out)


@dataclass(frozen=True)
class JacobiBounds:
    order_mat: tuple     # specialized order matrix, None = -infinity
    jacobi: tuple        # plain row-deleted Jacobi numbers
    gcd_degree: int      # total degree of the per-column shift-poly gcds
    modified: tuple      # jacobi - gcd_degree, the order bounds actually used

    @property
    def total(self):
        return sum(self.modified)


def modified_jacobi_bounds(spec_polys, kept_vars):
    """Order bounds for the specialized subsystem.

    Bound i covers the order of the resultant in the coefficients of the
    i-th polynomial: the Jacobi number of the order matrix with row i
    removed, lowered by the total degree of the common x-polynomial factors
    of the support matrix columns.
    """
    omat = order_matrix(spec_polys, kept_vars)
    jac = jacobi_numbers_hat(omat)
    matrix = support_matrix_for_vars(spec_polys, kept_vars)
    gcd_deg = 0
    for col in range(len(kept_vars)):
        g = uni_gcd(matrix.column_shift_polys(col))
        if not g.is_zero():
            gcd_deg += g.degree
    modified = tuple(None if j is None else j - gcd_deg for j in jac)
    return JacobiBounds(order_mat=omat, jacobi=jac, gcd_degree=gcd_deg,
                        modified=modified)


def support_matrix_for_vars(polys, variables):
    rows = tuple(symbolic_support_vector(p, tuple(variables)) for p in polys)
    return SupportMatrix(rows=rows, row_labels=tuple(range(len(polys))),
                         col_labels=tuple(variables))


# ---------------------------------------------------------------------------
# pivot-column selection and specialization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Specialization:
    kept_vars: tuple          # difference variable indices kept
    polys: tuple              # specialized polynomials in norm form
    bounds: JacobiBounds
    has_collisions: bool      # two monomials of one polynomial coincided


def _specialize_candidate(system, subset_indices, kept_vars):
    polys = []
    collide = False
    for i in subset_indices:
        p = specialize_poly(system.polys[i], set(kept_vars))
        p, _ = norm_form(p)
        monos = [m for _, m in p.terms]
        if len(set(monos)) != len(monos):
            collide = True
        polys.append(p)
    return tuple(polys), collide


MAX_PIVOT_CANDIDATES = 1000


def select_and_specialize(system, subset_indices, seed=0, kept_override=None,
                          exact=False):
    """Choose rank-many pivot variables for the super-essential subsystem and
    set the rest (all transforms) to 1.

    Among all full-rank column subsets the one minimizing the total modified
    Jacobi bound is taken (ties: lexicographically smallest), preferring
    collision-free specializations.  ``kept_override`` forces the choice.
    """
    matrix = support_matrix(system.subsystem(subset_indices), system.nvars,
                            row_labels=subset_indices)
    oracle = RankOracle(matrix, seed=seed, exact=exact)
    m = oracle.rank()
    if m != len(subset_indices) - 1:
        raise RankDrop(f"subsystem rank {m}, expected {len(subset_indices) - 1}")

    all_vars = matrix.col_labels
    if kept_override is not None:
        kept = tuple(sorted(kept_override))
        cols = tuple(all_vars.index(v) for v in kept)
        if oracle.rank(col_indices=cols) != m:
            raise RankDrop(f"kept columns {kept} do not have full rank {m}")
        candidates = [cols]
    else:
        combos = itertools.combinations(range(len(all_vars)), m)
        candidates = []
        for cols in combos:
            if len(candidates) >= MAX_PIVOT_CANDIDATES:
                # too many subsets: settle for the echelon pivot columns
                _, pivots = oracle.rank_with_pivots()
                candidates = [pivots]
                break
            if oracle.rank(col_indices=cols) == m:
                candidates.append(cols)
        if not candidates:
            raise RankDrop("no full-rank column subset found")

    best = None
    for cols in candidates:
        kept = tuple(all_vars[c] for c in cols)
        polys, collide = _specialize_candidate(system, subset_indices, kept)
        bounds = modified_jacobi_bounds(polys, kept)
        if any(j is None for j in bounds.modified):
            continue  # infeasible order bound for this choice
        key = (collide, bounds.total, kept)
        cand = Specialization(kept_vars=kept, polys=polys, bounds=bounds,
                              has_collisions=collide)
        if best is None or key < best[0]:
            best = (key, cand)
    if best is None:
        raise InfiniteJacobiBound(
            "every pivot choice leaves some order bound at -infinity")
    return best[1]
