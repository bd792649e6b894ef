"""Reduction of a difference system to a strong essential algebraic system.

After specialization the resultant problem is still transformal.  This stage
turns it into an ordinary sparse-resultant problem:

1. prolong every polynomial up to its order bound, treating each transform
   instance y_j^(k) as an independent algebraic variable;
2. measure the corank of the algebraic support matrix; corank above one
   means the bounds overshoot, so all bounds are lowered by the excess;
3. extract the minimal essential subsystem: the lowest-ranking circuit of
   the row matroid (dependent, every proper subset independent);
4. keep only rank-many algebraic variables, setting the rest to one, while
   checking that essentialness survives;
5. re-express all supports over a basis of the lattice they generate, which
   shrinks the Newton polytopes to minimal volume ("strong" essential form).

Support vectors are taken relative to each polynomial's distinguished term,
so entries may be negative (Laurent); everything downstream handles that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .diffpoly import SupportMatrix, shift_poly
from .errors import CorankLost, DegenerateLattice, NoEssentialSubset
from .essanalysis import RankOracle
from .multipoly import UniPoly, int_matrix_rank

MAX_COLUMN_CANDIDATES = 1000
EXHAUSTIVE_CIRCUIT_LIMIT = 12


def prolong(polys, bounds):
    """All transforms delta^l P_i for 0 <= l <= bounds[i], tagged (i, l)."""
    rows = []
    for i, (p, bound) in enumerate(zip(polys, bounds)):
        for l in range(bound + 1):
            rows.append(((i, l), shift_poly(p, l)))
    return tuple(rows)


def relative_supports(poly):
    """Per term: its generic coefficient and the exponent vector of the
    monomial relative to the distinguished one (dict VarRef -> int)."""
    base = poly.terms[0][1]
    return [(ref, dict(mono.ratio(base).powers)) for ref, mono in poly.terms]


def alg_support_matrix(tagged_polys):
    """Row i: the formal sum of term exponent vectors weighted by their
    generic coefficients.  Columns: every transform instance seen, sorted."""
    refs = set()
    supports = []
    for _, poly in tagged_polys:
        sup = relative_supports(poly)
        supports.append(sup)
        for _, vec in sup:
            refs.update(vec)
    cols = tuple(sorted(refs))
    col_pos = {v: i for i, v in enumerate(cols)}
    rows = []
    for sup in supports:
        row = [dict() for _ in cols]
        for ref, vec in sup[1:]:
            for v, e in vec.items():
                row[col_pos[v]][ref] = UniPoly((e,))
        rows.append(tuple(row))
    return SupportMatrix(rows=tuple(rows),
                         row_labels=tuple(t for t, _ in tagged_polys),
                         col_labels=cols)


# ---------------------------------------------------------------------------
# minimal essential subsystem (circuit of the row matroid)
# ---------------------------------------------------------------------------

def _is_circuit(oracle, rows):
    if oracle.rank(rows) != len(rows) - 1:
        return False
    for r in rows:
        rest = [i for i in rows if i != r]
        if rest and oracle.rank(rest) != len(rest):
            return False
    return True


def _exhaustive_circuit(oracle, nrows):
    if nrows > EXHAUSTIVE_CIRCUIT_LIMIT:
        raise NoEssentialSubset("circuit search failed on a large system")
    best = None
    for size in range(1, nrows + 1):
        for combo in itertools.combinations(range(nrows), size):
            if _is_circuit(oracle, list(combo)):
                key = tuple(sorted(combo, reverse=True))
                if best is None or key < best[0]:
                    best = (key, combo)
    if best is None:
        raise NoEssentialSubset("no essential subsystem exists")
    return list(best[1])


def find_minimal_essential(oracle, nrows):
    """Ranking-minimal circuit among rows 0..nrows-1 (rows are generated in
    ascending ranking order, so index order is ranking order).

    Greedy sweep from the highest-ranking row down: drop a row whenever the
    remainder stays dependent.  Once a row becomes undroppable it stays so
    (subsets of independent sets are independent), hence one sweep reaches a
    circuit, and dropping high rows first makes it the ranking-minimal one
    (circuits never nest).  The result is verified; on randomized-rank noise
    the exhaustive search takes over.
    """
    keep = list(range(nrows))
    if oracle.rank(keep) >= len(keep):
        raise NoEssentialSubset("rows are independent, no resultant relation")
    for r in reversed(range(nrows)):
        trial = [i for i in keep if i != r]
        if trial and oracle.rank(trial) < len(trial):
            keep = trial
    if not _is_circuit(oracle, keep):
        keep = _exhaustive_circuit(oracle, nrows)
    return tuple(keep)


# ---------------------------------------------------------------------------
# variable reduction (set all but rank-many transform instances to one)
# ---------------------------------------------------------------------------

def _preserves_essential(oracle, ess_rows, cols, k):
    if oracle.rank(ess_rows, cols) != k:
        return False
    for r in ess_rows:
        rest = [i for i in ess_rows if i != r]
        if rest and oracle.rank(rest, cols) != len(rest):
            return False
    return True


def variable_essential_reduce(matrix, ess_rows, oracle):
    """Column subset to keep: the echelon pivots of the essential rows (the
    lexicographically earliest independent set), falling back to enumeration
    when dropping the other columns would break essentialness."""
    k = oracle.rank(ess_rows)
    if k != len(ess_rows) - 1:
        raise NoEssentialSubset("essential subsystem lost corank one")
    ncols = len(matrix.col_labels)
    _, pivots = oracle.rank_with_pivots(row_indices=ess_rows)
    candidates = itertools.chain([tuple(pivots)],
                                 itertools.combinations(range(ncols), k))
    for tried, cols in enumerate(candidates):
        if tried > MAX_COLUMN_CANDIDATES:
            break
        if _preserves_essential(oracle, ess_rows, cols, k):
            return tuple(cols)
    raise NoEssentialSubset("no variable subset keeps the subsystem essential")


# ---------------------------------------------------------------------------
# lattice re-expression
# ---------------------------------------------------------------------------

def hermite_basis(vectors):
    """Echelon basis of the integer lattice generated by the given vectors,
    with entries above each pivot reduced into [0, pivot)."""
    work = [list(v) for v in vectors if any(v)]
    if not work:
        return ()
    ncols = len(work[0])
    row = 0
    for col in range(ncols):
        while True:
            nz = [r for r in range(row, len(work)) if work[r][col]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(work[r][col]))
            r0 = nz[0]
            for r in nz[1:]:
                q = work[r][col] // work[r0][col]
                if q:
                    work[r] = [a - q * b for a, b in zip(work[r], work[r0])]
        nz = [r for r in range(row, len(work)) if work[r][col]]
        if not nz:
            continue
        work[row], work[nz[0]] = work[nz[0]], work[row]
        if work[row][col] < 0:
            work[row] = [-v for v in work[row]]
        for r in range(row):
            q = work[r][col] // work[row][col]
            if q:
                work[r] = [a - q * b for a, b in zip(work[r], work[row])]
        row += 1
    return tuple(tuple(r) for r in work[:row])


def lattice_coordinates(basis, vector):
    """Integer coordinates of vector in the span of the basis rows, or None
    when the vector lies outside.  Exact rational elimination throughout."""
    r = len(basis)
    if r == 0:
        return () if not any(vector) else None
    k = len(vector)
    aug = [[Fraction(basis[j][c]) for j in range(r)] + [Fraction(vector[c])]
           for c in range(k)]
    row = 0
    piv_cols = []
    for col in range(r):
        p = next((i for i in range(row, k) if aug[i][col] != 0), None)
        if p is None:
            continue
        aug[row], aug[p] = aug[p], aug[row]
        inv = aug[row][col]
        aug[row] = [v / inv for v in aug[row]]
        for i in range(k):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        piv_cols.append(col)
        row += 1
    if len(piv_cols) < r:
        return None
    for i in range(row, k):
        if aug[i][r] != 0:
            return None
    coords = [Fraction(0)] * r
    for idx, col in enumerate(piv_cols):
        coords[col] = aug[idx][r]
    if any(c.denominator != 1 for c in coords):
        return None
    return tuple(int(c) for c in coords)


def _int_rank(vectors):
    rank, _ = int_matrix_rank([list(v) for v in vectors])
    return rank


def strong_essential_transform(supports, k):
    """Re-express supports (per poly: (CoeffRef, vector) with the
    distinguished term at the origin) over a basis of the lattice all the
    vectors generate.

    When there are exactly k distinct nonzero vectors and they are
    independent they generate the lattice themselves, so they are the basis
    and every polynomial becomes linear in the new variables.  Otherwise an
    echelon lattice basis is computed.
    """
    seen = set()
    for sup in supports:
        for _, vec in sup:
            if any(vec):
                seen.add(tuple(vec))
    distinct = sorted(seen)
    if k == 0:
        basis = ()
    elif len(distinct) == k and _int_rank(distinct) == k:
        basis = tuple(distinct)
    else:
        basis = hermite_basis(distinct)
        if len(basis) != k:
            raise DegenerateLattice(
                f"support lattice has rank {len(basis)}, expected {k}")
    zpolys = []
    for sup in supports:
        zp = []
        for ref, vec in sup:
            coords = lattice_coordinates(basis, tuple(vec))
            if coords is None:
                raise DegenerateLattice("support vector outside the lattice")
            zp.append((ref, coords))
        zpolys.append(tuple(zp))
    return basis, tuple(zpolys)


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraicReduction:
    used_bounds: tuple       # prolongation orders after the corank correction
    corank_offset: int       # how far the original bounds overshot
    essential_tags: tuple    # (poly index, shift) per essential row
    essential_polys: tuple   # the corresponding difference polynomials
    kept_refs: tuple         # transform instances kept as algebraic variables
    dropped_refs: tuple      # transform instances set to one
    basis: tuple             # lattice basis rows over kept_refs
    zpolys: tuple            # per essential row: tuple of (CoeffRef, point)

    @property
    def nzvars(self):
        return len(self.basis)


def algebraic_reduction(spec_polys, bounds, seed=0, exact=False):
    """Full reduction of the specialized subsystem to lattice form.

    spec_polys must be in norm form; bounds are their (finite, nonnegative)
    order bounds.
    """
    if any(b is None or b < 0 for b in bounds):
        raise CorankLost(f"order bounds must be finite and nonnegative: {bounds}")
    rows = prolong(spec_polys, bounds)
    matrix = alg_support_matrix(rows)
    oracle = RankOracle(matrix, seed=seed, exact=exact)
    excess = len(rows) - oracle.rank() - 1
    if excess < 0:
        raise CorankLost("prolonged rows are independent; order bounds failed")
    used = tuple(bounds)
    if excess > 0:
        used = tuple(max(0, b - excess) for b in bounds)
        rows = prolong(spec_polys, used)
        matrix = alg_support_matrix(rows)
        oracle = RankOracle(matrix, seed=seed, exact=exact)
        if oracle.rank() >= len(rows):
            raise CorankLost("dependence lost after lowering the order bounds")

    ess = find_minimal_essential(oracle, len(rows))
    cols = variable_essential_reduce(matrix, list(ess), oracle)
    kept_refs = tuple(matrix.col_labels[c] for c in cols)

    present = set()
    ess_supports = []
    for idx in ess:
        sup = relative_supports(rows[idx][1])
        ess_supports.append(sup)
        for _, vec in sup:
            present.update(vec)
    dropped_refs = tuple(sorted(present - set(kept_refs)))

    projected = tuple(
        tuple((ref, tuple(vec.get(v, 0) for v in kept_refs)) for ref, vec in sup)
        for sup in ess_supports)
    basis, zpolys = strong_essential_transform(projected, len(kept_refs))

    return AlgebraicReduction(
        used_bounds=used,
        corank_offset=max(excess, 0),
        essential_tags=tuple(rows[i][0] for i in ess),
        essential_polys=tuple(rows[i][1] for i in ess),
        kept_refs=kept_refs,
        dropped_refs=dropped_refs,
        basis=basis,
        zpolys=zpolys,
    )
