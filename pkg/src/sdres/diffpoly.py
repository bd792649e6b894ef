"""Laurent difference polynomials in generic form.

A difference variable y_i carries a shift count: the VarRef (i, k) stands for
the k-th transform of y_i.  A generic Laurent difference polynomial is a sum
of terms, each a symbolic coefficient (a CoeffRef, standing for some
transform of an input coefficient u_ij) times a Laurent monomial in VarRefs.

The symbolic support vector encodes, for each difference variable, the shift
structure of every monomial ratio M_ik/M_i0 as a univariate polynomial in the
shift operator: exponent e on transform k contributes e*x^k.  Stacking those
vectors over a system gives the symbolic support matrix whose rank decides
whether the sparse difference resultant exists at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DimensionMismatch
from .multipoly import UniPoly


class VarRef(NamedTuple):
    var: int     # difference variable index, 1-based
    shift: int   # transform count, >= 0


class CoeffRef(NamedTuple):
    poly: int    # input polynomial index
    coeff: int   # coefficient position within the polynomial (0 = distinguished)
    shift: int   # how often the whole polynomial has been transformed


class Monomial:
    """Immutable Laurent monomial in difference variables."""

    __slots__ = ("powers",)

    def __init__(self, powers=()):
        if isinstance(powers, dict):
            items = powers.items()
        else:
            items = powers
        cleaned = tuple(sorted((VarRef(*v), e) for v, e in items if e != 0))
        object.__setattr__(self, "powers", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("Monomial is immutable")

    @classmethod
    def one(cls):
        return cls()

    def is_one(self):
        return not self.powers

    def exponent(self, ref):
        for v, e in self.powers:
            if v == ref:
                return e
        return 0

    def mul(self, other):
        d = dict(self.powers)
        for v, e in other.powers:
            d[v] = d.get(v, 0) + e
        return Monomial(d)

    def ratio(self, other):
        """self / other as a Laurent monomial."""
        d = dict(self.powers)
        for v, e in other.powers:
            d[v] = d.get(v, 0) - e
        return Monomial(d)

    def shifted(self, l):
        return Monomial(tuple((VarRef(v.var, v.shift + l), e) for v, e in self.powers))

    def variables(self):
        return {v.var for v, _ in self.powers}

    def var_refs(self):
        return tuple(v for v, _ in self.powers)

    def order_in(self, var):
        """Highest transform of y_var present, or None when absent."""
        shifts = [v.shift for v, e in self.powers if v.var == var]
        return max(shifts) if shifts else None

    def drop_vars(self, vars_to_one):
        """Set whole difference variables (all transforms) to 1."""
        return Monomial(tuple((v, e) for v, e in self.powers if v.var not in vars_to_one))

    def evaluate(self, assignment):
        """Exact value at a dict VarRef -> number; Laurent exponents need
        nonzero values."""
        acc = Fraction(1)
        for v, e in self.powers:
            val = Fraction(assignment[v])
            acc *= val ** e
        return acc

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self):
        return hash(self.powers)

    def __repr__(self):
        return f"Monomial({format_monomial(self)})"


def format_monomial(m):
    if m.is_one():
        return "1"
    bits = []
    for v, e in m.powers:
        s = f"y[{v.var},{v.shift}]"
        bits.append(s if e == 1 else f"{s}^{e}")
    return "*".join(bits)


@dataclass(frozen=True)
class DiffPolynomial:
    """Generic Laurent difference polynomial: sum of coeff * monomial terms.

    The first term is the distinguished one (the u_i0 term).  CoeffRefs are
    pairwise distinct; monomials may repeat (that only happens after setting
    variables to one).
    """

    terms: tuple  # tuple of (CoeffRef, Monomial)

    def __post_init__(self):
        refs = [r for r, _ in self.terms]
        if len(set(refs)) != len(refs):
            raise ValueError("coefficient symbols must be pairwise distinct")

    @property
    def distinguished(self):
        return self.terms[0]

    def coeff_refs(self):
        return tuple(r for r, _ in self.terms)

    def variables(self):
        out = set()
        for _, m in self.terms:
            out |= m.variables()
        return out

    def var_refs(self):
        out = set()
        for _, m in self.terms:
            out.update(m.var_refs())
        return out

    def __repr__(self):
        bits = []
        for r, m in self.terms:
            c = format_coeff_ref(r)
            bits.append(c if m.is_one() else f"{c}*{format_monomial(m)}")
        return " + ".join(bits)


def format_coeff_ref(r):
    base = f"u[{r.poly},{r.coeff}]"
    if r.shift == 0:
        return base
    if r.shift == 1:
        return "d" + base
    return f"d^{r.shift}" + base


@dataclass(frozen=True)
class DiffSystem:
    """n+1 generic Laurent difference polynomials in n difference variables."""

    polys: tuple
    nvars: int

    def __post_init__(self):
        if len(self.polys) != self.nvars + 1:
            raise DimensionMismatch(
                f"{len(self.polys)} polynomials over {self.nvars} variables; "
                f"need exactly n+1 = {self.nvars + 1}")

    def subsystem(self, indices):
        """Row selection only; still indexed by the original positions."""
        return tuple(self.polys[i] for i in indices)


def shift_poly(f, l):
    """Apply the transform operator l times."""
    if l == 0:
        return f
    return DiffPolynomial(tuple(
        (CoeffRef(r.poly, r.coeff, r.shift + l), m.shifted(l)) for r, m in f.terms))


def norm_form(f):
    """Minimal monomial multiple of f that is a genuine difference polynomial.

    Returns (normal polynomial, multiplier monomial).  Afterwards every
    VarRef present has minimum exponent exactly 0 over the terms and no
    exponent is negative.
    """
    mins = {}
    for _, m in f.terms:
        for v, e in m.powers:
            mins[v] = min(mins.get(v, 0), e) if v in mins else e
    # a VarRef absent from some term has implicit exponent 0 there
    for v in list(mins):
        if any(m.exponent(v) == 0 for _, m in f.terms):
            mins[v] = min(mins[v], 0)
    mult = Monomial({v: -e for v, e in mins.items() if e != 0})
    if mult.is_one():
        return f, mult
    normal = DiffPolynomial(tuple((r, m.mul(mult)) for r, m in f.terms))
    return normal, mult


def order_of(f, var):
    """ord(f, y_var) computed on the norm form; None when absent (-infinity)."""
    nf, _ = norm_form(f)
    best = None
    for _, m in nf.terms:
        o = m.order_in(var)
        if o is not None:
            best = o if best is None else max(best, o)
    return best


def order_matrix(system_polys, variables):
    """Rows: polynomials; columns: the given difference variables; entries
    ord(N(P_i), y_j) with None standing in for -infinity."""
    return tuple(tuple(order_of(p, v) for v in variables) for p in system_polys)


def specialize_poly(f, keep_vars):
    """Set every difference variable outside keep_vars (all transforms) to 1."""
    drop = set(f.variables()) - set(keep_vars)
    if not drop:
        return f
    return DiffPolynomial(tuple((r, m.drop_vars(drop)) for r, m in f.terms))


# ---------------------------------------------------------------------------
# symbolic support vectors / matrices
# ---------------------------------------------------------------------------
#
# A matrix entry is a dict CoeffRef -> UniPoly: the formal sum of generic
# coefficients weighted by shift polynomials in x.

def monomial_shift_poly(m, var):
    """The x-polynomial of y_var inside a Laurent monomial: sum e * x^shift."""
    coeffs = {}
    for v, e in m.powers:
        if v.var == var:
            coeffs[v.shift] = coeffs.get(v.shift, 0) + e
    if not coeffs:
        return UniPoly()
    top = max(coeffs)
    return UniPoly(tuple(coeffs.get(k, 0) for k in range(top + 1)))


def symbolic_support_vector(f, variables):
    """One matrix row: for each variable, the sum over non-distinguished terms
    of u_ik times the shift polynomial of M_ik/M_i0."""
    ref0, m0 = f.distinguished
    row = []
    for var in variables:
        entry = {}
        for r, m in f.terms[1:]:
            d = monomial_shift_poly(m.ratio(m0), var)
            if not d.is_zero():
                if r in entry:
                    entry[r] = entry[r] + d
                else:
                    entry[r] = d
        row.append(entry)
    return tuple(row)


@dataclass(frozen=True)
class SupportMatrix:
    rows: tuple        # tuple of rows, each a tuple of {CoeffRef: UniPoly}
    row_labels: tuple  # polynomial indices
    col_labels: tuple  # difference variable indices

    def substituted(self, values):
        """UniPoly matrix after substituting integers for the coefficients."""
        out = []
        for row in self.rows:
            out.append([_entry_substitute(e, values) for e in row])
        return out

    def coeff_refs(self):
        refs = set()
        for row in self.rows:
            for entry in row:
                refs.update(entry.keys())
        return refs

    def column_shift_polys(self, col):
        """Every x-polynomial occurring in one column (for the gcd bound)."""
        out = []
        for row in self.rows:
            out.extend(row[col].values())
        return out


def _entry_substitute(entry, values):
    acc = UniPoly()
    for r, d in entry.items():
        acc = acc + d * values[r]
    return acc


def support_matrix(system_polys, nvars, row_labels=None):
    variables = tuple(range(1, nvars + 1))
    rows = tuple(symbolic_support_vector(p, variables) for p in system_polys)
    if row_labels is None:
        row_labels = tuple(range(len(system_polys)))
    return SupportMatrix(rows=rows, row_labels=tuple(row_labels), col_labels=variables)
