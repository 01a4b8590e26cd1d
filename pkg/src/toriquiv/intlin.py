"""Exact integer and rational linear algebra kernel.

Everything here is exact: integers are arbitrary precision, rationals are
``fractions.Fraction``.  No floating point is used anywhere in this module
(the test suite lints for it).  The ``/`` operator is avoided as well; the
few places that need a rational inverse go through :func:`_finv`.

Conventions: matrices act on column vectors; lattices are stored as lists of
generator rows and canonicalized by row-style Hermite normal form, so lattice
equality is equality of canonical forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

from .errors import TooManyGenerators

Vec = tuple[int, ...]
QVec = tuple[Fraction, ...]


# -- small vector helpers ------------------------------------------------------

def dot(u: Sequence, v: Sequence):
    assert len(u) == len(v)
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(u: Sequence, c) -> tuple:
    return tuple(c * a for a in u)


def _gcd(a: int, b: int) -> int:
    a = -a if a < 0 else a
    b = -b if b < 0 else b
    while b:
        a, b = b, a % b
    return a


def vec_gcd(u: Sequence[int]) -> int:
    g = 0
    for a in u:
        g = _gcd(g, a)
    return g


def primitive(u: Sequence) -> Vec:
    """Primitive integer vector on the same ray (positive multiple)."""
    den = 1
    for a in u:
        if isinstance(a, Fraction):
            den = den * a.denominator // _gcd(den, a.denominator)
    w = [int(a * den) for a in u]
    g = vec_gcd(w)
    if g > 1:
        w = [a // g for a in w]
    return tuple(w)


def _finv(f: Fraction) -> Fraction:
    """Exact inverse of a nonzero Fraction without the division operator."""
    return Fraction(f.denominator, f.numerator)


def frac_floor(f: Fraction) -> int:
    return f.numerator // f.denominator


def frac_ceil(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


# -- integer matrices ----------------------------------------------------------

class IntMatrix:
    """Immutable matrix of arbitrary-precision integers acting on columns."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix")
        else:
            width = cols or 0
        self._e = rows
        self.rows = len(rows)
        self.cols = width

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix([[0] * c for _ in range(r)], cols=c)

    @staticmethod
    def from_columns(columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        ncols = len(columns)
        if ncols == 0:
            return IntMatrix.zero(rows or 0, 0)
        height = len(columns[0])
        return IntMatrix([[col[i] for col in columns] for i in range(height)], cols=ncols)

    def row(self, i: int) -> Vec:
        return self._e[i]

    def column(self, j: int) -> Vec:
        return tuple(self._e[i][j] for i in range(self.rows))

    def row_list(self) -> list[Vec]:
        return list(self._e)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self._e[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], cols=self.rows)

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        assert self.cols == other.rows
        cols = [other.column(j) for j in range(other.cols)]
        return IntMatrix([[dot(r, c) for c in cols] for r in self._e], cols=other.cols)

    def apply(self, v: Sequence) -> tuple:
        assert len(v) == self.cols
        return tuple(dot(r, v) for r in self._e)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        assert self.rows == other.rows
        return IntMatrix([self._e[i] + other._e[i] for i in range(self.rows)],
                         cols=self.cols + other.cols)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self._e == other._e
                and self.cols == other.cols)

    def __hash__(self):
        return hash((self._e, self.cols))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self._e]!r})"


# -- Smith and Hermite normal forms --------------------------------------------

def smith_normal_form(A: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return unimodular (U, D, V) with U*A*V = D diagonal, d_i | d_{i+1}.

    Pivots are chosen with minimal absolute value to control entry growth;
    fine at desk scale (matrices up to ~60x60).
    """
    r, c = A.rows, A.cols
    M = [list(row) for row in A._e]
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row i += q * row j
        Mi, Mj = M[i], M[j]
        for k in range(c):
            Mi[k] += q * Mj[k]
        Ui, Uj = U[i], U[j]
        for k in range(r):
            Ui[k] += q * Uj[k]

    def add_col(i, j, q):
        # col i += q * col j
        for row in M:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    bound = min(r, c)
    while t < bound:
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = M[i][j]
                if v:
                    a = -v if v < 0 else v
                    if best is None or a < best[0]:
                        best = (a, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if M[t][t] < 0:
            negate_row(t)

        while True:
            dirty = False
            for i in range(t + 1, r):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    add_row(i, t, -q)
                    if M[i][t]:
                        swap_rows(i, t)
                        if M[t][t] < 0:
                            negate_row(t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, c):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    add_col(j, t, -q)
                    if M[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            p = M[t][t]
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if M[i][j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        t += 1

    return IntMatrix(U, cols=r), IntMatrix(M, cols=c), IntMatrix(V, cols=c)


def _echelonize(vectors: Iterable[Sequence[int]], n: int) -> list[list[int]]:
    """Integer row echelon form (positive pivots, pivot cols increasing)."""
    pool = [list(v) for v in vectors if any(v)]
    out: list[list[int]] = []
    for col in range(n):
        active = [v for v in pool if v[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[col]))
            piv = active[0]
            rest = []
            for v in active[1:]:
                q = v[col] // piv[col]
                for k in range(col, n):
                    v[k] -= q * piv[k]
                if v[col]:
                    rest.append(v)
            active = [piv] + rest
        piv = active[0]
        pool = [v for v in pool if v is not piv]
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
    return out


def hermite_row_basis(rows: Iterable[Sequence[int]], width: Optional[int] = None) -> list[Vec]:
    """Canonical row-style Hermite basis of the lattice spanned by ``rows``.

    Pivots positive, entries above each pivot reduced into [0, pivot), zero
    rows dropped.  Two generator lists span the same lattice iff their
    canonical bases are equal.
    """
    rows = [list(r) for r in rows]
    if width is None:
        width = len(rows[0]) if rows else 0
    basis = _echelonize(rows, width)
    for idx, b in enumerate(basis):
        j = next(k for k in range(width) if b[k])
        for above in basis[:idx]:
            if above[j]:
                q = above[j] // b[j]
                for k in range(j, width):
                    above[k] -= q * b[k]
    return [tuple(b) for b in basis]


def lattices_equal(rows1, rows2, width: int) -> bool:
    return hermite_row_basis(rows1, width) == hermite_row_basis(rows2, width)


def lattice_contains(rows, vec: Sequence[int], width: int) -> bool:
    """Does the lattice spanned by ``rows`` contain ``vec``?"""
    basis = hermite_row_basis(rows, width)
    v = list(vec)
    for b in basis:
        j = next(k for k in range(width) if b[k])
        if v[j]:
            if v[j] % b[j]:
                return False
            q = v[j] // b[j]
            for k in range(j, width):
                v[k] -= q * b[k]
    return not any(v)


def rank_of_rows(rows, width: int) -> int:
    return len(hermite_row_basis(rows, width))


def kernel_basis(A: IntMatrix) -> list[Vec]:
    """Canonical basis of the integer kernel {x : A x = 0}."""
    _, D, V = smith_normal_form(A)
    bound = min(A.rows, A.cols)
    free = [j for j in range(A.cols)
            if j >= bound or D._e[j][j] == 0]
    return hermite_row_basis([V.column(j) for j in free], A.cols)


def solve_in_coset(A: IntMatrix, b: Sequence[int]) -> Optional[Vec]:
    """One integer solution of A x = b, or None when unsolvable over Z."""
    assert len(b) == A.rows
    U, D, V = smith_normal_form(A)
    ub = U.apply(b)
    bound = min(A.rows, A.cols)
    y = [0] * A.cols
    for i in range(A.rows):
        d = D._e[i][i] if i < bound else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d:
                return None
            y[i] = ub[i] // d
    return V.apply(y)


# -- finitely generated abelian groups -----------------------------------------

class AbelianGroup:
    """Z^free_rank + sum Z/d_i presented as a quotient of an ambient Z^k.

    ``projection`` maps ambient integer vectors to canonical coordinates:
    first the free coordinates, then one coordinate per invariant factor
    (reduced mod d_i, with d_1 | d_2 | ...).
    """

    __slots__ = ("free_rank", "invariant_factors", "projection", "ambient_dim")

    def __init__(self, free_rank: int, invariant_factors: Sequence[int], projection: IntMatrix):
        self.free_rank = free_rank
        self.invariant_factors = tuple(int(d) for d in invariant_factors)
        self.projection = projection
        self.ambient_dim = projection.cols
        assert projection.rows == free_rank + len(self.invariant_factors)
        assert all(d >= 2 for d in self.invariant_factors)
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            assert b % a == 0

    @property
    def coord_len(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    def reduce(self, coords: Sequence[int]) -> Vec:
        assert len(coords) == self.coord_len
        out = list(coords[: self.free_rank])
        for d, x in zip(self.invariant_factors, coords[self.free_rank:]):
            out.append(x % d)
        return tuple(out)

    def project(self, ambient_vec: Sequence[int]) -> Vec:
        return self.reduce(self.projection.apply(ambient_vec))

    def zero(self) -> Vec:
        return (0,) * self.coord_len

    def add(self, a, b) -> Vec:
        return self.reduce(vec_add(a, b))

    def sub(self, a, b) -> Vec:
        return self.reduce(vec_sub(a, b))

    def neg(self, a) -> Vec:
        return self.reduce(vec_scale(a, -1))

    def scale(self, a, k: int) -> Vec:
        return self.reduce(vec_scale(a, k))

    def is_zero(self, a) -> bool:
        return self.reduce(a) == self.zero()

    @property
    def is_trivial(self) -> bool:
        return self.coord_len == 0

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def elements(self) -> Iterator[Vec]:
        assert self.is_finite

        def rec(prefix, factors):
            if not factors:
                yield tuple(prefix)
                return
            for x in range(factors[0]):
                yield from rec(prefix + [x], factors[1:])

        yield from rec([], list(self.invariant_factors))

    def element_order(self, a) -> Optional[int]:
        a = self.reduce(a)
        if any(a[: self.free_rank]):
            return None
        n = 1
        for d, x in zip(self.invariant_factors, a[self.free_rank:]):
            k = d // _gcd(d, x)
            n = n * k // _gcd(n, k)
        return n

    def relation_columns(self) -> list[Vec]:
        """Columns generating the relations of the canonical presentation."""
        cols = []
        for j, d in enumerate(self.invariant_factors):
            col = [0] * self.coord_len
            col[self.free_rank + j] = d
            cols.append(tuple(col))
        return cols

    def preimage(self, element) -> Optional[Vec]:
        """Ambient vector projecting to ``element`` (None if outside image)."""
        if self.is_trivial:
            return (0,) * self.ambient_dim
        cols = [self.projection.column(j) for j in range(self.ambient_dim)]
        cols += self.relation_columns()
        A = IntMatrix.from_columns(cols, rows=self.coord_len)
        sol = solve_in_coset(A, self.reduce(element))
        if sol is None:
            return None
        return tuple(sol[: self.ambient_dim])

    def quotient_by(self, elements) -> tuple["AbelianGroup", IntMatrix]:
        """Quotient group and the induced map on canonical coordinates."""
        cols = list(self.relation_columns())
        cols += [self.reduce(e) for e in elements]
        A = IntMatrix.from_columns(cols, rows=self.coord_len)
        quo = cokernel_presentation(A)
        return quo, quo.projection

    def generated_by(self, elements) -> bool:
        quo, _ = self.quotient_by(elements)
        return quo.is_trivial

    def same_invariants(self, other: "AbelianGroup") -> bool:
        return (self.free_rank == other.free_rank
                and self.invariant_factors == other.invariant_factors)

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbelianGroup({self.describe()})"


def cokernel_presentation(A: IntMatrix) -> AbelianGroup:
    """Present Z^rows / (column span of A) with a canonical projection."""
    U, D, _ = smith_normal_form(A)
    r = A.rows
    bound = min(A.rows, A.cols)
    diag = [D._e[i][i] if i < bound else 0 for i in range(r)]
    free_rows = [i for i in range(r) if diag[i] == 0]
    tors_rows = sorted((i for i in range(r) if abs(diag[i]) >= 2),
                       key=lambda i: abs(diag[i]))
    proj_rows = []
    for i in free_rows:
        row = list(U.row(i))
        lead = next((x for x in row if x), 0)
        if lead < 0:
            row = [-x for x in row]
        proj_rows.append(row)
    for i in tors_rows:
        d = abs(diag[i])
        proj_rows.append([x % d for x in U.row(i)])
    factors = [abs(diag[i]) for i in tors_rows]
    return AbelianGroup(len(free_rows), factors, IntMatrix(proj_rows, cols=r))


# -- exact linear programming ----------------------------------------------------

class LPResult:
    __slots__ = ("status", "value", "point")

    def __init__(self, status: str, value=None, point=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.value = value
        self.point = point


def _simplex_min(tableau, basis, nrows, ncols, cost_row) -> str:
    """Bland's-rule simplex step loop; mutates tableau/basis/cost_row."""
    while True:
        enter = -1
        for j in range(ncols):
            if cost_row[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best = None
        for i in range(nrows):
            a = tableau[i][enter]
            if a > 0:
                ratio = tableau[i][-1] * _finv(Fraction(a))
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        piv = Fraction(tableau[leave][enter])
        inv = _finv(piv)
        tableau[leave] = [x * inv for x in tableau[leave]]
        prow = tableau[leave]
        for i in range(nrows):
            if i != leave and tableau[i][enter]:
                f = tableau[i][enter]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], prow)]
        if cost_row[enter]:
            f = cost_row[enter]
            for j in range(len(cost_row)):
                cost_row[j] -= f * prow[j]
        basis[leave] = enter


def lp_solve(num_vars: int,
             constraints: Sequence[tuple],
             objective: Optional[Sequence] = None,
             maximize: bool = False) -> LPResult:
    """Exact rational LP over free variables.

    ``constraints`` are (coeffs, rel, rhs) with rel one of "<=", ">=", "==";
    ``objective`` is minimized unless ``maximize``.  Free variables are split
    into nonnegative pairs internally; deterministic Bland pivoting.
    """
    if objective is None:
        objective = [0] * num_vars
    obj = [Fraction(c) for c in objective]
    if maximize:
        obj = [-c for c in obj]

    nplus = 2 * num_vars
    slack_count = sum(1 for _, rel, _ in constraints if rel != "==")
    total = nplus + slack_count
    rows, rhs = [], []
    si = 0
    for coeffs, rel, b in constraints:
        assert len(coeffs) == num_vars
        row = [Fraction(0)] * total
        for j, cc in enumerate(coeffs):
            cc = Fraction(cc)
            row[2 * j] = cc
            row[2 * j + 1] = -cc
        b = Fraction(b)
        if rel == "<=":
            row[nplus + si] = Fraction(1)
            si += 1
        elif rel == ">=":
            row[nplus + si] = Fraction(-1)
            si += 1
        elif rel != "==":
            raise ValueError(f"bad relation {rel!r}")
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)

    m = len(rows)
    ncols = total + m
    tableau = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tableau.append(rows[i] + art + [rhs[i]])
    basis = [total + i for i in range(m)]
    cost = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        for j in range(ncols + 1):
            cost[j] -= tableau[i][j]
    for i in range(m):
        cost[total + i] += Fraction(1)
    status = _simplex_min(tableau, basis, m, ncols, cost)
    assert status == "optimal"
    if -cost[-1] > 0:
        return LPResult("infeasible")

    # drive surviving artificials out of the basis, drop redundant rows
    for i in range(m):
        if basis[i] >= total:
            pivot_col = next((j for j in range(total) if tableau[i][j] != 0), None)
            if pivot_col is None:
                continue
            inv = _finv(Fraction(tableau[i][pivot_col]))
            tableau[i] = [x * inv for x in tableau[i]]
            for k in range(m):
                if k != i and tableau[k][pivot_col]:
                    f = tableau[k][pivot_col]
                    tableau[k] = [x - f * y for x, y in zip(tableau[k], tableau[i])]
            basis[i] = pivot_col
    keep = [i for i in range(m) if basis[i] < total]
    tableau = [tableau[i][:total] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    m = len(tableau)

    cost = []
    for j in range(num_vars):
        cost.append(obj[j])
        cost.append(-obj[j])
    cost += [Fraction(0)] * (slack_count + 1)
    for i in range(m):
        if cost[basis[i]]:
            f = cost[basis[i]]
            for j in range(total + 1):
                cost[j] -= f * tableau[i][j]
    status = _simplex_min(tableau, basis, m, total, cost)
    if status == "unbounded":
        return LPResult("unbounded")
    xfull = [Fraction(0)] * total
    for i in range(m):
        xfull[basis[i]] = tableau[i][-1]
    point = tuple(xfull[2 * j] - xfull[2 * j + 1] for j in range(num_vars))
    value = sum(o * p for o, p in zip(obj, point))
    if maximize:
        value = -value
    return LPResult("optimal", value, point)


def lp_feasible_point(num_vars: int, constraints) -> Optional[QVec]:
    res = lp_solve(num_vars, constraints)
    return res.point if res.status == "optimal" else None


def fourier_motzkin_feasible(num_vars: int, constraints) -> bool:
    """Feasibility by Fourier-Motzkin elimination (small systems only)."""
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    for coeffs, rel, b in constraints:
        cs = [Fraction(c) for c in coeffs]
        b = Fraction(b)
        if rel in ("<=", "=="):
            ineqs.append((cs[:], b))
        if rel in (">=", "=="):
            ineqs.append(([-c for c in cs], -b))
    for k in range(num_vars - 1, -1, -1):
        pos, neg, zero = [], [], []
        for cs, b in ineqs:
            if cs[k] > 0:
                pos.append((cs, b))
            elif cs[k] < 0:
                neg.append((cs, b))
            else:
                zero.append((cs, b))
        new = zero
        for cp, bp in pos:
            for cn, bn in neg:
                a, c = cp[k], -cn[k]
                cs = [c * x + a * y for x, y in zip(cp, cn)]
                cs[k] = Fraction(0)
                new.append((cs, c * bp + a * bn))
        seen = set()
        ineqs = []
        for cs, b in new:
            key = (tuple(cs), b)
            if key not in seen:
                seen.add(key)
                ineqs.append((cs, b))
    return all(b >= 0 for _, b in ineqs)


def system_feasible(num_vars: int, constraints) -> bool:
    """Route tiny systems through Fourier-Motzkin, the rest through simplex."""
    if num_vars <= 6 and len(constraints) <= 24:
        return fourier_motzkin_feasible(num_vars, constraints)
    return lp_feasible_point(num_vars, constraints) is not None


# -- rational polyhedral cones ----------------------------------------------------

class RationalCone:
    """cone(generators) + span(lineality_generators), queried exactly."""

    __slots__ = ("generators", "lineality", "dim")

    def __init__(self, generators: Sequence[Sequence], lineality: Sequence[Sequence] = (),
                 dim: Optional[int] = None):
        gens = [primitive(g) for g in generators if any(g)]
        lins = [primitive(l) for l in lineality if any(l)]
        if dim is None:
            if gens:
                dim = len(gens[0])
            elif lins:
                dim = len(lins[0])
            else:
                raise ValueError("ambient dimension required for the trivial cone")
        self.generators = tuple(gens)
        self.lineality = tuple(lins)
        self.dim = dim

    def spans_ambient(self) -> bool:
        return rank_of_rows(list(self.generators) + list(self.lineality), self.dim) == self.dim

    def contains(self, p: Sequence) -> bool:
        p = tuple(Fraction(x) for x in p)
        if not any(p):
            return True
        if rank_of_rows(list(self.lineality), self.dim) == self.dim:
            return True
        k, l = len(self.generators), len(self.lineality)
        n = k + l
        if n == 0:
            return False
        cons = []
        for d in range(self.dim):
            coeffs = [g[d] for g in self.generators] + [v[d] for v in self.lineality]
            cons.append((coeffs, "==", p[d]))
        for i in range(k):
            e = [0] * n
            e[i] = 1
            cons.append((e, ">=", 0))
        return system_feasible(n, cons)

    def contains_relint(self, p: Sequence) -> bool:
        """Is p in the relative interior (all generator coefficients > 0)?"""
        p = tuple(Fraction(x) for x in p)
        if not self.generators:
            return self.contains(p)
        if rank_of_rows(list(self.lineality), self.dim) == self.dim:
            return True
        k, l = len(self.generators), len(self.lineality)
        n = k + l + 1  # last variable is the interiority slack t
        cons = []
        for d in range(self.dim):
            coeffs = [g[d] for g in self.generators] + [v[d] for v in self.lineality] + [0]
            cons.append((coeffs, "==", p[d]))
        for i in range(k):
            e = [0] * n
            e[i] = 1
            e[-1] = -1
            cons.append((e, ">=", 0))
        tcap = [0] * n
        tcap[-1] = 1
        cons.append((tcap, "<=", 1))
        obj = [0] * n
        obj[-1] = 1
        res = lp_solve(n, cons, objective=obj, maximize=True)
        return res.status == "optimal" and res.value > 0

    def query(self, p: Sequence, mode: str) -> bool:
        if mode == "member":
            return self.contains(p)
        if mode == "relative_interior":
            return self.contains_relint(p)
        if mode == "spans_ambient":
            return self.spans_ambient()
        raise ValueError(f"unknown mode {mode!r}")


def cone_query(cone: RationalCone, p: Sequence, mode: str) -> bool:
    return cone.query(p, mode)


# -- double description: extreme rays of inequality cones --------------------------

def extreme_rays_of_inequalities(normals: Sequence[Sequence[int]], dim: int
                                 ) -> tuple[list[Vec], list[Vec]]:
    """Extreme rays and lineality basis of {x : n . x >= 0 for all n}.

    Incremental double description with a rank-based extremality filter;
    adequate for desk-scale cones.
    """
    lineality: list[Vec] = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[Vec] = []
    processed: list[Vec] = []
    for h in normals:
        h = primitive(h)
        if not any(h):
            continue
        hl = [dot(h, l) for l in lineality]
        if any(hl):
            idx = next(i for i, v in enumerate(hl) if v)
            w = lineality[idx] if hl[idx] > 0 else vec_scale(lineality[idx], -1)
            hw = dot(h, w)
            new_lin = []
            for i, l in enumerate(lineality):
                if i == idx:
                    continue
                new_lin.append(primitive(vec_sub(vec_scale(l, hw), vec_scale(w, dot(h, l)))))
            new_rays = []
            for r in rays:
                hr = dot(h, r)
                if hr:
                    r = vec_sub(vec_scale(r, hw), vec_scale(w, hr))
                if any(r):
                    new_rays.append(primitive(r))
            lineality = new_lin
            rays = _dedupe(new_rays + [primitive(w)])
        else:
            pos = [r for r in rays if dot(h, r) > 0]
            zero = [r for r in rays if dot(h, r) == 0]
            neg = [r for r in rays if dot(h, r) < 0]
            combos = []
            for p_ in pos:
                hp = dot(h, p_)
                for n_ in neg:
                    hn = dot(h, n_)
                    combos.append(primitive(vec_sub(vec_scale(n_, hp), vec_scale(p_, hn))))
            rays = _dedupe(pos + zero + combos)
        processed.append(h)
        rays = _filter_extreme(rays, processed, lineality, dim)
    return rays, lineality


def _dedupe(rays: list[Vec]) -> list[Vec]:
    out, seen = [], set()
    for r in rays:
        if any(r) and r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _filter_extreme(rays, normals, lineality, dim) -> list[Vec]:
    lin_rank = rank_of_rows(lineality, dim)
    target = dim - lin_rank - 1
    out = []
    for r in rays:
        if rank_of_rows(list(lineality) + [r], dim) == lin_rank:
            continue  # ray degenerated into the lineality space
        tight = [h for h in normals if dot(h, r) == 0]
        if rank_of_rows(tight, dim) >= target:
            out.append(r)
    return out


def cone_facet_normals(generators: Sequence[Sequence[int]], dim: int,
                       max_generators: int = 12, max_dim: int = 8) -> list[Vec]:
    """Facet normals of cone(generators), valid inside its linear span.

    Each returned normal n satisfies n . g >= 0 for every generator, with
    equality exactly on a facet; normals are canonical up to span(cone)^perp.
    """
    gens = [primitive(g) for g in generators if any(g)]
    if len(gens) > max_generators or dim > max_dim:
        raise TooManyGenerators(
            f"face enumeration limited to {max_generators} generators in dimension {max_dim}")
    rays, _ = extreme_rays_of_inequalities(gens, dim)
    return rays


# -- lattice points of rational polytopes ------------------------------------------

def polytope_coordinate_bounds(ineqs: Sequence[tuple], num_vars: int
                               ) -> Optional[list[tuple[int, int]]]:
    """Integer bounds [lo_i, hi_i] per coordinate of {x : coeffs . x <= rhs}.

    Returns None when the polytope is empty; raises ValueError when unbounded.
    """
    cons = [(c, "<=", b) for c, b in ineqs]
    bounds = []
    for j in range(num_vars):
        obj = [0] * num_vars
        obj[j] = 1
        lo = lp_solve(num_vars, cons, objective=obj, maximize=False)
        if lo.status == "infeasible":
            return None
        hi = lp_solve(num_vars, cons, objective=obj, maximize=True)
        if lo.status == "unbounded" or hi.status == "unbounded":
            raise ValueError("polytope is unbounded")
        bounds.append((frac_ceil(lo.value), frac_floor(hi.value)))
    return bounds


def polytope_lattice_points(ineqs: Sequence[tuple], num_vars: int) -> Iterator[Vec]:
    """All integer points of {x : coeffs . x <= rhs}, in lexicographic order.

    Recursive coordinate fixing with exact LP bounds at every level.
    """
    if num_vars == 0:
        if all(Fraction(b) >= 0 for _, b in ineqs):
            yield ()
        return

    def rec(prefix: list[int], rest: list[tuple]):
        k = len(prefix)
        if k == num_vars:
            if all(Fraction(b) >= 0 for c, b in rest):
                yield tuple(prefix)
            return
        remaining = num_vars - k
        cons = [([Fraction(x) for x in c], "<=", b) for c, b in rest]
        obj = [0] * remaining
        obj[0] = 1
        lo = lp_solve(remaining, cons, objective=obj, maximize=False)
        if lo.status == "infeasible":
            return
        hi = lp_solve(remaining, cons, objective=obj, maximize=True)
        if lo.status == "unbounded" or hi.status == "unbounded":
            raise ValueError("polytope is unbounded")
        for v in range(frac_ceil(lo.value), frac_floor(hi.value) + 1):
            nxt = [(c[1:], Fraction(b) - Fraction(c[0]) * v) for c, b in rest]
            yield from rec(prefix + [v], nxt)

    yield from rec([], [(list(c), Fraction(b)) for c, b in ineqs])
