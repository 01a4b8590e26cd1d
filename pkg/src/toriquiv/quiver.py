"""Labelled quivers, quivers of sections, and the refinement lattice.

Weight-lattice elements are handled in two shapes: full vectors in Z^{Q_0}
with coordinate sum zero, and reduced coordinates (theta_1, ..., theta_r)
against the basis {e_i - e_0}.  The reduced shape is what the stability and
moduli code consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ConventionViolated, Disconnected, ValidationError
from .intlin import (
    AbelianGroup,
    IntMatrix,
    Vec,
    hermite_row_basis,
    kernel_basis,
    lattices_equal,
    rank_of_rows,
)
from .toric import CoxSpace, LineBundleClass


@dataclass(frozen=True, order=True)
class Arrow:
    tail: int
    head: int
    label: Vec


def _arrow_sort_key(a: Arrow):
    # head ascending, tail descending, label descending lex: reproduces the
    # source-grouped orderings of the worked examples (x1 before x2, long
    # jumps after short ones into the same head)
    return (a.head, -a.tail, tuple(-x for x in a.label))


@dataclass
class LabelledQuiver:
    """Quiver with Pic-classed vertices and divisor-labelled arrows."""

    vertex_classes: tuple[LineBundleClass, ...]
    arrows: tuple[Arrow, ...]
    div_dim: int
    pic: AbelianGroup
    deg: Optional[tuple[Vec, ...]] = None   # pic degree of each divisor coordinate
    var_names: tuple[str, ...] = field(default_factory=tuple)
    vertex_names: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        self.arrows = tuple(sorted(self.arrows, key=_arrow_sort_key))
        if not self.var_names:
            self.var_names = tuple(f"x{i + 1}" for i in range(self.div_dim))
        if not self.vertex_names:
            self.vertex_names = tuple(str(i) for i in range(self.num_vertices))
        seen = set()
        for a in self.arrows:
            key = (a.tail, a.head, a.label)
            assert key not in seen, "duplicate arrow"
            seen.add(key)
            if len(a.label) != self.div_dim:
                raise ValidationError("arrow label has wrong length")
            if any(x < 0 for x in a.label):
                raise ValidationError("arrow labels must be effective")
        if not self._connected():
            raise Disconnected("the underlying graph is not connected")

    # basic shape ---------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_classes)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    @property
    def wt_dim(self) -> int:
        return self.num_vertices - 1

    def _connected(self) -> bool:
        n = self.num_vertices
        if n <= 1:
            return True
        adj = {i: set() for i in range(n)}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def reachable_from_root(self) -> bool:
        seen = {0}
        stack = [0]
        out = {i: [] for i in range(self.num_vertices)}
        for a in self.arrows:
            out[a.tail].append(a.head)
        while stack:
            v = stack.pop()
            for w in out[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    def is_acyclic(self) -> bool:
        n = self.num_vertices
        out = {i: set() for i in range(n)}
        for a in self.arrows:
            out[a.tail].add(a.head)
        state = [0] * n

        def dfs(v):
            state[v] = 1
            for w in out[v]:
                if state[w] == 1:
                    return False
                if state[w] == 0 and not dfs(w):
                    return False
            state[v] = 2
            return True

        return all(state[v] == 2 or dfs(v) for v in range(n))

    # incidence and labelling maps -----------------------------------------

    def inc_full(self, a: Arrow) -> Vec:
        v = [0] * self.num_vertices
        v[a.head] += 1
        v[a.tail] -= 1
        return tuple(v)

    def inc_wt(self, a: Arrow) -> Vec:
        """inc(e_a) in reduced Wt coordinates (theta_1..theta_r)."""
        v = [0] * self.wt_dim
        if a.head:
            v[a.head - 1] += 1
        if a.tail:
            v[a.tail - 1] -= 1
        return tuple(v)

    def inc_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([self.inc_full(a) for a in self.arrows],
                                      rows=self.num_vertices)

    def div_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([a.label for a in self.arrows], rows=self.div_dim)

    def arrow_weights_wt(self) -> list[Vec]:
        return [self.inc_wt(a) for a in self.arrows]

    # Wt coordinate conversions ----------------------------------------------

    def wt_reduce(self, theta_full: Sequence[int]) -> Vec:
        theta_full = tuple(int(x) for x in theta_full)
        if len(theta_full) != self.num_vertices or sum(theta_full) != 0:
            raise ValidationError("theta must be a Z^{Q_0} vector with zero sum")
        return theta_full[1:]

    def wt_expand(self, theta: Sequence[int]) -> Vec:
        theta = tuple(int(x) for x in theta)
        assert len(theta) == self.wt_dim
        return (-sum(theta),) + theta

    # pic data ------------------------------------------------------------------

    def pic_of_wt(self, theta: Sequence[int]) -> Vec:
        """pic(theta) for theta in reduced coordinates."""
        acc = self.pic.zero()
        for c, L in zip(theta, self.vertex_classes[1:]):
            if c:
                acc = self.pic.add(acc, self.pic.scale(L.coords, c))
        return acc

    def deg_of_divisor(self, label: Sequence[int]) -> Vec:
        assert self.deg is not None
        acc = self.pic.zero()
        for c, d in zip(label, self.deg):
            if c:
                acc = self.pic.add(acc, self.pic.scale(d, c))
        return acc


@dataclass
class RefinementLattice:
    """R = inc(ker(div)) with a chosen basis used for the z coordinates."""

    wt_dim: int
    R_basis: tuple[Vec, ...]
    basis: tuple[Vec, ...]

    def __post_init__(self):
        self.R_basis = tuple(tuple(v) for v in hermite_row_basis(self.R_basis, self.wt_dim))
        self.basis = tuple(tuple(int(x) for x in b) for b in self.basis)
        if not lattices_equal(self.basis, self.R_basis, self.wt_dim):
            raise ValidationError("chosen basis does not span R")
        if len(self.basis) != len(self.R_basis):
            raise ValidationError("chosen generators are not a basis of R")

    @property
    def rank(self) -> int:
        return len(self.R_basis)

    def with_basis(self, new_basis: Sequence[Sequence[int]]) -> "RefinementLattice":
        return RefinementLattice(self.wt_dim, self.R_basis, tuple(tuple(b) for b in new_basis))


def refinement_lattice(Q: LabelledQuiver) -> RefinementLattice:
    ker = kernel_basis(Q.div_matrix())
    weights = Q.arrow_weights_wt()
    rows = []
    for w in ker:
        acc = [0] * Q.wt_dim
        for coeff, incw in zip(w, weights):
            if coeff:
                for k in range(Q.wt_dim):
                    acc[k] += coeff * incw[k]
        rows.append(tuple(acc))
    basis = hermite_row_basis(rows, Q.wt_dim)
    return RefinementLattice(Q.wt_dim, tuple(basis), tuple(basis))


@dataclass
class PicMapData:
    matrix: IntMatrix                 # columns = classes of L_1..L_r
    ker_pic: tuple[Vec, ...]          # canonical basis of the integral kernel
    ker_pic_q: tuple[Vec, ...]        # canonical basis of a lattice spanning ker over Q


def pic_map(Q: LabelledQuiver) -> PicMapData:
    """The map Wt(Q) -> Pic, theta -> sum theta_i L_i, with both kernels."""
    r = Q.wt_dim
    cols = [list(L.coords) for L in Q.vertex_classes[1:]]
    M = IntMatrix.from_columns(cols, rows=Q.pic.coord_len)
    aug_cols = cols + [list(c) for c in Q.pic.relation_columns()]
    aug = IntMatrix.from_columns(aug_cols, rows=Q.pic.coord_len)
    ker = [v[:r] for v in kernel_basis(aug)]
    ker = hermite_row_basis(ker, r)
    f = Q.pic.free_rank
    free_cols = [c[:f] for c in cols]
    kerq = kernel_basis(IntMatrix.from_columns(free_cols, rows=f))
    return PicMapData(M, tuple(ker), tuple(kerq))


def quiver_of_sections(X: CoxSpace, classes: Sequence[LineBundleClass]) -> LabelledQuiver:
    """Quiver with one arrow per irreducible torus-invariant section.

    A section u of L_j (x) L_i^dual is reducible when u = u' + u'' for a
    section u' of L_k (x) L_i^dual and u'' of L_j (x) L_k^dual, apart from
    the two trivial factorizations (k = i, u' = 0) and (k = j, u'' = 0).
    """
    classes = list(classes)
    if not classes:
        raise ConventionViolated("empty collection")
    if classes[0].coords != X.pic.zero():
        raise ConventionViolated("the first class must be the trivial bundle")
    coords = [c.coords for c in classes]
    if len(set(coords)) != len(coords):
        raise ConventionViolated("classes must be distinct")
    for i, c in enumerate(classes):
        if not X.sections(c):
            raise ConventionViolated(f"class #{i} has no sections")

    n = len(classes)
    secs: dict[tuple[int, int], list[Vec]] = {}
    sec_sets: dict[tuple[int, int], set] = {}
    for i in range(n):
        for j in range(n):
            s = X.sections(X.difference(classes[i], classes[j])) if i != j \
                else X.sections(X.trivial_class())
            secs[(i, j)] = s
            sec_sets[(i, j)] = set(s)

    arrows = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for u in secs[(i, j)]:
                if not _is_reducible(u, i, j, n, secs, sec_sets):
                    arrows.append(Arrow(i, j, u))

    Q = LabelledQuiver(
        vertex_classes=tuple(classes),
        arrows=tuple(arrows),
        div_dim=X.num_vars,
        pic=X.pic,
        deg=tuple(X.deg),
        var_names=X.var_names,
    )
    if not Q.reachable_from_root():
        raise Disconnected("some vertex is unreachable from the root")
    return Q


def _is_reducible(u: Vec, i: int, j: int, n: int, secs, sec_sets) -> bool:
    for k in range(n):
        for up in secs[(i, k)]:
            if k == i and not any(up):
                continue
            if any(a > b for a, b in zip(up, u)):
                continue
            upp = tuple(b - a for a, b in zip(up, u))
            if k == j and not any(upp):
                continue
            if upp in sec_sets[(k, j)]:
                return True
    return False


# -- diagram checks (used by tests and verification reports) ---------------------

def diagram_commutes(Q: LabelledQuiver) -> bool:
    """deg(div(e_a)) = pic(inc(e_a)) for every arrow."""
    assert Q.deg is not None
    for a in Q.arrows:
        lhs = Q.deg_of_divisor(a.label)
        rhs = Q.pic.sub(Q.vertex_classes[a.head].coords, Q.vertex_classes[a.tail].coords)
        if lhs != rhs:
            return False
    return True


def pic_kills_refinements(Q: LabelledQuiver, R: RefinementLattice) -> bool:
    """pic(r) = 0 for every r in R."""
    return all(Q.pic.is_zero(Q.pic_of_wt(r)) for r in R.R_basis)


def ker_pic_rational_in_R(Q: LabelledQuiver, R: RefinementLattice) -> bool:
    """ker(pic_Q) inside R_Q, tested by rank comparison."""
    pm = pic_map(Q)
    combined = list(R.R_basis) + list(pm.ker_pic_q)
    return rank_of_rows(combined, Q.wt_dim) == rank_of_rows(R.R_basis, Q.wt_dim)


def ker_pic_integral_in_R(Q: LabelledQuiver, R: RefinementLattice) -> bool:
    from .intlin import lattice_contains
    pm = pic_map(Q)
    return all(lattice_contains(R.R_basis, v, Q.wt_dim) for v in pm.ker_pic)
