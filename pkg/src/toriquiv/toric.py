"""Stacky fans, graded Cox presentations, sections, and stabilizers.

A geometry can enter either as a :class:`StackyFan` (rays plus simplicial
maximal cones, with the ray map allowed to be non-primitive) or directly as a
graded Cox presentation (degree map plus irrelevant monomial supports).  The
second mode exists because some examples are naturally specified as gradings
with torsion and have no convenient fan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    InfinitelyManySections,
    NonSimplicial,
    NotACone,
    RaysDoNotSpan,
    ValidationError,
)
from .intlin import (
    AbelianGroup,
    IntMatrix,
    Vec,
    cokernel_presentation,
    kernel_basis,
    lp_solve,
    polytope_lattice_points,
    rank_of_rows,
    solve_in_coset,
    vec_add,
)

SECTION_BOX_LIMIT = 10 ** 6


@dataclass(frozen=True)
class LineBundleClass:
    """Element of Pic(X) in the canonical coordinates of the presentation."""
    coords: Vec

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class StackyFan:
    """Triple (N, Sigma, beta): ray vectors beta(e_i) and simplicial max cones."""
    rank: int
    rays: tuple[Vec, ...]
    max_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(set(int(i) for i in c))) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        if any(len(r) != self.rank for r in rays):
            raise ValidationError("ray vectors must live in Z^rank")
        if any(not any(r) for r in rays):
            raise ValidationError("ray vectors must be nonzero")
        if len(set(rays)) != len(rays):
            raise ValidationError("repeated rays")
        if not cones:
            raise ValidationError("at least one maximal cone required")
        for c in cones:
            if any(i < 0 or i >= len(rays) for i in c):
                raise ValidationError(f"cone {c} indexes a missing ray")
            sub = [rays[i] for i in c]
            if rank_of_rows(sub, self.rank) != len(c):
                raise NonSimplicial(f"cone {c} has dependent rays")
        if rank_of_rows(rays, self.rank) != self.rank:
            raise RaysDoNotSpan("rays do not span N_Q")

    def all_cones(self) -> list[tuple[int, ...]]:
        """All faces of all maximal cones (simplicial: subsets of ray sets)."""
        seen = set()
        out = []
        for c in self.max_cones:
            n = len(c)
            for mask in range(1 << n):
                face = tuple(c[i] for i in range(n) if mask >> i & 1)
                if face not in seen:
                    seen.add(face)
                    out.append(face)
        out.sort(key=lambda f: (len(f), f))
        return out

    def has_cone(self, sigma: Sequence[int]) -> bool:
        s = set(int(i) for i in sigma)
        return any(s.issubset(set(c)) for c in self.max_cones)


@dataclass
class CoxSpace:
    """Graded Cox presentation: variables, degree map, irrelevant supports."""
    num_vars: int
    pic: AbelianGroup
    deg: tuple[Vec, ...]                      # pic element per variable
    irrelevant: tuple[frozenset[int], ...]    # supports of the irrelevant generators
    fan: Optional[StackyFan] = None
    complete: Optional[bool] = None           # None = unknown (direct mode)
    var_names: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.var_names:
            self.var_names = tuple(f"x{i + 1}" for i in range(self.num_vars))
        if len(self.deg) != self.num_vars:
            raise ValidationError("one degree per variable required")

    # pic element helpers ----------------------------------------------------

    def trivial_class(self) -> LineBundleClass:
        return LineBundleClass(self.pic.zero())

    def class_of(self, coords: Sequence[int]) -> LineBundleClass:
        return LineBundleClass(self.pic.reduce(tuple(int(x) for x in coords)))

    def deg_of_exponent(self, u: Sequence[int]) -> LineBundleClass:
        acc = self.pic.zero()
        for uρ, d in zip(u, self.deg):
            if uρ:
                acc = self.pic.add(acc, self.pic.scale(d, uρ))
        return LineBundleClass(acc)

    def tensor(self, a: LineBundleClass, b: LineBundleClass) -> LineBundleClass:
        return LineBundleClass(self.pic.add(a.coords, b.coords))

    def dual(self, a: LineBundleClass) -> LineBundleClass:
        return LineBundleClass(self.pic.neg(a.coords))

    def difference(self, a: LineBundleClass, b: LineBundleClass) -> LineBundleClass:
        """Class of b tensor a^dual."""
        return LineBundleClass(self.pic.sub(b.coords, a.coords))

    def monomial_str(self, u: Sequence[int]) -> str:
        parts = []
        for name, e in zip(self.var_names, u):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # Cox stability of a coordinate support -----------------------------------

    def support_is_cox_stable(self, support: frozenset[int]) -> bool:
        """A point with this nonzero-coordinate set survives the Cox quotient."""
        return any(g <= support for g in self.irrelevant)

    # section enumeration ------------------------------------------------------

    def _degree_system(self):
        cols = [list(d) for d in self.deg]
        cols += [list(c) for c in self.pic.relation_columns()]
        return IntMatrix.from_columns(cols, rows=self.pic.coord_len)

    def _degree_zero_lattice(self) -> list[Vec]:
        A = self._degree_system()
        ker = kernel_basis(A)
        return [v[: self.num_vars] for v in ker]

    def sections(self, L: LineBundleClass) -> list[Vec]:
        """All monomial exponents u >= 0 with deg(u) = L, descending lex."""
        A = self._degree_system()
        sol = solve_in_coset(A, self.pic.reduce(L.coords))
        if sol is None:
            return []
        u0 = sol[: self.num_vars]
        from .intlin import hermite_row_basis
        B = hermite_row_basis(self._degree_zero_lattice(), self.num_vars)
        r = len(B)
        if r:
            # nonzero recession direction means infinitely many sections
            cons = []
            for ρ in range(self.num_vars):
                cons.append(([B[i][ρ] for i in range(r)], ">=", 0))
            cons.append(([sum(B[i][ρ] for ρ in range(self.num_vars)) for i in range(r)],
                         "==", 1))
            from .intlin import lp_feasible_point
            if lp_feasible_point(r, cons) is not None:
                raise InfinitelyManySections(
                    "the solution polyhedron has a nonzero recession cone")
        if r == 0:
            return [tuple(u0)] if all(x >= 0 for x in u0) else []
        # polytope in c-space: u0 + B^T c >= 0
        ineqs = [([-B[i][ρ] for i in range(r)], u0[ρ]) for ρ in range(self.num_vars)]
        box = 1
        for i in range(r):
            obj = [0] * r
            obj[i] = 1
            lo = lp_solve(r, [(c, "<=", b) for c, b in ineqs], objective=obj)
            if lo.status == "infeasible":
                return []
            hi = lp_solve(r, [(c, "<=", b) for c, b in ineqs], objective=obj, maximize=True)
            from .intlin import frac_ceil, frac_floor
            box *= max(0, frac_floor(hi.value) - frac_ceil(lo.value) + 1)
            if box > SECTION_BOX_LIMIT:
                raise InfinitelyManySections(
                    f"candidate box exceeds {SECTION_BOX_LIMIT} lattice points")
        out = []
        for c in polytope_lattice_points(ineqs, r):
            u = list(u0)
            for i, ci in enumerate(c):
                if ci:
                    u = [x + ci * y for x, y in zip(u, B[i])]
            assert all(x >= 0 for x in u)
            out.append(tuple(u))
        out.sort(reverse=True)
        return out

    def is_basepoint_free(self, L: LineBundleClass) -> bool:
        """True iff the sections of L cut out nothing outside the Cox unstable locus.

        Combinatorial criterion: for every irrelevant generator support g there
        is a section vanishing on no variable outside g (supp(u) inside g).
        """
        secs = self.sections(L)
        if not secs:
            return False
        supports = [frozenset(i for i, e in enumerate(u) if e) for u in secs]
        return all(any(s <= g for s in supports) for g in self.irrelevant)


def cox_space(fan: StackyFan) -> CoxSpace:
    """Cox presentation of the stack of a stacky fan."""
    bvee = IntMatrix(fan.rays, cols=fan.rank)   # rows = rays: the matrix of beta^vee
    pic = cokernel_presentation(bvee)
    deg = tuple(pic.project(tuple(1 if i == j else 0 for j in range(len(fan.rays))))
                for i in range(len(fan.rays)))
    allv = frozenset(range(len(fan.rays)))
    irrelevant = tuple(sorted({allv - frozenset(c) for c in fan.max_cones},
                              key=lambda s: (len(s), sorted(s))))
    return CoxSpace(
        num_vars=len(fan.rays),
        pic=pic,
        deg=deg,
        irrelevant=irrelevant,
        fan=fan,
        complete=_fan_is_complete(fan),
    )


def _fan_is_complete(fan: StackyFan) -> bool:
    """Exact completeness: every facet is shared by exactly two maximal cones
    sitting on opposite sides of it."""
    n = fan.rank
    if any(len(c) != n for c in fan.max_cones):
        return False
    facet_owners: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for c in fan.max_cones:
        for drop in c:
            facet = tuple(sorted(set(c) - {drop}))
            facet_owners.setdefault(facet, []).append(c)
    for facet, owners in facet_owners.items():
        if len(owners) != 2:
            return False
        normals = kernel_basis(IntMatrix([fan.rays[i] for i in facet], cols=n))
        if len(normals) != 1:
            return False
        nu = normals[0]
        sides = []
        for c in owners:
            rest = next(iter(set(c) - set(facet)))
            val = sum(a * b for a, b in zip(nu, fan.rays[rest]))
            if val == 0:
                return False
            sides.append(val > 0)
        if sides[0] == sides[1]:
            return False
    return True


def stabilizer_at_cone(fan: StackyFan, sigma: Sequence[int],
                       X: Optional[CoxSpace] = None):
    """Character group of the stabilizer of a generic point of the sigma stratum.

    Returns (group, char_of) with group = Pic / <deg(x_rho) : rho outside sigma>
    and char_of mapping a line bundle class to its stabilizer character.
    """
    if not fan.has_cone(sigma):
        raise NotACone(f"{tuple(sigma)} is not a face of the fan")
    if X is None:
        X = cox_space(fan)
    outside = [i for i in range(X.num_vars) if i not in set(sigma)]
    group, _ = X.pic.quotient_by([X.deg[i] for i in outside])

    def char_of(L: LineBundleClass) -> Vec:
        return group.project(X.pic.reduce(L.coords))

    return group, char_of


# -- JSON input -----------------------------------------------------------------

def _ints(seq) -> list[int]:
    return [int(x) for x in seq]


def fan_from_json(data: dict) -> StackyFan:
    try:
        rank = int(data["rank"])
        rays = tuple(tuple(_ints(r)) for r in data["rays"])
        cones = tuple(tuple(_ints(c)) for c in data["max_cones"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad fan JSON: {exc}") from exc
    return StackyFan(rank, rays, cones)


def cox_from_json(data: dict) -> CoxSpace:
    try:
        num_vars = int(data["num_vars"])
        picd = data["pic"]
        free_rank = int(picd["free_rank"])
        torsion = _ints(picd.get("torsion", []))
        deg_rows = [tuple(_ints(d)) for d in data["deg"]]
        irrelevant = tuple(sorted({frozenset(_ints(s)) for s in data["irrelevant"]},
                                  key=lambda s: (len(s), sorted(s))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad cox JSON: {exc}") from exc
    coord_len = free_rank + len(torsion)
    pic = AbelianGroup(free_rank, torsion, IntMatrix.identity(coord_len))
    if any(len(d) != coord_len for d in deg_rows):
        raise ValidationError("degree entries must have free+torsion coordinates")
    for s in irrelevant:
        if any(i < 0 or i >= num_vars for i in s):
            raise ValidationError("irrelevant support indexes a missing variable")
    deg = tuple(pic.reduce(d) for d in deg_rows)
    return CoxSpace(num_vars=num_vars, pic=pic, deg=deg, irrelevant=irrelevant)
