import random
from itertools import combinations_with_replacement

import pytest

from toriquiv.errors import InfinitelyManySections, NonSimplicial, NotACone, RaysDoNotSpan
from toriquiv.intlin import lp_feasible_point
from toriquiv.toric import (
    CoxSpace,
    StackyFan,
    cox_from_json,
    cox_space,
    fan_from_json,
    stabilizer_at_cone,
)


def p112_fan():
    return StackyFan(2, ((1, 0), (-1, 2), (0, -1)), ((0, 1), (1, 2), (0, 2)))


def p123_fan():
    return StackyFan(2, ((1, 0), (0, 1), (-2, -3)), ((0, 1), (1, 2), (0, 2)))


def football_fan():
    return StackyFan(1, ((2,), (-2,)), ((0,), (1,)))


def p2_fan():
    return StackyFan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


class TestCoxSpace:
    def test_p112(self):
        X = cox_space(p112_fan())
        assert X.num_vars == 3
        assert X.pic.free_rank == 1 and X.pic.invariant_factors == ()
        assert [d for d in X.deg] == [(1,), (1,), (2,)]
        assert set(X.irrelevant) == {frozenset({2}), frozenset({0}), frozenset({1})}
        assert X.complete is True

    def test_affine_plane(self):
        fan = StackyFan(2, ((1, 0), (0, 1)), ((0, 1),))
        X = cox_space(fan)
        assert X.pic.is_trivial
        assert X.irrelevant == (frozenset(),)
        assert X.complete is False

    def test_football(self):
        X = cox_space(football_fan())
        assert X.pic.free_rank == 1 and X.pic.invariant_factors == (2,)
        assert X.complete is True

    def test_nonsimplicial_rejected(self):
        with pytest.raises(NonSimplicial):
            StackyFan(2, ((1, 0), (2, 0)), ((0, 1),))

    def test_rays_must_span(self):
        with pytest.raises(RaysDoNotSpan):
            StackyFan(2, ((1, 0), (-1, 0)), ((0,), (1,)))

    def test_fold_over_fan_not_complete(self):
        # two cones on the same side of the shared facet
        fan = StackyFan(2, ((1, 0), (0, 1), (1, 1)), ((0, 1), (1, 2)))
        X = cox_space(fan)
        assert X.complete is False


class TestSections:
    def test_p112_O1(self):
        X = cox_space(p112_fan())
        assert X.sections(X.class_of((1,))) == [(1, 0, 0), (0, 1, 0)]

    def test_p112_O2(self):
        X = cox_space(p112_fan())
        secs = X.sections(X.class_of((2,)))
        assert set(secs) == {(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)}
        assert secs[0] == (2, 0, 0)  # descending lex display order

    def test_p112_negative_empty(self):
        X = cox_space(p112_fan())
        assert X.sections(X.class_of((-1,))) == []

    def test_affine_chart_infinite(self):
        fan = StackyFan(2, ((1, 0), (0, 1)), ((0, 1),))
        X = cox_space(fan)
        with pytest.raises(InfinitelyManySections):
            X.sections(X.trivial_class())

    def test_brute_force_box_scan(self):
        X = cox_space(p112_fan())
        for target in range(0, 5):
            L = X.class_of((target,))
            secs = X.sections(L)
            assert all(max(u) <= 4 for u in secs)
            box = [(a, b, c)
                   for a in range(5) for b in range(5) for c in range(5)
                   if X.deg_of_exponent((a, b, c)).coords == L.coords]
            assert set(secs) == set(box)

    def test_football_sections(self):
        X = cox_space(football_fan())
        # deg x = (1, 1), deg y = (1, 0)
        assert X.deg[0] == (1, 1) and X.deg[1] == (1, 0)
        xy = X.sections(X.class_of((2, 1)))
        assert xy == [(1, 1)]
        quartics = X.sections(X.class_of((4, 0)))
        assert set(quartics) == {(4, 0), (2, 2), (0, 4)}

    def test_multiplicativity(self):
        X = cox_space(p112_fan())
        classes = [X.class_of((k,)) for k in range(0, 4)]
        for L1, L2 in combinations_with_replacement(classes, 2):
            s1, s2 = X.sections(L1), X.sections(L2)
            s12 = set(X.sections(X.tensor(L1, L2)))
            for u in s1:
                for v in s2:
                    assert tuple(a + b for a, b in zip(u, v)) in s12

    def test_deg_surjective_roundtrip(self):
        X = cox_space(p112_fan())
        rng = random.Random(5)
        for _ in range(50):
            e = X.pic.reduce((rng.randrange(-20, 21),))
            pre = X.pic.preimage(e)
            assert pre is not None and X.pic.project(pre) == e


class TestBasePointFree:
    def test_p112_O2_bpf(self):
        X = cox_space(p112_fan())
        assert X.is_basepoint_free(X.class_of((2,)))

    def test_p112_O1_not_bpf(self):
        X = cox_space(p112_fan())
        assert not X.is_basepoint_free(X.class_of((1,)))

    def test_trivial_always_bpf(self):
        for fan in (p112_fan(), football_fan(), p2_fan()):
            X = cox_space(fan)
            assert X.is_basepoint_free(X.trivial_class())

    def test_minkowski_vertex_factorization(self):
        # vertices of the polytope of L1 (x) L2 factor into section products,
        # for base-point-free L1, L2
        X = cox_space(p112_fan())
        L1 = X.class_of((2,))
        L2 = X.class_of((2,))
        s1, s2 = X.sections(L1), X.sections(L2)
        s12 = X.sections(X.tensor(L1, L2))
        products = {tuple(a + b for a, b in zip(u, v)) for u in s1 for v in s2}
        for u in s12:
            if _is_vertex(u, s12):
                assert u in products

    def test_p123_low_degrees_not_bpf(self):
        X = cox_space(p123_fan())
        for k in (1, 2, 3):
            assert not X.is_basepoint_free(X.class_of((k,)))
        assert X.is_basepoint_free(X.class_of((6,)))


def _is_vertex(u, pts):
    others = [p for p in pts if p != u]
    if not others:
        return True
    n = len(others)
    cons = []
    dim = len(u)
    for d in range(dim):
        cons.append(([p[d] for p in others], "==", u[d]))
    cons.append(([1] * n, "==", 1))
    for i in range(n):
        e = [0] * n
        e[i] = 1
        cons.append((e, ">=", 0))
    return lp_feasible_point(n, cons) is None


class TestStabilizers:
    def test_p112_singular_point(self):
        fan = p112_fan()
        G, char = stabilizer_at_cone(fan, (0, 1))
        assert G.invariant_factors == (2,) and G.free_rank == 0
        X = cox_space(fan)
        assert G.element_order(char(X.class_of((1,)))) == 2
        assert G.element_order(char(X.class_of((2,)))) == 1

    def test_smooth_cone_trivial(self):
        G, _ = stabilizer_at_cone(p2_fan(), (0, 1))
        assert G.is_trivial

    def test_football_ray(self):
        fan = football_fan()
        G, char = stabilizer_at_cone(fan, (0,))
        assert G.invariant_factors == (2,)
        X = cox_space(fan)
        assert G.element_order(char(X.class_of((2, 1)))) == 2
        assert G.element_order(char(X.class_of((4, 0)))) == 1

    def test_not_a_cone(self):
        with pytest.raises(NotACone):
            stabilizer_at_cone(p112_fan(), (0, 1, 2))

    def test_face_order_divides(self):
        for fan in (p112_fan(), p123_fan(), football_fan()):
            cones = fan.all_cones()
            orders = {}
            for c in cones:
                G, _ = stabilizer_at_cone(fan, c)
                orders[c] = G.order()
            for tau in cones:
                for sigma in cones:
                    if set(tau) <= set(sigma):
                        assert orders[sigma] % orders[tau] == 0


class TestJsonInput:
    def test_fan_roundtrip(self):
        data = {"rank": "2", "rays": [["1", "0"], ["-1", "2"], ["0", "-1"]],
                "max_cones": [[0, 1], [1, 2], [0, 2]]}
        fan = fan_from_json(data)
        assert fan == p112_fan()

    def test_cox_direct_mode(self):
        data = {
            "num_vars": 4,
            "pic": {"free_rank": 1, "torsion": [2, 2]},
            "deg": [[1, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]],
            "irrelevant": [[0], [1], [2], [3]],
        }
        X = cox_from_json(data)
        assert X.pic.invariant_factors == (2, 2)
        # O(2,0,0) has the four squares as sections and is base-point free
        L = X.class_of((2, 0, 0))
        assert set(X.sections(L)) == {(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)}
        assert X.is_basepoint_free(L)
        assert not X.is_basepoint_free(X.class_of((1, 0, 0)))
