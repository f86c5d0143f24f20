from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from corpus import SKEW_Q, Z2, corpus, orthogonal_pairs
from conelab.cones import (
    ConeElement,
    ConeError,
    LocalityError,
    are_orthogonal,
    cone_index,
    faces,
    interior_cells,
    is_smooth,
    make_cone,
    minkowski_product,
    placing_triangulation,
    ray_vectors,
    smooth_subdivision,
    transverse_cone,
    triangulate,
    unimodular_fan,
    zero_cone,
)
from conelab.linalg import STANDARD, coordinates, det, solve, lattice_canonical, lattice_intersect_span, lattice_index

J = zero_cone()
e1 = make_cone([(1, 0)])
e2 = make_cone([(0, 1)])

gen2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(any)


@st.composite
def cones2(draw):
    a, b = draw(gen2), draw(gen2)
    assume(a[0] * b[1] - a[1] * b[0] != 0)
    return make_cone([a, b], Z2)


class TestMakeCone:
    def test_primitivised(self):
        C = make_cone([(2, 0)])
        assert C.generators == ((1, 0),)
        assert C.lattice == lattice_canonical([(1, 0)])

    def test_default_lattice(self):
        C = make_cone([(1, 0), (1, 2)])
        assert C.lattice == lattice_canonical([(1, 0), (1, 2)])
        assert lattice_index(C.lattice, lattice_canonical(Z2)) == 2

    def test_zero_cone(self):
        assert make_cone([]) == J
        assert J.is_zero_cone and J.dim == 0

    def test_errors(self):
        with pytest.raises(ConeError, match="non-simplicial"):
            make_cone([(1, 0), (0, 1), (1, 1)])
        with pytest.raises(ConeError, match="span"):
            make_cone([(1, 0)], [(0, 1)])

    def test_embedding_equality(self):
        assert make_cone([(1,)]) == make_cone([(1, 0, 0)])
        assert hash(make_cone([(1,)])) == hash(make_cone([(1, 0)]))


class TestFaces:
    def test_examples(self):
        C = make_cone([(1, 0), (0, 1)])
        fs = faces(C)
        assert len(fs) == 4 and J in fs and C in fs
        assert make_cone([(1, 0)]) in fs
        assert faces(J) == [J]
        D = make_cone([(1, 0), (1, 2)], Z2)
        (f12,) = [F for F in faces(D) if F.generators == ((1, 2),)]
        assert f12.lattice == lattice_canonical([(1, 2)])

    def test_faces_of_smooth_are_smooth(self):
        for C in corpus().values():
            if is_smooth(C):
                assert all(is_smooth(F) for F in faces(C))


class TestTransverse:
    def test_examples(self):
        C = make_cone([(1, 0), (1, 1)], Z2)
        t = transverse_cone(C, make_cone([(1, 0)]))
        assert t == make_cone([(0, 1)])
        assert transverse_cone(C, J) == C
        assert transverse_cone(C, C) == J

    def test_not_a_face(self):
        with pytest.raises(ConeError):
            transverse_cone(make_cone([(1, 0), (1, 1)]), make_cone([(0, 1)]))

    @pytest.mark.parametrize("Q", [STANDARD, SKEW_Q], ids=["dot", "skew"])
    def test_orthogonal_to_face(self, Q):
        for C in corpus().values():
            if Q is SKEW_Q and C.ambient_dim > 2:
                continue
            for F in faces(C):
                assert are_orthogonal(Q, transverse_cone(C, F, Q), F)


class TestProduct:
    def test_examples(self):
        assert minkowski_product(e1, e2) == make_cone([(1, 0), (0, 1)], Z2)
        C = make_cone([(1, 0), (1, 2)])
        assert minkowski_product(J, C) == C
        assert minkowski_product(e1, e1) == e1
        with pytest.raises(ConeError, match="simplicial"):
            minkowski_product(make_cone([(1, 0), (0, 1)]), make_cone([(1, 1)]))

    def test_orthogonality(self):
        assert are_orthogonal(STANDARD, e1, e2)
        assert not are_orthogonal(STANDARD, e1, make_cone([(1, 1)]))
        assert are_orthogonal(STANDARD, J, make_cone([(1, 2)]))
        assert are_orthogonal(SKEW_Q, e1, make_cone([(-1, 2)]))

    def test_monoid_laws_on_orthogonal_samples(self):
        a, b, c = make_cone([(1, 0, 0)]), make_cone([(0, 1, 0)]), make_cone([(0, 0, 1)])
        assert minkowski_product(minkowski_product(a, b), c) == minkowski_product(a, minkowski_product(b, c))
        for _, x, y in orthogonal_pairs():
            assert minkowski_product(x, y) == minkowski_product(y, x)
            assert minkowski_product(x, y).dim == x.dim + y.dim

    def test_element_multiply_enforces_locality(self):
        x = ConeElement({e1: 2})
        assert x.multiply(ConeElement.basis(e2)) == ConeElement({make_cone(Z2): 2})
        with pytest.raises(LocalityError):
            x.multiply(ConeElement.basis(make_cone([(1, 1)])))


def _in_closed(C, x):
    c = coordinates([list(map(Fraction, g)) for g in C.generators], x)
    return c is not None and all(v >= 0 for v in c)


def _section_volume(C, piece):
    """Volume of ``piece`` cut by the hyperplane through the generators of ``C``."""
    w = solve([list(map(Fraction, g)) for g in C.generators], [Fraction(1)] * C.dim)
    scaled = [[Fraction(x) / sum(a * b for a, b in zip(w, g)) for x in g] for g in piece.generators]
    return abs(det(scaled))


class TestSubdivision:
    def test_examples(self):
        pieces = smooth_subdivision(make_cone([(1, 0), (1, 2)], Z2))
        assert sorted(p.generators for p in pieces) == [((1, 0), (1, 1)), ((1, 1), (1, 2))]
        C = make_cone(Z2)
        assert smooth_subdivision(C) == [C]
        pieces = smooth_subdivision(make_cone([(1, 0), (1, 3)], Z2))
        rays = {g for p in pieces for g in p.generators}
        assert len(pieces) == 3 and {(1, 1), (1, 2)} <= rays

    def test_strategies_give_distinct_fans(self):
        rays = [(1, 0), (1, 3)]
        assert unimodular_fan(rays, "shortest") != unimodular_fan(rays, "interior-first")

    @settings(max_examples=40, deadline=None)
    @given(cones2(), st.sampled_from(["shortest", "interior-first"]))
    def test_subdivision_is_a_smooth_fan(self, C, strategy):
        pieces = smooth_subdivision(C, strategy)
        for p in pieces:
            assert p.lattice == C.lattice
            assert lattice_index(lattice_canonical(ray_vectors(p)), lattice_intersect_span(C.lattice, p.generators)) == 1
        # cross-section volumes add up, so the pieces do not overlap
        assert sum(_section_volume(C, p) for p in pieces) == _section_volume(C, C)
        # coverage on a sample grid of rational points
        g1, g2 = C.generators
        for a in range(0, 4):
            for b in range(0, 4):
                x = [Fraction(a) * g1[i] + Fraction(b, 3) * g2[i] for i in range(2)]
                assert any(_in_closed(p, x) for p in pieces)

    def test_interior_cells_partition(self):
        C = make_cone([(1, 0), (1, 3)], Z2)
        cells = interior_cells(C)
        # 3 open 2-cells and 2 open interior rays
        assert sorted(len(c) for c in cells) == [1, 1, 2, 2, 2]

    def test_three_dimensional_index_two(self):
        C = corpus()["index-2 3d"]
        assert cone_index(C) == 2
        pieces = smooth_subdivision(C)
        assert len(pieces) == 3 and all(is_smooth(p) for p in pieces)


class TestTriangulate:
    def test_simplicial_input(self):
        assert triangulate([(1, 0), (1, 1)]) == ConeElement.basis(make_cone([(1, 0), (1, 1)]))

    def test_redundant_ray(self):
        cells = placing_triangulation([(1, 0), (1, 1), (0, 1)])
        assert cells == [((0, 1), (1, 1)), ((1, 0), (1, 1))]
        T = triangulate([(1, 0), (1, 1), (0, 1)])
        assert set(T.terms) == {make_cone([(1, 0), (1, 1)], Z2), make_cone([(1, 1), (0, 1)], Z2)}

    def test_line(self):
        with pytest.raises(ConeError, match="not strongly convex"):
            triangulate([(1, 0), (-1, 0)])

    def test_square_pyramid(self):
        gens = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)]
        cells = placing_triangulation(gens)
        assert len(cells) == 2
        # the two simplices cover the square cross-section: volumes 1 + 1 = 2
        assert sum(abs(det(c)) for c in cells) == 4
