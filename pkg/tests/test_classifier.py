import pytest

from polyinv import (
    Polytope,
    c,
    classify,
    cube,
    decompose_join,
    hypersimplex,
    is_defect_polytope,
    product,
    projective_join,
    simplex,
    unimodular_equivalent,
)
from polyinv.errors import DomainError

from conftest import TRIANGLE_HALF, segment


class TestIsDefect:
    @pytest.mark.parametrize("r", [2, 3, 4, 5])
    def test_simplices(self, r):
        assert is_defect_polytope(simplex(r))

    def test_unit_square(self):
        assert not is_defect_polytope(cube(2, 1))

    def test_prism(self):
        assert is_defect_polytope(product(simplex(2), cube(1, 1)))

    def test_non_delzant_never_defect(self):
        assert not is_defect_polytope(hypersimplex(2, 4))


class TestDecomposeJoin:
    def test_prism(self):
        prism = product(simplex(2), cube(1, 1))
        dec = decompose_join(prism)
        assert dec.k == 2
        assert dec.defect == 1
        assert len(dec.fibers) == 3
        for f in dec.fibers:
            assert f.dim == 1 and f.vertices == ((0,), (1,))

    def test_figure_join(self):
        J = projective_join([segment(2), segment(2), segment(3)])
        dec = decompose_join(J)
        assert dec.k == 2 and dec.defect == 1
        lengths = sorted(f.vertices[-1][0] for f in dec.fibers)
        assert lengths == [2, 2, 3]

    def test_simplex_case(self):
        dec = decompose_join(simplex(3))
        assert dec.k == 3 and dec.defect == 3
        assert all(f.dim == 0 for f in dec.fibers)

    def test_none_when_c_positive(self):
        assert decompose_join(cube(2, 1)) is None

    def test_requires_delzant(self):
        with pytest.raises(DomainError):
            decompose_join(hypersimplex(2, 4))

    def test_requires_dim_2(self):
        with pytest.raises(DomainError):
            decompose_join(segment(1))

    def test_projection_maps_onto_standard_simplex(self):
        prism = product(simplex(2), cube(1, 1))
        dec = decompose_join(prism)
        import polyinv.linalg as la

        images = {
            tuple(
                la.dot(row, v) + s
                for row, s in zip(dec.projection_matrix, dec.projection_shift)
            )
            for v in prism._nverts
        }
        assert images == {tuple(w) for w in dec.simplex_image.vertices}

    def test_round_trip_corpus(self, join_corpus):
        for J, k, r in join_corpus:
            assert is_defect_polytope(J), (k, r)
            dec = decompose_join(J)
            assert dec is not None
            rebuilt = projective_join(dec.fibers)
            assert unimodular_equivalent(rebuilt, J), (k, r)
            if dec.k < r:
                assert dec.defect == 2 * dec.k - r
            else:
                assert dec.defect == r
            assert (dec.defect - r) % 2 == 0
            for f in dec.fibers:
                assert f.is_delzant()
                assert f.dim == r - dec.k


class TestClassify:
    def test_simplex3(self):
        rep = classify(simplex(3))
        assert rep.verdict == "defect"
        assert rep.defect == 3
        assert rep.decomposition is not None

    def test_unit_square(self):
        rep = classify(cube(2, 1))
        assert rep.verdict == "non-defect"
        assert rep.dual_degree == 2

    def test_hypersimplex(self):
        rep = classify(hypersimplex(3, 6))
        assert rep.verdict == "non-Delzant"
        assert rep.c == 136
        assert rep.c_star is None

    def test_dim_one(self):
        assert classify(segment(1)).verdict == "dim-1-degenerate"
        assert classify(segment(5)).verdict == "dim-1-degenerate"

    def test_half_triangle(self):
        rep = classify(Polytope.from_vertices(TRIANGLE_HALF))
        assert rep.verdict == "non-Delzant"
        assert rep.c_star is not None

    def test_prism_report_serializes(self):
        rep = classify(product(simplex(2), cube(1, 1)))
        doc = rep.to_dict()
        assert doc["verdict"] == "defect"
        assert doc["decomposition"]["k"] == 2
        assert len(doc["decomposition"]["fibers"]) == 3

    def test_point(self):
        rep = classify(simplex(0))
        assert rep.verdict == "non-defect"
        assert rep.c == 1
