import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kotoric.dj import SimplicialComplex, boundary_of_simplex, sr_reduce_ko, two_points
from kotoric.ko import KoElement, KoScalar, g1_class, ko_mul, realify
from kotoric.ku import KuElement, Truncation
from kotoric.linalg import smith_normal_form
from kotoric.toric import (
    CharacteristicMatrix,
    InvalidCharacteristic,
    Manifold,
    NotSq2Acyclic,
    bb_numbers,
    cp1_x_cp1,
    fixtures,
    hirzebruch,
    is_sq2_acyclic,
    manifold_ko_equal,
    manifold_ko_rank,
    manifold_ku,
    mod2_cohomology,
    point,
    projective_space,
    validate_characteristic,
)
from oracles import h_vector
from strategies import ko_elements

DATA = Path(__file__).resolve().parent.parent / "data"
FIXTURES = fixtures()
SQUARE = SimplicialComplex(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


def lam(*rows):
    return CharacteristicMatrix(tuple(map(tuple, rows)))


class TestValidate:
    @pytest.mark.parametrize(
        "K, rows, expected",
        [
            (boundary_of_simplex(2), [[1, 0], [0, 1], [-1, -1]], True),
            (boundary_of_simplex(2), [[1, 0], [0, 1], [-2, 0]], False),
            (SQUARE, [[1, 0], [0, 1], [-1, 0], [0, -1]], True),
            (SQUARE, [[1, 0], [0, 2], [-1, 0], [0, -1]], False),
            (SQUARE, [[1, 0], [1, 0], [-1, 0], [0, -1]], False),
        ],
    )
    def test_examples(self, K, rows, expected):
        assert validate_characteristic(K, lam(*rows)) is expected

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            validate_characteristic(SQUARE, lam([1, 0], [0, 1]))
        with pytest.raises(ValueError):
            CharacteristicMatrix(((1, 0), (1,)))

    @given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=4, max_size=4))
    @settings(max_examples=150, deadline=None)
    def test_face_monotone(self, rows):
        L = lam(*rows)
        for face in SQUARE.faces():
            if not face:
                continue
            if all(d == 1 for d in smith_normal_form(L.submatrix(face))):
                for v in face:
                    assert smith_normal_form(L.submatrix([v])) == [1]
        if validate_characteristic(SQUARE, L):
            assert all(smith_normal_form(L.submatrix(f)) == [1, 1] for f in SQUARE.facets)

    def test_invalid_data_refused_downstream(self):
        bad = Manifold(boundary_of_simplex(2), lam([1, 0], [0, 1], [-2, 0]))
        with pytest.raises(InvalidCharacteristic):
            mod2_cohomology(bad)
        with pytest.raises(InvalidCharacteristic):
            manifold_ku(bad)


class TestMod2:
    @pytest.mark.parametrize(
        "M, betti",
        [(projective_space(2), (1, 1, 1)), (cp1_x_cp1(), (1, 2, 1)), (projective_space(3), (1, 1, 1, 1))],
    )
    def test_betti(self, M, betti):
        assert mod2_cohomology(M).betti == betti

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_betti_matches_h_vector_and_facet_count(self, name):
        M = FIXTURES[name]
        H = mod2_cohomology(M)
        assert list(H.betti) == h_vector(M.K.facets, M.n)
        assert sum(H.betti) == len(M.K.facets)
        assert H.betti == H.betti[::-1]
        assert H.sq2_squares_to_zero()

    def test_products_in_cp2(self):
        H = mod2_cohomology(projective_space(2))
        k, a = H.class_of([(1, 0, 0)])
        assert (k, a) == (1, 1)
        assert H.multiply(1, a, 1, a) == (2, 1)
        assert H.multiply(2, 1, 1, 1) == (3, 0)

    def test_sq2_is_squaring_on_degree_two(self):
        H = mod2_cohomology(projective_space(4))
        # Sq^2 x^k = k x^(k+1)
        for k in range(1, 4):
            assert H.sq2_matrix(k).to_dense() == [[k % 2]]


class TestBB:
    @pytest.mark.parametrize(
        "name, s, m",
        [
            ("cp2", (0, 0, 0), (0, 1)),
            ("cp3", (0, 0, 0, 1), (0, 1, 0)),
            ("cp4", (0, 0, 0, 0, 0), (0, 1, 0, 1)),
            ("cp5", (0, 0, 0, 0, 0, 1), (0, 1, 0, 1, 0)),
            ("cp1xcp1", (0, 2, 1), (0, 0)),
            ("hirzebruch1", (0, 1, 0), (0, 1)),
            ("hirzebruch2", (0, 2, 1), (0, 0)),
            ("cp2xcp2", (0, 0, 0, 0, 0), (0, 2, 1, 1)),
        ],
    )
    def test_values(self, name, s, m):
        bb = bb_numbers(FIXTURES[name])
        assert (bb.s, bb.m) == (s, m)

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_bookkeeping(self, name):
        M = FIXTURES[name]
        H = mod2_cohomology(M)
        bb = bb_numbers(M)
        for i in range(1, M.n + 1):
            below = bb.m[i - 1]
            here = bb.m[i] if i < M.n else 0
            assert H.dim(i) == bb.s[i] + here + below
        assert bb.s[0] == 0

    @pytest.mark.parametrize(
        "M, expected",
        [(projective_space(2), True), (projective_space(3), False), (hirzebruch(1), False), (hirzebruch(3), False)],
    )
    def test_acyclic(self, M, expected):
        assert is_sq2_acyclic(M) is expected

    def test_odd_twists_have_single_low_summand(self):
        for a in (1, 3, -1):
            assert bb_numbers(hirzebruch(a)).nonzero_s() == {1: 1}


class TestKuModel:
    @pytest.mark.parametrize(
        "M, rank",
        [
            (projective_space(2), 3),
            (cp1_x_cp1(), 4),
            (projective_space(3), 4),
            (hirzebruch(1), 4),
            (Manifold(two_points(), lam([1], [-1])), 2),
            (point(), 1),
        ],
    )
    def test_rank(self, M, rank):
        model = manifold_ku(M)
        assert model.rank == rank
        assert model.quotient.torsion() == []
        assert manifold_ku(M, window=M.n + 3).rank == rank

    def test_window_too_small(self):
        with pytest.raises(ValueError):
            manifold_ku(projective_space(2), window=2)

    def test_cp2_basis_and_relations(self):
        model = manifold_ku(projective_space(2))
        assert model.basis() == [(0, 0, 2), (0, 0, 1), (0, 0, 0)]
        assert model.normal_form({(0, 1, 0): 1}) == {(0, 0, 1): 1}
        assert model.normal_form({(1, 0, 0): 1}) == {(0, 0, 1): 1}
        assert model.is_zero({(3, 0, 0): 1})
        assert model.is_zero({(1, 1, 1): 5})

    @given(
        st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3), max_size=4),
        st.dictionaries(st.tuples(*[st.integers(0, 2)] * 4), st.integers(-3, 3), max_size=4),
    )
    @settings(max_examples=60, deadline=None)
    def test_ring_homomorphism(self, a, b):
        model = manifold_ku(hirzebruch(1))
        assert model.mul(a, b) == model.mul(model.normal_form(a), model.normal_form(b))

    def test_json_roundtrip(self):
        M = hirzebruch(1)
        assert Manifold.from_json(json.dumps(M.to_dict())).to_dict() == M.to_dict()

    @pytest.mark.parametrize("text", ['{"complex": {"m": 1, "facets": [[1]]}}', '{"complex": {"m": 1, "facets": [[1]]}, "lambda": [["a"]]}'])
    def test_json_malformed(self, text):
        with pytest.raises(ValueError):
            Manifold.from_json(text)

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_data_files_match_fixtures(self, name):
        M = Manifold.from_json((DATA / f"{name}.json").read_text())
        assert M.to_dict() == FIXTURES[name].to_dict()


@pytest.fixture(scope="module")
def cp2():
    return manifold_ku(projective_space(2))


class TestKO:
    def test_quotient_equality(self, cp2):
        a = g1_class({1}, 0, 3)
        t = Truncation.uniform(3, 2)
        for gen in cp2.generators:
            u = KuElement(t, 0, {e: c for e, c in gen.items() if max(e) <= 2})
            assert manifold_ko_equal(a, a + realify(u), cp2)
        assert manifold_ko_equal(g1_class({1}, 0, 3), g1_class({2}, 0, 3), cp2)
        assert not manifold_ko_equal(a, ko_mul(a, a), cp2)
        assert not manifold_ko_equal(a, KoElement.zero(3), cp2)

    def test_refuses_non_acyclic(self):
        model = manifold_ku(projective_space(3))
        with pytest.raises(NotSq2Acyclic):
            manifold_ko_equal(g1_class({1}, 0, 4), g1_class({2}, 0, 4), model)
        with pytest.raises(NotSq2Acyclic):
            manifold_ko_rank(model, 0)

    def test_degree_mismatch(self, cp2):
        with pytest.raises(ValueError):
            manifold_ko_equal(g1_class({1}, 0, 3), g1_class({1}, 1, 3), cp2)

    @given(ko_elements(3, s=0, bound=2), ko_elements(3, s=0, bound=1), st.integers(-2, 2))
    @settings(max_examples=40, deadline=None)
    def test_congruence_and_dj_factorisation(self, cp2, a, c, k):
        junk = KoElement(3, 0, reduced={((1, 1, 1), (0, 0, 0)): k})
        b = a + junk
        assert manifold_ko_equal(a, b, cp2)
        assert manifold_ko_equal(ko_mul(a, c), ko_mul(b, c), cp2)
        assert manifold_ko_equal(a, sr_reduce_ko(a, cp2.K), cp2)

    def test_ranks_cp2(self, cp2):
        ranks = [manifold_ko_rank(cp2, -d) for d in range(8)]
        assert ranks == [2, 0, 1, 0, 2, 0, 1, 0]
        assert ranks[0] + ranks[2] == cp2.rank

    @pytest.mark.parametrize(
        "name, ranks",
        [("cp4", [3, 0, 2, 0, 3, 0, 2, 0]), ("cp2xcp2", [5, 0, 4, 0, 5, 0, 4, 0])],
    )
    def test_ranks_frozen(self, name, ranks):
        model = manifold_ku(FIXTURES[name])
        got = [manifold_ko_rank(model, -d) for d in range(8)]
        assert got == ranks
        assert got[0] + got[2] == model.rank
        assert all(manifold_ko_rank(model, -d) == manifold_ko_rank(model, -d - 8) for d in range(8))
        assert manifold_ko_rank(model, 6) == got[2]

    def test_point(self):
        assert manifold_ko_rank(manifold_ku(point()), 0) == 1

    def test_torsion_part(self, cp2):
        e = KoElement(3, -1, KoScalar.token("e"))
        assert not manifold_ko_equal(e, KoElement.zero(3, -1), cp2)
        assert manifold_ko_equal(e, e, cp2)
