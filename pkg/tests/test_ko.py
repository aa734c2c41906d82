import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kotoric.ko import (
    ALPHA,
    BETA,
    E,
    KoElement,
    KoScalar,
    complexify,
    g1_class,
    gamma_shift,
    is_g2_normal,
    ko_equal,
    ko_module_action,
    ko_mul,
    normalize_symbol,
    r_of_v_power,
    realify,
    relation_I_sides,
    relation_II_sides,
)
from kotoric.ku import KuElement, Truncation, ku_conjugate
from oracles import complexify_terms
from strategies import ko_elements, raw_terms, subsets, vectors

T4 = Truncation((4,))
T6x2 = Truncation((6, 6))


def sym(I, J, s=0):
    return normalize_symbol(tuple(I), tuple(J), s)


class TestScalars:
    def test_ring_relations(self):
        assert E + E == KoScalar()
        assert E * E * E == KoScalar()
        assert E * ALPHA == KoScalar()
        assert ALPHA * ALPHA == BETA * 4
        assert (E * E).terms == {("ee", 0): 1}

    @pytest.mark.parametrize(
        "s, expected",
        [
            (0, KoScalar.integer(2)),
            (1, KoScalar()),
            (2, ALPHA),
            (4, KoScalar.token("b", 1, 2)),
            (6, KoScalar.token("ab", 1)),
            (-2, KoScalar.token("ab", -1)),
            (-4, KoScalar.token("b", -1, 2)),
        ],
    )
    def test_r_of_v_power(self, s, expected):
        assert r_of_v_power(s) == expected

    def test_degrees(self):
        assert ALPHA.degrees() == {-4}
        assert BETA.degrees() == {-8}
        assert E.degrees() == {-1}
        assert (E * E).degrees() == {-2}


class TestNormalize:
    @pytest.mark.parametrize(
        "I, J, s, expected",
        [
            ((0,), (1,), 1, {((1,), (0,)): -1}),
            ((1,), (1,), 0, {((1,), (0,)): -2}),
            ((0, 1), (1, 0), 0, {((1, 0), (0, 1)): 1}),
            ((0, 1), (1, 0), 1, {((1, 0), (0, 1)): -1}),
        ],
    )
    def test_examples(self, I, J, s, expected):
        a = normalize_symbol(I, J, s)
        assert dict(a.reduced) == expected
        assert a.scalar.is_zero()

    def test_empty_symbol_is_scalar(self):
        a = normalize_symbol((0,), (0,), 2)
        assert a.scalar == ALPHA and not a.reduced
        assert normalize_symbol((0, 0), (0, 0), 1).is_zero()

    def test_rejects_non_normal_keys(self):
        with pytest.raises(ValueError):
            KoElement(1, 0, reduced={((1,), (1,)): 1})
        with pytest.raises(ValueError):
            KoElement(2, 0, reduced={((0, 1), (1, 0)): 1})

    def test_normal_form_predicate(self):
        assert is_g2_normal((1, 0), (0, 1))
        assert not is_g2_normal((0, 1), (1, 0))
        assert not is_g2_normal((1,), (1,))
        assert not is_g2_normal((0,), (0,))

    @given(st.integers(1, 4).flatmap(lambda m: st.tuples(vectors(m, 4), vectors(m, 4))), st.integers(-3, 5))
    @settings(max_examples=200, deadline=None)
    def test_oracle_soundness(self, IJ, s):
        I, J = IJ
        a = normalize_symbol(I, J, s)
        assert all(is_g2_normal(*key) for key in a.reduced)
        d = tuple(min(8, 2 * ((i + j) // 2) + 2) for i, j in zip(I, J))
        t = Truncation(d)
        assert complexify(a, t).coeffs == complexify_terms([((I, J), 1)], s, d)

    @given(st.integers(1, 4).flatmap(lambda m: st.tuples(vectors(m, 4), vectors(m, 4))), st.integers(0, 3), st.data())
    @settings(max_examples=200, deadline=None)
    def test_confluence(self, IJ, s, data):
        """Relation (B) at an arbitrary index gives the same normal form."""
        I, J = IJ
        ks = [k for k in range(len(I)) if I[k] and J[k]]
        assume(ks)
        k = data.draw(st.sampled_from(ks))
        Ik = tuple(v - (j == k) for j, v in enumerate(I))
        Jk = tuple(v - (j == k) for j, v in enumerate(J))
        assert normalize_symbol(I, J, s) == -(normalize_symbol(Ik, J, s) + normalize_symbol(I, Jk, s))


class TestRealifyComplexify:
    def test_realify_examples(self):
        assert realify(KuElement.one(T4, 2)) == KoElement(1, -4, ALPHA)
        assert realify(KuElement.one(T4, 1)).is_zero()
        assert realify(KuElement.x(T4, 1)) == g1_class({1}, 0, 1)

    def test_complexify_examples(self):
        assert complexify(sym((1,), (0,)), T4).coeffs == {(2,): 1, (3,): -1, (4,): 1}
        a = complexify(KoElement(1, -4, ALPHA), T4)
        assert a.coeffs == {(0,): 2} and a.s == 2
        assert complexify(KoElement(1, -8, BETA), T4).coeffs == {(0,): 1}

    def test_complexify_kills_e_and_rejects_odd(self):
        with pytest.raises(ValueError):
            complexify(KoElement(1, -1, E), T4)
        assert complexify(KoElement(1, -2, E * E), T4).is_zero()

    @given(st.integers(1, 3).flatmap(lambda m: ko_elements(m)))
    @settings(max_examples=150, deadline=None)
    def test_r_after_c_is_two(self, a):
        t = Truncation.uniform(a.m, 6)
        lhs = realify(complexify(a, t))
        assert ko_equal(lhs, a.scale(2), t)

    @given(st.integers(1, 3).flatmap(lambda m: st.tuples(
        st.dictionaries(vectors(m, 4), st.integers(-4, 4), max_size=5), st.integers(-2, 5))))
    @settings(max_examples=150, deadline=None)
    def test_c_after_r_is_one_plus_conjugation(self, data):
        coeffs, s = data
        m = len(next(iter(coeffs))) if coeffs else 1
        t = Truncation.uniform(m, 4)
        u = KuElement(t, s, coeffs)
        assert complexify(realify(u), t) == u + ku_conjugate(u)


class TestProducts:
    def test_ring_mul_example(self):
        p = ko_mul(sym((1, 0), (0, 0)), sym((0, 1), (0, 0)))
        assert dict(p.reduced) == {((1, 1), (0, 0)): 1, ((1, 0), (0, 1)): 1}

    def test_unit_and_scalar_two(self):
        a = sym((2, 1), (0, 1), 1)
        assert ko_mul(a, KoElement.one(2)) == a
        assert ko_mul(a, KoElement(2, 0, KoScalar.integer(2))) == a.scale(2)

    def test_e_kills_reduced_classes(self):
        a = sym((1, 0), (0, 1), 0)
        assert ko_mul(KoElement(2, -1, E), a).is_zero()
        assert ko_module_action(E * E, a).is_zero()

    def test_module_action(self):
        a = sym((1, 2), (0, 0), 1)
        assert ko_module_action(BETA, a) == sym((1, 2), (0, 0), 5)
        assert ko_module_action(ALPHA, a) == sym((1, 2), (0, 0), 3).scale(2)
        assert ko_mul(KoElement(2, -8, BETA), a) == ko_module_action(BETA, a)

    def test_gamma(self):
        a = sym((1, 0), (0, 1), 0)
        assert gamma_shift(a) == sym((1, 0), (0, 1), 2)
        assert gamma_shift(gamma_shift(a)) == ko_module_action(BETA, a)
        assert gamma_shift(a).scale(2) == ko_module_action(ALPHA, a)
        with pytest.raises(ValueError):
            gamma_shift(KoElement.one(2))

    @given(st.integers(1, 3).flatmap(lambda m: st.tuples(ko_elements(m, bound=2), ko_elements(m, bound=2), ko_elements(m, bound=1))))
    @settings(max_examples=80, deadline=None)
    def test_homomorphism_commutative_associative(self, abc):
        a, b, c = abc
        t = Truncation.uniform(a.m, 6)
        ab = ko_mul(a, b)
        assert complexify(ab, t) == complexify(a, t) * complexify(b, t)
        assert ab == ko_mul(b, a)
        assert ko_mul(ab, c) == ko_mul(a, ko_mul(b, c))
        assert all(is_g2_normal(*key) for key in ab.reduced)

    @given(st.integers(1, 4).flatmap(lambda m: st.tuples(*[vectors(m, 3)] * 4)), st.integers(0, 3), st.integers(0, 3))
    @settings(max_examples=150, deadline=None)
    def test_relation_c(self, vecs, s, t):
        I, J, H, K = vecs
        add = lambda p, q: tuple(x + y for x, y in zip(p, q))
        lhs = ko_mul(sym(I, J, s), sym(H, K, t))
        rhs = sym(add(I, H), add(J, K), s + t) + sym(add(J, H), add(I, K), s + t).scale((-1) ** s)
        assert lhs == rhs


class TestG1:
    @pytest.mark.parametrize(
        "S, s, m, expected",
        [
            ({1}, 0, 2, {((1, 0), (0, 0)): 1}),
            ({1, 2}, 1, 2, {((1, 1), (0, 0)): 1}),
        ],
    )
    def test_classes(self, S, s, m, expected):
        assert dict(g1_class(S, s, m).reduced) == expected

    def test_empty_set_is_scalar(self):
        assert g1_class(set(), 1, 2).is_zero()
        assert g1_class(set(), 0, 2) == KoElement(2, 0, KoScalar.integer(2))

    def test_relation_I_examples(self):
        lhs, rhs = relation_I_sides({1, 2}, set(), set(), 0, 0, 2)
        X1, X2, X12 = g1_class({1}, 0, 2), g1_class({2}, 0, 2), g1_class({1, 2}, 0, 2)
        expected = ko_mul(ko_mul(X1, X2), X12 + X1 + X2 + KoElement(2, 0, KoScalar.integer(4)))
        assert lhs == rhs == expected
        lhs, rhs = relation_I_sides({1}, set(), set(), 1, 1, 2)
        assert lhs == rhs == gamma_shift(ko_mul(X1, X1) + X1.scale(4))

    def test_relation_preconditions(self):
        with pytest.raises(ValueError):
            relation_I_sides({1}, {1}, set(), 0, 0, 2)
        with pytest.raises(ValueError):
            relation_II_sides(2, {1, 3}, 0, 3)
        with pytest.raises(ValueError):
            relation_II_sides(1, {2}, 0, 3)

    @pytest.mark.parametrize("s", [0, 1])
    def test_relation_II_examples(self, s):
        lhs, rhs = relation_II_sides(1, {2, 3}, s, 3)
        assert ko_equal(lhs, rhs, Truncation((4, 4, 4)))
        assert lhs == rhs

    @given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.integers(0, 1), st.integers(0, 1))
    @settings(max_examples=100, deadline=None)
    def test_relation_I_property(self, labels, s, t):
        A = {i + 1 for i, l in enumerate(labels) if l == 1}
        B = {i + 1 for i, l in enumerate(labels) if l == 2}
        C = {i + 1 for i, l in enumerate(labels) if l == 3}
        lhs, rhs = relation_I_sides(A, B, C, s, t, 4)
        assert ko_equal(lhs, rhs, Truncation.uniform(4, 4))

    @given(subsets(4, 2, 3), st.integers(0, 1))
    @settings(max_examples=60, deadline=None)
    def test_relation_II_property(self, S, s):
        assume(min(S) > 1)
        i = min(S) - 1
        lhs, rhs = relation_II_sides(i, S, s, 4)
        assert ko_equal(lhs, rhs, Truncation.uniform(4, 4))


class TestEquality:
    def test_symbolic_vs_truncated(self):
        a = sym((1,), (0,))
        assert not ko_equal(a, KoElement.zero(1))
        assert ko_equal(a, a)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            ko_equal(sym((1,), (0,), 0), sym((1,), (0,), 1))

    def test_torsion_compared_directly(self):
        a = KoElement(1, -1, E)
        assert not ko_equal(a, KoElement.zero(1, -1), T4)
        assert ko_equal(a, a, T4)

    @given(raw_terms(2, bound=2), st.integers(0, 3))
    @settings(max_examples=100, deadline=None)
    def test_truncated_equality_matches_oracle(self, terms, s):
        from strategies import from_terms

        a = from_terms(terms, s, 2)
        assert complexify(a, T6x2).coeffs == complexify_terms(terms, s, (6, 6))
