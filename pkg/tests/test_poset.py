import itertools

import pytest

from posetcodes import (
    CapacityError,
    NotAPartialOrderError,
    Poset,
    all_hierarchical_posets,
    all_posets,
    are_isomorphic,
)
from conftest import naive_ideal


def fig1_pair():
    """A hierarchical poset P and a non-hierarchical Q on [4] where 1 and 4
    sit on different levels of Q but are unrelated."""
    P = Poset.from_relations(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
    Q = Poset.from_relations(4, [(1, 3), (2, 3), (2, 4)])
    return P, Q


class TestConstruction:
    def test_p0_levels(self, p0):
        assert p0.levels == ((1, 2), (3,))
        assert p0.height == 2
        assert p0.leq(2, 3) and not p0.leq(1, 3)

    def test_chain_has_three_levels(self, p3):
        assert p3.levels == ((1,), (2,), (3,))
        assert p3 == Poset.chain(3)

    def test_cycle_rejected(self):
        with pytest.raises(NotAPartialOrderError):
            Poset.from_relations(3, [(1, 2), (2, 1)])
        with pytest.raises(NotAPartialOrderError):
            Poset.from_relations(3, [(1, 2), (2, 3), (3, 1)])

    def test_closure_is_computed(self):
        P = Poset.from_relations(3, [(1, 2), (2, 3)])
        assert P.leq(1, 3)

    def test_out_of_range_label(self):
        with pytest.raises(ValueError):
            Poset.from_relations(2, [(1, 3)])

    def test_level_sizes_builder(self):
        P = Poset.from_level_sizes((2, 1))
        assert P.levels == ((1, 2), (3,))
        assert P.is_hierarchical


class TestIdeals:
    def test_prime_ideal_p0(self, p0):
        assert p0.ideal_of([3]) == {2, 3}

    def test_empty_set(self, p0):
        assert p0.ideal_of([]) == frozenset()

    def test_prime_ideal_p1(self, p1):
        assert p1.ideal_of([3]) == {1, 2, 3}

    def test_matches_naive_closure(self, p0, p1, p2, p3):
        for P in (p0, p1, p2, p3):
            for k in range(P.n + 1):
                for A in itertools.combinations(range(1, P.n + 1), k):
                    assert P.ideal_of(A) == naive_ideal(P, A)

    def test_maximal_elements(self, p0, p3):
        assert p0.maximal_elements({1, 2, 3}) == {1, 3}
        assert p3.maximal_elements({1, 2, 3}) == {3}
        A = Poset.antichain(4)
        assert A.maximal_elements({1, 3}) == {1, 3}

    def test_ideal_of_maximals_recovers_ideal(self):
        for P in all_posets(4):
            for I in P.ideals():
                assert P.ideal_of(P.maximal_elements(I)) == I

    def test_enumeration_p0(self, p0):
        got = {tuple(sorted(I)) for I in p0.ideals()}
        assert got == {(), (1,), (2,), (1, 2), (2, 3), (1, 2, 3)}

    def test_enumeration_extremes(self):
        assert len(Poset.antichain(2).ideals()) == 4
        assert len(Poset.chain(3).ideals()) == 4

    def test_enumeration_matches_subset_filter(self):
        for P in all_posets(4):
            brute = {
                frozenset(S)
                for k in range(P.n + 1)
                for S in itertools.combinations(range(1, P.n + 1), k)
                if P.ideal_of(S) == frozenset(S)
            }
            assert set(P.ideals()) == brute

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            Poset.antichain(25).ideals()


class TestHierarchy:
    def test_p0_defect(self, p0):
        d = p0.hierarchy_defect()
        assert (d.alpha, d.a, d.b, d.c) == (2, 1, 3, 2)
        assert not p0.is_hierarchical

    def test_fig1(self):
        P, Q = fig1_pair()
        assert P.is_hierarchical
        d = Q.hierarchy_defect()
        assert not Q.is_hierarchical
        assert (d.a, d.b) == (1, 4)

    def test_antichain_is_hierarchical(self):
        assert Poset.antichain(5).is_hierarchical

    def test_defect_restriction_is_tiny_counterexample(self, p0):
        for P in all_posets(5):
            d = P.hierarchy_defect()
            if d is None:
                continue
            sub, labels = P.restrict({d.a, d.b, d.c})
            assert are_isomorphic(sub, p0) is not None

    def test_agrees_with_definitional_quantifier(self):
        for n in range(1, 6):
            for P in all_posets(n):
                definitional = all(
                    P.leq(a, b)
                    for i in range(P.height)
                    for j in range(i + 1, P.height)
                    for a in P.levels[i]
                    for b in P.levels[j]
                )
                assert P.is_hierarchical == definitional


class TestDual:
    def test_p0_dual_relation(self, p0):
        D = p0.dual()
        assert D.leq(3, 2) and not D.leq(2, 3)

    def test_chain_reverses(self, p3):
        D = p3.dual()
        assert D.leq(3, 1)
        assert D.levels == ((3,), (2,), (1,))

    def test_involution_and_complement_ideals(self):
        for P in all_posets(4):
            assert P.dual().dual() == P
            universe = frozenset(range(1, P.n + 1))
            dual_ideals = set(P.dual().ideals())
            assert {universe - I for I in P.ideals()} == dual_ideals

    def test_heights_consistent(self):
        for P in all_posets(4):
            for a in range(1, P.n + 1):
                for b in range(1, P.n + 1):
                    if P.less(a, b):
                        assert P.level_of(a) < P.level_of(b)
            for g in P.levels:
                for a, b in itertools.combinations(g, 2):
                    assert not P.leq(a, b) and not P.leq(b, a)


class TestSubposets:
    def test_ideal_restriction_p0(self, p0):
        sub, labels = p0.induced_subposet({2, 3})
        assert labels == (2, 3)
        assert sub == Poset.chain(2)
        sub2, _ = p0.induced_subposet({1, 2})
        assert sub2 == Poset.antichain(2)

    def test_empty_ideal(self, p0):
        sub, labels = p0.induced_subposet(frozenset())
        assert sub.n == 0 and labels == ()

    def test_non_ideal_rejected(self, p0):
        with pytest.raises(ValueError):
            p0.induced_subposet({3})


class TestIsomorphism:
    def test_p0_ideals_not_isomorphic(self, p0):
        A, _ = p0.restrict({1, 2})
        B, _ = p0.restrict({2, 3})
        assert are_isomorphic(A, B) is None

    def test_self_isomorphism(self, p1):
        iso = are_isomorphic(p1, p1)
        assert iso is not None

    def test_fig1_not_isomorphic(self):
        P, Q = fig1_pair()
        assert are_isomorphic(P, Q) is None

    def test_witness_is_order_preserving(self, p2):
        Q = Poset.from_relations(3, [(3, 1), (3, 2)])  # relabeled copy of p2
        iso = are_isomorphic(p2, Q)
        assert iso is not None
        for a in range(1, 4):
            for b in range(1, 4):
                assert p2.leq(a, b) == Q.leq(iso[a], iso[b])


class TestAutomorphisms:
    def test_p0_trivial(self, p0):
        assert p0.automorphisms() == [(1, 2, 3)]

    def test_antichain_symmetric_group(self):
        perms = Poset.antichain(3).automorphisms()
        assert len(perms) == 6

    def test_two_level_swap(self):
        P = Poset.from_level_sizes((2, 1))
        assert P.automorphisms() == [(1, 2, 3), (2, 1, 3)]

    def test_group_axioms(self):
        for P in all_posets(4):
            perms = set(P.automorphisms())
            ident = tuple(range(1, P.n + 1))
            assert ident in perms
            for f in perms:
                for g in perms:
                    comp = tuple(f[g[i] - 1] for i in range(P.n))
                    assert comp in perms

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            Poset.antichain(13).automorphisms()


class TestCatalogues:
    def test_counts_up_to_iso(self):
        assert [len(all_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]

    def test_pairwise_non_isomorphic(self):
        cat = all_posets(4)
        for P, Q in itertools.combinations(cat, 2):
            assert are_isomorphic(P, Q) is None

    def test_hierarchical_catalogue_matches_filter(self):
        for n in range(1, 6):
            hier = [P for P in all_posets(n) if P.is_hierarchical]
            assert len(hier) == 2 ** (n - 1)
            assert len(all_hierarchical_posets(n)) == len(hier)
