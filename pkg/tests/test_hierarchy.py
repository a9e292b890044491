import itertools

import numpy as np
import pytest

from posetcodes import (
    FieldError,
    InternalCheckError,
    LinearCode,
    NonHierarchicalError,
    Poset,
    ZeroCodeError,
    all_hierarchical_posets,
    brute_invariants,
    canonical_decompose,
    chebyshev_binary,
    classical_macwilliams_transform,
    closed_invariants,
    hamming_weight_enumerator,
    hierarchical_weight_enumerator,
    is_p_perfect,
    macwilliams_dual_enumerator,
    p_weight_enumerator,
    span,
)
from conftest import embed_direct_sum, seeded_codes


def hier_corpus(max_n=4, per=4):
    for n in range(1, max_n + 1):
        for P in all_hierarchical_posets(n):
            for q in (2, 3):
                codes = seeded_codes(q, n, per, seed_key=(n, q) + P.level_sizes)
                yield P, q, codes


class TestCanonicalDecompose:
    def test_p1_worked_example(self, p1):
        dec = canonical_decompose(p1, span(2, (1, 0, 1)))
        assert dec.dimensions == (0, 1)
        assert dec.components[1] == span(2, (1,))
        assert dec.level_offsets == (0, 2)

    def test_antichain_identity(self):
        A = Poset.antichain(4)
        C = LinearCode(2, 4, [[1, 0, 1, 1], [0, 1, 0, 1]])
        dec = canonical_decompose(A, C)
        assert dec.components == (C,)
        assert dec.certificate.apply_code(C) == C

    def test_two_level_rereduction(self):
        # Rows 1110 and 0011 clean to a zero bottom component and a full
        # top component (worked through by hand via reverse-priority RREF).
        P = Poset.from_level_sizes((2, 2))
        C = LinearCode(2, 4, [[1, 1, 1, 0], [0, 0, 1, 1]])
        dec = canonical_decompose(P, C)
        assert dec.dimensions == (0, 2)
        assert dec.components[1] == LinearCode.full_space(2, 2)

    def test_certificate_on_corpus(self):
        for P, q, codes in hier_corpus():
            for C in codes:
                dec = canonical_decompose(P, C)
                assert dec.certificate.apply_code(C) == dec.assembled()
                assert sum(dec.dimensions) == C.k
                for comp, coords in zip(dec.components, dec.level_coords):
                    assert comp.n == len(coords)

    def test_zero_code(self, p1):
        dec = canonical_decompose(p1, LinearCode.zero(2, 3))
        assert dec.dimensions == (0, 0)

    def test_non_hierarchical_rejected(self, p0):
        with pytest.raises(NonHierarchicalError):
            canonical_decompose(p0, span(2, (1, 0, 1)))


class TestClosedInvariants:
    def test_chain_span_001(self, p3):
        inv = closed_invariants(p3, span(2, (0, 0, 1)))
        assert inv.d == 3 and inv.packing == 2

    def test_antichain_reduces_to_hamming(self, hamming74):
        inv = closed_invariants(Poset.antichain(7), hamming74)
        assert (inv.d, inv.packing, inv.covering) == (3, 1, 1)

    def test_p1_regression_case(self, p1):
        C = span(2, (1, 0, 1))
        inv = closed_invariants(p1, C)
        brute = brute_invariants(p1, C)
        assert (inv.d, inv.packing, inv.covering, inv.chebyshev) == (3, 2, 2, 3)
        assert (brute.d, brute.packing, brute.covering, brute.chebyshev) == (3, 2, 2, 3)

    def test_full_space_covering_edge(self):
        for sizes in ((3,), (2, 1), (1, 1, 1)):
            P = Poset.from_level_sizes(sizes)
            C = LinearCode.full_space(2, P.n)
            inv = closed_invariants(P, C)
            brute = brute_invariants(P, C)
            assert inv.covering == brute.covering == 0
            assert inv.packing == brute.packing == 0

    def test_zero_code_rejected(self, p1):
        with pytest.raises(ZeroCodeError):
            closed_invariants(p1, LinearCode.zero(2, 3))

    def test_oracle_equivalence_corpus(self):
        for P, q, codes in hier_corpus():
            for C in codes:
                inv = closed_invariants(P, C)
                brute = brute_invariants(P, C)
                assert (inv.d, inv.packing, inv.covering, inv.chebyshev) == (
                    brute.d, brute.packing, brute.covering, brute.chebyshev,
                ), (P, q, C)


class TestPerfect:
    def test_hamming_with_full_top(self, hamming74):
        P = Poset.from_level_sizes((7, 3))
        C = embed_direct_sum(2, [hamming74, LinearCode.full_space(2, 3)])
        assert is_p_perfect(P, C)

    def test_hamming_with_zero_top(self, hamming74):
        P = Poset.from_level_sizes((7, 3))
        C = embed_direct_sum(2, [hamming74, LinearCode.zero(2, 3)])
        assert not is_p_perfect(P, C)

    def test_full_space_is_perfect(self):
        P = Poset.from_level_sizes((2, 2))
        assert is_p_perfect(P, LinearCode.full_space(2, 4))

    def test_agrees_with_brute_radii(self):
        for P, q, codes in hier_corpus(max_n=4, per=3):
            for C in codes:
                brute = brute_invariants(P, C)
                assert is_p_perfect(P, C) == (brute.packing == brute.covering)


class TestChebyshevBinary:
    def test_p1_value(self, p1):
        assert chebyshev_binary(p1, span(2, (1, 0, 1))) == 3

    def test_single_level_identity(self):
        A = Poset.antichain(4)
        C = LinearCode(2, 4, [[1, 0, 1, 1], [0, 1, 0, 1]])
        from posetcodes.code import hamming_covering_radius

        assert chebyshev_binary(A, C) == 4 - hamming_covering_radius(C)

    def test_ternary_rejected(self, p1):
        with pytest.raises(FieldError):
            chebyshev_binary(p1, span(3, (1, 1, 0)))

    def test_matches_general_formula_and_oracle(self):
        for P, q, codes in hier_corpus(max_n=4, per=3):
            if q != 2:
                continue
            for C in codes:
                v = chebyshev_binary(P, C)
                assert v == closed_invariants(P, C).chebyshev
                assert v == brute_invariants(P, C).chebyshev


class TestWeightEnumeratorFormula:
    def test_p1_worked_example(self, p1):
        W = hierarchical_weight_enumerator(p1, span(2, (1, 0, 1)))
        assert W.coefficients == (1, 0, 0, 1)

    def test_zero_code(self, p1):
        W = hierarchical_weight_enumerator(p1, LinearCode.zero(2, 3))
        assert W.coefficients == (1, 0, 0, 0)

    def test_antichain_is_hamming_enumerator(self, hamming74):
        W = hierarchical_weight_enumerator(Poset.antichain(7), hamming74)
        assert W.coefficients == hamming_weight_enumerator(hamming74)

    def test_matches_direct_count(self):
        for P, q, codes in hier_corpus():
            for C in codes:
                lhs = hierarchical_weight_enumerator(P, C).coefficients
                rhs = p_weight_enumerator(P, C).coefficients
                assert lhs == rhs, (P, q, C)


class TestClassicalTransform:
    def test_self_dual_repetition(self):
        assert classical_macwilliams_transform((1, 0, 1), 2, 2, 1) == (1, 0, 1)

    def test_full_space(self):
        assert classical_macwilliams_transform((1, 2, 1), 2, 2, 2) == (1, 0, 0)

    def test_ternary_pair(self):
        # dual of {00,11,22} is {00,12,21}: same enumerator 1 + 2X^2
        assert classical_macwilliams_transform((1, 0, 2), 3, 2, 1) == (1, 0, 2)

    def test_hamming_74_gives_simplex(self, hamming74):
        W = hamming_weight_enumerator(hamming74)
        assert classical_macwilliams_transform(W, 2, 7, 4) == (1, 0, 0, 0, 7, 0, 0, 0)

    def test_roundtrip_on_random_codes(self):
        for q, n in ((2, 5), (3, 4)):
            for C in seeded_codes(q, n, 5, seed_key=(q, n, 3)):
                W = hamming_weight_enumerator(C)
                Wd = classical_macwilliams_transform(W, q, n, C.k)
                assert Wd == hamming_weight_enumerator(C.dual())
                back = classical_macwilliams_transform(Wd, q, n, n - C.k)
                assert back == W

    def test_bad_mass_rejected(self):
        with pytest.raises(InternalCheckError):
            classical_macwilliams_transform((1, 1, 1), 2, 2, 1)

    def test_non_enumerator_rejected(self):
        # sums to q^k but is not any code's enumerator (A_0 = 0)
        with pytest.raises(InternalCheckError):
            classical_macwilliams_transform((0, 2), 2, 1, 1)


class TestMacWilliamsDual:
    def test_p1_worked_example(self, p1):
        W = macwilliams_dual_enumerator(p1, span(2, (0, 0, 1)))
        assert W.coefficients == (1, 0, 2, 1)

    def test_full_space(self, p1):
        W = macwilliams_dual_enumerator(p1, LinearCode.full_space(2, 3))
        assert W.coefficients == (1, 0, 0, 0)

    def test_zero_code_gives_full_dual(self, p1):
        W = macwilliams_dual_enumerator(p1, LinearCode.zero(2, 3))
        oracle = p_weight_enumerator(p1.dual(), LinearCode.full_space(2, 3))
        assert W.coefficients == oracle.coefficients

    def test_oracle_equivalence_corpus(self):
        for P, q, codes in hier_corpus():
            Pd = P.dual()
            for C in codes:
                lhs = macwilliams_dual_enumerator(P, C).coefficients
                rhs = p_weight_enumerator(Pd, C.dual()).coefficients
                assert lhs == rhs, (P, q, C)

    def test_non_hierarchical_rejected(self, p0):
        with pytest.raises(NonHierarchicalError):
            macwilliams_dual_enumerator(p0, span(2, (1, 0, 1)))
