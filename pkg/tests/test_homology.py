"""Induced homology rank: spec examples, oracle equivalence, properties."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squab import (
    BoundaryClass,
    ErasurePattern,
    HoleSpec,
    PlanarSpec,
    boundary_maps,
    derive_dual,
    gen_bravyi_kitaev,
    gen_planar,
    gen_toric,
    gf2_rank,
    induced_h1,
    is_correctable,
    logical_qubit_count,
    oracle_h1,
)

from conftest import CLOSED, OPEN, alternating_square, genus2_surface, random_pattern


class TestSpecExamples:
    def test_genus2_full_erasure_is_2g(self):
        s = genus2_surface()
        dual = derive_dual(s)
        assert induced_h1(s, dual, ErasurePattern.full(s)) == 4

    def test_empty_erasure_is_zero_everywhere(self, corpus):
        for s, dual in corpus:
            assert induced_h1(s, dual, ErasurePattern.none(s)) == 0, s.name

    def test_toric3_noncontractible_loop(self):
        s, dual = gen_toric(3)
        # horizontal loop: h-edges of row 0 have ids 0, 1, 2
        loop = ErasurePattern.from_edge_ids(s, [0, 1, 2])
        assert induced_h1(s, dual, loop) == 1
        assert oracle_h1(s, loop) == 1

    def test_toric2_weight1_all_correctable(self):
        s, dual = gen_toric(2)
        for q in range(s.n_qubits):
            v = is_correctable(s, dual, ErasurePattern.from_qubits(s.n_qubits, [q]))
            assert v.correctable

    def test_toric2_noncontractible_pair_uncorrectable(self):
        s, dual = gen_toric(2)
        loop = ErasurePattern.from_edge_ids(s, [0, 1])  # h(0,0), h(0,1)
        v = is_correctable(s, dual, loop)
        assert not v.correctable
        assert v.h1_primal == 1
        assert oracle_h1(s, loop) == 1

    def test_full_erasure_uncorrectable_when_k_positive(self, corpus):
        for s, dual in corpus:
            if logical_qubit_count(s, dual) > 0:
                v = is_correctable(s, dual, ErasurePattern.full(s))
                assert not v.correctable, s.name

    def test_oracle_face_boundary_trivial(self):
        s, _ = gen_toric(3)
        face = s.faces[0]
        pattern = ErasurePattern.from_edge_ids(s, face.edges)
        assert oracle_h1(s, pattern) == 0

    def test_oracle_empty(self):
        s, _ = gen_toric(3)
        assert oracle_h1(s, ErasurePattern.none(s)) == 0

    def test_length_mismatch_raises(self):
        s, dual = gen_toric(3)
        with pytest.raises(ValueError, match="length"):
            induced_h1(s, dual, ErasurePattern.from_qubits(5, [0]))
        with pytest.raises(ValueError, match="length"):
            is_correctable(s, dual, ErasurePattern.from_qubits(5, [0]))

    def test_logical_qubit_counts(self):
        s, dual = gen_toric(4)
        assert logical_qubit_count(s, dual) == 2
        s, dual = gen_bravyi_kitaev(3)
        assert logical_qubit_count(s, dual) == 1
        s, dual = gen_planar(PlanarSpec(4, 4))
        assert logical_qubit_count(s, dual) == 0

    def test_verdict_flags_sides(self):
        # a full-column erasure on bk covers an X logical but no Z logical
        s, dual = gen_bravyi_kitaev(3)
        column = ErasurePattern.from_edge_ids(s, [1, 4, 7])  # h(r,1) for r=0,1,2
        v = is_correctable(s, dual, column)
        assert v.h1_dual == 1 and v.h1_primal == 0
        row = ErasurePattern.from_edge_ids(s, [3, 4, 5])  # h(1,c): open-to-open path
        v = is_correctable(s, dual, row)
        assert v.h1_primal == 1 and v.h1_dual == 0


class TestOracleEquivalence:
    def test_random_patterns_match_oracle(self, corpus):
        rng = np.random.default_rng(20240811)
        for s, dual in corpus:
            rev = dual.reversed(s)
            perm = dual.qubit_permutation(s)
            for p in (0.1, 0.3, 0.5, 0.7, 0.9):
                for _ in range(6):
                    pattern = random_pattern(s, p, rng)
                    h1 = induced_h1(s, dual, pattern)
                    assert h1 == oracle_h1(s, pattern), s.name
                    assert 0 <= h1 <= pattern.weight
                    dual_pattern = ErasurePattern(pattern.bits[np.argsort(perm)])
                    got = induced_h1(dual.dual, rev, dual_pattern)
                    assert got == oracle_h1(dual.dual, dual_pattern), f"{s.name} dual"

    def test_exhaustive_small_patterns_alternating_square(self):
        s = alternating_square()
        dual = derive_dual(s)
        for bits in itertools.product([0, 1], repeat=s.n_qubits):
            pattern = ErasurePattern(np.array(bits, dtype=bool))
            assert induced_h1(s, dual, pattern) == oracle_h1(s, pattern)

    def test_monotonicity_under_growth(self, corpus):
        rng = np.random.default_rng(7)
        for s, dual in corpus:
            base = random_pattern(s, 0.3, rng)
            grown = base | random_pattern(s, 0.3, rng)
            assert induced_h1(s, dual, base) <= induced_h1(s, dual, grown), s.name

    def test_correctable_iff_both_oracle_ranks_vanish(self, corpus):
        rng = np.random.default_rng(99)
        for s, dual in corpus:
            perm = dual.qubit_permutation(s)
            for p in (0.2, 0.5):
                pattern = random_pattern(s, p, rng)
                v = is_correctable(s, dual, pattern)
                dual_pattern = ErasurePattern(pattern.bits[np.argsort(perm)])
                assert v.h1_primal == oracle_h1(s, pattern)
                assert v.h1_dual == oracle_h1(dual.dual, dual_pattern)
                assert v.correctable == (v.h1_primal + v.h1_dual == 0)


@st.composite
def planar_specs(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    side_sets = [
        {},
        {"top": OPEN},
        {"left": OPEN},
        {"top": OPEN, "bottom": OPEN},
        {"left": OPEN, "right": OPEN},
    ]
    sides = draw(st.sampled_from(side_sets))
    holes = ()
    if rows >= 3 and cols >= 3:
        if draw(st.booleans()):
            hh = draw(st.integers(1, rows - 2))
            hw = draw(st.integers(1, cols - 2))
            perim = draw(
                st.one_of(
                    st.sampled_from([OPEN, CLOSED]),
                    st.lists(
                        st.sampled_from([OPEN, CLOSED]),
                        min_size=2 * (hh + hw),
                        max_size=2 * (hh + hw),
                    ).map(tuple),
                )
            )
            holes = (HoleSpec(1, 1, hh, hw, perim),)
    return PlanarSpec(rows, cols, holes=holes, **sides)


class TestHypothesis:
    @settings(max_examples=60, deadline=None)
    @given(spec=planar_specs(), seed=st.integers(0, 2**32 - 1), p=st.sampled_from([0.2, 0.5, 0.8]))
    def test_formula_matches_oracle_on_random_planar(self, spec, seed, p):
        s, dual = gen_planar(spec)
        rng = np.random.default_rng(seed)
        pattern = random_pattern(s, p, rng)
        assert induced_h1(s, dual, pattern) == oracle_h1(s, pattern)
        rev = dual.reversed(s)
        perm = dual.qubit_permutation(s)
        dual_pattern = ErasurePattern(pattern.bits[np.argsort(perm)])
        assert induced_h1(dual.dual, rev, dual_pattern) == oracle_h1(dual.dual, dual_pattern)

    @settings(max_examples=40, deadline=None)
    @given(spec=planar_specs(), seed=st.integers(0, 2**32 - 1))
    def test_monotonicity(self, spec, seed):
        s, dual = gen_planar(spec)
        rng = np.random.default_rng(seed)
        base = random_pattern(s, 0.3, rng)
        grown = base | random_pattern(s, 0.2, rng)
        assert induced_h1(s, dual, base) <= induced_h1(s, dual, grown)


class TestBoundaryMaps:
    def test_composition_zero_on_corpus(self, corpus):
        for s, _ in corpus:
            assert boundary_maps(s).composition_is_zero(), s.name

    def test_composition_zero_on_duals(self, corpus):
        for s, dual in corpus:
            assert boundary_maps(dual.dual).composition_is_zero(), s.name

    def test_matrix_shapes(self):
        s, _ = gen_bravyi_kitaev(3)
        maps = boundary_maps(s)
        assert maps.d1.shape == (6, 13)
        assert maps.d2.shape == (13, 6)

    def test_gf2_rank_small_cases(self):
        assert gf2_rank([0b11, 0b01, 0b10]) == 2
        assert gf2_rank([]) == 0
        assert gf2_rank([0, 0]) == 0
        assert gf2_rank([0b111, 0b110, 0b001]) == 2


class TestDistanceBounds:
    def test_toric3_weight_up_to_2_correctable(self):
        s, dual = gen_toric(3)
        n = s.n_qubits
        for combo in itertools.combinations(range(n), 1):
            assert is_correctable(s, dual, ErasurePattern.from_qubits(n, combo)).correctable
        for combo in itertools.combinations(range(n), 2):
            assert is_correctable(s, dual, ErasurePattern.from_qubits(n, combo)).correctable

    def test_bk3_weight_up_to_2_correctable_weight3_not(self):
        s, dual = gen_bravyi_kitaev(3)
        n = s.n_qubits
        for r in (1, 2):
            for combo in itertools.combinations(range(n), r):
                assert is_correctable(s, dual, ErasurePattern.from_qubits(n, combo)).correctable
        # straight horizontal erasure of weight 3: h(1,c) has ids 3,4,5
        row = ErasurePattern.from_edge_ids(s, [3, 4, 5])
        assert not is_correctable(s, dual, row).correctable
