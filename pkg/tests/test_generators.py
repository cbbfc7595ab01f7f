"""Generator contracts: counts, code parameters, hole bookkeeping."""

import pytest

from squab import (
    BoundaryClass,
    ErasurePattern,
    HoleSpec,
    PlanarSpec,
    derive_dual,
    gen_bravyi_kitaev,
    gen_planar,
    gen_toric,
    logical_qubit_count,
    oracle_h1,
    validate,
)

from conftest import CLOSED, INTERIOR, OPEN


def k_checked(surface, dual):
    """Logical qubit count, cross-checked against the matrix oracle."""
    k = logical_qubit_count(surface, dual)
    assert k == oracle_h1(surface, ErasurePattern.full(surface))
    return k


class TestToric:
    @pytest.mark.parametrize("d", range(2, 9))
    def test_counts_and_k(self, d):
        s, dual = gen_toric(d)
        assert len(s.vertices) == d * d
        assert len(s.edges) == 2 * d * d
        assert len(s.faces) == d * d
        assert s.n_qubits == 2 * d * d
        assert all(e.cls is INTERIOR for e in s.edges)
        assert logical_qubit_count(s, dual) == 2

    def test_k_oracle_small(self):
        for d in (2, 3, 4):
            s, dual = gen_toric(d)
            assert k_checked(s, dual) == 2

    def test_rejects_small_d(self):
        with pytest.raises(ValueError):
            gen_toric(1)


class TestBravyiKitaev:
    @pytest.mark.parametrize("d", range(2, 7))
    def test_counts_and_k(self, d):
        s, dual = gen_bravyi_kitaev(d)
        assert s.n_qubits == d * d + (d - 1) * (d - 1)
        assert len(s.vertices) == d * (d + 1)
        assert logical_qubit_count(s, dual) == 1

    def test_k_oracle_small(self):
        for d in (2, 3):
            s, dual = gen_bravyi_kitaev(d)
            assert k_checked(s, dual) == 1

    def test_boundary_classes(self):
        s, _ = gen_bravyi_kitaev(3)
        open_count = sum(1 for e in s.edges if e.cls is OPEN)
        closed_count = sum(1 for e in s.edges if e.cls is CLOSED)
        assert open_count == 2 * (3 - 1)
        assert closed_count == 2 * 3

    def test_rejects_small_d(self):
        with pytest.raises(ValueError):
            gen_bravyi_kitaev(1)


class TestPlanar:
    def test_all_closed_disk_k0(self):
        s, dual = gen_planar(PlanarSpec(4, 4))
        assert s.n_qubits == 2 * 4 * 5
        assert k_checked(s, dual) == 0

    def test_left_right_open_is_bk_topology(self):
        s, dual = gen_planar(PlanarSpec(6, 6, left=OPEN, right=OPEN))
        assert k_checked(s, dual) == 1

    # Increment table frozen from the oracle: (outer sides, hole class)
    # -> k.  An open hole only adds a qubit when an open boundary exists
    # elsewhere to terminate the new relative cycle.
    K_TABLE = [
        (PlanarSpec(6, 6), 0),
        (PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, CLOSED),)), 1),
        (PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, OPEN),)), 0),
        (PlanarSpec(6, 8, holes=(HoleSpec(2, 1, 2, 2, CLOSED), HoleSpec(2, 5, 2, 2, CLOSED))), 2),
        (PlanarSpec(6, 8, holes=(HoleSpec(2, 1, 2, 2, OPEN), HoleSpec(2, 5, 2, 2, OPEN))), 1),
        (PlanarSpec(6, 8, holes=(HoleSpec(2, 1, 2, 2, OPEN), HoleSpec(2, 5, 2, 2, CLOSED))), 1),
        (PlanarSpec(6, 6, left=OPEN, right=OPEN, holes=(HoleSpec(2, 2, 2, 2, CLOSED),)), 2),
        (PlanarSpec(6, 6, left=OPEN, right=OPEN, holes=(HoleSpec(2, 2, 2, 2, OPEN),)), 2),
        (PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, (OPEN, CLOSED) * 4),)), 4),
        (PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, (OPEN,) * 4 + (CLOSED,) * 4),)), 1),
    ]

    @pytest.mark.parametrize("spec,k", K_TABLE)
    def test_hole_k_table(self, spec, k):
        s, dual = gen_planar(spec)
        assert k_checked(s, dual) == k

    def test_hole_removes_interior_structure(self):
        s, _ = gen_planar(PlanarSpec(6, 6, holes=(HoleSpec(2, 2, 2, 2, CLOSED),)))
        # the 2x2 hole removes 4 faces, 4 interior edges, 1 interior vertex
        assert len(s.faces) == 36 - 4
        assert len(s.vertices) == 49 - 1
        assert len(s.edges) == 2 * 6 * 7 - 4

    def test_generated_pairs_validate(self, corpus):
        for s, dual in corpus:
            assert validate(s).ok, s.name
            assert dual.dual.n_qubits == s.n_qubits

    def test_rejects_hole_on_boundary(self):
        with pytest.raises(ValueError, match="boundary"):
            gen_planar(PlanarSpec(4, 4, holes=(HoleSpec(0, 1, 1, 1),)))
        with pytest.raises(ValueError, match="boundary"):
            gen_planar(PlanarSpec(4, 4, holes=(HoleSpec(1, 2, 1, 2),)))

    def test_rejects_touching_holes(self):
        with pytest.raises(ValueError, match="overlap or touch"):
            gen_planar(PlanarSpec(6, 6, holes=(HoleSpec(1, 1, 1, 1), HoleSpec(1, 2, 1, 1))))
        # diagonal corner contact is also a touch
        with pytest.raises(ValueError, match="overlap or touch"):
            gen_planar(PlanarSpec(6, 6, holes=(HoleSpec(1, 1, 1, 1), HoleSpec(2, 2, 1, 1))))

    def test_allows_single_face_gap(self):
        s, dual = gen_planar(PlanarSpec(5, 6, holes=(HoleSpec(2, 1, 1, 1, OPEN), HoleSpec(2, 3, 1, 1, OPEN))))
        assert validate(s).ok
        assert k_checked(s, dual) == 1

    def test_rejects_adjacent_open_sides(self):
        with pytest.raises(ValueError, match="adjacent open sides"):
            gen_planar(PlanarSpec(3, 3, top=OPEN, left=OPEN))

    def test_rejects_bad_perimeter_length(self):
        with pytest.raises(ValueError, match="perimeter"):
            gen_planar(PlanarSpec(5, 5, holes=(HoleSpec(1, 1, 1, 1, (OPEN, CLOSED)),)))

    def test_mixed_perimeter_clockwise_order(self):
        # 1x2 hole: perimeter = top x2, right, bottom x2, left
        spec = PlanarSpec(
            5, 6, holes=(HoleSpec(2, 2, 1, 2, (OPEN, OPEN, CLOSED, CLOSED, CLOSED, CLOSED)),)
        )
        s, _ = gen_planar(spec)
        open_edges = [e for e in s.edges if e.cls is OPEN]
        assert len(open_edges) == 2
        # the two open edges are the hole's top horizontals at row 2
        for e in open_edges:
            r1, r2 = e.ends[0] // 7, e.ends[1] // 7
            assert r1 == r2 == 2

    def test_degenerate_strip(self):
        s, dual = gen_planar(PlanarSpec(1, 4, top=OPEN, bottom=OPEN))
        assert s.n_qubits == 5
        assert k_checked(s, dual) == 1

    def test_rejects_zero_cells(self):
        with pytest.raises(ValueError):
            gen_planar(PlanarSpec(0, 3))
