"""Cellulation file format: round trips, diagnostics, explicit duals."""

import json

import pytest

from squab import (
    ParseError,
    derive_dual,
    gen_bravyi_kitaev,
    gen_toric,
    load,
    load_document,
    logical_qubit_count,
    save,
)

from conftest import alternating_square, genus2_surface


class TestRoundTrip:
    def test_load_save_identity_on_surfaces(self, corpus):
        for s, _ in corpus:
            assert load(save(s)) == s, s.name

    def test_save_load_identity_on_canonical_payloads(self):
        s, dual = gen_toric(2)
        payload = save(s, dual)
        doc = load_document(payload)
        assert save(doc.surface, doc.dual) == payload

    def test_dual_block_round_trip(self):
        s, dual = gen_bravyi_kitaev(3)
        doc = load_document(save(s, dual))
        assert doc.dual is not None
        assert doc.dual.dual == dual.dual
        assert doc.dual.edge_map == dual.edge_map

    def test_genus2_round_trip(self):
        s = genus2_surface()
        assert load(save(s)) == s


class TestParseErrors:
    def test_duplicate_edge_id(self):
        s, _ = gen_toric(2)
        doc = json.loads(save(s))
        doc["edges"].append(dict(doc["edges"][0]))
        with pytest.raises(ParseError, match="duplicate-id"):
            load(json.dumps(doc))

    def test_bad_json_reports_line(self):
        with pytest.raises(ParseError, match="line 1"):
            load(b'{"format_version": 1,')

    def test_missing_field(self):
        with pytest.raises(ParseError, match="missing-field"):
            load(json.dumps({"format_version": 1, "vertices": [], "edges": []}))

    def test_negative_id(self):
        doc = {
            "format_version": 1,
            "vertices": [{"id": -1}],
            "edges": [],
            "faces": [],
        }
        with pytest.raises(ParseError, match="negative-id"):
            load(json.dumps(doc))

    def test_unknown_class(self):
        s, _ = gen_toric(2)
        doc = json.loads(save(s))
        doc["edges"][0]["class"] = "sideways"
        with pytest.raises(ParseError, match="unknown-class"):
            load(json.dumps(doc))

    def test_unsupported_version(self):
        with pytest.raises(ParseError, match="unsupported-version"):
            load(json.dumps({"format_version": 2, "vertices": [], "edges": [], "faces": []}))


class TestStrictMode:
    def test_unknown_field_ignored_by_default(self):
        s, _ = gen_toric(2)
        doc = json.loads(save(s))
        doc["comment"] = "extra"
        assert load(json.dumps(doc)) == s

    def test_unknown_field_rejected_under_strict(self):
        s, _ = gen_toric(2)
        doc = json.loads(save(s))
        doc["comment"] = "extra"
        with pytest.raises(ParseError, match="unknown-field"):
            load(json.dumps(doc), strict=True)

    def test_layout_block_ignored_by_default(self):
        s, _ = gen_toric(2)
        doc = json.loads(save(s))
        doc["layout"] = {"positions": {"0": [0.0, 0.0]}}
        assert load(json.dumps(doc)) == s
        with pytest.raises(ParseError, match="unknown-field"):
            load(json.dumps(doc), strict=True)


class TestExplicitDual:
    def test_explicit_dual_used_verbatim(self):
        # author a fixture whose dual block is the known derived dual of a
        # different-but-equivalent lattice; the loaded dual must be used
        # as-is, not re-derived
        s = alternating_square()
        dual = derive_dual(s)
        doc = load_document(save(s, dual))
        assert doc.dual is not None
        assert doc.dual.dual == dual.dual
        assert logical_qubit_count(doc.surface, doc.dual) == 1

    def test_edge_map_bijection_checked(self):
        s, dual = gen_toric(2)
        doc = json.loads(save(s, dual))
        doc["dual"]["edge_map"][0][0] = doc["dual"]["edge_map"][1][0]
        with pytest.raises(ParseError, match="bad-edge-map"):
            load_document(json.dumps(doc))

    def test_edge_map_must_cover_dual_side(self):
        s, dual = gen_toric(2)
        doc = json.loads(save(s, dual))
        doc["dual"]["edge_map"][0][1] = doc["dual"]["edge_map"][1][1]
        with pytest.raises(ParseError, match="bad-edge-map"):
            load_document(json.dumps(doc))
