"""Document round trips, covers handling, and the DOT export."""

import json

import pytest

from conftest import chain
from roughdom import documents as docs
from roughdom.cfspace import CFSpace, cf_closed_sets, validate_cf
from roughdom.errors import InvalidPoset, ParseFailure
from roughdom.gaspace import GASpace
from roughdom.relation import identity_relation
from roughdom.represent import induce_cf_from_poset, tb_witness_from_bf
from roughdom.witness import WitnessFamily, check_tb


def test_poset_round_trip(tmp_path, chain3):
    p = tmp_path / "c3.poset.json"
    docs.write_document(p, docs.poset_to_doc(chain3))
    again = docs.load_poset(p)
    assert again == chain3
    assert docs.poset_to_doc(again) == docs.poset_to_doc(chain3)


def test_covers_needs_flag(tmp_path):
    p = tmp_path / "c.poset.json"
    docs.write_document(p, {"elements": ["0", "1"], "covers": [["0", "1"]]})
    with pytest.raises(ParseFailure):
        docs.load_poset(p)
    P = docs.load_poset(p, allow_covers=True)
    assert P.leq("0", "1")


def test_malformed_poset_is_semantic_error(tmp_path):
    p = tmp_path / "bad.poset.json"
    docs.write_document(p, {"elements": ["0", "1"], "leq": [["0", "1"]]})
    with pytest.raises(InvalidPoset):
        docs.load_poset(p)


def test_space_round_trip(tmp_path, chain3):
    space = induce_cf_from_poset(chain3).space
    p = tmp_path / "c3.space.json"
    docs.write_document(p, docs.space_to_doc(space))
    again = docs.load_space(p)
    assert again == space
    assert docs.space_to_doc(again) == docs.space_to_doc(space)


def test_ga_space_without_family(tmp_path):
    p = tmp_path / "g.space.json"
    docs.write_document(p, {"universe": ["a"], "relation": [["a", "a"]]})
    loaded = docs.load_space(p)
    assert isinstance(loaded, GASpace)


def test_empty_family_member_encoding(tmp_path):
    space = CFSpace(GASpace(["a"], [("a", "a")]), [[], ["a"]])
    p = tmp_path / "e.space.json"
    docs.write_document(p, docs.space_to_doc(space))
    again = docs.load_space(p)
    assert frozenset() in again.family


def test_relation_round_trip(tmp_path, chain2):
    space = induce_cf_from_poset(chain2).space
    validate_cf(space)
    rel = identity_relation(space)
    p = tmp_path / "i.rel.json"
    docs.write_document(p, docs.relation_to_doc(rel))
    again = docs.load_relation(p)
    assert again == rel


def test_witness_round_trip(tmp_path, chain2):
    space = induce_cf_from_poset(chain2).space
    validate_cf(space)
    w = WitnessFamily(space, (identity_relation(space),), (tuple(space.family),))
    p = tmp_path / "w.witness.json"
    docs.write_document(p, docs.witness_to_doc(w))
    again = docs.load_witness(p)
    assert again.space == space
    assert again.relations == w.relations
    assert again.separators == w.separators


def test_selector_round_trip(tmp_path, chain2):
    sel = tb_witness_from_bf(chain2)
    p = tmp_path / "s.sel.json"
    docs.write_document(p, docs.selector_to_doc(sel))
    again = docs.load_selector(p)
    assert again.space == sel.space
    assert again.table == sel.table
    validate_cf(again.space)  # fresh instances start unvalidated
    assert check_tb(again)


def test_selector_missing_index_entry_fails(tmp_path, chain2):
    sel = tb_witness_from_bf(chain2)
    doc = docs.selector_to_doc(sel)
    doc["entries"] = [e for e in doc["entries"] if e["K"] != ["0"]]
    p = tmp_path / "s.sel.json"
    docs.write_document(p, doc)
    with pytest.raises(ParseFailure):
        docs.load_selector(p)


def test_selector_outside_index_defaults(tmp_path, chain2):
    sel = tb_witness_from_bf(chain2)
    doc = docs.selector_to_doc(sel)
    # the empty K holds no family member, so its entry may be omitted
    doc["entries"] = [e for e in doc["entries"] if e["K"] != []]
    p = tmp_path / "s.sel.json"
    docs.write_document(p, doc)
    again = docs.load_selector(p)
    assert frozenset() in again.table


def test_document_kind_dispatch(tmp_path):
    assert docs.document_kind("x.poset.json") == "poset"
    assert docs.document_kind("x.sel.json") == "sel"
    with pytest.raises(ParseFailure):
        docs.document_kind("x.json")


def test_dot_export_counts(chain3):
    space = induce_cf_from_poset(chain3).space
    cs = cf_closed_sets(space)
    dot = docs.closed_sets_dot(cs)
    assert dot.count("[label=") == len(cs.closed_sets)
    assert dot.count("->") == len(cs.poset.covers())


def test_truncated_json(tmp_path):
    p = tmp_path / "t.space.json"
    p.write_text("{\"universe\": [\"a\"", encoding="utf-8")
    with pytest.raises(ParseFailure):
        docs.load_space(p)


def test_relation_doc_with_file_references(tmp_path, chain2):
    space = induce_cf_from_poset(chain2).space
    docs.write_document(tmp_path / "s.space.json", docs.space_to_doc(space))
    validate_cf(space)
    rel = identity_relation(space)
    doc = docs.relation_to_doc(rel)
    doc["source"] = "s.space.json"
    doc["target"] = "s.space.json"
    p = tmp_path / "ref.rel.json"
    docs.write_document(p, doc)
    again = docs.load_relation(p)
    assert again == rel
