import json

import pytest

from clustermod.catalog import catalog, catalog_names
from clustermod.documents import (
    dumps,
    emit_seed,
    emit_triangulation,
    emit_word,
    parse_seed,
    parse_triangulation,
    parse_word,
    report_doc,
    report_text,
)
from clustermod.dynamics import word_order
from clustermod.errors import InvalidStep, ParseError, ValidationError
from clustermod.seeds import MappingClassWord, Perm


def test_parse_seed_a2(a2):
    doc = {"vertices": [0, 1], "frozen": [], "epsilon": [["0", "1"], ["-1", "0"]], "d": [1, 1]}
    assert parse_seed(doc) == a2.seed
    assert parse_seed(json.dumps(doc)) == a2.seed


def test_seed_roundtrip_catalog():
    for name in catalog_names():
        seed = catalog(name).seed
        assert parse_seed(emit_seed(seed)) == seed


def test_parse_seed_bad_rational():
    doc = {"vertices": [0], "epsilon": [["1/0"]], "d": [1]}
    with pytest.raises(ParseError):
        parse_seed(doc)


def test_parse_seed_validation_error():
    doc = {"vertices": [0, 1], "epsilon": [["0", "1"], ["1", "0"]], "d": [1, 1]}
    with pytest.raises(ValidationError):
        parse_seed(doc)
    parse_seed(doc, check=False)  # violations become data for the validate command


def test_parse_seed_malformed_json():
    with pytest.raises(ParseError) as err:
        parse_seed("{not json")
    assert "line" in str(err.value)


def test_parse_word_phi(a2):
    word = parse_word("mu 0; perm (0 1)", a2.seed)
    assert word == a2.words["phi"]
    assert word_order(a2.seed, word) == 5


def test_parse_word_empty(a2):
    assert parse_word("", a2.seed) == MappingClassWord.make()


def test_parse_word_unknown_vertex(a2):
    with pytest.raises(InvalidStep):
        parse_word("mu 9", a2.seed)


def test_parse_word_interleaved_perm(a2):
    # perms fold to the end by relabeling later mutation indices
    word = parse_word("perm (0 1); mu 0", a2.seed)
    assert word.mutations == (1,)
    assert word.sigma == Perm.from_cycles([(0, 1)])


def test_parse_word_multi_cycle(x7):
    word = parse_word("mu 0; mu 1; mu 2; perm (0 1 2)(3 4 5 6)", x7.seed)
    assert word == x7.words["psi1"]


def test_parse_word_frozen_permutation(annulus):
    with pytest.raises(InvalidStep):
        parse_word("perm (2 3)", annulus.seed)
    with pytest.raises(InvalidStep):
        parse_word("mu 2", annulus.seed)


def test_parse_word_bad_grammar(a2):
    with pytest.raises(ParseError):
        parse_word("mutate 0", a2.seed)
    with pytest.raises(ParseError):
        parse_word("perm (0)", a2.seed)


def test_word_roundtrip(x7):
    for word in x7.words.values():
        assert parse_word(emit_word(word), x7.seed) == word


def test_triangulation_roundtrip():
    for name in ("annulus-dehn", "punctured-torus", "pentagon-disk"):
        tri = catalog(name).triangulation
        assert parse_triangulation(emit_triangulation(tri)) == tri
        assert parse_triangulation(json.dumps(emit_triangulation(tri))) == tri


def test_triangulation_self_folded_marker_checked():
    doc = {
        "arcs": [0, 1],
        "boundary": [2, 3],
        "triangles": [{"sides": [0, 1, 2], "self_folded": True}, {"sides": [3, 1, 0]}],
    }
    with pytest.raises(ValidationError):
        parse_triangulation(doc)


def test_report_serialization(a2):
    from clustermod.classify import ClassifyBudgets, classify

    report = classify(a2.seed, a2.words["phi"], ClassifyBudgets(max_order=16, fixed_point_restarts=8))
    assert report_text(report) == "Periodic, order 5"
    doc = report_doc(report)
    assert doc["verdict"] == "periodic" and doc["order"] == 5
    dumped = dumps(doc)
    assert json.loads(dumped)["order"] == 5


def test_dumps_deterministic(a2):
    assert dumps(emit_seed(a2.seed)) == dumps(emit_seed(a2.seed))
