import json

import pytest

import opetopic

THETA = "(3;[(2;[a:[a:*]]):[(2;[a:[a:*]]):*,*],*])"
BINARY = "(2;[a:[a:*]])"
TERNARY = "(2;[a:[a:[a:*]]])"


def test_enumeration_counts():
    assert len(opetopic.enumerate(2, 3, 3)) == 4
    assert opetopic.enumerate(1) == ["a"]
    assert len(opetopic.enumerate(3, 2, 2)) == 13


def test_faces_and_target():
    assert opetopic.face_counts(THETA) == [4, 5, 3, 1]
    assert opetopic.target_code(THETA) == TERNARY
    assert opetopic.source_codes(THETA) == [BINARY, BINARY]
    table = json.loads(opetopic.face_table_json(THETA))
    assert [len(table[str(d)]) for d in (3, 2, 1, 0)] == [1, 3, 5, 4]


def test_json_round_trip():
    blob = opetopic.opetope_json(THETA)
    assert opetopic.code_of(blob) == THETA
    with pytest.raises(ValueError):
        opetopic.code_of("(2;[a:*]")


def test_hom_counts():
    assert opetopic.hom_count("p", "a") == 2
    assert opetopic.hom_count("a", THETA) == 5
    assert opetopic.hom_count(BINARY, BINARY) == 1


def test_realize_counts():
    cells = json.loads(opetopic.realize_json(BINARY))["cells"]
    assert [len(cells[str(d)]) for d in (0, 1, 2)] == [3, 3, 1]


def test_normalize_word():
    word = {
        "codomain": {"code": BINARY},
        "word": [{"kind": "iso", "at": "a"}, {"kind": "source", "index": 0, "at": BINARY}],
    }
    normal = json.loads(opetopic.normalize_word(json.dumps(word)))
    assert normal["word"] == [{"kind": "source", "index": 0, "at": BINARY}]


def test_colimit_coequalizer():
    diagram = {
        "objects": [
            {"cells": {"0": [{"id": "p", "shape": "p", "boundary": {}}]}},
            {
                "cells": {
                    "0": [
                        {"id": "x", "shape": "p", "boundary": {}},
                        {"id": "y", "shape": "p", "boundary": {}},
                    ],
                    "1": [{"id": "f", "shape": "a", "boundary": {"0/0": "x", "0/1": "y"}}],
                }
            },
        ],
        "arrows": [
            {"src": 0, "dst": 1, "map": {"0": {"p": "x"}}},
            {"src": 0, "dst": 1, "map": {"0": {"p": "y"}}},
        ],
    }
    result = json.loads(opetopic.colimit_json(json.dumps(diagram)))
    cells = result["colimit"]["cells"]
    assert len(cells["0"]) == 1 and len(cells["1"]) == 1
    loop = cells["1"][0]
    assert loop["boundary"]["0/0"] == loop["boundary"]["0/1"]


def test_render_dot():
    dot = opetopic.render_dot(BINARY)
    assert dot.startswith("digraph")


def test_check_family():
    reports = opetopic.check("faces/vector")
    assert reports and all(passed for _, passed, _ in reports)
