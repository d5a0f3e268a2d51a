"""Opetopes, their face category, and opetopic sets at desk scale.

Thin wrappers over the C++ core. Opetopes are addressed by their canonical
codes (as printed by ``enumerate``); structured data crosses the boundary as
JSON strings in the same schemas the command line tool uses.
"""

from opetopic._core import (
    BoundExceeded,
    InvalidInput,
    check,
    code_of,
    colimit_json,
    enumerate,
    face_counts,
    face_table_json,
    hom_count,
    normalize_word,
    opetope_json,
    realize_json,
    render_dot,
    source_codes,
    target_code,
)

__all__ = [
    "BoundExceeded",
    "InvalidInput",
    "check",
    "code_of",
    "colimit_json",
    "enumerate",
    "face_counts",
    "face_table_json",
    "hom_count",
    "normalize_word",
    "opetope_json",
    "realize_json",
    "render_dot",
    "source_codes",
    "target_code",
]
