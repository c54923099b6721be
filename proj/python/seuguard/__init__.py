"""Conditional relevance analysis for small control programs under
single-event-upset faults.

The heavy lifting lives in the C++ core; this package provides a thin
dict-based wrapper around it.
"""

import json as _json

from ._core import (  # noqa: F401
    __version__,
    emit_instrumented,
    eval_property,
    flip_bit,
    list_variables,
)
from . import _core as _c


def analyze_source(source, property_text, source_name="program", **options):
    """Run the full analysis pipeline on program text.

    Options: var, engine ("checker"|"oracle"|"differential"), domains
    (dict of name -> (lo, hi); "input" sets the input() stream range),
    unwind, step_budget, fault_bits (lo, hi), trigger, stream_bound.
    Returns the report as a dict.
    """
    raw = _c.analyze_source_json(source, property_text, source_name, options)
    return _json.loads(raw)


def analyze_file(path, property_text=None, **options):
    """Like analyze_source, reading the program (and, when property_text is
    None, the sidecar .prop file) from disk."""
    import pathlib

    p = pathlib.Path(path)
    source = p.read_text()
    if property_text is None:
        property_text = p.with_suffix(".prop").read_text().strip()
    return analyze_source(source, property_text, source_name=p.stem, **options)


def parse_diagnostics(source):
    """Diagnostics for a source text; empty list when it parses clean."""
    return _json.loads(_c.parse_diagnostics_json(source))
