"""Bundled knot presentations.

Three-bridge presentations for the non-rational knots used by the golden
tests and the selftest command.  All generators are meridians (each relator
is of conjugation shape), which is what the t-grading of the twisted
machinery assumes.
"""

from __future__ import annotations

from importlib import resources

from .groupcalc import Presentation, parse_presentation

BUNDLED = ("8_5", "10_145", "10_159")


def presentation(name: str) -> Presentation:
    """Load a bundled presentation by name, e.g. '8_5'."""
    clean = name.removesuffix(".pres")
    if clean not in BUNDLED:
        raise KeyError(f"no bundled presentation {name!r}; have {BUNDLED}")
    text = (resources.files("metatap") / "data" / f"{clean}.pres").read_text()
    return parse_presentation(text, name=clean)
