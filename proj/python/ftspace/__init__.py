"""Finite type spaces with exact rational beliefs.

Spaces are loaded from the JSON document format used by the ``ftspace`` command
line tool. Measures and fields are passed as documents too, either as dicts or
as JSON text.
"""

import json
from pathlib import Path

from ._core import (
    BudgetExceeded,
    DomainError,
    ParseError,
    PreconditionError,
    SchemaError,
    TypeSpace,
    canonical,
    depth,
    enumerate_morphisms,
    eval as evaluate,
    fingerprint,
    is_type_morphism,
    quotient,
    separation_demo,
    soberdrunk_space,
)
from . import _core

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "ParseError",
    "PreconditionError",
    "SchemaError",
    "TypeSpace",
    "canonical",
    "depth",
    "enumerate_morphisms",
    "evaluate",
    "extend_to_field",
    "extend_to_set",
    "fingerprint",
    "is_type_morphism",
    "load",
    "load_space",
    "quotient",
    "separation_demo",
    "soberdrunk_space",
    "space_document",
    "validate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def load_space(doc):
    """TypeSpace from a type_space document (dict or JSON text)."""
    return _core.load_space(_text(doc))


def load(path):
    """TypeSpace from a file."""
    return load_space(Path(path).read_text())


def space_document(space):
    return json.loads(space.to_json())


def validate(space):
    """{"valid": bool, "violations": [...]} with one entry per defect."""
    return json.loads(_core.validate_json(space))


def extend_to_set(measure, elements, p):
    """Extension of a measure document to the field generated by one more set,
    taking the exact value p (a string such as "1/2") on it."""
    return json.loads(_core.los_marczewski_extend(_text(measure), list(elements), str(p)))


def extend_to_field(measure, field):
    """Extension of a measure document to a finer field document."""
    return json.loads(_core.horn_tarski_extend(_text(measure), _text(field)))
