"""Python front end to the svtan C++ core. Reports come back as plain dicts."""

import json

from . import _svtan
from ._svtan import (
    FormatError,
    ParameterError,
    expected_clause,
    facets,
    generators,
    group_member,
    relations,
    semigroup_member,
    verify_relation,
)

__all__ = [
    "FormatError",
    "ParameterError",
    "classify",
    "examples",
    "expected_clause",
    "facets",
    "generators",
    "group_member",
    "relations",
    "semigroup_member",
    "sweep",
    "verify_relation",
]


def classify(a, b, window=None, bound=None, subset_cap=14, full_evidence=False):
    return json.loads(_svtan.classify_json(list(a), list(b), window, bound, subset_cap, full_evidence))


def sweep(max_k, max_a, max_b, threads=0):
    return json.loads(_svtan.sweep_json(max_k, max_a, max_b, threads))


def examples():
    return json.loads(_svtan.examples_json())
