"""Branched covers and intersection homology of simplicial pseudomanifolds.

Specs are passed as JSON text, a dict, or a path to a spec file.
"""

import json
import os

from . import _core
from ._core import BcoverError, betti, fixture_names

__all__ = [
    "BcoverError",
    "betti",
    "fiber_report",
    "fixture",
    "fixture_names",
    "generators",
    "ih_betti",
    "verify",
]


def _spec_text(spec):
    if isinstance(spec, dict):
        return json.dumps(spec)
    if isinstance(spec, os.PathLike):
        with open(spec) as f:
            return f.read()
    return spec


def fixture(name, points=None, degree=None, perm=None, exponents=None):
    """A built-in fixture as a spec dict."""
    return json.loads(_core.fixture(name, points, degree, perm, exponents))


def generators(spec):
    """Generator names of the complement presentation, e.g. ["3->4"]."""
    return _core.generators(_spec_text(spec))


def verify(spec, perversity="lower"):
    """Decomposition report as a dict."""
    return json.loads(_core.verify_json(_spec_text(spec), perversity))


def ih_betti(spec, perversity="lower", twisted=False):
    """Intersection Betti numbers of the base, optionally with the sum-zero system."""
    return _core.ih_betti(_spec_text(spec), perversity, twisted)


def fiber_report(spec):
    """One dict per simplex of the branch locus."""
    return _core.fiber_report(_spec_text(spec))
