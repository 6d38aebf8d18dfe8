"""School choice mechanisms, stability audits and axiom checks.

Instances are dicts in the JSON instance format (see data/fixtures); every
function returns plain Python data.
"""

import json

from . import _core
from ._core import BudgetExceeded, DomainError

__all__ = [
    "BudgetExceeded",
    "DomainError",
    "audit",
    "characterize",
    "check",
    "cycles",
    "enumerate_stable",
    "ergin_cycles",
    "fixture_instance",
    "fixture_names",
    "reproduce",
    "run",
    "sweep",
]


def _text(document):
    return document if isinstance(document, str) else json.dumps(document)


def run(instance, mechanism="da", order=()):
    """Matching {student: school} produced by the named mechanism."""
    return json.loads(_core.run(_text(instance), mechanism, list(order)))


def audit(instance, matching):
    return json.loads(_core.audit(_text(instance), _text(matching)))


def enumerate_stable(instance):
    return json.loads(_core.enumerate_stable(_text(instance)))["stable_matchings"]


def check(instance, axiom, mechanism="da", coalition=3, exhaustive=False, seed=20240601, all_witnesses=False):
    return json.loads(_core.check(_text(instance), axiom, mechanism, coalition, exhaustive, seed, all_witnesses))


def characterize(universe, mechanism="da"):
    return json.loads(_core.characterize(_text(universe), mechanism))


def cycles(instance, profile_b, profile_a=None):
    return json.loads(_core.cycles(_text(instance), _text(profile_b), "" if profile_a is None else _text(profile_a)))


def ergin_cycles(instance):
    return json.loads(_core.ergin_cycles(_text(instance)))


def reproduce(name="all"):
    return json.loads(_core.reproduce(name))


def sweep(kind, n=4, s=2, q=3, seed=20240601, samples=1000):
    return json.loads(_core.sweep(kind, n, s, q, seed, samples))


def fixture_names():
    return list(_core.fixture_names())


def fixture_instance(name):
    return json.loads(_core.fixture_instance(name))
