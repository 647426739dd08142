"""Prym and Prym-Tyurin lattices of Weyl group coverings of P^1."""

import json

from . import _core
from ._core import (
    DomainError,
    GenerationFailure,
    InputError,
    InternalError,
    UnsupportedError,
    identity_names,
    prym_type,
    prym_tyurin_type,
    scenario_names,
)

__all__ = [
    "DomainError",
    "GenerationFailure",
    "InputError",
    "InternalError",
    "UnsupportedError",
    "check_identity",
    "classify",
    "genera",
    "homology",
    "identity_names",
    "predict",
    "probe",
    "prym_type",
    "prym_tyurin_type",
    "random_simple",
    "run_cli",
    "scenario_names",
    "validate",
    "verify_scenario",
]


def _text(datum):
    return datum if isinstance(datum, str) else json.dumps(datum)


def random_simple(n, ds, dl, seed=1):
    return json.loads(_core.random_simple(n, ds, dl, seed))


def validate(datum):
    """None if the datum is valid, else the violation message."""
    return _core.validate(_text(datum))


def classify(datum):
    return _core.classify(_text(datum))


def genera(datum, orbit="vector"):
    return _core.genera(_text(datum), orbit)


def homology(datum, orbit="spinor"):
    return _core.homology(_text(datum), orbit)


def prym_type(datum):
    return _core.prym_type(_text(datum))


def prym_tyurin_type(datum):
    return _core.prym_tyurin_type(_text(datum))


def predict(n, ds, dl, gy=0):
    return json.loads(_core.predict(n, ds, dl, gy))


def check_identity(name, n):
    return json.loads(_core.check_identity(name, n))


def verify_scenario(name, datum=None, n=0, ds=-1, dl=-1, seed=1):
    if datum is not None:
        return json.loads(_core.verify_scenario_datum(name, _text(datum)))
    return json.loads(_core.verify_scenario(name, n, ds, dl, seed))


def probe(n, ds, dl, trials=5, seed=1):
    return [json.loads(row) for row in _core.probe(n, ds, dl, trials, seed)]


def run_cli(*args):
    """(exit code, stdout, stderr) of the command line front end."""
    return _core.run_cli([str(a) for a in args])
