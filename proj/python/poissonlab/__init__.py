import json

from ._core import (
    ConstraintViolation,
    ParseError,
    __version__,
    bracket,
    family_names,
    mc_names,
)
from . import _core


def classify(manifold, poisson, degree=0):
    return json.loads(_core.classify_json(manifold, poisson, degree))


def reverify(certificate):
    if not isinstance(certificate, str):
        certificate = json.dumps(certificate, sort_keys=True)
    ok, why = _core.reverify_json(certificate)
    return ok, why


def table(kind):
    return json.loads(_core.table_json(kind))


def verify_family(name, uncorrected=False):
    return json.loads(_core.verify_family_json(name, uncorrected))


def mc_check(name):
    return json.loads(_core.mc_check_json(name))


def report():
    return json.loads(_core.report_json())
