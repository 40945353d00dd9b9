"""Python front end for the gsys core library."""

import json

from ._core import GsysError, Scenario, __version__, load_scenario
from . import _core

__all__ = ["GsysError", "Scenario", "__version__", "load_scenario", "run", "star_compose", "invert_unit"]


def run(path, timing=False):
    """Run a scenario file and return the report as a dict."""
    return json.loads(_core.report_json(str(path), timing))


def star_compose(p, phi1, k, phi2, dimension):
    """Star product of two symbols given as dicts in the scenario JSON format."""
    out = _core.star_compose(json.dumps(p), json.dumps(phi1), json.dumps(k), json.dumps(phi2), dimension)
    return json.loads(out)


def invert_unit(u, dimension):
    return json.loads(_core.invert_unit(json.dumps(u), dimension))
