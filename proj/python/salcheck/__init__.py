"""Python front end for the salcheck core."""

import json

from ._salcheck import (
    ConfigError,
    RecipeError,
    ReportParseError,
    catalog,
    demo,
    demo_ids,
    final_state,
    oracle,
    render,
    run_cli,
)
from . import _salcheck

__all__ = [
    "ConfigError",
    "RecipeError",
    "ReportParseError",
    "catalog",
    "check",
    "check_json",
    "demo",
    "demo_ids",
    "final_state",
    "oracle",
    "render",
    "run_cli",
]


def check_json(rdt, tests=1000, seed=42, max_events=8, replicas=2, props=()):
    return _salcheck.check(rdt, tests, seed, max_events, replicas, list(props))


def check(rdt, **kwargs):
    """Run the suite and return the parsed report."""
    return json.loads(check_json(rdt, **kwargs))
