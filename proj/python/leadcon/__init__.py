"""Stackelberg singleton congestion game solvers."""

import json

from . import _core
from ._core import SizeGuardExceeded, ValidationError

__all__ = [
    "SizeGuardExceeded",
    "ValidationError",
    "check",
    "export_lp",
    "gen_partition",
    "gen_random",
    "gen_sat",
    "model_size",
    "solve",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def solve(instance, algo="auto", sense="opt", pure=False, mode="corrected", seed=1,
          node_limit=5_000_000, time_limit=3600.0):
    """Solve an instance (dict or JSON text) and return the report as a dict."""
    return json.loads(_core.solve(_text(instance), algo, sense, pure, mode, seed, node_limit, time_limit))


def check(instance, strategy, profile):
    return json.loads(_core.check(_text(instance), json.dumps(strategy), json.dumps(profile)))


def gen_random(followers, resources, actions=0, seed=0, monotone="none"):
    return json.loads(_core.gen_random(followers, resources, actions, seed, monotone))


def gen_sat(dimacs, eps="1/2", pessimistic=False):
    return json.loads(_core.gen_sat(dimacs, eps, pessimistic))


def gen_partition(values, k=0, eps="1/2"):
    return json.loads(_core.gen_partition(list(values), k, eps))


def model_size(instance, mode="corrected"):
    return _core.model_size(_text(instance), mode)


def export_lp(instance, mode="corrected"):
    return _core.export_lp(_text(instance), mode)
