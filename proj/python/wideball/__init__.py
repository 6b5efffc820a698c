"""Wide r-ball bodies on the sphere: area, width, inradius, duality and proof replay."""

import json

from ._core import (
    GeneratorSet,
    InputError,
    InfeasibleError,
    PreconditionError,
    StructuralError,
    VerificationFailure,
    area,
    circumradius,
    classify_contact,
    diameter,
    dual_membership,
    inradius,
    jung_circumradius,
    oracle_area_mc,
    perimeter,
    r_hull_diameter,
    regular_simplex,
    render_svg,
    reuleaux_triangle,
    sample_uniform,
    sample_wide_generator,
    schramm_bound,
    spherical_distance,
)
from . import _core


def boundary(X):
    return json.loads(_core.boundary_json(X))


def width_2d(X):
    return json.loads(_core.width_2d_json(X))


def body_metrics(X, seed=0):
    return json.loads(_core.body_metrics_json(X, seed))


def width_nd(X, budget=1500, seed=0):
    return json.loads(_core.width_nd_json(X, budget, seed))


def mc_volume(X, n, seed=0):
    return json.loads(_core.mc_volume_json(X, n, seed))


def replay_proof(X, seed=0):
    return json.loads(_core.replay_proof_json(X, seed))


def cauchy_arm_profile(r, samples=100):
    return json.loads(_core.cauchy_arm_profile_json(r, samples))


def run_campaign(config=None, include_runtime=False):
    """Returns (reports, summary_csv, all_pass); reports is a list of dicts."""
    jsonl, summary, ok = _core.run_campaign_jsonl(json.dumps(config or {}), include_runtime)
    return [json.loads(line) for line in jsonl.splitlines()], summary, ok
