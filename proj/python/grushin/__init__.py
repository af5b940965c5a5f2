"""Numerical probes of Hardy, Hardy-Sobolev and CKN inequalities on Grushin spaces."""

import json as _json

from ._core import (
    GrushinError,
    GrushinSpace,
    TrialField,
    __version__,
    dilate,
    dilate_field,
    grushin_gradient,
    hardy_constant,
    integrable,
    lemma_lambda_check,
    lemma_p_probe,
    make_bump,
    make_hardy_extremal,
    make_log_family,
    p_star,
    rho,
    scale_field,
)
from . import _core


def check_spec(kind, space, params, tol=1e-9):
    """Admissibility report for an inequality tuple, as a dict."""
    return _json.loads(_core._check_spec(kind, space, dict(params), tol))


def evaluate(kind, space, params, field, tol=1e-8, cross_check=True, force=False):
    """Both sides of the inequality on `field`, as a dict."""
    return _json.loads(_core._evaluate(kind, space, dict(params), field, tol, cross_check, force))


def scaling_experiment(space, params, field, lambdas, tol=1e-8, cross_check=True):
    return _json.loads(_core._scaling_experiment(space, dict(params), field, list(lambdas), tol, cross_check))


def log_family_experiment(space, params, eps, tol=1e-8, cross_check=True):
    return _json.loads(_core._log_family_experiment(space, dict(params), list(eps), tol, cross_check))


def sharp_grid(space, p, alpha, eps_shift, tol=1e-8, cross_check=True):
    return _json.loads(_core._sharp_grid(space, p, alpha, list(eps_shift), tol, cross_check))


__all__ = [
    "GrushinError",
    "GrushinSpace",
    "TrialField",
    "check_spec",
    "dilate",
    "dilate_field",
    "evaluate",
    "grushin_gradient",
    "hardy_constant",
    "integrable",
    "lemma_lambda_check",
    "lemma_p_probe",
    "log_family_experiment",
    "make_bump",
    "make_hardy_extremal",
    "make_log_family",
    "p_star",
    "rho",
    "scale_field",
    "scaling_experiment",
    "sharp_grid",
]
