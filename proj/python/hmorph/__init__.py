"""Eigenfamilies and harmonic morphisms on classical matrix groups."""

import json

from ._hmorph import (
    DEFAULT_SEED,
    POLE_GUARD,
    Field,
    FormatError,
    Group,
    PoleError,
    basis,
    check_identities,
    family_selectors,
    kappa,
    lemma_selectors,
    membership_residual,
    sample_point,
    tension,
)
from . import _hmorph

__all__ = [
    "DEFAULT_SEED", "POLE_GUARD", "Field", "FormatError", "Group", "PoleError",
    "basis", "check_identities", "family_selectors", "kappa", "lemma_selectors",
    "membership_residual", "sample_point", "tension",
    "verify_lemma", "make_family", "verify_family", "dualize", "verify_dual",
    "example_sl2_morphism", "random_morphism", "verify_morphism", "run_suite",
]


def _group(g):
    if g is None or isinstance(g, Group):
        return g
    return Group(g)


def verify_lemma(group, lemma, samples=20, seed=DEFAULT_SEED, tol=1e-9):
    return json.loads(_hmorph.verify_lemma_json(_group(group), lemma, samples, seed, tol))


def make_family(theorem, group=None):
    """Family document (a dict) for a theorem or example selector."""
    return json.loads(_hmorph.make_family_json(theorem, _group(group)))


def verify_family(family, samples=20, seed=DEFAULT_SEED, tol=1e-9):
    return json.loads(_hmorph.verify_family_json(json.dumps(family), samples, seed, tol))


def dualize(family):
    return json.loads(_hmorph.dualize_json(json.dumps(family)))


def verify_dual(family, samples=20, seed=DEFAULT_SEED, tol=1e-8):
    return json.loads(_hmorph.verify_dual_json(json.dumps(family), samples, seed, tol))


def example_sl2_morphism():
    return json.loads(_hmorph.example_sl2_morphism_json())


def random_morphism(family, d1, d2=0, seed=DEFAULT_SEED):
    """P/Q with random (bi-)homogeneous P, Q of the given degree."""
    return json.loads(_hmorph.random_morphism_json(json.dumps(family), d1, d2, seed))


def verify_morphism(morphism, samples=50, seed=DEFAULT_SEED, tol=1e-8):
    return json.loads(_hmorph.verify_morphism_json(json.dumps(morphism), samples, seed, tol))


def run_suite(seed=DEFAULT_SEED, max_size=6):
    return json.loads(_hmorph.run_suite_json(seed, max_size))
