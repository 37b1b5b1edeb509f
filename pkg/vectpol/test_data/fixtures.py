"""Seeded random fields, tensors and matrices shared by the tests."""

from __future__ import annotations

import random

from vectpol import exact
from vectpol import polyfield
from vectpol import symtensor


def random_scalar(rng: random.Random, domain=exact.QQ) -> exact.Scalar:
    """A small nonzero-biased rational (or Gaussian rational)."""
    real = exact.scalar(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)), domain)
    if domain == exact.QQ_I and rng.random() < 0.5:
        return real + exact.gaussian(0, rng.randint(-2, 2))
    return real


def random_homogeneous(
    rng: random.Random,
    space: polyfield.SpaceDescriptor,
    degree: int,
    terms: int = 3
) -> polyfield.PolyVectorField:
    """A sparse random homogeneous field of the given degree."""
    keys = polyfield.graded_keys(space.n, degree)
    chosen = rng.sample(keys, min(terms, len(keys)))
    return polyfield.PolyVectorField.from_terms(
        space, {key: random_scalar(rng, space.domain) for key in chosen}
    )


def random_field(
    rng: random.Random,
    space: polyfield.SpaceDescriptor,
    max_degree: int = 3,
    terms: int = 4
) -> polyfield.PolyVectorField:
    """A sparse random field with degrees in -1..max_degree."""
    result = polyfield.PolyVectorField.zero(space)
    for _ in range(terms):
        degree = rng.randint(-1, max_degree)
        result = result + random_homogeneous(rng, space, degree, 1)
    return result


def random_tensor(
    rng: random.Random,
    space: polyfield.SpaceDescriptor,
    degree: int,
    terms: int = 3
) -> symtensor.SymTensor:
    """A sparse random tensor in T_degree."""
    return symtensor.from_field(
        random_homogeneous(rng, space, degree, terms), degree
    )


def random_space(
    rng: random.Random, max_n: int = 3
) -> polyfield.SpaceDescriptor:
    """A rational space of random dimension."""
    return polyfield.SpaceDescriptor(rng.randint(1, max_n))
