"""Shared helpers for drawing random but valid inputs."""

from __future__ import annotations

import numpy as np

from fslab import ClassParams, HerglotzMeasure, member_from_pq, sample_measure


def random_params(rng: np.random.Generator) -> ClassParams:
    """Uniform draw over the whole valid parameter domain."""
    lam = float(rng.random())
    delta = float(rng.random()) * lam
    alpha = float(rng.random())
    beta = float(rng.random())
    return ClassParams(lam, delta, alpha, beta)


def random_member(rng: np.random.Generator, params: ClassParams | None = None, order: int = 8):
    if params is None:
        params = random_params(rng)
    p = sample_measure(rng, 3)
    q = sample_measure(rng, 3)
    return member_from_pq(params, p, q, order)


def atom_measure(angle: float = 0.0) -> HerglotzMeasure:
    return HerglotzMeasure(((1.0, angle),))
