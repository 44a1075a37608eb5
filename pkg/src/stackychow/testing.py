"""Random stacky fans for property tests and benchmarks.

Fans come from a few complete simplicial templates pushed through a random
nonsingular integer matrix (a real linear isomorphism keeps the fan
structure but makes the cones singular), optionally star-subdivided and
thinned, with random levels.
"""

import random
from math import gcd
from typing import List, Optional

from .exactalg import intmatrix, rank
from .stackyfan import FanError, StackyFan, build_fan

_TEMPLATES = {
    1: [
        ([[1], [-1]], [[0], [1]]),
        ([[1]], [[0]]),
    ],
    2: [
        ([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]]),
        ([[1, 0], [0, 1], [-1, 0], [0, -1]], [[0, 1], [1, 2], [2, 3], [0, 3]]),
        ([[1, 0], [1, 1], [0, 1], [-1, 0], [0, -1]], [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]),
        ([[1, 0], [0, 1]], [[0, 1]]),
    ],
    3: [
        (
            [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
            [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
        ),
        (
            [[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]],
            [[0, 1, 3], [1, 2, 3], [0, 2, 3], [0, 1, 4], [1, 2, 4], [0, 2, 4]],
        ),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 1, 2]]),
    ],
}


def _primitive(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v]


def _random_matrix(rng: random.Random, d: int, bound: int):
    while True:
        t = [[rng.randint(-bound, bound) for _ in range(d)] for _ in range(d)]
        if rank(intmatrix(t)) == d:
            return t


def _apply(t, v):
    return _primitive([sum(t[i][j] * v[j] for j in range(len(v))) for i in range(len(t))])


def random_stacky_fan(
    rng: random.Random,
    max_dim: int = 3,
    max_rays: int = 5,
    max_level: int = 4,
    entry_bound: int = 2,
) -> StackyFan:
    """Draw a valid stacky fan whose rays span, with dim <= max_dim, rays <= max_rays."""
    while True:
        dims = list(range(1, max_dim + 1))
        d = rng.choices(dims, weights=dims)[0]
        rays, cones = rng.choice(_TEMPLATES[d])
        rays = [list(v) for v in rays]
        cones = [list(c) for c in cones]
        t = _random_matrix(rng, d, entry_bound)
        rays = [_apply(t, v) for v in rays]
        if d >= 2 and len(rays) < max_rays and rng.random() < 0.5:
            k = rng.randrange(len(cones))
            target = cones.pop(k)
            new = _primitive([sum(rays[i][j] for i in target) for j in range(d)])
            if new in rays:
                continue
            rays.append(new)
            idx = len(rays) - 1
            for drop in range(len(target)):
                cones.append(target[:drop] + target[drop + 1 :] + [idx])
        if len(rays) > max_rays:
            continue
        if len(cones) > 1 and rng.random() < 0.3:
            keep = rng.randint(1, len(cones))
            cones = rng.sample(cones, keep)
        levels = [rng.randint(1, max_level) for _ in rays]
        try:
            fan = build_fan(d, rays, cones, levels)
        except FanError:
            continue
        if fan.rays_span():
            return fan


def random_fans(seed: int, count: int, **kwargs) -> List[StackyFan]:
    rng = random.Random(seed)
    return [random_stacky_fan(rng, **kwargs) for _ in range(count)]
