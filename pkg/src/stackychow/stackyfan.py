"""Stacky fans: simplicial fans with a positive level on every ray.

A fan is given by its rays (primitive lattice vectors ``v``), a level ``l`` per
ray and its maximal cones. The net generator on a ray is ``n = l * v``.
Cones are stored as sorted tuples of ray indices; the empty tuple is the
zero cone and is a member of every fan.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd, lcm, prod
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import _fourier_motzkin
from .exactalg import diagonal_invariants, intmatrix, rank

Cone = Tuple[int, ...]


class FanError(ValueError):
    """An invalid fan document or fan; ``kind`` is a short stable tag."""

    def __init__(self, kind: str, message: str, **details):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.details = details


class HypothesisError(ValueError):
    """A computation was asked for on a fan that violates its hypotheses."""


@dataclass(frozen=True)
class Ray:
    v: Tuple[int, ...]
    level: int = 1

    @property
    def n(self) -> Tuple[int, ...]:
        return tuple(self.level * x for x in self.v)


@dataclass(frozen=True)
class StackyFan:
    dim: int
    rays: Tuple[Ray, ...]
    cones: FrozenSet[Cone]
    _max_cones: Tuple[Cone, ...] = field(default=(), repr=False, compare=False)

    @property
    def num_rays(self) -> int:
        return len(self.rays)

    @property
    def levels(self) -> Tuple[int, ...]:
        return tuple(r.level for r in self.rays)

    @property
    def max_cones(self) -> Tuple[Cone, ...]:
        return self._max_cones or maximal_cones(self.cones)

    @property
    def is_canonical(self) -> bool:
        return all(r.level == 1 for r in self.rays)

    def sorted_cones(self) -> List[Cone]:
        return sorted(self.cones, key=lambda c: (len(c), c))

    def rays_span(self) -> bool:
        if not self.rays:
            return self.dim == 0
        return rank(intmatrix([r.v for r in self.rays])) == self.dim

    def with_levels(self, levels: Sequence[int]) -> "StackyFan":
        return build_fan(self.dim, [r.v for r in self.rays], self.max_cones, levels)

    def to_document(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r.v) for r in self.rays],
            "levels": list(self.levels),
            "max_cones": [list(c) for c in self.max_cones],
        }


def maximal_cones(cones) -> Tuple[Cone, ...]:
    sets = [frozenset(c) for c in cones]
    out = {tuple(sorted(s)) for s in sets if not any(s < t for t in sets)}
    return tuple(sorted(out))


def face_closure(cones) -> FrozenSet[Cone]:
    out = set()
    for c in cones:
        c = tuple(sorted(c))
        for r in range(len(c) + 1):
            out.update(combinations(c, r))
    return frozenset(out)


def build_fan(dim, rays, max_cones, levels=None, check_axioms=True) -> StackyFan:
    """Validate raw data and return the fan (faces are generated here)."""
    if not isinstance(dim, int) or dim < 0:
        raise FanError("bad dimension", f"dim must be a nonnegative integer, got {dim!r}")
    vecs = []
    for i, v in enumerate(rays):
        v = tuple(int(x) for x in v)
        if len(v) != dim:
            raise FanError("bad ray", f"ray {i} has length {len(v)}, expected {dim}", ray=i)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g != 1:
            raise FanError("non-primitive ray", f"ray {i} = {list(v)} is not primitive", ray=i)
        vecs.append(v)
    if len(set(vecs)) != len(vecs):
        dup = next(i for i, v in enumerate(vecs) if vecs.index(v) != i)
        raise FanError("duplicate ray", f"ray {dup} repeats an earlier ray", ray=dup)
    if levels is None:
        levels = [1] * len(vecs)
    levels = [int(x) for x in levels]
    if len(levels) != len(vecs):
        raise FanError("bad levels", f"{len(levels)} levels given for {len(vecs)} rays")
    for i, l in enumerate(levels):
        if l <= 0:
            raise FanError("nonpositive level", f"ray {i} has level {l}", ray=i)
    listed = []
    for c in max_cones:
        c = [int(x) for x in c]
        for i in c:
            if not 0 <= i < len(vecs):
                raise FanError("ray index out of range", f"cone {c} uses index {i}", cone=c)
        if len(set(c)) != len(c):
            raise FanError("duplicate index", f"cone {c} repeats a ray index", cone=c)
        listed.append(tuple(sorted(c)))
    for c in listed:
        if c and rank(intmatrix([vecs[i] for i in c])) != len(c):
            raise FanError(
                "dependent generators",
                f"cone {list(c)} is not simplicial: its rays are linearly dependent",
                cone=list(c),
            )
    cones = face_closure(listed + [(i,) for i in range(len(vecs))])
    fan = StackyFan(
        dim,
        tuple(Ray(v, l) for v, l in zip(vecs, levels)),
        cones,
        maximal_cones(cones),
    )
    if check_axioms:
        report = check_fan_axioms(fan)
        if not report.ok:
            raise FanError(
                "fan-axiom violation",
                f"cones {list(report.pair[0])} and {list(report.pair[1])} overlap "
                f"beyond their common face: {report.witness['point']} lies in both",
                pair=[list(c) for c in report.pair],
                witness=report.witness,
            )
    return fan


def parse_fan(document) -> StackyFan:
    """Build a fan from a document (mapping, or JSON text)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise FanError("format", f"not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise FanError("format", "fan document must be a mapping")
    missing = [k for k in ("dim", "rays", "max_cones") if k not in document]
    if missing:
        raise FanError("format", f"missing field(s): {', '.join(missing)}")
    return build_fan(
        document["dim"], document["rays"], document["max_cones"], document.get("levels")
    )


def load_fan(path) -> StackyFan:
    return parse_fan(Path(path).read_text())


# -- fan axioms ---------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    pair: Optional[Tuple[Cone, Cone]] = None
    witness: Optional[dict] = None


def _overlap_witness(fan: StackyFan, sigma: Cone, tau: Cone) -> Optional[dict]:
    # A point of sigma ∩ tau whose sigma-coordinates are not supported on the
    # shared rays. Shared rays get one free coefficient (difference of the two sides).
    shared = sorted(set(sigma) & set(tau))
    only_s = [i for i in sigma if i not in shared]
    only_t = [i for i in tau if i not in shared]
    if not only_s:
        return None
    variables = [("s", i) for i in only_s] + [("c", i) for i in shared] + [("t", i) for i in only_t]
    nvars = len(variables)
    eqs = []
    for k in range(fan.dim):
        row = []
        for kind, i in variables:
            x = fan.rays[i].v[k]
            row.append(-x if kind == "t" else x)
        eqs.append((row, 0))
    eqs.append(([1 if kind == "s" else 0 for kind, _ in variables], 1))
    nonneg = [j for j, (kind, _) in enumerate(variables) if kind != "c"]
    sol = _fourier_motzkin.find_point(eqs, nvars, nonneg)
    if sol is None:
        return None
    scale = 1
    for x in sol:
        scale = lcm(scale, x.denominator)
    sol = [int(x * scale) for x in sol]
    a = {i: 0 for i in sigma}
    b = {i: 0 for i in tau}
    for (kind, i), x in zip(variables, sol):
        if kind == "s":
            a[i] = x
        elif kind == "t":
            b[i] = x
        else:
            a[i], b[i] = max(x, 0), max(-x, 0)
    point = [sum(a[i] * fan.rays[i].v[k] for i in sigma) for k in range(fan.dim)]
    assert point == [sum(b[i] * fan.rays[i].v[k] for i in tau) for k in range(fan.dim)]
    return {
        "point": point,
        "sigma_coefficients": [a[i] for i in sigma],
        "tau_coefficients": [b[i] for i in tau],
    }


def check_fan_axioms(fan: StackyFan) -> AxiomReport:
    """Check exactly that any two cones meet in the cone on their shared rays.

    Only pairs of maximal cones are tested: for simplicial cones the property
    passes down to faces.
    """
    mx = list(fan.max_cones)
    for x, y in combinations(mx, 2):
        for sigma, tau in ((x, y), (y, x)):
            w = _overlap_witness(fan, sigma, tau)
            if w is not None:
                return AxiomReport(False, (sigma, tau), w)
    return AxiomReport(True)


# -- combinatorics ------------------------------------------------------------


def is_cone(fan: StackyFan, ray_set) -> bool:
    return tuple(sorted(ray_set)) in fan.cones


def minimal_nonfaces(fan: StackyFan) -> List[Cone]:
    """Inclusion-minimal ray sets that are not cones, in lexicographic order."""
    out = []
    by_size: Dict[int, List[Cone]] = {}
    for c in fan.cones:
        by_size.setdefault(len(c), []).append(c)
    for size in sorted(by_size):
        for face in by_size[size]:
            start = face[-1] + 1 if face else 0
            for r in range(start, fan.num_rays):
                cand = face + (r,)
                if cand in fan.cones:
                    continue
                if all(cand[:i] + cand[i + 1 :] in fan.cones for i in range(len(cand))):
                    out.append(cand)
    return sorted(set(out))


@dataclass(frozen=True)
class MultiplicityReport:
    cone: Cone
    mult: int
    stacky_mult: int


def _lattice_index(vectors) -> int:
    if not vectors:
        return 1
    cols = intmatrix(vectors).T
    return prod(x for x in diagonal_invariants(cols) if x != 0)


def multiplicity(fan: StackyFan, cone) -> MultiplicityReport:
    """Index of the lattice spanned by the v's (resp. n's) in the saturated span."""
    cone = tuple(sorted(cone))
    if cone not in fan.cones:
        raise FanError("not a cone", f"{list(cone)} is not a cone of the fan")
    mult = _lattice_index([fan.rays[i].v for i in cone])
    stacky = _lattice_index([fan.rays[i].n for i in cone])
    return MultiplicityReport(cone, mult, stacky)


def _cone_key(c: Cone):
    return (len(c), c)


def spanning_pairs(fan: StackyFan) -> List[Tuple[Cone, Cone, Cone]]:
    """All (sigma, tau, gamma) with disjoint ray sets whose union is gamma.

    Each unordered pair appears once, with sigma <= tau by (size, indices).
    """
    out = []
    for gamma in fan.sorted_cones():
        for r in range(len(gamma) + 1):
            for sigma in combinations(gamma, r):
                tau = tuple(i for i in gamma if i not in sigma)
                if _cone_key(sigma) <= _cone_key(tau):
                    out.append((sigma, tau, gamma))
    return out


def is_complete(fan: StackyFan) -> bool:
    """Whether the support of the fan is all of R^d.

    Requires all maximal cones to be full-dimensional; then the fan is complete
    iff every facet of a maximal cone lies in exactly two maximal cones and the
    adjacency graph of maximal cones is connected.
    """
    mx = fan.max_cones
    if any(len(c) != fan.dim for c in mx):
        raise HypothesisError("maximal cones are not all full-dimensional; completeness test skipped")
    if not mx:
        return fan.dim == 0
    owners: Dict[Cone, List[int]] = {}
    for k, c in enumerate(mx):
        for i in range(len(c)):
            owners.setdefault(c[:i] + c[i + 1 :], []).append(k)
    if any(len(v) != 2 for v in owners.values()):
        return False
    adj: Dict[int, set] = {k: set() for k in range(len(mx))}
    for a, b in owners.values():
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(mx)
