"""Fans of the projective-bundle family and their blow-ups.

The only fans constructible through the public API are
X = P_{P^s}(O + O(a_1) + ... + O(a_r)), projective spaces (used as sanity
anchors), and star subdivisions of X along torus-invariant centers.

Ray naming is part of the contract: b0..bs are the base rays, f0..fr the
fiber rays, and "e" the exceptional ray of a blow-up.

Picard bases: on X the coordinates are (alpha, beta) with alpha the pullback
of the base hyperplane and beta the tautological class normalized so that
pushing forward O_p(beta) gives Sym^beta of the split bundle; on a blow-up
a third coordinate k counts the O(E) twist.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from .errors import DegenerateCenter, InvalidSpec, NotACone, UnknownRay
from .intlinalg import cokernel_basis, determinant, solve_exact


@dataclass(frozen=True)
class PicClass:
    """A line bundle class in the declared basis of one fan."""

    coords: tuple
    basis: str

    def _check(self, other):
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        self._check(other)
        return PicClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.basis)

    def __sub__(self, other):
        self._check(other)
        return PicClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.basis)

    def __neg__(self):
        return PicClass(tuple(-a for a in self.coords), self.basis)


@dataclass(frozen=True)
class Fan:
    """A smooth complete fan with named rays and a declared Picard basis.

    basis_divisors holds, per Picard basis element, a T-divisor (vector of
    ray coefficients) representing it; tdivisor_lift is the induced section.
    """

    dim: int
    ray_names: tuple
    rays: tuple
    max_cones: tuple  # sorted tuples of ray indices
    basis_tag: str
    basis_divisors: tuple

    @cached_property
    def name_index(self):
        return {n: i for i, n in enumerate(self.ray_names)}

    @property
    def n_rays(self):
        return len(self.rays)

    @property
    def pic_rank(self):
        return len(self.basis_divisors)

    @cached_property
    def _class_map(self):
        """n_rays x pic_rank integer matrix: divisor coefficients -> class."""
        lattice_rows = [[ray[i] for ray in self.rays] for i in range(self.dim)]
        cok = cokernel_basis(lattice_rows)
        if cok.free_rank != self.pic_rank:
            raise InvalidSpec(
                f"Picard rank {cok.free_rank} != declared basis size {self.pic_rank}"
            )
        basis_proj = [cok.project(bd) for bd in self.basis_divisors]
        k = self.pic_rank
        columns = []
        for rho in range(self.n_rays):
            unit = [1 if i == rho else 0 for i in range(self.n_rays)]
            x = solve_exact(basis_proj, cok.project(unit)) if k else ()
            for frac in x:
                if frac.denominator != 1:
                    raise InvalidSpec("declared basis divisors are not a Z-basis of Pic")
            columns.append(tuple(int(f) for f in x))
        return tuple(columns)

    def class_of_divisor(self, coeffs) -> PicClass:
        if len(coeffs) != self.n_rays:
            raise ValueError("coefficient vector length mismatch")
        cm = self._class_map
        coords = tuple(
            sum(c * cm[rho][j] for rho, c in enumerate(coeffs))
            for j in range(self.pic_rank)
        )
        return PicClass(coords, self.basis_tag)

    def divisor_class(self, ray_name) -> PicClass:
        if ray_name not in self.name_index:
            raise UnknownRay(ray_name)
        rho = self.name_index[ray_name]
        return self.class_of_divisor([1 if i == rho else 0 for i in range(self.n_rays)])

    def canonical_class(self) -> PicClass:
        return self.class_of_divisor([-1] * self.n_rays)

    def pic_class(self, coords) -> PicClass:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.pic_rank:
            raise ValueError("wrong number of Picard coordinates")
        return PicClass(coords, self.basis_tag)

    def tdivisor_lift(self, cls: PicClass):
        """A T-divisor (ray coefficients) whose class is cls; fixed section."""
        if cls.basis != self.basis_tag:
            raise ValueError("class belongs to a different fan")
        coeffs = [0] * self.n_rays
        for x, bd in zip(cls.coords, self.basis_divisors):
            for rho, c in enumerate(bd):
                coeffs[rho] += x * c
        return tuple(coeffs)

    @cached_property
    def canonical_json(self) -> str:
        """Byte-stable serialization: rays sorted by name, cones sorted."""
        order = sorted(range(self.n_rays), key=lambda i: self.ray_names[i])
        pos = {old: new for new, old in enumerate(order)}
        cones = sorted(sorted(pos[i] for i in cone) for cone in self.max_cones)
        doc = {
            "dim": self.dim,
            "rays": [
                {"name": self.ray_names[i], "vector": list(self.rays[i])} for i in order
            ],
            "max_cones": cones,
            "basis": self.basis_tag,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @cached_property
    def content_hash(self) -> str:
        return hashlib.sha256(self.canonical_json.encode()).hexdigest()

    # mutable per-instance caches (allowed on frozen dataclasses: cached_property
    # writes straight into __dict__)
    @cached_property
    def _support_rank_cache(self):
        return {}

    @cached_property
    def _hvector_cache(self):
        return {}


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        raise InvalidSpec("zero ray vector")
    return tuple(x // g for x in vec)


def validate_fan(fan: Fan) -> None:
    """Check primitivity, smoothness and completeness; raise InvalidSpec."""
    n = fan.dim
    for v in fan.rays:
        if _primitive(v) != tuple(v):
            raise InvalidSpec(f"non-primitive ray {v}")
    facet_count = {}
    for cone in fan.max_cones:
        if len(cone) != n:
            raise InvalidSpec("max cone of wrong dimension")
        mat = [fan.rays[i] for i in cone]
        if abs(determinant(mat)) != 1:
            raise InvalidSpec(f"non-unimodular cone {cone}")
        for facet in combinations(cone, n - 1):
            facet_count[facet] = facet_count.get(facet, 0) + 1
    if any(c != 2 for c in facet_count.values()):
        raise InvalidSpec("fan is not complete: facet shared by != 2 cones")
    # connectivity of the facet graph
    cones = [frozenset(c) for c in fan.max_cones]
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(len(cones)):
            if j not in seen and len(cones[i] & cones[j]) == n - 1:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(cones):
        raise InvalidSpec("fan is not complete: facet graph disconnected")


@dataclass(frozen=True)
class BundleSpec:
    """The bundle data (s; a_0..a_r) with a_0 = 0 and non-decreasing a_i."""

    s: int
    fiber_degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "fiber_degrees", tuple(int(a) for a in self.fiber_degrees))
        if self.s < 1:
            raise InvalidSpec("base dimension s must be >= 1")
        a = self.fiber_degrees
        if len(a) < 2:
            raise InvalidSpec("need at least two fiber degrees (a_0 and a_1)")
        if a[0] != 0:
            raise InvalidSpec(
                "fiber degrees must be normalized with a_0 = 0 "
                "(twist the bundle by O(-a_0))"
            )
        if any(x < 0 for x in a) or any(x > y for x, y in zip(a, a[1:])):
            raise InvalidSpec("fiber degrees must be non-negative and non-decreasing")

    @property
    def r(self):
        return len(self.fiber_degrees) - 1

    @property
    def degree_sum(self):
        return sum(self.fiber_degrees)

    @property
    def dim(self):
        return self.s + self.r


@dataclass(frozen=True)
class CenterSpec:
    """A torus-invariant center: 2 or 3 ray names of the X fan."""

    ray_names: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ray_names", frozenset(self.ray_names))
        if len(self.ray_names) not in (2, 3):
            raise InvalidSpec("only codimension 2 and 3 centers are supported")

    @property
    def codim(self):
        return len(self.ray_names)


@dataclass(frozen=True)
class CenterGeometry:
    """Derived geometry of the center Y and its conormal bundle."""

    s: int
    r: int
    degrees: tuple          # a_0..a_r on X
    codim: int
    s_prime: int
    r_prime: int
    fiber_survivors: tuple  # indices j with f_j not cut
    conormal_summands: tuple  # (alpha, beta) classes on Y, one per cut divisor

    @property
    def y_degrees(self):
        return tuple(self.degrees[j] for j in self.fiber_survivors)

    @property
    def ambient_dim(self):
        return self.s + self.r


def build_projective_bundle_fan(spec: BundleSpec) -> Fan:
    """Fan of X = P_{P^s}(O + O(a_1) + ... + O(a_r)) in dimension s+r."""
    return _bundle_fan(spec.s, spec.fiber_degrees)


def _bundle_fan(s, degrees) -> Fan:
    """Fan for arbitrary non-negative split degrees (a_1..a_r twist b0)."""
    degrees = tuple(degrees)
    r = len(degrees) - 1
    if s < 1 or r < 1:
        raise InvalidSpec("need s >= 1 and r >= 1 for a bundle fan")
    n = s + r

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    names = [f"b{i}" for i in range(s + 1)] + [f"f{j}" for j in range(r + 1)]
    b0 = tuple(
        [-1] * s + [degrees[j] - degrees[0] for j in range(1, r + 1)]
    )
    f0 = tuple([0] * s + [-1] * r)
    rays = [b0] + [unit(i - 1) for i in range(1, s + 1)]
    rays += [f0] + [unit(s + j - 1) for j in range(1, r + 1)]
    # reorder to match names b0..bs,f0..fr
    cones = []
    for drop_b in range(s + 1):
        for drop_f in range(r + 1):
            cone = [i for i in range(s + 1) if i != drop_b]
            cone += [s + 1 + j for j in range(r + 1) if j != drop_f]
            cones.append(tuple(sorted(cone)))
    n_rays = len(rays)
    h_div = tuple(1 if i == 1 else 0 for i in range(n_rays))        # D_{b1}
    xi_div = tuple(1 if i == s + 1 else 0 for i in range(n_rays))   # D_{f0}
    fan = Fan(
        dim=n,
        ray_names=tuple(names),
        rays=tuple(rays),
        max_cones=tuple(cones),
        basis_tag=f"X(s={s},a={degrees})",
        basis_divisors=(h_div, xi_div),
    )
    validate_fan(fan)
    return fan


def projective_space_fan(n) -> Fan:
    """Fan of P^n with rays x0 = -sum(e_i), x1..xn = e_i."""
    if n < 1:
        raise InvalidSpec("projective space of dimension >= 1 only")

    def unit(i):
        return tuple(1 if j == i else 0 for j in range(n))

    rays = [tuple([-1] * n)] + [unit(i) for i in range(n)]
    cones = [tuple(sorted(set(range(n + 1)) - {drop})) for drop in range(n + 1)]
    fan = Fan(
        dim=n,
        ray_names=tuple(f"x{i}" for i in range(n + 1)),
        rays=tuple(rays),
        max_cones=tuple(cones),
        basis_tag=f"P^{n}",
        basis_divisors=(tuple(1 if i == 1 else 0 for i in range(n + 1)),),
    )
    validate_fan(fan)
    return fan


def star_subdivide(fan: Fan, center: CenterSpec) -> Fan:
    """Blow-up along the orbit closure of the cone spanned by the center rays."""
    try:
        idx = sorted(fan.name_index[name] for name in center.ray_names)
    except KeyError as exc:
        raise UnknownRay(str(exc)) from exc
    idx_set = set(idx)
    if not any(idx_set <= set(cone) for cone in fan.max_cones):
        raise NotACone(f"rays {sorted(center.ray_names)} do not span a cone")
    new_ray = _primitive(tuple(sum(fan.rays[i][d] for i in idx) for d in range(fan.dim)))
    e = fan.n_rays
    cones = []
    for cone in fan.max_cones:
        if idx_set <= set(cone):
            for drop in idx:
                cones.append(tuple(sorted((set(cone) - {drop}) | {e})))
        else:
            cones.append(cone)
    # pullback of a divisor acquires coefficient sum(old coeffs over center) at e
    basis = [
        tuple(bd) + (sum(bd[i] for i in idx),) for bd in fan.basis_divisors
    ]
    basis.append(tuple([0] * e + [1]))
    sub = Fan(
        dim=fan.dim,
        ray_names=fan.ray_names + ("e",),
        rays=fan.rays + (new_ray,),
        max_cones=tuple(cones),
        basis_tag=fan.basis_tag + "+E",
        basis_divisors=tuple(basis),
    )
    validate_fan(sub)
    return sub


def center_geometry(spec: BundleSpec, center: CenterSpec) -> CenterGeometry:
    """Base/fiber dimensions of Y, surviving summands, conormal classes."""
    fan = build_projective_bundle_fan(spec)
    for name in center.ray_names:
        if name not in fan.name_index:
            raise UnknownRay(name)
    idx_set = {fan.name_index[n] for n in center.ray_names}
    if not any(idx_set <= set(cone) for cone in fan.max_cones):
        raise NotACone(f"rays {sorted(center.ray_names)} do not span a cone")
    base_cuts = sorted(n for n in center.ray_names if n.startswith("b"))
    fiber_cuts = sorted(
        (int(n[1:]) for n in center.ray_names if n.startswith("f"))
    )
    s_prime = spec.s - len(base_cuts)
    r_prime = spec.r - len(fiber_cuts)
    if s_prime < 0 or r_prime < 0:
        raise DegenerateCenter(f"s'={s_prime}, r'={r_prime}")
    survivors = tuple(j for j in range(spec.r + 1) if j not in fiber_cuts)
    conormal = tuple((-1, 0) for _ in base_cuts) + tuple(
        (spec.fiber_degrees[j], -1) for j in fiber_cuts
    )
    return CenterGeometry(
        s=spec.s,
        r=spec.r,
        degrees=spec.fiber_degrees,
        codim=center.codim,
        s_prime=s_prime,
        r_prime=r_prime,
        fiber_survivors=survivors,
        conormal_summands=conormal,
    )


@dataclass(frozen=True)
class Blowup:
    """The full geometric setup: X, its blow-up, and the center geometry."""

    spec: BundleSpec
    center: CenterSpec
    geometry: CenterGeometry
    fan_x: Fan
    fan_xt: Fan

    @property
    def codim(self):
        return self.center.codim


def make_blowup(spec: BundleSpec, center: CenterSpec) -> Blowup:
    geom = center_geometry(spec, center)
    fan_x = build_projective_bundle_fan(spec)
    fan_xt = star_subdivide(fan_x, center)
    return Blowup(spec=spec, center=center, geometry=geom, fan_x=fan_x, fan_xt=fan_xt)
