"""Finite matrix group enumeration and reflection-group structure.

Groups are enumerated by deterministic breadth-first closure from their
generators.  Everything downstream (reflections, hyperplanes, orbits,
subgroups, stabilizers, Molien series) is derived from the enumeration and
cached on the group object.
"""

from __future__ import annotations

from collections import Counter
from math import gcd

from gmpy2 import mpq

from .cyclotomic import Cyclotomic
from .linalg import (Mat, canonical_form, charpoly, eigenvalue_multiplicity,
                     is_reflection, mat_det, mat_eigenspace, reflection_form)
from .mpoly import PowerSeries, molien_series, product_series


class ClosureCapExceeded(RuntimeError):
    """Raised when breadth-first closure exceeds the configured cap."""


DEFAULT_CLOSURE_CAP = 10 ** 6


def bfs_closure(generators: list[Mat], cap: int = DEFAULT_CLOSURE_CAP,
                dets: bool = True):
    """Deterministic BFS closure of a generator list.

    Returns (elements, index, det_list).  The element order is reproducible:
    identity first, then layer by layer, within a layer by parent order and
    generator order.  Determinants ride along multiplicatively for free.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = 1
    for g in generators:
        n = n * g.n // gcd(n, g.n)
    gens = [g.lift(n) for g in generators]
    size = gens[0].size
    ident = Mat.identity(n, size)
    elements = [ident]
    index = {ident: 0}
    det_list = [Cyclotomic.one(n)] if dets else None
    gen_dets = [mat_det(g) for g in gens] if dets else None
    frontier = [0]
    while frontier:
        new_frontier = []
        for ei in frontier:
            el = elements[ei]
            for gi, g in enumerate(gens):
                prod = g * el
                if prod not in index:
                    index[prod] = len(elements)
                    elements.append(prod)
                    if dets:
                        det_list.append(gen_dets[gi] * det_list[ei])
                    new_frontier.append(len(elements) - 1)
                    if len(elements) > cap:
                        raise ClosureCapExceeded(
                            f"closure exceeded cap {cap}; "
                            "generators may not generate a finite group")
        frontier = new_frontier
    return elements, index, det_list


class Hyperplane:
    """Reflecting hyperplane: canonical linear form plus the order e_H of its
    pointwise stabilizer."""

    __slots__ = ("form", "order")

    def __init__(self, form: tuple, order: int):
        self.form = form
        self.order = order

    def __repr__(self):
        return f"Hyperplane({self.form!r}, e={self.order})"


class SubgroupHandle:
    """Subgroup stored as membership over the parent enumeration."""

    __slots__ = ("parent", "members", "kind")

    def __init__(self, parent: "ReflectionGroup", members: frozenset, kind: str):
        self.parent = parent
        self.members = members
        self.kind = kind

    @property
    def order(self) -> int:
        return len(self.members)

    def contains_index(self, i: int) -> bool:
        return i in self.members

    def contains(self, m: Mat) -> bool:
        i = self.parent.index.get(m)
        return i is not None and i in self.members

    def element_indices(self) -> list[int]:
        return sorted(self.members)

    def __repr__(self):
        return f"SubgroupHandle({self.kind}, order={self.order})"


class ReflectionGroup:
    """Enumerated matrix group with cached reflection-group structure.

    degrees / codegrees are reference data supplied by the catalog; they are
    cross-checked (never derived) by verify_numerology."""

    def __init__(self, name: str, generators: list[Mat],
                 degrees: list[int] | None = None,
                 codegrees: list[int] | None = None,
                 expected_order: int | None = None,
                 expected_derived_order: int | None = None,
                 closure_cap: int = DEFAULT_CLOSURE_CAP):
        self.name = name
        self.generators = generators
        self.degrees = list(degrees) if degrees else None
        self.codegrees = list(codegrees) if codegrees else None
        self.expected_order = expected_order
        self.expected_derived_order = expected_derived_order
        self.closure_cap = closure_cap
        self._elements = None
        self._index = None
        self._dets = None
        self._charpolys = None
        self._reflections = None
        self._hyperplanes = None
        self._hyperplane_orbits = None
        self._derived = None
        self._sl = None
        self._center = None
        self._gen_inverses = None
        self._inverse_map = None

    # -- enumeration ----------------------------------------------------

    def enumerate(self) -> None:
        if self._elements is None:
            self._elements, self._index, self._dets = bfs_closure(
                self.generators, self.closure_cap)

    @property
    def elements(self) -> list[Mat]:
        self.enumerate()
        return self._elements

    @property
    def index(self) -> dict:
        self.enumerate()
        return self._index

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def conductor(self) -> int:
        return self.elements[0].n

    @property
    def rank(self) -> int:
        return self.generators[0].size

    def dets(self) -> list[Cyclotomic]:
        self.enumerate()
        return self._dets

    def charpolys(self) -> list[tuple]:
        if self._charpolys is None:
            self._charpolys = [charpoly(g) for g in self.elements]
        return self._charpolys

    def gen_inverses(self) -> list[Mat]:
        if self._gen_inverses is None:
            n = self.conductor
            self._gen_inverses = [g.lift(n).inverse() for g in self.generators]
        return self._gen_inverses

    def inverse_index(self, i: int) -> int:
        """Index of the inverse element (computed once for the whole group
        by scanning products with the identity test)."""
        if self._inverse_map is None:
            inv = [None] * self.order
            for j, g in enumerate(self.elements):
                if inv[j] is None:
                    gi = self.index[g.inverse()]
                    inv[j] = gi
                    inv[gi] = j
            self._inverse_map = inv
        return self._inverse_map[i]

    def product_index(self, i: int, j: int) -> int:
        return self.index[self.elements[i] * self.elements[j]]

    # -- reflections and hyperplanes --------------------------------------

    def reflections(self) -> list[int]:
        """Indices of all reflections (rank(g - I) = 1)."""
        if self._reflections is None:
            self._reflections = [i for i, g in enumerate(self.elements)
                                 if is_reflection(g)]
        return self._reflections

    def hyperplanes(self) -> list[Hyperplane]:
        """Deduplicated reflecting hyperplanes with their e_H."""
        if self._hyperplanes is None:
            forms: dict[tuple, int] = {}
            for i in self.reflections():
                f = reflection_form(self.elements[i])
                forms[f] = forms.get(f, 0) + 1
            self._hyperplanes = [Hyperplane(f, cnt + 1)
                                 for f, cnt in forms.items()]
        return self._hyperplanes

    def hyperplane_index(self) -> dict[tuple, int]:
        return {h.form: k for k, h in enumerate(self.hyperplanes())}

    def hyperplane_orbits(self) -> list[list[int]]:
        """Partition of hyperplane indices into W-orbits, each orbit sorted,
        orbits ordered by decreasing size then by smallest member."""
        if self._hyperplane_orbits is None:
            hyps = self.hyperplanes()
            idx = self.hyperplane_index()
            gens_inv = self.gen_inverses()
            seen = [False] * len(hyps)
            orbits = []
            for start in range(len(hyps)):
                if seen[start]:
                    continue
                orbit = [start]
                seen[start] = True
                queue = [start]
                while queue:
                    k = queue.pop()
                    form = hyps[k].form
                    for ginv in gens_inv:
                        # image of the form under the group action on V*
                        moved = _form_times_matrix(form, ginv)
                        j = idx[canonical_form(moved)]
                        if not seen[j]:
                            seen[j] = True
                            orbit.append(j)
                            queue.append(j)
                orbits.append(sorted(orbit))
            orbits.sort(key=lambda o: (-len(o), o[0]))
            self._hyperplane_orbits = orbits
        return self._hyperplane_orbits

    # -- distinguished subgroups -------------------------------------------

    def subgroup_from_indices(self, indices, kind: str) -> SubgroupHandle:
        return SubgroupHandle(self, frozenset(indices), kind)

    def subgroup_closure(self, seed_indices, kind: str = "custom") -> SubgroupHandle:
        """Closure of a set of element indices under multiplication."""
        self.enumerate()
        members = {0}
        frontier = [0]
        seeds = sorted(set(seed_indices))
        while frontier:
            new = []
            for i in frontier:
                for s in seeds:
                    j = self.product_index(s, i)
                    if j not in members:
                        members.add(j)
                        new.append(j)
            frontier = new
        return SubgroupHandle(self, frozenset(members), kind)

    def subgroup_derived(self) -> SubgroupHandle:
        """Derived subgroup: normal closure of the generator commutators."""
        if self._derived is not None:
            return self._derived
        self.enumerate()
        gen_idx = [self.index[g.lift(self.conductor)] for g in self.generators]
        seeds = set()
        for a in gen_idx:
            for b in gen_idx:
                ai, bi = self.inverse_index(a), self.inverse_index(b)
                c = self.product_index(self.product_index(a, b),
                                       self.product_index(ai, bi))
                seeds.add(c)
        while True:
            sub = self.subgroup_closure(seeds, "derived")
            extra = set()
            for g in gen_idx:
                gi = self.inverse_index(g)
                for s in list(seeds):
                    c = self.product_index(self.product_index(g, s), gi)
                    if c not in sub.members:
                        extra.add(c)
            if not extra:
                self._derived = sub
                return sub
            seeds |= extra

    def subgroup_sl(self) -> SubgroupHandle:
        """Kernel of det."""
        if self._sl is None:
            dets = self.dets()
            members = frozenset(i for i in range(self.order)
                                if dets[i].is_rational()
                                and dets[i].rational_value() == 1)
            self._sl = SubgroupHandle(self, members, "sl")
        return self._sl

    def subgroup_center(self) -> SubgroupHandle:
        """Scalar matrices in the group (the center, as the action is
        irreducible for catalog groups)."""
        if self._center is None:
            members = frozenset(i for i, g in enumerate(self.elements)
                                if g.is_scalar())
            self._center = SubgroupHandle(self, members, "center")
        return self._center

    # -- stabilizers ----------------------------------------------------

    def line_stabilizer(self, v: tuple):
        """Setwise stabilizer of the line [v]: returns (handle, theta) where
        theta maps element index -> scalar with w(v) = theta * v."""
        vv, n = _lift_vector(v, self.conductor)
        lead = next(i for i, x in enumerate(vv) if any(x.c))
        members = []
        theta = {}
        for i, g in enumerate(self.elements):
            w = g.lift(n) if n != self.conductor else g
            img = w.vec(vv)
            if not any(img[lead].c):
                continue
            scalar = img[lead] / vv[lead]
            if all((img[k] - scalar * vv[k]).is_zero() for k in range(len(vv))):
                members.append(i)
                theta[i] = scalar
        return self.subgroup_from_indices(members, "line-stabilizer"), theta

    def point_stabilizer(self, v: tuple) -> SubgroupHandle:
        """Pointwise stabilizer {w : w(v) = v}."""
        vv, n = _lift_vector(v, self.conductor)
        members = []
        for i, g in enumerate(self.elements):
            w = g.lift(n) if n != self.conductor else g
            img = w.vec(vv)
            if all((img[k] - vv[k]).is_zero() for k in range(len(vv))):
                members.append(i)
        return self.subgroup_from_indices(members, "point-stabilizer")

    def pointwise_stabilizer_subspace(self, basis) -> SubgroupHandle:
        vecs = [_lift_vector(v, self.conductor)[0] for v in basis]
        members = []
        for i, g in enumerate(self.elements):
            ok = True
            for vv in vecs:
                img = g.vec(vv)
                if any(any((img[k] - vv[k]).c) for k in range(len(vv))):
                    ok = False
                    break
            if ok:
                members.append(i)
        return self.subgroup_from_indices(members, "point-stabilizer")

    def parabolic(self, basis) -> tuple[SubgroupHandle, bool]:
        """Subgroup generated by the reflections whose hyperplane contains
        the span of basis, plus the Steinberg verification flag that it
        equals the brute-force pointwise stabilizer."""
        vecs = [_lift_vector(v, self.conductor)[0] for v in basis]
        refl = []
        for i in self.reflections():
            form = reflection_form(self.elements[i])
            if all(_form_eval(form, vv).is_zero() for vv in vecs):
                refl.append(i)
        sub = self.subgroup_closure(refl, "parabolic")
        brute = self.pointwise_stabilizer_subspace(basis)
        return sub, sub.members == brute.members

    def projective_orbit(self, v: tuple) -> list[tuple]:
        """Orbit of [v] in P(V) as canonicalized coordinate vectors
        (deterministic BFS order)."""
        vv, n = _lift_vector(v, self.conductor)
        gens = [g.lift(n) for g in self.generators]
        start = canonical_form(vv)
        seen = {start}
        orbit = [start]
        queue = [start]
        while queue:
            p = queue.pop(0)
            for g in gens:
                q = canonical_form(g.vec(p))
                if q not in seen:
                    seen.add(q)
                    orbit.append(q)
                    queue.append(q)
        return orbit

    # -- eigenspace helpers (Springer support) ------------------------------

    def eigenspace(self, i: int, lam: Cyclotomic):
        return mat_eigenspace(self.elements[i], lam)

    def eigenvalue_dims(self, lam: Cyclotomic) -> list[int]:
        """dim V(g, lam) for every element, from cached charpolys (elements
        of a finite group are diagonalizable, so root multiplicity equals
        the eigenspace dimension)."""
        cps = self.charpolys()
        return [eigenvalue_multiplicity(e, lam) for e in cps]

    # -- Molien / numerology -------------------------------------------------

    def molien(self, N: int = 40) -> PowerSeries:
        return molien_series(self.elements, N)

    def verify_numerology(self, N: int = 40) -> dict:
        """The four classical identities plus the Molien cross-check, each
        reported as computed / expected / pass."""
        if not self.degrees or not self.codegrees:
            raise ValueError(f"group {self.name}: no reference degrees")
        degs, codegs = self.degrees, self.codegrees
        checks = {}

        expected_order = 1
        for d in degs:
            expected_order *= d
        checks["order_equals_degree_product"] = {
            "computed": self.order, "expected": expected_order,
            "pass": self.order == expected_order}

        nrefl = len(self.reflections())
        checks["reflection_count"] = {
            "computed": nrefl, "expected": sum(d - 1 for d in degs),
            "pass": nrefl == sum(d - 1 for d in degs)}

        zc = self.subgroup_center().order
        zg = 0
        for d in degs:
            zg = gcd(zg, d)
        checks["center_order"] = {
            "computed": zc, "expected": zg, "pass": zc == zg}

        na = len(self.hyperplanes())
        ea = sum(c + 1 for c in codegs)
        checks["hyperplane_count"] = {
            "computed": na, "expected": ea, "pass": na == ea}

        srefl = sum(h.order - 1 for h in self.hyperplanes())
        checks["reflections_equal_sum_eH_minus_1"] = {
            "computed": srefl, "expected": nrefl, "pass": srefl == nrefl}

        mol = self.molien(N)
        prod = product_series(degs, N)
        checks[f"molien_matches_degree_product_to_t{N}"] = {
            "computed": [int(c) for c in mol.coeffs[: min(N, 12) + 1]],
            "expected": [int(c) for c in prod.coeffs[: min(N, 12) + 1]],
            "pass": mol == prod}

        checks["all_pass"] = all(v["pass"] for k, v in checks.items()
                                 if isinstance(v, dict))
        return checks

    def __repr__(self):
        size = len(self._elements) if self._elements else "unenumerated"
        return f"ReflectionGroup({self.name}, order={size})"


def _form_times_matrix(form: tuple, m: Mat) -> tuple:
    """Row vector times matrix (the action of m on linear forms when m is
    the inverse of the group element)."""
    n = m.n
    out = []
    for k in range(m.size):
        s = Cyclotomic.zero(n)
        for j, a in enumerate(form):
            x = m.rows[j][k]
            if any(a.c) and any(x.c):
                s = s + a * x
        out.append(s)
    return tuple(out)


def _form_eval(form: tuple, v: tuple) -> Cyclotomic:
    s = Cyclotomic.zero(form[0].n)
    for a, x in zip(form, v):
        if any(a.c) and any(x.c):
            s = s + a * x
    return s


def _lift_vector(v, n: int):
    """Vector of scalars -> tuple of Cyclotomic at conductor >= n."""
    out = []
    m = n
    for x in v:
        if isinstance(x, Cyclotomic):
            m = m * x.n // gcd(m, x.n)
    for x in v:
        if isinstance(x, Cyclotomic):
            out.append(x.lift(m))
        else:
            out.append(Cyclotomic.rational(x, m))
    return tuple(out), m


def generate_group(generators: list[Mat], name: str = "adhoc",
                   cap: int = DEFAULT_CLOSURE_CAP, **meta) -> ReflectionGroup:
    """Enumerate the group generated by the given matrices."""
    g = ReflectionGroup(name, generators, closure_cap=cap, **meta)
    g.enumerate()
    return g
