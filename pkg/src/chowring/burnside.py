"""Burnside ring arithmetic over conjugacy classes of subgroups.

Genuine G-sets are decomposed orbit by orbit; each orbit contributes its
point stabilizer's conjugacy class to a lazily grown registry. Two genuine
G-sets are isomorphic iff their coefficient vectors agree, so inequalities
b >= b' are coefficientwise. Products are decomposed directly (orbit
enumeration on tuples), never through a table of marks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chow import ChowRing
from .perm import (NotFullSymmetricGroup, PermGroup, are_conjugate_subgroups,
                   compose, inverse, is_young_subgroup, subgroup_invariant)


class BurnsideError(Exception):
    pass


class GroupMismatch(BurnsideError):
    pass


class InvalidAction(BurnsideError):
    pass


class BadIndices(BurnsideError):
    pass


@dataclass
class GSet:
    """Finite G-set: element list plus an action callable (g, x) -> x."""
    group: PermGroup
    elements: tuple
    act: object

    def __len__(self):
        return len(self.elements)

    def spot_check(self):
        ident = tuple(range(self.group.n))
        for x in self.elements[:8]:
            if self.act(ident, x) != x:
                raise InvalidAction("identity moves a point")
        for g in self.group.gens:
            for h in self.group.gens:
                for x in self.elements[:4]:
                    if self.act(compose(g, h), x) != self.act(g, self.act(h, x)):
                        raise InvalidAction("action is not multiplicative")


def product(x: GSet, y: GSet) -> GSet:
    if x.group is not y.group:
        raise GroupMismatch("G-sets live over different groups")
    ax, ay = x.act, y.act

    def act(g, pair):
        return (ax(g, pair[0]), ay(g, pair[1]))

    return GSet(x.group, tuple((a, b) for a in x.elements for b in y.elements), act)


class SubgroupRegistry:
    """Canonical list of stabilizer classes of one group, grown lazily."""

    def __init__(self, group: PermGroup):
        self.group = group
        self.classes: list[frozenset] = []
        self._exact: dict[frozenset, int] = {}
        self._by_invariant: dict = {}

    def classify(self, elements: frozenset) -> int:
        idx = self._exact.get(elements)
        if idx is not None:
            return idx
        inv = subgroup_invariant(self.group.n, elements)
        for idx in self._by_invariant.get(inv, ()):
            if are_conjugate_subgroups(self.group, self.classes[idx], elements):
                self._exact[elements] = idx
                return idx
        idx = len(self.classes)
        self.classes.append(elements)
        self._exact[elements] = idx
        self._by_invariant.setdefault(inv, []).append(idx)
        return idx

    def order_of(self, idx: int) -> int:
        return len(self.classes[idx])

    def describe(self, idx: int) -> str:
        h = self.classes[idx]
        if self.group.is_full_symmetric():
            lam = is_young_subgroup(self.group, self.group.subgroup(h))
            if lam is not None:
                return "S(" + ",".join(map(str, lam)) + ")"
        return f"subgroup of order {len(h)} (class {idx})"


@dataclass
class BurnsideElement:
    registry: SubgroupRegistry
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {i: c for i, c in self.coeffs.items() if c}

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return BurnsideElement(self.registry, out)

    def __sub__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) - c
        return BurnsideElement(self.registry, out)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return BurnsideElement(self.registry, {i: c * k for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement)
                and self.registry is other.registry and self.coeffs == other.coeffs)

    def _same(self, other):
        if self.registry is not other.registry:
            raise GroupMismatch("elements over different registries")

    def is_genuine(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def cardinality(self) -> int:
        g = self.registry.group.order
        return sum(c * (g // len(self.registry.classes[i]))
                   for i, c in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        reg = self.registry
        bits = [f"{c}*[G/{reg.describe(i)}]" for i, c in sorted(self.coeffs.items())]
        return " + ".join(bits)


def burnside_geq(a: BurnsideElement, b: BurnsideElement):
    """a >= b coefficientwise; returns (bool, witness class index or None)."""
    diff = a - b
    for i in sorted(diff.coeffs):
        if diff.coeffs[i] < 0:
            return False, i
    return True, None


def decompose(x: GSet, registry: SubgroupRegistry) -> BurnsideElement:
    if x.group is not registry.group:
        raise GroupMismatch("G-set and registry over different groups")
    gens = x.group.gens
    act = x.act
    visited = set()
    coeffs: dict[int, int] = {}
    for start in x.elements:
        if start in visited:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            y = frontier.pop()
            for g in gens:
                z = act(g, y)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        visited |= orbit
        rep = min(orbit)
        stab = frozenset(g for g in x.group.elements if act(g, rep) == rep)
        if len(stab) * len(orbit) != x.group.order:
            raise InvalidAction("orbit-stabilizer mismatch: not a group action")
        idx = registry.classify(stab)
        coeffs[idx] = coeffs.get(idx, 0) + 1
    return BurnsideElement(registry, coeffs)


def marks_consistent(x: GSet, belt: BurnsideElement) -> bool:
    """Audit: for each registered class H, the fixed-point count |X^H| must
    match the marks of the decomposition."""
    reg = belt.registry
    group = reg.group
    for h_idx in range(len(reg.classes)):
        h = reg.classes[h_idx]
        fixed = sum(1 for e in x.elements if all(x.act(g, e) == e for g in h))
        total = 0
        for i, c in belt.coeffs.items():
            k = reg.classes[i]
            kset = k
            transporters = sum(
                1 for g in group.elements
                if all(compose(compose(inverse(g), hh), g) in kset for hh in h))
            total += c * (transporters // len(k))
        if fixed != total:
            return False
    return True


# -- FY-monomial G-sets and Burnside positivity checks ----------------------

class BurnsideContext:
    """Per-(matroid, group) workspace caching FY product decompositions."""

    def __init__(self, ring: ChowRing, group: PermGroup):
        self.ring = ring
        self.group = group
        self.registry = SubgroupRegistry(group)
        self._fy_sets: dict = {}
        self._products: dict = {}
        for g in group.gens:
            ring.var_perm(g)  # fails fast if not automorphisms

    def fy_gset(self, k: int) -> GSet:
        got = self._fy_sets.get(k)
        if got is None:
            ring = self.ring
            elements = ring.fy_basis(k) if k <= ring.r else ()
            got = GSet(self.group, tuple(elements),
                       lambda g, m: ring.act(g, m))
            self._fy_sets[k] = got
        return got

    def fy_tuple_gset(self, degrees) -> GSet:
        ring = self.ring
        pools = [self.fy_gset(k).elements for k in degrees]
        elements = [()]
        for pool in pools:
            elements = [e + (m,) for e in elements for m in pool]

        def act(g, tup):
            return tuple(ring.act(g, m) for m in tup)

        return GSet(self.group, tuple(elements), act)

    def decompose_degrees(self, degrees) -> BurnsideElement:
        key = tuple(d for d in degrees if d != 0)  # FY^0 is a point
        if not key:
            key = (0,)
        got = self._products.get(key)
        if got is None:
            got = decompose(self.fy_tuple_gset(key), self.registry)
            self._products[key] = got
            for other in set(_permuted(key)):
                self._products.setdefault(other, got)
        return got


def _permuted(key):
    if len(key) == 2:
        return [(key[1], key[0])]
    if len(key) == 3:
        a, b, c = key
        return [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
    return []


def pf2_minor_check(ctx: BurnsideContext, i: int, j: int, k: int, l: int) -> dict:
    """[FY^j][FY^k] >= [FY^i][FY^l] in B(G) for i <= j <= k <= l, i+l = j+k."""
    r = ctx.ring.r
    if not (0 <= i <= j <= k <= l <= r and i + l == j + k):
        raise BadIndices(f"({i},{j},{k},{l})")
    big = ctx.decompose_degrees((j, k))
    small = ctx.decompose_degrees((i, l))
    ok, witness = burnside_geq(big, small)
    return {
        "check": "burnside_pf2", "quadruple": (i, j, k, l), "passed": ok,
        "witness_class": None if ok else ctx.registry.describe(witness),
        "difference": repr(big - small),
    }


def young_stabilizer_audit(ctx: BurnsideContext, i: int, j: int, k: int, l: int) -> dict:
    """For Aut = full symmetric group: the difference [FY^j][FY^k] -
    [FY^i][FY^l] must be genuine with all orbit stabilizers Young."""
    group = ctx.group
    if not group.is_full_symmetric():
        raise NotFullSymmetricGroup(f"|G| = {group.order} != {group.n}!")
    report = pf2_minor_check(ctx, i, j, k, l)
    if not report["passed"]:
        report["check"] = "young_stabilizer_audit"
        return report
    diff = ctx.decompose_degrees((j, k)) - ctx.decompose_degrees((i, l))
    non_young = []
    shapes = []
    for idx, c in sorted(diff.coeffs.items()):
        h = ctx.registry.classes[idx]
        lam = is_young_subgroup(group, group.subgroup(h))
        if lam is None:
            non_young.append(idx)
        else:
            shapes.append((lam, c))
    return {
        "check": "young_stabilizer_audit", "quadruple": (i, j, k, l),
        "passed": not non_young, "young_shapes": shapes,
        "non_young_classes": non_young,
    }


def pf2_quadruples(r: int):
    """All (i,j,k,l) with 0 <= i <= j <= k <= l <= r and i + l = j + k."""
    out = []
    for i in range(r + 1):
        for j in range(i, r + 1):
            for k in range(j, r + 1):
                l = j + k - i
                if k <= l <= r:
                    out.append((i, j, k, l))
    return out
