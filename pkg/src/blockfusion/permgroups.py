"""Finite permutation groups at desk scale.

Groups are full element lists (closure from generators, breadth-first,
deterministic), so everything downstream can brute-force scan.  Grading
groups and quotients are carried as explicit multiplication tables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

Perm = tuple  # images of 0..n-1

DEFAULT_ORDER_CAP = 5000


class CapExceeded(RuntimeError):
    """Group enumeration grew beyond the configured order cap."""


def pmul(a: Perm, b: Perm) -> Perm:
    """Composite a∘b: apply b first, then a."""
    return tuple(a[b[x]] for x in range(len(a)))


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def pconj(g: Perm, x: Perm) -> Perm:
    """g x g^-1."""
    return pmul(pmul(g, x), pinv(g))


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def perm_order(a: Perm) -> int:
    e = identity_perm(len(a))
    x, n = a, 1
    while x != e:
        x = pmul(x, a)
        n += 1
    return n


def parse_cycles(s: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation, e.g. "(0 1)(2 3)"; identity is "()"."""
    s = s.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", s):
        raise ValueError(f"bad cycle notation: {s!r}")
    images = list(range(degree))
    for cyc in re.findall(r"\(([^()]*)\)", s):
        pts = [int(t) for t in cyc.split()]
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {cyc!r}")
        for pt in pts:
            if pt >= degree:
                raise ValueError(f"point {pt} out of range for degree {degree}")
        for k, pt in enumerate(pts):
            images[pt] = pts[(k + 1) % len(pts)]
    if sorted(images) != list(range(degree)):
        raise ValueError(f"cycles are not disjoint: {s!r}")
    return tuple(images)


def format_cycles(a: Perm) -> str:
    seen = [False] * len(a)
    cycles = []
    for start in range(len(a)):
        if seen[start] or a[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        x = a[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = a[x]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "()"


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group with its full, ordered element list."""

    degree: int
    generators: tuple
    elements: tuple
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: k for k, g in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def index(self, g: Perm) -> int:
        return self._index[g]

    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.elements)

    def is_normal_in(self, other: "PermGroup") -> bool:
        mine = self.element_set()
        return self.is_subgroup_of(other) and all(
            pconj(x, g) in mine for x in other.generators for g in self.generators
        )

    def conjugate(self, g: Perm) -> "PermGroup":
        return from_elements([pconj(g, x) for x in self.elements], self.degree)

    def relabel(self, sigma: Perm) -> "PermGroup":
        """The group sigma G sigma^-1 (relabeling of the permuted points)."""
        gens = [pconj(sigma, x) for x in self.generators]
        return enumerate_group(gens, self.degree)

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1


def enumerate_group(gens, degree: int, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Closure by breadth-first products, in deterministic order."""
    e = identity_perm(degree)
    gens = tuple(gens)
    for g in gens:
        if len(g) != degree:
            raise ValueError("generator degree mismatch")
    elements = [e]
    index = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = pmul(x, g)
                if y not in index:
                    index.add(y)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(f"group order exceeds cap {cap}")
        frontier = nxt
    return PermGroup(degree, gens, tuple(elements))


def from_elements(elements, degree: int) -> PermGroup:
    """Group from a known-closed element collection; sorted, deterministic."""
    elements = tuple(sorted(set(elements)))
    gens = []
    have = {identity_perm(degree)}
    for g in elements:
        if g not in have:
            gens.append(g)
            have = set(enumerate_group(gens, degree, cap=len(elements)).elements)
        if len(have) == len(elements):
            break
    return PermGroup(degree, tuple(gens), elements)


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, (), (identity_perm(degree),))


def normalizer(g: PermGroup, s: PermGroup) -> PermGroup:
    members = [x for x in g.elements if all(pconj(x, t) in s for t in s.generators)]
    return from_elements(members, g.degree)


def centralizer(g: PermGroup, s: PermGroup) -> PermGroup:
    members = [
        x for x in g.elements if all(pmul(x, t) == pmul(t, x) for t in s.generators)
    ]
    return from_elements(members, g.degree)


def center(g: PermGroup) -> PermGroup:
    return centralizer(g, g)


@dataclass(frozen=True)
class GroupTable:
    """An abstract finite group: elements 0..n-1 with a multiplication table.

    `labels` ties indices back to whatever the group was built from
    (coset representatives, automorphism pairs, ...).
    """

    table: np.ndarray
    labels: tuple

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        n = self.order
        for i in range(n):
            if all(self.table[i, j] == j and self.table[j, i] == j for j in range(n)):
                return i
        raise ValueError("no identity element; not a group table")

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        e = self.identity
        for j in range(self.order):
            if self.table[i, j] == e:
                return j
        raise ValueError("no inverse; not a group table")

    def element_order(self, i: int) -> int:
        e = self.identity
        x, n = i, 1
        while x != e:
            x = self.mul(x, i)
            n += 1
        return n

    def validate(self) -> None:
        n = self.order
        t = self.table
        if t.shape != (n, n) or len(self.labels) != n:
            raise ValueError("malformed group table")
        for i in range(n):
            if sorted(t[i]) != list(range(n)) or sorted(t[:, i]) != list(range(n)):
                raise ValueError("table rows/columns are not permutations")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[t[i, j], k] != t[i, t[j, k]]:
                        raise ValueError("table is not associative")
        self.identity  # raises if absent


def table_of_permgroup(g: PermGroup) -> GroupTable:
    n = g.order
    t = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(g.elements):
        for j, b in enumerate(g.elements):
            t[i, j] = g.index(pmul(a, b))
    return GroupTable(t, tuple(g.elements))


def table_isomorphism(a: GroupTable, b: GroupTable):
    """A group isomorphism a -> b as an index map, or None.

    Brute-force backtracking on a generating sequence; fine at desk scale.
    """
    n = a.order
    if n != b.order:
        return None
    if n == 1:
        return {0: 0}
    gens = []
    have = {a.identity}
    for i in range(n):
        if i not in have:
            gens.append(i)
            closure = set(have) | {i}
            changed = True
            while changed:
                changed = False
                for x in list(closure):
                    for y in list(closure):
                        z = a.mul(x, y)
                        if z not in closure:
                            closure.add(z)
                            changed = True
            have = closure
        if len(have) == n:
            break
    orders_b = {}
    for j in range(n):
        orders_b.setdefault(b.element_order(j), []).append(j)

    def extend(assignment):
        # close the partial map under multiplication; None on conflict
        known = dict(assignment)
        known[a.identity] = b.identity
        changed = True
        while changed:
            changed = False
            items = list(known.items())
            for x, fx in items:
                for y, fy in items:
                    z = a.mul(x, y)
                    fz = b.mul(fx, fy)
                    if z in known:
                        if known[z] != fz:
                            return None
                    else:
                        known[z] = fz
                        changed = True
        return known

    def search(k, assignment):
        if k == len(gens):
            full = extend(assignment)
            if full is not None and len(full) == n and len(set(full.values())) == n:
                return full
            return None
        g = gens[k]
        for cand in orders_b.get(a.element_order(g), []):
            assignment[g] = cand
            partial = extend(assignment)
            if partial is not None and len(set(partial.values())) == len(partial):
                result = search(k + 1, assignment)
                if result is not None:
                    return result
            del assignment[g]
        return None

    return search(0, {})


@dataclass(frozen=True)
class QuotientSetup:
    """G, a normal subgroup H, coset representatives and omega: G -> G/H."""

    g: PermGroup
    h: PermGroup
    reps: tuple  # coset representatives, reps[0] = identity
    omega: dict  # element -> coset index
    group: GroupTable  # the quotient group on coset indices

    @property
    def order(self) -> int:
        return len(self.reps)

    def omega_of(self, x: Perm) -> int:
        return self.omega[x]


def quotient(g: PermGroup, h: PermGroup) -> QuotientSetup:
    if not h.is_normal_in(g):
        raise ValueError("subgroup is not normal")
    omega = {}
    reps = []
    for x in g.elements:
        if x in omega:
            continue
        idx = len(reps)
        reps.append(x)
        for k in h.elements:
            omega[pmul(x, k)] = idx
    n = len(reps)
    t = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            t[i, j] = omega[pmul(reps[i], reps[j])]
    setup = QuotientSetup(g, h, tuple(reps), omega, GroupTable(t, tuple(reps)))
    return setup


def p_subgroups(g: PermGroup, p: int, cap: int = DEFAULT_ORDER_CAP):
    """All subgroups of p-power order, as PermGroups, deduplicated.

    Layered closure: every p-subgroup has a generating chain through
    smaller p-subgroups, so extending by single p-elements reaches all.
    """
    sylow_order = 1
    n = g.order
    while n % p == 0:
        sylow_order *= p
        n //= p
    p_elements = [x for x in g.elements if _is_p_power(perm_order(x), p)]
    found = {frozenset({identity_perm(g.degree)})}
    frontier = list(found)
    groups = {next(iter(found)): trivial_group(g.degree)}
    while frontier:
        nxt = []
        for key in frontier:
            base = groups[key]
            for x in p_elements:
                if x in key:
                    continue
                try:
                    cand = enumerate_group(
                        tuple(base.generators) + (x,), g.degree, cap=sylow_order
                    )
                except CapExceeded:
                    continue
                if not _is_p_power(cand.order, p):
                    continue
                ckey = cand.element_set()
                if ckey not in found:
                    found.add(ckey)
                    groups[ckey] = from_elements(cand.elements, g.degree)
                    nxt.append(ckey)
                    if len(found) > cap:
                        raise CapExceeded("too many p-subgroups")
        frontier = nxt
    return sorted(groups.values(), key=lambda s: (s.order, s.elements))


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def aut_group(p_grp: PermGroup, order_cap: int = 64):
    """All automorphisms of a p-group of order <= order_cap.

    Automorphisms are returned as index maps on p_grp.elements (tuples),
    found by brute force over generator-image tuples.
    """
    if p_grp.order > order_cap:
        raise CapExceeded(f"aut_group order cap {order_cap} exceeded")
    elements = p_grp.elements
    n = len(elements)
    # greedy small generating set, and a word for every element
    gens = []
    span = {elements[0]: ()}  # element -> word in generator indices
    for x in elements:
        if x in span:
            continue
        gens.append(x)
        gi = len(gens) - 1
        # regrow the span closure with words
        changed = True
        span[x] = (gi,)
        while changed:
            changed = False
            for y, wy in list(span.items()):
                for k, z in enumerate(gens):
                    w = pmul(y, z)
                    if w not in span:
                        span[w] = wy + (k,)
                        changed = True
    assert len(span) == n
    orders = {}
    for x in elements:
        orders.setdefault(perm_order(x), []).append(x)
    gen_orders = [perm_order(x) for x in gens]

    def build(images):
        mapping = {}
        for y, w in span.items():
            img = identity_perm(p_grp.degree)
            for k in w:
                img = pmul(img, images[k])
            if img not in p_grp:
                return None
            mapping[y] = img
        if len(set(mapping.values())) != n:
            return None
        for a in elements:
            for b in elements:
                if mapping[pmul(a, b)] != pmul(mapping[a], mapping[b]):
                    return None
        return tuple(p_grp.index(mapping[x]) for x in elements)

    auts = []
    seen = set()

    def rec(k, images):
        if k == len(gens):
            m = build(tuple(images))
            if m is not None and m not in seen:
                seen.add(m)
                auts.append(m)
            return
        for cand in orders.get(gen_orders[k], []):
            images.append(cand)
            rec(k + 1, images)
            images.pop()

    rec(0, [])
    ident = tuple(range(n))
    assert ident in seen
    return auts


def aut_compose(a, b):
    """Automorphism composition a∘b as index maps."""
    return tuple(a[i] for i in b)


def aut_inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def aut_table(auts) -> GroupTable:
    index = {a: k for k, a in enumerate(auts)}
    n = len(auts)
    t = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            t[i, j] = index[aut_compose(auts[i], auts[j])]
    return GroupTable(t, tuple(auts))
