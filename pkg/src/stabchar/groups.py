"""Finite permutation groups at desk scale.

Everything is element-enumerated: a group handle stores its full sorted
element list (raw image tuples) with an order cap, and all structural
operations (classes, normalizers, Sylow and Hall subgroups, normal
subgroups, coset actions, overgroup search) are direct computations over
that list.  Handles are deduplicated through a registry keyed by the
canonical element list, so equal subgroups reached along different paths
share one handle and its caches.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import lcm

from .arith import factorint, is_pi_number, pi_part, prime_divisors
from .errors import CapExceeded, NotBijection, NotNormal, NotSolvable, NotSubgroup
from .perm import (
    Images,
    Permutation,
    conj_tuple,
    identity_tuple,
    inv_tuple,
    mul_tuple,
    order_of_tuple,
    power_tuple,
)

DEFAULT_ORDER_CAP = 20_000
DEFAULT_OVERGROUP_CAP = 10_000


def _closure(generators, degree: int, cap: int) -> set:
    """All products of the generators, as a set of image tuples."""
    ident = identity_tuple(degree)
    elems = {ident}
    frontier = [ident]
    gens = list(generators)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul_tuple(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
                    if len(elems) > cap:
                        raise CapExceeded(
                            f"group closure exceeded cap {cap} on degree {degree}"
                        )
        frontier = nxt
    return elems


class GroupHandle:
    """An enumerated permutation group with cached structure.

    Construct through :func:`enumerate_group` or :func:`subgroup_of`;
    the constructor itself trusts its arguments.
    """

    __slots__ = (
        "degree", "generators", "elements", "order", "id", "index",
        "_classes", "_normals", "_subnormals", "_derived", "_sylow",
        "_hall", "_center", "memo",
    )

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.order = len(self.elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        digest = hashlib.sha256(repr((degree, self.elements)).encode()).hexdigest()
        self.id = f"g{degree}n{self.order}-{digest[:12]}"
        self._classes = None
        self._normals = None
        self._subnormals = None
        self._derived = None
        self._sylow = {}
        self._hall = {}
        self._center = None
        self.memo = {}

    @property
    def identity(self) -> Images:
        return identity_tuple(self.degree)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<Group {self.id} order {self.order} degree {self.degree}>"

    def gens_as_perms(self) -> list[Permutation]:
        return [Permutation(g) for g in self.generators]

    def classes(self) -> "ConjClassTable":
        if self._classes is None:
            self._classes = ConjClassTable(self)
        return self._classes

    def exponent(self) -> int:
        return self.classes().exponent


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup together with the handle it sits inside.

    The embedding is the identity on points (same degree).
    """

    parent: GroupHandle
    group: GroupHandle

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def elements(self):
        return self.group.elements

    @property
    def id(self) -> str:
        return self.group.id

    def __repr__(self) -> str:
        return f"<Subgroup {self.group.id} order {self.order} of {self.parent.id}>"


def as_group(h) -> GroupHandle:
    """Accept either a GroupHandle or a SubgroupHandle."""
    return h.group if isinstance(h, SubgroupHandle) else h


_REGISTRY: dict = {}


def _register(degree: int, generators, elements) -> GroupHandle:
    key = (degree, tuple(sorted(elements)))
    handle = _REGISTRY.get(key)
    if handle is None:
        handle = GroupHandle(degree, generators, key[1])
        _REGISTRY[key] = handle
    return handle


def clear_registry():
    """Drop all handles and caches (mainly for isolating benchmarks)."""
    _REGISTRY.clear()


def enumerate_group(generators, degree: int, cap: int = DEFAULT_ORDER_CAP) -> GroupHandle:
    """Enumerate the group generated by the given permutations."""
    gens = []
    for g in generators:
        img = g.images if isinstance(g, Permutation) else tuple(g)
        if len(img) != degree or sorted(img) != list(range(degree)):
            raise NotBijection(f"generator {img!r} is not a permutation of degree {degree}")
        gens.append(img)
    elems = _closure(gens, degree, cap)
    return _register(degree, gens, elems)


def _small_generating_set(elements, degree: int) -> list:
    gens = []
    have = {identity_tuple(degree)}
    for x in sorted(elements):
        if x not in have:
            gens.append(x)
            have = _closure(gens, degree, len(elements))
            if len(have) == len(elements):
                break
    return gens


def group_from_elements(degree: int, elements) -> GroupHandle:
    """Handle for a set of elements already known to be a subgroup."""
    key = (degree, tuple(sorted(elements)))
    handle = _REGISTRY.get(key)
    if handle is not None:
        return handle
    gens = _small_generating_set(key[1], degree)
    return _register(degree, gens, key[1])


def subgroup_of(G: GroupHandle, generators, check: bool = True) -> SubgroupHandle:
    """Subgroup of G generated by the given elements."""
    G = as_group(G)
    gens = [g.images if isinstance(g, Permutation) else tuple(g) for g in generators]
    if check:
        for g in gens:
            if g not in G.index:
                raise NotSubgroup(f"generator {g!r} lies outside {G.id}")
    elems = _closure(gens, G.degree, G.order)
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def trivial_subgroup(G: GroupHandle) -> SubgroupHandle:
    G = as_group(G)
    return SubgroupHandle(G, group_from_elements(G.degree, [G.identity]))


def whole_subgroup(G: GroupHandle) -> SubgroupHandle:
    G = as_group(G)
    return SubgroupHandle(G, G)


def is_subgroup_of(S, G) -> bool:
    S, G = as_group(S), as_group(G)
    if S.degree != G.degree or G.order % S.order:
        return False
    return all(x in G.index for x in S.elements)


def is_normal_in(S, G) -> bool:
    S, G = as_group(S), as_group(G)
    if not is_subgroup_of(S, G):
        return False
    return all(conj_tuple(s, g) in S.index for g in G.generators for s in S.generators)


class ConjClassTable:
    """Conjugacy classes with representatives, sizes, orders and power map."""

    def __init__(self, G: GroupHandle):
        self.group = G
        assigned = {}
        raw = []
        for x in G.elements:
            if x in assigned:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in G.generators:
                        z = conj_tuple(y, g)
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            members = tuple(sorted(orbit))
            raw.append(members)
            for y in members:
                assigned[y] = True
        raw.sort(key=lambda ms: (len(ms), ms[0]))
        self.members = tuple(raw)
        self.reps = tuple(ms[0] for ms in raw)
        self.sizes = tuple(len(ms) for ms in raw)
        self.num_classes = len(raw)
        self.class_of = {}
        for ci, ms in enumerate(raw):
            for y in ms:
                self.class_of[y] = ci
        self.element_orders = tuple(order_of_tuple(r) for r in self.reps)
        self.exponent = lcm(*self.element_orders) if self.element_orders else 1
        self.identity_class = self.class_of[G.identity]
        self._power = {}

    def power_map(self, ci: int, k: int) -> int:
        """Class of rep(ci)^k."""
        m = self.element_orders[ci]
        k %= m
        key = (ci, k)
        hit = self._power.get(key)
        if hit is None:
            hit = self.class_of[power_tuple(self.reps[ci], k)]
            self._power[key] = hit
        return hit

    def inverse_class(self, ci: int) -> int:
        return self.power_map(ci, -1)


def conjugacy_classes(G) -> ConjClassTable:
    return as_group(G).classes()


def centralizer(G, x) -> SubgroupHandle:
    G = as_group(G)
    if isinstance(x, Permutation):
        x = x.images
    if x not in G.index:
        raise NotSubgroup(f"element {x!r} lies outside {G.id}")
    elems = [g for g in G.elements if mul_tuple(x, g) == mul_tuple(g, x)]
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def normalizer(G, S) -> SubgroupHandle:
    G, S = as_group(G), as_group(S)
    if not is_subgroup_of(S, G):
        raise NotSubgroup(f"{S.id} is not a subgroup of {G.id}")
    elems = [
        g for g in G.elements
        if all(conj_tuple(s, g) in S.index for s in S.generators)
    ]
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def conjugate_subgroup(G, S, g) -> SubgroupHandle:
    G, S = as_group(G), as_group(S)
    elems = [conj_tuple(s, g) for s in S.elements]
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def intersect(G, A, B) -> SubgroupHandle:
    G, A, B = as_group(G), as_group(A), as_group(B)
    small, big = (A, B) if A.order <= B.order else (B, A)
    elems = [x for x in small.elements if x in big.index]
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def product_set(G, A, B) -> SubgroupHandle:
    """The subgroup A*B when at least one of A, B normalizes the product.

    Used only for joins of normal subgroups, where the set product is a
    subgroup; the coset sweep costs O(|AB|) products.
    """
    G, A, B = as_group(G), as_group(A), as_group(B)
    result = set(A.elements)
    for b in B.elements:
        if b not in result:
            result.update(mul_tuple(a, b) for a in A.elements)
    return SubgroupHandle(G, group_from_elements(G.degree, result))


def sylow_subgroup(G, p: int) -> SubgroupHandle:
    G = as_group(G)
    cached = G._sylow.get(p)
    if cached is not None:
        return SubgroupHandle(G, cached)
    target = pi_part(G.order, {p})
    Q = group_from_elements(G.degree, [G.identity])
    while Q.order < target:
        N = as_group(normalizer(G, Q))
        step = None
        for g in N.elements:
            if g not in Q.index and power_tuple(g, p) in Q.index:
                step = g
                break
        if step is None:  # cannot happen for p-subgroups below the p-part
            raise CapExceeded(f"sylow growth stalled in {G.id} at order {Q.order}")
        Q = as_group(subgroup_of(G, list(Q.generators) + [step], check=False))
    G._sylow[p] = Q
    return SubgroupHandle(G, Q)


def derived_subgroup(G) -> SubgroupHandle:
    G = as_group(G)
    if G._derived is None:
        comms = []
        for a in G.generators:
            for b in G.generators:
                comms.append(mul_tuple(mul_tuple(inv_tuple(a), inv_tuple(b)), mul_tuple(a, b)))
        D = normal_closure(G, comms)
        G._derived = as_group(D)
    return SubgroupHandle(G, G._derived)


def normal_closure(G, elems) -> SubgroupHandle:
    """Smallest normal subgroup of G containing the given elements."""
    G = as_group(G)
    gens = [x.images if isinstance(x, Permutation) else tuple(x) for x in elems]
    gens = [g for g in gens if g != G.identity]
    current = _closure(gens, G.degree, G.order) if gens else {G.identity}
    while True:
        new = []
        for g in G.generators:
            for s in current:
                t = conj_tuple(s, g)
                if t not in current:
                    new.append(t)
        if not new:
            break
        gens.extend(new)
        current = _closure(gens, G.degree, G.order)
    return SubgroupHandle(G, group_from_elements(G.degree, current))


def is_solvable(G) -> bool:
    G = as_group(G)
    hit = G.memo.get("solvable")
    if hit is None:
        D = G
        while True:
            E = as_group(derived_subgroup(D))
            if E.order == D.order:
                break
            D = E
        hit = D.order == 1
        G.memo["solvable"] = hit
    return hit


def normal_subgroups(G) -> list[SubgroupHandle]:
    """All normal subgroups, via joins of class-generated normal subgroups."""
    G = as_group(G)
    if G._normals is None:
        ct = G.classes()
        class_subs = []
        seen_keys = set()
        for ci in range(ct.num_classes):
            if ci == ct.identity_class:
                continue
            S = as_group(normal_closure(G, [ct.reps[ci]]))
            if S.id not in seen_keys:
                seen_keys.add(S.id)
                class_subs.append(S)
        found = {group_from_elements(G.degree, [G.identity]).id: group_from_elements(G.degree, [G.identity])}
        work = list(found.values())
        while work:
            N = work.pop()
            for S in class_subs:
                if all(x in N.index for x in S.generators):
                    continue
                J = as_group(product_set(G, N, S))
                if J.id not in found:
                    found[J.id] = J
                    work.append(J)
        result = sorted(found.values(), key=lambda H: (H.order, H.elements))
        G._normals = result
    return [SubgroupHandle(G, N) for N in G._normals]


def minimal_normal_subgroup(G) -> SubgroupHandle:
    G = as_group(G)
    for N in normal_subgroups(G):
        if N.order > 1:
            return N
    raise ValueError("trivial group has no minimal normal subgroup")


def subnormal_subgroups(G) -> list[SubgroupHandle]:
    """Closure of "is a normal subgroup of" starting from G."""
    G = as_group(G)
    if G._subnormals is None:
        found = {G.id: G}
        work = [G]
        while work:
            S = work.pop()
            for N in normal_subgroups(S):
                g = as_group(N)
                if g.id not in found:
                    found[g.id] = g
                    work.append(g)
        G._subnormals = sorted(found.values(), key=lambda H: (H.order, H.elements))
    return [SubgroupHandle(G, S) for S in G._subnormals]


class CosetAction:
    """Right-coset action of G on the cosets of a subgroup H.

    Exposes the image group as a handle plus the epimorphism and
    preimage maps.  When H is normal the image is G/H with kernel H.
    """

    def __init__(self, G: GroupHandle, H: GroupHandle):
        G, H = as_group(G), as_group(H)
        if not is_subgroup_of(H, G):
            raise NotSubgroup(f"{H.id} is not a subgroup of {G.id}")
        self.big = G
        self.sub = H
        coset_of = {}
        reps = []
        for x in G.elements:  # sorted, so each coset is labelled by its least member
            if x in coset_of:
                continue
            idx = len(reps)
            reps.append(x)
            for h in H.elements:
                coset_of[mul_tuple(h, x)] = idx
        self.reps = tuple(reps)
        self.coset_of = coset_of
        self.npoints = len(reps)
        self._image_of = {}
        image_gens = [self.image(g) for g in G.generators]
        self.image_group = group_from_elements(
            self.npoints,
            _closure(image_gens, self.npoints, G.order) if image_gens else {identity_tuple(self.npoints)},
        )

    def image(self, g) -> Images:
        if isinstance(g, Permutation):
            g = g.images
        hit = self._image_of.get(g)
        if hit is None:
            hit = tuple(self.coset_of[mul_tuple(r, g)] for r in self.reps)
            self._image_of[g] = hit
        return hit

    def kernel_elements(self) -> list:
        ident = identity_tuple(self.npoints)
        return [g for g in self.big.elements if self.image(g) == ident]

    def preimage(self, image_elements) -> SubgroupHandle:
        wanted = set(image_elements)
        elems = [g for g in self.big.elements if self.image(g) in wanted]
        return SubgroupHandle(self.big, group_from_elements(self.big.degree, elems))


def coset_action(G, H) -> CosetAction:
    key = ("coset_action", as_group(H).id)
    G = as_group(G)
    hit = G.memo.get(key)
    if hit is None:
        hit = CosetAction(G, as_group(H))
        G.memo[key] = hit
    return hit


def quotient_group(G, N) -> CosetAction:
    """Coset action required to be a true quotient (N normal)."""
    G, N = as_group(G), as_group(N)
    if not is_normal_in(N, G):
        raise NotNormal(f"{N.id} is not normal in {G.id}")
    return coset_action(G, N)


def hall_subgroup(G, pi) -> SubgroupHandle:
    """Hall pi-subgroup via inductive lift along minimal normal subgroups.

    Solvable input is required for |pi| > 1; for pi = {p} this reduces to
    the Sylow computation.
    """
    G = as_group(G)
    pi = frozenset(pi)
    cached = G._hall.get(pi)
    if cached is not None:
        return SubgroupHandle(G, cached)
    relevant = frozenset(p for p in pi if G.order % p == 0)
    if len(relevant) <= 1 and not is_pi_number(G.order, pi):
        if not relevant:
            result = as_group(trivial_subgroup(G))
        else:
            result = as_group(sylow_subgroup(G, next(iter(relevant))))
        G._hall[pi] = result
        return SubgroupHandle(G, result)
    if is_pi_number(G.order, pi):
        G._hall[pi] = G
        return SubgroupHandle(G, G)
    if not is_solvable(G):
        raise NotSolvable(f"{G.id} is not solvable; general-pi Hall subgroups need solvability")
    M = as_group(minimal_normal_subgroup(G))
    q = prime_divisors(M.order)[0]
    act = coset_action(G, M)
    Hbar = hall_subgroup(act.image_group, pi)
    U = as_group(act.preimage(as_group(Hbar).elements))
    if q in pi:
        result = U
    elif U.order == M.order:
        result = as_group(trivial_subgroup(G))
    else:
        result = as_group(_coprime_complement(U, M))
    G._hall[pi] = result
    return SubgroupHandle(G, result)


def _coprime_complement(U: GroupHandle, A: GroupHandle) -> SubgroupHandle:
    """Complement of an abelian normal Hall subgroup A in U.

    Classic cocycle averaging: with transversal t and factor set
    f(X,Y) = t(XY)^-1 t(X) t(Y), the section Y -> t(Y) e(Y)^(-n') with
    e(Y) the row product of f and n' = n^-1 mod exp(A) is multiplicative.
    """
    n = U.order // A.order
    act = coset_action(U, A)
    Q = as_group(act.image_group)
    t = {}
    for x in U.elements:  # sorted, so t picks each coset's least member
        ix = act.image(x)
        if ix not in t:
            t[ix] = x
    t[identity_tuple(Q.degree)] = U.identity
    exp_a = as_group(A).exponent()
    n_inv = pow(n, -1, exp_a)
    f = {}
    for X in Q.elements:
        tX = t[X]
        for Y in Q.elements:
            XY = mul_tuple(X, Y)
            f[(X, Y)] = mul_tuple(inv_tuple(t[XY]), mul_tuple(tX, t[Y]))
    comp = []
    for Y in Q.elements:
        e = U.identity
        for X in Q.elements:
            e = mul_tuple(e, f[(X, Y)])
        comp.append(mul_tuple(t[Y], power_tuple(e, (-n_inv) % exp_a)))
    C = group_from_elements(U.degree, comp)
    if C.order != n or any(x != U.identity and x in as_group(A).index for x in C.elements):
        raise CapExceeded("complement construction failed (non-coprime or non-abelian input?)")
    return SubgroupHandle(U, C)


def num_hall_subgroups(G, pi) -> int:
    """Number of Hall pi-subgroups (they are conjugate in pi-separable G)."""
    G = as_group(G)
    H = hall_subgroup(G, pi)
    return G.order // as_group(normalizer(G, H)).order


def overgroups(G, H, cap: int = DEFAULT_OVERGROUP_CAP) -> list[SubgroupHandle]:
    """All subgroups K with H <= K <= G.

    BFS joining one double-coset representative at a time; every overgroup
    is reached because for K < M <= G any element of M \\ K has its whole
    double coset KgK inside M, so the chosen representative also produces
    a strictly larger subgroup inside M.
    """
    G, H = as_group(G), as_group(H)
    key = ("overgroups", H.id, cap)
    hit = G.memo.get(key)
    if hit is None:
        if not is_subgroup_of(H, G):
            raise NotSubgroup(f"{H.id} is not a subgroup of {G.id}")
        found = {H.id: H}
        queue = [H]
        while queue:
            K = queue.pop()
            marked = set(K.elements)
            for g in G.elements:
                if g in marked:
                    continue
                left = [mul_tuple(k, g) for k in K.elements]
                for x in left:
                    for k in K.elements:
                        marked.add(mul_tuple(x, k))
                J = as_group(subgroup_of(G, list(K.generators) + [g], check=False))
                if J.id not in found:
                    found[J.id] = J
                    queue.append(J)
                    if len(found) > cap:
                        raise CapExceeded(f"overgroup search above {H.id} exceeded cap {cap}")
        hit = sorted(found.values(), key=lambda K: (K.order, K.elements))
        G.memo[key] = hit
    return [SubgroupHandle(G, K) for K in hit]


def center(G) -> SubgroupHandle:
    G = as_group(G)
    if G._center is None:
        elems = [x for x in G.elements if all(mul_tuple(x, g) == mul_tuple(g, x) for g in G.generators)]
        G._center = group_from_elements(G.degree, elems)
    return SubgroupHandle(G, G._center)


def primes_of_order(G) -> tuple[int, ...]:
    return prime_divisors(as_group(G).order)


def is_p_solvable(G, p: int) -> bool:
    """Upper p-series test: alternating O_{p'} / O_p cores reach G."""
    from .series import build_series  # local import to avoid a cycle
    from .errors import NotPiSeparable
    try:
        build_series(G, {p}, "upper")
        return True
    except NotPiSeparable:
        return False


def describe(G) -> str:
    G = as_group(G)
    facs = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorint(G.order))
    return f"order {G.order} = {facs}, degree {G.degree}"
