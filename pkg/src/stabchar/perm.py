"""Permutations on {0, ..., degree-1} as image tuples.

The hot paths in the rest of the engine work on raw image tuples; the
``Permutation`` class is the validated API-surface wrapper used for
parsing, rendering and the public group interface.

Composition convention is left-to-right: ``i^(a*b) = (i^a)^b``, so
``(a*b)[i] = b[a[i]]``.  Conjugation is ``a^g = g^-1 * a * g`` and
satisfies ``(a^g)^h = a^(g*h)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotBijection

Images = tuple  # raw image tuple, internal currency


def identity_tuple(degree: int) -> Images:
    return tuple(range(degree))


def mul_tuple(a: Images, b: Images) -> Images:
    """i -> b[a[i]] (apply a first, then b)."""
    return tuple(b[x] for x in a)


def inv_tuple(a: Images) -> Images:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj_tuple(a: Images, g: Images) -> Images:
    """a^g = g^-1 a g."""
    return mul_tuple(mul_tuple(inv_tuple(g), a), g)


def order_of_tuple(a: Images) -> int:
    n = 1
    b = a
    ident = identity_tuple(len(a))
    while b != ident:
        b = mul_tuple(b, a)
        n += 1
    return n


def power_tuple(a: Images, k: int) -> Images:
    """a^k by repeated squaring; k may be negative."""
    if k < 0:
        a = inv_tuple(a)
        k = -k
    result = identity_tuple(len(a))
    base = a
    while k:
        if k & 1:
            result = mul_tuple(result, base)
        base = mul_tuple(base, base)
        k >>= 1
    return result


def cycles_of_tuple(a: Images) -> list[list[int]]:
    """Nontrivial cycles, each rotated to start at its least point."""
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
        cycles.append(cyc)
    return cycles


def tuple_from_cycles(cycles, degree: int) -> Images:
    images = list(range(degree))
    touched = set()
    for cyc in cycles:
        for p in cyc:
            if not isinstance(p, int) or p < 0 or p >= degree:
                raise NotBijection(f"point {p!r} out of range for degree {degree}")
            if p in touched:
                raise NotBijection(f"point {p} repeated across cycles")
            touched.add(p)
        for i, p in enumerate(cyc):
            images[p] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


@dataclass(frozen=True)
class Permutation:
    """A validated permutation of {0, ..., degree-1}."""

    images: Images

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise NotBijection(f"images {self.images!r} are not a bijection on {n} points")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(identity_tuple(degree))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> "Permutation":
        return cls(tuple_from_cycles(cycles, degree))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise NotBijection("degree mismatch in product")
        return Permutation(mul_tuple(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(inv_tuple(self.images))

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(power_tuple(self.images, k))

    def order(self) -> int:
        return order_of_tuple(self.images)

    def cycles(self) -> list[list[int]]:
        return cycles_of_tuple(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)
