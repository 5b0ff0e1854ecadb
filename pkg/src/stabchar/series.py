"""Normal pi-series: ascending chains of normal subgroups with pure factors.

A series is a chain 1 = N_0 <= ... <= N_n = G of subgroups normal in G
whose successive factor orders are pi-numbers or pi'-numbers (or 1, for
user chains with repeated terms).  Construction strategies: ``upper``
alternates the largest normal pi'-/pi-extensions, ``chief`` refines a
chief series, ``user`` validates a supplied chain.
"""
from __future__ import annotations

from dataclasses import dataclass

from .arith import is_pi_number
from .errors import InvalidSeries, NotPiSeparable
from .groups import (
    GroupHandle,
    SubgroupHandle,
    as_group,
    group_from_elements,
    intersect,
    is_normal_in,
    is_subgroup_of,
    normal_subgroups,
    trivial_subgroup,
)

FACTOR_PI = "pi"
FACTOR_PI_PRIME = "pi_prime"
FACTOR_TRIVIAL = "trivial"


@dataclass(frozen=True)
class NormalPiSeries:
    group: GroupHandle
    pi: frozenset
    terms: tuple          # SubgroupHandle, ascending, trivial to group
    kinds: tuple          # factor kind per step, length len(terms) - 1
    strategy: str = "user"

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def signature(self) -> tuple:
        return (self.group.id, tuple(sorted(self.pi)), tuple(t.id for t in self.terms))

    def describe(self) -> str:
        orders = " <= ".join(str(t.order) for t in self.terms)
        return f"{self.strategy}[{orders}; {','.join(self.kinds)}]"

    def __repr__(self) -> str:
        return f"<NormalPiSeries pi={sorted(self.pi)} {self.describe()} of {self.group.id}>"


def _factor_kind(upper_order: int, lower_order: int, pi) -> str:
    q, r = divmod(upper_order, lower_order)
    if r:
        raise InvalidSeries("series terms must have dividing orders")
    if q == 1:
        return FACTOR_TRIVIAL
    if is_pi_number(q, pi):
        return FACTOR_PI
    if all(q % p for p in pi):
        return FACTOR_PI_PRIME
    raise InvalidSeries(f"factor of order {q} is neither a pi- nor a pi'-number")


def _largest_normal_extension(G: GroupHandle, N: GroupHandle, pi, prime_side: bool):
    """Largest M normal in G with N <= M and M/N a pi-(or pi'-)group."""
    candidates = [N]
    for M in normal_subgroups(G):
        Mg = as_group(M)
        if Mg.order <= N.order or Mg.order % N.order:
            continue
        if not all(x in Mg.index for x in N.generators):
            continue
        q = Mg.order // N.order
        ok = all(q % p for p in pi) if prime_side else is_pi_number(q, pi)
        if ok:
            candidates.append(Mg)
    best = max(candidates, key=lambda M: M.order)
    # the candidate set is join-closed, so the largest contains every other
    for M in candidates:
        if not all(x in best.index for x in M.generators):
            raise NotPiSeparable("normal pi-core is not unique")  # cannot happen
    return best


def build_series(G, pi, strategy: str = "upper", user_terms=None) -> NormalPiSeries:
    """Construct a normal pi-series for G by the chosen strategy."""
    G = as_group(G)
    pi = frozenset(pi)
    if strategy == "upper":
        terms = [as_group(trivial_subgroup(G))]
        kinds = []
        while terms[-1].order < G.order:
            grew = False
            for prime_side, kind in ((True, FACTOR_PI_PRIME), (False, FACTOR_PI)):
                M = _largest_normal_extension(G, terms[-1], pi, prime_side)
                if M.order > terms[-1].order:
                    terms.append(M)
                    kinds.append(kind)
                    grew = True
            if not grew:
                raise NotPiSeparable(
                    f"upper pi-series of {G.id} stalls at order {terms[-1].order} for pi={sorted(pi)}"
                )
    elif strategy == "chief":
        normals = [as_group(N) for N in normal_subgroups(G)]
        terms = [as_group(trivial_subgroup(G))]
        kinds = []
        while terms[-1].order < G.order:
            current = terms[-1]
            candidates = [
                N for N in normals
                if N.order > current.order and N.order % current.order == 0
                and all(x in N.index for x in current.elements)
            ]
            if not candidates:
                raise NotPiSeparable(f"no chief refinement above order {current.order} in {G.id}")
            nxt = min(candidates, key=lambda N: (N.order, N.elements))
            kinds.append(_factor_kind(nxt.order, current.order, pi))
            if kinds[-1] == FACTOR_TRIVIAL:
                raise InvalidSeries("chief refinement produced a trivial factor")
            terms.append(nxt)
    elif strategy == "user":
        if not user_terms:
            raise InvalidSeries("user strategy needs an explicit chain")
        terms = [as_group(t) for t in user_terms]
        if terms[0].order != 1:
            raise InvalidSeries("user chain must start at the trivial subgroup")
        if terms[-1].id != G.id:
            raise InvalidSeries("user chain must end at the whole group")
        kinds = []
        for lo, hi in zip(terms, terms[1:]):
            if not is_subgroup_of(lo, hi):
                raise InvalidSeries("user chain is not ascending")
            if not is_normal_in(hi, G):
                raise InvalidSeries(f"term of order {hi.order} is not normal in {G.id}")
            kinds.append(_factor_kind(hi.order, lo.order, pi))
    else:
        raise InvalidSeries(f"unknown series strategy {strategy!r}")

    subs = tuple(SubgroupHandle(G, t) for t in terms)
    return NormalPiSeries(G, pi, subs, tuple(kinds), strategy)


def restrict_series(series: NormalPiSeries, T) -> NormalPiSeries:
    """The series T ∩ N_i with recomputed factor kinds."""
    T = as_group(T)
    if T.id == series.group.id:
        return series
    terms = []
    for N in series.terms:
        terms.append(as_group(intersect(T, T, N)))
    kinds = tuple(_factor_kind(hi.order, lo.order, series.pi) for lo, hi in zip(terms, terms[1:]))
    subs = tuple(SubgroupHandle(T, t) for t in terms)
    return NormalPiSeries(T, series.pi, subs, kinds, series.strategy)
