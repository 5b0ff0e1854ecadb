"""Clifford-theoretic operations between a group and its subgroups.

Restriction, brute-force induction, character conjugation, inertia
groups, extension sets, homogeneity and determinantal orders, all in
exact arithmetic.  Induction and restriction share a cached fusion table
per (group, subgroup) pair: one sweep over the subgroup records how its
elements fall into the ambient conjugacy classes, which turns the
defining sum theta^G(g) = (1/|H|) sum over x of theta(x g x^-1) into a
per-class weighted sum.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .arith import is_pi_number
from .chartab import CharTable, ClassFunction, character_table, inner
from .cyclo import Cyclotomic, _powers_table, cyclo_sum
from .errors import (
    LiftFailure,
    MixedGroups,
    NonIntegralMultiplicity,
    NotNormal,
    NotSubgroup,
)
from .fplinalg import inv_mod
from .groups import (
    SubgroupHandle,
    as_group,
    conjugate_subgroup,
    group_from_elements,
    is_normal_in,
    is_subgroup_of,
)
from .perm import conj_tuple, inv_tuple, mul_tuple


def _fusion(G, H):
    """Counts[c][k] = number of elements of H in G-class c and H-class k."""
    G, H = as_group(G), as_group(H)
    key = ("fusion", H.id)
    hit = G.memo.get(key)
    if hit is None:
        if not is_subgroup_of(H, G):
            raise NotSubgroup(f"{H.id} is not a subgroup of {G.id}")
        gct, hct = G.classes(), H.classes()
        counts = np.zeros((gct.num_classes, hct.num_classes), dtype=np.int64)
        for x in H.elements:
            counts[gct.class_of[x], hct.class_of[x]] += 1
        rep_map = tuple(gct.class_of[r] for r in hct.reps)
        hit = (counts, rep_map)
        G.memo[key] = hit
    return hit


def restrict(chi: ClassFunction, H) -> ClassFunction:
    """Pointwise restriction of a class function to a subgroup."""
    G = chi.table.group
    H = as_group(H)
    if H.id == G.id:
        return chi
    _, rep_map = _fusion(G, H)
    sub = character_table(H)
    return ClassFunction(sub, [chi.values[c] for c in rep_map])


def constituents(chi: ClassFunction, H) -> list[tuple[ClassFunction, int]]:
    """Irreducible constituents of chi restricted to H, with multiplicities."""
    res = restrict(chi, H)
    sub = res.table
    out = []
    for row in sub.rows:
        m = inner(res, row)
        if m:
            if m.denominator != 1 or m < 0:
                raise LiftFailure("constituent multiplicity is not a nonnegative integer")
            out.append((row, int(m)))
    return out


def induce(theta: ClassFunction, G) -> ClassFunction:
    """Induced class function theta^G, exactly."""
    H = theta.table.group
    G = as_group(G)
    if H.id == G.id:
        return theta
    counts, _ = _fusion(G, H)
    gct = G.classes()
    tab = character_table(G)
    values = []
    for c in range(gct.num_classes):
        weights = counts[c]
        pieces = [int(weights[k]) * theta.values[k] for k in range(len(weights)) if weights[k]]
        total = cyclo_sum(pieces) if pieces else Cyclotomic.zero(1)
        scale = Fraction(G.order // gct.sizes[c], H.order)
        values.append(Cyclotomic.from_int(scale, 1) * total)
    return ClassFunction(tab, values)


def conjugate_character(theta: ClassFunction, g) -> ClassFunction:
    """theta^g on H^g, defined by theta^g(y) = theta(g y g^-1)."""
    H = theta.table.group
    Hg = as_group(conjugate_subgroup(H, H, g)) if True else H
    hct = H.classes()
    target = character_table(Hg)
    tct = Hg.classes()
    ginv = inv_tuple(g)
    vals = []
    for y in tct.reps:
        x = conj_tuple(y, ginv)  # g y g^-1
        vals.append(theta.values[hct.class_of[x]])
    return ClassFunction(target, vals)


def conj_perm_on_classes(N, g) -> tuple:
    """For g normalizing N: map class c to the class of g rep_c g^-1."""
    N = as_group(N)
    ct = N.classes()
    ginv = inv_tuple(g)
    return tuple(ct.class_of[conj_tuple(rep, ginv)] for rep in ct.reps)


def conj_action_on_rows(N, g) -> tuple:
    """Permutation of Irr(N) row indices induced by conjugation with g."""
    N = as_group(N)
    key = ("rowperm", g)
    hit = N.memo.get(key)
    if hit is None:
        tab = character_table(N)
        perm = conj_perm_on_classes(N, g)
        out = []
        for row in tab.rows:
            k = row.key()
            moved = tuple(k[perm[c]] for c in range(len(perm)))
            j = tab.row_index.get(moved)
            if j is None:
                raise LiftFailure("conjugation did not permute the irreducible rows")
            out.append(j)
        hit = tuple(out)
        N.memo[key] = hit
    return hit


def is_invariant_under(theta: ClassFunction, elements) -> bool:
    """Whether theta (on N) is fixed by conjugation with each element."""
    N = theta.table.group
    idx = theta.irr_index()
    for g in elements:
        if idx is not None:
            if conj_action_on_rows(N, g)[idx] != idx:
                return False
        else:
            perm = conj_perm_on_classes(N, g)
            if any(theta.values[perm[c]] != theta.values[c] for c in range(len(perm))):
                return False
    return True


def inertia(G, N, theta: ClassFunction) -> SubgroupHandle:
    """Stabilizer of theta in G, for N normal in G."""
    G, N = as_group(G), as_group(N)
    if not is_normal_in(N, G):
        raise NotNormal(f"{N.id} is not normal in {G.id}")
    idx = theta.irr_index()
    if idx is None:
        raise ValueError("inertia needs an irreducible character of N")
    elems = [g for g in G.elements if conj_action_on_rows(N, g)[idx] == idx]
    return SubgroupHandle(G, group_from_elements(G.degree, elems))


def extensions(theta: ClassFunction, W) -> list[ClassFunction]:
    """All irreducible characters of W restricting to theta exactly."""
    H = theta.table.group
    W = as_group(W)
    if not is_subgroup_of(H, W):
        raise NotSubgroup(f"{H.id} is not a subgroup of {W.id}")
    tab = character_table(W)
    _, rep_map = _fusion(W, H)
    out = []
    for row in tab.rows:
        if row.degree != theta.degree:
            continue
        if all(row.values[rep_map[k]] == theta.values[k] for k in range(len(rep_map))):
            out.append(row)
    return out


def is_homogeneous(chi: ClassFunction, N):
    """(True, the unique constituent) when chi_N is a multiple of one
    irreducible; (False, None) otherwise."""
    cons = constituents(chi, N)
    if len(cons) == 1:
        return True, cons[0][0]
    return False, None


def product(a: ClassFunction, b: ClassFunction) -> ClassFunction:
    return a * b


def is_irreducible(f: ClassFunction) -> bool:
    return f.is_irreducible()


def decompose(chi: ClassFunction) -> list[tuple[int, int]]:
    """Multiplicities of chi against its own table's rows."""
    out = []
    for i, row in enumerate(chi.table.rows):
        m = inner(chi, row)
        if m:
            if m.denominator != 1 or m < 0:
                raise LiftFailure("decomposition multiplicity is not a nonnegative integer")
            out.append((i, int(m)))
    return out


def _row_det_exponents(table: CharTable, i: int) -> tuple:
    """Per class k the pair (m_k, s_k) with det value zeta_{m_k}^{s_k}."""
    key = ("det", i)
    hit = table.group.memo.get(key)
    if hit is not None:
        return hit
    ct, l, e = table.ct, table.prime, table.e
    pows_e = _powers_table(e)
    out = []
    for k in range(ct.num_classes):
        m = ct.element_orders[k]
        pcs = table.power_classes(k)
        zm = pow(table.zeta_mod, e // m, l)
        samples = np.array([table.values_mod[i, c] for c in pcs], dtype=np.int64)
        mult = np.zeros(m, dtype=np.int64)
        minv = inv_mod(m, l)
        for j in range(m):
            acc = 0
            for s in range(m):
                acc = (acc + samples[s] * pow(zm, (-j * s) % m, l)) % l
            mult[j] = (acc * minv) % l
        if int(mult.sum()) != table.degrees[i]:
            raise NonIntegralMultiplicity(
                f"eigenvalue multiplicities of row {i} at class {k} do not sum to the degree"
            )
        folded = np.zeros(e, dtype=np.int64)
        for j in range(m):
            folded[(j * (e // m)) % e] += int(mult[j])
        value = Cyclotomic(e, folded @ pows_e)
        if value != table.rows[i].values[k]:
            raise NonIntegralMultiplicity(
                f"eigenvalue multiplicities of row {i} at class {k} do not rebuild the value"
            )
        s_exp = sum(j * int(mult[j]) for j in range(m)) % m
        out.append((m, s_exp))
    hit = tuple(out)
    table.group.memo[key] = hit
    return hit


def determinant_order(chi: ClassFunction) -> int:
    """Order of the linear character det(chi)."""
    table = chi.table
    idx = chi.irr_index()
    if idx is not None:
        parts = [_row_det_exponents(table, idx)]
        mults = [1]
    else:
        dec = decompose(chi)
        total = sum(m * table.rows[i].degree for i, m in dec)
        if total != chi.degree:
            raise ValueError("determinant_order needs a character")
        parts = [_row_det_exponents(table, i) for i, _ in dec]
        mults = [m for _, m in dec]
    order = 1
    r = table.ct.num_classes
    for k in range(r):
        m = parts[0][k][0]
        s = sum(mult * part[k][1] for part, mult in zip(parts, mults)) % m
        g = np.gcd(m, s) if s else m
        order = np.lcm(order, m // g)
    return int(order)


def determinant_character(chi: ClassFunction) -> ClassFunction:
    """The linear character det(chi) itself."""
    table = chi.table
    idx = chi.irr_index()
    if idx is not None:
        dec = [(idx, 1)]
    else:
        dec = decompose(chi)
    parts = [_row_det_exponents(table, i) for i, _ in dec]
    mults = [m for _, m in dec]
    vals = []
    for k in range(table.ct.num_classes):
        m = parts[0][k][0]
        s = sum(mult * part[k][1] for part, mult in zip(parts, mults)) % m
        folded = np.zeros(table.e, dtype=np.int64)
        folded[(s * (table.e // m)) % table.e] = 1
        vals.append(Cyclotomic(table.e, folded @ _powers_table(table.e)))
    return ClassFunction(table, vals)
