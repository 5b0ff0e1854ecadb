"""Exact irreducible character tables.

The construction is the classical modular one: build class-multiplication
(structure constant) matrices, split their simultaneous eigenvectors over
F_l for a prime l = 1 (mod exp G) with l > 2*sqrt(|G|), read degrees and
modular values off the normalized eigenvectors, then lift each value to
an exact cyclotomic through the eigenvalue-multiplicity discrete Fourier
formula over the cyclic group generated by a class representative.

Every finished table is verified on the spot: degree sum, both
orthogonality relations (exact cyclotomic arithmetic), class count, and
for groups of order <= 256 an induction/restriction consistency check
against one maximal subgroup.  Any violation raises LiftFailure, which is
always an engine bug, never expected behavior.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm

import numpy as np

from .arith import euler_phi, factorint, pi_part
from .cyclo import Cyclotomic, _powers_table, cyclo_sum
from .errors import LiftFailure, MixedGroups
from .fplinalg import (
    column_echelon,
    inv_mod,
    kernel_columns,
    minimal_polynomial,
    poly_roots,
)
from .groups import GroupHandle, as_group, subgroup_of
from .perm import inv_tuple, mul_tuple


class ClassFunction:
    """An exact class function on a group, indexed by conjugacy class.

    Values produced inside the group (table rows, products, inductions
    from subgroups) live at conductors dividing the table conductor and
    are lifted to it on construction, so such functions compare by plain
    coefficient equality.  Restrictions from a larger group may carry a
    larger conductor; they still support arithmetic and value equality
    but are keyed at the least common conductor.
    """

    __slots__ = ("table", "values", "tags", "_key", "_deg")

    def __init__(self, table: "CharTable", values):
        self.table = table
        self.values = tuple(
            v.lift(table.e) if table.e % v.e == 0 and v.e != table.e else v
            for v in values
        )
        self.tags = {}
        self._key = None
        self._deg = None

    def key(self):
        if self._key is None:
            big = self.table.e
            for v in self.values:
                big = lcm(big, v.e)
            self._key = tuple((w.num, w.den) for w in (v.lift(big) for v in self.values))
        return self._key

    @property
    def degree(self) -> int:
        if self._deg is None:
            d = self.values[self.table.ct.identity_class].as_int()
            self._deg = d
        return self._deg

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        if self.table.group.id != other.table.group.id:
            raise MixedGroups("comparing class functions on different groups")
        return all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        # containers should only mix functions built inside one group,
        # whose keys share the table conductor
        return hash((self.table.group.id, self.key()))

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        if self.table.group.id != other.table.group.id:
            raise MixedGroups("product of class functions on different groups")
        return ClassFunction(self.table, [a * b for a, b in zip(self.values, other.values)])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if self.table.group.id != other.table.group.id:
            raise MixedGroups("sum of class functions on different groups")
        return ClassFunction(self.table, [a + b for a, b in zip(self.values, other.values)])

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.table, [v.conj() for v in self.values])

    def irr_index(self):
        """Row index in the table if this is an irreducible character."""
        return self.table.row_index.get(self.key())

    def is_irreducible(self) -> bool:
        hit = self.tags.get("irreducible")
        if hit is None:
            hit = self.irr_index() is not None
            if not hit:
                hit = inner(self, self) == 1 and self.degree is not None and self.degree > 0
            self.tags["irreducible"] = hit
        return hit

    def render_values(self) -> tuple:
        return tuple(v.render() for v in self.values)

    def __repr__(self):
        return f"<ClassFunction deg {self.degree} on {self.table.group.id}>"


def _first_prime_in_progression(e: int, lower: int) -> int:
    """Smallest prime l = 1 (mod e) with l > lower."""

    def is_prime(n):
        if n < 2:
            return False
        for p, _ in factorint(n):
            if p != n:
                return False
        return True

    k = max(1, lower // e)
    while True:
        cand = k * e + 1
        if cand > lower and is_prime(cand):
            return cand
        k += 1


def _primitive_root(l: int) -> int:
    fac = [p for p, _ in factorint(l - 1)]
    g = 2
    while True:
        if all(pow(g, (l - 1) // p, l) != 1 for p in fac):
            return g
        g += 1


class CharTable:
    """Complete exact irreducible character table of a group."""

    def __init__(self, G: GroupHandle):
        G = as_group(G)
        self.group = G
        self.ct = G.classes()
        r = self.ct.num_classes
        self.e = self.ct.exponent
        self._power_classes = {}
        if r == 1:
            self.prime = 3
            self.zeta_mod = 1
            self.values_mod = np.ones((1, 1), dtype=np.int64)
            self.degrees = (1,)
            coeffs = np.ones((1, 1, 1), dtype=np.int64)
            self._finish(coeffs)
            return
        l = _first_prime_in_progression(self.e, max(2 * isqrt(G.order) + 1, self.e))
        self.prime = l
        self.zeta_mod = pow(_primitive_root(l), (l - 1) // self.e, l)
        values_mod, degrees = self._modular_table()
        self.values_mod = values_mod
        self.degrees = degrees
        coeffs = self._lift_values()
        self._finish(coeffs)

    # --- modular stage ------------------------------------------------------

    def _class_matrix(self, i: int) -> np.ndarray:
        ct = self.ct
        r = ct.num_classes
        M = np.zeros((r, r), dtype=np.int64)
        inv_members = [inv_tuple(x) for x in ct.members[i]]
        for k in range(r):
            z = ct.reps[k]
            for xi in inv_members:
                j = ct.class_of[mul_tuple(xi, z)]
                M[j, k] += 1
        return M

    def _modular_table(self):
        ct, l = self.ct, self.prime
        r = ct.num_classes
        spaces = [column_echelon(np.eye(r, dtype=np.int64), l)]
        for i in range(r):
            if i == ct.identity_class:
                continue
            if all(B.shape[1] == 1 for B, _ in spaces):
                break
            M = self._class_matrix(i)
            nxt = []
            for B, piv in spaces:
                d = B.shape[1]
                if d == 1:
                    nxt.append((B, piv))
                    continue
                A = (M @ B)[piv, :] % l
                mp = minimal_polynomial(A, l)
                if len(mp) == 2:  # single eigenvalue: no split from this class
                    nxt.append((B, piv))
                    continue
                roots = poly_roots(mp, l)
                if len(roots) != len(mp) - 1:
                    raise LiftFailure("minimal polynomial did not split completely")
                for lam in roots:
                    K = kernel_columns((A - lam * np.eye(d, dtype=np.int64)) % l, l)
                    nxt.append(column_echelon((B @ K) % l, l))
            spaces = nxt
        if len(spaces) != r or any(B.shape[1] != 1 for B, _ in spaces):
            raise LiftFailure(f"eigenvector splitting produced {len(spaces)} spaces for {r} classes")

        idc = ct.identity_class
        sizes = np.array(ct.sizes, dtype=np.int64)
        size_inv = np.array([inv_mod(s, l) for s in ct.sizes], dtype=np.int64)
        inv_class = [ct.inverse_class(k) for k in range(r)]
        sq = {}
        for t in range((l - 1) // 2, -1, -1):
            sq[(t * t) % l] = t  # keep the smaller square root
        omegas = []
        degrees = []
        for B, _ in spaces:
            v = B[:, 0] % l
            if v[idc] == 0:
                raise LiftFailure("eigenvector vanishes on the identity class")
            v = (v * inv_mod(v[idc], l)) % l
            s_val = 0
            for k in range(r):
                s_val = (s_val + v[k] * v[inv_class[k]] % l * size_inv[k]) % l
            dsq = (self.group.order % l) * inv_mod(s_val, l) % l
            if dsq not in sq:
                raise LiftFailure("degree squared is not a square mod l")
            deg = sq[dsq]
            omegas.append(v)
            degrees.append(deg)
        X = np.zeros((r, r), dtype=np.int64)
        for i, (v, deg) in enumerate(zip(omegas, degrees)):
            X[i] = (v * deg % l) * size_inv % l
        if sum(d * d for d in degrees) != self.group.order:
            raise LiftFailure("degree squares do not sum to the group order")
        return X, tuple(degrees)

    # --- exact lift ----------------------------------------------------------

    def power_classes(self, k: int) -> list[int]:
        """Classes of rep_k^s for s = 0..order(rep_k)-1."""
        hit = self._power_classes.get(k)
        if hit is None:
            ct = self.ct
            m = ct.element_orders[k]
            x = self.group.identity
            hit = []
            for _ in range(m):
                hit.append(ct.class_of[x])
                x = mul_tuple(x, ct.reps[k])
            self._power_classes[k] = hit
        return hit

    def _lift_values(self) -> np.ndarray:
        ct, l, e = self.ct, self.prime, self.e
        r = ct.num_classes
        phi = euler_phi(e)
        pows_e = _powers_table(e)
        coeffs = np.zeros((r, r, phi), dtype=np.int64)
        for k in range(r):
            m = ct.element_orders[k]
            pcs = self.power_classes(k)
            zm = pow(self.zeta_mod, e // m, l)
            W = np.zeros((m, m), dtype=np.int64)
            for j in range(m):
                W[j] = [pow(zm, (-j * s) % m, l) for s in range(m)]
            samples = self.values_mod[:, pcs]  # (r, m)
            mult = (inv_mod(m, l) * (W @ samples.T)) % l  # (m, r): a_j per row
            col_sums = mult.sum(axis=0) % l
            if any(int(col_sums[i]) != self.degrees[i] % l for i in range(r)):
                raise LiftFailure("eigenvalue multiplicities do not sum to the degree")
            folded = np.zeros((r, e), dtype=np.int64)
            for j in range(m):
                folded[:, (j * (e // m)) % e] += mult[j]
            coeffs[:, k, :] = folded @ pows_e
        return coeffs

    def _finish(self, coeffs: np.ndarray):
        ct, e = self.ct, self.e
        r = ct.num_classes
        rows = []
        for i in range(r):
            values = [Cyclotomic(e, coeffs[i, k]) for k in range(r)]
            rows.append(ClassFunction(self, values))
        for i, row in enumerate(rows):
            if row.degree != self.degrees[i]:
                raise LiftFailure("lifted identity value disagrees with the modular degree")
        order = sorted(range(r), key=lambda i: (self.degrees[i], rows[i].render_values()))
        self.rows = tuple(rows[i] for i in order)
        self.degrees = tuple(self.degrees[i] for i in order)
        self.values_mod = self.values_mod[order]
        self.row_index = {row.key(): i for i, row in enumerate(self.rows)}
        for row in self.rows:
            row.tags["irreducible"] = True
        self._verify()

    # --- verification ---------------------------------------------------------

    def _verify(self):
        G, ct = self.group, self.ct
        r = ct.num_classes
        if len(self.rows) != r:
            raise LiftFailure("number of irreducibles differs from the class count")
        if sum(d * d for d in self.degrees) != G.order:
            raise LiftFailure("degree squares do not sum to the group order")
        conj_rows = [row.conj() for row in self.rows]
        zero = Cyclotomic.zero(self.e)
        order_c = Cyclotomic.from_int(G.order, self.e)
        for i in range(r):
            vi = self.rows[i].values
            for j in range(i, r):
                wj = conj_rows[j].values
                total = cyclo_sum(
                    (Cyclotomic.from_int(ct.sizes[k], 1) * vi[k] * wj[k] for k in range(r)),
                    self.e,
                )
                expect = order_c if i == j else zero
                if total != expect:
                    raise LiftFailure(f"first orthogonality fails at rows ({i},{j})")
        for k1 in range(r):
            for k2 in range(k1, r):
                total = cyclo_sum(
                    (self.rows[i].values[k1] * conj_rows[i].values[k2] for i in range(r)),
                    self.e,
                )
                if k1 == k2:
                    expect = Cyclotomic.from_int(G.order // ct.sizes[k1], self.e)
                else:
                    expect = zero
                if total != expect:
                    raise LiftFailure(f"second orthogonality fails at classes ({k1},{k2})")
        if G.order > 1 and G.order <= 256:
            self._check_against_maximal_subgroup()

    def _check_against_maximal_subgroup(self):
        """Redundant consistency check against one maximal subgroup M:
        each row restricts to M with nonnegative integer multiplicities
        that add up in degree and agree with brute-force induction."""
        G = self.group
        ct = self.ct
        M = as_group(subgroup_of(G, [], check=False))
        while True:
            grew = False
            for g in G.elements:
                if g in M.index:
                    continue
                J = as_group(subgroup_of(G, list(M.generators) + [g], check=False))
                if J.order < G.order:
                    M = J
                    grew = True
                    break
            if not grew:
                break
        sub = character_table(M)
        mct = M.classes()
        fusion = [ct.class_of[x] for x in mct.reps]
        # induced value of theta at G-class c:  |C_G(g)|/|M| * sum of theta
        # over the members of c that lie in M
        members_in_m = [
            [mct.class_of[x] for x in ct.members[c] if x in M.index]
            for c in range(ct.num_classes)
        ]
        for srow in sub.rows:
            induced = []
            for c in range(ct.num_classes):
                total = cyclo_sum((srow.values[mk] for mk in members_in_m[c]), sub.e)
                centralizer_order = G.order // ct.sizes[c]
                scaled = Cyclotomic.from_int(Fraction(centralizer_order, M.order), 1) * total
                induced.append(scaled)
            ind = ClassFunction(self, induced)
            for i, row in enumerate(self.rows):
                lhs = inner(ind, row)
                restricted = ClassFunction(sub, [row.values[c] for c in fusion])
                rhs = inner(restricted, srow)
                if lhs != rhs or rhs.denominator != 1 or rhs < 0:
                    raise LiftFailure(
                        f"induction/restriction mismatch against maximal subgroup at row {i}"
                    )
        for row in self.rows:
            restricted = ClassFunction(sub, [row.values[c] for c in fusion])
            total_deg = 0
            for srow in sub.rows:
                mult = inner(restricted, srow)
                if mult.denominator != 1 or mult < 0:
                    raise LiftFailure("restriction multiplicity is not a nonnegative integer")
                total_deg += int(mult) * srow.degree
            if total_deg != row.degree:
                raise LiftFailure("restriction degrees do not add up")

    # --- rendering --------------------------------------------------------------

    def dump_tsv(self) -> str:
        ct = self.ct
        lines = []
        lines.append("class\t" + "\t".join(f"C{k}" for k in range(ct.num_classes)))
        lines.append("size\t" + "\t".join(str(s) for s in ct.sizes))
        lines.append("order\t" + "\t".join(str(o) for o in ct.element_orders))
        for i, row in enumerate(self.rows):
            lines.append(f"X{i}\t" + "\t".join(row.render_values()))
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<CharTable of {self.group.id}: degrees {self.degrees}>"


_TABLES: dict = {}


def character_table(G) -> CharTable:
    G = as_group(G)
    tab = _TABLES.get(G.id)
    if tab is None:
        tab = CharTable(G)
        _TABLES[G.id] = tab
    return tab


def inner(f: ClassFunction, g: ClassFunction) -> Fraction:
    """Exact inner product (1/|G|) sum size * f * conj(g)."""
    if f.table.group.id != g.table.group.id:
        raise MixedGroups("inner product of class functions on different groups")
    ct = f.table.ct
    total = cyclo_sum(
        (Cyclotomic.from_int(ct.sizes[k], 1) * f.values[k] * g.values[k].conj()
         for k in range(ct.num_classes)),
        f.table.e,
    )
    frac = total.as_fraction()
    if frac is None:
        raise LiftFailure("inner product of characters came out irrational")
    return frac / f.table.group.order


def grade_by_pi_part(chars, pi) -> dict:
    """Partition a character collection by the pi-part of the degree."""
    out: dict = {}
    for ch in chars:
        key = pi_part(ch.degree, pi)
        out.setdefault(key, []).append(ch)
    return out


def trivial_character(table: CharTable) -> ClassFunction:
    one = Cyclotomic.from_int(1, table.e)
    return ClassFunction(table, [one] * table.ct.num_classes)


def regular_character(table: CharTable) -> ClassFunction:
    ct = table.ct
    vals = []
    for k in range(ct.num_classes):
        n = table.group.order if k == ct.identity_class else 0
        vals.append(Cyclotomic.from_int(n, table.e))
    return ClassFunction(table, vals)
