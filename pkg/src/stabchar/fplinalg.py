"""Dense linear algebra over a prime field F_l, numpy int64 throughout.

Supports the eigenvector-splitting stage of the character table
computation: reduced echelon forms, kernels, minimal polynomials via
Krylov chains, and exhaustive root finding (the relevant polynomials
split completely over F_l).
"""
from __future__ import annotations

import numpy as np


def inv_mod(a: int, l: int) -> int:
    return pow(int(a) % l, l - 2, l)


def rref(A: np.ndarray, l: int):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % l
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pos = None
        for i in range(r, rows):
            if R[i, c]:
                pos = i
                break
        if pos is None:
            continue
        if pos != r:
            R[[r, pos]] = R[[pos, r]]
        R[r] = (R[r] * inv_mod(R[r, c], l)) % l
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % l
        pivots.append(c)
        r += 1
    return R, pivots


def kernel_columns(A: np.ndarray, l: int) -> np.ndarray:
    """Columns spanning {x : A x = 0 mod l}."""
    R, pivots = rref(A, l)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for r, pc in enumerate(pivots):
            K[pc, j] = (-R[r, fc]) % l
    return K


def column_echelon(B: np.ndarray, l: int):
    """Reduced column echelon basis of the column space; (B', pivot_rows)."""
    R, pivots = rref(B.T, l)
    rank = len(pivots)
    return R[:rank].T % l, pivots


def poly_trim(p: np.ndarray) -> np.ndarray:
    i = len(p)
    while i > 1 and p[i - 1] == 0:
        i -= 1
    return p[:i]


def poly_divmod(a: np.ndarray, b: np.ndarray, l: int):
    a = np.array(a, dtype=np.int64) % l
    b = poly_trim(np.asarray(b, dtype=np.int64) % l)
    db = len(b) - 1
    lead_inv = inv_mod(b[-1], l)
    q = np.zeros(max(len(a) - db, 1), dtype=np.int64)
    r = a.copy()
    for i in range(len(a) - 1, db - 1, -1):
        c = (r[i] * lead_inv) % l
        if c:
            q[i - db] = c
            r[i - db: i + 1] = (r[i - db: i + 1] - c * b) % l
    return poly_trim(q), poly_trim(r)


def poly_gcd(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    a = poly_trim(np.asarray(a, np.int64) % l)
    b = poly_trim(np.asarray(b, np.int64) % l)
    while len(b) > 1 or b[0]:
        _, r = poly_divmod(a, b, l)
        a, b = b, r
        if len(b) == 1 and b[0] == 0:
            break
    return (a * inv_mod(a[-1], l)) % l


def poly_mul(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    return np.convolve(np.asarray(a, np.int64) % l, np.asarray(b, np.int64) % l) % l


def poly_lcm(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    g = poly_gcd(a, b, l)
    q, _ = poly_divmod(poly_mul(a, b, l), g, l)
    return (q * inv_mod(q[-1], l)) % l


def annihilator_poly(A: np.ndarray, v: np.ndarray, l: int, collect=None) -> np.ndarray:
    """Monic p of least degree with p(A) v = 0 (low-to-high coefficients)."""
    d = len(v)
    basis = []  # (reduced vector, pivot index, expression over the Krylov chain)
    w = np.array(v, dtype=np.int64) % l
    k = 0
    while True:
        vec = w.copy()
        expr = np.zeros(k + 1, dtype=np.int64)
        expr[k] = 1
        for bvec, bpiv, bexpr in basis:
            c = vec[bpiv]
            if c:
                vec = (vec - c * bvec) % l
                expr[: len(bexpr)] = (expr[: len(bexpr)] - c * bexpr) % l
        nz = np.nonzero(vec)[0]
        if len(nz) == 0:
            return expr
        piv = int(nz[0])
        scale = inv_mod(vec[piv], l)
        vec = (vec * scale) % l
        expr = (expr * scale) % l
        basis.append((vec, piv, expr))
        if collect is not None:
            collect.append(vec)
        w = (A @ w) % l
        k += 1
        if k > d:
            raise ArithmeticError("Krylov chain exceeded dimension")


def minimal_polynomial(A: np.ndarray, l: int) -> np.ndarray:
    """Minimal polynomial of A over F_l (monic, low-to-high)."""
    d = A.shape[0]
    m = np.array([1], dtype=np.int64)
    span = np.zeros((0, d), dtype=np.int64)
    span_pivots = []
    for s in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[s] = 1
        red = v.copy()
        for row, piv in zip(span, span_pivots):
            c = red[piv]
            if c:
                red = (red - c * row) % l
        if not red.any():
            continue
        collected = []
        p = annihilator_poly(A, v, l, collect=collected)
        m = poly_lcm(m, p, l)
        for vec in collected:
            red = vec.copy()
            for row, piv in zip(span, span_pivots):
                c = red[piv]
                if c:
                    red = (red - c * row) % l
            nz = np.nonzero(red)[0]
            if len(nz):
                piv = int(nz[0])
                red = (red * inv_mod(red[piv], l)) % l
                span = np.vstack([span, red])
                span_pivots.append(piv)
        if len(m) - 1 == d:
            break
    return m


def poly_roots(p: np.ndarray, l: int) -> list[int]:
    """All roots in F_l, ascending (the callers' polynomials split)."""
    xs = np.arange(l, dtype=np.int64)
    val = np.zeros(l, dtype=np.int64)
    for c in reversed(np.asarray(p, np.int64) % l):
        val = (val * xs + int(c)) % l
    return [int(x) for x in xs[val == 0]]
