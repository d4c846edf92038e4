"""
Exact linear algebra over prime fields.

Gaussian elimination on numpy int64 arrays with every row operation reduced
mod p. Subspaces are row spaces held in reduced row echelon form, so two
subspaces are equal exactly when their bases are.
"""
from itertools import combinations, product
from typing import Optional, Tuple

import numpy as np

from ..errors import DimensionMismatch, IntervalViolation
from ..models.linear import Mat, PrimeField, Subspace


def _rref_array(a, p):
    a = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(a[r:, c])
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        factors = a[:, c].copy()
        factors[r] = 0
        if factors.any():
            a = (a - np.outer(factors, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Mat) -> Tuple[Mat, int, Tuple[int, ...]]:
    """Reduced row echelon form, rank and pivot columns of m."""
    reduced, pivots = _rref_array(m.data, m.p)
    return Mat(m.field, reduced), len(pivots), tuple(pivots)


def rank(m: Mat) -> int:
    return len(_rref_array(m.data, m.p)[1])


def span(field: PrimeField, ambient_dim: int, vectors) -> Subspace:
    """Canonical subspace spanned by the rows of `vectors`."""
    data = np.asarray(vectors.data if isinstance(vectors, Mat) else vectors, dtype=np.int64)
    if data.size == 0:
        data = np.zeros((0, ambient_dim), dtype=np.int64)
    data = data.reshape(-1, ambient_dim)
    reduced, pivots = _rref_array(data, field.p)
    return Subspace(field, ambient_dim, Mat(field, reduced[:len(pivots)]))


def zero_subspace(field: PrimeField, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, Mat.zeros(field, 0, ambient_dim))


def full_subspace(field: PrimeField, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, Mat.identity(field, ambient_dim))


def solve_right(a: Mat, b: Mat) -> Optional[Mat]:
    """Solve a·x = b.

    Returns the canonical solution (free variables set to 0) or None when the
    system is inconsistent.
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"solve_right: a has {a.rows} rows, b has {b.rows}")
    if a.field != b.field:
        raise DimensionMismatch("solve_right: fields differ")
    augmented = np.hstack([a.data, b.data])
    reduced, pivots = _rref_array(augmented, a.p)
    if pivots and pivots[-1] >= a.cols:
        return None
    x = np.zeros((a.cols, b.cols), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = reduced[i, a.cols:]
    return Mat(a.field, x)


def kernel_basis(m: Mat) -> Subspace:
    """Null space {v : m·v = 0} inside GF(p)^cols."""
    reduced, pivots = _rref_array(m.data, m.p)
    free = [c for c in range(m.cols) if c not in pivots]
    vectors = np.zeros((len(free), m.cols), dtype=np.int64)
    for k, f in enumerate(free):
        vectors[k, f] = 1
        for i, c in enumerate(pivots):
            vectors[k, c] = -reduced[i, f]
    return span(m.field, m.cols, vectors)


def image_basis(m: Mat) -> Subspace:
    """Column space of m inside GF(p)^rows."""
    return span(m.field, m.rows, m.data.T)


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim or u.field != v.field:
        raise DimensionMismatch(
            f"subspaces live in F{u.p}^{u.ambient_dim} and F{v.p}^{v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return span(u.field, u.ambient_dim, np.vstack([u.basis.data, v.basis.data]))


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """u ∩ v from the kernel of [U^T | -V^T]."""
    _check_ambient(u, v)
    if u.is_zero() or v.is_zero():
        return zero_subspace(u.field, u.ambient_dim)
    stacked = Mat(u.field, np.hstack([u.basis.data.T, -v.basis.data.T]))
    kernel = kernel_basis(stacked)
    if kernel.is_zero():
        return zero_subspace(u.field, u.ambient_dim)
    coefficients = kernel.basis.data[:, :u.dim]
    return span(u.field, u.ambient_dim, coefficients @ u.basis.data)


def subspace_leq(u: Subspace, v: Subspace) -> bool:
    _check_ambient(u, v)
    if u.dim > v.dim:
        return False
    return subspace_sum(u, v).dim == v.dim


def contains_vector(u: Subspace, vector) -> bool:
    vector = np.asarray(vector, dtype=np.int64).reshape(1, u.ambient_dim)
    return span(u.field, u.ambient_dim, np.vstack([u.basis.data, vector])).dim == u.dim


def extend_to_complement(u: Subspace, w: Subspace) -> Subspace:
    """Complement x of u inside [0, w]: u ∩ x = 0 and u + x = w.

    Greedy over the RREF basis of w, so the answer is deterministic.
    """
    _check_ambient(u, w)
    if not subspace_leq(u, w):
        raise IntervalViolation("extend_to_complement: u is not contained in w")
    current = u.basis.data
    chosen = []
    for row in w.basis.data:
        candidate = np.vstack([current, row])
        if len(_rref_array(candidate, u.p)[1]) > current.shape[0]:
            current = candidate
            chosen.append(row)
    return span(u.field, u.ambient_dim, np.array(chosen, dtype=np.int64).reshape(-1, u.ambient_dim))


def inner_inverse(a: Mat) -> Mat:
    """Canonical g with a·g·a = a.

    Rank factorization a = C·F with C the pivot columns of a and F the
    nonzero rows of rref(a). g = F_r·C_l where F_r is the right inverse of F
    supported on the pivot rows and C_l is the left inverse of C obtained by
    canonical solves. inner_inverse(0) = 0 and inner_inverse(a) = a^-1 for
    invertible a.
    """
    reduced, pivots = _rref_array(a.data, a.p)
    r = len(pivots)
    if r == 0:
        return Mat.zeros(a.field, a.cols, a.rows)
    c = Mat(a.field, a.data[:, list(pivots)])
    f_right = np.zeros((a.cols, r), dtype=np.int64)
    for i, col in enumerate(pivots):
        f_right[col, i] = 1
    y = solve_right(c.T, Mat.identity(a.field, r))
    # c has full column rank, so c^T·y = I is always solvable
    return Mat(a.field, f_right @ y.data.T)


def inverse(a: Mat) -> Optional[Mat]:
    """Two-sided inverse of a square matrix, or None when singular."""
    if not a.is_square():
        raise DimensionMismatch(f"inverse: {a.shape} is not square")
    if rank(a) < a.rows:
        return None
    return solve_right(a, Mat.identity(a.field, a.rows))


def projection_onto(u: Subspace, along: Optional[Subspace] = None) -> Mat:
    """Idempotent matrix with image u and kernel `along`.

    `along` defaults to the canonical complement of u in the whole space.
    """
    if along is None:
        along = extend_to_complement(u, full_subspace(u.field, u.ambient_dim))
    if u.dim + along.dim != u.ambient_dim:
        raise DimensionMismatch("projection_onto: subspaces are not complementary")
    if u.is_zero():
        return Mat.zeros(u.field, u.ambient_dim)
    change = Mat(u.field, np.hstack([u.basis.data.T, along.basis.data.T]))
    keep = np.zeros((u.ambient_dim, u.ambient_dim), dtype=np.int64)
    keep[:u.dim, :u.dim] = np.eye(u.dim, dtype=np.int64)
    change_inv = inverse(change)
    if change_inv is None:
        raise DimensionMismatch("projection_onto: subspaces are not complementary")
    return Mat(u.field, change.data @ keep @ change_inv.data)


def enumerate_subspaces(field: PrimeField, ambient_dim: int):
    """Every subspace of GF(p)^ambient_dim, by dimension then pivot set."""
    p = field.p
    for k in range(ambient_dim + 1):
        for pivots in combinations(range(ambient_dim), k):
            # free slots: row i, columns right of its pivot that are not pivots
            slots = [(i, c) for i, pc in enumerate(pivots)
                     for c in range(pc + 1, ambient_dim) if c not in pivots]
            for values in product(range(p), repeat=len(slots)):
                basis = np.zeros((k, ambient_dim), dtype=np.int64)
                for i, pc in enumerate(pivots):
                    basis[i, pc] = 1
                for (i, c), v in zip(slots, values):
                    basis[i, c] = v
                yield Subspace(field, ambient_dim, Mat(field, basis))
