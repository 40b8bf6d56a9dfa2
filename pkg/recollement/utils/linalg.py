import itertools

import numpy as np

MAX_PRIME = 97


def is_prime(p):
    if not isinstance(p, (int, np.integer)) or p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def inv_mod(a, p):
    a = int(a) % p
    assert a != 0, 'zero has no inverse'
    return pow(a, p - 2, p)


def as_rows(vectors, n):
    r"""
    stacks `vectors` into a (k, n) int64 array, (0, n) when there is nothing to stack
    """
    arr = np.asarray(vectors, dtype= np.int64)
    if arr.size == 0:
        return np.zeros((0, n), dtype= np.int64)
    return arr.reshape(-1, n)


def mulmod(a, b, p):
    return (np.asarray(a, dtype= np.int64) @ np.asarray(b, dtype= np.int64)) % p


def rref(mat, p):
    r"""
    Reduced row echelon form over F_p.
    Pivots are taken in the leftmost possible columns and normalised to 1,
    zero rows are dropped, so two matrices span the same row space
    iff their rref's are equal arrays.

    # Arguments
    ___________
    mat : array-like (m, n)
    p : int
        the characteristic

    # Returns
    _________
    R : np.ndarray (r, n)
    pivots : list of int
    """
    A = np.array(mat, dtype= np.int64) % p
    if A.ndim != 2:
        A = A.reshape(-1, A.shape[-1] if A.ndim else 0)
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        rows = np.nonzero(A[r:, c])[0]
        if rows.size == 0:
            continue
        k = r + int(rows[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * inv_mod(A[r, c], p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r].copy(), pivots


def row_space(mat, p):
    return rref(mat, p)[0]


def rank(mat, p):
    return len(rref(mat, p)[1])


def nullspace(mat, p):
    r"""
    basis (as rref rows) of {x : mat @ x = 0}
    """
    mat = np.asarray(mat, dtype= np.int64)
    n = mat.shape[1]
    R, pivots = rref(mat, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype= np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(pivots):
            basis[t, c] = (-R[i, f]) % p
    return row_space(basis, p) if len(free) else basis


def left_nullspace(mat, p):
    r"""
    basis of {x : x @ mat = 0}
    """
    return nullspace(np.asarray(mat, dtype= np.int64).T, p)


def solve(mat, b, p):
    r"""
    one solution x of mat @ x = b, or None if the system is inconsistent
    """
    mat = np.asarray(mat, dtype= np.int64)
    b = np.asarray(b, dtype= np.int64).reshape(-1, 1)
    n = mat.shape[1]
    R, pivots = rref(np.hstack([mat, b]), p)
    if pivots and pivots[-1] == n:
        return None
    x = np.zeros(n, dtype= np.int64)
    for i, c in enumerate(pivots):
        x[c] = R[i, n]
    return x


def inverse(mat, p):
    r"""
    inverse of a square matrix over F_p, None when singular
    """
    mat = np.asarray(mat, dtype= np.int64) % p
    n = mat.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype= np.int64)
    R, pivots = rref(np.hstack([mat, np.eye(n, dtype= np.int64)]), p)
    if pivots[:n] != list(range(n)) or len(pivots) < n or R.shape[0] < n:
        return None
    return R[:, n:].copy()


def is_invertible(mat, p):
    mat = np.asarray(mat)
    return mat.shape[0] == mat.shape[1] and rank(mat, p) == mat.shape[0]


def coordinates(basis, pivots, vectors, p):
    r"""
    coordinates of `vectors` w.r.t. an rref `basis` with the given pivots.
    Returns None if some vector is outside the span.
    """
    vectors = np.asarray(vectors, dtype= np.int64) % p
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, -1)
    coords = vectors[:, pivots]
    if not np.array_equal(mulmod(coords, basis, p), vectors):
        return None
    return coords


def in_span(basis, pivots, vectors, p):
    return coordinates(basis, pivots, vectors, p) is not None


def is_subspace(small, big, p):
    if small.shape[0] == 0:
        return True
    R, pivots = rref(big, p)
    return in_span(R, pivots, small, p)


def same_subspace(u, v, p):
    return np.array_equal(row_space(u, p), row_space(v, p))


def intersection(u, v, p):
    r"""
    rref basis of rowspace(u) & rowspace(v)
    """
    u = np.asarray(u, dtype= np.int64)
    v = np.asarray(v, dtype= np.int64)
    n = u.shape[1]
    if u.shape[0] == 0 or v.shape[0] == 0:
        return np.zeros((0, n), dtype= np.int64)
    relations = left_nullspace(np.vstack([u, v]), p)
    if relations.shape[0] == 0:
        return np.zeros((0, n), dtype= np.int64)
    return row_space(mulmod(relations[:, :u.shape[0]], u, p), p)


def complement_columns(pivots, n):
    pivots = set(pivots)
    return [c for c in range(n) if c not in pivots]


def quotient_projection(basis, pivots, n, p):
    r"""
    Projection F_p^n -> F_p^n / rowspace(basis) in the coordinates of the
    standard complement (the non-pivot columns), as an (n, n - r) matrix.
    """
    S = np.zeros((n, len(pivots)), dtype= np.int64)
    for k, c in enumerate(pivots):
        S[c, k] = 1
    P = (np.eye(n, dtype= np.int64) - mulmod(S, basis, p)) % p
    return P[:, complement_columns(pivots, n)].copy()


def all_vectors(n, p):
    r"""
    every vector of F_p^n in lexicographic order, as a (p^n, n) array
    """
    if n == 0:
        return np.zeros((1, 0), dtype= np.int64)
    return np.array(list(itertools.product(range(p), repeat= n)), dtype= np.int64)


def count_subspaces(n, p):
    total = 0
    for k in range(n + 1):
        num, den = 1, 1
        for i in range(k):
            num *= p**(n - i) - 1
            den *= p**(i + 1) - 1
        total += num // den
    return total


def all_subspaces(n, p):
    r"""
    yields every subspace of F_p^n exactly once, as its rref basis
    (ordered by dimension, then by pivot columns)
    """
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            slots = [(i, c) for i, pc in enumerate(pivots)
                     for c in range(pc + 1, n) if c not in pivots]
            for values in itertools.product(range(p), repeat= len(slots)):
                R = np.zeros((k, n), dtype= np.int64)
                for i, pc in enumerate(pivots):
                    R[i, pc] = 1
                for (i, c), v in zip(slots, values):
                    R[i, c] = v
                yield R
