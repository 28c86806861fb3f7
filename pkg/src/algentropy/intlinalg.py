"""Exact linear algebra over the integers.

Everything here works on tuples of tuples of Python ints, so there is no
overflow and no rounding anywhere.  The canonical form used for lattices
(= subgroups of Z^n) is the row-style Hermite normal form: no zero rows,
each pivot positive, entries above a pivot reduced into [0, pivot).  Two
lattices are equal iff their canonical forms are identical.

The worker routines (echelonization with gcd steps, kernels via a tracked
unimodular transform, Smith form with the smallest-entry pivot rule) are
deliberately plain; matrices in this library are small and correctness is
the only thing that matters.
"""

from fractions import Fraction

from .base import INFINITE

__all__ = [
    "xgcd",
    "hnf",
    "hnf_with_transform",
    "rank",
    "in_lattice",
    "reduce_mod_lattice",
    "lattice_sum",
    "lattice_intersect",
    "index_in",
    "right_kernel",
    "preimage_lattice",
    "solve_integer",
    "det_bareiss",
    "snf_invariant_factors",
    "matmul",
    "matvec",
    "transpose",
    "identity",
    "mat_power",
]


def xgcd(a, b):
    """Extended gcd: return (g, x, y) with g = a*x + b*y and g >= 0.

    >>> xgcd(12, 18)
    (6, -1, 1)
    """
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _echelon(rows, track=False):
    """Integer row echelon via unimodular row operations.

    Returns (rows, transform, pivots) where pivots is a list of
    (row, col) pairs.  Zero rows sink to the bottom.  When ``track`` is
    false the transform is None.
    """
    work = [list(r) for r in rows]
    m = len(work)
    ncols = len(work[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        if track:
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if not work[i][c]:
                continue
            a, b = work[r][c], work[i][c]
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant (x*a + y*b)/g = 1
            ri, rr = work[i], work[r]
            work[r] = [x * s + y * t for s, t in zip(rr, ri)]
            work[i] = [p * t - q * s for s, t in zip(rr, ri)]
            if track:
                ui, ur = u[i], u[r]
                u[r] = [x * s + y * t for s, t in zip(ur, ui)]
                u[i] = [p * t - q * s for s, t in zip(ur, ui)]
        pivots.append((r, c))
        r += 1
    return work, u, pivots


def _normalize_hnf(work, u, pivots):
    """Make pivots positive and reduce entries above each pivot into [0, p)."""
    for r, c in pivots:
        if work[r][c] < 0:
            work[r] = [-x for x in work[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
    for r, c in pivots:
        p = work[r][c]
        for i in range(r):
            q = work[i][c] // p  # floor: brings entry into [0, p)
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
                if u is not None:
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]


def hnf(rows):
    """Canonical Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; the result is a tuple of tuples and is the
    unique canonical basis of the spanned lattice.

    >>> hnf([(2, 0), (3, 0)])
    ((1, 0),)
    >>> hnf([(4, 6), (0, 3)])
    ((4, 0), (0, 3))
    """
    if not rows:
        return ()
    work, _, pivots = _echelon(rows)
    _normalize_hnf(work, None, pivots)
    return tuple(tuple(work[r]) for r, _ in pivots)


def hnf_with_transform(rows):
    """Return (H, U) with U unimodular, U*rows = H (zero rows kept in H)."""
    work, u, pivots = _echelon(rows, track=True)
    _normalize_hnf(work, u, pivots)
    return tuple(tuple(r) for r in work), tuple(tuple(r) for r in u)


def rank(rows):
    return len(hnf(rows))


def _reduce_against(v, basis):
    """Reduce v against HNF ``basis`` rows; returns the residue vector."""
    v = list(v)
    for row in basis:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            continue
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def in_lattice(v, basis):
    """Membership of integer vector ``v`` in the lattice with HNF ``basis``."""
    return not any(_reduce_against(v, basis))


def reduce_mod_lattice(v, basis):
    """Canonical residue of ``v`` modulo the lattice (entries reduced at pivots)."""
    return tuple(_reduce_against(v, basis))


def lattice_sum(a, b):
    return hnf(list(a) + list(b))


def transpose(mat):
    return tuple(zip(*mat)) if mat else ()


def matmul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_power(m, k):
    """Nonnegative integer power by repeated squaring."""
    n = len(m)
    result = identity(n)
    base = m
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def right_kernel(mat, ncols):
    """Basis (tuple of rows) of {x in Z^ncols : mat @ x = 0}.

    mat is given as rows; x is a column vector.  The returned rows span
    the full integer kernel (they come from the zero rows of a unimodular
    transform, so the kernel lattice is exactly their span).
    """
    if not mat:
        return identity(ncols)
    cols = transpose(mat)  # ncols x nrows; row i is the i-th coordinate map
    h, u = hnf_with_transform(cols)
    out = [u[i] for i in range(len(h)) if not any(h[i])]
    return tuple(tuple(r) for r in out)


def preimage_lattice(mat, basis, ncols):
    """Lattice {u in Z^ncols : mat @ u lies in the lattice spanned by basis}.

    mat has ``ncols`` columns; basis rows live in the codomain.  Solutions
    u pair with some y via  mat @ u = basis^T @ y, i.e. (u, y) is in the
    kernel of [mat | -basis^T]; the u-projection of that kernel is the
    preimage.
    """
    nrows = len(mat)
    bt = transpose(basis)  # codomain-dim x len(basis)
    aug = []
    for i in range(nrows):
        brow = bt[i] if bt else ()
        aug.append(tuple(mat[i]) + tuple(-x for x in brow))
    extra = len(basis)
    ker = right_kernel(aug, ncols + extra)
    return hnf([row[:ncols] for row in ker])


def index_in(sup, sub):
    """Index [L_sup : L_sub] for lattices given by HNF bases, sub ⊆ sup.

    Returns an int or INFINITE (when the ranks differ).  Raises
    ValueError if sub is not contained in sup (a programming error in
    callers, which always intersect first).
    """
    for row in sub:
        if not in_lattice(row, sup):
            raise ValueError("index_in: second lattice not contained in first")
    if len(sub) < len(sup):
        return INFINITE
    if not sup:
        return 1
    # Solve X * sup = sub over Q using the pivot columns of sup; the
    # solution is integral by containment and |det X| is the index.
    piv_cols = []
    for row in sup:
        piv_cols.append(next(j for j, x in enumerate(row) if x))
    k = len(sup)
    s = [[Fraction(sup[i][c]) for c in piv_cols] for i in range(k)]
    t = [[Fraction(sub[i][c]) for c in piv_cols] for i in range(k)]
    x = _solve_matrix_fraction(s, t)
    d = _det_fraction(x)
    if d.denominator != 1:
        raise ValueError("index_in: non-integral coordinate change")
    return abs(int(d))


def _solve_matrix_fraction(s, t):
    """Solve X * S = T for X (all entries Fraction), S square invertible."""
    k = len(s)
    # X = T * S^{-1}; invert by Gauss-Jordan
    aug = [list(s[i]) + [Fraction(1 if i == j else 0) for j in range(k)] for i in range(k)]
    for c in range(k):
        piv = next(i for i in range(c, k) if aug[i][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = Fraction(1) / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(k):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    sinv = [row[k:] for row in aug]
    return [[sum(t[i][l] * sinv[l][j] for l in range(k)) for j in range(k)] for i in range(k)]


def _det_fraction(m):
    k = len(m)
    m = [row[:] for row in m]
    det = Fraction(1)
    for c in range(k):
        piv = next((i for i in range(c, k) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, k):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def lattice_intersect(a, b, ncols):
    """Intersection of two lattices given by row bases in Z^ncols."""
    if not a or not b:
        return ()
    # x*A = y*B solutions: left kernel of the stacked matrix [A; -B]
    stacked = [tuple(r) for r in a] + [tuple(-x for x in r) for r in b]
    h, u = hnf_with_transform(stacked)
    na = len(a)
    gens = []
    for i in range(len(h)):
        if any(h[i]):
            continue
        coeff = u[i][:na]
        vec = [0] * ncols
        for c, row in zip(coeff, a):
            if c:
                vec = [x + c * y for x, y in zip(vec, row)]
        gens.append(tuple(vec))
    return hnf(gens)


def solve_integer(mat, b, ncols):
    """One integer solution x of mat @ x = b, or None.

    mat given as rows (acting on column x of length ncols).
    """
    cols = transpose(mat) if mat else tuple(() for _ in range(ncols))
    if not mat:
        return tuple([0] * ncols) if not any(b) else None
    h, u = hnf_with_transform(cols)  # u * cols = h; rows of h are images of unit x's
    # We need coefficients z with z * h = b, then x = z * u.
    z = [0] * len(h)
    v = list(b)
    for i, row in enumerate(h):
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            continue
        q, r = divmod(v[c], row[c])
        if r:
            return None
        if q:
            v = [a - q * t for a, t in zip(v, row)]
        z[i] = q
    if any(v):
        return None
    x = [0] * ncols
    for zi, urow in zip(z, u):
        if zi:
            x = [a + zi * t for a, t in zip(x, urow)]
    return tuple(x)


def det_bareiss(mat):
    """Exact determinant by fraction-free Bareiss elimination.

    >>> det_bareiss(((2, 0), (0, 3)))
    6
    """
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def snf_invariant_factors(mat):
    """Nonzero diagonal of the Smith normal form, as a divisibility chain.

    Pivot choice is deterministic: smallest absolute nonzero entry, ties
    by (row, col) position.

    >>> snf_invariant_factors(((2, 0), (0, 3)))
    [1, 6]
    """
    work = [list(r) for r in mat]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    t = 0
    out = []
    while True:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = work[i][j]
                if v and (best is None or abs(v) < abs(work[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        work[t], work[i] = work[i], work[t]
        for row in work:
            row[t], row[j] = row[j], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, nrows):
                if work[i][t]:
                    q = work[i][t] // work[t][t]
                    work[i] = [a - q * b for a, b in zip(work[i], work[t])]
                    if work[i][t]:
                        work[t], work[i] = work[i], work[t]
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, ncols):
                if work[t][j]:
                    q = work[t][j] // work[t][t]
                    for row in work:
                        row[j] -= q * row[t]
                    if work[t][j]:
                        for row in work:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if dirty:
                continue
            # pivot must divide the rest of the block
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if work[i][j] % work[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            work[t] = [a + b for a, b in zip(work[t], work[offender])]
        out.append(abs(work[t][t]))
        t += 1
        if t >= nrows or t >= ncols:
            break
    return out
