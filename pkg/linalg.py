"""
Exact linear algebra
Gaussian elimination, rank, kernels and solving over any exact field.
Matrices are lists of rows of FieldElements; the field is passed explicitly so
empty matrices still know their zero and one.
"""


def zero_vector(n, field):
    return [field.zero()] * n


def transpose(rows, ncols):
    return [[row[j] for row in rows] for j in range(ncols)]


def dot(u, v, field):
    total = field.zero()
    for a, b in zip(u, v):
        if not a.is_zero() and not b.is_zero():
            total = total + a * b
    return total


def mat_vec(rows, v, field):
    return [dot(row, v, field) for row in rows]


def mat_mul(a, b, inner, ncols, field):
    """Product of an (m x inner) and an (inner x ncols) matrix"""
    columns = transpose(b, ncols) if inner else [[] for _ in range(ncols)]
    return [[dot(row, col, field) for col in columns] for row in a]


def is_zero_vector(v):
    return all(entry.is_zero() for entry in v)


def is_identity(rows, n):
    if len(rows) != n:
        return False
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            expected_one = i == j
            if expected_one and not entry.is_one():
                return False
            if not expected_one and not entry.is_zero():
                return False
    return True


def rref(rows, ncols, field):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)"""
    work = [list(row) for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if not work[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = work[r][c].inverse()
        work[r] = [entry * inv for entry in work[r]]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(rows, ncols, field):
    if not rows or ncols == 0:
        return 0
    return len(rref(rows, ncols, field)[1])


def kernel(rows, ncols, field):
    """Basis of {v : rows * v = 0}, one vector per free column, free entry 1"""
    reduced, pivots = rref(rows, ncols, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = zero_vector(ncols, field)
        v[f] = field.one()
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols, field):
    """One solution of rows * v = rhs (free entries 0), or None if inconsistent"""
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1, field) if augmented else ([], [])
    if ncols in pivots:
        return None
    v = zero_vector(ncols, field)
    for row, p in zip(reduced, pivots):
        v[p] = row[ncols]
    return v


def same_span(a, b, ncols, field):
    """True when two lists of vectors span the same subspace"""
    ra = rank(a, ncols, field)
    if ra != rank(b, ncols, field):
        return False
    return rank(a + b, ncols, field) == ra


def normalize_leading(v, field):
    """Scale so the first nonzero entry is one"""
    for entry in v:
        if not entry.is_zero():
            inv = entry.inverse()
            return [e * inv for e in v]
    return list(v)


def format_matrix(rows):
    if not rows:
        return "[]"
    return "[" + "; ".join(", ".join(str(e) for e in row) for row in rows) + "]"
