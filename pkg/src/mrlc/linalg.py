"""Gaussian elimination over GF(2^t) on lists of Python ints."""


def row_reduce(field, rows, ncols=None):
    """Reduced row echelon form in place; returns the pivot columns."""
    if not rows:
        return []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                pr = rows[r]
                rows[i] = [x ^ field.mul(f, y) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(field, rows):
    return len(row_reduce(field, [list(r) for r in rows]))


def solve(field, A, b):
    """Solve A x = b.  Returns (x, full_rank, consistent).

    ``x`` is None unless the system has a unique solution.
    """
    m = len(A)
    ncols = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    pivots = row_reduce(field, aug, ncols)
    consistent = all(any(row[:ncols]) or row[ncols] == 0 for row in aug)
    full = len(pivots) == ncols
    if not (full and consistent):
        return None, full, consistent
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return x, full, consistent


def inverse(field, A):
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    pivots = row_reduce(field, aug, n)
    if len(pivots) != n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]


def matmul(field, A, B):
    cols = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s ^= field.mul(x, y)
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(field, A, v):
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s ^= field.mul(x, y)
        out.append(s)
    return out
