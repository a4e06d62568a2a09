"""Gaussian elimination over an exact field, on raw values.

Matrices are lists of row lists. Pivoting always takes the first row with a
nonzero entry in the current column, so every output is deterministic.
"""


def rref(F, rows):
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if not F.is_zero(m[i][col])), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = F.inv(m[rank][col])
        m[rank] = [F.mul(inv, x) for x in m[rank]]
        for i in range(len(m)):
            if i != rank and not F.is_zero(m[i][col]):
                c = m[i][col]
                m[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def rank(F, rows) -> int:
    return len(rref(F, rows)[1])


def det(F, rows):
    n = len(rows)
    m = [list(r) for r in rows]
    acc = F.one
    for col in range(n):
        piv = next((i for i in range(col, n) if not F.is_zero(m[i][col])), None)
        if piv is None:
            return F.zero
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            acc = F.neg(acc)
        pv = m[col][col]
        acc = F.mul(acc, pv)
        inv = F.inv(pv)
        for i in range(col + 1, n):
            if not F.is_zero(m[i][col]):
                c = F.mul(m[i][col], inv)
                m[i] = [F.sub(x, F.mul(c, y)) for x, y in zip(m[i], m[col])]
    return acc


def nullspace(F, rows, ncols=None):
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for r, pc in zip(red, pivots):
            v[pc] = F.neg(r[fc])
        basis.append(tuple(v))
    return basis


def mat_vec(F, M, v):
    out = []
    for row in M:
        acc = F.zero
        for a, b in zip(row, v):
            if not F.is_zero(a) and not F.is_zero(b):
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def transpose(M):
    return [list(col) for col in zip(*M)]


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def inverse(F, M):
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(F, n))]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


class Echelon:
    """Incrementally maintained reduced echelon basis of a subspace.

    ``add`` reduces a vector against the basis and, if anything survives,
    inserts it (normalised to leading coefficient 1) and keeps the basis fully
    reduced so that ``basis()`` is canonical for the span.
    """

    def __init__(self, F, length):
        self.F = F
        self.length = length
        self.rows = {}  # pivot column -> row (list)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        F = self.F
        v = list(v)
        for col, row in self.rows.items():
            c = v[col]
            if not F.is_zero(c):
                for k in range(self.length):
                    if not F.is_zero(row[k]):
                        v[k] = F.sub(v[k], F.mul(c, row[k]))
        return v

    def add(self, v) -> bool:
        F = self.F
        v = self.reduce(v)
        col = next((k for k in range(self.length) if not F.is_zero(v[k])), None)
        if col is None:
            return False
        inv = F.inv(v[col])
        v = [F.mul(inv, x) for x in v]
        for pc, row in self.rows.items():
            c = row[col]
            if not F.is_zero(c):
                self.rows[pc] = [F.sub(x, F.mul(c, y)) for x, y in zip(row, v)]
        self.rows[col] = v
        return True

    def contains(self, v) -> bool:
        return not any(not self.F.is_zero(x) for x in self.reduce(v))

    def basis(self):
        return [tuple(self.rows[c]) for c in sorted(self.rows)]

    def pivots(self):
        return sorted(self.rows)

    def copy(self):
        other = Echelon(self.F, self.length)
        other.rows = {c: list(r) for c, r in self.rows.items()}
        return other
