"""Exact rational linear programming: two-phase tableau simplex with Bland's
rule over fractions.

Solves max/min of w^T x subject to A x <= b and per-variable bounds that may
be infinite.  Variables are shifted or split to reach the standard form
max c^T y, M y <= d, y >= 0; when every variable has at least one finite
bound the map back to x is an affine bijection, so the reported optimum is an
extremal (vertex) solution of the original polyhedron, and the final basis is
kept as the certificate.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import PipelineError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class RationalLpResult:
    status: str
    x: list = None  # Fractions, original variable space
    value: Fraction = None
    basis: tuple = ()


def _frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def lp_solve(a_rows, b, lower, upper, w, sense="max"):
    """Exact simplex.  a_rows: m x n, b: length m, lower/upper: length n with
    None for an infinite bound, w: length n."""
    m = len(a_rows)
    n = len(w)
    for row in a_rows:
        if len(row) != n:
            raise PipelineError("lp", "ragged constraint matrix")
    if len(b) != m or len(lower) != n or len(upper) != n:
        raise PipelineError("lp", "dimension mismatch")
    a = _frac_matrix(a_rows)
    b = [Fraction(v) for v in b]
    w = [Fraction(v) for v in w]
    if sense == "min":
        res = lp_solve(a_rows, b, lower, upper, [-v for v in w], sense="max")
        if res.status == OPTIMAL:
            res.value = -res.value
        return res
    if sense != "max":
        raise PipelineError("lp", f"unknown sense {sense!r}")

    # substitution to nonnegative variables:
    #   finite lower: x = l + y          (extra row y <= u - l if u finite)
    #   lower = -inf, finite upper: x = u - y
    #   free: x = y+ - y-
    cols = []  # per x_j: ("shift", l, yindex) | ("mirror", u, yindex) | ("split", y+, y-)
    ny = 0
    extra_rows = []
    extra_rhs = []
    const = Fraction(0)
    c = []
    for j in range(n):
        lo, hi = lower[j], upper[j]
        if lo is not None:
            lo = Fraction(lo)
            cols.append(("shift", lo, ny))
            c.append(w[j])
            const += w[j] * lo
            if hi is not None:
                extra_rows.append((ny, Fraction(hi) - lo))
            ny += 1
        elif hi is not None:
            hi = Fraction(hi)
            cols.append(("mirror", hi, ny))
            c.append(-w[j])
            const += w[j] * hi
            ny += 1
        else:
            cols.append(("split", ny, ny + 1))
            c.append(w[j])
            c.append(-w[j])
            ny += 2

    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(0)] * ny
        rv = b[i]
        for j in range(n):
            coef = a[i][j]
            if not coef:
                continue
            kind = cols[j]
            if kind[0] == "shift":
                row[kind[2]] += coef
                rv -= coef * kind[1]
            elif kind[0] == "mirror":
                row[kind[2]] -= coef
                rv -= coef * kind[1]
            else:
                row[kind[1]] += coef
                row[kind[2]] -= coef
        rows.append(row)
        rhs.append(rv)
    for yidx, cap in extra_rows:
        row = [Fraction(0)] * ny
        row[yidx] = Fraction(1)
        rows.append(row)
        rhs.append(cap)

    status, y, value, basis = _simplex_standard(rows, rhs, c)
    if status != OPTIMAL:
        return RationalLpResult(status)
    x = []
    for j in range(n):
        kind = cols[j]
        if kind[0] == "shift":
            x.append(kind[1] + y[kind[2]])
        elif kind[0] == "mirror":
            x.append(kind[1] - y[kind[2]])
        else:
            x.append(y[kind[1]] - y[kind[2]])
    return RationalLpResult(OPTIMAL, x, value + const, basis)


def _simplex_standard(rows, rhs, c):
    """max c y, rows . y <= rhs, y >= 0 via two phases; returns
    (status, y, value, basis)."""
    m = len(rows)
    ny = len(c)
    zero = Fraction(0)
    one = Fraction(1)

    # columns: 0..ny-1 structural, ny..ny+m-1 slacks, then artificials
    art_of_row = {}
    nart = 0
    for i in range(m):
        if rhs[i] < 0:
            art_of_row[i] = nart
            nart += 1
    width = ny + m + nart
    tab = []
    basis = []
    for i in range(m):
        row = [zero] * (width + 1)
        flip = -one if i in art_of_row else one
        for j in range(ny):
            row[j] = rows[i][j] * flip
        row[ny + i] = flip
        row[width] = rhs[i] * flip
        if i in art_of_row:
            row[ny + m + art_of_row[i]] = one
            basis.append(ny + m + art_of_row[i])
        else:
            basis.append(ny + i)
        tab.append(row)

    def pivot(r, col):
        pr = tab[r]
        pv = pr[col]
        tab[r] = [v / pv for v in pr]
        pr = tab[r]
        for i in range(len(tab)):
            if i != r and tab[i][col]:
                f = tab[i][col]
                tab[i] = [a - f * p for a, p in zip(tab[i], pr)]
        basis[r] = col

    def run_phase(obj):
        """Maximize obj (a full-width row of reduced costs, mutated in
        place); Bland's rule guarantees termination."""
        while True:
            enter = None
            for j in range(width):
                if obj[j] > 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            best = None
            for i in range(m):
                if tab[i][enter] > 0:
                    ratio = tab[i][width] / tab[i][enter]
                    key = (ratio, basis[i])
                    if best is None or key < best:
                        best = key
                        leave = i
            if leave is None:
                return UNBOUNDED
            pivot(leave, enter)
            f = obj[enter]
            obj[:] = [a - f * p for a, p in zip(obj, tab[leave])]

    if nart:
        obj = [zero] * (width + 1)
        for acol in range(ny + m, width):
            obj[acol] = -one
        # price out the basic artificials
        for i in range(m):
            if basis[i] >= ny + m:
                obj = [a + p for a, p in zip(obj, tab[i])]
                obj[basis[i]] = zero
        run_phase(obj)
        # obj[width] carries the total artificial value left; 0 means feasible
        if obj[width] != 0:
            return INFEASIBLE, None, None, ()
        # pivot leftover artificials out of the basis
        for i in range(m):
            if basis[i] >= ny + m:
                target = None
                for j in range(ny + m):
                    if tab[i][j]:
                        target = j
                        break
                if target is not None:
                    pivot(i, target)
        # freeze artificial columns at zero
        for i in range(m):
            for acol in range(ny + m, width):
                tab[i][acol] = zero

    obj = [zero] * (width + 1)
    for j in range(ny):
        obj[j] = Fraction(c[j])
    for i in range(m):
        col = basis[i]
        if col < ny and obj[col]:
            f = obj[col]
            obj = [a - f * p for a, p in zip(obj, tab[i])]
            obj[col] = zero
    for acol in range(ny + m, width):
        obj[acol] = Fraction(-1)  # never re-enter
    status = run_phase(obj)
    if status != OPTIMAL:
        return status, None, None, ()
    y = [zero] * ny
    for i in range(m):
        if basis[i] < ny:
            y[basis[i]] = tab[i][width]
    value = sum(Fraction(c[j]) * y[j] for j in range(ny))
    return OPTIMAL, y, value, tuple(sorted(basis))
