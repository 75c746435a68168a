"""Exact-rational dense simplex and small linear-algebra helpers.

Two-phase simplex with Bland's smallest-index pivot rule (termination over
speed; problem sizes here are at most a few hundred variables). Every result
is re-verified under exact arithmetic before it is returned: optimal points
against all constraints plus a dual certificate, infeasibility against a
Farkas-style refutation, unbounded rays against feasibility directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import InputError

LE = "<="
EQ = "="
GE = ">="
_RELS = (LE, EQ, GE)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinearProgram:
    """Dense LP: optional per-variable bounds, mixed relations, max or min."""

    num_vars: int
    constraints: tuple  # ((coeffs, rel, rhs), ...)
    objective: tuple
    sense: str = "max"
    lower: tuple = None  # per-var Fraction or None (free); default all zero
    upper: tuple = None  # per-var Fraction or None; default all unbounded

    def __post_init__(self):
        nv = self.num_vars
        if nv < 0:
            raise InputError("num_vars must be nonnegative")
        if self.sense not in ("max", "min"):
            raise InputError(f"bad sense {self.sense!r}")
        cons = []
        for row, rel, rhs in self.constraints:
            row = tuple(Fraction(x) for x in row)
            if len(row) != nv:
                raise InputError("constraint row length mismatch")
            if rel not in _RELS:
                raise InputError(f"bad relation {rel!r}")
            cons.append((row, rel, Fraction(rhs)))
        object.__setattr__(self, "constraints", tuple(cons))
        obj = tuple(Fraction(x) for x in self.objective)
        if len(obj) != nv:
            raise InputError("objective length mismatch")
        object.__setattr__(self, "objective", obj)
        lower = self.lower if self.lower is not None else tuple(_ZERO for _ in range(nv))
        upper = self.upper if self.upper is not None else tuple(None for _ in range(nv))
        lower = tuple(None if x is None else Fraction(x) for x in lower)
        upper = tuple(None if x is None else Fraction(x) for x in upper)
        if len(lower) != nv or len(upper) != nv:
            raise InputError("bounds length mismatch")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)


@dataclass(frozen=True)
class Optimal:
    point: tuple
    value: Fraction
    x_std: tuple  # solution in standardized space, for certificate re-checks
    y_std: tuple  # dual per standardized row


@dataclass(frozen=True)
class FarkasCertificate:
    """Signed multipliers over the extended constraint rows (originals followed
    by upper-bound rows), refuting feasibility; see verify_infeasibility."""

    row_mults: tuple


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


@dataclass(frozen=True)
class Unbounded:
    point: tuple  # a feasible point
    ray: tuple  # improving feasible direction


def _extended_constraints(lp: LinearProgram):
    """Original constraints plus one '<=' row per finite upper bound."""
    rows = list(lp.constraints)
    for j, u in enumerate(lp.upper):
        if u is not None:
            coeffs = tuple(_ONE if k == j else _ZERO for k in range(lp.num_vars))
            rows.append((coeffs, LE, u))
    return rows


def _standardize(lp: LinearProgram):
    """Rewrite as min c'x', A'x' = b', x' >= 0, b' >= 0.

    Lower-bounded variables are shifted; free variables are split into a
    positive and a negative part; '<='/'>=' rows gain slack columns; rows are
    negated as needed to make the right side nonnegative.
    """
    ext = _extended_constraints(lp)
    var_cols = []
    ncols = 0
    for j in range(lp.num_vars):
        if lp.lower[j] is None:
            var_cols.append(("split", ncols, ncols + 1))
            ncols += 2
        else:
            var_cols.append(("shift", ncols))
            ncols += 1
    nslack = sum(1 for _, rel, _ in ext if rel != EQ)
    width = ncols + nslack
    rows = []
    rhs = []
    sigma = []
    slack_col = ncols
    for coeffs, rel, b in ext:
        row = [_ZERO] * width
        shift = _ZERO
        for j, a in enumerate(coeffs):
            if a == 0:
                continue
            kind = var_cols[j]
            if kind[0] == "split":
                row[kind[1]] = a
                row[kind[2]] = -a
            else:
                row[kind[1]] = a
                shift += a * lp.lower[j]
        b_adj = b - shift
        if rel == LE:
            row[slack_col] = _ONE
            slack_col += 1
        elif rel == GE:
            row[slack_col] = -_ONE
            slack_col += 1
        if b_adj < 0:
            row = [-x for x in row]
            b_adj = -b_adj
            sigma.append(-1)
        else:
            sigma.append(1)
        rows.append(row)
        rhs.append(b_adj)
    cost = [_ZERO] * width
    for j in range(lp.num_vars):
        c = lp.objective[j] if lp.sense == "min" else -lp.objective[j]
        kind = var_cols[j]
        if kind[0] == "split":
            cost[kind[1]] = c
            cost[kind[2]] = -c
        else:
            cost[kind[1]] = c
    return rows, rhs, cost, var_cols, sigma, ncols, width


def _pivot(tab, zrow, basis, r, j):
    prow = tab[r]
    piv = prow[j]
    inv = _ONE / piv
    tab[r] = prow = [x * inv for x in prow]
    for i, row in enumerate(tab):
        if i == r:
            continue
        f = row[j]
        if f != 0:
            tab[i] = [x - f * y for x, y in zip(row, prow)]
    f = zrow[j]
    if f != 0:
        zrow[:] = [x - f * y for x, y in zip(zrow, prow)]
    basis[r] = j


def _entering(zrow, allowed_width):
    for j in range(allowed_width):
        if zrow[j] < 0:
            return j
    return None


def _leaving(tab, basis, j, rhs_col):
    best = None
    best_ratio = None
    for r, row in enumerate(tab):
        a = row[j]
        if a > 0:
            ratio = row[rhs_col] / a
            if best is None or ratio < best_ratio or (
                ratio == best_ratio and basis[r] < basis[best]
            ):
                best = r
                best_ratio = ratio
    return best


def _simplex(rows, rhs, cost, width):
    """Core two-phase simplex. Returns one of
    ("optimal", x, y), ("infeasible", y), ("unbounded", x, ray)
    in the standardized space; y has one entry per input row."""
    m = len(rows)
    rhs_col = width + m
    tab = []
    for i, row in enumerate(rows):
        art = [_ZERO] * m
        art[i] = _ONE
        tab.append(list(row) + art + [rhs[i]])
    basis = [width + i for i in range(m)]
    row_ids = list(range(m))

    # phase 1: minimize the sum of artificials
    zrow = [_ZERO] * (rhs_col + 1)
    for j in range(rhs_col + 1):
        zrow[j] = -sum(tab[i][j] for i in range(m))
    for i in range(m):
        zrow[width + i] += _ONE
    while True:
        j = _entering(zrow, width)  # artificials never (re-)enter
        if j is None:
            break
        r = _leaving(tab, basis, j, rhs_col)
        if r is None:
            raise AssertionError("phase-1 objective is bounded by construction")
        _pivot(tab, zrow, basis, r, j)

    infeas_value = -zrow[rhs_col]
    if infeas_value > 0:
        y = [_ZERO] * m
        for i in range(m):
            y[i] = _ONE - zrow[width + i]
        return ("infeasible", y)

    # drive residual artificials out of the basis; drop redundant rows
    for r in range(len(tab) - 1, -1, -1):
        if basis[r] < width:
            continue
        col = next((j for j in range(width) if tab[r][j] != 0), None)
        if col is None:
            del tab[r], basis[r], row_ids[r]
        else:
            _pivot(tab, zrow, basis, r, col)

    # phase 2
    zrow = list(cost) + [_ZERO] * (m + 1)
    for r, row in enumerate(tab):
        cb = cost[basis[r]]
        if cb != 0:
            zrow = [x - cb * y for x, y in zip(zrow, row)]
    while True:
        j = _entering(zrow, width)
        if j is None:
            break
        r = _leaving(tab, basis, j, rhs_col)
        if r is None:
            x = [_ZERO] * width
            for rr, bcol in enumerate(basis):
                x[bcol] = tab[rr][rhs_col]
            ray = [_ZERO] * width
            ray[j] = _ONE
            for rr, bcol in enumerate(basis):
                ray[bcol] = -tab[rr][j]
            return ("unbounded", x, ray)
        _pivot(tab, zrow, basis, r, j)

    x = [_ZERO] * width
    for r, bcol in enumerate(basis):
        x[bcol] = tab[r][rhs_col]
    y = [_ZERO] * m
    for rid in row_ids:
        y[rid] = -zrow[width + rid]
    return ("optimal", x, y)


def _unstandardize_point(lp, var_cols, x_std):
    out = []
    for j in range(lp.num_vars):
        kind = var_cols[j]
        if kind[0] == "split":
            out.append(x_std[kind[1]] - x_std[kind[2]])
        else:
            out.append(lp.lower[j] + x_std[kind[1]])
    return tuple(out)


def _unstandardize_ray(lp, var_cols, ray_std):
    out = []
    for j in range(lp.num_vars):
        kind = var_cols[j]
        if kind[0] == "split":
            out.append(ray_std[kind[1]] - ray_std[kind[2]])
        else:
            out.append(ray_std[kind[1]])
    return tuple(out)


def _point_feasible(lp: LinearProgram, point) -> bool:
    for j in range(lp.num_vars):
        if lp.lower[j] is not None and point[j] < lp.lower[j]:
            return False
        if lp.upper[j] is not None and point[j] > lp.upper[j]:
            return False
    for coeffs, rel, b in lp.constraints:
        lhs = sum(a * x for a, x in zip(coeffs, point))
        if rel == LE and lhs > b:
            return False
        if rel == GE and lhs < b:
            return False
        if rel == EQ and lhs != b:
            return False
    return True


def verify_optimality(lp: LinearProgram, opt: Optimal) -> bool:
    """Exact re-check of the optimal point and its dual certificate."""
    if not _point_feasible(lp, opt.point):
        return False
    obj = sum(c * x for c, x in zip(lp.objective, opt.point))
    if obj != opt.value:
        return False
    rows, rhs, cost, _, _, _, width = _standardize(lp)
    x, y = opt.x_std, opt.y_std
    if len(x) != width or len(y) != len(rows):
        return False
    if any(v < 0 for v in x):
        return False
    for row, b in zip(rows, rhs):
        if sum(a * v for a, v in zip(row, x)) != b:
            return False
    # dual feasibility and strong duality for the standardized min problem
    for j in range(width):
        if sum(y[i] * rows[i][j] for i in range(len(rows))) > cost[j]:
            return False
    primal = sum(c * v for c, v in zip(cost, x))
    dual = sum(yi * bi for yi, bi in zip(y, rhs))
    return primal == dual


def verify_infeasibility(lp: LinearProgram, cert: FarkasCertificate) -> bool:
    """Check the refutation: the multiplier combination of the constraints
    contradicts the variable bounds, so no feasible point exists."""
    ext = _extended_constraints(lp)
    w = cert.row_mults
    if len(w) != len(ext):
        return False
    for wk, (_, rel, _) in zip(w, ext):
        if rel == LE and wk > 0:
            return False
        if rel == GE and wk < 0:
            return False
    z = [_ZERO] * lp.num_vars
    for wk, (coeffs, _, _) in zip(w, ext):
        if wk != 0:
            for j, a in enumerate(coeffs):
                z[j] += wk * a
    combo_rhs = sum(wk * b for wk, (_, _, b) in zip(w, ext))
    floor = _ZERO
    for j in range(lp.num_vars):
        if lp.lower[j] is None:
            if z[j] != 0:
                return False
        else:
            if z[j] > 0:
                return False
            floor += z[j] * lp.lower[j]
    # any feasible x would give sum z_j x_j >= combo_rhs yet <= floor
    return combo_rhs > floor


def verify_unbounded(lp: LinearProgram, res: Unbounded) -> bool:
    if not _point_feasible(lp, res.point):
        return False
    d = res.ray
    for coeffs, rel, _ in lp.constraints:
        drift = sum(a * x for a, x in zip(coeffs, d))
        if rel == LE and drift > 0:
            return False
        if rel == GE and drift < 0:
            return False
        if rel == EQ and drift != 0:
            return False
    for j in range(lp.num_vars):
        if lp.lower[j] is not None and d[j] < 0:
            return False
        if lp.upper[j] is not None and d[j] > 0:
            return False
    gain = sum(c * x for c, x in zip(lp.objective, d))
    return gain > 0 if lp.sense == "max" else gain < 0


def lp_solve(lp: LinearProgram):
    """Solve exactly; the returned certificate is re-verified before return."""
    rows, rhs, cost, var_cols, sigma, _, width = _standardize(lp)
    outcome = _simplex(rows, rhs, cost, width)
    if outcome[0] == "infeasible":
        y = outcome[1]
        cert = FarkasCertificate(tuple(s * yi for s, yi in zip(sigma, y)))
        if not verify_infeasibility(lp, cert):
            raise AssertionError("simplex produced an invalid infeasibility certificate")
        return Infeasible(cert)
    if outcome[0] == "unbounded":
        point = _unstandardize_point(lp, var_cols, outcome[1])
        ray = _unstandardize_ray(lp, var_cols, outcome[2])
        res = Unbounded(point, ray)
        if not verify_unbounded(lp, res):
            raise AssertionError("simplex produced an invalid unbounded ray")
        return res
    x_std, y_std = outcome[1], outcome[2]
    point = _unstandardize_point(lp, var_cols, x_std)
    value = sum(c * x for c, x in zip(lp.objective, point))
    res = Optimal(point, value, tuple(x_std), tuple(y_std))
    if not verify_optimality(lp, res):
        raise AssertionError("simplex produced an invalid optimality certificate")
    return res


def affine_dependency(vectors: Sequence) -> Optional[tuple]:
    """Nonzero coefficients c with sum(c) = 0 and sum(c_k * v_k) = 0, if any.

    Solved as the null space of the homogeneous system stacking an all-ones
    row on the coordinate rows; None when the vectors are affinely independent.
    """
    k = len(vectors)
    if k == 0:
        return None
    dim = len(vectors[0])
    for v in vectors:
        if len(v) != dim:
            raise InputError("vectors must share one dimension")
    rows = [[_ONE] * k]
    for d in range(dim):
        rows.append([Fraction(v[d]) for v in vectors])
    # Gauss-Jordan to reduced row-echelon form
    pivots = []  # (row, col)
    r = 0
    for col in range(k):
        pr = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = _ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(k) if c not in pivot_cols), None)
    if free is None:
        return None
    sol = [_ZERO] * k
    sol[free] = _ONE
    for pr, pc in pivots:
        sol[pc] = -rows[pr][free]
    return tuple(sol)
