"""Exact linear programming over the degree-6 identity space.

The program: maximize alpha subject to d4 = alpha p4 + sum lambda_j f_j
with every lambda_j >= 0, where the f_j are symmetric homogeneous
degree-6 polynomials nonnegative on geometric input.  Matching
coefficients monomial by monomial turns the polynomial constraint into
ordinary linear equations, one per degree-6 monomial.

Everything runs in Fraction arithmetic: the reported optima (32, 60,
188/3, 64) are exact rational statements, not floating-point estimates.
The solver is a two-phase primal simplex; the entering rule is
largest-reduced-cost, dropping permanently to Bland's lowest-index rule
whenever degenerate pivots stall, which preserves the no-cycling
guarantee.  The free variable alpha is split into a difference of two
nonnegative variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import catalog
from .catalog import enumerate_T, format_alpha
from .polyring import Coeff, Mono, Poly
from .symmetry import sorted_mono_descending

DEGREE = 6


@dataclass(frozen=True)
class LpProblem:
    """Coefficient-matching formulation of the degree-6 program.

    Row r states: rhs[r] = alpha * matrix[r][0] + sum_j lambda_j * matrix[r][j].
    Column 0 is the alpha column (coefficients of p4); the rhs holds the
    coefficients of d4.
    """

    monomials: tuple[Mono, ...]
    column_names: tuple[str, ...]
    matrix: tuple[tuple[Coeff, ...], ...]
    rhs: tuple[Coeff, ...]


@dataclass(frozen=True)
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: Fraction | None
    multipliers: dict[str, Fraction]
    support: tuple[str, ...]
    pivots: int
    reconstruction_ok: bool


@dataclass(frozen=True)
class BoundReport:
    """Result of the ceiling argument at the witness vector."""

    applicable: bool
    bound: Fraction | None
    witness: tuple[int, ...]
    negative_columns: tuple[str, ...]


WITNESS = (9, 8, 1, 1, 7, 8)


def build_program(basis: Sequence[tuple[str, Poly]]) -> LpProblem:
    """Assemble the coefficient-matching rows for the given basis columns.

    Every basis polynomial must be homogeneous of degree 6; rows cover the
    union of monomials appearing in d4, p4 and the basis, in descending
    graded-lex order.
    """
    names = [name for name, _ in basis]
    if len(set(names)) != len(names):
        raise ValueError("duplicate column names in basis")
    d4 = catalog.d4()
    p4 = catalog.p4()
    for name, poly in basis:
        if poly.is_zero() or not poly.is_homogeneous(DEGREE):
            raise ValueError(f"basis column {name!r} is not homogeneous of degree {DEGREE}")
    support: set[Mono] = set(d4.terms) | set(p4.terms)
    for _, poly in basis:
        support.update(poly.terms)
    monomials = tuple(sorted_mono_descending(list(support)))
    columns = [p4] + [poly for _, poly in basis]
    matrix = tuple(
        tuple(column.terms.get(mono, 0) for column in columns) for mono in monomials
    )
    rhs = tuple(d4.terms.get(mono, 0) for mono in monomials)
    return LpProblem(
        monomials=monomials,
        column_names=tuple(["alpha"] + names),
        matrix=matrix,
        rhs=rhs,
    )


def _dedupe_rows(problem: LpProblem) -> tuple[list[tuple[Coeff, ...]], list[Coeff]]:
    # The basis columns and the rhs are all symmetric polynomials, so the
    # rows of the monomials in one orbit are identical; collapsing exact
    # duplicates (matrix row and rhs together) loses nothing.
    seen: set[tuple] = set()
    rows: list[tuple[Coeff, ...]] = []
    rhs: list[Coeff] = []
    for row, b in zip(problem.matrix, problem.rhs):
        key = (row, b)
        if key in seen:
            continue
        seen.add(key)
        rows.append(row)
        rhs.append(b)
    return rows, rhs


def _pivot(tableau: list[list[Fraction]], obj: list[Fraction], basis: list[int],
           row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = Fraction(1) / pivot_row[col]
    if inv != 1:
        tableau[row] = pivot_row = [v * inv for v in pivot_row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor:
            tableau[i] = [
                a - factor * b if b else a for a, b in zip(other, pivot_row)
            ]
    factor = obj[col]
    if factor:
        obj[:] = [a - factor * b if b else a for a, b in zip(obj, pivot_row)]
    basis[row] = col


#: Consecutive non-improving pivots tolerated before the pricing rule drops
#: from largest-coefficient to Bland's rule for the rest of the solve.
DEGENERATE_STALL_LIMIT = 30


class _Pricer:
    """Entering-column rule: largest reduced cost,

    with a permanent switch to Bland's lowest-index rule once a run of
    degenerate (objective-preserving) pivots exceeds the stall limit.
    Bland's rule cannot cycle, so the hybrid always terminates while the
    aggressive rule keeps the typical pivot count low.
    """

    def __init__(self) -> None:
        self.bland = False
        self._stall = 0

    def note_pivot(self, improved: bool) -> None:
        if improved:
            self._stall = 0
        elif not self.bland:
            self._stall += 1
            if self._stall > DEGENERATE_STALL_LIMIT:
                self.bland = True

    def choose(self, obj: list[Fraction], n_cols: int) -> int:
        if self.bland:
            for j in range(n_cols):
                if obj[j] > 0:
                    return j
            return -1
        best = -1
        best_value = 0
        for j in range(n_cols):
            value = obj[j]
            if value > best_value:
                best_value = value
                best = j
        return best


def _simplex_step(tableau: list[list[Fraction]], obj: list[Fraction],
                  basis: list[int], n_cols: int, pricer: _Pricer) -> str:
    col = pricer.choose(obj, n_cols)
    if col < 0:
        return "optimal"
    # Leaving: minimum ratio, ties broken by lowest basis variable index.
    best_ratio: Fraction | None = None
    row = -1
    for i, tab_row in enumerate(tableau):
        coeff = tab_row[col]
        if coeff > 0:
            ratio = tab_row[-1] / coeff
            if best_ratio is None or ratio < best_ratio or (
                ratio == best_ratio and basis[i] < basis[row]
            ):
                best_ratio = ratio
                row = i
    if row < 0:
        return "unbounded"
    before = obj[-1]
    _pivot(tableau, obj, basis, row, col)
    pricer.note_pivot(obj[-1] != before)
    return "pivoted"


def solve(problem: LpProblem) -> LpSolution:
    """Two-phase exact simplex; deterministic for a fixed problem."""
    rows, rhs = _dedupe_rows(problem)
    m = len(rows)
    k = len(problem.column_names) - 1  # lambda count
    n = 2 + k  # alpha+ alpha- lambda_1..lambda_k

    # Constraint rows with nonnegative right-hand sides.
    tableau: list[list[Fraction]] = []
    for row, b in zip(rows, rhs):
        sign = -1 if b < 0 else 1
        body = [Fraction(sign * row[0]), Fraction(-sign * row[0])]
        body.extend(Fraction(sign * v) for v in row[1:])
        tableau.append(body + [Fraction(0)] * m + [Fraction(sign * b)])
    for i in range(m):
        tableau[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    pivots = 0

    # Phase 1: maximize minus the sum of artificials.
    obj = [Fraction(0)] * (n + m + 1)
    for j in range(n + m + 1):
        obj[j] = sum(row[j] for row in tableau)
    for i in range(m):
        obj[n + i] = Fraction(0)
    pricer = _Pricer()
    while True:
        state = _simplex_step(tableau, obj, basis, n + m, pricer)
        if state == "pivoted":
            pivots += 1
            continue
        if state == "unbounded":  # cannot happen: objective bounded by 0
            raise RuntimeError("phase 1 reported unbounded")
        break
    if obj[-1] != 0:
        return LpSolution(
            status="infeasible",
            objective=None,
            multipliers={},
            support=(),
            pivots=pivots,
            reconstruction_ok=False,
        )

    # Drive artificials out of the basis; drop rows that went redundant.
    for i in range(m - 1, -1, -1):
        if basis[i] < n:
            continue
        pivot_col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if pivot_col is None:
            del tableau[i]
            del basis[i]
        else:
            _pivot(tableau, obj, basis, i, pivot_col)
            pivots += 1

    # Phase 2 on the real columns only.
    tableau = [row[:n] + [row[-1]] for row in tableau]
    cost = [Fraction(1), Fraction(-1)] + [Fraction(0)] * k
    obj = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        total = Fraction(0)
        for i, tab_row in enumerate(tableau):
            c = cost[basis[i]]
            if c:
                total += c * tab_row[j]
        obj[j] = (cost[j] if j < n else Fraction(0)) - total
    pricer = _Pricer()
    while True:
        state = _simplex_step(tableau, obj, basis, n, pricer)
        if state == "pivoted":
            pivots += 1
            continue
        if state == "unbounded":
            return LpSolution(
                status="unbounded",
                objective=None,
                multipliers={},
                support=(),
                pivots=pivots,
                reconstruction_ok=False,
            )
        break

    values = [Fraction(0)] * n
    for i, var in enumerate(basis):
        values[var] = tableau[i][-1]
    alpha = values[0] - values[1]
    multipliers = {
        problem.column_names[j + 1]: values[2 + j] for j in range(k)
    }
    support = tuple(
        name for name in problem.column_names[1:] if multipliers[name] > 0
    )
    ok = _reconstructs(problem, alpha, multipliers)
    return LpSolution(
        status="optimal",
        objective=alpha,
        multipliers=multipliers,
        support=support,
        pivots=pivots,
        reconstruction_ok=ok,
    )


def _reconstructs(problem: LpProblem, alpha: Fraction,
                  multipliers: dict[str, Fraction]) -> bool:
    lam = [multipliers[name] for name in problem.column_names[1:]]
    for row, b in zip(problem.matrix, problem.rhs):
        total = alpha * row[0]
        for v, l in zip(row[1:], lam):
            if v and l:
                total += l * v
        if total != b:
            return False
    return True


def combination_polynomial(basis: Sequence[tuple[str, Poly]],
                           solution: LpSolution) -> Poly:
    """alpha p4 + sum lambda_j f_j, for an independent equality check."""
    if solution.objective is None:
        raise ValueError("solution has no objective value")
    result = catalog.p4().scale(solution.objective)
    for name, poly in basis:
        lam = solution.multipliers.get(name, Fraction(0))
        if lam:
            result = result + poly.scale(lam)
    return result


def standard_basis(extras: Sequence[str] = ()) -> list[tuple[str, Poly]]:
    """Named extra columns (z4 | n4 | v4sq) followed by the T6 columns."""
    allowed = {"z4": catalog.z4, "n4": catalog.n4, "v4sq": lambda: catalog.v4() ** 2}
    basis: list[tuple[str, Poly]] = []
    for name in extras:
        if name not in allowed:
            raise ValueError(f"unknown extra column {name!r}; choose from z4, n4, v4sq")
        basis.append((name, allowed[name]()))
    for alpha, poly in enumerate_T(DEGREE):
        basis.append((f"av[t^{format_alpha(alpha)}]", poly))
    return basis


def upper_bound_check(basis: Sequence[tuple[str, Poly]]) -> BoundReport:
    """Ceiling for the objective from the witness vector (9, 8, 1, 1, 7, 8).

    d4 equals 64 p4 at the witness while p4 is positive there, so any
    feasible combination with all basis columns nonnegative at the witness
    forces alpha <= 64.  Columns that go negative at the witness void the
    argument; they are reported rather than raised.
    """
    d4_value = catalog.d4().evaluate(WITNESS)
    p4_value = catalog.p4().evaluate(WITNESS)
    if d4_value != 64 * p4_value or p4_value <= 0:
        raise RuntimeError("witness vector lost the d4 = 64 p4 anchor")
    negative = tuple(
        name for name, poly in basis if poly.evaluate(WITNESS) < 0
    )
    if negative:
        return BoundReport(
            applicable=False, bound=None, witness=WITNESS, negative_columns=negative
        )
    return BoundReport(
        applicable=True, bound=Fraction(64), witness=WITNESS, negative_columns=()
    )
