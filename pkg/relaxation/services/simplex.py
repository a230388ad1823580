"""Exact two-phase primal simplex with Bland's rule, plus warm re-optimization.

Variables are nonnegative. Tableau rows are sparse integer numerators over one
positive denominator per row, so pivots stay in integer arithmetic and every
returned optimum is an exact basic solution. ``LpSession`` keeps the last
optimal tableau and re-optimizes it with the dual simplex after ``<=`` rows are
added, or with the primal simplex after variables or rows are dropped.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping

from django.conf import settings

logger = logging.getLogger(__name__)

SENSES = ('<=', '>=', '=')
FLIPPED = {'<=': '>=', '>=': '<=', '=': '='}
RHS = -1


class LpError(RuntimeError):
    pass


class _Rebuild(Exception):
    """The edit cannot be applied to the kept tableau."""


@dataclass(frozen=True)
class LpRow:
    name: str
    coeffs: Mapping[Hashable, Fraction]
    sense: str
    rhs: Fraction

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f'unknown row sense {self.sense!r}')
        object.__setattr__(self, 'coeffs', {v: Fraction(c) for v, c in self.coeffs.items() if c})
        object.__setattr__(self, 'rhs', Fraction(self.rhs))

    def activity(self, values: Mapping[Hashable, Fraction]) -> Fraction:
        return sum((c * values.get(v, 0) for v, c in self.coeffs.items()), Fraction(0))

    def is_tight(self, values: Mapping[Hashable, Fraction]) -> bool:
        return self.activity(values) == self.rhs

    def is_satisfied(self, values: Mapping[Hashable, Fraction]) -> bool:
        activity = self.activity(values)
        if self.sense == '<=':
            return activity <= self.rhs
        if self.sense == '>=':
            return activity >= self.rhs
        return activity == self.rhs


@dataclass
class LpProblem:
    """min objective . x subject to ``rows`` and x >= 0."""

    variables: tuple
    objective: Mapping[Hashable, Fraction]
    rows: list[LpRow] = field(default_factory=list)
    name: str = 'lp'


@dataclass(frozen=True)
class LpBasicSolution:
    values: dict
    objective: Fraction
    basis: tuple
    duals: dict
    tight_rows: tuple[str, ...]
    status = 'optimal'


@dataclass(frozen=True)
class Infeasible:
    """Phase-one multipliers y with y . b = ``infeasibility`` > 0."""

    farkas: dict
    infeasibility: Fraction
    status = 'infeasible'


@dataclass(frozen=True)
class Unbounded:
    ray: dict
    status = 'unbounded'


def _scaled(coeffs: Mapping[int, Fraction]) -> tuple[dict, int]:
    den = lcm(*(Fraction(c).denominator for c in coeffs.values()))
    return {j: int(Fraction(c) * den) for j, c in coeffs.items() if c}, den


def _normalized(row: dict, den: int) -> tuple[dict, int]:
    g = gcd(den, *row.values())
    if g > 1:
        return {j: v // g for j, v in row.items()}, den // g
    return row, den


def _eliminate(row, den, pivot_row, pivot_den, column):
    """row - (row[column] / pivot_row[column]) * pivot_row, where pivot_row[column] == pivot_den."""
    f = row[column]
    out = {j: v * pivot_den for j, v in row.items()}
    for j, v in pivot_row.items():
        x = out.get(j, 0) - f * v
        if x:
            out[j] = x
        else:
            out.pop(j, None)
    return _normalized(out, den * pivot_den)


class Tableau:
    """
    Sparse integer tableau.

    Row i stands for ``rows[i] / dens[i]``; its basic column ``basis[i]`` has
    numerator ``dens[i]`` and every other row has none there. Column ``RHS``
    holds the right-hand side, and in the objective row it holds -z. Structural
    columns come first, slack and artificial columns are appended per row.
    """

    def __init__(self, problem: LpProblem):
        self.variables = list(problem.variables)
        self.column = {v: j for j, v in enumerate(self.variables)}
        self.width = len(self.variables)
        self.objective = {self.column[v]: Fraction(c) for v, c in problem.objective.items()
                          if c and v in self.column}
        self.rows, self.dens, self.basis = [], [], []
        self.constraints = {}
        self.artificial, self.dead = set(), set()
        self.cost, self.obj, self.obj_den = {}, {}, 1
        self.pivots = 0
        for row in problem.rows:
            self._append_initial(row)

    def _new_column(self):
        self.width += 1
        return self.width - 1

    def _append_initial(self, row):
        coeffs = {self.column[v]: c for v, c in row.coeffs.items()}
        sense, rhs, sign = row.sense, row.rhs, 1
        if rhs < 0:
            coeffs = {j: -c for j, c in coeffs.items()}
            sense, rhs, sign = FLIPPED[sense], -rhs, -1
        if sense != '=':
            coeffs[self._new_column()] = 1 if sense == '<=' else -1
        if sense == '<=':
            basic = self.width - 1
        else:
            basic = self._new_column()
            self.artificial.add(basic)
            coeffs[basic] = 1
        coeffs[RHS] = rhs
        numerators, den = _scaled(coeffs)
        self.rows.append(numerators)
        self.dens.append(den)
        self.basis.append(basic)
        self.constraints[row.name] = (basic, sign)

    @property
    def z(self) -> Fraction:
        return -Fraction(self.obj.get(RHS, 0), self.obj_den)

    def reduced_cost(self, j) -> Fraction:
        return Fraction(self.obj.get(j, 0), self.obj_den)

    def enterable(self, j) -> bool:
        return j not in self.artificial and j not in self.dead

    def price(self, cost: Mapping[int, Fraction]):
        """Objective row for ``cost`` under the current basis."""
        self.cost = dict(cost)
        d = {j: Fraction(c) for j, c in cost.items() if c}
        for row, den, basic in zip(self.rows, self.dens, self.basis):
            cb = cost.get(basic)
            if cb:
                for j, v in row.items():
                    d[j] = d.get(j, 0) - cb * Fraction(v, den)
        self.obj, self.obj_den = _scaled({j: x for j, x in d.items() if x})

    def pivot(self, i, j):
        row, piv = self.rows[i], self.rows[i][j]
        if piv < 0:
            row, piv = {c: -v for c, v in row.items()}, -piv
        row, den = _normalized(row, piv)
        self.rows[i], self.dens[i] = row, den
        for k, other in enumerate(self.rows):
            if k != i and j in other:
                self.rows[k], self.dens[k] = _eliminate(other, self.dens[k], row, den, j)
        if j in self.obj:
            self.obj, self.obj_den = _eliminate(self.obj, self.obj_den, row, den, j)
        self.basis[i] = j
        self.pivots += 1

    def primal_step(self, allowed):
        entering = min((j for j, v in self.obj.items() if j != RHS and v < 0 and allowed(j)), default=None)
        if entering is None:
            return 'optimal', None
        candidates = [(Fraction(row.get(RHS, 0), row[entering]), self.basis[i], i)
                      for i, row in enumerate(self.rows) if row.get(entering, 0) > 0]
        if not candidates:
            return 'unbounded', entering
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return 'go_on', None

    def dual_step(self, allowed):
        leaving = min(((self.basis[i], i) for i, row in enumerate(self.rows) if row.get(RHS, 0) < 0), default=None)
        if leaving is None:
            return 'optimal', None
        _, i = leaving
        candidates = [(Fraction(self.obj.get(j, 0), -v), j) for j, v in self.rows[i].items()
                      if j != RHS and v < 0 and allowed(j)]
        if not candidates:
            return 'infeasible', i
        _, entering = min(candidates)
        self.pivot(i, entering)
        return 'go_on', None

    def run(self, step, allowed):
        while True:
            status, detail = step(allowed)
            if status != 'go_on':
                return status, detail

    def dual_feasible(self) -> bool:
        return all(v >= 0 for j, v in self.obj.items() if j != RHS and self.enterable(j))

    def delete_row(self, i):
        for seq in (self.rows, self.dens, self.basis):
            del seq[i]

    def purge(self, j):
        for row in self.rows:
            row.pop(j, None)
        self.obj.pop(j, None)

    def drive_out_artificials(self):
        i = 0
        while i < len(self.rows):
            if self.basis[i] not in self.artificial:
                i += 1
                continue
            column = min((j for j in self.rows[i] if j != RHS and self.enterable(j)), default=None)
            if column is None:
                logger.debug('dropping a redundant row')
                self.delete_row(i)
                continue
            self.pivot(i, column)
            i += 1

    def add_row(self, row: LpRow):
        if row.sense != '<=':
            raise _Rebuild
        coeffs = {self.column[v]: c for v, c in row.coeffs.items()}
        slack = self._new_column()
        coeffs[slack] = 1
        coeffs[RHS] = row.rhs
        numerators, den = _scaled(coeffs)
        for k, basic in enumerate(self.basis):
            if basic in numerators:
                numerators, den = _eliminate(numerators, den, self.rows[k], self.dens[k], basic)
        self.rows.append(numerators)
        self.dens.append(den)
        self.basis.append(slack)
        self.constraints[row.name] = (slack, 1)

    def drop_variable(self, v):
        j = self.column[v]
        if j in self.basis:
            i = self.basis.index(j)
            if self.rows[i].get(RHS, 0):
                raise _Rebuild
            column = min((c for c in self.rows[i] if c not in (RHS, j) and self.enterable(c)), default=None)
            if column is None:
                self.delete_row(i)
            else:
                self.pivot(i, column)
        self.dead.add(j)
        self.purge(j)

    def drop_row(self, name):
        slack, _ = self.constraints.pop(name)
        if slack in self.artificial:
            raise _Rebuild
        if slack in self.basis:
            i = self.basis.index(slack)
        else:
            # the freed slack enters where it keeps the other rows feasible
            entries = [(i, row[slack]) for i, row in enumerate(self.rows) if row.get(slack, 0)]
            up = [(Fraction(self.rows[i].get(RHS, 0), a), self.basis[i], i) for i, a in entries if a > 0]
            down = [(Fraction(self.rows[i].get(RHS, 0), -a), self.basis[i], i) for i, a in entries if a < 0]
            if not entries:
                raise _Rebuild
            _, _, i = min(up or down)
            self.pivot(i, slack)
        self.delete_row(i)
        self.dead.add(slack)
        self.purge(slack)

    def multipliers(self):
        """Row multipliers c_B B^-1, in the orientation the rows were given."""
        return {name: sign * (Fraction(self.cost.get(j, 0)) - self.reduced_cost(j))
                for name, (j, sign) in self.constraints.items()}

    def values(self):
        values = {v: Fraction(0) for v, j in self.column.items() if j not in self.dead}
        for row, den, j in zip(self.rows, self.dens, self.basis):
            if j < len(self.variables):
                values[self.variables[j]] = Fraction(row.get(RHS, 0), den)
        return values

    def ray(self, column):
        ray = {v: Fraction(0) for v in self.variables}
        if column < len(self.variables):
            ray[self.variables[column]] = Fraction(1)
        for row, den, j in zip(self.rows, self.dens, self.basis):
            if j < len(self.variables):
                ray[self.variables[j]] = -Fraction(row.get(column, 0), den)
        return ray

    def optimum(self, problem: LpProblem) -> LpBasicSolution:
        values = self.values()
        tight = tuple(row.name for row in problem.rows if row.is_tight(values))
        basis = tuple(self.variables[j] for j in self.basis if j < len(self.variables))
        return LpBasicSolution(values, self.z, basis, self.multipliers(), tight)

    def solve(self, problem: LpProblem):
        """Cold two-phase solve from the slack and artificial basis."""
        self.price({j: Fraction(1) for j in self.artificial})
        self.run(self.primal_step, lambda j: j not in self.dead)
        if self.z > 0:
            logger.debug('%s infeasible after %d pivots', problem.name, self.pivots)
            return Infeasible(self.multipliers(), self.z)
        self.drive_out_artificials()
        self.price(self.objective)
        status, column = self.run(self.primal_step, self.enterable)
        if status == 'unbounded':
            return Unbounded(self.ray(column))
        logger.debug('%s optimal value %s after %d pivots', problem.name, self.z, self.pivots)
        return self.optimum(problem)

    def reoptimize(self) -> str:
        if any(row.get(RHS, 0) < 0 for row in self.rows):
            if not self.dual_feasible():
                raise _Rebuild
            status, _ = self.run(self.dual_step, self.enterable)
            if status != 'optimal':
                return status
        status, _ = self.run(self.primal_step, self.enterable)
        return status


def matrix_rank(rows: Iterable[Iterable[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination over integers."""
    matrix = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in row))
        matrix.append([int(x * den) for x in row])
    width = len(matrix[0]) if matrix else 0
    rank, previous = 0, 1
    for col in range(width):
        pivot = next((r for r in range(rank, len(matrix)) if matrix[r][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        lead = matrix[rank]
        p = lead[col]
        for r in range(rank + 1, len(matrix)):
            f = matrix[r][col]
            matrix[r] = [(x * p - f * y) // previous for x, y in zip(matrix[r], lead)]
        previous = p
        rank += 1
    return rank


def tight_rank(problem: LpProblem, values: Mapping[Hashable, Fraction]) -> int:
    variables = list(problem.variables)
    rows = [[row.coeffs.get(v, 0) for v in variables] for row in problem.rows if row.is_tight(values)]
    rows.extend([int(u == v) for u in variables] for v in variables if values[v] == 0)
    return matrix_rank(rows)


def check_vertex_rank(problem: LpProblem, solution):
    """Raise LpError unless the rows tight at ``solution`` have full column rank."""
    if solution.status == 'optimal' and tight_rank(problem, solution.values) != len(problem.variables):
        raise LpError(f'{problem.name}: solution is not a vertex of the feasible region')


def simplex_solve(problem: LpProblem, check_vertex: bool | None = None
                  ) -> LpBasicSolution | Infeasible | Unbounded:
    check_vertex = settings.LP_CHECK_VERTEX if check_vertex is None else check_vertex
    result = Tableau(problem).solve(problem)
    if check_vertex:
        check_vertex_rank(problem, result)
    return result


class LpSession:
    """
    Solves a sequence of related problems, re-optimizing the last tableau.

    Between calls, variables may disappear, rows may disappear and ``<=`` rows
    may appear; rows kept under the same name must be unchanged apart from
    dropped variables. Any other change, and any warm solve that does not end
    optimal, falls back to a cold solve.
    """

    def __init__(self):
        self.tableau = None
        self.problem = None
        self.warm_solves = 0
        self.cold_solves = 0

    def _compatible(self, problem):
        old = self.problem
        live = set(problem.variables)
        if not live <= set(old.variables):
            return False
        if any(Fraction(problem.objective.get(v, 0)) != Fraction(old.objective.get(v, 0)) for v in live):
            return False
        before = {row.name: row for row in old.rows}
        for row in problem.rows:
            previous = before.get(row.name)
            if previous is None:
                continue
            kept = {v: c for v, c in previous.coeffs.items() if v in live}
            if (row.sense, row.rhs, row.coeffs) != (previous.sense, previous.rhs, kept):
                return False
        return True

    def _warm(self, problem):
        if not self._compatible(problem):
            return None
        tableau, old = self.tableau, self.problem
        live = set(problem.variables)
        names = {row.name for row in problem.rows}
        for v in old.variables:
            if v not in live:
                tableau.drop_variable(v)
        for row in old.rows:
            if row.name not in names:
                tableau.drop_row(row.name)
        known = {row.name for row in old.rows}
        for row in problem.rows:
            if row.name not in known:
                tableau.add_row(row)
        if tableau.reoptimize() != 'optimal':
            return None
        return tableau.optimum(problem)

    def solve(self, problem: LpProblem, check_vertex: bool = False):
        result = None
        if self.tableau is not None:
            try:
                result = self._warm(problem)
            except _Rebuild:
                result = None
        if result is not None:
            self.warm_solves += 1
        else:
            self.cold_solves += 1
            self.tableau = Tableau(problem)
            result = self.tableau.solve(problem)
            if result.status != 'optimal':
                self.tableau = None
        self.problem = problem
        if check_vertex:
            check_vertex_rank(problem, result)
        return result


def _lp_number(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f'{x.numerator}/{x.denominator}'


def _lp_expression(coeffs, names):
    parts = []
    for v, c in coeffs:
        c = Fraction(c)
        if not c:
            continue
        sign = '-' if c < 0 else '+'
        magnitude = '' if abs(c) == 1 else _lp_number(abs(c)) + ' '
        parts.append(f'{sign} {magnitude}{names(v)}')
    if not parts:
        return '0'
    text = ' '.join(parts)
    return text[2:] if text.startswith('+ ') else text


def render_lp(problem: LpProblem, names=None) -> str:
    """CPLEX LP text of ``problem``; non-integral coefficients are written as exact p/q."""
    names = names or (lambda v: f'x{v}')
    lines = [f'\\ {problem.name}', 'Minimize',
             ' obj: ' + _lp_expression([(v, problem.objective.get(v, 0)) for v in problem.variables], names),
             'Subject To']
    for row in problem.rows:
        expression = _lp_expression([(v, row.coeffs[v]) for v in problem.variables if v in row.coeffs], names)
        lines.append(f' {row.name}: {expression} {row.sense} {_lp_number(row.rhs)}')
    lines.append('End')
    return '\n'.join(lines) + '\n'
