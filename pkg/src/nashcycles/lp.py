"""Exact-arithmetic linear programming kernel.

`solve_lp` is a two-phase tableau simplex over rationals with Bland's
anti-cycling pivot rule: deterministic, tolerance-free, and terminating
on degenerate inputs.  On top of it sit the four program builders used
throughout the library: the strict-dominance test, its single-column
variant for relevancy certification, the best-response-region check for
domains, and the support-pair feasibility check.

Internally the tableau uses ``gmpy2.mpq`` when available (identical
semantics to `fractions.Fraction`, several times faster); all public
inputs and outputs are `Fraction`.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .games import Game, MixedStrategy, SupportPair

try:
    from gmpy2 import mpq as _mpq

    # gmpy2's direct Fraction<->mpq conversion paths misdetect Fractions in
    # some call sequences (SystemError); integer construction is reliable.
    def _rat(value) -> "_mpq":
        if isinstance(value, int):
            return _mpq(value)
        return _mpq(value.numerator, value.denominator)

    def _to_fraction(value) -> Fraction:
        return Fraction(int(value.numerator), int(value.denominator))

except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _rat = Fraction

    def _to_fraction(value) -> Fraction:
        return value

__all__ = [
    "Constraint",
    "LinearProgram",
    "LpOutcome",
    "LpStatus",
    "fp1_check",
    "lp1_dominance",
    "lp2_domain_check",
    "lp2_joint_domain_check",
    "mod_lp1_relevancy",
    "solve_lp",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

RELATIONS = ("<=", "=", ">=")


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.relation!r}")


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to constraints and per-variable bounds.

    `bounds[j]` is a (lower, upper) pair where None means unbounded; the
    default for every variable is (0, None).
    """

    num_vars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    bounds: tuple[tuple[Fraction | None, Fraction | None], ...] | None = None

    def __post_init__(self):
        if len(self.objective) != self.num_vars:
            raise ValueError("objective length must equal num_vars")
        for con in self.constraints:
            if len(con.coeffs) != self.num_vars:
                raise ValueError("constraint coefficient length must equal num_vars")
        if self.bounds is not None:
            if len(self.bounds) != self.num_vars:
                raise ValueError("bounds length must equal num_vars")
            for lo, hi in self.bounds:
                if lo is not None and hi is not None and lo > hi:
                    raise ValueError(f"inconsistent bounds ({lo}, {hi})")

    def effective_bounds(self) -> tuple[tuple[Fraction | None, Fraction | None], ...]:
        if self.bounds is None:
            return tuple((_ZERO, None) for _ in range(self.num_vars))
        return self.bounds


@dataclass(frozen=True)
class LpOutcome:
    status: LpStatus
    objective_value: Fraction | None = None
    assignment: tuple[Fraction, ...] | None = None


# ---------------------------------------------------------------------------
# Simplex core
# ---------------------------------------------------------------------------

def _run_simplex(rows, row0, basis):
    """Bland-rule simplex on a tableau with reduced costs in `row0` and the
    rhs stored in each row's last cell.  Returns "optimal" or "unbounded"."""
    width = len(row0) - 1
    while True:
        enter = -1
        for j in range(width):
            if row0[j] < 0:
                enter = j
                break
        if enter < 0:
            return "optimal"
        leave = -1
        best_ratio = None
        for i, row in enumerate(rows):
            coef = row[enter]
            if coef > 0:
                ratio = row[-1] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return "unbounded"
        _pivot(rows, row0, basis, leave, enter)


def _pivot(rows, row0, basis, r, c):
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        rows[r] = prow = [v * inv for v in prow]
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                rows[i] = [a - f * b for a, b in zip(row, prow)]
    f = row0[c]
    if f:
        row0[:] = [a - f * b for a, b in zip(row0, prow)]
    basis[r] = c


def solve_lp(lp: LinearProgram) -> LpOutcome:
    """Solve exactly; status is Optimal, Infeasible, or Unbounded.

    When Optimal, the assignment satisfies every constraint with exact
    rational equality and attains the reported objective value.
    """
    bounds = lp.effective_bounds()
    zero = _rat(0)
    one = _rat(1)

    # Substitute variables so every tableau column is >= 0.
    var_map: list[tuple] = []
    upper_rows: list[tuple[int, Fraction]] = []
    ncols = 0
    for lo, hi in bounds:
        if lo is not None:
            var_map.append(("shift", _rat(lo), ncols))
            if hi is not None:
                upper_rows.append((ncols, _rat(hi) - _rat(lo)))
            ncols += 1
        elif hi is not None:
            var_map.append(("negshift", _rat(hi), ncols))
            ncols += 1
        else:
            var_map.append(("free", ncols, ncols + 1))
            ncols += 2

    raw_rows: list[tuple[list, str, object]] = []
    for con in lp.constraints:
        row = [zero] * ncols
        rhs = _rat(con.rhs)
        for j, coef in enumerate(con.coeffs):
            if not coef:
                continue
            coef = _rat(coef)
            kind = var_map[j]
            if kind[0] == "shift":
                row[kind[2]] += coef
                rhs -= coef * kind[1]
            elif kind[0] == "negshift":
                row[kind[2]] -= coef
                rhs -= coef * kind[1]
            else:
                row[kind[1]] += coef
                row[kind[2]] -= coef
        raw_rows.append((row, con.relation, rhs))
    for col, cap in upper_rows:
        row = [zero] * ncols
        row[col] = one
        raw_rows.append((row, "<=", _rat(cap)))

    for idx, (row, rel, rhs) in enumerate(raw_rows):
        if rhs < 0:
            flipped = {"<=": ">=", ">=": "<=", "=": "="}[rel]
            raw_rows[idx] = ([-v for v in row], flipped, -rhs)

    nslack = sum(1 for _, rel, _ in raw_rows if rel != "=")
    nart = sum(1 for _, rel, _ in raw_rows if rel != "<=")
    slack_start = ncols
    art_start = ncols + nslack
    width = art_start + nart

    rows: list[list] = []
    basis: list[int] = []
    slack_at = slack_start
    art_at = art_start
    for row, rel, rhs in raw_rows:
        full = row + [zero] * (width - ncols) + [rhs]
        if rel == "<=":
            full[slack_at] = one
            basis.append(slack_at)
            slack_at += 1
        elif rel == ">=":
            full[slack_at] = -one
            slack_at += 1
            full[art_at] = one
            basis.append(art_at)
            art_at += 1
        else:
            full[art_at] = one
            basis.append(art_at)
            art_at += 1
        rows.append(full)

    # Phase 1: maximize minus the sum of artificials.
    if nart:
        row0 = [zero] * (width + 1)
        for i, b in enumerate(basis):
            if b >= art_start:
                row = rows[i]
                for j in range(ncols):
                    if row[j]:
                        row0[j] -= row[j]
                for j in range(slack_start, art_start):
                    if row[j]:
                        row0[j] -= row[j]
                row0[-1] -= row[-1]
        _run_simplex(rows, row0, basis)
        if row0[-1] < 0:
            return LpOutcome(LpStatus.INFEASIBLE)
        # Pivot surviving artificials (at level zero) out of the basis.
        for i in range(len(rows) - 1, -1, -1):
            if basis[i] >= art_start:
                target = -1
                for j in range(art_start):
                    if rows[i][j]:
                        target = j
                        break
                if target >= 0:
                    _pivot(rows, row0, basis, i, target)
                else:
                    del rows[i]
                    del basis[i]
        rows = [row[:art_start] + [row[-1]] for row in rows]
        width = art_start

    # Phase 2: reduced costs for the real objective over the current basis.
    cost = [zero] * width
    for j, coef in enumerate(lp.objective):
        if not coef:
            continue
        coef = _rat(coef)
        kind = var_map[j]
        if kind[0] == "shift":
            cost[kind[2]] += coef
        elif kind[0] == "negshift":
            cost[kind[2]] -= coef
        else:
            cost[kind[1]] += coef
            cost[kind[2]] -= coef
    row0 = [-c for c in cost] + [zero]
    for i, b in enumerate(basis):
        cb = cost[b]
        if cb:
            row = rows[i]
            row0[:] = [a + cb * v for a, v in zip(row0, row)]
    if _run_simplex(rows, row0, basis) == "unbounded":
        return LpOutcome(LpStatus.UNBOUNDED)

    values = [zero] * width
    for i, b in enumerate(basis):
        values[b] = rows[i][-1]
    assignment = []
    for j in range(lp.num_vars):
        kind = var_map[j]
        if kind[0] == "shift":
            assignment.append(_to_fraction(kind[1] + values[kind[2]]))
        elif kind[0] == "negshift":
            assignment.append(_to_fraction(kind[1] - values[kind[2]]))
        else:
            assignment.append(_to_fraction(values[kind[1]] - values[kind[2]]))
    objective_value = sum(
        (c * v for c, v in zip(lp.objective, assignment) if c), _ZERO
    )
    return LpOutcome(LpStatus.OPTIMAL, objective_value, tuple(assignment))


# ---------------------------------------------------------------------------
# Program builders
# ---------------------------------------------------------------------------

def _payoff(game: Game, player: int, own: int, opp: int) -> Fraction:
    return game.a[own][opp] if player == 1 else game.b[opp][own]


def _opponent(player: int) -> int:
    return 2 if player == 1 else 1


def lp1_dominance(game: Game, player: int, x: int) -> tuple[bool, MixedStrategy | None]:
    """Strict-dominance test for one pure strategy.

    Maximizes the worst payoff gap epsilon over the opponent simplex; the
    strategy is strictly dominated (by a mixed strategy) exactly when the
    optimum is negative.  When not dominated, returns an opponent mixed
    strategy to which `x` is a best response.
    """
    own_count = game.strategy_count(player)
    opp_count = game.strategy_count(_opponent(player))
    if not 0 <= x < own_count:
        raise ValueError(f"strategy index {x} out of range")
    if own_count == 1:
        # No rival strategies: a lone strategy is never dominated.
        return False, MixedStrategy.uniform(_opponent(player), opp_count)

    nvars = opp_count + 1  # q_0..q_{n-1}, eps
    constraints = []
    for other in range(own_count):
        if other == x:
            continue
        coeffs = [_payoff(game, player, other, y) - _payoff(game, player, x, y) for y in range(opp_count)]
        coeffs.append(_ONE)
        constraints.append(Constraint(tuple(coeffs), "<=", _ZERO))
    coeffs = [_ONE] * opp_count + [_ZERO]
    constraints.append(Constraint(tuple(coeffs), "=", _ONE))
    bounds = tuple([(_ZERO, None)] * opp_count + [(None, None)])
    objective = tuple([_ZERO] * opp_count + [_ONE])
    outcome = solve_lp(LinearProgram(nvars, objective, tuple(constraints), bounds))
    if outcome.status is not LpStatus.OPTIMAL:  # pragma: no cover - always bounded
        raise RuntimeError(f"dominance program ended {outcome.status}")
    if outcome.objective_value < 0:
        return True, None
    witness = MixedStrategy(_opponent(player), outcome.assignment[:opp_count])
    return False, witness


def mod_lp1_relevancy(game: Game, player: int, x: int, y_star: int) -> bool:
    """One-sided relevancy certificate: True means y_star is certainly in
    R(x); False is inconclusive.

    Re-runs the dominance program with the opponent forbidden from playing
    `y_star`.  If `x` (not dominated in the full game) becomes dominated,
    the only explanation is that every best-response witness needs
    `y_star` in its support.
    """
    own_count = game.strategy_count(player)
    opp_count = game.strategy_count(_opponent(player))
    if not 0 <= y_star < opp_count:
        raise ValueError(f"opponent strategy index {y_star} out of range")
    if opp_count == 1:
        # Forbidding the only opponent strategy empties the simplex.
        return True
    if own_count == 1:
        return False

    keep = [y for y in range(opp_count) if y != y_star]
    nvars = len(keep) + 1
    constraints = []
    for other in range(own_count):
        if other == x:
            continue
        coeffs = [_payoff(game, player, other, y) - _payoff(game, player, x, y) for y in keep]
        coeffs.append(_ONE)
        constraints.append(Constraint(tuple(coeffs), "<=", _ZERO))
    constraints.append(Constraint(tuple([_ONE] * len(keep) + [_ZERO]), "=", _ONE))
    bounds = tuple([(_ZERO, None)] * len(keep) + [(None, None)])
    objective = tuple([_ZERO] * len(keep) + [_ONE])
    outcome = solve_lp(LinearProgram(nvars, objective, tuple(constraints), bounds))
    return outcome.status is LpStatus.OPTIMAL and outcome.objective_value < 0


def _best_response_region(
    game: Game,
    player: int,
    responders: tuple[int, ...],
    s1: tuple[int, ...],
    s0: tuple[int, ...],
) -> tuple[bool, tuple[Fraction, ...] | None, Fraction | None]:
    """Maximize the smallest s1-probability of an opponent mixed strategy
    (zero outside s0's complement) to which every responder is simultaneously
    a best response.

    Returns (member, padded opponent vector, common payoff u); member is
    True exactly when the optimum exists and is positive.
    """
    own_count = game.strategy_count(player)
    opp_count = game.strategy_count(_opponent(player))
    s0_set = frozenset(s0)
    keep = [y for y in range(opp_count) if y not in s0_set]
    if not keep:
        return False, None, None
    col = {y: j for j, y in enumerate(keep)}
    responders_set = frozenset(responders)
    joint = len(responders) > 1

    # Variables: q over `keep`, then (u when joint), then eps.
    nq = len(keep)
    nvars = nq + (2 if joint else 1)
    u_col = nq if joint else None
    eps_col = nvars - 1

    constraints = []
    base = responders[0]
    for other in range(own_count):
        if other in responders_set and (not joint or other == base):
            continue
        coeffs = [_ZERO] * nvars
        for y in keep:
            coeffs[col[y]] = _payoff(game, player, other, y)
        if joint:
            coeffs[u_col] = -_ONE
            relation = "=" if other in responders_set else "<="
            constraints.append(Constraint(tuple(coeffs), relation, _ZERO))
        else:
            for y in keep:
                coeffs[col[y]] -= _payoff(game, player, base, y)
            constraints.append(Constraint(tuple(coeffs), "<=", _ZERO))
    if joint:
        coeffs = [_ZERO] * nvars
        for y in keep:
            coeffs[col[y]] = _payoff(game, player, base, y)
        coeffs[u_col] = -_ONE
        constraints.append(Constraint(tuple(coeffs), "=", _ZERO))
    coeffs = [_ZERO] * nvars
    for y in keep:
        coeffs[col[y]] = _ONE
    constraints.append(Constraint(tuple(coeffs), "=", _ONE))
    for j in s1:
        if j in s0_set:
            raise ValueError("s1 and s0 must be disjoint")
        coeffs = [_ZERO] * nvars
        coeffs[col[j]] = -_ONE
        coeffs[eps_col] = _ONE
        constraints.append(Constraint(tuple(coeffs), "<=", _ZERO))

    bounds = [(_ZERO, None)] * nq
    if joint:
        bounds.append((None, None))
    bounds.append((None, None))
    objective = [_ZERO] * nvars
    objective[eps_col] = _ONE
    outcome = solve_lp(
        LinearProgram(nvars, tuple(objective), tuple(constraints), tuple(bounds))
    )
    if outcome.status is not LpStatus.OPTIMAL or outcome.objective_value <= 0:
        return False, None, None
    padded = [_ZERO] * opp_count
    for y in keep:
        padded[y] = outcome.assignment[col[y]]
    if joint:
        u = outcome.assignment[u_col]
    else:
        u = sum(
            (_payoff(game, player, base, y) * padded[y] for y in keep if padded[y]),
            _ZERO,
        )
    return True, tuple(padded), u


def lp2_domain_check(
    game: Game,
    player: int,
    x: int,
    s1: tuple[int, ...],
    s0: tuple[int, ...],
) -> tuple[bool, MixedStrategy | None]:
    """Membership check behind domains: is there an opponent mixed strategy
    with positive probability on all of s1, zero on all of s0, to which `x`
    is a best response?

    With s0 the complement of s1 this decides exactly whether s1 belongs to
    the domain of `x`.
    """
    if not s1:
        raise ValueError("s1 must be non-empty")
    member, padded, _ = _best_response_region(game, player, (x,), tuple(s1), tuple(s0))
    if not member:
        return False, None
    return True, MixedStrategy(_opponent(player), padded)


def lp2_joint_domain_check(
    game: Game,
    player: int,
    xs: tuple[int, ...],
    s1: tuple[int, ...],
    s0: tuple[int, ...],
) -> tuple[bool, MixedStrategy | None]:
    """Common-witness variant of :func:`lp2_domain_check`: one opponent mixed
    strategy to which every strategy in `xs` is simultaneously a best
    response."""
    if not xs:
        raise ValueError("xs must be non-empty")
    if not s1:
        raise ValueError("s1 must be non-empty")
    member, padded, _ = _best_response_region(game, player, tuple(xs), tuple(s1), tuple(s0))
    if not member:
        return False, None
    return True, MixedStrategy(_opponent(player), padded)


@functools.lru_cache(maxsize=1 << 17)
def _fp1_cached(game: Game, rows: tuple[int, ...], cols: tuple[int, ...]):
    all_rows = range(game.m)
    all_cols = range(game.n)
    ok_q, q, u1 = _best_response_region(
        game, 1, rows, cols, tuple(y for y in all_cols if y not in cols)
    )
    if not ok_q:
        return False, None
    ok_p, p, u2 = _best_response_region(
        game, 2, cols, rows, tuple(x for x in all_rows if x not in rows)
    )
    if not ok_p:
        return False, None
    return True, (MixedStrategy(1, p), MixedStrategy(2, q), u1, u2)


def fp1_check(
    game: Game, support: SupportPair
) -> tuple[bool, tuple[MixedStrategy, MixedStrategy, Fraction, Fraction] | None]:
    """Feasibility check for a support pair.

    Searches for mixed strategies with supports exactly `support.rows` and
    `support.cols` satisfying the equilibrium equalities and inequalities:
    in-support pure strategies earn the common payoff, out-of-support ones
    earn no more, and every support probability is at least a maximized
    positive epsilon.  The program splits into two independent one-sided
    checks (the p-block and q-block share only epsilon), so each side is
    solved separately and the verdict is their conjunction.

    Returns (is_equilibrium, witness) with the witness padded by zeros at
    out-of-support indices.
    """
    if support.rows[-1] >= game.m or support.cols[-1] >= game.n:
        raise ValueError("support indices out of range for this game")
    return _fp1_cached(game, support.rows, support.cols)
