"""Walkthrough: the game model and exhaustive equilibrium enumeration.

Run from the repository root after `pip install -e .`:

    python demos/01_classic_games.py
"""

from fractions import Fraction

from nashcycles import (
    Game,
    MixedStrategy,
    eliminable_strategies,
    enumerate_by_supports,
    expected_payoffs,
    parse_game,
    verify_equilibrium,
    write_game,
)

# Games are plain text: a header `m n`, then matrix A row by row, then B.
# Entries may be integers, decimals, or p/q fractions -- all parsed exactly.
pd_text = """\
# Prisoner's Dilemma (row/column 1 = Cooperate, 2 = Defect)
2 2
3 0
5 1
3 5
0 1
"""
pd = parse_game(pd_text)
print("Prisoner's Dilemma:")
print(write_game(pd))

# The support-enumeration oracle tries every support pair of the game left
# after iterated elimination of strictly dominated strategies.
omega = enumerate_by_supports(pd)
for eq in omega.entries:
    print(f"  equilibrium: rows={eq.support.rows} cols={eq.support.cols} "
          f"payoffs=({eq.u1}, {eq.u2})")
rows, cols = eliminable_strategies(pd, omega)
print(f"  eliminable strategies (in no equilibrium): rows={rows} cols={cols}")
print()

# Battle of the Sexes has two pure equilibria and one mixed one; witnesses
# come back as exact rationals.
bos = Game.from_rows([[2, 0], [0, 1]], [[1, 0], [0, 2]])
print("Battle of the Sexes:")
for eq in enumerate_by_supports(bos).entries:
    print(f"  rows={eq.support.rows} cols={eq.support.cols} "
          f"p={eq.p.probs} q={eq.q.probs} u=({eq.u1}, {eq.u2})")
print()

# Expected payoffs are the exact bilinear form p^T A q, p^T B q.
p = MixedStrategy(1, (Fraction(2, 3), Fraction(1, 3)))
q = MixedStrategy(2, (Fraction(1, 3), Fraction(2, 3)))
print(f"BoS payoff at the mixed equilibrium: {expected_payoffs(bos, p, q)}")

# verify_equilibrium reports each violated best-response condition.
bad_p = MixedStrategy.pure(1, 0, 2)
bad_q = MixedStrategy.pure(2, 0, 2)
valid, report = verify_equilibrium(pd, bad_p, bad_q)
print(f"\n(Cooperate, Cooperate) valid in PD? {valid}")
for line in report:
    print(f"  {line}")
