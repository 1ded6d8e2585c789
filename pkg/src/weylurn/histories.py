"""Exact counting of urn histories.

Two independent routes produce the history counts G[n, l->k]: repeated
operator action on monomials (fast), and an explicit search over labelled
balls (slow, used as a cross-check oracle).  History tables also fall out
of normal-form coefficient polynomials, and every table row normalizes to
exact transition probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .algebra import Process, act_process
from .poly import BiPoly, as_fraction

__all__ = [
    "BudgetExceededError",
    "HistoryTable",
    "NonIntegerWeightError",
    "ProbabilityRow",
    "UndefinedRowError",
    "count_by_operator",
    "count_by_search",
    "history_counts_from_normal_form",
    "probabilities",
]

DEFAULT_SEARCH_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """The labelled-ball search would exceed its node budget."""

    def __init__(self, budget: int):
        super().__init__(f"search exceeded the budget of {budget} nodes")
        self.budget = budget


class NonIntegerWeightError(ValueError):
    """A scaled weight is not an integer, so it cannot count term copies."""


class UndefinedRowError(ValueError):
    """A start size with no histories at all; probabilities are undefined."""


@dataclass(frozen=True)
class HistoryTable:
    """Counts (l, k) -> number of n-step histories from l balls to k balls.

    Zero entries are never stored.  `n` is None for tables extracted from a
    bare coefficient polynomial whose power is not known.
    """

    counts: dict[tuple[int, int], object] = field(default_factory=dict)
    n: int | None = None

    @classmethod
    def from_rows(cls, rows: dict[int, dict[int, object]], n: int | None = None) -> HistoryTable:
        counts = {(l, k): c for l, row in rows.items() for k, c in row.items() if c}
        return cls(counts=counts, n=n)

    def row(self, l: int) -> dict[int, object]:
        return {k: c for (ll, k), c in self.counts.items() if ll == l}


@dataclass(frozen=True)
class ProbabilityRow:
    """Exact transition probabilities k -> P[n, l->k]; they sum to 1."""

    l: int
    probs: dict[int, Fraction]
    n: int | None = None


def count_by_operator(h: Process, n: int, l: int) -> dict[int, Fraction]:
    """History counts via n-fold operator action on x^l.

    The coefficient of x^k after applying h to x^l n times is the number
    of n-step histories from l to k balls (rational when weights are).
    """
    if n < 0 or l < 0:
        raise ValueError("n and l must be nonnegative")
    cur: dict[int, Fraction] = {l: Fraction(1)}
    for _ in range(n):
        cur = act_process(h, cur)
    return cur


def count_by_search(
    h: Process,
    n: int,
    l: int,
    weight_scale: int = 1,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> dict[int, int]:
    """History counts by exhaustive search over labelled balls.

    Balls carry distinct integer labels and withdrawn labels are retired.
    Each step branches over the process terms with multiplicity equal to
    the scaled integer weight; within a word, each D branches over every
    ball present and each X inserts a freshly labelled ball.  The result
    equals count_by_operator scaled by weight_scale**n.

    Raises NonIntegerWeightError if some scaled weight is not an integer
    and BudgetExceededError when the tree has more than `budget` nodes.
    """
    if n < 0 or l < 0:
        raise ValueError("n and l must be nonnegative")
    scale = as_fraction(weight_scale)
    if scale <= 0 or scale.denominator != 1:
        raise ValueError(f"weight_scale must be a positive integer, got {weight_scale!r}")

    programs: list[str] = []  # reversed words, one copy per unit of weight
    for word, weight in h.terms.items():
        scaled = weight * scale
        if scaled.denominator != 1:
            raise NonIntegerWeightError(
                f"weight {weight} of {word!r} stays non-integer under scale {weight_scale}"
            )
        programs.extend([word.letters[::-1]] * int(scaled))

    counts: dict[int, int] = {}
    urn = list(range(l))
    state = [l, 0]  # next fresh label, nodes visited

    def run_ops(ops: str, idx: int, steps_left: int) -> None:
        state[1] += 1
        if state[1] > budget:
            raise BudgetExceededError(budget)
        if idx == len(ops):
            take_step(steps_left)
            return
        if ops[idx] == "X":
            urn.append(state[0])
            state[0] += 1
            run_ops(ops, idx + 1, steps_left)
            state[0] -= 1
            urn.pop()
        else:
            # one branch per ball; an empty urn kills the branch entirely
            for pos in range(len(urn)):
                ball = urn.pop(pos)
                run_ops(ops, idx + 1, steps_left)
                urn.insert(pos, ball)

    def take_step(steps_left: int) -> None:
        if steps_left == 0:
            counts[len(urn)] = counts.get(len(urn), 0) + 1
            return
        for ops in programs:
            run_ops(ops, 0, steps_left - 1)

    take_step(n)
    return counts


def history_counts_from_normal_form(
    b: BiPoly, l_max: int, k_max: int, n: int | None = None
) -> HistoryTable:
    """History counts from the coefficient polynomial of a power.

    The generating function of an n-step table is b * e^(xy); extracting
    the x^k y^l coefficient gives G[l->k] = l! * sum_j b[k-j, l-j] / j!.
    """
    counts: dict[tuple[int, int], object] = {}
    for l in range(l_max + 1):
        l_fact = factorial(l)
        for k in range(k_max + 1):
            total = Fraction(0)
            for j in range(min(k, l) + 1):
                c = b[k - j, l - j]
                if c:
                    total += c / factorial(j)
            total *= l_fact
            if total:
                counts[(l, k)] = int(total) if total.denominator == 1 else total
    return HistoryTable(counts=counts, n=n)


def probabilities(t: HistoryTable, l: int) -> ProbabilityRow:
    """Normalize row l of a history table to exact probabilities.

    Raises UndefinedRowError when the process admits no history from l
    balls at all (e.g. a pure withdrawal acting on an empty urn).
    """
    row = t.row(l)
    total = sum(Fraction(c) for c in row.values())
    if not total:
        raise UndefinedRowError(f"no histories start from urn size {l}")
    return ProbabilityRow(l=l, probs={k: Fraction(c) / total for k, c in row.items()}, n=t.n)
