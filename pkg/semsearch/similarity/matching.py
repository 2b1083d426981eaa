"""Maximal nonrepeating matching between two neighbor sets.

Every maximal matching of an n x m weight matrix pairs min(n, m) elements, so
maximizing sum / (n + m - |M|) reduces to maximum-weight bipartite matching.
"""

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

IndexPair = Tuple[int, int]


@dataclass(frozen=True)
class MatchingProblem:
    """Rows are the j-neighbors of u, columns the j-neighbors of v."""

    weights: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]]) -> "MatchingProblem":
        array = np.asarray(rows, dtype=float)
        if array.ndim != 2:
            array = np.zeros((len(rows), 0))
        return cls(array)

    @property
    def shape(self) -> Tuple[int, int]:
        rows, cols = self.weights.shape
        return int(rows), int(cols)

    @property
    def is_empty(self) -> bool:
        return self.weights.size == 0


class Matching(NamedTuple):
    pairs: Tuple[IndexPair, ...]
    value: float
    exact: bool = True


def exact_matching(weights: np.ndarray) -> Tuple[IndexPair, ...]:
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return tuple((int(r), int(c)) for r, c in zip(rows, cols))


def greedy_matching(weights: np.ndarray) -> Tuple[IndexPair, ...]:
    """Repeatedly take the largest remaining weight whose row and column are free."""
    n_rows, n_cols = weights.shape
    # stable sort keeps row-major order among equal weights
    order = np.argsort(-weights, axis=None, kind="stable")
    used_rows = set()
    used_cols = set()
    pairs = []
    limit = min(n_rows, n_cols)
    for flat in order:
        r, c = divmod(int(flat), n_cols)
        if r in used_rows or c in used_cols:
            continue
        used_rows.add(r)
        used_cols.add(c)
        pairs.append((r, c))
        if len(pairs) == limit:
            break
    return tuple(sorted(pairs))


def max_matching_value(
    problem: Union[MatchingProblem, np.ndarray, Sequence[Sequence[float]]],
    exact_limit: int = 8,
) -> Matching:
    """Best maximal nonrepeating matching and its normalized value.

    Exact assignment is used while the smaller side has at most ``exact_limit``
    elements; above that the greedy matching is returned with ``exact=False``.
    """
    if not isinstance(problem, MatchingProblem):
        problem = (
            MatchingProblem(np.asarray(problem, dtype=float))
            if isinstance(problem, np.ndarray)
            else MatchingProblem.from_rows(problem)
        )
    if problem.is_empty:
        return Matching((), 0.0, True)

    weights = problem.weights
    n_rows, n_cols = problem.shape
    exact = min(n_rows, n_cols) <= exact_limit
    pairs = exact_matching(weights) if exact else greedy_matching(weights)
    total = float(sum(weights[r, c] for r, c in pairs))
    return Matching(pairs, total / (n_rows + n_cols - len(pairs)), exact)
