"""Conditional-independence testers and Markov boundaries.

A tester answers queries "is x independent of y given the set z?" and
counts how many distinct queries it has evaluated, so search procedures
can report their test complexity.  Two implementations: a graph oracle
(membership of the true graph's separation relation) and a Fisher-z test
on a data matrix.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np
from scipy.stats import norm

from .errors import CiNumericalError
from .graph import bits, m_separated, mask_of


class CiTester(ABC):
    """Conditional-independence query interface.

    ``test(x, y, z)`` returns True for independence.  Queries are
    symmetric in (x, y).  ``query_count`` is the number of distinct
    queries evaluated so far (repeat queries are served from a cache and
    do not recount).
    """

    def __init__(self, n):
        self.n = n
        self.query_count = 0
        self._cache = {}

    def test(self, x, y, z=0):
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise ValueError(f"endpoints ({x}, {y}) out of range")
        if x == y:
            raise ValueError("endpoints must differ")
        if z & ((1 << x) | (1 << y)):
            raise ValueError("conditioning set must exclude the endpoints")
        if z >> self.n:
            raise ValueError("conditioning set out of range")
        if x > y:
            x, y = y, x
        key = (x, y, z)
        got = self._cache.get(key)
        if got is None:
            got = self._evaluate(x, y, z)
            self._cache[key] = got
            self.query_count += 1
        return got

    @abstractmethod
    def _evaluate(self, x, y, z):
        ...


class OracleCiTester(CiTester):
    """Answers queries from m-separation in a known graph."""

    def __init__(self, graph):
        super().__init__(graph.n)
        self.graph = graph

    def _evaluate(self, x, y, z):
        return m_separated(self.graph, x, y, z)


class DataMatrix:
    """Sample matrix (rows are observations) with a cached correlation."""

    def __init__(self, values, names=None):
        values = np.asarray(values, dtype=float)
        if values.ndim != 2:
            raise ValueError("data must be two-dimensional")
        self.values = values
        if names is not None:
            names = tuple(names)
            if len(names) != values.shape[1]:
                raise ValueError("names length must match column count")
        self.names = names
        self._corr = None

    @property
    def num_samples(self):
        return self.values.shape[0]

    @property
    def num_vars(self):
        return self.values.shape[1]

    @property
    def correlation(self):
        if self._corr is None:
            self._corr = np.corrcoef(self.values, rowvar=False)
        return self._corr


class FisherZCiTester(CiTester):
    """Partial-correlation test for jointly Gaussian data.

    The partial correlation of x and y given z comes from the inverse of
    the correlation submatrix on (x, y, *z); the z-statistic
    ``0.5 * log((1+r)/(1-r)) * sqrt(N - |z| - 3)`` is compared against the
    two-sided normal quantile at level ``alpha``.
    """

    def __init__(self, data, alpha=0.01):
        if not isinstance(data, DataMatrix):
            data = DataMatrix(data)
        super().__init__(data.num_vars)
        if not 0 < alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        self.data = data
        self.alpha = alpha
        self._threshold = norm.ppf(1 - alpha / 2)

    def _evaluate(self, x, y, z):
        num_cond = z.bit_count()
        n_samples = self.data.num_samples
        if n_samples <= num_cond + 3:
            raise ValueError(
                f"need more than |z| + 3 = {num_cond + 3} samples, "
                f"have {n_samples}")
        idx = [x, y, *bits(z)]
        sub = self.data.correlation[np.ix_(idx, idx)]
        try:
            prec = np.linalg.inv(sub)
        except np.linalg.LinAlgError as exc:
            raise CiNumericalError(
                "singular correlation submatrix",
                query=(x, y, set(bits(z)))) from exc
        denom = prec[0, 0] * prec[1, 1]
        if not np.isfinite(denom) or denom <= 0:
            raise CiNumericalError(
                "ill-conditioned correlation submatrix",
                query=(x, y, set(bits(z))))
        r = -prec[0, 1] / np.sqrt(denom)
        r = min(max(r, -1 + 1e-12), 1 - 1e-12)
        stat = 0.5 * np.log((1 + r) / (1 - r)) * \
            np.sqrt(n_samples - num_cond - 3)
        return bool(abs(stat) <= self._threshold)


def markov_boundaries(tester, vs=None):
    """Markov boundary of every vertex in ``vs`` (a bitmask) by the
    total-conditioning rule: y belongs to Mb(x) exactly when x and y are
    dependent given all other variables of ``vs``.

    Returns a dict mapping each vertex of ``vs`` to a bitmask.  One query
    per unordered pair; the relation is symmetric by construction.
    """
    if vs is None:
        vs = (1 << tester.n) - 1
    members = list(bits(vs))
    mb = {v: 0 for v in members}
    for i, x in enumerate(members):
        for y in members[i + 1:]:
            rest = vs & ~(1 << x) & ~(1 << y)
            if not tester.test(x, y, rest):
                mb[x] |= 1 << y
                mb[y] |= 1 << x
    return mb
