"""Named-state transition matrices, period-of-day indexing and seeded sampling."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigError, UnknownStateError

ROW_SUM_TOL = 1e-9
RENORMALIZE_TOL = 1e-6
SECONDS_PER_DAY = 86400
MAX_SEED = 2**64 - 1


class RandomSource:
    """Seeded random stream used by every stochastic step of a simulation.

    Backed by the stdlib Mersenne Twister (``random.Random``). Draw sequences
    are reproducible for a given seed within this implementation.
    """

    ALGORITHM = "mt19937/stdlib-v1"

    def __init__(self, seed: int):
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed <= MAX_SEED:
            raise ConfigError(f"seed must be an integer in [0, 2**64), got {seed!r}")
        self.seed = seed
        self._rng = random.Random(seed)

    def uniform(self) -> float:
        """Uniform real in [0, 1)."""
        return self._rng.random()

    def normal(self) -> float:
        return self._rng.gauss(0.0, 1.0)

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n < 1:
            raise ValueError("n must be >= 1")
        return self._rng.randrange(n)

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, algorithm={self.ALGORITHM!r})"


@dataclass(frozen=True)
class Violation:
    kind: str  # shape | range | row-sum | duplicate-label | empty-label
    row: int | None
    detail: str

    def __str__(self) -> str:
        where = f"row {self.row}" if self.row is not None else "matrix"
        return f"{where}: {self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True)
class TransitionMatrix:
    """Square matrix of transition probabilities over an ordered list of states.

    ``rows[i][j]`` is the probability of moving from ``states[i]`` to
    ``states[j]``. Construction does not validate; use :func:`validate_matrix`.
    """

    states: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _cumulative: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "rows", tuple(tuple(float(p) for p in row) for row in self.rows))
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})
        object.__setattr__(self, "_cumulative", tuple(_cumsum(row) for row in self.rows))

    @classmethod
    def from_rows(cls, states: Sequence[str], rows, renormalize_tol: float = RENORMALIZE_TOL) -> "TransitionMatrix":
        """Build a matrix, renormalizing rows whose sum is within ``renormalize_tol`` of 1."""
        fixed = []
        for row in rows:
            row = [float(p) for p in row]
            total = math.fsum(row)
            if total > 0 and abs(total - 1.0) <= renormalize_tol:
                row = [p / total for p in row]
            fixed.append(row)
        return cls(tuple(states), tuple(tuple(r) for r in fixed))

    @classmethod
    def uniform(cls, states: Sequence[str]) -> "TransitionMatrix":
        n = len(states)
        return cls(tuple(states), tuple(tuple(1.0 / n for _ in range(n)) for _ in range(n)))

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, state: str) -> int:
        try:
            return self._index[state]
        except KeyError:
            raise UnknownStateError(state) from None

    def row(self, state: str) -> tuple[float, ...]:
        return self.rows[self.index(state)]

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)


def _cumsum(row: Sequence[float]) -> tuple[float, ...]:
    out = []
    acc = 0.0
    for p in row:
        acc += p
        out.append(acc)
    return tuple(out)


def validate_matrix(m: TransitionMatrix) -> ValidationReport:
    violations: list[Violation] = []
    n = len(m.states)

    seen: set[str] = set()
    for s in m.states:
        if not isinstance(s, str) or not s.strip():
            violations.append(Violation("empty-label", None, f"state label {s!r} is empty"))
        elif s in seen:
            violations.append(Violation("duplicate-label", None, f"state label {s!r} appears more than once"))
        seen.add(s)

    if n == 0:
        violations.append(Violation("shape", None, "matrix has no states"))
    if len(m.rows) != n:
        violations.append(Violation("shape", None, f"{len(m.rows)} rows for {n} states"))
    for i, row in enumerate(m.rows):
        if len(row) != n:
            violations.append(Violation("shape", i, f"{len(row)} columns for {n} states"))
            continue
        for j, p in enumerate(row):
            if not (0.0 <= p <= 1.0):
                violations.append(Violation("range", i, f"entry {j} = {p!r} outside [0, 1]"))
        total = math.fsum(row)
        if not abs(total - 1.0) <= ROW_SUM_TOL:
            violations.append(Violation("row-sum", i, f"row-sum={total:.12g}"))
    return ValidationReport(tuple(violations))


def draw_index(cumulative: Sequence[float], u: float) -> int:
    """Inverse-CDF walk: first column whose cumulative mass exceeds ``u``.

    Falls back to the last column carrying mass when rounding leaves the
    final cumulative value just below ``u``.
    """
    for j, c in enumerate(cumulative):
        if c > u:
            return j
    prev = 0.0
    last = len(cumulative) - 1
    for j, c in enumerate(cumulative):
        if c > prev:
            last = j
        prev = c
    return last


def sample_next(m: TransitionMatrix, current: str, rng: RandomSource) -> str:
    i = m.index(current)
    return m.states[draw_index(m._cumulative[i], rng.uniform())]


def check_period_hours(period_hours: int) -> int:
    if isinstance(period_hours, bool) or not isinstance(period_hours, (int, np.integer)):
        raise ConfigError(f"period length must be an integer number of hours, got {period_hours!r}")
    if not 1 <= period_hours <= 24 or 24 % period_hours:
        raise ConfigError(f"period length {period_hours} h does not divide the 24 h day")
    return int(period_hours)


def period_index(time_of_day: int | float, period_hours: int) -> int:
    check_period_hours(period_hours)
    if not 0 <= time_of_day < SECONDS_PER_DAY:
        raise ValueError(f"time of day {time_of_day} outside [0, 86400)")
    return int(time_of_day // (3600 * period_hours))


@dataclass(frozen=True)
class ChainSet:
    """One transition matrix per period; period ``p`` covers hours [p*h, (p+1)*h)."""

    period_hours: int
    chains: tuple[TransitionMatrix, ...]

    def __post_init__(self):
        check_period_hours(self.period_hours)
        object.__setattr__(self, "chains", tuple(self.chains))
        expected = 24 // self.period_hours
        if len(self.chains) != expected:
            raise ConfigError(f"{self.period_hours} h periods need {expected} chains, got {len(self.chains)}")
        states = self.chains[0].states
        for p, chain in enumerate(self.chains[1:], start=1):
            if chain.states != states:
                raise ConfigError(f"chain {p} state list differs from chain 0")

    @property
    def states(self) -> tuple[str, ...]:
        return self.chains[0].states

    @property
    def n_periods(self) -> int:
        return len(self.chains)

    def chain_at(self, time_of_day: int | float) -> TransitionMatrix:
        return self.chains[period_index(time_of_day, self.period_hours)]
