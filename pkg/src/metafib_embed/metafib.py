"""Evaluation of nested recurrences ``M(n) = sum c_i * M(n - M(n - i))``.

Any reference to an index below the start index ``n0`` reads as 0.  A term
whose outer argument ``n - M(n - i)`` is not strictly below ``n`` cannot be
evaluated; the sequence dies there.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence


class InvalidMetaRecurrence(ValueError):
    pass


@dataclass(frozen=True)
class MetaFibRecurrence:
    """Coefficients ``c_1..c_K`` over inner offsets ``1..K`` plus start index."""

    coeffs: tuple[int, ...]
    n0: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if isinstance(self.n0, bool) or not isinstance(self.n0, int):
            raise InvalidMetaRecurrence(f"n0 must be an integer, got {self.n0!r}")
        if not self.coeffs:
            raise InvalidMetaRecurrence("K must be >= 1 (empty coefficient list)")
        for i, c in enumerate(self.coeffs, start=1):
            if isinstance(c, bool) or not isinstance(c, int) or c < 0:
                raise InvalidMetaRecurrence(f"coefficient c{i}={c!r} must be a nonnegative integer")
        if sum(self.coeffs) < 1:
            raise InvalidMetaRecurrence("at least one coefficient must be positive")

    @property
    def K(self) -> int:
        return len(self.coeffs)

    @property
    def active(self) -> list[tuple[int, int]]:
        """``(offset, coefficient)`` for every positive coefficient."""
        return [(i, c) for i, c in enumerate(self.coeffs, start=1) if c]


@dataclass(frozen=True)
class InitialCondition:
    start: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise InvalidMetaRecurrence("initial condition must be nonempty")
        for t, v in enumerate(self.values):
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidMetaRecurrence(f"initial value {v!r} is not an integer")
            if v < 0:
                raise InvalidMetaRecurrence(
                    f"initial value M({self.start + t})={v} is negative"
                )


@dataclass(frozen=True)
class Death:
    """Where and why evaluation became impossible."""

    n: int
    offset: int
    inner_index: int
    inner_value: int
    argument: int

    def to_json(self) -> dict:
        return asdict(self)


class SequenceDied(Exception):
    """Evaluation hit a term that references ``M(m)`` with ``m >= n``.

    ``prefix`` holds the values that were computed before the failing index.
    """

    def __init__(self, death: Death, prefix: Sequence[int] = ()):
        self.death = death
        self.prefix = list(prefix)
        super().__init__(
            f"M({death.n}) needs M({death.argument}): offset {death.offset} "
            f"reads M({death.inner_index}) = {death.inner_value}"
        )


class OracleBudgetExceeded(RuntimeError):
    """The recursive oracle needed a deeper stack than it was allowed."""


def _check_inputs(rec: MetaFibRecurrence, init: InitialCondition, N: int) -> None:
    if init.start != rec.n0:
        raise InvalidMetaRecurrence(
            f"initial condition starts at {init.start}, recurrence at n0={rec.n0}"
        )
    if len(init.values) < rec.K:
        raise InvalidMetaRecurrence(
            f"initial condition has {len(init.values)} values, needs at least K={rec.K}"
        )
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")


def eval_prefix(rec: MetaFibRecurrence, init: InitialCondition, N: int) -> list[int]:
    """``M(n0), ..., M(n0 + N - 1)``, evaluated left to right.

    Raises SequenceDied at the first index whose evaluation would need a
    value at or beyond itself.
    """
    _check_inputs(rec, init, N)
    n0 = rec.n0
    active = rec.active
    vals = list(init.values[:N])
    for t in range(len(vals), N):
        n = n0 + t
        total = 0
        for i, c in active:
            inner = vals[t - i]
            arg_t = t - inner
            if arg_t >= t:
                raise SequenceDied(Death(n, i, n - i, inner, n - inner), vals)
            if arg_t >= 0:
                total += c * vals[arg_t]
        vals.append(total)
    return vals


def eval_oracle(
    rec: MetaFibRecurrence, init: InitialCondition, N: int, *, budget: int = 1_000_000
) -> list[int]:
    """Same function as eval_prefix, computed on demand from the top down.

    The last requested value is forced first through an explicit stack of
    in-progress indices; remaining indices are then forced in increasing
    order so that the reported death is the earliest one.
    """
    _check_inputs(rec, init, N)
    n0 = rec.n0
    seeded = {n0 + t: v for t, v in enumerate(init.values)}
    memo: dict[int, int] = {}
    active = rec.active

    def lookup(p: int) -> int | None:
        if p < n0:
            return 0
        if p in seeded:
            return seeded[p]
        return memo.get(p)

    def missing_or_value(n: int):
        inners = []
        for i, c in active:
            inner = lookup(n - i)
            if inner is None:
                return n - i, None
            inners.append((i, c, inner))
        total = 0
        for i, c, inner in inners:
            arg = n - inner
            if arg >= n or arg in in_progress:
                raise SequenceDied(Death(n, i, n - i, inner, arg))
        for i, c, inner in inners:
            outer = lookup(n - inner)
            if outer is None:
                return n - inner, None
            total += c * outer
        return None, total

    # chain of indices currently being forced; each one is below its parent
    in_progress: set[int] = set()

    def force(target: int) -> int:
        stack = [target]
        in_progress.clear()
        in_progress.add(target)
        while stack:
            n = stack[-1]
            if lookup(n) is None:
                missing, value = missing_or_value(n)
                if missing is not None:
                    stack.append(missing)
                    in_progress.add(missing)
                    if len(stack) > budget:
                        raise OracleBudgetExceeded(
                            f"in-progress chain exceeded {budget} indices"
                        )
                    continue
                memo[n] = value
            stack.pop()
            in_progress.discard(n)
        return lookup(target)

    out: list[int] = []
    if N == 0:
        return out
    try:
        force(n0 + N - 1)
    except SequenceDied:
        pass
    for n in range(n0, n0 + N):
        try:
            out.append(force(n))
        except SequenceDied as exc:
            raise SequenceDied(exc.death, out) from None
    return out


def extract_subsequence(seq: Sequence[int], stride: int, offset: int = 0) -> list:
    """``seq[offset], seq[offset + stride], ...``"""
    if stride < 1:
        raise ValueError(f"stride must be positive, got {stride}")
    if not 0 <= offset < len(seq):
        raise ValueError(f"offset {offset} outside sequence of length {len(seq)}")
    return list(seq[offset::stride])
