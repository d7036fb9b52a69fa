"""Linear recurrent sequences of positive integers and their rotations.

All sequences are indexed from 0.  A recurrence of order ``k`` is seeded by
``a[0..k-1]`` and for ``n >= k`` satisfies ``a[n] = sum(b[i] * a[n-i])``.
The rotation by ``r`` keeps the same seed terms but cycles which lag each
coefficient is attached to.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Sequence, Union


class InvalidRecurrence(ValueError):
    """Raised when a recurrence violates one of its construction invariants."""


class CertificateError(ArithmeticError):
    """The growth bound fails at a directly checked index."""

    def __init__(self, m: int, value: int, bound: int):
        self.m = m
        self.value = value
        self.bound = bound
        super().__init__(f"growth bound fails at m={m}: a[{m - 1}] = {value} < {bound}")


class SearchCeilingExceeded(RuntimeError):
    """A bounded search ran past its ceiling. Indicates a bug, not a math failure."""


def _extend(terms: list[int], lag_coeffs: Sequence[int], n_terms: int) -> None:
    active = [(d, c) for d, c in enumerate(lag_coeffs, start=1) if c]
    for n in range(len(terms), n_terms):
        terms.append(sum(c * terms[n - d] for d, c in active))


class _PrefixCache:
    """Growable, lock-guarded table of already computed terms."""

    def __init__(self, initial: Sequence[int]):
        self.terms = list(initial)
        self.lock = threading.Lock()

    def get(self, lag_coeffs: Sequence[int], n_terms: int) -> list[int]:
        if len(self.terms) < n_terms:
            with self.lock:
                _extend(self.terms, lag_coeffs, n_terms)
        return self.terms[:n_terms]

    def term(self, lag_coeffs: Sequence[int], n: int) -> int:
        if len(self.terms) <= n:
            with self.lock:
                _extend(self.terms, lag_coeffs, n + 1)
        return self.terms[n]


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidRecurrence(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class LinearRecurrence:
    """``a[n] = b1*a[n-1] + ... + bk*a[n-k]`` seeded with ``a[0..k-1]``.

    Coefficients must be nonnegative with sum at least 2, and the seed terms
    positive; this is exactly what makes every rotation grow superlinearly.
    """

    k: int
    coeffs: tuple[int, ...]
    initial: tuple[int, ...]
    _cache: _PrefixCache = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "initial", tuple(self.initial))
        k = _as_int(self.k, "k")
        if k < 1:
            raise InvalidRecurrence(f"order k must be >= 1, got {k}")
        if len(self.coeffs) != k:
            raise InvalidRecurrence(
                f"length(coeffs) must equal k={k}, got {len(self.coeffs)}"
            )
        if len(self.initial) != k:
            raise InvalidRecurrence(
                f"length(initial) must equal k={k}, got {len(self.initial)}"
            )
        for i, b in enumerate(self.coeffs, start=1):
            if _as_int(b, f"coeffs[{i}]") < 0:
                raise InvalidRecurrence(f"coefficient b{i}={b} is negative")
        if sum(self.coeffs) < 2:
            raise InvalidRecurrence(
                f"coefficients must sum to at least 2, got {sum(self.coeffs)}"
            )
        for i, a in enumerate(self.initial):
            if _as_int(a, f"initial[{i}]") < 1:
                raise InvalidRecurrence(f"initial term a{i}={a} is not positive")
        object.__setattr__(self, "_cache", _PrefixCache(self.initial))

    @classmethod
    def from_lists(cls, coeffs: Sequence[int], initial: Sequence[int]) -> "LinearRecurrence":
        return cls(len(coeffs), tuple(coeffs), tuple(initial))

    @property
    def lag_coeffs(self) -> tuple[int, ...]:
        """Coefficient attached to lag 1, 2, ..., k."""
        return self.coeffs

    @property
    def r(self) -> int:
        return 0

    def prefix(self, n_terms: int) -> list[int]:
        return self._cache.get(self.lag_coeffs, n_terms)

    def term(self, n: int) -> int:
        return self._cache.term(self.lag_coeffs, n)

    def rotate(self, r: int) -> "RotatedRecurrence":
        return rotate(self, r)

    def to_json(self) -> dict:
        return {"k": self.k, "coeffs": list(self.coeffs), "initial": list(self.initial)}

    @classmethod
    def from_json(cls, obj) -> "LinearRecurrence":
        if not isinstance(obj, dict):
            raise InvalidRecurrence("linear recurrence must be a JSON object")
        missing = {"coeffs", "initial"} - obj.keys()
        if missing:
            raise InvalidRecurrence(f"missing field(s): {', '.join(sorted(missing))}")
        coeffs, initial = obj["coeffs"], obj["initial"]
        if not isinstance(coeffs, list) or not isinstance(initial, list):
            raise InvalidRecurrence("coeffs and initial must be arrays")
        return cls(obj.get("k", len(coeffs)), tuple(coeffs), tuple(initial))


@dataclass(frozen=True)
class RotatedRecurrence:
    """The ``r``-th rotation of ``base``.

    Coefficient ``b_i`` sits at lag ``i - r`` when ``i > r`` and at lag
    ``k + i - r`` otherwise.  Seed terms are shared with the base.
    """

    base: LinearRecurrence
    r: int
    _cache: _PrefixCache = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        k = self.base.k
        if isinstance(self.r, bool) or not isinstance(self.r, int) or not 0 <= self.r < k:
            raise InvalidRecurrence(f"rotation index must satisfy 0 <= r < {k}, got {self.r!r}")
        object.__setattr__(self, "_cache", _PrefixCache(self.base.initial))

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def initial(self) -> tuple[int, ...]:
        return self.base.initial

    @property
    def effective_lags(self) -> tuple[tuple[int, int], ...]:
        """``(b_i, lag)`` pairs in the order ``i = 1..k``."""
        k, r = self.k, self.r
        return tuple(
            (b, i - r if i > r else k + i - r)
            for i, b in enumerate(self.base.coeffs, start=1)
        )

    @property
    def lag_coeffs(self) -> tuple[int, ...]:
        out = [0] * self.k
        for b, lag in self.effective_lags:
            out[lag - 1] = b
        return tuple(out)

    def prefix(self, n_terms: int) -> list[int]:
        return self._cache.get(self.lag_coeffs, n_terms)

    def term(self, n: int) -> int:
        return self._cache.term(self.lag_coeffs, n)


AnyRecurrence = Union[LinearRecurrence, RotatedRecurrence]


def rotate(rec: LinearRecurrence, r: int) -> RotatedRecurrence:
    return RotatedRecurrence(rec, r)


def prefix(rec: AnyRecurrence, n_terms: int) -> list[int]:
    """First ``n_terms`` terms of ``rec`` as exact integers."""
    if n_terms < 0:
        raise ValueError(f"n_terms must be >= 0, got {n_terms}")
    return rec.prefix(n_terms)


def window_min(terms: Sequence[int], n: int, k: int) -> int:
    """``min(a[n-k+1..n])``, the smallest of the ``k`` most recent terms."""
    return min(terms[n - k + 1 : n + 1])


@dataclass(frozen=True)
class GrowthCertificate:
    """Proof that ``a[m-1] >= 2(m+1)k`` for every ``m >= m0``.

    ``window_min`` is ``L(n_star)`` and satisfies ``L(n_star) >= 2(n_star+k+2)k``.
    Because ``L`` never decreases and at least doubles every ``k`` steps, that
    threshold propagates to every index past ``n_star``; indices ``m0 <= m <=
    n_star + 1`` were checked one by one.
    """

    r: int
    k: int
    m0: int
    n_star: int
    window_min: int

    @property
    def threshold(self) -> int:
        return 2 * (self.n_star + self.k + 2) * self.k


def growth_bound(m: int, k: int) -> int:
    return 2 * (m + 1) * k


def growth_certificate(
    rec: AnyRecurrence, m0: int, *, max_index: int = 100_000
) -> GrowthCertificate:
    """Certify ``a[m-1] >= 2(m+1)k`` for all ``m >= m0``.

    Raises CertificateError at the first directly checked ``m`` where the
    bound fails.
    """
    if m0 < 1:
        raise ValueError(f"m0 must be >= 1, got {m0}")
    k = rec.k
    start = max(k - 1, m0 - 1)
    n = start
    while True:
        if n > max_index:
            raise SearchCeilingExceeded(f"no doubling threshold below index {max_index}")
        terms = rec.prefix(n + 1)
        if window_min(terms, n, k) >= 2 * (n + k + 2) * k:
            break
        n += 1
    n_star = n
    terms = rec.prefix(n_star + 1)
    for m in range(m0, n_star + 2):
        bound = growth_bound(m, k)
        if terms[m - 1] < bound:
            raise CertificateError(m, terms[m - 1], bound)
    return GrowthCertificate(rec.r, k, m0, n_star, window_min(terms, n_star, k))
