"""Numerical checks of the embedding on concrete constructions.

``check_theorem`` compares the evaluated meta-Fibonacci sequence against the
interleaved sequence it is supposed to reproduce.  ``trace_case`` breaks a
single evaluated term into its recurrence terms and checks that they behave
as the inductive argument needs: for odd ``n`` only the offset-2 term
survives and it lands on the odd slot with the same ``j``; for even ``n``
the offset-2 term vanishes and each weighted term lands on the even slot
with the same ``j``, reproducing the rotated recurrence.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

from .construct import Construction, decompose
from .metafib import SequenceDied, eval_prefix

VANISHES = "vanishes-negative"
ODD_SLOT = "lands-odd-slot"
EVEN_SLOT = "lands-even-slot"
FORWARD = "forward-reference"


@dataclass
class Report:
    passed: bool
    checked: int
    first_mismatch: dict | None = None
    death: dict | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "checked": self.checked,
            "first_mismatch": self.first_mismatch,
            "death": self.death,
        }


def _mismatch(c: Construction, n: int, expected: int, got: int) -> dict:
    m, j, odd = decompose(n, c.k)
    return {
        "n": n,
        "expected": expected,
        "got": got,
        "m": m,
        "j": j,
        "parity": "odd" if odd else "even",
    }


def evaluate(c: Construction, N: int) -> list[int]:
    return eval_prefix(c.target, c.initial, N)


def check_theorem(c: Construction, N: int) -> Report:
    """Evaluate ``N`` terms from the seed and compare with the interleaving."""
    if N <= c.h:
        raise ValueError(f"N={N} must exceed h={c.h}")
    try:
        values = evaluate(c, N)
    except SequenceDied as exc:
        return Report(False, N, death=exc.death.to_json())
    expected = c.q_prefix(N)
    for n, (want, got) in enumerate(zip(expected, values)):
        if want != got:
            return Report(False, N, first_mismatch=_mismatch(c, n, want, got))
    return Report(True, N)


def check_subsequence(c: Construction, N: int) -> Report:
    """Check ``R(2kn) == a[n]`` for ``0 <= n < N`` on the evaluated sequence."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    s = c.s
    try:
        values = evaluate(c, s * (N - 1) + 1)
    except SequenceDied as exc:
        return Report(False, N, death=exc.death.to_json())
    target = c.input.prefix(N)
    for n, (want, got) in enumerate(zip(target, values[::s])):
        if want != got:
            return Report(False, N, first_mismatch={"n": n, "index": s * n, "expected": want, "got": got})
    return Report(True, N)


@dataclass(frozen=True)
class TraceTerm:
    offset: int
    coefficient: int
    inner_index: int
    inner_value: int
    argument: int
    classification: str
    slot: tuple[int, int] | None
    contribution: int


@dataclass
class CaseTrace:
    n: int
    m: int
    j: int
    parity: str
    terms: list[TraceTerm]
    value: int
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)

    def format(self) -> str:
        lines = [f"M({self.n}) = {self.value}    [{self.parity} n = 2*{self.m}*k + 2*{self.j}"
                 + (" + 1]" if self.parity == "odd" else "]")]
        for t in self.terms:
            where = f" (m={t.slot[0]}, j={t.slot[1]})" if t.slot else ""
            lines.append(
                f"  offset {t.offset}: {t.coefficient} * M({self.n} - M({t.inner_index}))"
                f" = {t.coefficient} * M({self.n} - {t.inner_value})"
                f" = {t.coefficient} * M({t.argument}) -> {t.contribution}"
                f"   {t.classification}{where}"
            )
        for v in self.violations:
            lines.append(f"  VIOLATION: {v}")
        return "\n".join(lines)


class CasePatternError(AssertionError):
    def __init__(self, trace: CaseTrace):
        self.trace = trace
        super().__init__(f"n={trace.n}: " + "; ".join(trace.violations))


def _classify(arg: int, n: int, k: int):
    if arg < 0:
        return VANISHES, None
    if arg >= n:
        return FORWARD, None
    m, j, odd = decompose(arg, k)
    return (ODD_SLOT if odd else EVEN_SLOT), (m, j)


def trace_case(
    c: Construction, n: int, values: Sequence[int] | None = None, *, strict: bool = True
) -> CaseTrace:
    """Break ``R(n)`` into its recurrence terms and check the case pattern.

    ``values`` may hold an already evaluated prefix covering index ``n - 1``.
    With ``strict`` a CasePatternError is raised when any term deviates.
    """
    if n <= c.h:
        raise ValueError(f"n={n} must exceed h={c.h}")
    if values is None or len(values) < n:
        values = evaluate(c, n)
    k = c.k
    m, j, odd = decompose(n, k)
    terms = []
    violations = []
    for offset, coeff in c.target.active:
        inner = values[n - offset]
        arg = n - inner
        cls, slot = _classify(arg, n, k)
        contribution = coeff * values[arg] if cls in (ODD_SLOT, EVEN_SLOT) else 0
        terms.append(TraceTerm(offset, coeff, n - offset, inner, arg, cls, slot, contribution))

        label = f"offset {offset}"
        if cls == FORWARD:
            violations.append(f"{label} references M({arg}) at or beyond n")
        elif offset == 2:
            if odd and (cls != ODD_SLOT or slot[1] != j):
                violations.append(f"{label} should land on an odd slot with j={j}, got {cls} {slot}")
            if not odd and cls != VANISHES:
                violations.append(f"{label} should vanish for even n, got {cls} {slot}")
        else:
            i = (offset + 1) // 2
            if odd and cls != VANISHES:
                violations.append(f"{label} (b{i}) should vanish for odd n, got {cls} {slot}")
            if not odd:
                want_m = m - k + j - i if i <= j else m - i + j
                if cls != EVEN_SLOT or slot != (want_m, j):
                    violations.append(
                        f"{label} (b{i}) should land on even slot (m={want_m}, j={j}), got {cls} {slot}"
                    )

    trace = CaseTrace(
        n, m, j, "odd" if odd else "even", terms, sum(t.contribution for t in terms), violations
    )
    if strict and violations:
        raise CasePatternError(trace)
    return trace


def sweep_cases(c: Construction, upto: int, values: Sequence[int] | None = None) -> list[CaseTrace]:
    """Traces with violations for every ``h < n <= upto``."""
    if values is None or len(values) <= upto:
        values = evaluate(c, upto + 1)
    bad = []
    for n in range(c.h + 1, upto + 1):
        t = trace_case(c, n, values, strict=False)
        if t.violations:
            bad.append(t)
    return bad
