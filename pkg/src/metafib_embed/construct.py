"""Embedding a linear recurrent sequence into a meta-Fibonacci sequence.

For a recurrence of order ``k`` with coefficients ``b_1..b_k`` the target
sequence interleaves the ``k`` rotations on even slots with constants on
odd slots::

    q[2mk + 2j]     = rotation_j[m]
    q[2mk + 2j + 1] = 2k(k - j)          (0 <= j < k)

and it eventually satisfies

    M(n) = M(n - M(n-2)) + sum_i b_i * M(n - M(n - (2i - 1)))

so the input sequence reappears as ``q[2kn]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .linrec import (
    CertificateError,
    GrowthCertificate,
    LinearRecurrence,
    RotatedRecurrence,
    SearchCeilingExceeded,
    growth_certificate,
    rotate,
)
from .metafib import InitialCondition, MetaFibRecurrence


class HCheck(NamedTuple):
    ok: bool
    reason: str
    certificates: tuple[GrowthCertificate, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def build_meta_recurrence(rec: LinearRecurrence) -> MetaFibRecurrence:
    k = rec.k
    coeffs = [0] * max(2, 2 * k - 1)
    coeffs[2 - 1] += 1
    for i, b in enumerate(rec.coeffs, start=1):
        coeffs[2 * i - 1 - 1] += b
    return MetaFibRecurrence(tuple(coeffs), 0)


def decompose(n: int, k: int) -> tuple[int, int, int]:
    """Write ``n = 2mk + 2j + parity`` and return ``(m, j, parity)``."""
    m, rem = divmod(n, 2 * k)
    return m, rem // 2, rem % 2


def odd_slot_value(k: int, j: int) -> int:
    return 2 * k * (k - j)


def min_h_bound(k: int) -> int:
    """Smallest ``h`` allowed before any growth condition is considered."""
    return max(2, 2 * k * k - 1)


def growth_start(h: int, k: int) -> int:
    """Smallest block index ``m`` of any ``n > h``."""
    return (h + 1) // (2 * k)


def is_valid_h(rec: LinearRecurrence, h: int, rotations=None) -> HCheck:
    """Check whether ``q[0..h]`` is a long enough seed for the construction.

    Requires ``h >= 2``, ``h >= 2k^2 - 1`` (so every ``n > h`` lies in block
    ``m >= k``) and a growth certificate for every rotation starting at the
    smallest block index ``m`` reachable from ``n > h``.
    """
    k = rec.k
    if h < 2:
        return HCheck(False, f"h={h} violates h >= 2")
    if h < 2 * k * k - 1:
        return HCheck(False, f"h={h} violates h >= 2k^2-1 = {2 * k * k - 1}")
    if rotations is None:
        rotations = [rotate(rec, r) for r in range(k)]
    m0 = growth_start(h, k)
    certs = []
    for rot in rotations:
        try:
            certs.append(growth_certificate(rot, m0))
        except CertificateError as exc:
            return HCheck(
                False,
                f"h={h}: rotation {rot.r} fails growth bound from m0={m0}: {exc}",
            )
    return HCheck(True, "ok", tuple(certs))


def find_h(rec: LinearRecurrence, rotations=None, *, max_m0: int = 100_000) -> int:
    """The minimal ``h`` accepted by :func:`is_valid_h`."""
    k = rec.k
    if rotations is None:
        rotations = [rotate(rec, r) for r in range(k)]
    # a certificate from m0 implies one from any larger m0, so scan m0 upward
    m0 = 1
    for rot in rotations:
        while True:
            if m0 > max_m0:
                raise SearchCeilingExceeded(f"no valid h with block index below {max_m0}")
            try:
                growth_certificate(rot, m0)
                break
            except CertificateError as exc:
                m0 = exc.m + 1
    h = max(min_h_bound(k), 2 * k * m0 - 1)
    assert is_valid_h(rec, h, rotations), h
    return h


@dataclass(frozen=True)
class Construction:
    input: LinearRecurrence
    rotations: tuple[RotatedRecurrence, ...]
    h: int
    target: MetaFibRecurrence
    initial: InitialCondition
    certificates: tuple[GrowthCertificate, ...] = ()

    @property
    def k(self) -> int:
        return self.input.k

    @property
    def s(self) -> int:
        """Quasi-period: ``q[s*n]`` is the n-th input term."""
        return 2 * self.input.k

    def term(self, n: int) -> int:
        return interleaved_term(self, n)

    def q_prefix(self, n_terms: int) -> list[int]:
        return _interleave(self.rotations, n_terms)

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "s": self.s,
            "h": self.h,
            "meta": {
                "n0": self.target.n0,
                "coeffs": list(self.target.coeffs),
                "initial": list(self.initial.values),
            },
        }


def _interleave(rotations, n_terms: int) -> list[int]:
    k = len(rotations)
    blocks = -(-n_terms // (2 * k))
    rows = [rot.prefix(blocks) for rot in rotations]
    out = []
    for n in range(n_terms):
        m, j, odd = decompose(n, k)
        out.append(odd_slot_value(k, j) if odd else rows[j][m])
    return out


def interleaved_term(c: Construction, n: int) -> int:
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    m, j, odd = decompose(n, c.k)
    if odd:
        return odd_slot_value(c.k, j)
    return c.rotations[j].term(m)


def build(rec: LinearRecurrence, h: int | None = None) -> Construction:
    """Assemble the construction for ``rec``; ``h`` defaults to the minimal one."""
    rotations = tuple(rotate(rec, r) for r in range(rec.k))
    if h is None:
        h = find_h(rec, rotations)
    check = is_valid_h(rec, h, rotations)
    if not check:
        raise ValueError(check.reason)
    target = build_meta_recurrence(rec)
    init = InitialCondition(0, tuple(_interleave(rotations, h + 1)))
    return Construction(rec, rotations, h, target, init, check.certificates)


def construction_from_json(obj) -> Construction:
    """Rebuild a construction from its JSON bundle.

    The stored ``h`` and initial values are taken as given and not
    re-validated, so a hand-edited bundle can be checked numerically.
    """
    if not isinstance(obj, dict) or not {"input", "h", "meta"} <= obj.keys():
        raise ValueError("construction bundle needs 'input', 'h' and 'meta'")
    rec = LinearRecurrence.from_json(obj["input"])
    meta = obj["meta"]
    target = MetaFibRecurrence(tuple(meta["coeffs"]), meta.get("n0", 0))
    initial = InitialCondition(target.n0, tuple(meta["initial"]))
    if "s" in obj and obj["s"] != 2 * rec.k:
        raise ValueError(f"bundle s={obj['s']} disagrees with 2k={2 * rec.k}")
    rotations = tuple(rotate(rec, r) for r in range(rec.k))
    return Construction(rec, rotations, int(obj["h"]), target, initial)
