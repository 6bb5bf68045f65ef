"""Residues of d(n) modulo m and detection of their long-run pattern.

Two patterns are looked for. "periodic-from-1": the residues of d(1), d(2),
... repeat with a fixed period (d(0) is left out of the scan). "finite-support":
every residue after some index is zero. Both are read off a finite window,
so a report is empirical evidence only and records the window it used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .sequences import DTable

MIN_WINDOW = 16
DEFAULT_WINDOW = 200

PERIODIC = "periodic-from-1"
FINITE = "finite-support"
INCONCLUSIVE = "inconclusive"

# Residue patterns conjectured for d(n), as published. Periodic blocks start
# at n = 1; finite prefixes start at n = 0.
PUBLISHED_PERIODIC = {
    5: (1, 4),
    13: (1, 12, 12, 4, 9, 9, 3, 10, 10, 12, 1, 1, 9, 4, 4, 10, 3, 3),
    17: (1, 16, 0, 16, 15, 2, 0, 2, 4, 13, 0, 13,
         9, 8, 0, 8, 16, 1, 0, 1, 2, 15, 0, 15, 13, 4, 0, 4, 8, 9, 0, 9),
}
PUBLISHED_FINITE = {
    3: (1, 1, 2),
    7: (1, 1, 6, 2, 2, 2, 1, 0, 3, 0, 6, 0, 6),
    11: (1, 1, 10, 7, 2, 3, 10, 7, 1, 1, 2, 0, 6, 2, 0, 1, 5, 0,
         9, 9, 0, 1, 0, 0, 1, 0, 0, 8, 0, 0, 10),
}
PUBLISHED_MODULI = (3, 5, 7, 11, 13, 17)


class WindowTooSmall(ValueError):
    pass


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    p = 2
    while p * p <= m:
        if m % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class CongruenceReport:
    modulus: int
    residues: tuple
    classification: str
    period: int | None = None
    period_start: int | None = None
    last_nonzero: int | None = None
    window: int = 0
    notes: tuple = field(default=())

    @property
    def experimental(self) -> bool:
        return not _is_prime(self.modulus)

    @property
    def pattern(self) -> tuple:
        """Repeating block for a periodic stream, nonzero prefix for a finite one."""
        if self.classification == PERIODIC:
            s = self.period_start
            return tuple(self.residues[s : s + self.period])
        if self.classification == FINITE:
            return tuple(self.residues[: self.last_nonzero + 1])
        return ()

    def as_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "classification": self.classification,
            "period": self.period,
            "period_start": self.period_start,
            "last_nonzero": self.last_nonzero,
            "window": self.window,
            "pattern": list(self.pattern),
            "residues": list(self.residues),
            "experimental": self.experimental,
            "empirical": True,
            "notes": list(self.notes),
        }


def residue_stream(dtable: DTable, m: int) -> list[int]:
    """d(n) mod m in [0, m) for n = 0..n_max."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return [x % m for x in dtable.d]


def _minimal_period(residues, start: int, max_period: int) -> int | None:
    n = len(residues)
    for p in range(1, max_period + 1):
        if all(residues[i] == residues[i + p] for i in range(start, n - p)):
            return p
    return None


def detect_pattern(residues, modulus: int) -> CongruenceReport:
    residues = tuple(residues)
    if len(residues) < MIN_WINDOW:
        raise WindowTooSmall(f"need at least {MIN_WINDOW} residues, got {len(residues)}")
    window = len(residues) - 1
    cap = window // 3
    notes = []
    if not _is_prime(modulus):
        notes.append("composite modulus: classification is experimental")

    nonzero = [i for i, r in enumerate(residues) if r]
    last = nonzero[-1] if nonzero else -1
    if window - last >= max(cap, 1):
        return CongruenceReport(
            modulus, residues, FINITE, last_nonzero=last, window=window,
            notes=tuple(notes + [f"zero from n={last + 1} through n={window}"]),
        )
    period = _minimal_period(residues, 1, cap)
    if period is not None:
        return CongruenceReport(
            modulus, residues, PERIODIC, period=period, period_start=1,
            last_nonzero=last, window=window, notes=tuple(notes),
        )
    return CongruenceReport(
        modulus, residues, INCONCLUSIVE, last_nonzero=last, window=window,
        notes=tuple(notes + [f"no period <= {cap} and no zero tail of length >= {cap}"]),
    )


def congruence_report(dtable: DTable, m: int) -> CongruenceReport:
    return detect_pattern(residue_stream(dtable, m), m)


def conjecture_suite(dtable: DTable, extra_moduli=()) -> list[CongruenceReport]:
    if dtable.n_max < 100:
        raise WindowTooSmall("the conjecture suite needs d(0..100) or more")
    moduli = list(PUBLISHED_MODULI) + [m for m in extra_moduli if m not in PUBLISHED_MODULI]
    return [congruence_report(dtable, m) for m in moduli]


def matches_published(report: CongruenceReport) -> bool:
    """Whether a report reproduces the published pattern for its modulus."""
    m = report.modulus
    if m in PUBLISHED_PERIODIC:
        return report.classification == PERIODIC and report.pattern == PUBLISHED_PERIODIC[m]
    if m in PUBLISHED_FINITE:
        return report.classification == FINITE and report.pattern == PUBLISHED_FINITE[m]
    raise KeyError(f"no published pattern for modulus {m}")


def crt_combine(r1: int, m1: int, r2: int, m2: int) -> int:
    """The residue mod m1*m2 agreeing with r1 mod m1 and r2 mod m2 (coprime moduli)."""
    if gcd(m1, m2) != 1:
        raise ValueError("moduli must be coprime")
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)
