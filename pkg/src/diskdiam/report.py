"""One inequality instance: sides, slack, equality flag, witness data."""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_EQUALITY_TOL = 1e-9
DEFAULT_NUMERIC_TOL = 1e-9

VERDICTS = ("pass", "fail", "inconclusive", "hypothesis-not-met")


@dataclass(frozen=True)
class BoundReport:
    """Record of one checked inequality lhs <= rhs.

    ``slack`` is rhs - lhs exactly as computed; the check passes when
    slack >= -numeric_tol.  ``equality`` follows the one-sided convention
    slack <= equality_tol.  ``verdict`` distinguishes a failed bound from an
    unmet hypothesis or an undecidable comparison.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    equality: bool
    witness: tuple[complex, ...] | None = None
    tolerances: dict = field(default_factory=dict)
    verdict: str = "pass"

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_dict(self) -> dict:
        if self.witness is None:
            wit = None
        elif len(self.witness) == 1:
            wit = _pair(self.witness[0])
        else:
            wit = [_pair(w) for w in self.witness]
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "equality": self.equality,
            "witness": wit,
            "tolerances": dict(sorted(self.tolerances.items())),
            "verdict": self.verdict,
        }


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def bound_report(
    name: str,
    lhs: float,
    rhs: float,
    *,
    witness=None,
    tolerances=None,
    equality_tol: float = DEFAULT_EQUALITY_TOL,
    numeric_tol: float = DEFAULT_NUMERIC_TOL,
    verdict: str | None = None,
) -> BoundReport:
    """Build a report from the two sides, deriving slack/equality/verdict."""
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    tols = dict(tolerances or {})
    tols.setdefault("equality_tol", equality_tol)
    tols.setdefault("numeric_tol", numeric_tol)
    if verdict is None:
        verdict = "pass" if slack >= -numeric_tol else "fail"
    wit = None
    if witness is not None:
        wit = tuple(complex(w) for w in witness)
    return BoundReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        equality=slack <= equality_tol,
        witness=wit,
        tolerances=tols,
        verdict=verdict,
    )
