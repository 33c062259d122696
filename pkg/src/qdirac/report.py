"""Verification reports and the small helpers every check uses."""

import json
import time
from dataclasses import asdict, dataclass
from typing import Optional

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class VerificationError(AssertionError):
    """A checked identity does not hold; the message is the witness."""


class NotScalar(VerificationError):
    pass


class MultiplicityMismatch(VerificationError):
    pass


class TowerDegenerate(VerificationError):
    pass


class ConfluenceFailure(VerificationError):
    pass


@dataclass(frozen=True)
class VerificationReport:
    check_id: str
    anchor: str
    status: str
    witness: Optional[str] = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, SKIPPED):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError("a failed report needs a witness")
        if not self.anchor:
            raise ValueError("a report needs an anchor")

    @property
    def passed(self):
        return self.status == PASS

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)


def matrix_witness(lhs, rhs, label="entry"):
    """None if the matrices agree, else a description of the first mismatch."""
    if lhs.shape != rhs.shape:
        return f"shape {lhs.shape} != {rhs.shape}"
    diff = lhs.first_difference(rhs)
    if diff is None:
        return None
    i, j, a, b = diff
    return f"{label} ({i},{j}): {a.to_q_string()} != {b.to_q_string()}"


def require(witness):
    if witness:
        raise VerificationError(witness)


def run_check(check_id, anchor, fn, *args, **kwargs):
    """Run ``fn``; a VerificationError or a returned string means failure."""
    t0 = time.perf_counter()
    try:
        witness = fn(*args, **kwargs)
    except VerificationError as exc:
        witness = str(exc) or type(exc).__name__
    ms = int(round((time.perf_counter() - t0) * 1000))
    status = FAIL if witness else PASS
    return VerificationReport(check_id, anchor, status, witness or None, ms)
