"""Line-delimited structured reports.

One JSON object per line: a header (schema version, command, echoed
inputs), then one line per result record, then a status trailer.  Numbers
never appear as bare floats: exact integers and rationals are decimal
strings (rationals as ``"p/q"``), and every inexact quantity is an outward
decimal interval together with the working precision in bits.  Key order
is sorted, so identical runs produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable

from .intervals import RatInterval, decimal_lower, decimal_upper
from .poly import IntPolynomial

__all__ = [
    "SCHEMA_VERSION",
    "enc_int",
    "enc_fraction",
    "enc_interval",
    "enc_poly",
    "ReportWriter",
]

SCHEMA_VERSION = 1
DEFAULT_DIGITS = 36


def enc_int(v: int) -> str:
    return str(int(v))


def enc_fraction(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def enc_interval(
    iv: RatInterval, bits: int | None = None, digits: int = DEFAULT_DIGITS
) -> dict:
    out = {
        "lo": decimal_lower(iv.lo, digits),
        "hi": decimal_upper(iv.hi, digits),
    }
    if bits is not None:
        out["bits"] = bits
    return out


def enc_poly(p: IntPolynomial) -> dict:
    return {"coeffs": [str(c) for c in p.coeffs], "text": str(p)}


class ReportWriter:
    """Emits header / records / trailer as JSON lines."""

    def __init__(self, stream: IO[str], command: str, inputs: dict):
        self._stream = stream
        self._errors: list[dict] = []
        self._closed = False
        self._write(
            {
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "inputs": inputs,
            }
        )

    def record(self, kind: str, payload: dict) -> None:
        rec = {"record": kind}
        rec.update(payload)
        self._write(rec)

    def error(self, kind: str, message: str, **extra) -> None:
        err = {"error": kind, "message": message}
        err.update(extra)
        self._errors.append(err)
        self._write(err)

    def close(self, status: str = "ok") -> None:
        if self._closed:
            return
        self._closed = True
        self._write({"status": status, "error_count": len(self._errors)})

    def _write(self, obj: dict) -> None:
        self._stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":")))
        self._stream.write("\n")


def congruence_payload(report) -> dict:
    """Serialize a CongruenceReport."""
    return {
        "level": report.level,
        "primes": list(report.primes),
        "residues": {str(p): enc_int(report.residues[p]) for p in report.primes},
        "centered": {str(p): enc_int(report.centered[p]) for p in report.primes},
        "method": {str(p): report.method[p] for p in report.primes},
        "branch": {
            "kind": report.branch.kind,
            "value": None if report.branch.value is None else enc_int(report.branch.value),
            "onset_prime": report.branch.onset_prime,
        },
    }


def constant_payload(verdict) -> dict:
    return {
        "kind": verdict.kind,
        "onset": verdict.onset,
        "run_length": verdict.run_length,
        "exact": verdict.exact,
    }


def convergence_payload(report) -> dict:
    return {
        "level": report.level,
        "n_lo": report.n_lo,
        "n_hi": report.n_hi,
        "onset": report.onset,
        "zero_tail_from": report.zero_tail_from,
        "violations": [
            {"n": v.n, "kind": v.kind} for v in report.violations
        ],
    }


def certificate_payload(cert, digits: int = DEFAULT_DIGITS) -> dict:
    out = {
        "verdict": cert.verdict.value,
        "irreducibility_witness": cert.irreducibility_witness,
    }
    if cert.dominant_root is not None:
        out["dominant_root"] = enc_interval(cert.dominant_root, digits=digits)
    if cert.conjugate_moduli:
        out["conjugate_moduli"] = [
            enc_interval(m, digits=digits) for m in cert.conjugate_moduli
        ]
    if cert.conjugate_bound is not None:
        out["conjugate_bound"] = enc_fraction(cert.conjugate_bound)
    if cert.unit_root is not None:
        out["unit_root"] = enc_int(cert.unit_root)
    if cert.failure_reason:
        out["failure_reason"] = cert.failure_reason
    return out


def outcomes_payload(outcomes: Iterable) -> list[dict]:
    return [
        {
            "level": o.level,
            "aspect": o.aspect,
            "passed": o.passed,
            "expected": o.expected,
            "observed": o.observed,
        }
        for o in outcomes
    ]
