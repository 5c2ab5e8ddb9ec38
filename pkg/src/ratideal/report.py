"""JSON report envelopes for the command-line tool.

Numbers are serialized as full-precision decimal strings plus a
double-precision convenience field; exact scalars keep their rational
components as "p/q" strings.  Envelopes are deterministic for a fixed
(command, seed, precision, mode) apart from the timestamp field.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from typing import Optional

import mpmath
from mpmath import mp

from .degeneration import ScanReport
from .rational import ContourIntegral, VerificationReport
from .scalars import GaussianRational, HalfInteger, working_dps

TOOL_VERSION = "0.1.0"


def _qstr(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def _mpf_str(x, dps) -> str:
    with mp.workdps(dps):
        return mpmath.nstr(mpmath.mpf(x), dps, strip_zeros=True)


def encode_scalar(x, dps=38):
    """Encode exact or floating scalars into the report schema."""
    if x is None:
        return None
    if isinstance(x, GaussianRational):
        return {
            "kind": "exact",
            "re": _qstr(x.re),
            "im": _qstr(x.im),
            "re_float": float(x.re),
            "im_float": float(x.im),
        }
    if isinstance(x, HalfInteger):
        return {"kind": "exact", "re": f"{x.twice}/2", "im": "0/1",
                "re_float": x.twice / 2, "im_float": 0.0}
    if isinstance(x, (int, float)):
        return {"kind": "float", "re": repr(float(x)), "im": "0.0",
                "re_float": float(x), "im_float": 0.0}
    xc = mpmath.mpc(x)
    return {
        "kind": "float",
        "re": _mpf_str(xc.real, dps),
        "im": _mpf_str(xc.imag, dps),
        "re_float": float(xc.real),
        "im_float": float(xc.imag),
    }


def encode_verification(report: VerificationReport, dps=38, resamples: Optional[int] = None):
    case = {
        "status": report.status,
        "mode": report.mode,
        "lhs": encode_scalar(report.lhs, dps),
        "rhs": encode_scalar(report.rhs, dps),
        "tolerance": report.tolerance,
        "rel_error": None if report.rel_error is None else float(report.rel_error),
        "max_window": None if report.max_window is None else str(report.max_window),
        "contributing_terms": [
            {
                "offset": str(n),
                "residue_sum": encode_scalar(ci.residue_sum, dps),
            }
            for n, ci in report.contributing_terms
            if isinstance(ci, ContourIntegral)
        ],
    }
    extras = {}
    for key, value in report.extras.items():
        if isinstance(value, (int, float, str, type(None))):
            extras[key] = value
        elif isinstance(value, HalfInteger):
            extras[key] = str(value)
        else:
            extras[key] = encode_scalar(value, dps)
    if extras:
        case["extras"] = extras
    if resamples is not None:
        case["resamples"] = resamples
    return case


def encode_scan(report: ScanReport, dps=38):
    return {
        "n": report.n,
        "y": encode_scalar(report.y, dps),
        "monotone_decreasing": report.monotone_decreasing,
        "rows": [
            {
                "delta": _mpf_str(r.delta, dps),
                "ratio": encode_scalar(r.ratio, dps),
                "deviation": None if r.deviation is None else float(r.deviation),
                "phase": None if r.phase is None else float(r.phase),
                "error": r.error,
            }
            for r in report.rows
        ],
    }


@dataclass
class ReportEnvelope:
    """Top-level JSON document for one CLI invocation."""

    command: str
    config: dict
    cases: list = field(default_factory=list)

    @property
    def status(self) -> str:
        bad = [c for c in self.cases
               if c.get("status") not in ("exact_pass", "pass", None)
               or c.get("monotone_decreasing") is False]
        return "fail" if bad else "pass"

    def to_dict(self) -> dict:
        return {
            "version": TOOL_VERSION,
            "command": self.command,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "config": self.config,
            "cases": self.cases,
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def error_payload(exc: Exception) -> str:
    """Machine-readable error document for nonzero exits."""
    return json.dumps(
        {"error": {"type": type(exc).__name__, "message": str(exc)}}, indent=2
    )
