"""Machine-readable verdicts shared by classifiers and verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

__all__ = ["Verdict", "Report", "jsonable", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1


class Verdict(str, Enum):
    EVIDENCE_FOR = "evidence-for"
    EVIDENCE_AGAINST = "evidence-against"
    INCONCLUSIVE = "inconclusive"


def jsonable(obj: Any) -> Any:
    """Recursively convert numpy scalars/arrays and enums to plain JSON types."""
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass
class Report:
    """Outcome of one finite-horizon check.

    Verdicts are evidence at the configured horizon, never proofs.  Every
    ``EVIDENCE_AGAINST`` carries witnesses from which the failure can be
    recomputed; ``exact`` records whether all arithmetic was integer log2.
    """

    prop: str
    verdict: Verdict
    witnesses: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    exact: bool = True

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "property": self.prop,
            "verdict": self.verdict.value,
            "witnesses": jsonable(self.witnesses),
            "config": jsonable(self.config),
            "exact": bool(self.exact),
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=True)
