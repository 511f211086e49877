"""Bases, greedy bases and relational complexity of diagonal type groups.

The heavy lifting happens in the C++ extension; this layer turns its JSON
results into dictionaries and fractions.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Optional

from . import _core
from ._core import (
    REPORT_SCHEMA_VERSION,
    ConfigError,
    DiagbaseError,
    DomainError,
    MissingDataError,
    ResourceError,
    catalog,
    ceil_chain,
    suite_names,
)

__version__ = getattr(_core, "__version__", "0.0.0")

DEFAULT_OMEGA_CAP = 1_000_000


def _group(T: str, k: int, preset: str, config: Optional[dict]) -> str:
    if config is not None:
        return json.dumps(config)
    return json.dumps({"T": T, "k": k, "preset": preset})


def run_suite(name: str, **options: Any) -> dict:
    """Run a verification suite; keyword arguments are the suite options
    (T, n, k_max, cap_omega, threads, ...). Returns the JSON report."""
    return json.loads(_core._run_suite(name, json.dumps(options)))


def base_stats(T: str = "A5", k: int = 2, preset: str = "socle", *, config: Optional[dict] = None,
               irredundant: bool = True, cap_omega: int = DEFAULT_OMEGA_CAP) -> dict:
    """b, greedy base sizes and I for one group, with the closed-form predictions."""
    return json.loads(_core._base_stats(_group(T, k, preset, config), irredundant, cap_omega))


def rc_bounds(T: str = "L2_8", k: int = 2, preset: str = "socle", *, config: Optional[dict] = None,
              max_len: int = 4, cap_omega: int = DEFAULT_OMEGA_CAP) -> dict:
    return json.loads(_core._rc_bounds(_group(T, k, preset, config), max_len, cap_omega))


def greedy_refine_sim(n: int, k: int, q: str = "S") -> dict:
    return json.loads(_core._greedy_refine_sim(n, k, q))


def closed_forms(tsize: int, k: int, P: str, Q: str, T: str, full: bool = False) -> tuple[int, int]:
    """(b, greedy) predicted for |T| = tsize, k factors and top groups P, Q."""
    return _core._closed_forms(tsize, str(k), P, Q, T, full)


def qtilde(T: str, y_class: str) -> tuple[Fraction, Fraction]:
    """Q~(T, y) and its element-wise recount."""
    exact, recount = _core._qtilde(T, y_class)
    return Fraction(exact), Fraction(recount)


def criterion(family: str, dim: int, q: int) -> dict:
    out = json.loads(_core._criterion(family, dim, q))
    out["value"] = Fraction(out["value"])
    return out


def failures(report: dict) -> Iterable[dict]:
    return [a for a in report["assertions"] if not a["pass"]]


__all__ = [
    "REPORT_SCHEMA_VERSION", "ConfigError", "DiagbaseError", "DomainError", "MissingDataError", "ResourceError",
    "base_stats", "catalog", "ceil_chain", "closed_forms", "criterion", "failures", "greedy_refine_sim",
    "qtilde", "rc_bounds", "run_suite", "suite_names",
]
