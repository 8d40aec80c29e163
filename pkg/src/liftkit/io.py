"""JSON documents for instances, inequalities, reports and RPP instances.

Every integer that can grow without bound is written as a decimal string;
parsers accept either strings or JSON integers. Indices are 1-based.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import NotAPartition, ParseError
from .hardness import RppInstance
from .knapsack import KnapsackSet, Partition
from .lifting import LiftedCoverInequality, LiftingTask
from .verify import FacetReport, Inequality

_DECIMAL = re.compile(r"[+-]?[0-9]+")


def _read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _int(value, field: str) -> int:
    if isinstance(value, bool):
        raise ParseError("expected an integer", field=field)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        if _DECIMAL.fullmatch(value.strip()):
            return int(value)
    raise ParseError(f"expected a decimal integer, got {value!r}", field=field)


def _int_list(value, field: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError("expected an array", field=field)
    return [_int(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _require(doc: dict, key: str, where: str = ""):
    if not isinstance(doc, dict):
        raise ParseError("expected an object", field=where or None)
    if key not in doc:
        raise ParseError("missing required field", field=f"{where}{key}")
    return doc[key]


# --- instances --------------------------------------------------------------


def task_to_doc(task: LiftingTask) -> dict:
    p = task.partition
    return {
        "n": task.n,
        "a": [str(v) for v in task.ks.a],
        "b": str(task.ks.b),
        "partition": {"C": sorted(p.C), "N0": sorted(p.N0), "N1": sorted(p.N1)},
        "sequence": list(task.sequence),
    }


def parse_instance(doc) -> tuple[KnapsackSet, Partition | None, tuple[int, ...] | None]:
    n = _int(_require(doc, "n"), "n")
    a = _int_list(_require(doc, "a"), "a")
    b = _int(_require(doc, "b"), "b")
    if len(a) != n:
        raise ParseError(f"has {len(a)} entries but n = {n}", field="a")
    ks = KnapsackSet(tuple(a), b)
    part = None
    if "partition" in doc:
        pdoc = doc["partition"]
        _require(pdoc, "C", "partition.")
        blocks = {}
        for key in ("C", "N0", "N1"):
            vals = _int_list(pdoc.get(key, []), f"partition.{key}")
            if len(set(vals)) != len(vals):
                raise NotAPartition(f"partition.{key} lists an index twice")
            blocks[key] = vals
        part = Partition(**blocks)
    seq = None
    if "sequence" in doc:
        seq = tuple(_int_list(doc["sequence"], "sequence"))
    return ks, part, seq


def load_instance(path) -> LiftingTask:
    """Read a lifting task; a missing sequence defaults to ascending N0 | N1."""
    ks, part, seq = parse_instance(_read_json(path))
    if part is None:
        raise ParseError("missing required field", field="partition")
    if seq is None:
        seq = tuple(sorted(part.N0 | part.N1))
    task = LiftingTask(ks, part, seq)
    task.validate()
    return task


def load_knapsack(path) -> KnapsackSet:
    return parse_instance(_read_json(path))[0]


# --- inequalities -----------------------------------------------------------


def lci_to_doc(lci: LiftedCoverInequality) -> dict:
    doc = {
        "coeffs": [str(c) for c in lci.coeffs],
        "rhs": str(lci.rhs),
        "trace": [
            {
                "index": s.index,
                "direction": s.direction,
                "coefficient": str(s.coefficient),
                "optimum": None if s.optimum is None else str(s.optimum),
            }
            for s in lci.trace
        ],
    }
    if lci.skipped:
        doc["fixed_to_zero"] = sorted(lci.skipped)
    return doc


def load_inequality(path) -> Inequality:
    doc = _read_json(path)
    coeffs = _int_list(_require(doc, "coeffs"), "coeffs")
    rhs = _int(_require(doc, "rhs"), "rhs")
    return Inequality(tuple(coeffs), rhs)


def facet_to_doc(report: FacetReport) -> dict:
    return {
        "valid": report.valid,
        "tight_count": report.tight_count,
        "tight_affine_dim": report.tight_affine_dim,
        "dimension": report.dimension,
        "is_facet": report.is_facet,
    }


# --- RPP --------------------------------------------------------------------


def rpp_to_doc(inst: RppInstance) -> dict:
    return {"m": str(inst.m), "omega": [str(w) for w in inst.omega]}


def load_rpp(path) -> RppInstance:
    doc = _read_json(path)
    m = _int(_require(doc, "m"), "m")
    omega = _int_list(_require(doc, "omega"), "omega")
    if m < 0:
        raise ParseError("must be >= 0", field="m")
    return RppInstance(m, tuple(omega))
