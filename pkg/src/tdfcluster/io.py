"""Reading and writing graph specs, schedules, matrices, and DOT graphs."""

from __future__ import annotations

import json
import os
import tempfile
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import yaml

from .compiler.schedule import Schedule, TdfBlock
from .errors import SpecError, TdfError
from .representation import ClusterGraph, DistributionMatrix, FamilySpec, build_family

SCHEDULE_FORMAT = "tdfcluster.schedule/1"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def graph_from_document(doc: Mapping[str, Any]) -> ClusterGraph:
    """Build a graph from ``{family: ...}`` or ``{n_slots, excited, edges}``."""
    if not isinstance(doc, Mapping):
        raise SpecError("graph spec must be a mapping")
    try:
        if "family" in doc:
            fam = doc["family"]
            if "params" in doc:
                fam = f"{fam}:{','.join(str(p) for p in doc['params'])}"
            return build_family(FamilySpec.parse(str(fam)))
        return ClusterGraph(int(doc["n_slots"]), doc.get("excited", []), doc.get("edges", []))
    except TdfError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed graph spec: {exc}") from exc


def load_graph(path: str | os.PathLike) -> ClusterGraph:
    try:
        doc = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    except (OSError, yaml.YAMLError) as exc:
        raise SpecError(f"cannot read graph spec {path}: {exc}") from exc
    return graph_from_document(doc)


def graph_to_document(graph: ClusterGraph) -> dict[str, Any]:
    return {
        "n_slots": graph.n_slots,
        "excited": sorted(graph.excited),
        "edges": [list(e) for e in sorted(graph.edges)],
    }


def schedule_to_document(s: Schedule) -> dict[str, Any]:
    return {
        "format": SCHEDULE_FORMAT,
        "n_slots": s.n_slots,
        "excitation_set": sorted(s.excitation_set),
        "native_chain_gates": sorted(s.native_chain_gates),
        "blocks": [{"delay": b.delay, "enabled_gates": sorted(b.enabled_gates)} for b in s.blocks],
        "numbering": None if s.numbering is None else list(s.numbering),
        "provenance": dict(s.provenance),
    }


def schedule_from_document(doc: Mapping[str, Any]) -> Schedule:
    try:
        blocks = tuple(
            TdfBlock(int(b["delay"]), frozenset(int(i) for i in b["enabled_gates"]))
            for b in doc.get("blocks", [])
        )
        numbering = doc.get("numbering")
        return Schedule(
            int(doc["n_slots"]),
            frozenset(int(i) for i in doc["excitation_set"]),
            frozenset(int(i) for i in doc.get("native_chain_gates", [])),
            blocks,
            None if numbering is None else tuple(int(v) for v in numbering),
            dict(doc.get("provenance", {})),
        )
    except TdfError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed schedule: {exc}") from exc


def dumps_schedule(s: Schedule) -> str:
    return json.dumps(schedule_to_document(s), indent=2, sort_keys=True) + "\n"


def loads_schedule(text: str) -> Schedule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"schedule is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SpecError("schedule document must be an object")
    return schedule_from_document(doc)


def load_schedule(path: str | os.PathLike) -> Schedule:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read schedule {path}: {exc}") from exc
    return loads_schedule(text)


def matrix_csv(D: DistributionMatrix) -> str:
    return "".join(",".join(str(int(b)) for b in row) + "\n" for row in D.bits)


def graph_dot(graph: ClusterGraph, name: str = "cluster") -> str:
    """DOT export: excited slots filled, virtual slots dashed, delay class as edge label."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i in range(1, graph.n_slots + 1):
        style = "filled" if i in graph.excited else "dashed"
        lines.append(f"  {i} [style={style}];")
    for i, j in sorted(graph.edges):
        lines.append(f'  {i} -- {j} [label="{j - i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
