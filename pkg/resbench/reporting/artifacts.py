import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import CONFIG_LINE
from ..core.errors import ContractViolation
from ..experiments import (
    CurvePoint, EquivalenceCurve, ErrorSurface, PowerLawFit, SizeCurve,
)
from ..metrics import ErrorReport, MeanStd
from ..models import Architecture, ModelSpec, SeriesPair, TaskId, TrainedModel, TrainingMeta

logger = logging.getLogger(__name__)

NA = "NA"

SERIES_COLUMNS = ["t", "u", "y_hat"]
SURFACE_COLUMNS = ["sigma_w", "n", "mean_train_rnmse", "std", "runs", "failed"]
CURVE_COLUMNS = ["size", "sigma_w", "train_mean", "train_std", "test_mean", "test_std", "runs", "excluded"]
EQUIVALENCE_COLUMNS = ["reference_size", "reference_error", "matched_size", "matched_error", "status"]


def fmt(value: Optional[float]) -> str:
    """17 significant digits, NA for missing values."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return NA
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def parse_float(text: str) -> Optional[float]:
    return None if text in ("", NA) else float(text)


def parse_int(text: str) -> Optional[int]:
    return None if text in ("", NA) else int(float(text))


def _prepare(path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(
        path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]],
        provenance: Dict[str, Any], meta: Optional[Dict[str, str]] = None,
) -> Path:
    """CSV with leading `# key=value` provenance lines."""
    path = _prepare(path)
    with path.open("w", newline="", encoding="utf-8") as f:
        for key, value in (meta or {}).items():
            f.write(f"# {key}={value}\n")
        f.write(f"# config_hash={provenance['config_hash']}\n")
        f.write(f"# base_seed={provenance['base_seed']}\n")
        f.write(f"{CONFIG_LINE}{json.dumps(provenance['config'], sort_keys=True)}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) if not isinstance(v, str) else v for v in row])
    return path


def read_csv(path: Path) -> Tuple[Dict[str, str], List[Dict[str, str]]]:
    """(metadata from `#` lines, rows as dicts)."""
    path = Path(path)
    if not path.is_file():
        raise ContractViolation(f"no such file: {path}")
    meta: Dict[str, str] = {}
    body = []
    with path.open("r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value
            elif line.strip():
                body.append(line)
    return meta, list(csv.DictReader(body))


def write_json(path: Path, kind: str, data: Any, provenance: Dict[str, Any]) -> Path:
    path = _prepare(path)
    payload = {"kind": kind, "provenance": provenance, "data": data}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_json(path: Path, kind: Optional[str] = None) -> Dict[str, Any]:
    path = Path(path)
    if not path.is_file():
        raise ContractViolation(f"no such file: {path}")
    payload = json.loads(path.read_text(encoding="utf-8"))
    if kind is not None and payload.get("kind") != kind:
        raise ContractViolation(f"{path} holds a {payload.get('kind')!r} artifact, expected {kind!r}")
    return payload


def write_series(path: Path, pair: SeriesPair, provenance: Dict[str, Any]) -> Path:
    rows = ((t + 1, u, y) for t, (u, y) in enumerate(zip(pair.u, pair.y_hat)))
    meta = {"task": pair.task_id.value, "seed": str(pair.seed)}
    return write_csv(path, SERIES_COLUMNS, rows, provenance, meta)


def read_series(path: Path) -> SeriesPair:
    meta, rows = read_csv(path)
    return SeriesPair(
        u=[float(r["u"]) for r in rows], y_hat=[float(r["y_hat"]) for r in rows],
        task_id=TaskId(meta["task"]), seed=int(meta["seed"]),
    )


def model_to_dict(model: TrainedModel) -> Dict[str, Any]:
    return {
        "architecture": model.spec.architecture.value,
        "spec": model.spec.model_dump(mode="json"),
        "training_meta": model.training_meta.model_dump(mode="json"),
        "weights": {
            name: {"shape": list(w.shape), "values": w.ravel().tolist()}
            for name, w in sorted(model.weights.items())
        },
    }


def model_from_dict(data: Dict[str, Any]) -> TrainedModel:
    weights = {
        name: np.asarray(entry["values"], dtype=float).reshape(entry["shape"])
        for name, entry in data["weights"].items()
    }
    return TrainedModel(
        spec=ModelSpec.model_validate(data["spec"]),
        weights=weights,
        training_meta=TrainingMeta.model_validate(data["training_meta"]),
    )


def write_surface(path: Path, surface: ErrorSurface, provenance: Dict[str, Any]) -> Path:
    rows = []
    for i, sigma in enumerate(surface.sigma_grid):
        for j, n in enumerate(surface.n_grid):
            rows.append((
                sigma, n, surface.mean_train_rnmse[i][j], surface.std[i][j],
                surface.runs[i][j], surface.failed[i][j],
            ))
    return write_csv(path, SURFACE_COLUMNS, rows, provenance, {"task": surface.task_id.value})


def read_surface(path: Path, task: Optional[TaskId] = None) -> ErrorSurface:
    meta, rows = read_csv(path)
    task = task or TaskId(meta.get("task", TaskId.NARMA10.value))
    sigmas = sorted({float(r["sigma_w"]) for r in rows})
    ns = sorted({int(r["n"]) for r in rows})
    index = {(float(r["sigma_w"]), int(r["n"])): r for r in rows}

    def cell(i, j, column, parse):
        row = index.get((sigmas[i], ns[j]))
        return None if row is None else parse(row[column])

    shape = range(len(sigmas)), range(len(ns))
    return ErrorSurface(
        task_id=task, n_grid=ns, sigma_grid=sigmas,
        mean_train_rnmse=[[cell(i, j, "mean_train_rnmse", parse_float) for j in shape[1]] for i in shape[0]],
        std=[[cell(i, j, "std", parse_float) for j in shape[1]] for i in shape[0]],
        runs=[[cell(i, j, "runs", parse_int) or 0 for j in shape[1]] for i in shape[0]],
        failed=[[cell(i, j, "failed", lambda s: s == "true") in (None, True) for j in shape[1]] for i in shape[0]],
    )


def write_curve(path: Path, curve: SizeCurve, provenance: Dict[str, Any]) -> Path:
    rows = (
        (p.size, p.sigma_w, p.train.mean, p.train.std, p.test.mean, p.test.std, p.runs, p.excluded)
        for p in curve.points
    )
    meta = {"task": curve.task_id.value, "architecture": curve.architecture.value}
    return write_csv(path, CURVE_COLUMNS, rows, provenance, meta)


def read_curve(path: Path) -> SizeCurve:
    meta, rows = read_csv(path)
    points = []
    for r in rows:
        train_n = parse_int(r["runs"]) - (parse_int(r["excluded"]) or 0)
        points.append(CurvePoint(
            size=int(r["size"]), sigma_w=parse_float(r["sigma_w"]),
            train=MeanStd(mean=parse_float(r["train_mean"]), std=parse_float(r["train_std"]), n=train_n),
            test=MeanStd(mean=parse_float(r["test_mean"]), std=parse_float(r["test_std"]), n=train_n),
            runs=parse_int(r["runs"]), excluded=parse_int(r["excluded"]) or 0,
        ))
    return SizeCurve(task_id=TaskId(meta["task"]), architecture=Architecture(meta["architecture"]), points=points)


def write_equivalence(path: Path, curve: EquivalenceCurve, provenance: Dict[str, Any]) -> Path:
    rows = (
        (p.reference_size, p.reference_error, p.matched_size, p.matched_error, p.status.value)
        for p in curve.points
    )
    meta = {
        "task": curve.task_id.value if curve.task_id else NA,
        "reference": curve.reference.value if curve.reference else NA,
        "candidate": curve.candidate.value if curve.candidate else NA,
        "metric": curve.metric,
    }
    return write_csv(path, EQUIVALENCE_COLUMNS, rows, provenance, meta)


def read_equivalence(path: Path) -> EquivalenceCurve:
    meta, rows = read_csv(path)
    return EquivalenceCurve.model_validate({
        "task_id": None if meta.get("task", NA) == NA else meta["task"],
        "reference": None if meta.get("reference", NA) == NA else meta["reference"],
        "candidate": None if meta.get("candidate", NA) == NA else meta["candidate"],
        "points": [
            {
                "reference_size": int(r["reference_size"]),
                "reference_error": float(r["reference_error"]),
                "matched_size": parse_float(r["matched_size"]),
                "matched_error": parse_float(r["matched_error"]),
                "status": r["status"],
            }
            for r in rows
        ],
    })


def write_report(path: Path, report: ErrorReport, provenance: Dict[str, Any]) -> Path:
    return write_json(path, "error_report", report.model_dump(mode="json"), provenance)


def read_report(path: Path) -> ErrorReport:
    return ErrorReport.model_validate(read_json(path, "error_report")["data"])


def write_power_law(path: Path, fit: PowerLawFit, extra: Dict[str, Any], provenance: Dict[str, Any]) -> Path:
    data = fit.model_dump(mode="json")
    data.update(extra)
    return write_json(path, "power_law", data, provenance)


def read_power_law(path: Path) -> PowerLawFit:
    data = read_json(path, "power_law")["data"]
    return PowerLawFit.model_validate({k: data[k] for k in ("task_id", "n_values", "sigma_values", "fit")})
