"""Publication tables and plot data assembled from saved artifacts."""
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

from ..core.errors import ContractViolation
from ..metrics import METRICS, ErrorReport
from .artifacts import (
    NA, read_curve, read_equivalence, read_json, read_report, read_surface, write_csv, write_json,
)

logger = logging.getLogger(__name__)

LONG_COLUMNS = ["task", "model", "metric", "split", "n", "sigma_w", "mean", "std"]
TABLE_COLUMNS = ["task", "model", "n", "sigma_w"] + [
    f"{split}_{metric}" for metric in METRICS for split in ("train", "test")
]
CURVE_PLOT_COLUMNS = ["task", "architecture", "size", "sigma_w", "train_mean", "train_std", "test_mean", "test_std"]
EQUIVALENCE_PLOT_COLUMNS = ["task", "reference", "candidate", "reference_size", "matched_size", "status"]
SURFACE_PLOT_COLUMNS = ["task", "sigma_w", "n", "mean_train_rnmse", "std"]

OUTPUTS = {
    "long": "errors_long.csv",
    "table": "errors_table.csv",
    "json": "errors.json",
    "curves": "curves_plot.csv",
    "equivalence": "equivalence_plot.csv",
    "surfaces": "surface_plot.csv",
}


def mean_std(mean, std) -> str:
    if mean is None:
        return NA
    return f"{mean:.4f} ± {std:.4f}" if std is not None else f"{mean:.4f}"


def _kind(path: Path) -> str:
    if not path.is_file():
        raise ContractViolation(f"no such file: {path}")
    if path.suffix == ".json":
        return read_json(path)["kind"]
    header = set()
    with path.open(encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                header = set(line.strip().split(","))
                break
    if {"reference_size", "matched_size"} <= header:
        return "equivalence"
    if {"train_mean", "test_mean"} <= header:
        return "size_curve"
    if {"mean_train_rnmse", "sigma_w"} <= header:
        return "surface"
    raise ContractViolation(f"cannot tell what {path} holds")


def _report_rows(reports: Sequence[ErrorReport]) -> List[List[Any]]:
    rows = []
    for r in reports:
        for metric in METRICS:
            for split in ("train", "test"):
                s = r.stats(metric, split)
                rows.append([r.task_id.value, r.model, metric, split, r.size, r.sigma_w, s.mean, s.std])
    return rows


def _curve_rows(curves) -> List[List[Any]]:
    rows = []
    for c in curves:
        for p in c.points:
            for split, stats in (("train", p.train), ("test", p.test)):
                rows.append([c.task_id.value, c.architecture.value, "rnmse", split, p.size, p.sigma_w,
                             stats.mean, stats.std])
    return rows


def _table_rows(reports: Sequence[ErrorReport]) -> List[List[Any]]:
    ordered = sorted(reports, key=lambda r: (r.task_id.value, r.model, r.size or 0, r.sigma_w or 0.0))
    rows = []
    for r in ordered:
        row = [r.task_id.value, r.model, r.size, r.sigma_w]
        for metric in METRICS:
            for split in ("train", "test"):
                s = r.stats(metric, split)
                row.append(mean_std(s.mean, s.std))
        rows.append(row)
    return rows


def report(inputs: Sequence[Path], out_dir: Path, provenance: Dict[str, Any]) -> Dict[str, Path]:
    """Turn error reports, size curves, equivalence curves and surfaces into tables.

    Writes a long-format error CSV, a wide mean ± std table with one row per
    model and size, a JSON bundle and plot-ready CSVs. Missing values
    are written as NA. With no usable inputs every file is still written,
    header only.
    """
    reports, curves, equivalences, surfaces = [], [], [], []
    for path in map(Path, inputs):
        kind = _kind(path)
        if kind == "error_report":
            reports.append(read_report(path))
        elif kind == "size_curve":
            curves.append(read_curve(path))
        elif kind == "equivalence":
            equivalences.append(read_equivalence(path))
        elif kind == "surface":
            surfaces.append(read_surface(path))
        else:
            logger.warning(f"ignoring {path}: {kind} artifacts have no table")
    if not (reports or curves or equivalences or surfaces):
        logger.warning("no results to report; writing header-only files")

    out_dir = Path(out_dir)
    written = {}
    written["long"] = write_csv(out_dir / OUTPUTS["long"], LONG_COLUMNS,
                                _report_rows(reports) + _curve_rows(curves), provenance)
    written["table"] = write_csv(out_dir / OUTPUTS["table"], TABLE_COLUMNS, _table_rows(reports), provenance)
    written["curves"] = write_csv(
        out_dir / OUTPUTS["curves"], CURVE_PLOT_COLUMNS,
        ([c.task_id.value, c.architecture.value, p.size, p.sigma_w,
          p.train.mean, p.train.std, p.test.mean, p.test.std] for c in curves for p in c.points),
        provenance,
    )
    written["equivalence"] = write_csv(
        out_dir / OUTPUTS["equivalence"], EQUIVALENCE_PLOT_COLUMNS,
        ([e.task_id.value if e.task_id else NA, e.reference.value if e.reference else NA,
          e.candidate.value if e.candidate else NA, p.reference_size, p.matched_size, p.status.value]
         for e in equivalences for p in e.points),
        provenance,
    )
    written["surfaces"] = write_csv(
        out_dir / OUTPUTS["surfaces"], SURFACE_PLOT_COLUMNS,
        ([s.task_id.value, sigma, n, s.mean_train_rnmse[i][j], s.std[i][j]]
         for s in surfaces for i, sigma in enumerate(s.sigma_grid) for j, n in enumerate(s.n_grid)),
        provenance,
    )
    bundle = {
        "reports": [r.model_dump(mode="json") for r in reports],
        "curves": [c.model_dump(mode="json") for c in curves],
        "equivalences": [e.model_dump(mode="json") for e in equivalences],
        "surfaces": [s.model_dump(mode="json") for s in surfaces],
    }
    written["json"] = write_json(out_dir / OUTPUTS["json"], "report", bundle, provenance)
    logger.info(f"wrote {len(written)} report files to {out_dir}")
    return written
