"""Artifact files (CSV and JSON with provenance) and report tables."""
from .artifacts import (
    fmt, model_from_dict, model_to_dict, read_csv, read_curve, read_equivalence, read_json,
    read_power_law, read_report, read_series, read_surface, write_csv, write_curve,
    write_equivalence, write_json, write_power_law, write_report, write_series, write_surface,
)
from .provenance import provenance
from .tables import OUTPUTS, report

__all__ = [
    "fmt", "model_from_dict", "model_to_dict", "read_csv", "read_curve", "read_equivalence", "read_json",
    "read_power_law", "read_report", "read_series", "read_surface", "write_csv", "write_curve",
    "write_equivalence", "write_json", "write_power_law", "write_report", "write_series", "write_surface",
    "provenance", "OUTPUTS", "report",
]
