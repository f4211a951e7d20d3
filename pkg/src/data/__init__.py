"""
Problem files and report writers.
"""

from .problem_file import ProblemFile, dump_problem, load_problem, parse_problem, problem_to_json
from .writers import (
    CHECK_COLUMNS,
    CLASSIFICATION_COLUMNS,
    checks_frame,
    classification_frame,
    format_table,
    index_report_to_dict,
    inventory_to_dict,
    jsonable,
    to_json,
    write_index_report,
    write_inventory,
    write_json,
    write_table,
)

__all__ = [
    "ProblemFile",
    "dump_problem",
    "load_problem",
    "parse_problem",
    "problem_to_json",
    "CHECK_COLUMNS",
    "CLASSIFICATION_COLUMNS",
    "checks_frame",
    "classification_frame",
    "format_table",
    "index_report_to_dict",
    "inventory_to_dict",
    "jsonable",
    "to_json",
    "write_index_report",
    "write_inventory",
    "write_json",
    "write_table",
]
