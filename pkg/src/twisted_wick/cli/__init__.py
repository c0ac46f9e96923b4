"""Command-line front end: spec files, reports and subcommands."""

from twisted_wick.cli.main import main
from twisted_wick.cli.report import ReportDocument, render_machine, save_report
from twisted_wick.cli.specfile import (
    SPEC_FORMAT,
    SpecFile,
    dump_spec,
    input_digest,
    load_spec,
    parse_spec,
    preset_spec,
)

__all__ = [
    "SPEC_FORMAT",
    "ReportDocument",
    "SpecFile",
    "dump_spec",
    "input_digest",
    "load_spec",
    "main",
    "parse_spec",
    "preset_spec",
    "render_machine",
    "save_report",
]
