"""Rich terminal UI components."""

from .ui import (
    display_error,
    display_info,
    display_settings,
    display_success,
    display_table,
    display_verify_report,
    display_written,
)

__all__ = [
    "display_error",
    "display_info",
    "display_settings",
    "display_success",
    "display_table",
    "display_verify_report",
    "display_written",
]
