"""Pydantic records produced by the commands: CSV tables and verification results."""

import csv
import math
from pathlib import Path
from typing import Union

from pydantic import BaseModel, Field, model_validator

Cell = Union[int, float]


def format_cell(value: Cell) -> str:
    """Fixed CSV formatting: integers as is, floats to 9 significant digits, no negative zero."""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return f"{float(value) + 0.0:.9g}"


class CsvTable(BaseModel):
    """A rectangular numeric table with a fixed header."""

    name: str = Field(description="File name, e.g. 'quantum.csv'")
    header: list[str] = Field(description="Column names in output order")
    rows: list[list[Cell]] = Field(default_factory=list, description="Data rows")

    @model_validator(mode="after")
    def _check_shape(self) -> "CsvTable":
        for index, row in enumerate(self.rows):
            if len(row) != len(self.header):
                raise ValueError(f"Row {index} has {len(row)} cells, header has {len(self.header)}")
            if not all(math.isfinite(cell) for cell in row):
                raise ValueError(f"Row {index} contains a non-finite value")
        return self

    def column(self, name: str) -> list[Cell]:
        """All values of one column."""
        index = self.header.index(name)
        return [row[index] for row in self.rows]

    def write(self, directory: Path) -> Path:
        """Write the table into `directory` with '\\n' line endings and return the file path."""
        path = Path(directory) / self.name
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(self.header)
            for row in self.rows:
                writer.writerow([format_cell(cell) for cell in row])
        return path


class CriterionResult(BaseModel):
    """Outcome of one acceptance criterion."""

    criterion: str = Field(description="Criterion name")
    passed: bool = Field(description="Whether the measured value is within tolerance")
    measured: float = Field(description="Worst observed deviation or the decisive statistic")
    tolerance: float = Field(description="Bound the measurement is compared against")
    detail: str = Field(default="", description="Short human-readable explanation")
