"""Plot SINR CSV tables produced by the beamforming harness (or anything
matching its CSV shape) as image files."""

__version__ = "0.1.0"

from .plotting import PlotSpec, render, resolve_mode
from .reader import CsvFormatError, Table, read_table

__all__ = ["__version__", "PlotSpec", "render", "resolve_mode", "CsvFormatError", "Table", "read_table"]
