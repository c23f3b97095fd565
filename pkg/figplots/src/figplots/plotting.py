"""Line plots of SINR tables."""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .reader import Table  # noqa: E402


@dataclass
class PlotSpec:
    input_csv: str
    output_image: str
    mode: str = "auto"  # auto | trace | sweep
    title: str = ""
    dpi: int = 150


def resolve_mode(table: Table, requested: str) -> str:
    if requested != "auto":
        return requested
    return "sweep" if table.x_name.strip().upper() == "K" else "trace"


def _axis_label(table: Table, mode: str) -> str:
    if mode == "sweep":
        return "Iterations K"
    name = table.x_name.strip()
    return {"snapshot": "Snapshots", "doa_deg": "DOA (degrees)"}.get(name, name)


def render(table: Table, spec: PlotSpec) -> None:
    mode = resolve_mode(table, spec.mode)
    if mode not in ("trace", "sweep"):
        raise ValueError(f"unknown mode {mode!r}; expected trace or sweep")
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    style = {"marker": "o", "markersize": 4} if mode == "sweep" else {}
    for label, column in zip(table.labels, table.columns):
        name = label[:-3] if label.endswith("_dB") else label
        ax.plot(table.x_values, column, label=name, linewidth=1.4, **style)
    ax.set_xlabel(_axis_label(table, mode))
    ax.set_ylabel("Output SINR (dB)")
    ax.set_title(spec.title or table.metadata.get("scenario", ""))
    ax.grid(True, alpha=0.4)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)
