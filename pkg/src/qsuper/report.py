"""Sweep report writers: delimited output plus a rendered figure.

Reports are deterministic apart from their timing fields: rows are emitted
in grid order with sorted keys, so identical inputs give byte-identical
payloads once timings are stripped (or zeroed with the deterministic flag).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List

SCHEMA_VERSION = 1

TSV_COLUMNS = ["index", "p", "k", "N", "a", "b", "L", "equal", "seconds"]


def report_payload(rows: List[Dict], config: Dict, deterministic: bool = False) -> Dict:
    rows = [dict(r) for r in rows]
    if deterministic:
        for r in rows:
            r["seconds"] = 0.0
    return {
        "schema": SCHEMA_VERSION,
        "config": config,
        "points": len(rows),
        "failures": sum(1 for r in rows if not r["equal"]),
        "rows": rows,
    }


def render_json(payload: Dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def render_tsv(payload: Dict) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for row in payload["rows"]:
        lines.append(
            "\t".join(
                [
                    str(row["index"]),
                    str(row["p"]),
                    str(row["k"]),
                    str(row["N"]),
                    str(row["a"]),
                    str(row["b"]),
                    ",".join(map(str, row["L"])),
                    "1" if row["equal"] else "0",
                    f"{row['seconds']:.6f}",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def write_report(payload: Dict, out_path: str, fmt: str = "json") -> List[str]:
    """Write the delimited report and a companion figure; returns the paths."""
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    text = render_json(payload) if fmt == "json" else render_tsv(payload)
    out.write_text(text)
    written = [str(out)]
    fig_path = out.with_suffix(".png")
    render_figure(payload, str(fig_path))
    written.append(str(fig_path))
    return written


def render_figure(payload: Dict, fig_path: str) -> None:
    """Per-point timing bars, colored by outcome, grouped by (p, k)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = payload["rows"]
    fig, (ax, ax2) = plt.subplots(
        2, 1, figsize=(9, 6), height_ratios=[3, 1], constrained_layout=True
    )
    if rows:
        xs = [r["index"] for r in rows]
        ys = [max(r["seconds"], 1e-6) for r in rows]
        colors = ["#2a7e43" if r["equal"] else "#b03a2e" for r in rows]
        ax.bar(xs, ys, color=colors, width=1.0)
        ax.set_yscale("log")
    ax.set_xlabel("grid point")
    ax.set_ylabel("seconds")
    ax.set_title(
        f"identity sweep: {payload['points']} points, {payload['failures']} failures"
    )
    groups: Dict[str, int] = {}
    for r in rows:
        key = f"({r['p']},{r['k']})"
        groups[key] = groups.get(key, 0) + 1
    ax2.bar(list(groups.keys()), list(groups.values()), color="#456990")
    ax2.set_ylabel("points")
    ax2.set_xlabel("modulus pair")
    fig.savefig(fig_path, dpi=110)
    plt.close(fig)
