"""Serialising verdict reports and count tables, and rendering figures.

Reports never carry floats; big integers travel as decimal strings.  Figures
are the only place ratios are turned into floats.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Sequence

from . import __version__
from .harness import FAILS, VACUOUS, VerdictReport
from .rsk import CountTable


def reports_json(reports: Sequence[VerdictReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def reports_csv(reports: Sequence[VerdictReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["statement", "params", "k", "status"])
    for r in reports:
        params = ";".join(f"{k}={v}" for k, v in r.params.items())
        for v in r.verdicts:
            w.writerow([r.statement, params, v.k, v.status])
    return buf.getvalue()


def _summary(r: VerdictReport) -> str:
    if not r.verdicts or r.vacuous:
        return "vacuous"
    if r.statement == "counterexample_f_theta":
        return "not Schur positive" if not r.holds else "Schur positive"
    return "holds" if r.holds else "FAILS"


def reports_human(reports: Sequence[VerdictReport]) -> str:
    lines = []
    for r in reports:
        params = " ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"{r.statement} {params}: {_summary(r)} ({r.elapsed_ms} ms)")
        for v in r.verdicts:
            line = f"  k={v.k}: {v.status}"
            if "terms" in v.stats:
                line += f"  [{v.stats['terms']} terms, {v.stats['negative_terms']} negative]"
            elif "lhs" in v.stats:
                line += f"  {v.stats['lhs']} >= {v.stats['rhs']}" if v.status == "holds" else ""
            if v.witness:
                line += "  witness " + " ".join(f"{a}={b}" for a, b in v.witness.items())
            lines.append(line)
    return "\n".join(lines) + "\n"


def render_reports(reports: Sequence[VerdictReport], fmt: str) -> str:
    return {"json": reports_json, "csv": reports_csv, "human": reports_human}[fmt](reports)


def render_table(table: CountTable, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "n": table.n,
            "kind": table.kind,
            "class": table.shape_class,
            "counts": [str(c) for c in table.counts],
            "tool_version": __version__,
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        rows = ["k,count"] + [f"{k},{c}" for k, c in enumerate(table.counts, 1)]
        return "\n".join(rows) + "\n"
    return " ".join(map(str, table.counts)) + "\n"


# ---------------------------------------------------------------------------
# figures


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _log_ratio(lhs: int, rhs: int) -> float:
    if lhs == 0 or rhs == 0:
        return math.nan
    return math.log10(lhs) - math.log10(rhs)


def plot_count_table(table: CountTable, path: str) -> None:
    """Counts on a log scale, with the log-concavity ratio per interior ``k``."""
    plt = _pyplot()
    ks = list(range(1, table.n + 1))
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    logs = [math.log10(c) if c else math.nan for c in table.counts]
    top.bar(ks, logs, color="tab:blue")
    top.set_ylabel("log10 count")
    top.set_title(f"n={table.n}, {table.kind}, class {table.shape_class}")
    inner = ks[1:-1]
    ratios = [_log_ratio(table[k] ** 2, table[k + 1] * table[k - 1]) for k in inner]
    bottom.axhline(0.0, color="grey", lw=0.8)
    bottom.plot(inner, ratios, "o-", color="tab:red")
    bottom.set_ylabel("log10 c_k^2 / (c_k-1 c_k+1)")
    bottom.set_xlabel("k (longest increasing subsequence)")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_reports(reports: Sequence[VerdictReport], path: str) -> None:
    """One panel per report: log margin for numeric checks, term counts otherwise."""
    plt = _pyplot()
    fig, axes = plt.subplots(len(reports), 1, figsize=(7, 2.8 * len(reports)), squeeze=False)
    for ax, r in zip(axes[:, 0], reports):
        ks = [v.k for v in r.verdicts]
        colors = ["tab:red" if v.status == FAILS else "tab:grey" if v.status == VACUOUS else "tab:green" for v in r.verdicts]
        if r.verdicts and "terms" in r.verdicts[0].stats:
            ax.bar(ks, [v.stats["terms"] for v in r.verdicts], color=colors)
            neg = [v.stats["negative_terms"] for v in r.verdicts]
            ax.bar(ks, neg, color="black", label="negative coefficients")
            ax.set_ylabel("Schur terms")
            if any(neg):
                ax.legend(loc="best", fontsize=8)
        else:
            margins = []
            for v in r.verdicts:
                st = v.stats.get("l", v.stats)
                margins.append(_log_ratio(st.get("lhs", 0), st.get("rhs", 0)))
            ax.axhline(0.0, color="grey", lw=0.8)
            ax.scatter(ks, margins, c=colors)
            ax.set_ylabel("log10 lhs/rhs")
        params = ", ".join(f"{k}={v}" for k, v in r.params.items())
        ax.set_title(f"{r.statement} ({params})", fontsize=10)
        ax.set_xlabel("k")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
