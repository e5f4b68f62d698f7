"""Renderers for verification reports: text, JSON, Markdown, CSV and figures.

Output is deterministic: claims are sorted by id and runtimes are left out
unless explicitly requested.
"""

from __future__ import annotations

import csv
import io
import json
import os
from math import comb

from .verify import VerificationReport

__all__ = ["render_text", "render_json", "render_markdown", "render_csv", "render_figures"]


def _short(x) -> str:
    s = json.dumps(x, sort_keys=True, ensure_ascii=False, default=str)
    return s if len(s) <= 120 else s[:117] + "..."


def render_text(rep: VerificationReport, timings: bool = False) -> str:
    lines = []
    for r in rep.results:
        status = "PASS" if r.passed else "FAIL"
        row = f"{status}  {r.claim.id}  [{r.claim.provenance}]  computed={_short(r.computed)}"
        if timings:
            row += f"  ({r.runtime:.2f}s)"
        lines.append(row)
        if r.detail:
            lines.append(f"      {r.detail}")
    for n in rep.notes:
        lines.append(n)
    s = rep.summary()
    lines.append(f"summary: {s['passed']}/{s['claims']} claims passed, {s['failed']} failed (max n = {rep.max_n})")
    return "\n".join(lines) + "\n"


def render_json(rep: VerificationReport, timings: bool = False) -> str:
    data = {
        "summary": rep.summary(),
        "max_n": rep.max_n,
        "notes": rep.notes,
        "claims": [r.to_json(timings) for r in rep.results],
    }
    return json.dumps(data, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _section(claim_id: str) -> str:
    head = claim_id.split("-", 1)[0]
    parts = head.split(".")
    return ".".join(parts[:2]) if head.startswith("L") else head


def render_markdown(rep: VerificationReport, timings: bool = False) -> str:
    out = ["# Verification report", ""]
    s = rep.summary()
    out.append(f"{s['passed']} of {s['claims']} claims passed; {s['failed']} failed. Codimensions checked for n <= {rep.max_n}.")
    out.append("")
    sections: dict[str, list] = {}
    for r in rep.results:
        sections.setdefault(_section(r.claim.id), []).append(r)
    for name in sorted(sections):
        out.append(f"## {name}")
        out.append("")
        header = "| claim | status | provenance | computed | detail |"
        out.append(header if not timings else header[:-1] + " runtime (s) |")
        out.append("|---|---|---|---|---|" + ("---|" if timings else ""))
        for r in sections[name]:
            detail = r.detail or r.claim.note
            cells = [r.claim.id, "pass" if r.passed else "**fail**", r.claim.provenance, f"`{_short(r.computed)}`", detail]
            if timings:
                cells.append(f"{r.runtime:.2f}")
            out.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
        out.append("")
    if rep.notes:
        out.append("## Notes")
        out.append("")
        out.extend(f"- {n}" for n in rep.notes)
        out.append("")
    return "\n".join(out)


def render_csv(rep: VerificationReport, timings: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    cols = ["id", "kind", "algebra", "provenance", "status", "computed", "detail"]
    w.writerow(cols + (["runtime_s"] if timings else []))
    for r in rep.results:
        row = [
            r.claim.id,
            r.claim.kind,
            r.claim.algebra,
            r.claim.provenance,
            "pass" if r.passed else "fail",
            json.dumps(r.computed, sort_keys=True, default=str, ensure_ascii=False),
            r.detail,
        ]
        if timings:
            row.append(f"{r.runtime:.3f}")
        w.writerow(row)
    return buf.getvalue()


def render_figures(rep: VerificationReport, outdir: str) -> list[str]:
    """Codimension-vs-formula plots per result family and a multiplicity heatmap."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    from .cocharacter import multipartitions

    os.makedirs(outdir, exist_ok=True)
    written = []
    families: dict[str, list] = {}
    for r in rep.results:
        if r.claim.kind == "codim-formula" and isinstance(r.computed, list):
            families.setdefault(r.claim.id.split("-", 1)[0], []).append(r)
    for fam in sorted(families):
        fig, ax = plt.subplots(figsize=(6, 4))
        for r in families[fam]:
            a, b, c = r.claim.expected
            ns = list(range(1, len(r.computed) + 1))
            ax.plot(ns, r.computed, "o", label=f"{r.claim.algebra} computed")
            ax.plot(ns, [a + b * n + c * comb(n, 2) for n in ns], "-", alpha=0.5)
        ax.set_xlabel("n")
        ax.set_ylabel("c_n")
        ax.set_title(f"{fam}: computed codimensions (dots) and formulas (lines)")
        ax.legend(fontsize=7)
        path = os.path.join(outdir, f"codim_{fam}.png")
        fig.tight_layout()
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        written.append(path)
    rows = [r for r in rep.results if r.claim.kind == "cocharacter-table" and isinstance(r.computed, dict)]
    if rows:
        mps = [str(mp) for n in (1, 2) for mp in multipartitions(n)]
        data = [[r.computed.get(mp, 0) for mp in mps] for r in rows]
        fig, ax = plt.subplots(figsize=(10, 0.35 * len(rows) + 2))
        im = ax.imshow(data, cmap="viridis", vmin=0, vmax=2, aspect="auto")
        ax.set_xticks(range(len(mps)))
        ax.set_xticklabels(mps, rotation=70, fontsize=7)
        ax.set_yticks(range(len(rows)))
        ax.set_yticklabels([r.claim.algebra for r in rows], fontsize=7)
        fig.colorbar(im, ax=ax, label="multiplicity")
        ax.set_title("proper cocharacter multiplicities, degree <= 2")
        path = os.path.join(outdir, "multiplicities.png")
        fig.tight_layout()
        fig.savefig(path, dpi=100, metadata={"Software": None})
        plt.close(fig)
        written.append(path)
    return written
