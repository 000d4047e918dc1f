"""Report files: a JSON summary, a CSV complexity profile and a PNG figure."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .biword import BiWordSpec, factor_complexity_profile, spec_to_json  # noqa: E402
from .quasisturmian import finite_attractor_classifier  # noqa: E402


def write_report(spec: BiWordSpec, out_dir, n: int = 40, stem: str = "report") -> dict:
    """Classify ``spec`` and write ``<stem>.json``, ``<stem>_profile.csv`` and ``<stem>_profile.png``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    verdict = finite_attractor_classifier(spec, n)
    span = verdict.span.value
    profile, radius = factor_complexity_profile(spec, n, 2 * n)

    rows = [(m, p, None if span is None else m + span) for m, p in enumerate(profile, 1)]
    csv_path = out / f"{stem}_profile.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "p", "n_plus_span"])
        for m, p, bound in rows:
            writer.writerow([m, p, "" if bound is None else bound])

    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot([r[0] for r in rows], [r[1] for r in rows], "o", ms=3, label="p(n) sampled")
    if span is not None:
        ax.plot([r[0] for r in rows], [r[2] for r in rows], "-", lw=1,
                label=f"n + {span}")
    ax.set_xlabel("n")
    ax.set_ylabel("distinct factors")
    ax.set_title(verdict.kind, fontsize=10)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    png_path = out / f"{stem}_profile.png"
    fig.savefig(png_path, dpi=120, metadata={"Software": None})
    plt.close(fig)

    summary = {"spec": spec_to_json(spec), "verdict": verdict.to_dict(), "N": n,
               "radius": radius, "files": [csv_path.name, png_path.name]}
    (out / f"{stem}.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return summary
