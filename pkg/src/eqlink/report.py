"""Structured report documents and their renderers.

Every CLI run emits one document: request (echoed back), the presentation
content hash, a results list, diagnostics, engine version, and timing.  The
document minus the timing block is deterministic for a fixed request, which
is what the golden-file and order-independence tests pin down.  All rationals
are rendered as exact ``p/q`` strings; no floats appear anywhere.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import __version__
from .division import GenericRankReport, ScanReport, SurjectivityVerdict
from .orbitmap import GroupClass, OrbitClassResult, TransferCheck


def rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def group_class_map(value: GroupClass) -> dict:
    return {sym.name: rational(c) for sym, c in value.sorted_terms()}


def orbit_result_entry(res: OrbitClassResult, discriminant: Fraction) -> dict:
    return {
        "cycle": res.cycle,
        "bundle": res.bundle,
        "value": group_class_map(res.value),
        "value_str": str(res.value),
        "degree": res.degree,
        "hypothesis_chern_number": rational(res.hypothesis_chern_number),
        "discriminant_degree": rational(discriminant),
    }


def verdict_entry(v: SurjectivityVerdict) -> dict:
    return {
        "space": v.space,
        "bundle": v.bundle,
        "surjective": v.surjective,
        "indeterminate": v.indeterminate,
        "per_degree": {
            str(deg): {"primitives": dim, "rank": rank}
            for deg, (dim, rank) in sorted(v.per_degree.items())
        },
        "witnesses": {
            sym.name: {"cycle": cyc, "coefficient": rational(c)}
            for sym, (cyc, c) in sorted(
                v.witnesses.items(), key=lambda kv: (kv[0].degree, kv[0].source)
            )
        },
        "failures": list(v.failures),
        "skipped": [{"cycle": name, "reason": reason} for name, reason in v.skipped],
    }


def scan_entry(rep: ScanReport) -> dict:
    return {
        "space": rep.space,
        "bundle": rep.bundle,
        "grid": [dict(point) for point in rep.grid],
        "delta": [dict(point) for point in rep.delta],
        "annotations": {
            json.dumps(dict(point), sort_keys=True): list(labels)
            for point, labels in sorted(rep.annotations.items())
        },
        "per_point": [
            {
                "params": dict(point),
                "surjective": v.surjective,
                "indeterminate": v.indeterminate,
                "failures": list(v.failures),
            }
            for point, v in zip(rep.grid, rep.verdicts)
        ],
    }


def generic_entry(rep: GenericRankReport) -> dict:
    return {
        "span_rank": rep.span_rank,
        "hyperplane_free": rep.hyperplane_free,
        "target_dim": rep.target_dim,
        "saturated_rank": rep.saturated_rank,
        "sample_size": rep.sample_size,
        "distinct_points": rep.distinct_points,
    }


def transfer_entry(chk: TransferCheck) -> dict:
    return {
        "lhs": group_class_map(chk.lhs),
        "rhs": group_class_map(chk.rhs),
        "lhs_str": str(chk.lhs),
        "rhs_str": str(chk.rhs),
        "r": rational(chk.r),
        "factor": rational(chk.factor),
        "equal": chk.equal,
    }


def document(request: dict, space_hash: str | None, results: list, diagnostics: list, elapsed: float) -> dict:
    return {
        "engine": {"name": "eqlink", "version": __version__},
        "request": request,
        "space_hash": space_hash,
        "results": results,
        "diagnostics": diagnostics,
        "timing": {"elapsed_seconds": round(elapsed, 3)},
    }


def dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def strip_timing(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timing"}


# ---------------------------------------------------------------------------
# LaTeX rendering
# ---------------------------------------------------------------------------

_SYMBOL = re.compile(r"^gamma\*\((.+)\)$")
_NAME_SPLIT = re.compile(r"^([A-Za-z]+)(\d*)$")

_GREEK = {"chi": r"\chi", "Lam": r"\Lambda", "lam": r"\lambda"}


def _latex_symbol(name: str) -> str:
    match = _SYMBOL.match(name)
    inner = match.group(1) if match else name
    parts = _NAME_SPLIT.match(inner)
    if parts:
        head, sub = parts.groups()
        head = _GREEK.get(head, head)
        inner = f"{head}_{{{sub}}}" if sub else head
    return rf"\gamma^*({inner})"


def _latex_cycle(name: str) -> str:
    head, *subs = name.split("_")
    if subs:
        return f"${head}_{{{','.join(subs)}}}$"
    return f"${head}$"


def _latex_rational(text: str) -> str:
    if "/" in text:
        num, den = text.split("/")
        sign = "-" if num.startswith("-") else ""
        return rf"{sign}\tfrac{{{num.lstrip('-')}}}{{{den}}}"
    return text


def _latex_value(value: dict) -> str:
    if not value:
        return "$0$"
    chunks = []
    for name, coeff in value.items():
        sym = _latex_symbol(name)
        frac = Fraction(coeff)
        mag = _latex_rational(str(abs(frac)))
        body = sym if mag == "1" else rf"{mag}\,{sym}"
        if not chunks:
            chunks.append(body if frac > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if frac > 0 else f"- {body}")
    return f"${' '.join(chunks)}$"


def _table(header: list[str], rows: list[list[str]], caption: str) -> str:
    cols = "l" * len(header)
    lines = [
        r"\begin{table}[ht]",
        r"\centering",
        rf"\begin{{tabular}}{{{cols}}}",
        r"\hline",
        " & ".join(header) + r" \\",
        r"\hline",
    ]
    for row in rows:
        lines.append(" & ".join(row) + r" \\")
    lines += [
        r"\hline",
        r"\end{tabular}",
        rf"\caption{{{caption}}}",
        r"\end{table}",
    ]
    return "\n".join(lines) + "\n"


def to_latex(doc: dict) -> str:
    """Publication-style table for a compute/check/scan document."""
    verb = doc.get("request", {}).get("verb")
    results = doc.get("results", [])
    if verb == "compute":
        rows = [
            [
                _latex_cycle(entry["cycle"]),
                _latex_value(entry["value"]),
                f"${_latex_rational(entry['hypothesis_chern_number'])}$",
                f"${_latex_rational(entry['discriminant_degree'])}$",
            ]
            for entry in results
            if "value" in entry
        ]
        space = doc["request"].get("space_label", "")
        bundle = results[0]["bundle"] if results else doc["request"].get("bundle", "")
        caption = f"Orbit-map images of discriminant linking classes on {space}, {bundle}."
        return _table(
            ["Cycle", r"$O^*(\mathrm{Lk})$", r"$\delta_Y$", r"$\deg \Sigma_Y$"],
            rows,
            caption,
        )
    if verb == "check":
        rows = []
        for entry in results:
            for deg, cell in sorted(entry["per_degree"].items(), key=lambda kv: int(kv[0])):
                rows.append(
                    [
                        entry["bundle"],
                        deg,
                        str(cell["primitives"]),
                        str(cell["rank"]),
                        "yes" if entry["surjective"] else "no",
                    ]
                )
        return _table(
            ["Bundle", "Degree", "Primitives", "Rank", "Surjective"],
            rows,
            "Surjectivity of the orbit map, degree by degree.",
        )
    if verb == "scan":
        rows = []
        for entry in results:
            for point in entry["per_point"]:
                params = ", ".join(f"{k}={v}" for k, v in sorted(point["params"].items()))
                rows.append(
                    [
                        params,
                        "yes" if point["surjective"] else "no",
                        ", ".join(map(str, point["failures"])) or "--",
                    ]
                )
        return _table(
            ["Parameters", "Surjective", "Failing degrees"],
            rows,
            "Division-phenomena scan.",
        )
    raise ValueError(f"no LaTeX renderer for verb {verb!r}; use --format json")
