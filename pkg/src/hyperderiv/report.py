"""Report documents and their JSON / text / LaTeX renderings.

A report is a nested dict with string keys whose leaves are plain JSON
values or ``Polynomial`` objects. Machine formats print polynomials in the
canonical grammar; LaTeX maps x[i,j] to wp_{i;j}.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from importlib import resources
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from .exactalg import Polynomial, serialize, to_latex

SCHEMA_VERSION = 1
FORMATS = ("json", "text", "latex")
GOLDEN_ENV = "HYPERDERIV_GOLDEN_DIR"


def artifact_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "0+unknown"


def _plain(obj, poly):
    if isinstance(obj, Polynomial):
        return poly(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v, poly) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v, poly) for v in obj]
    return obj


def to_json(report: dict) -> str:
    doc = {"schema": SCHEMA_VERSION, **_plain(report, serialize)}
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text_lines(obj, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    for key in sorted(obj):
        val = obj[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text_lines(val, indent + 1) if val else [f"{pad}  (empty)"])
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                sub = _text_lines(item, indent + 2)
                sub[0] = f"{pad}  - " + sub[0].lstrip()
                lines.extend(sub)
        else:
            lines.append(f"{pad}{key}: {json.dumps(val) if isinstance(val, list) else val}")
    return lines


def to_text(report: dict) -> str:
    lines = _text_lines(_plain(report, serialize), 0)
    return "\n".join(lines) + "\n" if lines else ""


def _latex_leaf(val) -> str:
    if isinstance(val, Polynomial):
        return f"${to_latex(val)}$"
    text = str(val)
    for ch in "_#%&":
        text = text.replace(ch, "\\" + ch)
    return f"\\texttt{{{text}}}"


def _latex_items(obj, prefix: str) -> list[str]:
    out = []
    for key in sorted(obj, key=str):
        val = obj[key]
        path = f"{prefix}/{key}" if prefix else str(key)
        if isinstance(val, dict):
            out.extend(_latex_items(val, path))
        elif isinstance(val, (list, tuple)):
            for i, item in enumerate(val):
                if isinstance(item, dict):
                    out.extend(_latex_items(item, f"{path}/{i}"))
                else:
                    out.append(f"  \\item[{{{_escape(f'{path}/{i}')}}}] {_latex_leaf(item)}")
        else:
            out.append(f"  \\item[{{{_escape(path)}}}] {_latex_leaf(val)}")
    return out


def _escape(s: str) -> str:
    return s.replace("_", "\\_").replace("#", "\\#").replace("%", "\\%").replace("&", "\\&")


def to_latex_doc(report: dict) -> str:
    items = _latex_items(report, "")
    if not items:
        return "% empty report\n"
    return "\\begin{description}\n" + "\n".join(items) + "\n\\end{description}\n"


def emit_report(report: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        text = to_json(report)
    elif fmt == "text":
        text = to_text(report)
    elif fmt == "latex":
        text = to_latex_doc(report)
    else:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return text.encode("utf-8")


def golden_path(name: str) -> Path:
    override = os.environ.get(GOLDEN_ENV)
    if override:
        return Path(override) / name
    return Path(str(resources.files("hyperderiv") / "golden" / name))
