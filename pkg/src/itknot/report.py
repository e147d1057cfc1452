"""The aggregate analysis report and its JSON / text renderings.

Every integer is written to JSON as a decimal string.  ``A_r`` outgrows 64
bits after a handful of cablings and JSON readers that coerce to float would
silently round it.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .errors import ParseError, UnsupportedRegimeError
from .invariants import Case, InvariantRow, InvariantTable, fails_utp, invariant_table
from .knots import Frame, IteratedTorusKnot, format_knot, parse_knot, to_frame
from .legendrian import (
    LegendrianClass,
    NonSimpleCabling,
    _cabling_record,
    enumerate_nonsimple_cablings,
    mountain_range_slice,
    witness_pairs,
)
from .slopes import parse_unreduced
from .solid_tori import TorusClass, TorusStatus, catalog, row_fields

SCHEMA_VERSION = 1
TABLE_FIELDS = ("i", "A", "B", "P", "p", "q", "chi", "genus", "tbbar", "width", "tbar", "C", "case")


@dataclass
class Report:
    knot: IteratedTorusKnot
    table: InvariantTable
    fails_utp: bool
    tori: Optional[list[TorusClass]] = None
    slice: Optional[list[LegendrianClass]] = None
    cablings: Optional[list[NonSimpleCabling]] = None
    unsupported: list[str] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def supports_standard_structure(self) -> bool:
        return self.fails_utp


def default_cabling_kmax(k: IteratedTorusKnot) -> int:
    row = invariant_table(k)[-1]
    return row.A - row.B + 10


def analyze(k: IteratedTorusKnot, kmax: Optional[int] = None, tori_kmax: Optional[int] = None, frame: Frame = Frame.C) -> Report:
    table = invariant_table(k)
    rep = Report(knot=k, table=table, fails_utp=fails_utp(k))
    if k.all_positive:
        ck = kmax if kmax is not None else default_cabling_kmax(k)
        tk = tori_kmax if tori_kmax is not None else (kmax if kmax is not None else 10)
        rep.tori = catalog(k, k.r, tk)
        rep.slice = mountain_range_slice(k)
        rep.cablings = enumerate_nonsimple_cablings(k, max(ck, 1))
    else:
        rep.unsupported = ["chi", "genus", "tbbar", "width", "tbar", "C", "tori", "slice", "cablings"]
    rep.metadata = {
        "tool": "itknot",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "kmax": kmax,
        "frame": frame.name,
    }
    return rep


# --------------------------------------------------------------------------- JSON


def _s(x):
    return None if x is None else str(x)


def _i(x):
    return None if x is None else int(x)


def _row_to_dict(row: InvariantRow) -> dict:
    d = {}
    for f in TABLE_FIELDS:
        v = getattr(row, f)
        d[f] = v.value if isinstance(v, Case) else _s(v)
    return d


def _row_from_dict(d: dict) -> InvariantRow:
    kw = {f: _i(d[f]) for f in TABLE_FIELDS if f != "case"}
    kw["case"] = Case(d["case"]) if d["case"] is not None else None
    return InvariantRow(**kw)


def _cabling_to_dict(c: NonSimpleCabling) -> dict:
    w = witness_pairs(c)
    return {
        "k": str(c.k),
        "cable_c": [str(c.cable_c.first), str(c.cable_c.q)],
        "cable_cprime": [str(c.cable_cprime.first), str(c.cable_cprime.q)],
        "tbbar": str(c.tbbar),
        "rot_pair": [str(c.rot), str(-c.rot)],
        "slbar": str(c.slbar),
        "chi_cable": str(c.chi_cable),
        "witnesses": {
            "divides": [_point_to_dict(L) for L in w.divides],
            "thickenable": [_point_to_dict(L) for L in w.thickenable],
            "pushoff_sl": {name: {s: str(v) for s, v in sl.items()} for name, sl in w.pushoffs.items()},
            "distinct": w.distinct,
        },
    }


def _point_to_dict(L: LegendrianClass) -> dict:
    return {"tb": str(L.tb), "rot": str(L.rot), "label": L.label}


def _torus_from_dict(d: dict) -> TorusClass:
    return TorusClass(
        r=int(d["r"]),
        k=int(d["k"]),
        slope_cprime=parse_unreduced(d["slope_cprime"]),
        slope_c=parse_unreduced(d["slope_c"]),
        n=int(d["n"]),
        dividing_curves=int(d["dividing_curves"]),
        status=TorusStatus(d["status"]),
    )


def report_to_dict(rep: Report) -> dict:
    k = rep.knot
    return {
        "knot": {
            "C": format_knot(to_frame(k, Frame.C)),
            "Cprime": format_knot(to_frame(k, Frame.CPRIME)),
        },
        "utp": {
            "fails_utp": rep.fails_utp,
            "supports_standard_structure": rep.supports_standard_structure,
        },
        "table": [_row_to_dict(r) for r in rep.table.rows],
        "tori": None if rep.tori is None else [row_fields(t) for t in rep.tori],
        "slice": None if rep.slice is None else [_point_to_dict(L) for L in rep.slice],
        "cablings": None if rep.cablings is None else [_cabling_to_dict(c) for c in rep.cablings],
        "unsupported": list(rep.unsupported),
        "metadata": {key: _s(v) if isinstance(v, int) and not isinstance(v, bool) else v for key, v in rep.metadata.items()},
    }


def report_from_dict(d: dict) -> Report:
    k = parse_knot(d["knot"]["C"])
    table = InvariantTable(tuple(_row_from_dict(r) for r in d["table"]))
    tori = None if d["tori"] is None else [_torus_from_dict(t) for t in d["tori"]]
    slc = None
    if d["slice"] is not None:
        slc = [LegendrianClass(int(p["tb"]), int(p["rot"]), p["label"]) for p in d["slice"]]
    cabs = None
    if d["cablings"] is not None:
        cabs = []
        if d["cablings"]:
            row = table[-1]
            cabs = [_cabling_record(k, row.A, row.B, int(c["k"])) for c in d["cablings"]]
    meta = dict(d["metadata"])
    for key in ("schema", "kmax"):
        if meta.get(key) is not None:
            meta[key] = int(meta[key])
    return Report(
        knot=k,
        table=table,
        fails_utp=bool(d["utp"]["fails_utp"]),
        tori=tori,
        slice=slc,
        cablings=cabs,
        unsupported=list(d["unsupported"]),
        metadata=meta,
    )


def report_to_json(rep: Report) -> str:
    return json.dumps(report_to_dict(rep), indent=2)


def report_from_json(text: str) -> Report:
    return report_from_dict(json.loads(text))


# --------------------------------------------------------------------------- text


def digit_cap() -> int:
    raw = os.environ.get("ITK_MAX_DIGITS", "0").strip() or "0"
    try:
        return max(0, int(raw))
    except ValueError:
        raise ParseError(f"ITK_MAX_DIGITS must be an integer, got {raw!r}") from None


def cap_digits(text: str, cap: Optional[int] = None) -> str:
    """Shorten every digit run longer than ``ITK_MAX_DIGITS``; 0 leaves text unchanged."""
    cap = digit_cap() if cap is None else cap
    if cap <= 0:
        return text
    return re.sub(
        r"\d{%d,}" % (cap + 1), lambda m: f"{m.group(0)[:cap]}...[{len(m.group(0))} digits]", text
    )


def aligned(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]
    fmt = lambda r: "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([fmt(headers), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows])


def table_text(table: InvariantTable) -> str:
    rows = []
    for row in table.rows:
        d = _row_to_dict(row)
        rows.append(["-" if d[f] is None else d[f] for f in TABLE_FIELDS])
    return aligned(list(TABLE_FIELDS), rows)


def tori_text(tori: list[TorusClass]) -> str:
    cols = ["r", "k", "slope_cprime", "slope_c", "n", "dividing_curves", "status"]
    return aligned(cols, [[row_fields(t)[c] for c in cols] for t in tori])


def points_text(points: list[LegendrianClass]) -> str:
    return aligned(["tb", "rot", "label"], [[str(L.tb), str(L.rot), L.label] for L in points])


def cablings_text(cabs: list[NonSimpleCabling], frame: Frame = Frame.C) -> str:
    rows = []
    for c in cabs:
        pair = c.cable_c if frame is Frame.C else c.cable_cprime
        rows.append([str(c.k), str(pair), str(c.tbbar), f"+-{c.rot}", str(c.slbar), str(c.chi_cable)])
    return aligned(["k", "cable", "tbbar", "rot", "slbar", "chi"], rows)


def report_text(rep: Report) -> str:
    frame = Frame[rep.metadata.get("frame", "C")]
    k = rep.knot
    out = [
        f"knot      {format_knot(to_frame(k, Frame.C))}",
        f"          {format_knot(to_frame(k, Frame.CPRIME))}",
        "UTP       " + ("fails (every P_i > 0)" if rep.fails_utp else "holds (some P_i < 0)"),
        "xi_K      " + ("standard" if rep.supports_standard_structure else "not standard"),
        "",
        "invariants",
        table_text(rep.table),
    ]
    sections = (
        ("solid tori N_r^k", rep.tori, tori_text),
        ("mountain range slice", rep.slice, points_text),
        (f"non-simple cablings (frame {frame.value})", rep.cablings, lambda c: cablings_text(c, frame)),
    )
    for title, data, render in sections:
        out += ["", title]
        if data is None:
            out.append("  unsupported-regime: requires every P_i > 0")
        elif not data:
            out.append("  (none in range)")
        else:
            out.append(render(data))
    return cap_digits("\n".join(out)) + "\n"


__all__ = [
    "Report",
    "UnsupportedRegimeError",
    "analyze",
    "report_from_json",
    "report_to_json",
    "report_text",
]
