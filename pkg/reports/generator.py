"""
Report Generator - Render command results as markdown, JSON or CSV
"""
import json
import logging
import os
import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, List, Optional

import pandas as pd

import config
from classification.classify import TypeOrbit, nef_pairing_twice
from errors import ArgumentError
from lattice.picard import Conditionality, Surface, format_divisor, format_rational
from moduli.walls import CohomologyReport, ComponentCertificate, EventKind, ModuliSnapshot, WallEvent
from numtheory.contfrac import Convergent
from numtheory.diophantine import PellSolution

logger = logging.getLogger(__name__)

FORMATS = ("markdown", "json", "csv")
EXTENSIONS = {"markdown": "md", "json": "json", "csv": "csv"}

EMPTY_MESSAGE = "M_{{A_t}}(2, K, chi) is empty for every ample divisor when n = {n} <= 9"


@dataclass
class Report:
    """One command result: a table plus the JSON payload behind it."""

    command: str
    columns: List[str]
    rows: List[List[str]]
    payload: Dict
    notes: List[str] = field(default_factory=list)


def _note(conditionality: Optional[Conditionality]) -> List[str]:
    if conditionality is Conditionality.REQUIRES_SHGH:
        return ["Conditional on the SHGH conjecture."]
    if conditionality is Conditionality.REQUIRES_NAGATA:
        return ["Conditional on the Nagata conjecture."]
    return []


def component_text(dim: int, copies: int) -> str:
    space = f"P^{dim}"
    return space if copies == 1 else f"{copies} copies of {space}"


def orbit_summary(orbit: TypeOrbit) -> str:
    """O, E_i (16 copies), H-E_i (25 copies), 15H-5E_1-4E_{2,...,13} (13 copies)"""
    label = str(orbit.representative)
    if orbit.copies == 1:
        return label
    if "E_{" not in label:
        label = re.sub(r"E_1(?![0-9])", "E_i", label)
    return f"{label} ({orbit.copies} copies)"


# =============================================================================
# BUILDERS
# =============================================================================

def walls_report(s: Surface, chi_value: int, events: List[WallEvent]) -> Report:
    if s.moduli_empty_for_every_ample:
        return Report("walls", [], [], {"n": s.n, "chi": chi_value, "empty": True, "events": []},
                      [EMPTY_MESSAGE.format(n=s.n)])
    labelled = s.n == 13
    columns = ["D", "t_D", "New component"] + (["Type"] if labelled else [])
    rows = []
    for e in events:
        if e.kind is EventKind.EMPTINESS_BOUNDARY:
            continue
        if e.kind is EventKind.BLOWUP_MODIFICATION:
            text = f"none; previous P^{s.n - 11} blown up {e.copies} times"
        else:
            text = component_text(e.component_dim, e.copies)
        row = [str(e.divisor), format_rational(e.t), text]
        if labelled:
            row.append(e.orbit.family_label or "")
        rows.append(row)
    conditionality = events[0].conditionality if events else None
    payload = {"n": s.n, "chi": chi_value, "empty": False,
               "events": [e.to_json() for e in events]}
    return Report("walls", columns, rows, payload, _note(conditionality))


def classify_report(s: Surface, chi_target: int, orbits: List[TypeOrbit]) -> Report:
    columns = ["D", "copies", "chi", "t_D"]
    if s.is_square:
        columns.append("2B.D")
    labelled = any(o.family_label for o in orbits)
    if labelled:
        columns.append("Family")
    rows = []
    for o in orbits:
        row = [str(o.representative), str(o.copies), str(o.chi), format_rational(o.t_wall)]
        if s.is_square:
            row.append(str(nef_pairing_twice(o.representative)))
        if labelled:
            row.append(o.family_label or "")
        rows.append(row)

    families: Dict[str, List[Dict]] = {}
    for o in orbits:
        if o.family_label:
            families.setdefault(o.family_label, []).append(o.to_json())
    payload = {
        "n": s.n,
        "chi": chi_target,
        "types": [o.to_json() for o in orbits],
        "families": [{"label": k, "members": v} for k, v in families.items()],
    }
    notes = ["Types: " + ", ".join(orbit_summary(o) for o in orbits)]
    notes += _note(orbits[0].conditionality if orbits else None)
    return Report("classify", columns, rows, payload, notes)


def snapshot_report(snap: ModuliSnapshot) -> Report:
    rows = [[str(c.divisor), c.describe()] for c in snap.components]
    if not snap.components:
        notes = [f"t = {format_rational(snap.t)}: the moduli space is empty"]
        if snap.n <= 9:
            notes = [EMPTY_MESSAGE.format(n=snap.n)]
    else:
        notes = [f"t = {format_rational(snap.t)}: " + ", ".join(c.describe() for c in snap.components)]
    return Report("snapshot", ["D", "Component"], rows, snap.to_json(), notes + _note(snap.conditionality))


def convergents_report(n: int, items: List[Convergent]) -> Report:
    rows = [[str(c.k), str(c.p), str(c.q), f"{c.p}/{c.q}"] for c in items]
    payload = {"n": n, "convergents": [c.to_json() for c in items]}
    return Report("convergents", ["k", "p_k", "q_k", "p_k/q_k"], rows, payload)


def pell_report(n: int, N: int, solutions: List[PellSolution]) -> Report:
    rows = [[str(p.x), str(p.y)] for p in solutions]
    payload = {"n": n, "N": N, "solutions": [p.to_json() for p in solutions]}
    return Report("pell", ["x", "y"], rows, payload)


def cohomology_report(report: CohomologyReport) -> Report:
    rows = [
        [name, *(str(h) for h in triple)]
        for name, triple in (("D", report.h_D), ("2D", report.h_2D), ("2D-K", report.h_2D_minus_K))
    ]
    notes = [f"D = {format_divisor(report.divisor, by_index=True)}"] + _note(report.conditionality)
    return Report("cohomology", ["bundle", "h^0", "h^1", "h^2"], rows, report.to_json(), notes)


def certificate_report(s: Surface, cert: ComponentCertificate) -> Report:
    rows = [[str(o.divisor), str(o.dim), f"[{o.lo}, {o.hi}]", format_rational(o.t_wall)]
            for o in cert.orbits]
    notes = [f"t* = {format_rational(cert.t_star)}"] + _note(Conditionality.REQUIRES_SHGH)
    return Report("certificate", ["D", "dim", "bounds", "t_D"], rows,
                  {"n": s.n, **cert.to_json()}, notes)


# =============================================================================
# RENDERING AND EXPORT
# =============================================================================

class ReportGenerator:
    """Render reports and export them to the output directory"""

    def __init__(self, output_dir: str = None):
        self.output_dir = output_dir or config.OUTPUT_DIR

    def render(self, report: Report, fmt: str = "markdown") -> str:
        if fmt == "markdown":
            return self.to_markdown(report)
        if fmt == "json":
            return self.to_json(report)
        if fmt == "csv":
            return self.to_csv(report)
        raise ArgumentError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

    def to_markdown(self, report: Report) -> str:
        lines = []
        if report.columns:
            lines.append("| " + " | ".join(report.columns) + " |")
            lines.append("|" + "|".join("---" for _ in report.columns) + "|")
            lines.extend("| " + " | ".join(row) + " |" for row in report.rows)
        if report.notes:
            if lines:
                lines.append("")
            lines.extend(report.notes)
        return "\n".join(lines) + "\n"

    def to_json(self, report: Report) -> str:
        return json.dumps(report.payload, indent=2, ensure_ascii=False) + "\n"

    def to_csv(self, report: Report) -> str:
        frame = pd.DataFrame(report.rows, columns=report.columns, dtype=str)
        return frame.to_csv(index=False)

    def export(self, report: Report, fmt: str = "markdown", filename: str = None) -> str:
        """Write the rendered report under output_dir and return its path"""
        if filename is None:
            stamp = datetime.now().strftime('%Y%m%d_%H%M%S')
            filename = f"{report.command}_report_{stamp}.{EXTENSIONS[fmt]}"
        os.makedirs(self.output_dir, exist_ok=True)
        filepath = os.path.join(self.output_dir, filename)
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self.render(report, fmt))
        logger.info("saved %s report to %s", report.command, filepath)
        return filepath
