"""Built-in group corpus, cross-criterion verification sweeps, and reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from enum import Enum

from . import construct
from .codes import (
    connection_set_from_transversal,
    decide,
    double_coset_condition,
    find_inverse_closed_transversal,
    is_perfect_code_in_cayley_graph,
    omega_criterion,
    search_connection_set,
    square_coset_condition,
    sylow_reduction,
)
from .extraspecial import (
    Family,
    build_family,
    classify_extraspecial,
    classify_sylow_extraspecial,
    is_extraspecial,
)
from .group import FiniteGroup, Subgroup, full_subgroup, subgroup_as_group
from .subgroups import all_subgroups, is_normal, minimal_conjugate, sylow_2_subgroup

GRAPH_ORACLE_CAP = 16

DEFAULT_CRITERIA = (
    "decide",
    "transversal",
    "square-coset",
    "double-coset",
    "omega-quotient",
    "sylow-reduction",
)

ALL_CRITERIA = DEFAULT_CRITERIA + ("graph",)


class Provenance(str, Enum):
    BUILTIN = "builtin"
    FILE = "file"
    CONSTRUCTED = "constructed"


@dataclass(frozen=True)
class CorpusEntry:
    group: FiniteGroup
    provenance: Provenance
    tags: frozenset[str]


def auto_tags(G: FiniteGroup) -> frozenset[str]:
    """Structural labels computed at ingestion.

    ``odd-order``; ``extraspecial``; ``sylow2-extraspecial`` when the Sylow
    2-subgroup is extraspecial; ``code-perfect`` when no element has order 4
    (in such groups every subgroup is a perfect code).
    """
    tags: set[str] = set()
    if G.order % 2 == 1:
        tags.add("odd-order")
    if all(o != 4 for o in G.element_orders):
        tags.add("code-perfect")
    if is_extraspecial(G).is_extraspecial:
        tags.add("extraspecial")
    if G.order % 2 == 0:
        G2 = sylow_2_subgroup(G, full_subgroup(G))
        sylow_group, _ = subgroup_as_group(G, G2)
        if is_extraspecial(sylow_group).is_extraspecial:
            tags.add("sylow2-extraspecial")
    return frozenset(tags)


def make_entry(G: FiniteGroup, provenance: Provenance = Provenance.BUILTIN) -> CorpusEntry:
    return CorpusEntry(group=G, provenance=provenance, tags=auto_tags(G))


def builtin_corpus(include_m3: bool = False) -> list[CorpusEntry]:
    """The deterministic built-in corpus.

    Cyclic groups up to order 16, elementary abelian 2-groups up to rank 4,
    dihedral groups up to order 16, the quaternion groups Q8 and Q16, the
    extraspecial families at m <= 2 (m = 3 behind the flag), S3, S4, A4,
    SL(2,3) and D8 x Z3.
    """
    groups: list[tuple[FiniteGroup, Provenance]] = []
    for n in range(1, 17):
        groups.append((construct.cyclic(n), Provenance.BUILTIN))
    for k in range(2, 5):
        groups.append((construct.elementary_abelian(k), Provenance.BUILTIN))
    for order in range(6, 17, 2):
        groups.append((construct.dihedral(order), Provenance.BUILTIN))
    groups.append((construct.dicyclic(8), Provenance.BUILTIN))
    groups.append((construct.dicyclic(16), Provenance.BUILTIN))
    top_m = 3 if include_m3 else 2
    for m in range(1, top_m + 1):
        groups.append((build_family(m, Family.GM1), Provenance.CONSTRUCTED))
        groups.append((build_family(m, Family.GM2), Provenance.CONSTRUCTED))
    groups.append((construct.symmetric(3), Provenance.BUILTIN))
    groups.append((construct.symmetric(4), Provenance.BUILTIN))
    groups.append((construct.alternating(4), Provenance.BUILTIN))
    groups.append((construct.special_linear_2_3(), Provenance.BUILTIN))
    groups.append(
        (
            construct.direct_product(
                construct.dihedral(8), construct.cyclic(3), name="D8xZ3"
            ),
            Provenance.BUILTIN,
        )
    )
    return [make_entry(G, prov) for G, prov in groups]


@dataclass(frozen=True, eq=False)
class CrossCheckReport:
    """Per-(group, subgroup) verdicts with an agreement gate.

    ``rows`` is the byte-stable section; ``row_ms`` carries the wall-clock
    timings in row order and is excluded from stable output.
    """

    criteria: tuple[str, ...]
    rows: tuple[dict, ...]
    summary: dict
    row_ms: tuple[float, ...]

    @property
    def disagreements(self) -> int:
        return self.summary["disagreements"]


def _row_verdicts(G: FiniteGroup, H: Subgroup, criteria: tuple[str, ...], tags: frozenset[str]) -> dict:
    verdicts: dict[str, bool] = {}
    if "decide" in criteria:
        verdicts["decide"] = decide(G, H).is_perfect_code
    if "transversal" in criteria:
        T = find_inverse_closed_transversal(G, H)
        verdicts["transversal"] = T is not None
        if T is not None:
            S = connection_set_from_transversal(G, H, T)
            verdicts["graph-witness"] = is_perfect_code_in_cayley_graph(G, S, H)
    if "square-coset" in criteria:
        verdicts["square-coset"] = square_coset_condition(G, H).is_perfect_code
    if "double-coset" in criteria:
        verdicts["double-coset"] = double_coset_condition(G, H).is_perfect_code
    if "omega-quotient" in criteria:
        size = len(H)
        if size & (size - 1) == 0 or is_normal(G, H):
            verdicts["omega-quotient"] = omega_criterion(G, H).is_perfect_code
    if "sylow-reduction" in criteria:
        red = sylow_reduction(G, H)
        verdicts["reduction-h2-in-p"] = red.h2_code_in_p
        verdicts["reduction-omega-n2"] = red.omega_sylow_quotient
        verdicts["reduction-omega-n"] = red.omega_full_quotient
        verdicts["reduction-h-in-g"] = red.h_code_in_g
    if "graph" in criteria and G.order <= GRAPH_ORACLE_CAP:
        verdicts["graph"] = search_connection_set(G, H) is not None
    if "extraspecial" in tags:
        verdicts["extraspecial-classification"] = classify_extraspecial(
            G, H
        ).is_perfect_code
    if "sylow2-extraspecial" in tags:
        verdicts["sylow-extraspecial-classification"] = classify_sylow_extraspecial(
            G, H
        ).is_perfect_code
    return verdicts


def cross_check(
    corpus: list[CorpusEntry],
    criteria: tuple[str, ...] | list[str] | None = None,
    max_order: int = 64,
    dedupe_conjugates: bool = False,
) -> CrossCheckReport:
    """Run every selected criterion on every subgroup of every corpus group.

    Groups larger than ``max_order`` are skipped.  Disagreements are counted,
    never resolved: the criteria are provably equivalent, so any disagreement
    is an implementation bug.  Rows are produced in canonical order, so the
    stable report sections are identical byte-for-byte across runs.
    """
    selected = tuple(criteria) if criteria else DEFAULT_CRITERIA
    for name in selected:
        if name not in ALL_CRITERIA:
            raise ValueError(f"unknown criterion {name!r}; choose from {ALL_CRITERIA}")
    rows: list[dict] = []
    timings: list[float] = []
    groups_run = 0
    perfect = 0
    disagreements = 0
    for entry in corpus:
        G = entry.group
        if G.order > max_order:
            continue
        groups_run += 1
        subs = all_subgroups(G, None, max(128, max_order))
        if dedupe_conjugates:
            keep = []
            seen: set[frozenset[int]] = set()
            for H in subs:
                rep = minimal_conjugate(G, H)
                if rep.elements not in seen:
                    seen.add(rep.elements)
                    keep.append(rep)
            subs = tuple(keep)
        for H in subs:
            start = time.perf_counter()
            verdicts = _row_verdicts(G, H, selected, entry.tags)
            timings.append((time.perf_counter() - start) * 1000.0)
            agree = len(set(verdicts.values())) <= 1
            consensus = verdicts.get("decide", next(iter(verdicts.values()), False))
            if consensus:
                perfect += 1
            if not agree:
                disagreements += 1
            rows.append(
                {
                    "group": G.name or "",
                    "order": G.order,
                    "subgroup": H.indices(),
                    "verdicts": verdicts,
                    "agree": agree,
                }
            )
    summary = {
        "groups": groups_run,
        "rows": len(rows),
        "perfect_codes": perfect,
        "disagreements": disagreements,
        "criteria": list(selected),
        "max_order": max_order,
    }
    return CrossCheckReport(
        criteria=selected,
        rows=tuple(rows),
        summary=summary,
        row_ms=tuple(timings),
    )


def _agreement_block(rows: tuple[dict, ...], keys: tuple[str, ...]) -> tuple[int, int]:
    """(rows where all present keys agree, rows where any key is present)."""
    agreeing = 0
    present = 0
    for row in rows:
        values = [row["verdicts"][k] for k in keys if k in row["verdicts"]]
        if not values:
            continue
        present += 1
        baseline = row["verdicts"].get("decide", values[0])
        if all(v == baseline for v in values):
            agreeing += 1
    return agreeing, present


_COSET_KEYS = ("transversal", "square-coset", "double-coset", "graph-witness")
_REDUCTION_KEYS = (
    "reduction-h2-in-p",
    "reduction-omega-n2",
    "reduction-omega-n",
    "reduction-h-in-g",
)
_CLASSIFICATION_KEYS = (
    "extraspecial-classification",
    "sylow-extraspecial-classification",
)


def report_emit(
    report: CrossCheckReport, fmt: str = "json", include_timings: bool = True
) -> str:
    """Render a report; field order is stable and timings sit in their own
    (non-stable) trailing section."""
    if fmt == "json":
        doc: dict = {
            "schema": "cross-check-report/v1",
            "summary": report.summary,
            "rows": list(report.rows),
        }
        if include_timings:
            doc["timings"] = {
                "row_ms": [round(ms, 3) for ms in report.row_ms],
                "total_ms": round(sum(report.row_ms), 3),
            }
        return json.dumps(doc, indent=2) + "\n"
    if fmt in ("md", "markdown"):
        s = report.summary
        lines = [
            "# Cross-check report",
            "",
            "## Summary",
            "",
            f"- groups: {s['groups']}",
            f"- subgroup rows: {s['rows']}",
            f"- perfect codes: {s['perfect_codes']}",
            f"- disagreements: {s['disagreements']}",
            f"- criteria: {', '.join(s['criteria'])}",
            "",
            "## Criterion agreement",
            "",
        ]
        for title, keys in (
            ("Coset criteria (transversal / square / double / witness)", _COSET_KEYS),
            ("Sylow reduction (four statements)", _REDUCTION_KEYS),
            ("Classifications", _CLASSIFICATION_KEYS),
        ):
            agreeing, present = _agreement_block(report.rows, keys)
            lines.append(f"- {title}: {agreeing}/{present} rows agree")
        lines += ["", "## Rows", "", "| group | subgroup | perfect code | agree |", "| --- | --- | --- | --- |"]
        for row in report.rows:
            consensus = row["verdicts"].get(
                "decide", next(iter(row["verdicts"].values()), False)
            )
            sub = ",".join(str(i) for i in row["subgroup"])
            lines.append(
                f"| {row['group']} | {{{sub}}} | {str(consensus).lower()} | {str(row['agree']).lower()} |"
            )
        if include_timings:
            lines += [
                "",
                "## Timings (non-stable)",
                "",
                f"- total: {sum(report.row_ms):.1f} ms over {len(report.row_ms)} rows",
            ]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported report format {fmt!r}")
