"""Serializable records and the JSON/CSV writers used by the CLI.

Documents are UTF-8 with LF endings and sorted JSON keys, so emitting,
parsing and re-emitting gives back the same bytes.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
from dataclasses import asdict, dataclass

from . import classify, digraph, inverse_relation, tmap
from .inverse_relation import SCharacter
from .modmath import euler_phi, prime_context

CSV_COLUMNS = ("p", "c", "n", "e", "phi", "q1", "q2", "s_character")

REDUCTION_NOTE = (
    "T(p) is computed here by factoring p-1, so this run shows the mechanics "
    "of the triplet-to-factors reduction only; it is not a factoring attack."
)


@dataclass(frozen=True)
class TripletRecord:
    p: int
    c: int
    n: int
    e: int
    phi: int
    q1: int | None
    q2: int | None
    s_character: str


def s_character_of(p: int) -> SCharacter:
    """Observed S for small primes, predicted from ``n`` above the digraph limit."""
    ctx = prime_context(p)
    if not ctx.is_p3 or p % 4 != 3:
        return SCharacter.NOT_APPLICABLE
    if p > tmap.DIGRAPH_LIMIT:
        return inverse_relation.s_character_predicate(ctx, digraph.triplet_arithmetic(ctx).n)
    part = digraph.build_partition(ctx)
    dg = digraph.build_digraph(part)
    nip = inverse_relation.build_ni_partition(ctx, part)
    return inverse_relation.relation_S(ctx, dg, nip).character


def triplet_record(p: int) -> TripletRecord:
    ctx = prime_context(p)
    t = tmap.compute_T(p)
    q1, q2 = (ctx.q1, ctx.q2) if ctx.is_p3 else (None, None)
    return TripletRecord(p, *t, euler_phi(ctx.pm1), q1, q2, s_character_of(p).value)


def classification_doc(p: int) -> dict:
    ctx = prime_context(p)
    cls = classify.classify_all(ctx)
    return {
        "p": p,
        "residues": list(cls.residues),
        "generators": list(cls.generators),
        "nongen_nonresidues": list(cls.nongen_nonresidues),
        "counts": {
            "residues": len(cls.residues),
            "nonresidues": len(cls.nonresidues),
            "generators": len(cls.generators),
            "nongen_nonresidues": len(cls.nongen_nonresidues),
        },
        "M_p": classify.cardinality_M(ctx.pm1),
        "N_p": classify.cardinality_N(ctx.pm1),
    }


def missing_doc(p: int, g: int | None = None) -> dict:
    ctx = prime_context(p)
    gens = [g] if g is not None else list(classify.classify_all(ctx).generators)
    table = classify.missing_table(ctx)
    entries = []
    for h in gens:
        m = classify.set_M(h, ctx) if g is not None else table.set_of(h)
        entries.append({"g": h, "missing": sorted(m)})
    return {"p": p, "M_p": classify.cardinality_M(ctx.pm1), "sets": entries}


def digraph_doc(dg: digraph.MissingDigraph) -> dict:
    part = dg.partition
    return {
        "p": part.ctx.p,
        "vertices": [list(b) for b in part.blocks],
        "edges": [[u, v] for u, v in enumerate(dg.edges)],
        "cycles": [list(c) for c in dg.cycles],
        "triplet": list(digraph.triplet_from_digraph(dg)),
    }


def factoring_doc(report: tmap.FactoringReport) -> dict:
    i, j, p = report.chosen
    return {
        "N": report.N,
        "bound": report.bound,
        "search_trace": [asdict(e) for e in report.search_trace],
        "chosen": {"i": i, "j": j, "p": p},
        "triplet": {"c": report.triplet.c, "n": report.triplet.n, "e": report.triplet.e},
        "method": report.method,
        "recovered": list(report.recovered),
        "elapsed": report.elapsed,
        "note": REDUCTION_NOTE,
    }


def _pair(h):
    return list(h) if h is not None else None


def scan_doc(scan: tmap.AssumptionAScan) -> dict:
    return {
        "N": scan.N,
        "bound": scan.bound,
        "hits": [list(h) for h in scan.hits],
        "first_hit": _pair(scan.first_hit),
        "strict_first_hit": _pair(scan.strict_first_hit),
        "exhaustive": scan.exhaustive,
    }


def dumps_json(doc, reproducible: bool = False) -> str:
    if isinstance(doc, dict):
        doc = dict(doc)
        if reproducible:
            doc.pop("elapsed", None)
        else:
            doc["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def reemit_json(text: str) -> str:
    """Parse a document and write it back; used to check byte-stability."""
    return json.dumps(json.loads(text), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dumps_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(["" if getattr(r, col) is None else getattr(r, col) for col in CSV_COLUMNS])
    return buf.getvalue()


def reemit_csv(text: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(csv.reader(io.StringIO(text)))
    return buf.getvalue()


def parse_csv(text: str) -> list[TripletRecord]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        ints = {k: (int(row[k]) if row[k] else None) for k in CSV_COLUMNS[:-1]}
        out.append(TripletRecord(**ints, s_character=row["s_character"]))
    return out
