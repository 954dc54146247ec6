"""Command line front end.

    torusorb analyze    --matrix "1 1 / 3 5"
    torusorb graph      --file lambda.txt --format json
    torusorb cohomology --spindle 3 2 --max-degree 8

Matrices are written row by row, rows separated by "/" (or newlines) and
entries by whitespace. The COLUMNS are the facet vectors: "1 1 / 3 5" has
lambda(F_1) = (1, 3) and lambda(F_2) = (1, 5).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

from .faces import faces
from .graph_cohomology import (
    corollary_presentation,
    default_max_degree,
    presentation,
    spindle_presentation,
    verify,
)
from .orbifold import (
    DEFAULT_CAP,
    CharMatrix,
    Unsupported,
    classify,
    integrality_constants,
    orbifold_graph,
    thom_class,
    validate,
)
from .poly import render, var_names

SCHEMA = "torusorb.report/1"

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3

REPORT_KEYS = (
    "schema", "command", "input", "n", "det", "determinant_divisors", "invariant_factors",
    "G", "N", "h3", "flags", "homeomorphism_type", "notes", "axial", "thom",
    "integrality", "presentation", "corollary", "hilbert", "verify",
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class InputSpec:
    char: CharMatrix
    source: str  # "inline", "spindle" or a file path


def parse_matrix_text(text: str) -> list[list[int]]:
    """Parse "1 1 / 3 5" (or one row per line) into rows of ints."""
    rows: list[list[int]] = []
    starts: list[tuple[int, int]] = []
    row: list[int] = []
    row_start = None
    line, col = 1, 1
    i = 0
    while i <= len(text):
        ch = text[i] if i < len(text) else "\n"
        if ch in "/\n" or i == len(text):
            if row:
                rows.append(row)
                starts.append(row_start)
            elif ch == "/":
                raise ParseError("empty row", line, col)
            row, row_start = [], None
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace() and text[j] != "/":
            j += 1
        token = text[i:j]
        try:
            value = int(token)
        except ValueError:
            raise ParseError(f"expected an integer, got {token!r}", line, col) from None
        if row_start is None:
            row_start = (line, col)
        row.append(value)
        col += j - i
        i = j
    if not rows:
        raise ParseError("no matrix entries found")
    width = len(rows[0])
    for r, (ln, cl) in zip(rows, starts):
        if len(r) != width:
            raise ParseError(f"row has {len(r)} entries, expected {width}", ln, cl)
    if len(rows) != width:
        raise ParseError(f"matrix must be square, got {len(rows)}x{width}")
    return rows


def parse_document(text: str) -> CharMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("structured input must be an object")
    if "spindle" in doc:
        m, k = doc["spindle"]
        return CharMatrix.spindle(int(m), int(k))
    if "columns" in doc:
        cols = doc["columns"]
        if not cols or any(len(c) != len(cols) for c in cols):
            raise ParseError("'columns' must be a square array of facet vectors")
        return CharMatrix.from_columns(cols)
    if isinstance(doc.get("input"), dict):  # a report fed back in
        return parse_document(json.dumps(doc["input"]))
    raise ParseError("expected a 'columns' or 'spindle' field")


def load_input(args: argparse.Namespace) -> InputSpec:
    if args.spindle is not None:
        return InputSpec(CharMatrix.spindle(*args.spindle), "spindle")
    if args.matrix is not None:
        return InputSpec(_from_rows(parse_matrix_text(args.matrix)), "inline")
    text = Path(args.file).read_text()
    if text.lstrip().startswith("{"):
        return InputSpec(parse_document(text), args.file)
    return InputSpec(_from_rows(parse_matrix_text(text)), args.file)


def _from_rows(rows: list[list[int]]) -> CharMatrix:
    if len(rows) == 1:
        raise ParseError("a 1x1 matrix is not accepted; use --spindle m n")
    return CharMatrix.from_rows(rows)


# --- report assembly -------------------------------------------------------------

def _group(g) -> Optional[dict]:
    if g is None:
        return None
    elements = None
    if g.elements is not None and len(g.elements) <= 64:
        elements = [str(e) for e in g.elements]
    return {
        "invariant_factors": list(g.invariant_factors),
        "order": g.order,
        "name": str(g),
        "elements": elements,
    }


def _names(char: CharMatrix) -> list[str]:
    return var_names(1 if char.is_spindle else char.n, aliases=True)


def empty_report(command: str, char: CharMatrix) -> dict[str, Any]:
    doc: dict[str, Any] = {k: None for k in REPORT_KEYS}
    doc["schema"] = SCHEMA
    doc["command"] = command
    if char.is_spindle:
        doc["input"] = {"spindle": list(char.spindle_labels)}
    else:
        doc["input"] = {"columns": [list(c) for c in char.columns]}
    doc["n"] = char.n
    doc["notes"] = []
    return doc


def analyze_report(char: CharMatrix, cap: int = DEFAULT_CAP) -> dict[str, Any]:
    rep = classify(char, cap)
    doc = empty_report("analyze", char)
    doc.update(
        det=rep.det,
        determinant_divisors=list(rep.determinant_divisors) if rep.determinant_divisors else None,
        invariant_factors=list(rep.invariant_factors) if rep.invariant_factors else None,
        G=_group(rep.G), N=_group(rep.N), h3=_group(rep.H3),
        flags={
            "is_diagonal": rep.is_diagonal,
            "is_sphere": rep.is_sphere,
            "det_is_unit": rep.det_is_unit,
            "h_odd": rep.h_odd,
        },
        homeomorphism_type=rep.homeomorphism_type,
        notes=list(rep.notes),
    )
    return doc


def graph_report(char: CharMatrix) -> dict[str, Any]:
    validate(char)
    og = orbifold_graph(char)
    names = _names(char)
    doc = empty_report("graph", char)
    doc["det"] = None if char.is_spindle else char.det
    doc["axial"] = [
        {
            "edge": e.label(),
            "from": e.initial,
            "to": e.terminal,
            "alpha": render(og.axial[e].to_poly(), names),
            "r": og.multiplier[e],
            "integral_form": render(og.integral_form(e).to_poly(), names),
        }
        for e in og.graph.edges
    ]
    doc["thom"] = []
    for F in faces(char.n):
        t = thom_class(char, F, og)
        doc["thom"].append({
            "face": F.label(),
            "cohomological_degree": t.cohomological_degree,
            "p": render(t.values["p"], names),
            "q": render(t.values["q"], names),
            "integralizer": t.integralizer,
        })
    if not char.is_spindle:
        c = integrality_constants(char)
        doc["integrality"] = {
            "ell": list(c.ell), "a": list(c.a), "a_p": c.a_p, "a_q": c.a_q,
            "adj_over_ell": [list(r) for r in c.adj_over_ell],
            "signed_diagonal": list(c.signed_diagonal),
        }
        note = c.discrepancy_note()
        if note:
            doc["notes"].append(note)
    return doc


def _presentation_doc(P) -> dict[str, Any]:
    return {
        "label": P.label,
        "generators": [{"name": n, "degree": d} for n, d in zip(P.names, P.degrees)],
        "relations": P.rendered_relations(),
        "caveat": P.caveat,
    }


def cohomology_report(char: CharMatrix, max_degree: int | None = None,
                      cap: int = DEFAULT_CAP) -> dict[str, Any]:
    doc = analyze_report(char, cap)
    gdoc = graph_report(char)
    for k in ("axial", "thom", "integrality"):
        doc[k] = gdoc[k]
    doc["notes"] = sorted(set(doc["notes"]) | set(gdoc["notes"]))
    doc["command"] = "cohomology"
    bound = max_degree if max_degree is not None else default_max_degree(char.n)
    P = spindle_presentation(char) if char.is_spindle else presentation(char)
    doc["presentation"] = _presentation_doc(P)
    doc["corollary"] = _presentation_doc(corollary_presentation(char))
    rep = verify(char, bound, P)
    doc["hilbert"] = [
        {
            "degree": c.degree,
            "brute_force": c.brute_rank,
            "presentation": c.presentation_rank,
            "expected": c.expected_rank,
            "generated": c.generated,
            "passed": c.passed,
        }
        for c in rep.degrees
    ]
    doc["verify"] = {
        "passed": rep.passed,
        "max_degree": rep.max_degree,
        "first_failure": rep.first_failure,
        "failing_relations": list(rep.failing_relations),
        "rank_formula_holds": rep.rank_formula_holds,
    }
    if doc["flags"]["h_odd"] != "certified-zero":
        h3 = doc["h3"]["name"] if doc["h3"] else "unknown"
        doc["notes"].insert(0, _warning(h3, doc["flags"]["h_odd"]))
    return doc


def _warning(h3: str, status: str) -> str:
    head = f"H^3 ≅ {h3} ≠ 0" if status == "known-nonzero" else "H^odd(X) = 0 is not certified"
    return (f"WARNING: {head}. The ring below is the graph cohomology; it equals "
            "H_T^*(X) only when H^odd(X) = 0.")


def render_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_report(text: str) -> dict[str, Any]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unknown report schema {doc.get('schema')!r}")
    return doc


def render_text(doc: dict[str, Any]) -> str:
    out = []
    inp = doc["input"]
    if "spindle" in inp:
        m, k = inp["spindle"]
        out.append(f"input: spindle S^2({m},{k})")
    else:
        out.append("input: facet vectors " + ", ".join(
            f"lambda(F{i + 1}) = ({', '.join(map(str, c))})" for i, c in enumerate(inp["columns"])))
    out.append(f"n = {doc['n']}")
    for note in doc["notes"]:
        if note.startswith("WARNING"):
            out.append("")
            out.append("!" * 72)
            out.append(note)
            out.append("!" * 72)
    if doc["det"] is not None:
        out.append(f"det = {doc['det']}")
    if doc["determinant_divisors"] is not None:
        out.append(f"determinant divisors = {tuple(doc['determinant_divisors'])}")
        out.append(f"invariant factors = {tuple(doc['invariant_factors'])}")
    if doc["G"] is not None:
        out.append(f"G(Lambda) ≅ {doc['G']['name']} (order {doc['G']['order']})")
        if doc["G"]["elements"] is not None:
            out.append("  elements: " + ", ".join(doc["G"]["elements"]))
    if doc["N"] is not None:
        out.append(f"N ≅ {doc['N']['name']}")
    if doc["h3"] is not None:
        out.append(f"H^3 ≅ {'0' if not doc['h3']['invariant_factors'] else doc['h3']['name']}")
    if doc["flags"] is not None:
        f = doc["flags"]
        out.append(f"diagonal: {f['is_diagonal']}, sphere: {f['is_sphere']}, "
                   f"det unit: {f['det_is_unit']}, H^odd: {f['h_odd']}")
    if doc["homeomorphism_type"]:
        out.append(doc["homeomorphism_type"])
    if doc["axial"] is not None:
        out.append("")
        out.append("axial function:")
        for a in doc["axial"]:
            out.append(f"  {a['edge']:6} {a['from']}->{a['to']}  alpha = {a['alpha']:24}  r = {a['r']}")
    if doc["thom"] is not None:
        out.append("Thom classes:")
        for t in doc["thom"]:
            out.append(f"  tau_{t['face']:7} deg {t['cohomological_degree']}: "
                       f"p: {t['p']};  q: {t['q']};  a = {t['integralizer']}")
    if doc["integrality"] is not None:
        c = doc["integrality"]
        out.append(f"ell = {tuple(c['ell'])}, a = {tuple(c['a'])}, a_p = {c['a_p']}, a_q = {c['a_q']}")
        out.append(f"(adj/ell) * Lambda = diag{tuple(c['signed_diagonal'])}")
    if doc["presentation"] is not None:
        P = doc["presentation"]
        out.append("")
        gens = ", ".join(f"{g['name']} (deg {g['degree']})" for g in P["generators"])
        out.append(f"{P['label']}: generators {gens}")
        for r in P["relations"]:
            out.append(f"  relation: {r}")
        C = doc["corollary"]
        if C is not None and C["label"] != P["label"]:
            out.append(f"{C['label']}: relations " + "; ".join(C["relations"]))
            if C["caveat"]:
                out.append(f"  ({C['caveat']})")
    if doc["hilbert"] is not None:
        out.append("degree  brute  presentation  expected  ok")
        for h in doc["hilbert"]:
            exp = "-" if h["expected"] is None else h["expected"]
            out.append(f"{h['degree']:6}  {h['brute_force']:5}  {h['presentation']:12}  {exp!s:8}  "
                       f"{'yes' if h['passed'] else 'NO'}")
    if doc["verify"] is not None:
        v = doc["verify"]
        verdict = "PASS" if v["passed"] else f"FAIL (first failing degree {v['first_failure']})"
        out.append(f"verify up to degree {v['max_degree']}: {verdict}")
    for note in doc["notes"]:
        if not note.startswith("WARNING"):
            out.append(f"note: {note}")
    return "\n".join(out) + "\n"


# --- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torusorb",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("analyze", "group G(Lambda), invariant factors, H^3 and homeomorphism type"),
        ("graph", "axial function, edge multipliers and Thom classes"),
        ("cohomology", "ring presentation, Hilbert table and brute-force verification"),
    ]:
        sp = sub.add_parser(name, help=help_, description=__doc__,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--matrix", help='rows separated by "/"; COLUMNS are the facet vectors')
        src.add_argument("--file", help="file with the same matrix text, or a JSON object with 'columns'")
        src.add_argument("--spindle", nargs=2, type=int, metavar=("M", "N"), help="spindle S^2(m,n)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group enumeration cap")
        if name == "cohomology":
            sp.add_argument("--max-degree", type=int, default=None,
                            help="cohomological degree bound (default 2n+6, raised to 4n+2 when needed)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = load_input(args)
        validate(spec.char)
        if args.command == "analyze":
            doc = analyze_report(spec.char, args.cap)
        elif args.command == "graph":
            doc = graph_report(spec.char)
        else:
            doc = cohomology_report(spec.char, args.max_degree, args.cap)
    except (ValueError, OSError) as exc:  # ParseError, SingularCharacteristic included
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(render_json(doc) if args.format == "json" else render_text(doc))
    if doc["verify"] is not None and not doc["verify"]["passed"]:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
