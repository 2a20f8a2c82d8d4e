"""Command-line interface: JSON documents in, verdicts and reports out.

Documents describe an algebra either explicitly (arity, dimension, twist
matrices, bracket entries on increasing index tuples) or through the
4-dimensional family shorthand (the two coefficient vectors c124, c134).
All scalars are exact: integers, "p/q" strings, or {"re":..., "im":...}
objects over Q(i).  Floats are rejected.

Exit codes: 0 success or true verdict, 1 false verdict (check, isomorphic),
2 input error, 3 internal consistency failure (cross-checks disagreeing are
reported, never swallowed).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classify import (
    canonical_reduce,
    classify_report,
    congruent_bmatrix,
    enumerate_grid,
    isomorphic as classify_isomorphic,
)
from .fields import get_field
from .homalg import (
    Bracket,
    FamilyAlgebra,
    HomAlgebra,
    NotWeakMorphismError,
    change_basis,
    family_alpha,
    yau_twist,
)
from .identity import (
    InternalCheckError,
    check_hnf_bruteforce,
    check_hnf_polynomial,
    check_multiplicative,
    detect_shape,
)
from .linalg import Matrix
from .structure import center, nilpotency_profile, series, subspace_status


class DocumentError(ValueError):
    """An input document problem, with a JSON-path diagnostic."""


def _fail(path, message):
    raise DocumentError(f"{path}: {message}")


# ------------------------------------------------------------------- loading


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as err:
        raise DocumentError(f"{path}: {err}") from err
    except json.JSONDecodeError as err:
        raise DocumentError(
            f"{path}: line {err.lineno} column {err.colno}: {err.msg}"
        ) from err


def _parse_scalar(field, obj, path):
    try:
        return field.parse(obj)
    except (ValueError, TypeError) as err:
        raise DocumentError(f"{path}: {err}") from err


def _parse_vector(field, obj, length, path):
    if not isinstance(obj, list):
        _fail(path, "expected a list of scalars")
    if len(obj) != length:
        _fail(path, f"expected {length} entries, got {len(obj)}")
    return tuple(_parse_scalar(field, x, f"{path}[{i}]") for i, x in enumerate(obj))


def _parse_matrix(field, obj, size, path):
    if not isinstance(obj, list):
        _fail(path, "expected a list of rows")
    if len(obj) != size:
        _fail(path, f"expected {size} rows, got {len(obj)}")
    rows = [_parse_vector(field, row, size, f"{path}[{i}]") for i, row in enumerate(obj)]
    return Matrix(rows, field)


def _require_count(obj, path, minimum=2):
    if isinstance(obj, bool) or not isinstance(obj, int):
        _fail(path, "expected an integer")
    if obj < minimum:
        _fail(path, f"must be at least {minimum}")
    return obj


class ParsedDocument:
    def __init__(self, algebra, family=None):
        self.algebra = algebra
        self.family = family

    @property
    def field(self):
        return self.algebra.field


def parse_document(doc, path="document") -> ParsedDocument:
    if not isinstance(doc, dict):
        _fail(path, "expected a JSON object")
    allowed = {"field", "arity", "dimension", "alpha", "bracket", "family"}
    unknown = set(doc) - allowed
    if unknown:
        _fail(path, f"unknown keys: {sorted(unknown)}")
    if "field" not in doc:
        _fail(path, 'missing "field" ("Q" or "Qi")')
    try:
        field = get_field(doc["field"])
    except (KeyError, ValueError):
        _fail(f"{path}.field", f'unknown field {doc["field"]!r}, expected "Q" or "Qi"')

    if "family" in doc:
        for key in ("alpha", "bracket"):
            if key in doc:
                _fail(path, f'"family" and "{key}" are mutually exclusive')
        if "arity" in doc and doc["arity"] != 3:
            _fail(f"{path}.arity", "the family shorthand has arity 3")
        if "dimension" in doc and doc["dimension"] != 4:
            _fail(f"{path}.dimension", "the family shorthand has dimension 4")
        shorthand = doc["family"]
        if not isinstance(shorthand, dict) or set(shorthand) != {"c124", "c134"}:
            _fail(f"{path}.family", 'expected exactly the keys "c124" and "c134"')
        c124 = _parse_vector(field, shorthand["c124"], 4, f"{path}.family.c124")
        c134 = _parse_vector(field, shorthand["c134"], 4, f"{path}.family.c134")
        fam = FamilyAlgebra(c124, c134, field)
        return ParsedDocument(fam.to_hom(), fam)

    for key in ("arity", "dimension", "alpha", "bracket"):
        if key not in doc:
            _fail(path, f'missing "{key}"')
    arity = _require_count(doc["arity"], f"{path}.arity")
    dim = _require_count(doc["dimension"], f"{path}.dimension")
    if arity > dim:
        _fail(f"{path}.arity", f"arity {arity} exceeds dimension {dim}")

    if not isinstance(doc["alpha"], list) or len(doc["alpha"]) != arity - 1:
        _fail(f"{path}.alpha", f"expected {arity - 1} twist matrices")
    twists = [
        _parse_matrix(field, m, dim, f"{path}.alpha[{i}]")
        for i, m in enumerate(doc["alpha"])
    ]

    if not isinstance(doc["bracket"], list):
        _fail(f"{path}.bracket", "expected a list of entries")
    table = {}
    for i, entry in enumerate(doc["bracket"]):
        epath = f"{path}.bracket[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"args", "value"}:
            _fail(epath, 'expected exactly the keys "args" and "value"')
        args = entry["args"]
        if (
            not isinstance(args, list)
            or len(args) != arity
            or any(isinstance(a, bool) or not isinstance(a, int) for a in args)
        ):
            _fail(f"{epath}.args", f"expected {arity} integer indices")
        if any(not 1 <= a <= dim for a in args):
            _fail(f"{epath}.args", f"indices must lie in 1..{dim}")
        if any(args[j] >= args[j + 1] for j in range(arity - 1)):
            _fail(f"{epath}.args", "indices must be strictly increasing")
        key = tuple(args)
        if key in table:
            _fail(f"{epath}.args", f"duplicate entry for {args}")
        table[key] = _parse_vector(field, entry["value"], dim, f"{epath}.value")
    bracket = Bracket(dim, arity, table, field)
    return ParsedDocument(HomAlgebra(bracket, twists))


def load_document(path) -> ParsedDocument:
    return parse_document(_load_json(path), path)


def as_family(parsed: ParsedDocument, path) -> FamilyAlgebra:
    """The document as a family instance, recognizing explicit documents
    that match the family template exactly."""

    if parsed.family is not None:
        return parsed.family
    alg = parsed.algebra
    field = alg.field
    if alg.arity != 3 or alg.dim != 4:
        _fail(path, "classification needs the 4-dimensional arity-3 family")
    uniform = alg.uniform_twist()
    if uniform is None or uniform != family_alpha(field):
        _fail(path, "classification needs the family twist (alpha e3 = e2, alpha e4 = e3)")
    zero = (field.zero(),) * 4
    for args in ((1, 2, 3), (2, 3, 4)):
        if alg.bracket.eval_basis(args) != zero:
            _fail(path, f"bracket on {list(args)} must vanish in the family")
    return FamilyAlgebra(
        alg.bracket.eval_basis((1, 2, 4)), alg.bracket.eval_basis((1, 3, 4)), field
    )


# ------------------------------------------------------------------ emission


def _scalar_json(field, a):
    return field.to_json(a)


def _vector_json(field, vec):
    return [_scalar_json(field, a) for a in vec]


def _matrix_json(m: Matrix):
    return [_vector_json(m.field, row) for row in m.rows]


def family_document(fam: FamilyAlgebra) -> dict:
    return {
        "field": fam.field.name,
        "family": {
            "c124": _vector_json(fam.field, fam.c124),
            "c134": _vector_json(fam.field, fam.c134),
        },
    }


def algebra_document(alg: HomAlgebra) -> dict:
    field = alg.field
    bracket = [
        {"args": list(key), "value": _vector_json(field, value)}
        for key, value in sorted(alg.bracket.table.items())
    ]
    return {
        "field": field.name,
        "arity": alg.arity,
        "dimension": alg.dim,
        "alpha": [_matrix_json(t) for t in alg.twists],
        "bracket": bracket,
    }


def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        if not value:
            yield f"{prefix}: {{}}"
        for key in value:
            yield from _text_lines(value[key], f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(value, list) and any(isinstance(x, (dict, list)) for x in value):
        if not value:
            yield f"{prefix}: []"
        for i, item in enumerate(value):
            yield from _text_lines(item, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(value)}"


def _emit(report, ns):
    if ns.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(_text_lines(report)) + "\n"
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ commands


def _cmd_check(ns):
    parsed = load_document(ns.document)
    alg = parsed.algebra
    ok, witness = check_hnf_bruteforce(alg)
    report = {"command": "check", "hnf": ok}
    if not ok:
        xs, ys, defect = witness
        report["witness"] = {
            "xs": list(xs),
            "ys": list(ys),
            "defect": _vector_json(alg.field, defect),
        }
    uniform = alg.uniform_twist()
    report["hnf_polynomial"] = None
    report["multiplicative"] = None
    if uniform is not None:
        shape = detect_shape(uniform)
        report["twist_shape"] = shape.kind
        if shape.i0 is not None:
            report["twist_shape_i0"] = shape.i0
        if alg.dim == alg.arity + 1 and shape.kind != "general":
            poly_ok, failures = check_hnf_polynomial(alg, shape)
            report["hnf_polynomial"] = poly_ok
            if poly_ok != ok:
                raise InternalCheckError(
                    f"polynomial system says {poly_ok}, brute force says {ok}; "
                    f"failures {failures[:3]}"
                )
        report["multiplicative"] = check_multiplicative(alg)
    _emit(report, ns)
    return 0 if ok else 1


def _subspace_report(alg, subspace):
    status = subspace_status(alg, subspace)
    return {
        "dim": subspace.dim,
        "basis": [_vector_json(alg.field, v) for v in subspace.basis],
        "weak_subalgebra": status.weak_subalgebra,
        "hom_subalgebra": status.hom_subalgebra,
        "weak_ideal": status.weak_ideal,
        "hom_ideal": status.hom_ideal,
    }


def _cmd_analyze(ns):
    parsed = load_document(ns.document)
    alg = parsed.algebra
    profile = nilpotency_profile(alg)
    z = center(alg)
    report = {
        "command": "analyze",
        "arity": alg.arity,
        "dimension": alg.dim,
        "nilpotent": profile.nilpotent,
        "nilpotency_class": profile.cls,
        "center": {
            "dim": z.dim,
            "basis": [_vector_json(alg.field, v) for v in z.basis],
        },
        "series": [],
    }
    for kind in ("derived", "central"):
        for k in range(2, alg.arity + 1):
            rep = series(alg, k, kind)
            report["series"].append({
                "kind": kind,
                "k": k,
                "class": rep.cls,
                "dims": list(rep.dims),
                "terms": [_subspace_report(alg, term) for term in rep.terms],
            })
    _emit(report, ns)
    return 0


def _classify_payload(fam):
    rep = classify_report(fam)
    return rep, {
        "command": "classify",
        "subclass": rep.subclass,
        "case": rep.case_id,
        "solvable2": rep.solvable2,
        "solvable3": rep.solvable3,
        "nilpotency_class": rep.nilpotency_class,
        "center_dim": rep.center_dim,
        "multiplicative": rep.multiplicative,
        "flags": list(rep.flags),
    }


def _verify_by_transport(alg, witness, expected):
    """Cross-check a congruence witness by full multilinear transport."""
    moved = change_basis(alg, witness)
    if moved != expected:
        raise InternalCheckError("change-of-basis transport disagrees with congruence")


def _cmd_classify(ns):
    parsed = load_document(ns.document)
    fam = as_family(parsed, ns.document)
    rep, report = _classify_payload(fam)
    if ns.oracle and rep.case_id is not None:
        form = canonical_reduce(fam)
        _verify_by_transport(fam.to_hom(), form.witness_p,
                             form.canonical_family.to_hom())
    _emit(report, ns)
    return 0


def _cmd_canonical(ns):
    parsed = load_document(ns.document)
    fam = as_family(parsed, ns.document)
    form = canonical_reduce(fam)
    field = fam.field
    report = {
        "command": "canonical",
        "case": form.case_id,
        "subclass": form.subclass,
        "flags": list(form.flags),
        "residuals": {
            name: _scalar_json(field, value) for name, value in form.residuals.items()
        },
        "square_class": {
            name: (None if value is None else _scalar_json(field, value))
            for name, value in form.square_class_params.items()
        },
        "canonical": family_document(form.canonical_family),
        "witness_p": _matrix_json(form.witness_p),
    }
    if ns.oracle:
        _verify_by_transport(fam.to_hom(), form.witness_p,
                             form.canonical_family.to_hom())
    _emit(report, ns)
    return 0


def _reload_matrix(field, rows_json, size):
    return _parse_matrix(field, rows_json, size, "witness_p")


def _cmd_isomorphic(ns):
    parsed_a = load_document(ns.document_a)
    parsed_b = load_document(ns.document_b)
    if parsed_a.field is not parsed_b.field:
        raise DocumentError("the two documents use different fields")
    fam_a = as_family(parsed_a, ns.document_a)
    fam_b = as_family(parsed_b, ns.document_b)
    verdict, witness = classify_isomorphic(fam_a, fam_b)
    report = {"command": "isomorphic", "isomorphic": verdict}
    if verdict:
        rows = _matrix_json(witness)
        # round-trip the witness through its serialized form before trusting it
        reloaded = _reload_matrix(fam_a.field, rows, 4)
        alpha = family_alpha(fam_a.field)
        if reloaded @ alpha != alpha @ reloaded:
            raise InternalCheckError("reloaded witness stopped commuting with the twist")
        if congruent_bmatrix(reloaded, fam_a.bmatrix()) != fam_b.bmatrix():
            raise InternalCheckError("reloaded witness fails the congruence")
        if ns.oracle:
            _verify_by_transport(fam_a.to_hom(), reloaded, fam_b.to_hom())
        report["witness_p"] = rows
    _emit(report, ns)
    return 0 if verdict else 1


def _cmd_twist(ns):
    parsed = load_document(ns.document)
    alg = parsed.algebra
    beta_json = _load_json(ns.beta)
    if isinstance(beta_json, dict) and set(beta_json) == {"matrix"}:
        beta_json = beta_json["matrix"]
    beta = _parse_matrix(alg.field, beta_json, alg.dim, f"{ns.beta}.matrix")
    twisted = yau_twist(alg, beta)
    _emit(algebra_document(twisted), ns)
    return 0


def _cmd_batch(ns):
    if not ns.grid:
        raise DocumentError('batch needs --grid "a,b,c" with exact scalar values')
    field = get_field(ns.field)
    values = [
        _parse_scalar(field, item.strip(), f"--grid[{i}]")
        for i, item in enumerate(ns.grid.split(","))
    ]
    handle = open(ns.out, "w", encoding="utf-8") if ns.out else sys.stdout
    try:
        for fam, rep in enumerate_grid(values, field):
            line = {
                "c124": _vector_json(field, fam.c124),
                "c134": _vector_json(field, fam.c134),
                "subclass": rep.subclass,
                "case": rep.case_id,
                "solvable2": rep.solvable2,
                "solvable3": rep.solvable3,
                "nilpotency_class": rep.nilpotency_class,
                "center_dim": rep.center_dim,
                "multiplicative": rep.multiplicative,
                "flags": list(rep.flags),
            }
            handle.write(json.dumps(line, sort_keys=True) + "\n")
    finally:
        if ns.out:
            handle.close()
    return 0


# ------------------------------------------------------------------- dispatch


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("Q", "Qi"), default="Q",
                        help="scalar field for --grid values (documents carry their own)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--oracle", action="store_true",
                        help="force independent brute-force / transport cross-checks")
    common.add_argument("--grid",
                        help='comma-separated exact values; use the = form when '
                             'the first value is negative, e.g. --grid=-1,0,1')
    common.add_argument("--out", help="write the report to this path instead of stdout")

    parser = argparse.ArgumentParser(
        prog="nhomlie",
        description="Exact computations with n-Hom-Lie algebras: identity "
                    "checking, structure series, classification, isomorphism.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="verify the defining identity and multiplicativity")
    p.add_argument("document")
    p = sub.add_parser("analyze", parents=[common],
                       help="series, center, classes, and subspace statuses")
    p.add_argument("document")
    p = sub.add_parser("classify", parents=[common],
                       help="subclass and case report for a family instance")
    p.add_argument("document")
    p = sub.add_parser("canonical", parents=[common],
                       help="canonical form and reduction witness")
    p.add_argument("document")
    p = sub.add_parser("isomorphic", parents=[common],
                       help="decide isomorphism of two family instances")
    p.add_argument("document_a")
    p.add_argument("document_b")
    p = sub.add_parser("twist", parents=[common],
                       help="Yau twist by a weak morphism, emits a new document")
    p.add_argument("document")
    p.add_argument("beta", help="JSON file with the twisting matrix")
    sub.add_parser("batch", parents=[common],
                   help="classify a whole parameter grid as JSON lines")
    return parser


_COMMANDS = {
    "check": _cmd_check,
    "analyze": _cmd_analyze,
    "classify": _cmd_classify,
    "canonical": _cmd_canonical,
    "isomorphic": _cmd_isomorphic,
    "twist": _cmd_twist,
    "batch": _cmd_batch,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return _COMMANDS[ns.command](ns)
    except DocumentError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except NotWeakMorphismError as err:
        print(f"error: beta is not a weak morphism (witness {err.witness})",
              file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (InternalCheckError, AssertionError) as err:
        print(f"internal consistency failure: {err}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
