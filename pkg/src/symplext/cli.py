"""Command line driver.

Reads a model in the text format of :mod:`symplext.dsl` from ``--input`` or
stdin and prints a JSON report (or a plain table with ``--text``).

Exit status: 0 on success, including a "not extendable" verdict; 2 on
input errors; 1 when an internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .bsmodel import BsModel, h1_aut1
from .coalgebra import DualCoalgebra, FiniteDga
from .dsl import ModelDocument, parse
from .errors import InputError, ModelInconsistency, UnsupportedInput
from .gca import check_d_squared, cohomology, is_minimal
from .laws import check_laws
from .nilmanifold import (NilmanifoldModel, baut1_poly_generators, is_extendable_nil,
                          nil_bs_model, validate_nil)
from .separable import (ClassifyingData, SeparableSpec, coefficient_algebra, is_extendable, kappa,
                        moduli_dim_s2, separable_bs_model)

SCHEMA = 1
COMMANDS = ("check", "cohomology", "fsmodel", "kappa", "extendable", "moduli-dim", "nil-extendable")
DGA_CHECK_LIMIT = 64


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


# -- model selection ---------------------------------------------------------

def separable_spec(doc: ModelDocument) -> SeparableSpec:
    if doc.torus is None:
        raise InputError("this command needs a 'torus <k>' declaration")
    return SeparableSpec.from_presentation(doc.presentation, doc.torus, doc.omega)


def nil_model(doc: ModelDocument) -> NilmanifoldModel:
    model = NilmanifoldModel(doc.presentation, doc.omega)
    problems = validate_nil(model)
    if problems:
        raise InputError("not a nilmanifold model: " + "; ".join(problems))
    return model


def is_nil_shaped(doc: ModelDocument) -> bool:
    return bool(doc.generators) and all(d == 1 for _, d in doc.generators)


def function_space_model(doc: ModelDocument) -> tuple[str, BsModel]:
    if doc.torus is not None:
        return "separable", separable_bs_model(separable_spec(doc))
    if is_nil_shaped(doc):
        return "nilmanifold", nil_bs_model(nil_model(doc))
    raise UnsupportedInput("declare 'torus <k>' for a separable model; "
                           "otherwise all generators must have degree 1")


def classifying_data(doc: ModelDocument, source: Sequence[str]) -> ClassifyingData:
    if doc.base is None:
        raise InputError("this command needs a 'base' declaration")
    unknown = [t for t in doc.classify if t not in source]
    if unknown:
        raise InputError(f"classify targets {unknown} are not in the H² basis {list(source)}")
    return ClassifyingData.from_values(source, doc.base, doc.classify)


# -- commands ----------------------------------------------------------------

def cmd_check(doc: ModelDocument, args) -> tuple[dict, str]:
    pres = doc.presentation
    out: dict[str, Any] = {
        "d_squared": [{"generator": n, "value": str(v)} for n, v in check_d_squared(pres)],
        "minimal": is_minimal(pres),
        "nilmanifold": validate_nil(NilmanifoldModel(pres, doc.omega)) if is_nil_shaped(doc) else None,
    }
    B: FiniteDga | None = None
    try:
        if doc.torus is not None:
            B, _ = coefficient_algebra(separable_spec(doc))
        elif is_nil_shaped(doc) and not out["nilmanifold"]:
            B = FiniteDga.from_free(pres)
    except UnsupportedInput as exc:
        out["coefficient_algebra"] = {"unsupported": str(exc)}
    if B is not None:
        coalg = DualCoalgebra(B)
        out["coefficient_algebra"] = {
            "dimension": B.dim,
            "axioms": B.check() if B.dim <= DGA_CHECK_LIMIT else None,
            "coassociativity": coalg.check_coassoc(),
            "counit": coalg.check_counit(),
            "dual_d_squared": coalg.check_d_squared(),
        }
    elif "coefficient_algebra" not in out:
        out["coefficient_algebra"] = None
    if args.seed is not None:
        rep = check_laws(pres, args.seed, B=B)
        out["laws"] = {"seed": rep.seed, "cases": rep.cases, "failures": rep.failures}
    return out, "d∘d = 0 on generators; DGA and coalgebra axioms of the coefficient algebra"


def cmd_cohomology(doc: ModelDocument, args) -> tuple[dict, str]:
    if args.deg is not None:
        lo = hi = args.deg
    else:
        lo = 0 if args.from_ is None else args.from_
        hi = lo if args.to is None else args.to
    if lo < 0 or hi < lo:
        raise InputError("need 0 <= --from <= --to")
    pres = doc.presentation
    groups = []
    for n in range(lo, hi + 1):
        h = cohomology(pres, n)
        groups.append({"degree": n, "dimension": h.dimension,
                       "representatives": [str(r) for r in h.representatives]})
    return {"groups": groups}, "kernel modulo image over the rationals"


def cmd_fsmodel(doc: ModelDocument, args) -> tuple[dict, str]:
    kind, model = function_space_model(doc)
    names, rows, mat = model.delta_matrix()
    q_alg = model.quotient
    nonzero = [(q_alg.mono_str(m), r) for m, r in zip(rows, mat) if any(r)]
    h1 = h1_aut1(model)
    out = {
        "family": kind,
        "coefficient_dimension": model.ambient.algebra.dim,
        "eliminated": list(model.eliminated),
        "degree_one": list(names),
        "delta": [{"generator": n, "value": str(model.delta(n))} for n in names],
        "delta_matrix": {"columns": list(names), "rows": [m for m, _ in nonzero],
                         "entries": [[q(x) for x in r] for _, r in nonzero]},
        "h1": list(h1.names),
    }
    return out, "quotient of the function-space model by the evaluation ideal, degree one part"


def cmd_kappa(doc: ModelDocument, args) -> tuple[dict, str]:
    spec = separable_spec(doc)
    km = kappa(spec)
    out = {"k": spec.k, "source": list(km.source), "target": list(km.target),
           "matrix": [[q(x) for x in r] for r in km.matrix], "rank": km.rank,
           "image": km.image_names()}
    return out, "κ(s) = class of ev*(t) = t@1 in H¹ of the reduced model"


def _verdict(v) -> dict:
    witness = None
    if v.witness is not None:
        witness = {"class": v.witness, "image": {t: q(x) for t, x in zip(v.target, v.image)}}
    return {"extendable": v.extendable, "witness": witness}


def cmd_extendable(doc: ModelDocument, args) -> tuple[dict, str]:
    spec = separable_spec(doc)
    if spec.k == 0:
        return {"extendable": True, "witness": None}, "simply-connected fibre: always extendable"
    model = separable_bs_model(spec)
    km = kappa(spec, model)
    f = classifying_data(doc, km.target)
    return _verdict(is_extendable(spec, f, km=km)), "extendable iff H²(f)∘κ = 0"


def cmd_moduli_dim(doc: ModelDocument, args) -> tuple[dict, str]:
    spec = separable_spec(doc)
    md = moduli_dim_s2(spec)
    return ({"dim_W2": md.dim_w2, "k": md.k, "moduli_dim": md.value},
            "fibrations over S²: dim W² - 2k")


def cmd_nil_extendable(doc: ModelDocument, args) -> tuple[dict, str]:
    model = nil_model(doc)
    gens = baut1_poly_generators(model)
    f = classifying_data(doc, gens.names)
    out = {"generators": list(gens.names), "count": gens.count}
    out.update(_verdict(is_extendable_nil(model, f, gens)))
    return out, "H^*(Baut₁) polynomial on degree two classes; extendable iff H^*(f) kills them"


HANDLERS = {
    "check": cmd_check, "cohomology": cmd_cohomology, "fsmodel": cmd_fsmodel,
    "kappa": cmd_kappa, "extendable": cmd_extendable, "moduli-dim": cmd_moduli_dim,
    "nil-extendable": cmd_nil_extendable,
}


# -- rendering ---------------------------------------------------------------

def report(command: str, doc: ModelDocument, result: dict, provenance: str) -> dict:
    return {"schema": SCHEMA, "command": command, "model": doc.name, "result": result,
            "provenance": provenance}


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _is_flat(v) -> bool:
    if isinstance(v, list):
        return all(not isinstance(x, (list, dict)) for x in v)
    if isinstance(v, dict):
        return all(not isinstance(x, (list, dict)) for x in v.values())
    return True


def _inline(v) -> str:
    if isinstance(v, list):
        return ", ".join(_scalar(x) for x in v) if v else "(none)"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(x)}" for k, x in v.items()) if v else "(none)"
    return _scalar(v)


def render_text(rep: dict) -> str:
    lines = [f"{rep['command']} ({rep['model'] or 'unnamed model'})"]

    def walk(value: dict, indent: int):
        pad = "  " * indent
        for key, v in value.items():
            if _is_flat(v):
                lines.append(f"{pad}{key}: {_inline(v)}")
            elif isinstance(v, dict):
                lines.append(f"{pad}{key}:")
                walk(v, indent + 1)
            else:
                lines.append(f"{pad}{key}:")
                for item in v:
                    if isinstance(item, dict) and not _is_flat(item):
                        lines.append(f"{pad}  -")
                        walk(item, indent + 2)
                    else:
                        lines.append(f"{pad}  - {_inline(item)}")

    walk(rep["result"], 1)
    lines.append(f"  via: {rep['provenance']}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symplext", description=__doc__.split("\n\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", help="model file (default: stdin)")
    p.add_argument("--deg", type=int, help="degree for cohomology")
    p.add_argument("--from", dest="from_", type=int, help="first degree for cohomology")
    p.add_argument("--to", type=int, help="last degree for cohomology")
    p.add_argument("--text", action="store_true", help="human-readable output")
    p.add_argument("--seed", type=int, help="run seeded randomized law checks (check)")
    return p


def run(command: str, text: str, args: argparse.Namespace | None = None) -> dict:
    """Parse ``text`` and run ``command``; returns the report dictionary."""
    if args is None:
        args = build_parser().parse_args([command])
    doc = parse(text)
    result, provenance = HANDLERS[command](doc, args)
    return report(command, doc, result, provenance)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        rep = run(args.command, text, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 1
    if args.text:
        sys.stdout.write(render_text(rep))
    else:
        sys.stdout.write(json.dumps(rep, indent=2, ensure_ascii=False) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
