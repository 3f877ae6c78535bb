"""Command line interface.

Reports go to standard output as JSON; diagnostics go to standard error.
Exit codes: 0 success, 1 a checked property is false (the witness is in the
report), 2 malformed input or usage, 3 a budget was exceeded.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__, fixtures
from .algebra import (
    algebra_to_dict,
    check_axioms,
    find_forbidden_sublattice,
    hasse_dot,
    irreducibility_witnesses,
    load_algebra,
    save_algebra,
    validate_algebra,
)
from .errors import BudgetExceeded, InputError, QrakitError
from .nested import nested_sum
from .nested_rep import (
    SUGIHARA_LADDERS,
    build_nested_context,
    build_psi,
    layer_profile,
    sn_nested_representation,
    sugihara_representation,
)
from .relcalc import BinRel
from .representation import (
    UPSET_CAP,
    context_dot,
    dq_algebra,
    enumerate_upsets,
    find_embedding,
    generate_subalgebra,
    images_from_record,
    load_context,
    load_images,
    relation_lattice_dot,
    save_context,
    validate_context,
    verify_embedding,
)
from .search import SearchSpec, enumerate_models, model_record
from .sugihara import sugihara_chain

OK, FALSE, INPUT, BUDGET = 0, 1, 2, 3


@dataclass
class CommandResult:
    code: int
    payload: object = None
    text: str = None          # raw text for stdout instead of JSON (DOT, JSON lines)


def upset_cap():
    return int(os.environ.get("QRAKIT_UPSET_CAP", UPSET_CAP))


def _write_json(obj, path):
    with open(path, "w") as fh:
        json.dump(obj, fh, ensure_ascii=False, indent=1)
        fh.write("\n")


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _load_algebra(path):
    return validate_algebra(_read_json(path))


def _load_context(path):
    return validate_context(_read_json(path))


def _error_payload(exc):
    out = {"error": type(exc).__name__, "message": str(exc)}
    if getattr(exc, "witness", None) is not None:
        out["witness"] = list(exc.witness)
    return out


def _embedding_payload(emb):
    d = emb.to_dict()
    d["ok"] = emb.ok
    return d


# ---------------------------------------------------------------------------
# fixtures


def _sum_representation(L, ctxL, images):
    nctx = build_nested_context(ctxL)
    psi = build_psi(nctx, L, images)
    return psi.nested.algebra, nctx.ctx, psi.images


def fixture_catalogue():
    """Every named algebra, context and representation shipped with the tool.

    Values are ``("algebra", A)``, ``("context", ctx)`` or
    ``("representation", (A, ctx, images))``.
    """
    cat = {
        "l1": ("algebra", fixtures.diamond_l1()),
        "k2": ("algebra", fixtures.diamond_k2()),
        "n5": ("algebra", fixtures.five_element_n5()),
        "k1": ("algebra", fixtures.k1_chain()),
        "l2": ("algebra", fixtures.l2_chain()),
        "k1l1": ("algebra", fixtures.k1_l1_sum()),
        "k2l2": ("algebra", fixtures.k2_l2_sum()),
    }
    for n in range(2, 6):
        cat[f"s{n}"] = ("algebra", sugihara_chain(n).algebra)
    bases = {
        "s2": (sugihara_chain(2).algebra, fixtures.context_s2(), fixtures.images_s2()),
        "s3": (sugihara_chain(3).algebra, fixtures.context_s3(), fixtures.images_s3()),
        "l1": (fixtures.diamond_l1(), fixtures.context_l1(), fixtures.images_l1()),
    }
    for name, (A, ctx, images) in bases.items():
        cat[f"ctx_{name}"] = ("context", ctx)
        cat[f"rep_{name}"] = ("representation", (A, ctx, tuple(images)))
        S, nctx, psi = _sum_representation(A, ctx, images)
        cat[f"ctx_s3_{name}"] = ("context", nctx)
        cat[f"rep_s3_{name}"] = ("representation", (S, nctx, psi))
    for n in sorted(SUGIHARA_LADDERS):
        rep = sugihara_representation(n)
        cat[f"ctx_ladder_s{n}"] = ("context", rep.context)
        cat[f"rep_ladder_s{n}"] = ("representation", (rep.algebra, rep.context, rep.embedding.images))
    return cat


def seed_fixtures(directory):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, (kind, value) in fixture_catalogue().items():
        if kind == "algebra":
            save_algebra(value, out / f"{name}.json")
            written.append(f"{name}.json")
        elif kind == "context":
            save_context(value, out / f"{name}.json")
            written.append(f"{name}.json")
        else:
            A, ctx, images = value
            emb = verify_embedding(A, ctx, images)
            _write_json(_embedding_payload(emb), out / f"{name}.json")
            save_algebra(A, out / f"{name}_algebra.json")
            written += [f"{name}.json", f"{name}_algebra.json"]
    return written


# ---------------------------------------------------------------------------
# commands


def cmd_check(args):
    A = _load_algebra(args.algebra)
    report = check_axioms(A)
    required = args.require or ["DqRA"]
    unknown = [r for r in required if r not in report.verdicts]
    if unknown:
        raise InputError(f"unknown properties: {', '.join(unknown)}")
    failed = [r for r in required if not report[r]]
    payload = {"algebra": args.algebra, "verdicts": report.to_dict(),
               "required": required, "failed": failed}
    wit = irreducibility_witnesses(A, A.one, report.residual_tables)
    payload["one_totally_irreducible"] = {
        "holds": all(w is None for w in wit.values()),
        "witnesses": {op: list(w) for op, w in wit.items() if w is not None},
    }
    if report.verdicts["lattice"].holds and not report["distributive"]:
        sub = find_forbidden_sublattice(A)
        if sub is not None and sub[0] is not None:
            payload["forbidden_sublattice"] = {"kind": sub.kind, "elements": list(sub.elements),
                                               "labels": [A.label(x) for x in sub.elements]}
    for r in failed:
        v = report.verdicts[r]
        print(f"{r}: false (witness {list(v.witness or ())})", file=sys.stderr)
    return CommandResult(FALSE if failed else OK, payload)


def _algebra_output(A, args, extra=None):
    if args.output:
        save_algebra(A, args.output)
    if getattr(args, "dot", False):
        return CommandResult(OK, text=hasse_dot(A))
    payload = {"algebra": algebra_to_dict(A)}
    payload.update(extra or {})
    return CommandResult(OK, payload)


def cmd_sum(args):
    K, L = _load_algebra(args.k), _load_algebra(args.l)
    S = nested_sum(K, L)
    rep = check_axioms(S.algebra)
    extra = {"from_k": {str(k): v for k, v in S.from_k.items()}, "from_l": list(S.from_l),
             "qRA": rep["qRA"], "DqRA": rep["DqRA"]}
    return _algebra_output(S.algebra, args, extra)


def cmd_sugihara(args):
    C = sugihara_chain(args.n)
    return _algebra_output(C.algebra, args, {"labels": list(C.labels)})


def _generators(path, ctx):
    return images_from_record(_read_json(path), ctx.n)


def cmd_dq(args):
    ctx = _load_context(args.context)
    if args.generators:
        elements = generate_subalgebra(ctx, _generators(args.generators, ctx), cap=upset_cap())
    else:
        elements = enumerate_upsets(ctx, cap=upset_cap())
    D = dq_algebra(ctx, elements)
    if args.output:
        save_algebra(D.algebra, args.output)
    if args.dot:
        return CommandResult(OK, text=relation_lattice_dot(ctx, D.elements))
    rep = check_axioms(D.algebra)
    payload = {"count": len(D.elements),
               "elements": [[list(p) for p in R.pairs()] for R in D.elements],
               "algebra": algebra_to_dict(D.algebra),
               "DqRA": rep["DqRA"], "cyclic": rep["cyclic"]}
    return CommandResult(OK if rep["DqRA"] else FALSE, payload)


def cmd_embed(args):
    A = _load_algebra(args.algebra)
    ctx = _load_context(args.context)
    if args.images:
        emb = verify_embedding(A, ctx, load_images(args.images, ctx.n))
    else:
        emb = find_embedding(A, ctx, cap=upset_cap())
        if emb is None:
            return CommandResult(FALSE, {"ok": False, "message": "no embedding exists"})
    payload = _embedding_payload(emb)
    if args.output:
        _write_json(payload, args.output)
    return CommandResult(OK if emb.ok else FALSE, payload)


def _representation_result(rep, args):
    if args.output:
        save_context(rep.context, args.output)
    payload = _embedding_payload(rep.embedding)
    if args.embedding:
        _write_json(payload, args.embedding)
    if getattr(args, "algebra_out", None):
        save_algebra(rep.algebra, args.algebra_out)
    if args.dot:
        return CommandResult(OK if rep.ok else FALSE, text=context_dot(rep.context))
    layers = layer_profile(rep.context.leq)
    payload = {"points": rep.context.n, "layers": None if layers is None else list(layers),
               "context": rep.context.to_dict(), "embedding": payload, "ok": rep.ok}
    return CommandResult(OK if rep.ok else FALSE, payload)


def cmd_rep_sugihara(args):
    return _representation_result(sugihara_representation(args.n), args)


def cmd_rep_nested(args):
    L = _load_algebra(args.algebra)
    ctxL = _load_context(args.context)
    images = load_images(args.images, ctxL.n)
    rep = sn_nested_representation(args.outer, L, ctxL, images)
    return _representation_result(rep, args)


def cmd_search(args):
    spec = SearchSpec(args.size, frozenset(args.constraint or ()), args.limit, args.workers)
    found = enumerate_models(spec)
    lines = [json.dumps(model_record(A, r)) for A, r in zip(found.models, found.reports)]
    summary = dict(found.summary(), summary=True)
    if args.out:
        with open(args.out, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
            fh.write(json.dumps(summary) + "\n")
        return CommandResult(OK, summary)
    return CommandResult(OK, text="\n".join(lines + [json.dumps(summary)]) + "\n")


def cmd_export(args):
    cat = None
    src = args.source
    if Path(src).exists():
        raw = _read_json(src)
        if "points" in raw:
            kind, value = "context", validate_context(raw)
        else:
            kind, value = "algebra", validate_algebra(raw)
    else:
        cat = fixture_catalogue()
        if src not in cat:
            raise InputError(f"{src!r} is neither a file nor a fixture ({', '.join(cat)})")
        kind, value = cat[src]
    if kind == "algebra":
        if args.dot:
            return CommandResult(OK, text=hasse_dot(value, title=args.title))
        return CommandResult(OK, algebra_to_dict(value))
    if kind == "context":
        if args.dot:
            return CommandResult(OK, text=context_dot(value, title=args.title))
        return CommandResult(OK, value.to_dict())
    A, ctx, images = value
    if args.dot:
        labels = [A.label(i) for i in range(A.size)]
        return CommandResult(OK, text=relation_lattice_dot(ctx, images, labels, title=args.title))
    return CommandResult(OK, {"algebra": algebra_to_dict(A), "context": ctx.to_dict(),
                              "embedding": _embedding_payload(verify_embedding(A, ctx, images))})


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"usage: {message}")


def build_parser():
    p = _Parser(prog="qrakit", description="Finite quasi relation algebras: checks, nested "
                "sums, relational representations and model search.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--seed-fixtures", metavar="DIR",
                   help="write every bundled algebra, context and representation to DIR")
    p.add_argument("--dot", action="store_true", help="print Graphviz DOT instead of JSON")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("check", help="decide the axioms of an algebra")
    c.add_argument("algebra")
    c.add_argument("--require", action="append", metavar="PROPERTY",
                   help="property that must hold (repeatable, default DqRA)")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("sum", help="nested sum K[L]")
    c.add_argument("k")
    c.add_argument("l")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_sum)

    c = sub.add_parser("sugihara", help="Sugihara chain of a given size")
    c.add_argument("n", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_sugihara)

    c = sub.add_parser("dq", help="up-set algebra of a context")
    c.add_argument("context")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true", help="all up-sets (default)")
    g.add_argument("--generators", help="JSON list of generating relations")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_dq)

    c = sub.add_parser("embed", help="verify or search an embedding into a context")
    c.add_argument("algebra")
    c.add_argument("context")
    c.add_argument("--images", help="embedding record to verify instead of searching")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_embed)

    c = sub.add_parser("rep-sugihara", help="finite representation of a Sugihara chain")
    c.add_argument("n", type=int)
    c.add_argument("-o", "--output", help="write the context here")
    c.add_argument("--embedding", help="write the embedding here")
    c.add_argument("--algebra-out", help="write the represented algebra here")
    c.set_defaults(func=cmd_rep_sugihara)

    c = sub.add_parser("rep-nested", help="representation of S_n[L] from one of L")
    c.add_argument("algebra")
    c.add_argument("context")
    c.add_argument("images")
    c.add_argument("--outer", type=int, default=3, help="odd size of the outer chain")
    c.add_argument("-o", "--output", help="write the context here")
    c.add_argument("--embedding", help="write the embedding here")
    c.add_argument("--algebra-out", help="write the represented algebra here")
    c.set_defaults(func=cmd_rep_nested)

    c = sub.add_parser("search", help="enumerate models up to isomorphism")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--constraint", action="append", metavar="NAME")
    c.add_argument("--limit", type=int)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out", help="write JSON lines here; the summary still goes to stdout")
    c.set_defaults(func=cmd_search)

    c = sub.add_parser("export", help="print a file or bundled fixture as JSON or DOT")
    c.add_argument("source", help="JSON file or fixture name")
    c.add_argument("--title")
    c.set_defaults(func=cmd_export)
    return p


def dispatch(argv):
    """Run one command and return its :class:`CommandResult`."""
    try:
        parser = build_parser()
        args, rest = parser.parse_known_args(argv)
        if rest:
            # global flags given after the subcommand
            extra = _Parser(add_help=False)
            extra.add_argument("--dot", action="store_true")
            more, unknown = extra.parse_known_args(rest)
            if unknown:
                raise InputError(f"usage: unrecognized arguments: {' '.join(unknown)}")
            args.dot = args.dot or more.dot
        if args.seed_fixtures:
            written = seed_fixtures(args.seed_fixtures)
            if args.command is None:
                return CommandResult(OK, {"directory": args.seed_fixtures, "files": written})
        if args.command is None:
            raise InputError("usage: a command is required (try --help)")
        return args.func(args)
    except BudgetExceeded as exc:
        return CommandResult(BUDGET, _error_payload(exc))
    except InputError as exc:
        return CommandResult(INPUT, _error_payload(exc))
    except QrakitError as exc:
        return CommandResult(FALSE, _error_payload(exc))
    except OSError as exc:
        return CommandResult(INPUT, {"error": type(exc).__name__, "message": str(exc)})


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        result = dispatch(argv)
    except SystemExit as exc:          # --help and --version
        return exc.code if isinstance(exc.code, int) else 0
    if result.text is not None:
        sys.stdout.write(result.text)
    elif result.payload is not None:
        json.dump(result.payload, sys.stdout, ensure_ascii=False)
        sys.stdout.write("\n")
    if result.code != OK and isinstance(result.payload, dict) and "message" in result.payload:
        print(f"error: {result.payload['message']}", file=sys.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
