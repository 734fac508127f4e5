"""Command-line front end: ``ballquot <group> <command> [options]``."""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import corpus
from .catalog import parse
from .chambers import chamber_of, integer_grid, local_walls, refine_by_delta_prime
from .cyclotomic import DEFAULT_PRECISION, CycVector, positivity_check
from .io import load
from .isometry import (IsometryAction, ball_dimension, coinvariant_charpoly_check,
                       glue_power_check, in_O_plus, trace)
from .lattice import Lattice, discriminant_form, discriminant_group, is_p_elementary
from .report import CHECKS, DEFAULT_SEED, Report, verify_paper
from .sublattice import PrimitiveEmbedding, divisibility, saturate
from .walls import (delta_prime_test, delta_scan, enumerate_box, enumerate_definite,
                    projection_test)

FIXTURES = {
    "cox_a2_ext": corpus.cox_a2_ext,
    "toy_ball": corpus.toy_ball,
    "sextic_action": corpus.sextic_action,
    "sextic": corpus.sextic_embedding,
    "naive_sextic": corpus.naive_sextic_embedding,
    "delta_prime_witness": lambda: corpus.delta_prime_witness()[0],
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers

def _vector(text: str) -> list:
    try:
        vals = [Fraction(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise UsageError(f"bad vector {text!r}") from exc
    return [int(v) if v.denominator == 1 else v for v in vals]


def _vectors(text: str) -> list[list]:
    return [_vector(t) for t in text.split(";") if t.strip()]


def _int_vector(text: str) -> list[int]:
    v = _vector(text)
    if any(isinstance(x, Fraction) for x in v):
        raise UsageError("integer vector expected")
    return v


def _load_any(ref: str):
    if ref in FIXTURES:
        return FIXTURES[ref]()
    path = Path(ref)
    if path.exists():
        return load(path)
    if path.stem in FIXTURES:
        return FIXTURES[path.stem]()
    raise UsageError(f"no such file or fixture: {ref}")


def _lattice(ref: str) -> Lattice:
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        obj = load(path)
        if not isinstance(obj, Lattice):
            raise UsageError(f"{ref} does not contain a lattice")
        return obj
    try:
        return parse(ref)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _action(ref: str) -> IsometryAction:
    obj = _load_any(ref)
    if not isinstance(obj, IsometryAction):
        raise UsageError(f"{ref} does not contain an isometry action")
    return obj


def _embedding(args) -> PrimitiveEmbedding:
    if getattr(args, "embedding", None):
        obj = _load_any(args.embedding)
        if isinstance(obj, IsometryAction):
            return obj.invariant
        if not isinstance(obj, PrimitiveEmbedding):
            raise UsageError(f"{args.embedding} does not contain an embedding")
        return obj
    if getattr(args, "lattice", None) and getattr(args, "vectors", None):
        return saturate(_vectors(args.vectors), _lattice(args.lattice))
    raise UsageError("give --embedding, or --lattice with --vectors")


# ---------------------------------------------------------------------------
# commands; each returns a Report

def cmd_lattice_info(args) -> Report:
    L = _lattice(args.name)
    group = discriminant_group(L)
    res = {"name": L.name, "rank": L.rank, "det": L.det, "signature": list(L.signature),
           "even": L.is_even, "discriminant_orders": list(group.cyclic_orders)}
    primes = sorted({p for p in range(2, abs(L.det) + 1) if abs(L.det) % p == 0
                     and all(p % q for q in range(2, int(p ** 0.5) + 1))})
    for p in primes:
        flag, a = is_p_elementary(L, p)
        if flag:
            res["p_elementary"] = {"p": p, "a": a}
    if abs(L.det) == 1:
        res["p_elementary"] = {"p": None, "a": 0}
    return Report(args.argv, res)


def cmd_lattice_disc(args) -> Report:
    L = _lattice(args.name)
    F = discriminant_form(L)
    res = {"orders": list(F.group.cyclic_orders), "generators": [list(g) for g in F.group.generators],
           "q_values": list(F.q_values), "pairings": [list(r) for r in F.pairings]}
    return Report(args.argv, res)


def cmd_embed_complement(args) -> Report:
    emb = _embedding(args)
    S = emb.complement
    res = {"T_gram": emb.gram, "S_basis": [list(v) for v in S.basis], "S_gram": S.gram,
           "S_det": S.lattice.det if S.rank else 1,
           "S_signature": list(S.lattice.signature) if S.rank else [0, 0]}
    return Report(args.argv, res)


def cmd_embed_glue(args) -> Report:
    emb = _embedding(args)
    res = {"glue_index": emb.glue_index, "T_det": emb.lattice.det,
           "divisibility": [divisibility(v, emb.ambient) for v in emb.basis]}
    if args.p:
        res["power_of_p"] = glue_power_check(emb, args.p)
    return Report(args.argv, res)


def cmd_isometry_analyze(args) -> Report:
    act = _action(args.file)
    T, S = act.invariant, act.coinvariant
    k = coinvariant_charpoly_check(act)
    res = {"order": act.order, "T_basis": [list(v) for v in T.basis], "T_gram": T.gram,
           "T_signature": list(T.lattice.signature),
           "S_rank": S.rank, "S_det": S.lattice.det, "S_signature": list(S.lattice.signature),
           "k": k, "ball_dimension": ball_dimension(S.rank, act.order), "glue_index": act.glue_index,
           "glue_power_of_p": glue_power_check(act, act.order),
           "trace": trace(act.matrix), "trace_identity": trace(act.matrix) == T.rank - k}
    return Report(args.argv, res)


def cmd_isometry_oplus(args) -> Report:
    act = _action(args.file)
    return Report(args.argv, {"in_O_plus": in_O_plus(act.matrix, act.ambient)})


def cmd_walls_enumerate(args) -> Report:
    L = _lattice(args.lattice)
    if args.box is not None:
        vecs = enumerate_box(L, args.norm, args.box)
    elif L.is_negative_definite():
        vecs = enumerate_definite(L, args.norm)
    else:
        raise UsageError("indefinite lattice: pass --box B")
    rows = [{"coords": v, "norm": L.q(v), "div": divisibility(v, L)} for v in vecs]
    return Report(args.argv, {"count": len(rows), "vectors": rows})


def cmd_walls_scan(args) -> Report:
    act = _action(args.file)
    if args.point:
        x = load(args.point, act.ambient)
        if not isinstance(x, CycVector):
            raise UsageError("--point must hold a cyclotomic vector")
    else:
        ortho = _int_vector(args.orthogonal_to) if args.orthogonal_to else None
        x = corpus.period_point(act, args.k, args.seed, orthogonal_to=ortho)
    cert = positivity_check(x, args.k, precision=args.precision)
    bound = 3 if args.box is None else args.box
    verdict = delta_scan(x, act.invariant, None if bound < 0 else bound)
    res = {"point": x.to_dict(), "positivity": cert.status, "verdict": verdict.to_dict()}
    return Report(args.argv, res)


def cmd_walls_delta_prime(args) -> Report:
    emb = _embedding(args)
    d = _int_vector(args.vector)
    res = {"delta_prime": delta_prime_test(d, emb), "projection_test": projection_test(d, emb)}
    return Report(args.argv, res)


def _chamber(args, emb):
    x = _vector(args.point)
    bound = 3 if args.box is None else args.box
    walls = local_walls(emb, bound)
    ref = _vector(args.reference) if args.reference else None
    return chamber_of(x, walls, emb.lattice, reference=ref)


def cmd_chambers_id(args) -> Report:
    emb = _embedding(args)
    K = _chamber(args, emb)
    res = {"walls": [w.to_dict() for w in K.walls], "signs": K.label()}
    return Report(args.argv, res)


def cmd_chambers_refine(args) -> Report:
    emb = _embedding(args)
    K = _chamber(args, emb)
    walls = _vectors(args.delta_prime) if args.delta_prime else []
    count = refine_by_delta_prime(K, walls, integer_grid(emb.rank, args.radius), emb=emb)
    return Report(args.argv, {"signs": K.label(), "subchambers_lower_bound": count})


def cmd_verify_paper(args) -> Report:
    only = [s for s in args.only.split(",") if s] if args.only else None
    if only and any(n not in CHECKS for n in only):
        raise UsageError(f"--only accepts: {', '.join(CHECKS)}")
    rep = verify_paper(only, seed=args.seed)
    rep.command = args.argv
    return rep


# ---------------------------------------------------------------------------
# parser

def _common(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="structured output")
    parser.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="random seed")
    parser.add_argument("--box", type=int, default=d(None), help="coefficient bound B")
    parser.add_argument("--precision", type=int, default=d(DEFAULT_PRECISION), help="interval precision in bits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballquot", description=__doc__)
    _common(parser, False)
    shared = argparse.ArgumentParser(add_help=False)
    _common(shared, True)
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group, name, func, **kw):
        p = group.add_parser(name, parents=[shared], **kw)
        p.set_defaults(func=func)
        return p

    def emb_args(p):
        p.add_argument("--embedding", help="embedding/action file or fixture name")
        p.add_argument("--lattice", help="ambient lattice name or file")
        p.add_argument("--vectors", help="basis vectors, ';'-separated")

    g = groups.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    sub(g, "info", cmd_lattice_info).add_argument("name")
    sub(g, "disc", cmd_lattice_disc).add_argument("name")

    g = groups.add_parser("embed").add_subparsers(dest="cmd", required=True)
    emb_args(sub(g, "complement", cmd_embed_complement))
    p = sub(g, "glue", cmd_embed_glue)
    emb_args(p)
    p.add_argument("--p", type=int, help="test whether the glue index is a power of p")

    g = groups.add_parser("isometry").add_subparsers(dest="cmd", required=True)
    sub(g, "analyze", cmd_isometry_analyze).add_argument("--file", required=True)
    sub(g, "oplus", cmd_isometry_oplus).add_argument("--file", required=True)

    g = groups.add_parser("walls").add_subparsers(dest="cmd", required=True)
    p = sub(g, "enumerate", cmd_walls_enumerate)
    p.add_argument("--lattice", required=True)
    p.add_argument("--norm", type=int, required=True)
    p = sub(g, "scan", cmd_walls_scan)
    p.add_argument("--file", required=True, help="action file or fixture name")
    p.add_argument("--point", help="cyclotomic vector file (default: seeded sample)")
    p.add_argument("--orthogonal-to", help="build the sample inside this vector's hyperplane")
    p.add_argument("--k", type=int, default=1, help="root index of ξ = ζ^k")
    p = sub(g, "delta-prime", cmd_walls_delta_prime)
    emb_args(p)
    p.add_argument("--vector", required=True)

    g = groups.add_parser("chambers").add_subparsers(dest="cmd", required=True)
    for name, func in (("id", cmd_chambers_id), ("refine", cmd_chambers_refine)):
        p = sub(g, name, func)
        emb_args(p)
        p.add_argument("--point", required=True, help="rational coordinates in T")
        p.add_argument("--reference", help="reference vector of the cone component")
        if name == "refine":
            p.add_argument("--delta-prime", help="ambient Δ′ vectors, ';'-separated")
            p.add_argument("--radius", type=int, default=5, help="sample grid radius")

    p = groups.add_parser("verify-paper", parents=[shared])
    p.add_argument("--only", help=f"comma-separated subset of: {', '.join(CHECKS)}")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def run(argv: list[str] | None = None, out=None) -> tuple[Report | None, int]:
    """Parse, execute and print; returns the report and the exit code."""
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)
    args.argv = argv
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return None, 2
    except (ValueError, ArithmeticError, KeyError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 1
    print(report.to_json() if args.json else report.to_text(), file=out)
    code = 0 if report.passed else 1
    return report, code


def main(argv: list[str] | None = None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())
