"""Command-line front end.

Exit codes: 0 yes/true, 1 no/false, 2 unknown, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import decide
from .endo import Endomorphism, from_document, parse_map, to_document
from .oracle import CYCLIC, EXACT, FoundAt, NoNever, default_max_depth, orbit_trace
from .stallings import NotInSubgroupError, build, express, member, preimage
from .text import ParseError, parse_word, render, render_abstract
from .words import RankError, Word, is_conjugate

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

__all__ = ["parse_word", "render", "run", "main", "Report", "DECISION_SCHEMA"]

DECISION_SCHEMA = {
    "type": "object",
    "required": ["command", "rank", "map", "u", "v", "variant", "k", "witness", "reason", "depth"],
    "properties": {
        "command": {"enum": ["brp", "brcp"]},
        "rank": {"type": "integer", "minimum": 0},
        "map": {"type": "array", "items": {"type": "string"}},
        "u": {"type": "string"},
        "v": {"type": "string"},
        "variant": {"enum": ["yes", "no", "unknown"]},
        "k": {"type": ["integer", "null"], "minimum": 0},
        "witness": {"type": ["string", "null"]},
        "reason": {"enum": [None, "NotInImage", "OrbitCycleExhausted", "FiniteWindowExhausted"]},
        "depth": {"type": ["integer", "null"]},
    },
    "additionalProperties": False,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")

    def exit(self, status=0, message=None):
        if status:
            raise UsageError(message or "")
        if message:
            sys.stdout.write(message)
        raise SystemExit(0)


@dataclass
class Report:
    code: int
    out: str
    err: str = ""


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rank", type=int, required=True, help="rank n of the ambient free group")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def _with_map(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--map", help='generator images, e.g. "a=ab;b=b"')
    g.add_argument("--map-file", help="file with lines 'a -> a b' or a JSON document")


def _with_subgroup(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gens", required=True, help='subgroup generators separated by "," or ";"')
    p.add_argument("--dot", metavar="FILE", help="write the Stallings automaton in DOT format")


def _with_depth(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-depth", type=int, default=None, help="orbit steps per oracle run")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="brinkmann", description="Orbit problems for endomorphisms of free groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, text in (("brp", "is u.phi^k == v for some k >= 0"), ("brcp", "is u.phi^k conjugate to v")):
        p = sub.add_parser(name, help=text)
        _common(p)
        _with_map(p)
        _with_depth(p)
        p.add_argument("--witness", action="store_true", help="print the witness of a yes answer")
        p.add_argument("u")
        p.add_argument("v")

    p = sub.add_parser("conj", help="conjugacy in F_n")
    _common(p)
    p.add_argument("u")
    p.add_argument("v")

    p = sub.add_parser("member", help="subgroup membership")
    _common(p)
    _with_subgroup(p)
    p.add_argument("word")

    p = sub.add_parser("express", help="write a member over the subgroup generators")
    _common(p)
    _with_subgroup(p)
    p.add_argument("word")

    p = sub.add_parser("preimage", help="a preimage of a word under phi")
    _common(p)
    _with_map(p)
    p.add_argument("word")

    p = sub.add_parser("orbit-trace", help="print the orbit of u with cycle detection")
    _common(p)
    _with_map(p)
    _with_depth(p)
    p.add_argument("--mode", choices=[EXACT, CYCLIC], default=EXACT)
    p.add_argument("--target", help="test the coset (exact) or conjugate-into-coset (cyclic) predicate")
    p.add_argument("u")
    return parser


def _load_map(args) -> Endomorphism:
    if args.map is not None:
        return parse_map(args.map, args.rank)
    try:
        text = Path(args.map_file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.map_file}: {exc.strerror}") from exc
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON in {args.map_file}: {exc}") from exc
        phi = from_document(doc)
        if phi.rank != args.rank:
            raise ParseError(f"map file has rank {phi.rank}, expected {args.rank}")
        return phi
    return parse_map(text, args.rank)


def _gens(args) -> List[Word]:
    parts = [s for s in args.gens.replace(";", ",").split(",") if s.strip()]
    return [parse_word(s, args.rank) for s in parts]


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _max_depth(args) -> int:
    if args.max_depth is not None:
        if args.max_depth < 1:
            raise UsageError("--max-depth must be at least 1")
        return args.max_depth
    try:
        return default_max_depth()
    except ValueError as exc:
        raise UsageError(f"bad BRINKMANN_MAX_DEPTH: {exc}") from exc


def _decision(args) -> Report:
    phi = _load_map(args)
    u, v = parse_word(args.u, args.rank), parse_word(args.v, args.rank)
    proc = decide.brp if args.command == "brp" else decide.brcp
    d = proc(u, v, phi, _max_depth(args))
    doc = {
        "command": args.command,
        "rank": args.rank,
        "map": to_document(phi)["images"],
        "u": render(u),
        "v": render(v),
        "variant": None,
        "k": None,
        "witness": None,
        "reason": None,
        "depth": None,
    }
    if isinstance(d, decide.Yes):
        code = EXIT_YES
        doc.update(variant="yes", k=d.k, witness=None if d.witness is None else render(d.witness))
        line = f"yes k={d.k}"
        if args.witness:
            line += f" witness={doc['witness']}"
    elif isinstance(d, decide.No):
        code = EXIT_NO
        doc.update(variant="no", reason=d.reason.value)
        line = f"no reason={d.reason.value}"
    else:
        code = EXIT_UNKNOWN
        doc.update(variant="unknown", depth=d.depth)
        line = f"unknown depth={d.depth}"
    return Report(code, _dump(doc) if args.json else line + "\n")


def _conj(args) -> Report:
    u, v = parse_word(args.u, args.rank), parse_word(args.v, args.rank)
    ok, g = is_conjugate(u, v)
    if args.json:
        out = _dump({"command": "conj", "rank": args.rank, "u": render(u), "v": render(v),
                     "conjugate": ok, "conjugator": render(g) if ok else None})
    else:
        out = f"yes conjugator={render(g)}\n" if ok else "no\n"
    return Report(EXIT_YES if ok else EXIT_NO, out)


def _subgroup(args):
    gens = _gens(args)
    H = build(gens, args.rank)
    if args.dot:
        Path(args.dot).write_text(H.to_dot())
    return gens, H


def _member(args) -> Report:
    gens, H = _subgroup(args)
    u = parse_word(args.word, args.rank)
    ok = member(H, u)
    if args.json:
        out = _dump({"command": "member", "rank": args.rank, "generators": [render(g) for g in gens],
                     "word": render(u), "member": ok})
    else:
        out = "yes\n" if ok else "no\n"
    return Report(EXIT_YES if ok else EXIT_NO, out)


def _express(args) -> Report:
    gens, H = _subgroup(args)
    u = parse_word(args.word, args.rank)
    try:
        w = express(H, u)
    except NotInSubgroupError:
        doc = {"command": "express", "rank": args.rank, "generators": [render(g) for g in gens],
               "word": render(u), "expression": None, "letters": None}
        return Report(EXIT_NO, _dump(doc) if args.json else "no\n", "not in subgroup\n")
    if args.json:
        out = _dump({"command": "express", "rank": args.rank, "generators": [render(g) for g in gens],
                     "word": render(u), "expression": render_abstract(w), "letters": list(w.letters)})
    else:
        out = render_abstract(w) + "\n"
    return Report(EXIT_YES, out)


def _preimage(args) -> Report:
    phi = _load_map(args)
    v = parse_word(args.word, args.rank)
    pre = preimage(phi, v)
    if args.json:
        out = _dump({"command": "preimage", "rank": args.rank, "map": to_document(phi)["images"],
                     "word": render(v), "preimage": None if pre is None else render(pre)})
    else:
        out = "none\n" if pre is None else render(pre) + "\n"
    return Report(EXIT_NO if pre is None else EXIT_YES, out)


def _answer_doc(ans) -> dict:
    if isinstance(ans, FoundAt):
        return {"variant": "found", "k": ans.k}
    if isinstance(ans, NoNever):
        return {"variant": "never", "preperiod": ans.preperiod, "period": ans.period}
    return {"variant": "unknown", "depth": ans.depth}


def _orbit(args) -> Report:
    phi = _load_map(args)
    u = parse_word(args.u, args.rank)
    target = parse_word(args.target, args.rank) if args.target is not None else None
    tr = orbit_trace(phi, u, _max_depth(args), args.mode, target)
    if args.json:
        doc = {
            "command": "orbit-trace",
            "rank": args.rank,
            "map": to_document(phi)["images"],
            "mode": tr.mode,
            "u": render(u),
            "target": None if target is None else render(target),
            "steps": [{"step": k, "word": render(w), "predicate": p} for k, w, p in tr.steps],
            "cycle": None if tr.cycle is None else {"preperiod": tr.cycle[0], "period": tr.cycle[1]},
            "answer": _answer_doc(tr.answer) if target is not None else None,
        }
        return Report(EXIT_YES, _dump(doc))
    lines = [f"mode={tr.mode}"]
    for k, w, p in tr.steps:
        lines.append(f"{k} {render(w)}" + ("" if p is None else f" {str(p).lower()}"))
    if tr.cycle is None:
        lines.append("cycle: none")
    else:
        lines.append(f"cycle: preperiod={tr.cycle[0]} period={tr.cycle[1]}")
    if target is not None:
        a = tr.answer
        if isinstance(a, FoundAt):
            lines.append(f"result: found k={a.k}")
        elif isinstance(a, NoNever):
            lines.append("result: never")
        else:
            lines.append(f"result: unknown depth={a.depth}")
    return Report(EXIT_YES, "\n".join(lines) + "\n")


_HANDLERS = {
    "brp": _decision,
    "brcp": _decision,
    "conj": _conj,
    "member": _member,
    "express": _express,
    "preimage": _preimage,
    "orbit-trace": _orbit,
}


def run(argv: Sequence[str]) -> Report:
    """Parse ``argv`` and dispatch; never writes to the real streams."""
    try:
        args = make_parser().parse_args(list(argv))
        if args.rank < 0:
            raise UsageError("--rank must be non-negative")
        return _HANDLERS[args.command](args)
    except (UsageError, ParseError, RankError) as exc:
        return Report(EXIT_USAGE, "", f"{exc}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        rep = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    sys.stdout.write(rep.out)
    sys.stderr.write(rep.err)
    return rep.code
