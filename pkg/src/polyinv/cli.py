"""Batch command line front end.

Commands consume and emit JSON by default (`--format table` renders the
same data as aligned text). Polytope documents are the single
interchange format:

    { "name"?: string, "ambient_dim": int, "vertices": [[int, ...], ...] }

Facets and faces are always derived, never ingested, so any `construct`
output can be piped into any other command. Reports carry a
format_version field; output is byte-identical across runs on the same
input.

Exit codes: 0 success, 1 malformed input (the message names the
offending field), 2 domain error (violated precondition), 3 internal
consistency violation (a broken exact identity, always a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import classifier as classify_mod
from . import constructions as con
from . import invariants as inv
from . import volumes as vol
from .errors import DomainError, InternalConsistencyError
from .polytope import Polytope

FORMAT_VERSION = 1


@dataclass
class CliConfig:
    command: str
    input_path: Optional[str] = None
    output_format: str = "json"
    t_range: tuple[int, ...] = (0, 1, 2, 3, 4)
    dilation_max: int = 1
    family: Optional[str] = None
    dim: Optional[int] = None
    k: Optional[int] = None
    n: Optional[int] = None
    length: Optional[int] = None
    summands: tuple[str, ...] = ()
    name: Optional[str] = None

    def __post_init__(self):
        if self.dilation_max < 1:
            raise DomainError("--dilations must be >= 1")
        if any(t < 0 for t in self.t_range):
            raise DomainError("--t-range entries must be nonnegative")


class _InputError(Exception):
    pass


def _parse_polytope(data: bytes) -> Polytope:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise _InputError(f"input is not valid JSON: {e}") from e
    try:
        return Polytope.from_dict(doc)
    except DomainError as e:
        raise _InputError(f"input: {e}") from e


def _read_summands(config: CliConfig) -> list[Polytope]:
    out = []
    for path in config.summands:
        try:
            with open(path, "rb") as fh:
                out.append(_parse_polytope(fh.read()))
        except OSError as e:
            raise _InputError(f"summand {path}: {e}") from e
    return out


def _render(doc: dict, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    lines: list[str] = []
    _render_table(doc, lines, "")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _render_table(value, lines: list[str], prefix: str):
    if isinstance(value, dict):
        for key, sub in value.items():
            if isinstance(sub, (dict, list)) and not _is_flat_list(sub):
                lines.append(f"{prefix}{key}:")
                _render_table(sub, lines, prefix + "  ")
            else:
                lines.append(f"{prefix}{key} = {_scalar(sub)}")
    elif isinstance(value, list):
        for i, sub in enumerate(value):
            if isinstance(sub, (dict, list)) and not _is_flat_list(sub):
                lines.append(f"{prefix}[{i}]:")
                _render_table(sub, lines, prefix + "  ")
            else:
                lines.append(f"{prefix}[{i}] = {_scalar(sub)}")
    else:
        lines.append(f"{prefix}{_scalar(value)}")


def _is_flat_list(value) -> bool:
    return isinstance(value, list) and all(
        not isinstance(x, (dict, list)) or _is_flat_list(x) for x in value
    )


def _scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(x) for x in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _poly_header(P: Polytope) -> dict:
    doc: dict = {"format_version": FORMAT_VERSION}
    if P.name is not None:
        doc["name"] = P.name
    doc["ambient_dim"] = P.ambient_dim
    doc["dim"] = P.dim
    return doc


def _cmd_info(P: Polytope) -> dict:
    doc = _poly_header(P)
    doc["n_vertices"] = len(P.vertices)
    doc["n_facets"] = P.n_facets
    doc["f_vector"] = list(P.f_vector)
    doc["is_simple"] = P.is_simple()
    doc["is_delzant"] = P.is_delzant()
    doc["normalized_volume"] = vol.normalized_volume(P)
    doc["volume"] = str(vol.volume(P))
    doc["lattice_points"] = vol.lattice_points(P, 1)
    return doc


def _cmd_invariants(P: Polytope, config: CliConfig) -> dict:
    doc = _poly_header(P)
    doc.update(inv.report(P, t_range=config.t_range).to_dict())
    return doc


def _cmd_ehrhart(P: Polytope, config: CliConfig) -> dict:
    data = vol.ehrhart(P)
    samples = dict(data.samples)
    for n in range(max(samples) + 1, config.dilation_max + 1):
        samples[n] = vol.lattice_points(P, n)
        if data.evaluate(n) != samples[n]:
            raise InternalConsistencyError(
                "Ehrhart polynomial disagrees with a direct count"
            )
    doc = _poly_header(P)
    doc["samples"] = {str(n): samples[n] for n in sorted(samples)}
    doc["polynomial"] = [str(cf) for cf in data.polynomial]
    doc["volume"] = str(vol.volume(P))
    return doc


def _cmd_classify(P: Polytope) -> dict:
    doc = _poly_header(P)
    doc.update(classify_mod.classify(P).to_dict())
    return doc


def _cmd_construct(config: CliConfig) -> dict:
    fam = config.family
    if fam is None:
        raise DomainError("construct requires --family")
    if fam == "simplex":
        if config.dim is None:
            raise DomainError("simplex requires --dim")
        P = con.simplex(config.dim)
    elif fam == "cube":
        if config.dim is None:
            raise DomainError("cube requires --dim")
        P = con.cube(config.dim, config.length if config.length is not None else 1)
    elif fam == "hypersimplex":
        if config.k is None or config.n is None:
            raise DomainError("hypersimplex requires --k and --n")
        P = con.hypersimplex(config.k, config.n)
    elif fam == "product":
        summands = _read_summands(config)
        if len(summands) != 2:
            raise DomainError("product requires exactly two --summand files")
        P = con.product(summands[0], summands[1])
    elif fam == "join":
        summands = _read_summands(config)
        if not summands:
            raise DomainError("join requires at least one --summand file")
        P = con.projective_join(summands)
    else:
        raise DomainError(f"unknown family {fam!r}")
    if config.name is not None:
        P.name = config.name
    return P.to_dict()


def run(config: CliConfig, input_bytes: bytes = b"") -> tuple[int, bytes]:
    """Execute one command; returns (exit_code, output bytes).

    On failure the output holds the error message.
    """
    try:
        if config.command in ("construct", "join"):
            if config.command == "join":
                config.family = "join"
            doc = _cmd_construct(config)
        else:
            P = _parse_polytope(input_bytes)
            if config.command == "info":
                doc = _cmd_info(P)
            elif config.command == "invariants":
                doc = _cmd_invariants(P, config)
            elif config.command == "ehrhart":
                doc = _cmd_ehrhart(P, config)
            elif config.command == "classify":
                doc = _cmd_classify(P)
            else:
                raise DomainError(f"unknown command {config.command!r}")
    except _InputError as e:
        return 1, (f"error: {e}\n").encode("utf-8")
    except DomainError as e:
        return 2, (f"error: {e}\n").encode("utf-8")
    except InternalConsistencyError as e:
        return 3, (f"internal error: {e}\n").encode("utf-8")
    return 0, _render(doc, config.output_format)


def _t_range(text: str) -> tuple[int, ...]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return (int(text),)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyinv",
        description="Exact invariants and defect classification of lattice polytopes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, takes_input=True):
        if takes_input:
            p.add_argument(
                "input",
                nargs="?",
                default=None,
                help="polytope JSON file (default: standard input)",
            )
        p.add_argument("--format", choices=("json", "table"), default="json")

    for name in ("info", "invariants", "ehrhart", "classify"):
        p = sub.add_parser(name)
        add_common(p)
        if name == "invariants":
            p.add_argument("--t-range", type=_t_range, default=(0, 1, 2, 3, 4))
        if name == "ehrhart":
            p.add_argument("--dilations", type=int, default=1)

    p = sub.add_parser("construct")
    add_common(p, takes_input=False)
    p.add_argument("--family", required=True,
                   choices=("simplex", "cube", "hypersimplex", "product", "join"))
    p.add_argument("--dim", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--len", type=int, dest="length")
    p.add_argument("--summand", action="append", default=[], dest="summands")
    p.add_argument("--name")

    p = sub.add_parser("join")
    add_common(p, takes_input=False)
    p.add_argument("--summand", action="append", default=[], dest="summands")
    p.add_argument("--name")

    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        output_format=args.format,
        t_range=tuple(getattr(args, "t_range", (0, 1, 2, 3, 4))),
        dilation_max=getattr(args, "dilations", 1),
        family=getattr(args, "family", None),
        dim=getattr(args, "dim", None),
        k=getattr(args, "k", None),
        n=getattr(args, "n", None),
        length=getattr(args, "length", None),
        summands=tuple(getattr(args, "summands", ())),
        name=getattr(args, "name", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except DomainError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    data = b""
    if config.command not in ("construct", "join"):
        if config.input_path:
            try:
                with open(config.input_path, "rb") as fh:
                    data = fh.read()
            except OSError as e:
                sys.stderr.write(f"error: input: {e}\n")
                return 1
        else:
            data = sys.stdin.buffer.read()
    code, out = run(config, data)
    if code == 0:
        sys.stdout.buffer.write(out)
    else:
        sys.stderr.buffer.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
