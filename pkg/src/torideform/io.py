"""JSON documents describing a polyhedron, and stage reports.

Rationals are written as strings "p/q" (or "p"); decimals are rejected so
that nothing is ever rounded on the way in.
"""
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ParseError
from .polyhedron import build_polyhedron

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")
_INTEGER = re.compile(r"^\s*[+-]?\d+\s*$")


def parse_rational(text, where):
    if isinstance(text, bool):
        raise ParseError("booleans are not rationals", where)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text):
        raise ParseError(f"expected a rational string like \"p/q\", got {text!r}", where)
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError("zero denominator", where) from None


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class PolyhedronDocument:
    lattice_rank: int
    vertices: list
    tail_rays: list = field(default_factory=list)
    label: str = None

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ParseError("top level must be an object", "$")
        for key in data:
            if key not in ("lattice_rank", "vertices", "tail_rays", "label"):
                raise ParseError(f"unknown field {key!r}", key)
        if "lattice_rank" not in data:
            raise ParseError("missing field", "lattice_rank")
        rank = data["lattice_rank"]
        if isinstance(rank, bool) or not isinstance(rank, int) or rank < 1:
            raise ParseError("must be a positive integer", "lattice_rank")
        if "vertices" not in data or not isinstance(data["vertices"], list) or not data["vertices"]:
            raise ParseError("must be a nonempty list", "vertices")
        verts = []
        for i, v in enumerate(data["vertices"]):
            if not isinstance(v, list) or len(v) != rank:
                raise ParseError(f"must be a list of {rank} rationals", f"vertices[{i}]")
            verts.append([parse_rational(x, f"vertices[{i}][{k}]") for k, x in enumerate(v)])
        rays = []
        for i, r in enumerate(data.get("tail_rays", [])):
            if not isinstance(r, list) or len(r) != rank:
                raise ParseError(f"must be a list of {rank} integers", f"tail_rays[{i}]")
            row = []
            for k, x in enumerate(r):
                if isinstance(x, int) and not isinstance(x, bool):
                    row.append(x)
                elif isinstance(x, str) and _INTEGER.match(x):
                    row.append(int(x))
                else:
                    raise ParseError(f"expected an integer string, got {x!r}", f"tail_rays[{i}][{k}]")
            rays.append(row)
        label = data.get("label")
        if label is not None and not isinstance(label, str):
            raise ParseError("must be a string", "label")
        return cls(rank, verts, rays, label)

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})", "json") from None
        return cls.from_dict(data)

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def to_dict(self):
        out = {
            "lattice_rank": self.lattice_rank,
            "vertices": [[format_rational(x) for x in v] for v in self.vertices],
            "tail_rays": [[str(int(x)) for x in r] for r in self.tail_rays],
        }
        if self.label is not None:
            out["label"] = self.label
        return out

    def dumps(self):
        return json.dumps(self.to_dict(), indent=2)

    def polyhedron(self):
        return build_polyhedron(self.vertices, self.tail_rays, lattice_rank=self.lattice_rank)


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Report:
    stage: str
    payload: dict
    status: int = 0

    def to_dict(self):
        return {"stage": self.stage, "status": self.status, "payload": _jsonable(self.payload)}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(data["stage"], data["payload"], data.get("status", 0))

    def to_text(self):
        lines = [f"[{self.stage}] status {self.status}"]
        _text_lines(_jsonable(self.payload), lines, 0)
        return "\n".join(lines) + "\n"


def _text_lines(value, lines, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                _text_lines(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                _text_lines(v, lines, depth + 1)
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(value)}")


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) for x in v)


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
