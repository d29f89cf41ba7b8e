"""JSON documents for finite algebras and conformal algebras.

Finite algebra::

    {"schema": "homgd/1", "kind": "finite_algebra", "dim": 2,
     "basis": ["e", "f"],
     "ops": {"bracket": [[0, 1, 0, "1"], [1, 0, 0, "-1"]]},
     "maps": {"alpha": [["1", "0"], ["0", "1"]]},
     "metadata": {}}

Conformal algebra::

    {"schema": "homgd/1", "kind": "conformal_algebra", "rank": 1,
     "generators": ["L"],
     "brackets": [[0, 0, 0, "d + 2*l"]],
     "alpha": [["1"]],
     "metadata": {}}

Bracket entries may name generators instead of giving indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

from .conformal import ConformalAlgebra
from .exactpoly import MPoly, PolyError, format_scalar, scalar
from .finalg import MAP_NAMES, OP_NAMES, AlgebraCarrier, AlgebraError

SCHEMA = "homgd/1"
KINDS = ("finite_algebra", "conformal_algebra")


class DocumentError(ValueError):
    """Malformed document; ``where`` locates the offending entry."""

    def __init__(self, msg, where=None, line=None, column=None):
        self.where = where
        self.line = line
        self.column = column
        prefix = ""
        if line is not None:
            prefix = f"line {line}, column {column}: "
        elif where:
            prefix = f"{where}: "
        super().__init__(prefix + msg)


@dataclass
class AlgebraDocument:
    kind: str
    size: int
    names: List[str]
    ops: Dict[str, List[list]] = field(default_factory=dict)
    maps: Dict[str, List[List[str]]] = field(default_factory=dict)
    brackets: List[list] = field(default_factory=list)
    alpha: List[List[str]] | None = None
    metadata: Dict[str, Any] = field(default_factory=dict)
    schema: str = SCHEMA

    def to_json(self) -> dict:
        out: Dict[str, Any] = {"schema": self.schema, "kind": self.kind}
        if self.kind == "finite_algebra":
            out["dim"] = self.size
            out["basis"] = list(self.names)
            out["ops"] = {k: self.ops[k] for k in sorted(self.ops)}
            out["maps"] = {k: self.maps[k] for k in sorted(self.maps)}
        else:
            out["rank"] = self.size
            out["generators"] = list(self.names)
            out["brackets"] = self.brackets
            if self.alpha is not None:
                out["alpha"] = self.alpha
        out["metadata"] = self.metadata
        return out


def _expect(cond, msg, where):
    if not cond:
        raise DocumentError(msg, where)


def _int(x, where):
    _expect(isinstance(x, int) and not isinstance(x, bool), f"expected an integer, got {x!r}", where)
    return x


def _rational(x, where) -> str:
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    _expect(isinstance(x, str), f"coefficient must be a string 'p/q', got {x!r}", where)
    try:
        scalar(x)
    except PolyError as exc:
        raise DocumentError(str(exc), where) from None
    return x


def _poly_str(x, where) -> str:
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    _expect(isinstance(x, str), f"polynomial must be a string, got {x!r}", where)
    try:
        MPoly.parse(x)
    except PolyError as exc:
        raise DocumentError(str(exc), where) from None
    return x


def parse(text: str) -> AlgebraDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return from_json(raw)


def from_json(raw: Any) -> AlgebraDocument:
    _expect(isinstance(raw, dict), "document must be a JSON object", "$")
    schema = raw.get("schema", SCHEMA)
    _expect(schema == SCHEMA, f"unsupported schema {schema!r}", "schema")
    kind = raw.get("kind")
    _expect(kind in KINDS, f"kind must be one of {KINDS}", "kind")
    meta = raw.get("metadata", {})
    _expect(isinstance(meta, dict), "metadata must be an object", "metadata")
    if kind == "finite_algebra":
        dim = _int(raw.get("dim"), "dim")
        _expect(dim >= 0, "dim must be non-negative", "dim")
        names = raw.get("basis") or [f"e{i}" for i in range(dim)]
        _expect(isinstance(names, list) and len(names) == dim and all(isinstance(s, str) for s in names),
                "basis must list one name per dimension", "basis")
        ops = {}
        for name, entries in (raw.get("ops") or {}).items():
            where = f"ops.{name}"
            _expect(name in OP_NAMES, f"unknown operation; expected one of {OP_NAMES}", where)
            _expect(isinstance(entries, list), "expected a list of [i, j, k, coefficient]", where)
            clean = []
            for n, e in enumerate(entries):
                w = f"{where}[{n}]"
                _expect(isinstance(e, list) and len(e) == 4, "entry must be [i, j, k, coefficient]", w)
                i, j, k = (_int(v, w) for v in e[:3])
                for v in (i, j, k):
                    _expect(0 <= v < dim, f"index {v} out of range for dim {dim}", w)
                clean.append([i, j, k, _rational(e[3], w)])
            ops[name] = clean
        maps = {}
        for name, rows in (raw.get("maps") or {}).items():
            where = f"maps.{name}"
            _expect(name in MAP_NAMES, f"unknown map; expected one of {MAP_NAMES}", where)
            _expect(isinstance(rows, list) and len(rows) == dim, f"expected {dim} rows", where)
            clean_rows = []
            for r, row in enumerate(rows):
                _expect(isinstance(row, list) and len(row) == dim, f"expected {dim} entries", f"{where}[{r}]")
                clean_rows.append([_rational(c, f"{where}[{r}][{s}]") for s, c in enumerate(row)])
            maps[name] = clean_rows
        return AlgebraDocument(kind, dim, list(names), ops=ops, maps=maps, metadata=meta, schema=schema)

    rank = _int(raw.get("rank"), "rank")
    _expect(rank >= 0, "rank must be non-negative", "rank")
    names = raw.get("generators") or [f"a{i}" for i in range(rank)]
    _expect(isinstance(names, list) and len(names) == rank and all(isinstance(s, str) for s in names),
            "generators must list one name per generator", "generators")
    lookup = {s: i for i, s in enumerate(names)}

    def gen(v, where):
        if isinstance(v, str):
            _expect(v in lookup, f"unknown generator {v!r}", where)
            return lookup[v]
        v = _int(v, where)
        _expect(0 <= v < rank, f"generator index {v} out of range for rank {rank}", where)
        return v

    brackets = []
    for n, e in enumerate(raw.get("brackets") or []):
        w = f"brackets[{n}]"
        _expect(isinstance(e, list) and len(e) == 4, "entry must be [i, j, generator, polynomial]", w)
        i, j, p = (gen(v, w) for v in e[:3])
        brackets.append([i, j, p, _poly_str(e[3], w)])
    alpha = raw.get("alpha")
    if alpha is not None:
        _expect(isinstance(alpha, list) and len(alpha) == rank, f"expected {rank} rows", "alpha")
        clean = []
        for r, row in enumerate(alpha):
            _expect(isinstance(row, list) and len(row) == rank, f"expected {rank} entries", f"alpha[{r}]")
            clean.append([_poly_str(c, f"alpha[{r}][{s}]") for s, c in enumerate(row)])
        alpha = clean
    return AlgebraDocument(kind, rank, list(names), brackets=brackets, alpha=alpha, metadata=meta, schema=schema)


def load(doc: AlgebraDocument) -> Union[AlgebraCarrier, ConformalAlgebra]:
    try:
        if doc.kind == "finite_algebra":
            ops = {name: [(i, j, k, scalar(c)) for i, j, k, c in entries] for name, entries in doc.ops.items()}
            return AlgebraCarrier.build(doc.size, ops=ops, maps=doc.maps, basis_names=doc.names,
                                        metadata=doc.metadata)
        brackets: Dict[tuple, Dict[int, MPoly]] = {}
        for i, j, p, s in doc.brackets:
            vec = brackets.setdefault((i, j), {})
            vec[p] = vec.get(p, MPoly()) + MPoly.parse(s)
        return ConformalAlgebra.build(doc.size, brackets, doc.alpha, doc.names, doc.metadata)
    except (AlgebraError, PolyError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(str(exc), "document") from None


def _meta_json(meta) -> dict:
    out = {}
    for k, v in meta.items():
        if isinstance(v, (str, int, float, bool)) or v is None:
            out[k] = v
        elif isinstance(v, (list, tuple)):
            out[k] = [x if isinstance(x, (str, int, float, bool)) else str(x) for x in v]
        else:
            out[k] = str(v)
    return out


def dump(obj: Union[AlgebraCarrier, ConformalAlgebra]) -> AlgebraDocument:
    if isinstance(obj, AlgebraCarrier):
        ops = {}
        for name, t in obj.ops.items():
            ops[name] = [
                [i, j, k, format_scalar(c)]
                for (i, j), row in sorted(t.items())
                for k, c in sorted(row.items())
            ]
        maps = {name: [[format_scalar(c) for c in row] for row in m] for name, m in obj.maps.items()}
        return AlgebraDocument("finite_algebra", obj.dim, list(obj.basis_names), ops=ops, maps=maps,
                               metadata=_meta_json(obj.metadata))
    brackets = [
        [i, j, p, str(c)]
        for (i, j), vec in sorted(obj.brackets.items())
        for p, c in sorted(vec.items())
    ]
    alpha = [[str(c) for c in row] for row in obj.alpha]
    return AlgebraDocument("conformal_algebra", obj.rank, list(obj.generator_names), brackets=brackets,
                           alpha=alpha, metadata=_meta_json(obj.metadata))


def _render(x, depth=0) -> str:
    # leaf rows (entries, matrix rows) stay on one line so fixtures diff per entry
    pad = "  " * (depth + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_render(v, depth + 1)}" for k, v in x.items())
        return "{\n" + body + "\n" + "  " * depth + "}"
    if isinstance(x, list) and any(isinstance(v, (list, dict)) for v in x):
        body = ",\n".join(pad + _render(v, depth + 1) for v in x)
        return "[\n" + body + "\n" + "  " * depth + "]"
    return json.dumps(x)


def serialize(obj) -> str:
    doc = obj if isinstance(obj, AlgebraDocument) else dump(obj)
    return _render(doc.to_json()) + "\n"


def read(path) -> Union[AlgebraCarrier, ConformalAlgebra]:
    with open(path, encoding="utf-8") as fh:
        return load(parse(fh.read()))


def write(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj))
