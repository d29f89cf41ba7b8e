"""Finite-dimensional algebras given by structure constants, and axiom checks.

A carrier holds up to three bilinear operations (``circ``, ``bracket``,
``dot``) and up to two linear maps (``alpha``, ``D``).  Operations are
sparse tensors ``{(i, j): {k: c}}`` meaning ``e_i * e_j = sum_k c e_k``;
maps are dense square matrices whose column ``j`` is the image of ``e_j``.

The checkers sweep every basis tuple exhaustively.  Vectors are sparse
``{index: Fraction}`` dicts internally and dense tuples in reports.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

from .exactpoly import ScalarLike, scalar

OP_NAMES = ("circ", "bracket", "dot")
MAP_NAMES = ("alpha", "D")

Tensor = Dict[Tuple[int, int], Dict[int, Fraction]]
Matrix = Tuple[Tuple[Fraction, ...], ...]
Vec = Dict[int, Fraction]


class AlgebraError(ValueError):
    pass


class MissingSlotError(AlgebraError, KeyError):
    def __init__(self, slot, purpose=""):
        self.slot = slot
        msg = f"algebra has no {slot!r}"
        if purpose:
            msg += f" (required by {purpose})"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


def _clean_tensor(dim: int, tensor) -> Tensor:
    out: Tensor = {}
    if isinstance(tensor, Mapping):
        if all(isinstance(k, tuple) and len(k) == 3 for k in tensor):
            items = ((i, j, k, c) for (i, j, k), c in tensor.items())
        else:
            items = ((i, j, k, c) for (i, j), row in tensor.items() for k, c in row.items())
    else:
        items = tensor
    for i, j, k, c in items:
        for idx in (i, j, k):
            if not 0 <= idx < dim:
                raise AlgebraError(f"structure index {idx} out of range for dim {dim}")
        c = scalar(c)
        if not c:
            continue
        row = out.setdefault((i, j), {})
        s = row.get(k, 0) + c
        if s:
            row[k] = s
        else:
            del row[k]
            if not row:
                del out[(i, j)]
    return out


def _clean_matrix(dim: int, rows) -> Matrix:
    rows = [tuple(scalar(c) for c in row) for row in rows]
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise AlgebraError(f"map must be a {dim}x{dim} matrix")
    return tuple(rows)


def identity_matrix(dim: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))


def diagonal_matrix(entries: Sequence[ScalarLike]) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(scalar(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def zero_matrix(dim: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][p] * b[p][j] for p in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True, eq=False)
class AlgebraCarrier:
    dim: int
    basis_names: Tuple[str, ...]
    ops: Mapping[str, Tensor]
    maps: Mapping[str, Matrix]
    metadata: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def build(cls, dim, ops=None, maps=None, basis_names=None, metadata=None):
        """Validate and normalize raw tensors / matrices into a carrier.

        ``ops`` values may be ``{(i, j, k): c}``, ``{(i, j): {k: c}}`` or an
        iterable of ``(i, j, k, c)``; ``maps`` values are row-major matrices.
        """
        if dim < 0:
            raise AlgebraError("dimension must be non-negative")
        names = tuple(basis_names) if basis_names else tuple(f"e{i}" for i in range(dim))
        if len(names) != dim:
            raise AlgebraError("need one basis name per dimension")
        clean_ops = {}
        for name, t in (ops or {}).items():
            if name not in OP_NAMES:
                raise AlgebraError(f"unknown operation {name!r}; expected one of {OP_NAMES}")
            clean_ops[name] = _clean_tensor(dim, t)
        clean_maps = {}
        for name, m in (maps or {}).items():
            if name not in MAP_NAMES:
                raise AlgebraError(f"unknown map {name!r}; expected one of {MAP_NAMES}")
            clean_maps[name] = _clean_matrix(dim, m)
        return cls(dim, names, clean_ops, clean_maps, dict(metadata or {}))

    def replace(self, ops=None, maps=None, drop=(), metadata=None) -> "AlgebraCarrier":
        new_ops = {k: v for k, v in self.ops.items() if k not in drop}
        new_maps = {k: v for k, v in self.maps.items() if k not in drop}
        for name, t in (ops or {}).items():
            new_ops[name] = _clean_tensor(self.dim, t)
        for name, m in (maps or {}).items():
            new_maps[name] = _clean_matrix(self.dim, m)
        meta = dict(self.metadata) if metadata is None else dict(metadata)
        return AlgebraCarrier(self.dim, self.basis_names, new_ops, new_maps, meta)

    def op(self, name: str, purpose: str = "") -> Tensor:
        try:
            return self.ops[name]
        except KeyError:
            raise MissingSlotError(name, purpose) from None

    def map(self, name: str, purpose: str = "") -> Matrix:
        try:
            return self.maps[name]
        except KeyError:
            raise MissingSlotError(name, purpose) from None

    def has(self, *slots: str) -> bool:
        return all(s in self.ops or s in self.maps for s in slots)

    def structure_constant(self, op: str, i: int, j: int, k: int) -> Fraction:
        return self.op(op).get((i, j), {}).get(k, Fraction(0))

    def same_structure(self, other: "AlgebraCarrier", slots: Iterable[str] | None = None) -> bool:
        """Exact equality of the named tensors and matrices (all of them by default)."""
        if self.dim != other.dim:
            return False
        if slots is None:
            if set(self.ops) != set(other.ops) or set(self.maps) != set(other.maps):
                return False
            slots = list(self.ops) + list(self.maps)
        for s in slots:
            if s in OP_NAMES:
                if self.ops.get(s) != other.ops.get(s):
                    return False
            elif self.maps.get(s) != other.maps.get(s):
                return False
        return True

    def basis(self, i: int) -> Vec:
        return {i: Fraction(1)}

    def dense(self, v: Vec) -> Tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dim
        for i, c in v.items():
            out[i] = c
        return tuple(out)


# -- sparse vector helpers ----------------------------------------------------

def vadd(*vs: Vec) -> Vec:
    out: Vec = {}
    for v in vs:
        for i, c in v.items():
            s = out.get(i, 0) + c
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


def vscale(c, v: Vec) -> Vec:
    c = Fraction(c)
    if not c:
        return {}
    return {i: c * x for i, x in v.items()}


def vsub(a: Vec, b: Vec) -> Vec:
    return vadd(a, vscale(-1, b))


def vcomb(*pairs) -> Vec:
    """Linear combination from ``(coefficient, vector)`` pairs."""
    return vadd(*(vscale(c, v) for c, v in pairs))


def mult(t: Tensor, x: Vec, y: Vec) -> Vec:
    acc: Vec = {}
    for i, a in x.items():
        for j, b in y.items():
            row = t.get((i, j))
            if not row:
                continue
            ab = a * b
            for k, c in row.items():
                acc[k] = acc.get(k, 0) + ab * c
    return {k: c for k, c in acc.items() if c}


def apply(m: Matrix, x: Vec) -> Vec:
    acc: Vec = {}
    for j, a in x.items():
        for i in range(len(m)):
            c = m[i][j]
            if c:
                acc[i] = acc.get(i, 0) + c * a
    return {k: c for k, c in acc.items() if c}


# -- reports ------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    identity: str
    indices: Tuple[int, ...]
    residual: tuple

    def sort_key(self):
        return (self.identity, self.indices)


@dataclass(frozen=True)
class CheckReport:
    violations: Tuple[Violation, ...] = ()
    subject: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations

    @classmethod
    def collect(cls, violations: Iterable[Violation], subject: str = "") -> "CheckReport":
        return cls(tuple(sorted(violations, key=Violation.sort_key)), subject)

    def merge(self, other: "CheckReport") -> "CheckReport":
        return CheckReport.collect(self.violations + other.violations, self.subject)

    def identities(self) -> set:
        return {v.identity for v in self.violations}

    def __bool__(self):
        return self.passed


# -- profiles -----------------------------------------------------------------

PROFILES = ("novikov", "hom_novikov", "hom_lie", "comm_hom_assoc", "gd", "hom_gd", "hom_poisson")

_REQUIRES = {
    "novikov": ("circ",),
    "hom_novikov": ("circ", "alpha"),
    "hom_lie": ("bracket", "alpha"),
    "comm_hom_assoc": ("dot", "alpha"),
    "gd": ("circ", "bracket"),
    "hom_gd": ("circ", "bracket", "alpha"),
    "hom_poisson": ("dot", "bracket", "alpha"),
}


@dataclass(frozen=True)
class CheckProfile:
    name: str
    weight: Fraction = Fraction(0)

    def __post_init__(self):
        if self.name not in PROFILES:
            raise AlgebraError(f"unknown profile {self.name!r}; expected one of {PROFILES}")
        object.__setattr__(self, "weight", scalar(self.weight))

    @property
    def requires(self) -> Tuple[str, ...]:
        return _REQUIRES[self.name]


def sweep_workers() -> int:
    try:
        return max(1, int(os.environ.get("HOMGD_THREADS", "1")))
    except ValueError:
        return 1


class _Ctx:
    """Cached basis data for one sweep: images of basis vectors under maps."""

    def __init__(self, A: AlgebraCarrier, alpha: Matrix | None):
        self.A = A
        self.n = A.dim
        self.e = [A.basis(i) for i in range(A.dim)]
        self.alpha = alpha
        self.ae = [apply(alpha, self.e[i]) for i in range(self.n)] if alpha is not None else None


def _sweep(n: int, arity: int, body: Callable[[Tuple[int, ...]], List[Violation]]) -> List[Violation]:
    firsts = range(n)

    def chunk(i):
        found = []
        if arity == 2:
            for j in range(n):
                found.extend(body((i, j)))
        else:
            for j in range(n):
                for k in range(n):
                    found.extend(body((i, j, k)))
        return found

    workers = min(sweep_workers(), max(n, 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(chunk, firsts))
    else:
        parts = [chunk(i) for i in firsts]
    return [v for part in parts for v in part]


def _identity(ctx: _Ctx, name: str, arity: int, fn) -> List[Violation]:
    def body(idx):
        r = fn(*(ctx.e[i] for i in idx), *((ctx.ae[i] for i in idx) if ctx.ae else ()))
        return [Violation(name, idx, ctx.A.dense(r))] if r else []

    return _sweep(ctx.n, arity, body)


# Each identity below is stated for basis vectors x, y, z and their alpha-images
# ax, ay, az; it returns the residual that must vanish.

def _skew(ctx, br):
    return _identity(ctx, "skew_symmetry", 2, lambda x, y, *_: vadd(mult(br, x, y), mult(br, y, x)))


def _commutativity(ctx, t):
    return _identity(ctx, "commutativity", 2, lambda x, y, *_: vsub(mult(t, x, y), mult(t, y, x)))


def _jacobi(ctx, br):
    def r(x, y, z, ax, ay, az):
        return vadd(mult(br, mult(br, x, y), az), mult(br, mult(br, y, z), ax), mult(br, mult(br, z, x), ay))

    return _identity(ctx, "jacobi", 3, r)


def _left_symmetric(ctx, c):
    # (x o y) o az - ax o (y o z) = (y o x) o az - ay o (x o z)
    def r(x, y, z, ax, ay, az):
        return vadd(
            mult(c, mult(c, x, y), az), vscale(-1, mult(c, ax, mult(c, y, z))),
            vscale(-1, mult(c, mult(c, y, x), az)), mult(c, ay, mult(c, x, z)),
        )

    return _identity(ctx, "left_symmetric", 3, r)


def _right_commutative(ctx, c):
    def r(x, y, z, ax, ay, az):
        return vsub(mult(c, mult(c, x, y), az), mult(c, mult(c, x, z), ay))

    return _identity(ctx, "right_commutative", 3, r)


def _associativity(ctx, t):
    def r(x, y, z, ax, ay, az):
        return vsub(mult(t, ax, mult(t, y, z)), mult(t, mult(t, x, y), az))

    return _identity(ctx, "associativity", 3, r)


def _compatibility(ctx, c, br):
    # [x o y, az] - [x o z, ay] + [x,y] o az - [x,z] o ay - ax o [y,z]
    def r(x, y, z, ax, ay, az):
        return vadd(
            mult(br, mult(c, x, y), az), vscale(-1, mult(br, mult(c, x, z), ay)),
            mult(c, mult(br, x, y), az), vscale(-1, mult(c, mult(br, x, z), ay)),
            vscale(-1, mult(c, ax, mult(br, y, z))),
        )

    return _identity(ctx, "compatibility", 3, r)


def _leibniz(ctx, dot, br):
    # [ax, y.z] - ay.[x,z] - az.[x,y]
    def r(x, y, z, ax, ay, az):
        return vadd(
            mult(br, ax, mult(dot, y, z)), vscale(-1, mult(dot, ay, mult(br, x, z))),
            vscale(-1, mult(dot, az, mult(br, x, y))),
        )

    return _identity(ctx, "leibniz", 3, r)


def check_axioms(A: AlgebraCarrier, profile) -> CheckReport:
    """Sweep every identity of ``profile`` over all basis pairs / triples.

    Profiles without a twisting map (``novikov``, ``gd``) run the same
    identities as their Hom counterparts with ``alpha`` replaced by the
    identity, so their reports are directly comparable.
    """
    if isinstance(profile, str):
        profile = CheckProfile(profile)
    name = profile.name
    for slot in profile.requires:
        if slot not in A.ops and slot not in A.maps:
            raise MissingSlotError(slot, f"profile {name}")
    alpha = A.maps["alpha"] if "alpha" in profile.requires else identity_matrix(A.dim)
    ctx = _Ctx(A, alpha)
    found: List[Violation] = []
    if name in ("novikov", "hom_novikov", "gd", "hom_gd"):
        c = A.ops["circ"]
        found += _left_symmetric(ctx, c) + _right_commutative(ctx, c)
    if name in ("hom_lie", "gd", "hom_gd", "hom_poisson"):
        br = A.ops["bracket"]
        found += _skew(ctx, br) + _jacobi(ctx, br)
    if name in ("gd", "hom_gd"):
        found += _compatibility(ctx, A.ops["circ"], A.ops["bracket"])
    if name in ("comm_hom_assoc", "hom_poisson"):
        dot = A.ops["dot"]
        found += _commutativity(ctx, dot) + _associativity(ctx, dot)
    if name == "hom_poisson":
        found += _leibniz(ctx, A.ops["dot"], A.ops["bracket"])
    return CheckReport.collect(found, subject=name)


def _require(A, names, purpose):
    for s in names:
        if s not in A.ops and s not in A.maps:
            raise MissingSlotError(s, purpose)


def is_endomorphism(A: AlgebraCarrier, map_name: str, op_names: Sequence[str]) -> bool:
    """True iff ``M(x*y) = M(x)*M(y)`` on all basis pairs for every listed op."""
    if isinstance(op_names, str):
        op_names = [op_names]
    _require(A, [map_name, *op_names], "is_endomorphism")
    M = A.maps[map_name]
    images = [apply(M, A.basis(i)) for i in range(A.dim)]
    for op in op_names:
        t = A.ops[op]
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = apply(M, mult(t, A.basis(i), A.basis(j)))
                if lhs != mult(t, images[i], images[j]):
                    return False
    return True


def derivation_residual(A: AlgebraCarrier, map_name: str, op_name: str, weight: ScalarLike = 0):
    """Basis pairs where ``D(x*y) - D(x)*y - x*D(y) - w x*y`` is nonzero."""
    _require(A, [map_name, op_name], "is_derivation")
    w = scalar(weight)
    M, t = A.maps[map_name], A.ops[op_name]
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            x, y = A.basis(i), A.basis(j)
            xy = mult(t, x, y)
            r = vadd(apply(M, xy), vscale(-1, mult(t, apply(M, x), y)),
                     vscale(-1, mult(t, x, apply(M, y))), vscale(-w, xy))
            if r:
                out.append(((i, j), A.dense(r)))
    return out


def is_derivation(A: AlgebraCarrier, map_name: str, op_name: str, weight: ScalarLike = 0) -> bool:
    return not derivation_residual(A, map_name, op_name, weight)


def commutes(A: AlgebraCarrier, map1: str, map2: str) -> bool:
    _require(A, [map1, map2], "commutes")
    a, b = A.maps[map1], A.maps[map2]
    return matmul(a, b) == matmul(b, a)
