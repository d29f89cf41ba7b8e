"""Exact rational scalars, sparse multivariate polynomials and Laurent vectors.

Every identity check in the package reduces to "is this polynomial zero in
canonical form", so the polynomial type below keeps a single canonical
representation: a map from exponent tuples to nonzero ``Fraction``
coefficients over the fixed variable order ``d, l, u, m, n, k``.

``d`` is the derivation of the conformal module, ``l`` and ``u`` are the
two formal bracket parameters and ``m, n, k`` are the integer symbols used
by the symbolic affinization check.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

VARS = ("d", "l", "u", "m", "n", "k")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}

Exponent = Tuple[int, ...]
Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

_ZERO_EXP = (0,) * NVARS
_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class PolyError(ValueError):
    pass


class PolySyntaxError(PolyError):
    def __init__(self, text, pos, msg):
        super().__init__(f"{msg} at column {pos + 1} in {text!r}")
        self.text = text
        self.pos = pos


def scalar(x: ScalarLike) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Strings must look like ``p`` or ``p/q``; floats are refused because
    they would silently smuggle rounding into an exact computation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("refusing to treat a bool as a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        m = _RATIONAL.match(x)
        if not m:
            raise PolyError(f"not an exact rational: {x!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise PolyError(f"zero denominator in {x!r}")
        return Fraction(num, den)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_scalar(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def var_index(name: str) -> int:
    try:
        return _INDEX[name]
    except KeyError:
        raise PolyError(f"unknown variable {name!r}; expected one of {VARS}") from None


def _sort_key(exp: Exponent):
    # total degree first, then lex; descending order is used for printing
    return (sum(exp), exp)


class MPoly:
    """Immutable sparse polynomial over the rationals in ``d, l, u, m, n, k``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, ScalarLike] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != NVARS or any(e < 0 for e in exp):
                    raise PolyError(f"bad exponent vector {exp}")
                c = scalar(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction]) -> "MPoly":
        # trusted constructor: caller guarantees canonical terms
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: ScalarLike) -> "MPoly":
        c = scalar(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        exp = [0] * NVARS
        exp[var_index(name)] = power
        return cls._raw({tuple(exp): Fraction(1)})

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        return _Parser(text).parse()

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and _ZERO_EXP in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXP, Fraction(0))

    def variables(self) -> set:
        used = set()
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used.add(VARS[i])
        return used

    def degree(self, name: str | None = None) -> int:
        """Total degree, or degree in one variable; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        if name is None:
            return max(sum(e) for e in self._terms)
        i = var_index(name)
        return max(e[i] for e in self._terms)

    def coeff(self, **powers: int) -> Fraction:
        exp = [0] * NVARS
        for name, e in powers.items():
            exp[var_index(name)] = e
        return self._terms.get(tuple(exp), Fraction(0))

    def coefficient_in(self, name: str, power: int) -> "MPoly":
        """The polynomial multiplying ``name**power`` (other variables kept)."""
        i = var_index(name)
        out = {}
        for exp, c in self._terms.items():
            if exp[i] == power:
                e = list(exp)
                e[i] = 0
                out[tuple(e)] = c
        return MPoly._raw(out)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: ScalarLike) -> "MPoly":
        c = scalar(c)
        if not c:
            return ZERO
        return MPoly._raw({e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("only non-negative integer powers are supported")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- substitution and evaluation ---------------------------------------

    def subst(self, name: str, expr: "MPoly | ScalarLike") -> "MPoly":
        """Replace every occurrence of ``name`` by ``expr`` simultaneously."""
        i = var_index(name)
        expr = _coerce(expr)
        if expr is NotImplemented:
            raise TypeError("substituted expression must be a polynomial or scalar")
        by_power: Dict[int, Dict[Exponent, Fraction]] = {}
        for exp, c in self._terms.items():
            rest = exp[:i] + (0,) + exp[i + 1:]
            by_power.setdefault(exp[i], {})[rest] = c
        out = ZERO
        powers = {0: ONE}
        for p in sorted(by_power):
            if p not in powers:
                powers[p] = expr ** p
            out = out + MPoly._raw(by_power[p]) * powers[p]
        return out

    def subst_many(self, mapping: Mapping[str, "MPoly | ScalarLike"]) -> "MPoly":
        """Simultaneous substitution of several variables."""
        idx = {var_index(k): _coerce(v) for k, v in mapping.items()}
        out = ZERO
        cache: Dict[Tuple[int, int], MPoly] = {}
        for exp, c in self._terms.items():
            keep = list(exp)
            term = ONE
            for i, p in idx.items():
                if exp[i]:
                    key = (i, exp[i])
                    if key not in cache:
                        cache[key] = p ** exp[i]
                    term = term * cache[key]
                    keep[i] = 0
            out = out + term * MPoly._raw({tuple(keep): c})
        return out

    def eval(self, assignment: Mapping[str, ScalarLike]) -> Fraction:
        values = {}
        for name, v in assignment.items():
            values[var_index(name)] = scalar(v)
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    if i not in values:
                        raise PolyError(f"no value given for variable {VARS[i]!r}")
                    term *= values[i] ** e
            total += term
        return total

    # -- comparison / printing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == MPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _sort_key(t[0]), reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(exp) if e
            )
            mag = abs(c)
            if not mono:
                body = format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _coerce(x):
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return MPoly.const(x)
    return NotImplemented


ZERO = MPoly._raw({})
ONE = MPoly._raw({_ZERO_EXP: Fraction(1)})

D = MPoly.var("d")
LAM = MPoly.var("l")
MU = MPoly.var("u")
M_SYM = MPoly.var("m")
N_SYM = MPoly.var("n")
K_SYM = MPoly.var("k")


def mpoly_arith(a: MPoly, b, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar-mul":
        return a.scale(b)
    raise PolyError(f"unknown operation {op!r}")


def mpoly_subst(p: MPoly, name: str, expr) -> MPoly:
    return p.subst(name, expr)


def mpoly_eval(p: MPoly, assignment: Mapping[str, ScalarLike]) -> Fraction:
    return p.eval(assignment)


def poly(x) -> MPoly:
    """Accept a polynomial, a scalar or a polynomial string."""
    if isinstance(x, MPoly):
        return x
    if isinstance(x, str):
        return MPoly.parse(x)
    return MPoly.const(x)


class _Parser:
    """Recursive descent over ``+ - * ^ ( )``, rationals ``p/q`` and the six variables."""

    _token = re.compile(r"\s*(?:(\d+(?:\s*/\s*\d+)?)|([A-Za-z_]\w*)|(\S))")

    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = self._token.match(text, pos)
            if m is None:
                break
            if m.group(1) is not None:
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _err(self, msg, tok=None):
        pos = tok[2] if tok else len(self.text)
        raise PolySyntaxError(self.text, pos, msg)

    def parse(self) -> MPoly:
        if not self.toks:
            self._err("empty polynomial")
        p = self._sum()
        tok = self._peek()
        if tok is not None:
            self._err(f"unexpected {tok[1]!r}", tok)
        return p

    def _sum(self):
        sign = 1
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            self.i += 1
        acc = self._product().scale(sign)
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                term = self._product()
                acc = acc + term if tok[1] == "+" else acc - term
            else:
                return acc

    def _product(self):
        acc = self._power()
        while True:
            tok = self._peek()
            if tok and tok[0] == "op" and tok[1] == "*":
                self.i += 1
                acc = acc * self._power()
            elif tok and (tok[0] in ("name", "num") or tok[1] == "("):
                # implicit multiplication, e.g. "2d" or "d(l+1)"
                acc = acc * self._power()
            else:
                return acc

    def _power(self):
        base = self._atom()
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            exp_tok = self._peek()
            if exp_tok is None or exp_tok[0] != "num" or "/" in exp_tok[1]:
                self._err("exponent must be a non-negative integer", exp_tok)
            self.i += 1
            return base ** int(exp_tok[1])
        return base

    def _atom(self):
        tok = self._peek()
        if tok is None:
            self._err("unexpected end of input")
        kind, val, _ = tok
        self.i += 1
        if kind == "num":
            try:
                return MPoly.const(scalar(val.replace(" ", "")))
            except PolyError as exc:
                self._err(str(exc), tok)
        if kind == "name":
            if val not in _INDEX:
                self._err(f"unknown variable {val!r}", tok)
            return MPoly.var(val)
        if val == "(":
            inner = self._sum()
            close = self._peek()
            if close is None or close[1] != ")":
                self._err("missing ')'", close)
            self.i += 1
            return inner
        if val == "-":
            return -self._power()
        self._err(f"unexpected {val!r}", tok)


class LaurentVec:
    """Finite combination of ``e_i (x) t^p`` with rational coefficients."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[Tuple[int, int], ScalarLike] | None = None):
        clean = {}
        for (i, p), c in (entries or {}).items():
            c = scalar(c)
            if c:
                key = (int(i), int(p))
                s = clean.get(key, 0) + c
                if s:
                    clean[key] = s
                else:
                    clean.pop(key, None)
        self._entries = clean

    @classmethod
    def basis(cls, i: int, power: int, coeff: ScalarLike = 1) -> "LaurentVec":
        return cls({(i, power): coeff})

    @classmethod
    def from_vector(cls, vec: Iterable[ScalarLike], power: int) -> "LaurentVec":
        return cls({(i, power): c for i, c in enumerate(vec)})

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __bool__(self):
        return bool(self._entries)

    def __add__(self, other: "LaurentVec") -> "LaurentVec":
        out = dict(self._entries)
        for key, c in other._entries.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        v = LaurentVec()
        v._entries = out
        return v

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: ScalarLike) -> "LaurentVec":
        c = scalar(c)
        v = LaurentVec()
        if c:
            v._entries = {k: c * x for k, x in self._entries.items()}
        return v

    def powers(self) -> set:
        return {p for _, p in self._entries}

    def component(self, power: int, dim: int) -> Tuple[Fraction, ...]:
        """Dense carrier vector sitting at ``t**power``."""
        vec = [Fraction(0)] * dim
        for (i, p), c in self._entries.items():
            if p == power:
                vec[i] += c
        return tuple(vec)

    def __eq__(self, other):
        if not isinstance(other, LaurentVec):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __repr__(self):
        inner = ", ".join(
            f"{format_scalar(c)}*e{i}[{p}]" for (i, p), c in sorted(self._entries.items())
        )
        return f"LaurentVec({inner})"
