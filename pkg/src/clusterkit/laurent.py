"""Exact multivariate Laurent polynomial arithmetic over the integers.

Every cluster-variable computation in the package bottoms out here: the
value of a cluster variable is a Laurent polynomial with integer
coefficients in the variables of an initial seed, and all operations are
exact.  Polynomials are immutable values and safe to share between
threads.

Terms are kept in canonical order (graded lexicographic on exponent
vectors keyed by variable index), which also fixes the canonical textual
form used by the CLI and the JSON interfaces.

Internally a monomial is packed into a single integer: a total-degree
field followed by one field per variable, laid out so that plain integer
comparison realizes the graded-lex term order and integer addition
realizes the monomial product.  Fields are 44 bits wide around a central
offset; exponents entering through the public surface are bounds-checked
at encode time, far beyond anything a bounded mutation walk can reach.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    NonUnitNegativePower,
    NotDivisible,
    ParseError,
    ZeroIntoNegativePower,
)

__all__ = [
    "VarId",
    "Ring",
    "LaurentPoly",
    "div_exact",
    "substitute",
    "transport",
    "parse",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

_SHIFT = 44
_OFFSET = 1 << 42
_MASK = (1 << _SHIFT) - 1
_EXP_LIMIT = 1 << 40


@dataclass(frozen=True)
class VarId:
    """A variable slot of a seed: ordinal position plus display name."""

    index: int
    name: str


class Ring:
    """Ordered variable universe of a Laurent ring Z[x1^±1, ..., xm^±1].

    Polynomials store packed exponent keys positioned by this order, so
    two polynomials interoperate exactly when their rings have equal
    variable name tuples.
    """

    __slots__ = ("names", "vars", "_pos", "width", "base")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        seen = set()
        for n in names:
            if not isinstance(n, str) or not _NAME_RE.fullmatch(n):
                raise ValueError(f"invalid variable name {n!r}")
            if n in seen:
                raise ValueError(f"duplicate variable name {n!r}")
            seen.add(n)
        self.names = names
        self.vars = tuple(VarId(i, n) for i, n in enumerate(names))
        self._pos = {n: i for i, n in enumerate(names)}
        self.width = len(names)
        base = _OFFSET << (self.width * _SHIFT)
        for i in range(self.width):
            base |= _OFFSET << (i * _SHIFT)
        self.base = base

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return isinstance(other, Ring) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Ring({', '.join(self.names)})"

    def __len__(self) -> int:
        return self.width

    def var(self, name: str) -> VarId:
        try:
            return self.vars[self._pos[name]]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in {self!r}") from None

    def position(self, v: Union[VarId, str]) -> int:
        if isinstance(v, str):
            if v not in self._pos:
                raise ValueError(f"unknown variable {v!r} in {self!r}")
            return self._pos[v]
        if v.index >= self.width or self.vars[v.index] != v:
            raise ValueError(f"{v!r} does not belong to {self!r}")
        return v.index

    # -- packed monomials ---------------------------------------------------

    def encode(self, exponents) -> int:
        """Pack an exponent sequence into a single ordered integer key."""
        exps = tuple(int(x) for x in exponents)
        if len(exps) != self.width:
            raise ValueError("exponent tuple length does not match ring")
        key = self.base
        total = 0
        for i, e in enumerate(exps):
            if not -_EXP_LIMIT < e < _EXP_LIMIT:
                raise ValueError(f"exponent {e} out of supported range")
            total += e
            key -= e << ((self.width - 1 - i) * _SHIFT)
        key += total << (self.width * _SHIFT)
        return key

    def decode(self, key: int) -> tuple:
        return tuple(
            _OFFSET - ((key >> ((self.width - 1 - i) * _SHIFT)) & _MASK)
            for i in range(self.width)
        )

    def degree_of(self, key: int) -> int:
        return ((key >> (self.width * _SHIFT)) & _MASK) - _OFFSET

    # -- constructors ---------------------------------------------------------

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return self.const(1)

    def const(self, n: int) -> "LaurentPoly":
        if n == 0:
            return LaurentPoly(self, {})
        return LaurentPoly(self, {self.base: int(n)}, _packed=True)

    def gen(self, v: Union[VarId, str]) -> "LaurentPoly":
        i = self.position(v)
        e = [0] * self.width
        e[i] = 1
        return self.monomial(e)

    def monomial(self, exponents: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        if coeff == 0:
            return self.zero()
        return LaurentPoly(self, {self.encode(exponents): int(coeff)}, _packed=True)


class LaurentPoly:
    """Immutable exact Laurent polynomial with integer coefficients."""

    __slots__ = ("ring", "_terms", "_key", "_str")

    def __init__(self, ring: Ring, terms: Mapping, _packed: bool = False):
        if _packed:
            clean = {k: c for k, c in terms.items() if c}
        else:
            clean = {}
            for e, c in terms.items():
                if c != 0:
                    k = ring.encode(e)
                    s = clean.get(k, 0) + int(c)
                    if s:
                        clean[k] = s
                    elif k in clean:
                        del clean[k]
        self.ring = ring
        self._terms = clean
        self._key = None
        self._str = None

    # -- inspection ------------------------------------------------------

    def terms(self) -> Iterator[tuple]:
        """Yield (exponent tuple, coefficient) in canonical order."""
        decode = self.ring.decode
        for k in sorted(self._terms):
            yield decode(k), self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def as_int(self) -> Union[int, None]:
        """The integer this polynomial equals, or None if non-constant."""
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            k, c = next(iter(self._terms.items()))
            if k == self.ring.base:
                return c
        return None

    def as_variable(self) -> Union[VarId, None]:
        """The ring variable this polynomial equals, or None."""
        if len(self._terms) != 1:
            return None
        k, c = next(iter(self._terms.items()))
        if c != 1:
            return None
        e = self.ring.decode(k)
        hits = [i for i, x in enumerate(e) if x]
        if len(hits) == 1 and e[hits[0]] == 1:
            return self.ring.vars[hits[0]]
        return None

    def is_monomial(self) -> bool:
        return len(self._terms) <= 1

    def support(self) -> frozenset:
        """Ring positions of variables occurring with nonzero exponent."""
        out = set()
        decode = self.ring.decode
        for k in self._terms:
            for i, x in enumerate(decode(k)):
                if x:
                    out.add(i)
        return frozenset(out)

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent over all terms (zero poly: all 0)."""
        if not self._terms:
            return (0,) * self.ring.width
        decode = self.ring.decode
        it = iter(self._terms)
        mins = list(decode(next(it)))
        for k in it:
            for i, x in enumerate(decode(k)):
                if x < mins[i]:
                    mins[i] = x
        return tuple(mins)

    # -- ring operations --------------------------------------------------

    def _check_ring(self, other: "LaurentPoly") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("operands live in different Laurent rings")

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check_ring(other)
        out = dict(self._terms)
        get = out.get
        for k, c in other._terms.items():
            s = get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return LaurentPoly(self.ring, out, _packed=True)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(
            self.ring, {k: -c for k, c in self._terms.items()}, _packed=True
        )

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return self.ring.const(other) - self

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check_ring(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        base = self.ring.base
        out: dict = {}
        get = out.get
        items_b = list(b.items())
        for ka, ca in a.items():
            ka -= base
            for kb, cb in items_b:
                k = ka + kb
                s = get(k, 0) + ca * cb
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return LaurentPoly(self.ring, out, _packed=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            inv = _invert_unit(self)
            if inv is None:
                raise ValueError("negative power of a non-unit Laurent polynomial")
            return inv ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- equality / ordering ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.as_int() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring.names, frozenset(self._terms.items())))

    def sort_key(self) -> tuple:
        """Deterministic total-order key; used for canonical seed forms."""
        if self._key is None:
            self._key = tuple(
                (k, self._terms[k]) for k in sorted(self._terms)
            )
        return self._key

    # -- text form ---------------------------------------------------------

    def _poly_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        names = self.ring.names
        for e, c in self.terms():
            factors = []
            for i, x in enumerate(e):
                if x == 0:
                    continue
                factors.append(names[i] if x == 1 else f"{names[i]}^{x}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            parts.append((c < 0, body))
        neg, body = parts[0]
        text = ("-" if neg else "") + body
        for neg, body in parts[1:]:
            text += (" - " if neg else " + ") + body
        return text

    def __str__(self) -> str:
        if self._str is not None:
            return self._str
        mins = self.min_exponents()
        den = tuple(max(0, -m) for m in mins)
        if not any(den):
            text = self._poly_text()
        else:
            num = self * self.ring.monomial(den)
            num_text = num._poly_text()
            if len(num) > 1:
                num_text = f"({num_text})"
            names = self.ring.names
            factors = [
                names[i] if d == 1 else f"{names[i]}^{d}"
                for i, d in enumerate(den)
                if d
            ]
            den_text = "*".join(factors)
            if len(factors) > 1:
                den_text = f"({den_text})"
            text = f"{num_text}/{den_text}"
        self._str = text
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _invert_unit(p: LaurentPoly) -> Union[LaurentPoly, None]:
    """Inverse of a ±monomial, or None if p is not a unit."""
    if len(p._terms) != 1:
        return None
    k, c = next(iter(p._terms.items()))
    if c not in (1, -1):
        return None
    return LaurentPoly(p.ring, {2 * p.ring.base - k: c}, _packed=True)


def div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient q with q*b == a in the Laurent ring.

    Raises NotDivisible when b is not an exact factor of a; a violated
    exchange relation surfaces here.
    """
    a._check_ring(b)
    if b.is_zero():
        raise NotDivisible("division by zero")
    if a.is_zero():
        return a.ring.zero()
    ring = a.ring
    base = ring.base
    width = ring.width
    # normalize both operands into the polynomial range so the greedy
    # leading-term loop terminates (Laurent monomials are not well-ordered)
    sa, sb = a.min_exponents(), b.min_exponents()
    shift_a = ring.encode(tuple(-x for x in sa)) - base
    shift_b = ring.encode(tuple(-x for x in sb)) - base
    rem = {k + shift_a: c for k, c in a._terms.items()}
    bb = {k + shift_b: c for k, c in b._terms.items()}
    kb = max(bb)
    cb = bb[kb]
    tail = [(k - kb, c) for k, c in bb.items() if k != kb]
    quo: dict = {}
    while rem:
        kr = max(rem)
        cr = rem.pop(kr)
        kq = kr - kb + base
        # quotient exponents must stay nonnegative: field_i = OFFSET - e_i
        divisible = cr % cb == 0
        if divisible:
            for i in range(width):
                if ((kq >> (i * _SHIFT)) & _MASK) > _OFFSET:
                    divisible = False
                    break
        if not divisible:
            raise NotDivisible(f"({a}) is not divisible by ({b})")
        cq = cr // cb
        quo[kq] = cq
        for dk, c in tail:
            key = kr + dk
            s = rem.get(key, 0) - cq * c
            if s:
                rem[key] = s
            elif key in rem:
                del rem[key]
    shift_back = ring.encode(tuple(x - y for x, y in zip(sa, sb))) - base
    return LaurentPoly(
        ring, {k + shift_back: c for k, c in quo.items()}, _packed=True
    )


def substitute(
    p: LaurentPoly,
    images: Mapping[Union[VarId, str], Union["LaurentPoly", int]],
    target: Ring,
) -> LaurentPoly:
    """Image of p under the ring map sending each variable to its image.

    Integer images are coerced to constants of `target`.  Variables
    occurring with a negative exponent need an invertible image for the
    result to stay in the Laurent ring; the substitution is evaluated as
    an exact quotient, so any image that happens to divide exactly is
    accepted.
    """
    ring = p.ring
    imgs: dict = {}
    for v, img in images.items():
        i = ring.position(v)
        if isinstance(img, int):
            img = target.const(img)
        elif img.ring != target:
            raise ValueError("image polynomial lives outside the target ring")
        imgs[i] = img
    for i in p.support():
        if i not in imgs:
            raise ValueError(f"no image for variable {ring.names[i]!r}")

    mins = p.min_exponents()
    den_exp = tuple(max(0, -m) for m in mins)
    for i, d in enumerate(den_exp):
        if d and imgs[i].is_zero():
            raise ZeroIntoNegativePower(
                f"variable {ring.names[i]!r} has image 0 but occurs with a negative exponent"
            )
    shifted = p * ring.monomial(den_exp)

    num = target.zero()
    cache: dict = {}
    for e, c in shifted.terms():
        term = target.const(c)
        for i, x in enumerate(e):
            if x:
                if (i, x) not in cache:
                    cache[(i, x)] = imgs[i] ** x
                term = term * cache[(i, x)]
        num = num + term
    den = target.one()
    for i, d in enumerate(den_exp):
        if d:
            den = den * imgs[i] ** d
    if den.as_int() == 1:
        return num
    try:
        return div_exact(num, den)
    except NotDivisible:
        raise NonUnitNegativePower(
            "substitution into a negative exponent left the Laurent ring"
        ) from None


def transport(
    p: LaurentPoly,
    target: Ring,
    rename: Union[Mapping[str, str], None] = None,
) -> LaurentPoly:
    """Rebuild p in `target`, mapping variables by name (or via `rename`)."""
    rename = rename or {}
    support = p.support()
    pos = []
    for i, name in enumerate(p.ring.names):
        tname = rename.get(name, name)
        pos.append(target.position(tname) if i in support else None)
    width = len(target.names)
    out: dict = {}
    for e, c in p.terms():
        ne = [0] * width
        for i, x in enumerate(e):
            if x:
                ne[pos[i]] = x
        key = target.encode(ne)
        out[key] = out.get(key, 0) + c
    return LaurentPoly(target, out, _packed=True)


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    out.append(("end", None))
    return out


def parse(text: str, ring: Ring) -> LaurentPoly:
    """Parse a Laurent expression (`+ - * / ^ ( )`, `/` only by monomials)."""
    toks = _tokenize(text)
    idx = 0

    def peek():
        return toks[idx]

    def eat():
        nonlocal idx
        t = toks[idx]
        idx += 1
        return t

    def parse_expr() -> LaurentPoly:
        kind, val = peek()
        neg = False
        if kind == "op" and val in "+-":
            eat()
            neg = val == "-"
        p = parse_term()
        if neg:
            p = -p
        while peek() == ("op", "+") or peek() == ("op", "-"):
            _, op = eat()
            q = parse_term()
            p = p + q if op == "+" else p - q
        return p

    def parse_term() -> LaurentPoly:
        p = parse_factor()
        while peek() == ("op", "*") or peek() == ("op", "/"):
            _, op = eat()
            q = parse_factor()
            if op == "*":
                p = p * q
            else:
                if len(q) != 1:
                    raise ParseError("division is only permitted by monomials")
                try:
                    p = div_exact(p, q)
                except NotDivisible as exc:
                    raise ParseError(str(exc)) from None
        return p

    def parse_factor() -> LaurentPoly:
        p = parse_base()
        if peek() == ("op", "^"):
            eat()
            sign = 1
            if peek() == ("op", "-"):
                eat()
                sign = -1
            kind, val = eat()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            n = sign * val
            if n >= 0:
                p = p ** n
            else:
                if len(p) != 1:
                    raise ParseError("negative power of a non-monomial")
                try:
                    p = div_exact(ring.one(), p ** (-n))
                except NotDivisible as exc:
                    raise ParseError(str(exc)) from None
        return p

    def parse_base() -> LaurentPoly:
        kind, val = eat()
        if kind == "int":
            return ring.const(val)
        if kind == "name":
            try:
                return ring.gen(val)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        if kind == "op" and val == "(":
            p = parse_expr()
            if eat() != ("op", ")"):
                raise ParseError("expected ')'")
            return p
        raise ParseError(f"unexpected token {val!r}")

    result = parse_expr()
    if peek() != ("end", None):
        raise ParseError(f"trailing input after expression: {peek()[1]!r}")
    return result
