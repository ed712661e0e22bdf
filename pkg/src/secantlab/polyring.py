"""Exact scalars, monomial orders and sparse multivariate polynomials.

Coefficients live in one of two fields:

* ``QQ`` -- arbitrary precision rationals, stored as ``gmpy2.mpq`` (always
  reduced, positive denominator);
* ``GF(p)`` -- an odd prime field, stored as plain ``int`` in ``[0, p)``.

A polynomial is a dict ``{exponent tuple: nonzero coefficient}`` wrapped in
:class:`Poly`; it carries its :class:`PolynomialRing`.  Term order only
matters when a caller asks for it, so the dict itself is unordered.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

__all__ = [
    "QQ",
    "GF",
    "Field",
    "MonomialOrder",
    "grevlex",
    "lex",
    "elim",
    "PolynomialRing",
    "Poly",
    "parse_poly",
    "evaluate",
    "PolyParseError",
]

DEFAULT_PRIME = 32003


class PolyParseError(ValueError):
    """Raised for malformed polynomial text or ideal files."""


# ---------------------------------------------------------------------------
# fields


class Field:
    """Base class; ``p == 0`` means the rationals."""

    p: int = 0
    name: str = ""

    def __call__(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return self.name


class _Rationals(Field):
    p = 0
    name = "QQ"

    def __call__(self, x):
        if isinstance(x, str):
            try:
                return mpq(Fraction(x.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise PolyParseError(f"bad rational {x!r}") from exc
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, float):
            raise TypeError("floating point coefficients are not supported")
        return mpq(x)

    def inv(self, x):
        return 1 / x

    def lift(self, x) -> Fraction:
        return Fraction(int(x.numerator), int(x.denominator))

    def random_element(self, rng, bound: int = 20):
        return mpq(rng.randint(-bound, bound))


QQ = _Rationals()


def _is_prime(n: int) -> bool:
    return n > 1 and bool(gmpy2.is_prime(n))


class GF(Field):
    """Prime field of odd characteristic."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p) or p == 2:
            raise ValueError(f"GF(p) needs an odd prime, got {p}")
        self.p = int(p)
        self.name = f"GF({p})"

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = QQ(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            x = mpq(x.numerator, x.denominator)
        if isinstance(x, type(mpq())):
            num, den = int(x.numerator), int(x.denominator)
            if den % p == 0:
                raise ValueError(f"{x} has denominator divisible by {p}")
            return num * pow(den, -1, p) % p
        if hasattr(x, "__index__"):
            return int(x) % p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(x), -1, self.p)

    def lift(self, x) -> int:
        """Symmetric integer representative."""
        x = int(x)
        return x - self.p if x > self.p // 2 else x

    def random_element(self, rng, bound: int | None = None):
        if bound is None:
            return rng.randrange(self.p)
        return rng.randint(-bound, bound) % self.p


def field_from_spec(text: str) -> Field:
    """Parse ``QQ`` or ``GF(p)``."""
    t = text.strip().replace(" ", "")
    if t in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"(?:(?:GF|F)\(?)?(\d+)\)?", t)
    if m:
        return GF(int(m.group(1)))
    raise PolyParseError(f"unknown field {text!r}")


# ---------------------------------------------------------------------------
# monomial orders
#
# Each order maps an exponent vector to an integer key tuple; larger key means
# larger monomial.  All keys are linear in the exponents, so the orders are
# multiplicative by construction.


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


class MonomialOrder:
    """Term order tag: ``grevlex``, ``lex`` or ``elim(k)``.

    ``elim(k)`` is the block order whose first block is the *last* ``k``
    variables (compared by grevlex), ties broken by grevlex on the rest.
    """

    __slots__ = ("tag", "k", "key")

    def __init__(self, tag: str, k: int = 0):
        if tag not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order {tag}")
        if tag == "elim" and k < 0:
            raise ValueError("elim(k) needs k >= 0")
        self.tag = tag
        self.k = k if tag == "elim" else 0
        if tag == "grevlex" or (tag == "elim" and k == 0):
            self.key = _grevlex_key
        elif tag == "lex":
            self.key = tuple
        else:
            kk = k

            def key(e, kk=kk):
                n = len(e) - kk
                return _grevlex_key(e[n:]) + _grevlex_key(e[:n])

            self.key = key

    @property
    def degree_compatible(self) -> bool:
        return self.tag == "grevlex" or (self.tag == "elim" and self.k == 0)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.tag == other.tag
            and self.k == other.k
        )

    def __hash__(self):
        return hash((self.tag, self.k))

    def __repr__(self):
        return f"elim({self.k})" if self.tag == "elim" else self.tag

    def compare(self, a, b) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


grevlex = MonomialOrder("grevlex")
lex = MonomialOrder("lex")


def elim(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


# ---------------------------------------------------------------------------
# rings and polynomials


def _expand_names(spec: str) -> list[str]:
    spec = spec.strip()
    m = re.fullmatch(r"([A-Za-z_]+)(\d+)\s*\.\.\s*\1(\d+)", spec)
    if m:
        base, lo, hi = m.group(1), int(m.group(2)), int(m.group(3))
        if hi < lo:
            raise PolyParseError(f"empty variable range {spec!r}")
        return [f"{base}{i}" for i in range(lo, hi + 1)]
    names = [s.strip() for s in re.split(r"[,\s]+", spec) if s.strip()]
    return names


class PolynomialRing:
    """``K[x0, ..., xr]`` with named variables."""

    def __init__(self, names: Sequence[str] | int, field: Field = QQ):
        if isinstance(names, int):
            names = [f"x{i}" for i in range(names)]
        names = list(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        if not names:
            raise ValueError("a ring needs at least one variable")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = tuple(names)
        self.nvars = len(names)
        self.field = field
        self._index = {nm: i for i, nm in enumerate(names)}
        self._zero_exp = (0,) * self.nvars

    @classmethod
    def projective(cls, r: int, field: Field = QQ, prefix: str = "x"):
        """Coordinate ring of P^r."""
        return cls([f"{prefix}{i}" for i in range(r + 1)], field)

    def __eq__(self, other):
        return (
            isinstance(other, PolynomialRing)
            and self.names == other.names
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.field))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.names)}]"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyParseError(f"unknown variable {name!r}") from None

    # constructors
    def poly(self, terms: dict) -> "Poly":
        """Build from a raw dict, dropping zeros and coercing coefficients."""
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c:
                e = tuple(e)
                if len(e) != self.nvars:
                    raise ValueError("exponent length mismatch")
                out[e] = c
        return Poly(self, out)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {self._zero_exp: c} if c else {})

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def var(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp) -> "Poly":
        return Poly(self, {tuple(exp): self.field(1)})

    def linear_form(self, coeffs: Sequence) -> "Poly":
        terms = {}
        for i, c in enumerate(coeffs):
            c = self.field(c)
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)

    def change_field(self, field: Field) -> "PolynomialRing":
        return PolynomialRing(self.names, field)

    def rename(self, names: Sequence[str]) -> "PolynomialRing":
        return PolynomialRing(names, self.field)

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return text.change_ring(self)
        if isinstance(text, str):
            return parse_poly(text, self)
        return self.const(text)


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n and total degree d (lex descending)."""
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - a):
            yield (a,) + rest


def _add_exp(a, b):
    return tuple([x + y for x, y in zip(a, b)])


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # --- basic queries
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        it = iter(self.terms)
        d = sum(next(it))
        return all(sum(e) == d for e in it)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def variables(self) -> set[int]:
        out = set()
        for e in self.terms:
            out.update(i for i, x in enumerate(e) if x)
        return out

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = grevlex):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lm(self, order: MonomialOrder = grevlex):
        return max(self.terms, key=order.key)

    def lc(self, order: MonomialOrder = grevlex):
        return self.terms[self.lm(order)]

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    # --- arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = (v + c) % p if p else v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {e: (-c) % p for e, c in self.terms.items()})
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        F = self.ring.field
        c = F(c)
        if not c:
            return self.ring.zero
        p = F.p
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp, c) -> "Poly":
        p = self.ring.field.p
        if p:
            return Poly(
                self.ring, {_add_exp(e, exp): v * c % p for e, v in self.terms.items()}
            )
        return Poly(self.ring, {_add_exp(e, exp): v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.field.p
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple([x + y for x, y in zip(e1, e2)])
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def monic(self, order: MonomialOrder = grevlex) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc(order)))

    def diff(self, i: int) -> "Poly":
        p = self.ring.field.p
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = c * k
                if p:
                    v %= p
                if v:
                    ee = list(e)
                    ee[i] = k - 1
                    out[tuple(ee)] = v
        return Poly(self.ring, out)

    # --- ring changes
    def change_ring(self, ring: PolynomialRing) -> "Poly":
        """Move into a ring with the same variable names (maybe another field)."""
        if ring.names == self.ring.names:
            if ring.field == self.ring.field:
                return Poly(ring, self.terms)
            return ring.poly(self.terms)
        return self.embed(ring, [ring.index(nm) for nm in self.ring.names])

    def embed(self, ring: PolynomialRing, positions: Sequence[int]) -> "Poly":
        """Send variable i to variable positions[i] of ``ring``."""
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            ee = [0] * n
            for i, x in enumerate(e):
                if x:
                    ee[positions[i]] += x
            out[tuple(ee)] = c
        return ring.poly(out) if ring.field != self.ring.field else Poly(ring, out)

    def permute(self, perm: Sequence[int]) -> "Poly":
        """New variable j is old variable perm[j]."""
        return Poly(
            self.ring, {tuple(e[k] for k in perm): c for e, c in self.terms.items()}
        )

    def substitute(self, images: Sequence["Poly"], target: PolynomialRing | None = None) -> "Poly":
        """Ring map x_i -> images[i]."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = target or (images[0].ring if images else self.ring)
        result = target.zero
        cache: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        for e, c in self.terms.items():
            t = target.const(c if target.field == self.ring.field else self.ring.field.lift(c))
            for i, k in enumerate(e):
                if k:
                    t = t * pw(i, k)
            result = result + t
        return result

    def evaluate(self, point: Sequence):
        return evaluate(self, point)

    # --- text
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def evaluate(f: Poly, point: Sequence):
    """Exact value of ``f`` at ``point`` (coordinates coerced into the field)."""
    ring = f.ring
    if len(point) != ring.nvars:
        raise ValueError(
            f"point has {len(point)} coordinates, ring has {ring.nvars} variables"
        )
    F = ring.field
    pt = [F(x) for x in point]
    p = F.p
    total = F(0)
    for e, c in f.terms.items():
        t = c
        for x, k in zip(pt, e):
            if k:
                t = t * (x**k if not p else pow(int(x), k, p))
        total = total + t
    return total % p if p else total


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, other = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        elif other is not None and not other.isspace():
            if other not in "+-*/^()":
                raise PolyParseError(f"malformed token {other!r} in {text!r}")
            out.append(("op", other))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, ring: PolynomialRing):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Poly:
        if not self.toks:
            raise PolyParseError("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            raise PolyParseError(f"trailing input in {self.text!r}")
        return f

    def expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self) -> Poly:
        f = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.power()
            elif kind == "op" and val == "/":
                # only numeric denominators: a/b
                self.take()
                k2, v2 = self.take()
                if k2 != "num":
                    raise PolyParseError(f"only numeric division allowed in {self.text!r}")
                if v2 == 0:
                    raise PolyParseError("division by zero")
                try:
                    f = f.scale(self.ring.field.inv(self.ring.field(v2)))
                except (ZeroDivisionError, ValueError) as exc:
                    raise PolyParseError(f"coefficient not in field: /{v2}") from exc
            else:
                return f

    def power(self) -> Poly:
        f = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2 = self.take()
            if k2 != "num":
                raise PolyParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            f = f**v2
        return f

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "var":
            return self.ring.var(self.ring.index(val))
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect(")")
            return f
        raise PolyParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text: str, ring: PolynomialRing) -> Poly:
    """Parse ``text`` (e.g. ``"x0^2 - 3/2*x1*x2"``) into ``ring``."""
    return _Parser(text, ring).parse()


def _format_coeff(c, field: Field) -> str:
    if field.p:
        return str(field.lift(c))
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_poly(f: Poly, order: MonomialOrder = grevlex) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for e, c in f.sorted_terms(order):
        s = _format_coeff(c, ring.field)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = "*".join(
            ring.names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
        )
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        parts.append(("-" if neg else "+", body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


# ---------------------------------------------------------------------------
# ideal files


def read_ideal_text(text: str) -> tuple[PolynomialRing, list[Poly]]:
    """Parse the ideal file format (``ring:``/``field:`` headers, one poly per line)."""
    names = None
    field = None
    polys_text = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("ring:"):
            names = _expand_names(line.split(":", 1)[1])
        elif low.startswith("field:"):
            field = field_from_spec(line.split(":", 1)[1])
        else:
            polys_text.append((lineno, line))
    if names is None:
        raise PolyParseError("missing 'ring:' header")
    ring = PolynomialRing(names, field or QQ)
    polys = []
    for lineno, t in polys_text:
        try:
            polys.append(parse_poly(t, ring))
        except PolyParseError as exc:
            raise PolyParseError(f"line {lineno}: {exc}") from None
    return ring, polys


def format_ideal_text(ring: PolynomialRing, polys: Iterable[Poly], comment: str = "") -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    names = ring.names
    if all(nm == f"x{i}" for i, nm in enumerate(names)):
        lines.append(f"ring: x0..x{len(names) - 1}")
    else:
        lines.append("ring: " + ", ".join(names))
    lines.append(f"field: {ring.field.name}")
    lines.extend(str(f) for f in polys)
    return "\n".join(lines) + "\n"
