"""Sparse multivariate polynomials over the rationals.

A monomial is an exponent tuple with one entry per ring variable.  A
polynomial is a map from monomials to nonzero Fraction coefficients,
attached to a Ring that fixes variable names and the default monomial
order.  All arithmetic is exact; there is no floating point anywhere.

Monomial orders expose a `key` function returning a flat tuple of ints,
so Python's native tuple comparison realizes the order and negating the
key component-wise reverses it (used for heaps elsewhere).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatchError,
    ParseError,
    RingMismatchError,
    UnknownVariableError,
)

Monomial = tuple


def mon_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))

def mon_divides(a: Monomial, b: Monomial) -> bool:
    """True when a | b, i.e. every exponent of a is <= the one in b."""
    return all(x <= y for x, y in zip(a, b))

def mon_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))

def mon_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))

def mon_degree(a: Monomial) -> int:
    return sum(a)


class MonomialOrder:
    """Total order on monomials given by a flat integer sort key."""

    name = "order"

    def key(self, m: Monomial) -> tuple:
        raise NotImplementedError

    def signature(self) -> tuple:
        raise NotImplementedError

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def max(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return self.name


class Lex(MonomialOrder):
    """Pure lexicographic order, earlier ring variables dominate."""

    name = "lex"

    def key(self, m: Monomial) -> tuple:
        return m

    def signature(self) -> tuple:
        return ("lex",)


class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    Total degree first; ties broken by the smallest exponent on the last
    variable in which they differ (negated reversed exponent vector).
    """

    name = "grevlex"

    def key(self, m: Monomial) -> tuple:
        return (sum(m),) + tuple(-e for e in reversed(m))

    def signature(self) -> tuple:
        return ("grevlex",)


class Block(MonomialOrder):
    """Elimination order: compare on an outer block of variables first.

    Any monomial containing an outer variable beats every monomial free
    of them (as long as the outer suborder is degree-compatible, which
    the default grevlex is), so outer-free elements of a Groebner basis
    generate the elimination ideal.
    """

    name = "block"

    def __init__(
        self,
        outer_positions: Sequence[int],
        nvars: int,
        outer: MonomialOrder | None = None,
        inner: MonomialOrder | None = None,
    ):
        outer_set = frozenset(outer_positions)
        if not outer_set:
            raise ValueError("block order needs at least one outer variable")
        if not all(0 <= p < nvars for p in outer_set):
            raise ValueError("outer position out of range")
        self.outer_positions = tuple(sorted(outer_set))
        self.inner_positions = tuple(p for p in range(nvars) if p not in outer_set)
        self.nvars = nvars
        self.outer = outer if outer is not None else GrevLex()
        self.inner = inner if inner is not None else GrevLex()

    def key(self, m: Monomial) -> tuple:
        mo = tuple(m[p] for p in self.outer_positions)
        mi = tuple(m[p] for p in self.inner_positions)
        return self.outer.key(mo) + self.inner.key(mi)

    def signature(self) -> tuple:
        return (
            "block",
            self.outer_positions,
            self.nvars,
            self.outer.signature(),
            self.inner.signature(),
        )


_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


class Ring:
    """A polynomial ring Q[v1, ..., vn] with a default monomial order."""

    __slots__ = ("names", "order", "_index")

    def __init__(self, names: Sequence[str], order: MonomialOrder | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for nm in names:
            if not nm or nm[0] not in _IDENT_START or not all(c in _IDENT_CONT for c in nm):
                raise ValueError("bad variable name %r" % (nm,))
        self.names = names
        self.order = order if order is not None else GrevLex()
        self._index = {nm: i for i, nm in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError("no variable %r in ring %s" % (name, self.names)) from None

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        mon = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mon: Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.var(nm) for nm in self.names)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def poly(self, terms: Mapping[Monomial, object]) -> "Polynomial":
        clean = {}
        for mon, c in terms.items():
            mon = tuple(mon)
            if len(mon) != self.nvars:
                raise DimensionMismatchError("monomial %r has wrong length" % (mon,))
            if any(e < 0 for e in mon):
                raise ValueError("negative exponent in %r" % (mon,))
            c = Fraction(c)
            if c != 0:
                clean[mon] = c
        return Polynomial(self, clean)

    def monomial(self, mon: Monomial) -> "Polynomial":
        return self.poly({tuple(mon): 1})

    def extend(self, names: Sequence[str], order: MonomialOrder | None = None) -> "Ring":
        return Ring(self.names + tuple(names), order)

    def without(self, names: Sequence[str], order: MonomialOrder | None = None) -> "Ring":
        drop = set(names)
        for nm in drop:
            self.index(nm)
        return Ring(tuple(nm for nm in self.names if nm not in drop), order)

    def fresh(self, base: str) -> str:
        """A variable name not used by this ring, derived from `base`."""
        if base not in self._index:
            return base
        k = 0
        while "%s%d" % (base, k) in self._index:
            k += 1
        return "%s%d" % (base, k)

    def eliminating(self, names: Sequence[str]) -> Block:
        """Block order putting `names` in the outer block."""
        return Block(tuple(self.index(nm) for nm in names), self.nvars)

    def parse(self, text: str) -> "Polynomial":
        return _parse_poly(self, text)

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.names == other.names
            and self.order.signature() == other.order.signature()
        )

    def __hash__(self):
        return hash((self.names, self.order.signature()))

    def __repr__(self):
        return "Ring(%s; %s)" % (",".join(self.names), self.order.name)


class Polynomial:
    """Immutable sparse polynomial; `terms` maps monomials to nonzero Fractions."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic queries ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        zero_mon = (0,) * self.ring.nvars
        return self.terms.get(zero_mon, Fraction(0))

    def degree(self) -> int:
        """Total degree; zero polynomial reports -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def support(self) -> frozenset:
        """Names of variables actually appearing."""
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(self.ring.names[i])
        return frozenset(used)

    def coefficient(self, mon: Monomial) -> Fraction:
        return self.terms.get(tuple(mon), Fraction(0))

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- leading data ------------------------------------------------------

    def lead_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        order = order if order is not None else self.ring.order
        return max(self.terms, key=order.key)

    def lead_coeff(self, order: MonomialOrder | None = None) -> Fraction:
        return self.terms[self.lead_monomial(order)]

    def lead_term(self, order: MonomialOrder | None = None) -> tuple:
        m = self.lead_monomial(order)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lead_coeff(order)
        if c == 1:
            return self
        return Polynomial(self.ring, {m: v / c for m, v in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatchError("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (self.__neg__()).__add__(self.ring.const(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        self._check_ring(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mon_mul(ma, mb)
                v = out.get(m)
                if v is None:
                    out[m] = ca * cb
                else:
                    v = v + ca * cb
                    if v:
                        out[m] = v
                    else:
                        del out[m]
        return Polynomial(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- evaluation and morphisms -------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact evaluation at a full point (one value per ring variable)."""
        vals = [Fraction(v) for v in point]
        if len(vals) != self.ring.nvars:
            raise DimensionMismatchError(
                "point has %d coordinates, ring has %d" % (len(vals), self.ring.nvars)
            )
        total = Fraction(0)
        for m, c in self.terms.items():
            prod = c
            for v, e in zip(vals, m):
                if e:
                    prod *= v ** e
            total += prod
        return total

    def substitute(self, bindings: Mapping[str, object], target: Ring | None = None) -> "Polynomial":
        """Ring morphism: replace named variables, keep the rest by name.

        Binding values may be Polynomials (all in one ring) or exact
        constants.  Unbound variables occurring in the polynomial must
        exist in the target ring; binding a name outside the ring is an
        error.
        """
        if target is None:
            for val in bindings.values():
                if isinstance(val, Polynomial):
                    target = val.ring
                    break
            else:
                target = self.ring
        images: dict[int, Polynomial] = {}
        for nm, val in bindings.items():
            i = self.ring.index(nm)
            img = val if isinstance(val, Polynomial) else target.const(val)
            if img.ring != target:
                raise RingMismatchError("binding for %r in a different ring" % nm)
            images[i] = img
        out = target.zero()
        pow_cache: dict[tuple, Polynomial] = {}
        for m, c in self.terms.items():
            prod = target.const(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                p = images.get(i)
                if p is None:
                    p = images[i] = target.var(self.ring.names[i])
                key = (i, e)
                q = pow_cache.get(key)
                if q is None:
                    q = p ** e
                    pow_cache[key] = q
                prod = prod * q
            out = out + prod
        return out

    def rename(self, target: Ring, mapping: Mapping[str, str] | None = None) -> "Polynomial":
        """Map this polynomial into `target` by renaming variables.

        `mapping` sends old names to target names; unmapped variables keep
        their name.  Only variables in the support need images.
        """
        mapping = mapping or {}
        slot = {}
        for nm in self.support():
            slot[self.ring.index(nm)] = target.index(mapping.get(nm, nm))
        out: dict = {}
        width = target.nvars
        for m, c in self.terms.items():
            ex = [0] * width
            for i, e in enumerate(m):
                if e:
                    ex[slot[i]] += e
            key = tuple(ex)
            out[key] = out.get(key, Fraction(0)) + c
        return target.poly(out)

    def evaluate_partial(self, bindings: Mapping[str, object]) -> "Polynomial":
        """Substitute exact constants for some variables, stay in this ring."""
        consts = {nm: Fraction(v) for nm, v in bindings.items()}
        for nm in consts:
            self.ring.index(nm)
        return self.substitute(consts, target=self.ring)

    def differentiate(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        i = self.ring.index(name)
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if not e:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            out[dm] = out.get(dm, Fraction(0)) + c * e
        return self.ring.poly(out)

    # -- printing -----------------------------------------------------------

    def to_string(self, order: MonomialOrder | None = None) -> str:
        return format_poly(self, order)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return format_poly(self)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Dispatch form of +, -, *: op in {'add','sub','mul'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % (op,))


def differentiate(f: Polynomial, name: str) -> Polynomial:
    return f.differentiate(name)


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    return f.evaluate(point)


def substitute(f: Polynomial, bindings: Mapping[str, object], target: Ring | None = None) -> Polynomial:
    return f.substitute(bindings, target)


# -- text format -------------------------------------------------------------
#
# poly   := [sign] term (sign term)*
# term   := factor ('*' factor)*
# factor := INT ['/' INT] | IDENT ['^' INT]
#
# Example: 2*x0^2*x1 - 1/2*x2


def format_poly(p: Polynomial, order: MonomialOrder | None = None) -> str:
    if not p.terms:
        return "0"
    order = order if order is not None else p.ring.order
    names = p.ring.names
    parts = []
    for m in sorted(p.terms, key=order.key, reverse=True):
        c = p.terms[m]
        factors = []
        for nm, e in zip(names, m):
            if e == 1:
                factors.append(nm)
            elif e > 1:
                factors.append("%s^%d" % (nm, e))
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        parts.append(("-" if c < 0 else "+", body))
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch in "+-*/^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError("unexpected character %r at position %d" % (ch, i))
    return tokens


def _parse_poly(ring: Ring, text: str) -> Polynomial:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take(kind):
        nonlocal pos
        tk = peek()
        if tk[0] != kind:
            raise ParseError("expected %s at position %d" % (kind, tk[2]))
        pos += 1
        return tk

    def parse_factor():
        kind, val, at = peek()
        if kind == "int":
            take("int")
            num = int(val)
            if peek()[0] == "/":
                take("/")
                dv = take("int")[1]
                den = int(dv)
                if den == 0:
                    raise ParseError("zero denominator at position %d" % at)
                return ring.const(Fraction(num, den))
            return ring.const(num)
        if kind == "ident":
            take("ident")
            base = ring.var(val)
            if peek()[0] == "^":
                take("^")
                e = int(take("int")[1])
                return base ** e
            return base
        raise ParseError("expected a coefficient or variable at position %d" % at)

    def parse_term():
        f = parse_factor()
        while peek()[0] == "*":
            take("*")
            f = f * parse_factor()
        return f

    total = ring.zero()
    sign = 1
    kind, _, _ = peek()
    if kind in ("+", "-"):
        if kind == "-":
            sign = -1
        pos += 1
    total = total + sign * parse_term()
    while pos < len(tokens):
        kind, _, at = peek()
        if kind not in ("+", "-"):
            raise ParseError("expected + or - at position %d" % at)
        pos += 1
        t = parse_term()
        total = total + (t if kind == "+" else -t)
    return total
