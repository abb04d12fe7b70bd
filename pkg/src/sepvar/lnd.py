"""Locally nilpotent derivations and the group actions they generate.

A derivation D on Q[x1..xn] is stored by its images on the generators
and extended by the Leibniz rule through partial derivatives.  When D is
locally nilpotent the exponential exp(tD) is polynomial in t and defines
an additive-group action; this module computes that flow symbolically
and on points, decides orbit questions through a local slice, and builds
the graph ideal of the action by eliminating the group parameter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatchError,
    NilpotencyError,
    ParseError,
    RingMismatchError,
)
from .groebner import Budget, GBStats, GBTimeout, GroebnerBasis, Ideal, buchberger
from .poly import GrevLex, Polynomial, Ring


class Point:
    """A rational point, one coordinate per ring variable."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        self.coords = tuple(Fraction(c) for c in coords)

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, Point):
            return self.coords == other.coords
        return self.coords == tuple(Fraction(c) for c in other)

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class Derivation:
    """Q-linear derivation of a polynomial ring, given on the generators."""

    def __init__(self, ring: Ring, images: Mapping[str, Polynomial]):
        self.ring = ring
        imgs = {}
        for name, p in images.items():
            ring.index(name)
            if p.ring != ring:
                raise RingMismatchError("image of %r lives in another ring" % name)
            if not p.is_zero():
                imgs[name] = p
        self.images = imgs
        self.witness: NilpotencyWitness | None = None
        self._taylor: dict = {}

    def image(self, name: str) -> Polynomial:
        self.ring.index(name)
        return self.images.get(name, self.ring.zero())

    def apply(self, f: Polynomial) -> Polynomial:
        """D(f) = sum over generators of df/dv * D(v)."""
        if f.ring != self.ring:
            raise RingMismatchError("argument lives in another ring")
        out = self.ring.zero()
        for name, img in self.images.items():
            pd = f.differentiate(name)
            if not pd.is_zero():
                out = out + pd * img
        return out

    def apply_power(self, f: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            f = self.apply(f)
        return f

    def is_verified(self) -> bool:
        return self.witness is not None and self.witness.verified

    def require_nilpotent(self) -> None:
        if not self.is_verified():
            raise NilpotencyError(
                "derivation not verified locally nilpotent; "
                "run verify_locally_nilpotent first"
            )

    def taylor(self, name: str) -> list:
        """[v, D(v), D^2(v)/2!, ...] up to but excluding the first zero."""
        hit = self._taylor.get(name)
        if hit is not None:
            return hit
        self.require_nilpotent()
        out = [self.ring.var(name)]
        g = out[0]
        k = 0
        while True:
            g = self.apply(g)
            k += 1
            if g.is_zero():
                break
            out.append(g * Fraction(1, factorial(k)))
        self._taylor[name] = out
        return out

    def __repr__(self):
        body = ", ".join("%s -> %s" % (nm, p) for nm, p in sorted(self.images.items()))
        return "Derivation(%s)" % body


@dataclass
class NilpotencyWitness:
    """Least k with D^k(v) = 0 per generator, within the tried bound."""

    steps: dict
    bound: int
    verified: bool
    failed: str | None = None

    def max_steps(self) -> int:
        return max(self.steps.values(), default=0)


def default_bound(D: Derivation) -> int:
    maxdeg = max((p.degree() for p in D.images.values()), default=0)
    return max(1, (D.ring.nvars + 1) * max(1, maxdeg))


def verify_locally_nilpotent(D: Derivation, bound: int | None = None) -> NilpotencyWitness:
    """Iterate D on every generator until it dies or the bound is spent.

    On success the witness is stored on the derivation so downstream
    operations (exponentials, flows) are unlocked.
    """
    bound = bound if bound is not None else default_bound(D)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    steps = {}
    for name in D.ring.names:
        g = D.ring.var(name)
        k = 0
        while not g.is_zero():
            if k >= bound:
                return NilpotencyWitness(steps, bound, False, failed=name)
            g = D.apply(g)
            k += 1
        steps[name] = k
    w = NilpotencyWitness(steps, bound, True)
    D.witness = w
    return w


def exp_action(D: Derivation, f: Polynomial, param: str = "t") -> Polynomial:
    """exp(tD) applied to f: sum of t^k/k! D^k(f), exact in Q[x..., t]."""
    D.require_nilpotent()
    if f.ring != D.ring:
        raise RingMismatchError("argument lives in another ring")
    if param in D.ring._index:
        raise ValueError("parameter name %r already a ring variable" % param)
    ext = D.ring.extend([param])
    tvar = ext.var(param)
    total = ext.zero()
    g = f
    k = 0
    tpow = ext.one()
    while not g.is_zero():
        total = total + g.rename(ext) * tpow * Fraction(1, factorial(k))
        g = D.apply(g)
        k += 1
        tpow = tpow * tvar
    return total


def act_on_point(D: Derivation, t, p) -> Point:
    """The flow at time t: evaluate exp(tD) on each coordinate at p."""
    t = Fraction(t)
    pt = Point(p) if not isinstance(p, Point) else p
    if len(pt) != D.ring.nvars:
        raise DimensionMismatchError("point length does not match the ring")
    coords = []
    for name in D.ring.names:
        val = Fraction(0)
        tp = Fraction(1)
        for term in D.taylor(name):
            val += term.evaluate(pt) * tp
            tp *= t
        coords.append(val)
    return Point(coords)


@dataclass
class LocalSlice:
    """s with D(s) nonzero and D(D(s)) = 0; ds caches the plinth element."""

    s: Polynomial
    ds: Polynomial


def local_slice(D: Derivation, s: Polynomial) -> LocalSlice:
    ds = D.apply(s)
    if ds.is_zero():
        raise NilpotencyError("D(s) = 0: not a local slice")
    if not D.apply(ds).is_zero():
        raise NilpotencyError("D(D(s)) != 0: not a local slice")
    return LocalSlice(s, ds)


def _exact_divide(f: Polynomial, g: Polynomial):
    """Quotient f/g when g divides f exactly, else None."""
    if f.is_zero():
        return f
    ring = f.ring
    order = ring.order
    lg, cg = g.lead_term(order)
    quo: dict = {}
    rem = f
    while not rem.is_zero():
        lm, lc = rem.lead_term(order)
        if not all(a <= b for a, b in zip(lg, lm)):
            return None
        qm = tuple(b - a for a, b in zip(lg, lm))
        qc = lc / cg
        quo[qm] = qc
        rem = rem - ring.poly({qm: qc}) * g
    return ring.poly(quo)


def slice_localize(D: Derivation, slc: LocalSlice, f: Polynomial):
    """Invariantize f through the slice: the Dixmier-style projection.

    Substituting t := -s/ds into exp(tD)f yields an invariant rational
    function g / ds^e; this returns (g, e) with common ds factors
    cancelled.  The numerator is always re-checked to lie in ker D.
    """
    D.require_nilpotent()
    param = D.ring.fresh("t")
    F = exp_action(D, f, param)
    ext = F.ring
    ti = ext.index(param)
    d = F.degree_in(param) if not F.is_zero() else 0
    d = max(d, 0)
    # collect coefficients of t^j, back in the base ring
    coeff: dict = {}
    for m, c in F.items():
        j = m[ti]
        base_mon = m[:ti] + m[ti + 1 :]
        bucket = coeff.setdefault(j, {})
        bucket[base_mon] = bucket.get(base_mon, Fraction(0)) + c
    ring = D.ring
    neg_s = -slc.s
    ds = slc.ds
    g = ring.zero()
    for j in range(d + 1):
        cj = ring.poly(coeff.get(j, {}))
        if cj.is_zero():
            continue
        g = g + cj * neg_s ** j * ds ** (d - j)
    e = d
    while e > 0:
        q = _exact_divide(g, ds)
        if q is None:
            break
        g = q
        e -= 1
    if not D.apply(g).is_zero():
        raise AssertionError("slice localization left the kernel")
    return g, e


@dataclass
class OrbitDecision:
    """Outcome of the slice-based orbit test for a pair of points.

    kind is 'same_orbit' (with the group time t), 'separated' (with an
    invariant witness and its two values), or 'undecided' when the slice
    derivative vanishes at one of the points.
    """

    kind: str
    t: Fraction | None = None
    witness: Polynomial | None = None
    values: tuple | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "t": None if self.t is None else str(self.t),
            "witness": None if self.witness is None else str(self.witness),
            "values": None if self.values is None else [str(v) for v in self.values],
            "reason": self.reason,
        }


def orbit_decide(D: Derivation, slc: LocalSlice, p, q) -> OrbitDecision:
    """Decide whether p and q share an orbit, inside the open set ds != 0.

    Both points are flowed onto the slice level set {s = 0}; equal
    canonical representatives give the unique connecting time, different
    ones give a separating invariant built by slice localization.
    """
    p = Point(p) if not isinstance(p, Point) else p
    q = Point(q) if not isinstance(q, Point) else q
    vp = slc.ds.evaluate(p)
    vq = slc.ds.evaluate(q)
    if vp == 0 or vq == 0:
        return OrbitDecision(
            kind="undecided",
            reason="ds vanishes at an input point; slice chart does not apply",
        )
    if vp != vq:
        return OrbitDecision(
            kind="separated",
            witness=slc.ds,
            values=(vp, vq),
            reason="the plinth invariant ds already separates",
        )
    tp = -slc.s.evaluate(p) / vp
    tq = -slc.s.evaluate(q) / vq
    rp = act_on_point(D, tp, p)
    rq = act_on_point(D, tq, q)
    if rp == rq:
        t = tp - tq
        if act_on_point(D, t, p) != q:
            raise AssertionError("orbit time failed re-verification")
        return OrbitDecision(kind="same_orbit", t=t, reason="equal slice representatives")
    k = next(i for i in range(len(rp)) if rp[i] != rq[i])
    g, e = slice_localize(D, slc, D.ring.var(D.ring.names[k]))
    gp = g.evaluate(p)
    gq = g.evaluate(q)
    if gp == gq:
        raise AssertionError("separating numerator failed to separate")
    return OrbitDecision(
        kind="separated",
        witness=g,
        values=(gp, gq),
        reason="slice representatives differ in coordinate %s" % D.ring.names[k],
    )


@dataclass
class OrbitMembership:
    """Exact answer to: does b lie on the orbit of a (over the closure)?"""

    in_orbit: bool
    t: Fraction | None
    gcd_text: str
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "in_orbit": self.in_orbit,
            "t": None if self.t is None else str(self.t),
            "gcd": self.gcd_text,
            "note": self.note,
        }


def _uni_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate rational coefficient lists (low to high)."""

    def norm(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a = norm(list(a))
    b = norm(list(b))
    while b:
        # remainder of a modulo b
        while len(a) >= len(b) and a:
            shift = len(a) - len(b)
            fac = a[-1] / b[-1]
            for i, bc in enumerate(b):
                a[i + shift] -= fac * bc
            norm(a)
        a, b = b, a
    a = norm(a)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _rational_roots(coeffs: list):
    """All rational roots of a rational coefficient list (low to high)."""
    import math as _math

    den = _math.lcm(*(c.denominator for c in coeffs))
    ic = [int(c * den) for c in coeffs]
    if ic and ic[0] == 0:
        yield Fraction(0)
        while ic and ic[0] == 0:
            ic.pop(0)
    if not ic or len(ic) == 1:
        return
    a0 = abs(ic[0])
    al = abs(ic[-1])

    def divisors(n):
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    seen = set()
    for p in divisors(a0):
        for q in divisors(al):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                seen.add(cand)
                val = Fraction(0)
                for c in reversed(ic):
                    val = val * cand + c
                if val == 0:
                    yield cand


def orbit_membership_exact(D: Derivation, a, b) -> OrbitMembership:
    """Decide b in exp(tD)a by the common roots of the coordinate system.

    Each coordinate of the flow of a is an exact univariate polynomial
    in t; b is on the orbit over the algebraic closure exactly when the
    gcd of (coordinate_k(t) - b_k) has positive degree (or all vanish,
    the fixed-point case).  A rational connecting time is reported when
    one exists.
    """
    a = Point(a) if not isinstance(a, Point) else a
    b = Point(b) if not isinstance(b, Point) else b
    n = D.ring.nvars
    if len(a) != n or len(b) != n:
        raise DimensionMismatchError("points do not match the ring")
    systems = []
    for i, name in enumerate(D.ring.names):
        coeffs = [term.evaluate(a) for term in D.taylor(name)]
        coeffs[0] -= b[i]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        systems.append(coeffs)
    nonzero = [c for c in systems if c]
    if not nonzero:
        return OrbitMembership(True, Fraction(0), "0", note="fixed point, b equals a")
    g = nonzero[0]
    for c in nonzero[1:]:
        g = _uni_gcd(g, c)
        if len(g) == 1:
            break
    gtext = _format_uni(g)
    if len(g) <= 1:
        return OrbitMembership(False, None, gtext, note="coordinate equations coprime")
    root = None
    for r in sorted(_rational_roots(g), key=lambda x: (abs(x), x < 0)):
        root = r
        break
    if root is not None:
        if act_on_point(D, root, a) != b:
            raise AssertionError("orbit membership root failed re-verification")
    note = "rational time found" if root is not None else "common root lies in an extension field"
    return OrbitMembership(True, root, gtext, note=note)


def _format_uni(coeffs: list) -> str:
    ring = Ring(["t"])
    return str(ring.poly({(i,): c for i, c in enumerate(coeffs)}))


# -- product rings and the graph of the action ------------------------------


@dataclass
class ProductSetup:
    """Two labeled copies of a base ring plus the group parameter.

    `product` holds both copies (left block first) under grevlex;
    `elim_ring` appends the parameter and carries the elimination order.
    """

    base: Ring
    left_names: tuple
    right_names: tuple
    param: str
    product: Ring
    elim_ring: Ring

    def left(self, f: Polynomial) -> Polynomial:
        return f.rename(self.product, dict(zip(self.base.names, self.left_names)))

    def right(self, f: Polynomial) -> Polynomial:
        return f.rename(self.product, dict(zip(self.base.names, self.right_names)))

    def delta(self, f: Polynomial) -> Polynomial:
        """left(f) - right(f): vanishes on the graph iff f is invariant."""
        return self.left(f) - self.right(f)

    def pair_point(self, p, q) -> Point:
        p = Point(p) if not isinstance(p, Point) else p
        q = Point(q) if not isinstance(q, Point) else q
        return Point(tuple(p) + tuple(q))


def product_setup(
    base: Ring,
    left_names: Sequence[str] | None = None,
    right_names: Sequence[str] | None = None,
    param: str | None = None,
) -> ProductSetup:
    left = tuple(left_names) if left_names is not None else tuple(nm + "1" for nm in base.names)
    right = tuple(right_names) if right_names is not None else tuple(nm + "2" for nm in base.names)
    if len(left) != base.nvars or len(right) != base.nvars:
        raise DimensionMismatchError("copy name lists must match the base ring")
    product = Ring(left + right)
    if param is None:
        param = "t"
        k = 0
        while param in left + right:
            param = "t%d" % k
            k += 1
    elif param in left + right:
        raise ValueError("parameter name collides with a copy name")
    names = left + right + (param,)
    elim = Ring(names)
    elim = Ring(names, elim.eliminating([param]))
    return ProductSetup(base, left, right, param, product, elim)


@dataclass
class GraphTimeout:
    """Graph-ideal elimination ran out of budget.

    `partial` lists parameter-free elements found so far, mapped to the
    product ring: genuine members of the graph ideal, usable for sound
    one-sided conclusions, but not known to generate.
    """

    completed = False

    partial: tuple
    stats: GBStats
    setup: ProductSetup


def graph_ideal(
    D: Derivation,
    setup: ProductSetup | None = None,
    budget: Budget | None = None,
    invariants: Sequence[Polynomial] = (),
):
    """Vanishing ideal of the closed graph of the action.

    Generates (right_i - exp(tD) applied to generator i, written in the
    left copy) and eliminates the parameter.  On success returns the
    elimination Ideal in the product ring with its grevlex basis cached;
    the delta of every supplied known invariant is re-checked to reduce
    to zero against it.
    """
    D.require_nilpotent()
    if setup is None:
        setup = product_setup(D.ring)
    elim = setup.elim_ring
    to_left = dict(zip(D.ring.names, setup.left_names))
    tvar = elim.var(setup.param)
    gens = []
    for i, name in enumerate(D.ring.names):
        flow = elim.zero()
        tpow = elim.one()
        for term in D.taylor(name):
            flow = flow + term.rename(elim, to_left) * tpow
            tpow = tpow * tvar
        gens.append(elim.var(setup.right_names[i]) - flow)
    res = buchberger(Ideal(elim, gens), budget=budget)
    if isinstance(res, GBTimeout):
        kept = tuple(
            p.rename(setup.product)
            for p in res.partial
            if setup.param not in p.support()
        )
        return GraphTimeout(kept, res.stats, setup)
    kept = [p.rename(setup.product) for p in res.polys if setup.param not in p.support()]
    out = Ideal(setup.product, kept)
    out.cache_basis(GroebnerBasis(setup.product, GrevLex(), kept, res.stats, out))
    gb = out.groebner()
    for f in invariants:
        if not gb.normal_form(setup.delta(f)).is_zero():
            raise AssertionError(
                "delta of a known invariant does not vanish on the graph ideal"
            )
    return out


# -- derivation file format --------------------------------------------------
#
# ring: x0,x1,x2
# D(x1) = x0          images; unlisted generators map to zero
# # comment


def dump_derivation(D: Derivation) -> str:
    lines = ["ring: %s" % ",".join(D.ring.names)]
    for name in D.ring.names:
        img = D.images.get(name)
        if img is not None:
            lines.append("D(%s) = %s" % (name, img))
    return "\n".join(lines) + "\n"


def parse_derivation_text(text: str) -> Derivation:
    ring = None
    images = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ring is None:
            if not line.startswith("ring:"):
                raise ParseError("expected 'ring:' header", line=lineno)
            names = [nm.strip() for nm in line[len("ring:"):].split(",")]
            names = [nm for nm in names if nm]
            if not names:
                raise ParseError("empty ring header", line=lineno)
            ring = Ring(names)
            continue
        if not line.startswith("D("):
            raise ParseError("expected 'D(var) = poly'", line=lineno)
        close = line.find(")")
        if close < 0 or "=" not in line[close:]:
            raise ParseError("expected 'D(var) = poly'", line=lineno)
        var = line[2:close].strip()
        rhs = line[close + 1 :].split("=", 1)[1].strip()
        try:
            ring.index(var)
            img = ring.parse(rhs)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
        except Exception as exc:
            raise ParseError(str(exc), line=lineno) from None
        if var in images:
            raise ParseError("duplicate image for %r" % var, line=lineno)
        images[var] = img
    if ring is None:
        raise ParseError("missing 'ring:' header")
    return Derivation(ring, images)


def load_derivation(path: str) -> Derivation:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_derivation_text(fh.read())


def save_derivation(D: Derivation, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_derivation(D))
