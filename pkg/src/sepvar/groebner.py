"""Groebner bases over Q with budgets, certificates, and elimination.

The engine is a Buchberger loop with Gebauer-Moeller redundant-pair
elimination and the normal selection strategy (the pair whose lcm is
smallest in the active order goes first).  Internally every polynomial
is denominator-cleared to a primitive integer form and reduction is
fraction-free pseudo-division; the finished basis is re-normalized to
the unique reduced monic Groebner basis, so the integer detour is
invisible from outside.

Budget exhaustion is a first-class result (`GBTimeout`), never an
exception and never a wrong basis: the partial elements returned are
genuine members of the ideal.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import config
from .errors import EmptyVarietyError, ParseError, RingMismatchError
from .poly import (
    GrevLex,
    Monomial,
    MonomialOrder,
    Polynomial,
    Ring,
    mon_div,
    mon_divides,
    mon_lcm,
    mon_mul,
)


class Budget:
    """Wall-clock and pair-count budget shared across staged computations."""

    def __init__(self, seconds: float | None = None, pairs: int | None = None):
        self.seconds = seconds
        self.pairs = pairs
        self._deadline = None if seconds is None else time.monotonic() + seconds
        self.pairs_used = 0

    def charge_pair(self) -> None:
        self.pairs_used += 1

    def exhausted(self) -> bool:
        if self._deadline is not None and time.monotonic() > self._deadline:
            return True
        if self.pairs is not None and self.pairs_used >= self.pairs:
            return True
        return False

    def remaining_seconds(self) -> float | None:
        if self._deadline is None:
            return None
        return max(0.0, self._deadline - time.monotonic())


@dataclass
class GBStats:
    pairs_generated: int = 0
    pairs_pruned: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    basis_size: int = 0
    max_degree: int = 0
    elapsed_seconds: float = 0.0

    def as_dict(self) -> dict:
        return {
            "pairs_generated": self.pairs_generated,
            "pairs_pruned": self.pairs_pruned,
            "pairs_reduced": self.pairs_reduced,
            "zero_reductions": self.zero_reductions,
            "basis_size": self.basis_size,
            "max_degree": self.max_degree,
            "elapsed_seconds": self.elapsed_seconds,
        }


class Ideal:
    """A finitely generated ideal; caches completed Groebner bases per order."""

    def __init__(self, ring: Ring, gens: Iterable[Polynomial]):
        clean = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if not g.is_zero():
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._gb_cache: dict = {}

    @classmethod
    def from_strings(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner(self, order: MonomialOrder | None = None, budget: Budget | None = None):
        order = order if order is not None else self.ring.order
        sig = order.signature()
        hit = self._gb_cache.get(sig)
        if hit is not None:
            return hit
        res = buchberger(self, order=order, budget=budget)
        if isinstance(res, GroebnerBasis):
            self._gb_cache[sig] = res
        return res

    def cache_basis(self, gb: "GroebnerBasis") -> None:
        self._gb_cache[gb.order.signature()] = gb

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and self.gens == other.gens

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)


class GroebnerBasis:
    """Reduced monic Groebner basis, elements sorted ascending in the order."""

    completed = True

    def __init__(
        self,
        ring: Ring,
        order: MonomialOrder,
        polys: Sequence[Polynomial],
        stats: GBStats,
        source: Ideal | None = None,
    ):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self.stats = stats
        self.source = source

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0] == 1

    def lead_monomials(self) -> tuple:
        return tuple(p.lead_monomial(self.order) for p in self.polys)

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Unique remainder of f modulo the basis (exact arithmetic)."""
        if f.ring != self.ring:
            raise RingMismatchError("polynomial outside the basis ring")
        if not self.polys or f.is_zero():
            return f
        key = self.order.key
        reducers = []
        for g in self.polys:
            lm = g.lead_monomial(self.order)
            mask = _support_mask(lm)
            tail = [(m, c) for m, c in g.items() if m != lm]
            reducers.append((lm, mask, sum(lm), tail))
        coeffs = dict(f.terms)
        heap = [(tuple(-x for x in key(m)), m) for m in coeffs]
        heapq.heapify(heap)
        out: dict = {}
        while heap:
            _, m = heapq.heappop(heap)
            c = coeffs.pop(m, None)
            if c is None:
                continue
            mdeg = sum(m)
            mmask = _support_mask(m)
            hit = None
            for lm, mask, deg, tail in reducers:
                if deg <= mdeg and not (mask & ~mmask) and mon_divides(lm, m):
                    hit = (lm, tail)
                    break
            if hit is None:
                out[m] = c
                continue
            lm, tail = hit
            q = mon_div(m, lm)
            for gm, gc in tail:
                mm = mon_mul(gm, q)
                prev = coeffs.get(mm)
                if prev is None:
                    coeffs[mm] = -c * gc
                    heapq.heappush(heap, (tuple(-x for x in key(mm)), mm))
                else:
                    nv = prev - c * gc
                    if nv:
                        coeffs[mm] = nv
                    else:
                        del coeffs[mm]
        return Polynomial(self.ring, out)

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def recheck_spolynomials(self) -> bool:
        """Reduce every S-polynomial of the basis to zero; full re-audit."""
        for i in range(len(self.polys)):
            for j in range(i + 1, len(self.polys)):
                s = spolynomial(self.polys[i], self.polys[j], self.order)
                if not self.normal_form(s).is_zero():
                    return False
        return True

    def __repr__(self):
        return "GroebnerBasis<%d elements, %s>" % (len(self.polys), self.order.name)


@dataclass
class GBTimeout:
    """Budget ran out.  `partial` holds true ideal members found so far."""

    completed = False

    ring: Ring
    order: MonomialOrder
    partial: tuple
    stats: GBStats
    reason: str = "budget exhausted"


def _support_mask(m: Monomial) -> int:
    mask = 0
    for i, e in enumerate(m):
        if e:
            mask |= 1 << i
    return mask


def _int_terms(p: Polynomial) -> dict:
    """Denominator-cleared, content-free integer term dict (sign untouched)."""
    if not p.terms:
        return {}
    den = math.lcm(*(c.denominator for c in p.terms.values()))
    terms = {m: int(c * den) for m, c in p.terms.items()}
    g = math.gcd(*(abs(v) for v in terms.values()))
    if g > 1:
        terms = {m: v // g for m, v in terms.items()}
    return terms


class _Entry:
    """Basis element in integer form with cached leading data."""

    __slots__ = ("terms", "lm", "lc", "lmkey", "mask", "deg", "tail")

    def __init__(self, terms: dict, keyf):
        lm = max(terms, key=keyf)
        if terms[lm] < 0:
            terms = {m: -v for m, v in terms.items()}
        self.terms = terms
        self.lm = lm
        self.lc = terms[lm]
        self.lmkey = keyf(lm)
        self.mask = _support_mask(lm)
        self.deg = sum(lm)
        self.tail = [(m, v) for m, v in terms.items() if m != lm]


def _strip_content(terms: dict) -> dict:
    if not terms:
        return terms
    g = math.gcd(*(abs(v) for v in terms.values()))
    if g > 1:
        return {m: v // g for m, v in terms.items()}
    return terms


class _BudgetUp(Exception):
    pass


def _nf_int(
    fterms: dict,
    entries: list,
    keyf,
    budget: Budget | None = None,
    exclude=None,
) -> dict:
    """Fraction-free full normal form; result is scaled by some positive int.

    The caller strips content afterwards, so the scaling is harmless.
    """
    coeffs = dict(fterms)
    heap = [(tuple(-x for x in keyf(m)), m) for m in coeffs]
    heapq.heapify(heap)
    out: dict = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = coeffs.pop(m, None)
        if c is None:
            continue
        steps += 1
        if budget is not None and steps % 512 == 0 and budget.exhausted():
            raise _BudgetUp()
        mdeg = sum(m)
        mmask = _support_mask(m)
        hit = None
        for e in entries:
            if e is exclude:
                continue
            if e.deg <= mdeg and not (e.mask & ~mmask) and mon_divides(e.lm, m):
                hit = e
                break
        if hit is None:
            out[m] = c
            continue
        a = hit.lc
        d = math.gcd(c, a)
        mult = a // d
        factor = c // d
        if mult != 1:
            for k in coeffs:
                coeffs[k] *= mult
            for k in out:
                out[k] *= mult
        q = mon_div(m, hit.lm)
        for gm, gc in hit.tail:
            mm = mon_mul(gm, q)
            prev = coeffs.get(mm)
            if prev is None:
                coeffs[mm] = -factor * gc
                heapq.heappush(heap, (tuple(-x for x in keyf(mm)), mm))
            else:
                nv = prev - factor * gc
                if nv:
                    coeffs[mm] = nv
                else:
                    del coeffs[mm]
    return out


def _spoly_int(e1: _Entry, e2: _Entry) -> dict:
    l = mon_lcm(e1.lm, e2.lm)
    u1 = mon_div(l, e1.lm)
    u2 = mon_div(l, e2.lm)
    d = math.gcd(e1.lc, e2.lc)
    c1 = e2.lc // d
    c2 = e1.lc // d
    acc: dict = {}
    for m, v in e1.terms.items():
        mm = mon_mul(m, u1)
        acc[mm] = acc.get(mm, 0) + c1 * v
    for m, v in e2.terms.items():
        mm = mon_mul(m, u2)
        nv = acc.get(mm, 0) - c2 * v
        if nv:
            acc[mm] = nv
        else:
            acc.pop(mm, None)
    return acc


def spolynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    """S-polynomial over Q; used by tests and the self-check audit."""
    order = order if order is not None else f.ring.order
    lf, cf = f.lead_term(order)
    lg, cg = g.lead_term(order)
    l = mon_lcm(lf, lg)
    mf = f.ring.monomial(mon_div(l, lf))
    mg = f.ring.monomial(mon_div(l, lg))
    return mf * f * (1 / cf) - mg * g * (1 / cg)


def buchberger(
    ideal: Ideal | Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: Budget | None = None,
):
    """Reduced Groebner basis, or GBTimeout when the budget runs out."""
    t0 = time.monotonic()
    if isinstance(ideal, Ideal):
        source = ideal
        gens = ideal.gens
        ring = ideal.ring
    else:
        gens = tuple(g for g in ideal if not g.is_zero())
        if not gens:
            raise ValueError("cannot infer the ring from an empty generator list")
        ring = gens[0].ring
        source = Ideal(ring, gens)
    order = order if order is not None else ring.order
    stats = GBStats()

    key_cache: dict = {}
    order_key = order.key

    def keyf(m):
        k = key_cache.get(m)
        if k is None:
            k = order_key(m)
            key_cache[m] = k
        return k

    work = [_int_terms(g) for g in gens if not g.is_zero()]
    work = [w for w in work if w]
    if not work:
        stats.elapsed_seconds = time.monotonic() - t0
        return GroebnerBasis(ring, order, (), stats, source)

    # deterministic input order: sort by leading key, then by full term list
    entries = [_Entry(w, keyf) for w in work]
    entries.sort(key=lambda e: (e.lmkey, sorted(e.terms.items())))

    G: list = []
    heap: list = []
    live: dict = {}

    def is_unit_entry(e: _Entry) -> bool:
        return e.deg == 0

    def update(new_idx: int) -> None:
        h = G[new_idx]
        lmh = h.lm
        cand = []
        for i in range(new_idx):
            l = mon_lcm(G[i].lm, lmh)
            coprime = mon_mul(G[i].lm, lmh) == l
            cand.append((keyf(l), i, l, coprime))
        cand.sort(key=lambda t: (t[0], t[1]))
        survivors = []
        for _, i, l, coprime in cand:
            if not coprime:
                if any(mon_divides(l2, l) for l2, _, _ in survivors):
                    stats.pairs_pruned += 1
                    continue
            survivors.append((l, i, coprime))
        # chain criterion against the old pair set
        for (i, j), l in list(live.items()):
            if mon_divides(lmh, l):
                if mon_lcm(G[i].lm, lmh) != l and mon_lcm(G[j].lm, lmh) != l:
                    del live[(i, j)]
                    stats.pairs_pruned += 1
        for l, i, coprime in survivors:
            if coprime:
                stats.pairs_pruned += 1
                continue
            live[(i, new_idx)] = l
            heapq.heappush(heap, (keyf(l), i, new_idx))
            stats.pairs_generated += 1

    def timeout() -> GBTimeout:
        stats.basis_size = len(G)
        stats.elapsed_seconds = time.monotonic() - t0
        partial = tuple(
            Polynomial(ring, {m: Fraction(v, e.lc) for m, v in e.terms.items()})
            for e in G
        )
        return GBTimeout(ring, order, partial, stats)

    unit = False
    for e in entries:
        if is_unit_entry(e):
            unit = True
            break
        G.append(e)
        update(len(G) - 1)

    try:
        while live and not unit:
            if budget is not None and budget.exhausted():
                return timeout()
            while heap:
                lk, i, j = heapq.heappop(heap)
                if (i, j) in live:
                    break
            else:
                break
            del live[(i, j)]
            if budget is not None:
                budget.charge_pair()
            stats.pairs_reduced += 1
            s = _spoly_int(G[i], G[j])
            if not s:
                stats.zero_reductions += 1
                continue
            r = _nf_int(s, G, keyf, budget=budget)
            if not r:
                stats.zero_reductions += 1
                continue
            r = _strip_content(r)
            e = _Entry(r, keyf)
            if is_unit_entry(e):
                unit = True
                break
            if e.deg > stats.max_degree:
                stats.max_degree = e.deg
            G.append(e)
            update(len(G) - 1)
    except _BudgetUp:
        return timeout()

    if unit:
        stats.basis_size = 1
        stats.elapsed_seconds = time.monotonic() - t0
        return GroebnerBasis(ring, order, (ring.one(),), stats, source)

    # minimalize: drop entries whose leading monomial another one divides
    minimal: list = []
    for e in sorted(G, key=lambda e: e.lmkey):
        if any(mon_divides(k.lm, e.lm) for k in minimal):
            continue
        minimal.append(e)

    # tail-reduce to the unique reduced basis, then normalize monic over Q
    final = []
    try:
        for e in minimal:
            r = _nf_int(e.terms, minimal, keyf, budget=budget, exclude=e)
            r = _strip_content(r)
            final.append(_Entry(r, keyf))
    except _BudgetUp:
        return timeout()

    polys = [
        Polynomial(ring, {m: Fraction(v, e.lc) for m, v in e.terms.items()})
        for e in final
    ]
    polys.sort(key=lambda p: keyf(p.lead_monomial(order)))
    stats.basis_size = len(polys)
    stats.elapsed_seconds = time.monotonic() - t0
    gb = GroebnerBasis(ring, order, polys, stats, source)
    if config.self_checks_enabled():
        assert gb.recheck_spolynomials(), "S-polynomial audit failed"
    return gb


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def radical_member(f: Polynomial, ideal: Ideal, budget: Budget | None = None):
    """Exact radical membership via the extension trick.

    f lies in the radical of I exactly when 1 lies in I + (1 - z*f) for a
    fresh variable z.  Returns a bool, or GBTimeout.
    """
    ring = ideal.ring
    if f.ring != ring:
        raise RingMismatchError("polynomial outside the ideal's ring")
    if f.is_zero():
        return True
    zname = ring.fresh("z")
    ext = ring.extend([zname])
    lifted = [g.rename(ext) for g in ideal.gens]
    lifted.append(ext.one() - ext.var(zname) * f.rename(ext))
    res = buchberger(Ideal(ext, lifted), order=GrevLex(), budget=budget)
    if isinstance(res, GBTimeout):
        return res
    return res.is_unit()


@dataclass
class ContainmentCertificate:
    """Outcome of a variety containment check V(I) <= V(J).

    One record per generator of J: how membership of that generator in
    the radical of I was decided.  `offending` is the first generator
    that fails, if any.
    """

    holds: bool
    offending: Polynomial | None
    records: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "offending": None if self.offending is None else str(self.offending),
            "records": list(self.records),
        }


def _is_linear_basis(gb: GroebnerBasis) -> bool:
    return all(p.degree() <= 1 for p in gb.polys)


def variety_contained(small: Ideal, big: Ideal, budget: Budget | None = None):
    """Decide V(small) <= V(big) over the algebraic closure.

    Equivalent to: every generator of `big` lies in the radical of
    `small`.  Membership in the ideal itself (normal form zero) is
    checked first; for non-members the Rabinowitsch test settles radical
    membership, except that a basis of pure linear forms is prime, so a
    nonzero normal form is already a complete refusal there.
    """
    if small.ring != big.ring:
        raise RingMismatchError("ideals live in different rings")
    gb = small.groebner(GrevLex(), budget)
    if isinstance(gb, GBTimeout):
        return gb
    linear = _is_linear_basis(gb)
    records = []
    offending = None
    holds = True
    for g in big.gens:
        nf = gb.normal_form(g)
        if nf.is_zero():
            records.append({"generator": str(g), "method": "normal_form", "member": True})
            continue
        if linear:
            records.append(
                {
                    "generator": str(g),
                    "method": "normal_form_linear_prime",
                    "member": False,
                    "remainder": str(nf),
                }
            )
            if holds:
                offending = g
            holds = False
            continue
        rm = radical_member(g, small, budget)
        if isinstance(rm, GBTimeout):
            return rm
        records.append({"generator": str(g), "method": "rabinowitsch", "member": bool(rm)})
        if not rm:
            if holds:
                offending = g
            holds = False
    return ContainmentCertificate(holds, offending, records)


def eliminate(ideal: Ideal, names: Sequence[str], budget: Budget | None = None):
    """Intersect the ideal with the subring omitting `names`.

    Runs Buchberger under a block order with `names` outermost; the
    outer-free basis elements are a reduced Groebner basis of the
    elimination ideal under grevlex on the remaining variables, and the
    returned Ideal carries that basis pre-cached.
    """
    ring = ideal.ring
    if not names:
        gb = ideal.groebner(GrevLex(), budget)
        if isinstance(gb, GBTimeout):
            return gb
        out = Ideal(ring, gb.polys)
        out.cache_basis(GroebnerBasis(ring, GrevLex(), gb.polys, gb.stats, out))
        return out
    block = ring.eliminating(names)
    res = buchberger(ideal, order=block, budget=budget)
    if isinstance(res, GBTimeout):
        return res
    drop = set(names)
    sub = ring.without(names)
    kept = [p.rename(sub) for p in res.polys if not (p.support() & drop)]
    out = Ideal(sub, kept)
    out.cache_basis(GroebnerBasis(sub, GrevLex(), kept, res.stats, out))
    return out


@dataclass
class DimensionResult:
    dim: int
    independent: tuple
    gb: GroebnerBasis

    def as_dict(self) -> dict:
        return {"dim": self.dim, "independent_set": list(self.independent)}


def krull_dimension(ideal: Ideal, budget: Budget | None = None):
    """Krull dimension of V(ideal) plus a maximal independent variable set.

    Uses a degree-compatible basis: a variable subset is independent when
    no leading monomial is supported entirely inside it; the dimension is
    the size of the largest independent subset.  Exhaustive search, meant
    for modest variable counts.
    """
    gb = ideal.groebner(GrevLex(), budget)
    if isinstance(gb, GBTimeout):
        return gb
    if gb.is_unit():
        raise EmptyVarietyError("unit ideal: empty variety has no dimension")
    n = ideal.ring.nvars
    masks = sorted({_support_mask(lm) for lm in gb.lead_monomials()})
    for size in range(n, -1, -1):
        for combo in combinations(range(n), size):
            smask = 0
            for p in combo:
                smask |= 1 << p
            if all(mu & ~smask for mu in masks):
                names = tuple(ideal.ring.names[p] for p in combo)
                return DimensionResult(size, names, gb)
    raise AssertionError("unreachable: empty set is always independent")


def dimension(ideal: Ideal, budget: Budget | None = None):
    """Krull dimension as a plain int (or GBTimeout)."""
    res = krull_dimension(ideal, budget)
    if isinstance(res, GBTimeout):
        return res
    return res.dim


# -- ideal file format ---------------------------------------------------
#
# ring: x0,x1,t        header, required first
# x0^2 - t             one generator per line
# # comment            comments and blank lines allowed anywhere


def dump_ideal(ideal: Ideal) -> str:
    lines = ["ring: %s" % ",".join(ideal.ring.names)]
    lines.extend(str(g) for g in ideal.gens)
    return "\n".join(lines) + "\n"


def parse_ideal_text(text: str) -> Ideal:
    ring = None
    gens = []
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
            try:
                ring = Ring(names)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
            continue
        try:
            gens.append(ring.parse(line))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if ring is None:
        raise ParseError("missing 'ring:' header")
    return Ideal(ring, gens)


def load_ideal(path: str) -> Ideal:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_ideal_text(fh.read())


def save_ideal(ideal: Ideal, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_ideal(ideal))
