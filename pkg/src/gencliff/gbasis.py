"""Bounded-degree noncommutative Groebner bases in the free algebra.

Words are tuples of letter indices ordered deglex (length first, then
lexicographic with letter 0 smallest); this order is multiplicative.
Polynomials are handled internally as ``{word: raw coefficient}`` dicts and
converted to :class:`NcPoly` only at the API boundary.

Completion follows the usual overlap (Bergman/Mora) scheme, processing
ambiguities by increasing degree and stopping at a degree bound.  A state is
only marked ``complete`` when every overlap of the final basis, of any degree,
has been resolved; otherwise non-membership is never claimed.
"""

from __future__ import annotations

import heapq
import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coeffs import INTEGERS, QQ
from .errors import BoundExceeded, BoundTooSmall, ContextMismatch, NotAField, TooLarge
from .freealg import NcPoly, PolyContext, format_word, word_key
from .linalg import count_walks, in_row_span

MEMBER = "member"
CERTIFIED_NON_MEMBER = "certified-non-member"
NOT_DETECTED = "not-detected-up-to"

DEFAULT_BOUND = 6
ORACLE_CAP = 200_000


def word_less(u, v) -> bool:
    return word_key(u) < word_key(v)


def _heap_key(w):
    # heapq is a min-heap; this key pops the deglex-largest word first
    return (-len(w), tuple(-i for i in w))


def _contains(big, small) -> bool:
    n, k = len(big), len(small)
    return any(big[i:i + k] == small for i in range(n - k + 1))


def lead_word(poly):
    return max(poly, key=word_key)


class _Rewriter:
    """Leading-word index over a set of monic polynomials."""

    def __init__(self, ring, polys=()):
        self.ring = ring
        self.rules = {}
        self.lengths = []
        for p in polys:
            self.add(p)

    def add(self, poly):
        lm = lead_word(poly)
        self.rules[lm] = poly
        if len(lm) not in self.lengths:
            self.lengths.append(len(lm))
            self.lengths.sort()

    def find(self, w):
        """Leftmost occurrence of a leading word in ``w``; longest at a tie."""
        rules = self.rules
        n = len(w)
        for start in range(n + 1):
            for length in reversed(self.lengths):
                if start + length <= n and w[start:start + length] in rules:
                    return start, w[start:start + length]
        return None

    def occurrences(self, w):
        rules = self.rules
        n = len(w)
        return [
            (start, w[start:start + length])
            for start in range(n + 1)
            for length in self.lengths
            if start + length <= n and w[start:start + length] in rules
        ]

    def reduce(self, poly):
        """Full reduction: largest reducible term first, leftmost occurrence."""
        ring = self.ring
        sub, mul = ring.sub, ring.mul
        work = {w: c for w, c in poly.items() if c != 0}
        heap = [(_heap_key(w), w) for w in work]
        heapq.heapify(heap)
        result = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            hit = self.find(w)
            if hit is None:
                result[w] = c
                continue
            start, lm = hit
            left, right = w[:start], w[start + len(lm):]
            for gw, gc in self.rules[lm].items():
                if gw == lm:
                    continue
                nw = left + gw + right
                prev = work.get(nw)
                if prev is None:
                    work[nw] = ring.neg(mul(c, gc))
                    heapq.heappush(heap, (_heap_key(nw), nw))
                else:
                    nv = sub(prev, mul(c, gc))
                    if nv == 0:
                        del work[nw]
                    else:
                        work[nw] = nv
        return result

    def reduce_random(self, poly, rng):
        """Reduction with randomly chosen redexes (for confluence checks)."""
        ring = self.ring
        work = {w: c for w, c in poly.items() if c != 0}
        while True:
            redexes = [(w, occ) for w in work for occ in self.occurrences(w)]
            if not redexes:
                return work
            w, (start, lm) = redexes[rng.randrange(len(redexes))]
            c = work[w]
            left, right = w[:start], w[start + len(lm):]
            for gw, gc in self.rules[lm].items():
                nw = left + gw + right
                nv = ring.sub(work.get(nw, ring.zero()), ring.mul(c, gc))
                if nv == 0:
                    work.pop(nw, None)
                else:
                    work[nw] = nv


def _monic(poly, ring):
    inv = ring.inv(poly[lead_word(poly)])
    return {w: ring.mul(c, inv) for w, c in poly.items()}


def interreduce(polys, ring):
    """Reduced monic system generating the same ideal, sorted by leading word."""
    todo = [_monic(p, ring) for p in polys if p]
    rw = _Rewriter(ring)
    while todo:
        todo.sort(key=lambda p: word_key(lead_word(p)), reverse=True)
        p = todo.pop()
        r = rw.reduce(p)
        if not r:
            continue
        r = _monic(r, ring)
        lm = lead_word(r)
        for other in [q for q in rw.rules if _contains(q, lm)]:
            todo.append(rw.rules.pop(other))
        rw.rules[lm] = r
        rw.lengths = sorted({len(q) for q in rw.rules})
    out = []
    for lm in sorted(rw.rules, key=word_key):
        p = rw.rules[lm]
        tail = {w: c for w, c in p.items() if w != lm}
        tail = rw.reduce(tail)
        tail[lm] = p[lm]
        out.append(tail)
    return out


def overlaps(lm_i, lm_j):
    """Proper overlaps: k letters of suffix(lm_i) equal prefix(lm_j)."""
    for k in range(1, min(len(lm_i), len(lm_j))):
        if lm_i[-k:] == lm_j[:k]:
            yield k


def _spoly(gi, lm_i, gj, lm_j, k, ring):
    # gi * lm_j[k:] - lm_i[:-k] * gj ; the overlap word cancels
    right = lm_j[k:]
    left = lm_i[:-k]
    out = {}
    for w, c in gi.items():
        out[w + right] = c
    for w, c in gj.items():
        nw = left + w
        nv = ring.sub(out.get(nw, ring.zero()), c)
        if nv == 0:
            out.pop(nw, None)
        else:
            out[nw] = nv
    return out


def _frozen(poly):
    return tuple(sorted(poly.items()))


@dataclass
class GBState:
    ring: object
    ctx: PolyContext
    basis: tuple
    bound: int
    complete: bool
    _rw: _Rewriter = field(repr=False, default=None)

    @property
    def alphabet(self):
        return self.ctx.a

    @property
    def leads(self):
        return [lead_word(p.words()) for p in self.basis]

    def export(self) -> str:
        names = self.ctx.a.names
        lines = [
            f"lead: {format_word(lead_word(p.words()), names)} rel: {p}" for p in self.basis
        ]
        lines.append(f"bound: {self.bound}")
        lines.append(f"complete: {'true' if self.complete else 'false'}")
        return "\n".join(lines) + "\n"


def _as_field_polys(relations):
    relations = list(relations)
    if not relations:
        raise ValueError("need at least one relation to fix the context")
    ctx = relations[0].ctx
    for r in relations:
        if r.ctx != ctx:
            raise ContextMismatch("relations live in different contexts")
        if not r.is_x_free():
            raise ContextMismatch("relations must not involve x variables")
    ctx = ctx.a_only()
    ring = ctx.ring
    if ring.kind == INTEGERS:
        warnings.warn("ZZ coefficients lifted to QQ for completion", stacklevel=3)
        ring = QQ
        ctx = PolyContext(QQ, ctx.a)
    polys = [{w: ring.convert(c) for w, c in r.words().items()} for r in relations]
    return ctx, ring, polys


def buchberger_bounded(relations, bound: int = DEFAULT_BOUND, *, lift: bool = True,
                       context: PolyContext | None = None) -> GBState:
    """Complete ``relations`` through overlaps of degree <= ``bound``.

    ``context`` fixes the alphabet when ``relations`` is empty.
    """
    relations = list(relations)
    if not relations:
        if context is None:
            raise ValueError("empty relation list needs an explicit context")
        ctx = context.a_only()
        return GBState(ctx.ring if ctx.ring.is_field else QQ, ctx, (), bound, True,
                       _Rewriter(ctx.ring))
    if not lift and not relations[0].ring.is_field:
        raise NotAField(f"completion over {relations[0].ring} requires lifting to QQ")
    ctx, ring, polys = _as_field_polys(relations)
    top = max((max((len(w) for w in p), default=0) for p in polys), default=0)
    if bound < top:
        raise BoundTooSmall(f"bound {bound} below input degree {top}")

    basis = interreduce(polys, ring)
    processed = set()
    complete = True
    while True:
        if any(lead_word(p) == () for p in basis):
            basis = [{(): ring.one()}]
            break
        frozen = [_frozen(p) for p in basis]
        leads = [lead_word(p) for p in basis]
        pending = []
        for i, j in itertools.product(range(len(basis)), repeat=2):
            for k in overlaps(leads[i], leads[j]):
                key = (frozen[i], frozen[j], k)
                if key not in processed:
                    deg = len(leads[i]) + len(leads[j]) - k
                    pending.append((deg, i, j, k, key))
        if not pending:
            # certification pass against the final system
            rw = _Rewriter(ring, basis)
            extra = []
            for i, j in itertools.product(range(len(basis)), repeat=2):
                for k in overlaps(leads[i], leads[j]):
                    r = rw.reduce(_spoly(basis[i], leads[i], basis[j], leads[j], k, ring))
                    if r:
                        extra.append(r)
            if not extra:
                break
            basis = interreduce(basis + extra, ring)
            continue
        low = min(item[0] for item in pending)
        if low > bound:
            # overlaps past the bound are only reduced, never added; if they
            # all resolve the system is confluent regardless of their degree
            rw = _Rewriter(ring, basis)
            complete = not any(
                rw.reduce(_spoly(basis[i], leads[i], basis[j], leads[j], k, ring))
                for _, i, j, k, _ in pending)
            break
        rw = _Rewriter(ring, basis)
        new = []
        for deg, i, j, k, key in sorted(pending, key=lambda t: (t[0], t[1], t[2], t[3])):
            if deg != low:
                continue
            processed.add(key)
            r = rw.reduce(_spoly(basis[i], leads[i], basis[j], leads[j], k, ring))
            if r:
                r = _monic(r, ring)
                new.append(r)
                rw.add(r)
        if new:
            basis = interreduce(basis + new, ring)

    rw = _Rewriter(ring, basis)
    out = tuple(ctx.from_words(p) for p in basis)
    return GBState(ring, ctx, out, bound, complete, rw)


def _check_poly(p: NcPoly, gb: GBState):
    if not p.is_x_free():
        raise ContextMismatch("polynomial involves x variables")
    if p.ctx.a != gb.ctx.a:
        raise ContextMismatch("polynomial and basis use different alphabets")
    ring = gb.ring
    if p.ring != ring:
        if p.ring.kind == INTEGERS and ring == QQ:
            return {w: ring.convert(c) for w, c in p.words().items()}
        raise ContextMismatch(f"polynomial over {p.ring}, basis over {ring}")
    return p.words()


def normal_form(p: NcPoly, gb: GBState, rng=None) -> NcPoly:
    words = _check_poly(p, gb)
    if rng is None:
        nf = gb._rw.reduce(words)
    else:
        nf = gb._rw.reduce_random(words, rng)
    return gb.ctx.from_words(nf)


@dataclass(frozen=True)
class MembershipVerdict:
    tag: str
    bound: int | None = None

    def __str__(self):
        if self.tag == NOT_DETECTED:
            return f"{NOT_DETECTED} {self.bound}"
        return self.tag

    @property
    def is_member(self) -> bool:
        return self.tag == MEMBER


def is_member(p: NcPoly, gb: GBState) -> MembershipVerdict:
    if normal_form(p, gb).is_zero():
        return MembershipVerdict(MEMBER)
    if gb.complete:
        return MembershipVerdict(CERTIFIED_NON_MEMBER)
    return MembershipVerdict(NOT_DETECTED, gb.bound)


# quotient dimensions --------------------------------------------------------


def _automaton(leads, nletters):
    """Aho-Corasick automaton of the leading words; -1 marks a forbidden step."""
    goto = [{}]
    terminal = [False]
    for w in leads:
        s = 0
        for letter in w:
            if letter not in goto[s]:
                goto.append({})
                terminal.append(False)
                goto[s][letter] = len(goto) - 1
            s = goto[s][letter]
        terminal[s] = True
    fail = [0] * len(goto)
    delta = np.full((len(goto), nletters), -1, dtype=np.int64)
    order = []
    for letter in range(nletters):
        t = goto[0].get(letter)
        delta[0, letter] = t if t is not None else 0
        if t is not None:
            order.append(t)
    head = 0
    while head < len(order):
        s = order[head]
        head += 1
        terminal[s] = terminal[s] or terminal[fail[s]]
        for letter in range(nletters):
            t = goto[s].get(letter)
            if t is None:
                delta[s, letter] = delta[fail[s], letter]
            else:
                fail[t] = delta[fail[s], letter]
                delta[s, letter] = t
                order.append(t)
    dead = np.array(terminal)
    out = delta.copy()
    out[dead[delta]] = -1
    return out


@dataclass(frozen=True)
class QuotientCounts:
    counts: tuple
    exact: bool

    @property
    def total(self) -> int:
        return sum(self.counts)

    def cumulative(self):
        return list(itertools.accumulate(self.counts))


def quotient_dimension(gb: GBState, D: int) -> QuotientCounts:
    """Normal-word counts in degrees 0..D (exact iff the basis is complete)."""
    if D > gb.bound and not gb.complete:
        raise BoundExceeded(f"degree {D} exceeds completion bound {gb.bound}")
    leads = gb.leads
    if () in leads:
        return QuotientCounts(tuple([0] * (D + 1)), gb.complete)
    delta = _automaton(leads, len(gb.ctx.a))
    counts = count_walks(delta, D)
    return QuotientCounts(tuple(counts), gb.complete)


def normal_words(gb: GBState, D: int):
    """All normal words of length <= D in deglex order."""
    leads = set(gb.leads)
    if () in leads:
        return []
    maxlen = max((len(w) for w in leads), default=0)
    out = [()]
    layer = [()]
    n = len(gb.ctx.a)
    for _ in range(D):
        nxt = []
        for w in layer:
            for letter in range(n):
                nw = w + (letter,)
                if not any(nw[-k:] in leads for k in range(1, min(maxlen, len(nw)) + 1)):
                    nxt.append(nw)
        out.extend(nxt)
        layer = nxt
    return out


# independent linear-algebra oracle ----------------------------------------


def words_up_to(n: int, D: int):
    for length in range(D + 1):
        yield from itertools.product(range(n), repeat=length)


def span_membership_oracle(p: NcPoly, relations, D: int, cap: int = ORACLE_CAP) -> bool:
    """Is ``p`` a combination of ``u*g*v`` with every product of degree <= D?

    Pure linear algebra on the degree-<=D part of the free algebra; shares no
    code with the rewriting engine.
    """
    relations = list(relations)
    ctx = p.ctx
    for r in relations:
        if r.ctx != ctx:
            raise ContextMismatch("relations and polynomial use different contexts")
    ring = ctx.ring
    if not ring.is_field:
        ring = QQ
    n = len(ctx.a)
    dim = sum(n**k for k in range(D + 1))
    if dim > cap:
        raise TooLarge(f"word space of dimension {dim} exceeds cap {cap}")
    if p.degree() > D:
        return False
    index = {w: i for i, w in enumerate(words_up_to(n, D))}
    rows = []
    for r in relations:
        words = {w: ring.convert(c) for w, c in r.words().items()}
        if not words:
            continue
        deg = max(len(w) for w in words)
        for total in range(D - deg + 1):
            for split in range(total + 1):
                for left in itertools.product(range(n), repeat=split):
                    for right in itertools.product(range(n), repeat=total - split):
                        rows.append({index[left + w + right]: c for w, c in words.items()})
    target = {index[w]: ring.convert(c) for w, c in p.words().items()}
    return in_row_span(rows, target, dim, ring)
