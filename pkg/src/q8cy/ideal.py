"""Groebner bases over exact fields, with the certificates built on them:
ideal membership, projective emptiness over the algebraic closure, and the
Hilbert staircase.

Monomials are packed into single integers so that integer comparison is
exactly grevlex comparison: bits [64:80] hold the total degree and byte v
holds 127 - e_v (the complement makes "later variable smaller" reverse-lex
work out). Multiplication is then integer addition up to a constant, and
divisibility is one masked subtraction.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field as dc_field

from .errors import BudgetExceeded, DegreeOverflow, MixedFields
from .poly import COORDS, NVARS, Poly, mono_divides

log = logging.getLogger(__name__)

_DEG_SHIFT = 8 * NVARS
_COMP_MASK = (1 << _DEG_SHIFT) - 1
_ZERO_PACKED = sum(127 << (8 * v) for v in range(NVARS))
_GUARDS = sum(0x80 << (8 * v) for v in range(NVARS))
_MAX_DEG = 64


def pack_mono(m):
    acc = sum(m) << _DEG_SHIFT
    for v in range(NVARS):
        acc |= (127 - m[v]) << (8 * v)
    return acc


def unpack_mono(pm):
    return tuple(127 - ((pm >> (8 * v)) & 0xFF) for v in range(NVARS))


def pdeg(pm):
    return pm >> _DEG_SHIFT


def pmul(a, b):
    if (a >> _DEG_SHIFT) + (b >> _DEG_SHIFT) > _MAX_DEG:
        raise DegreeOverflow("monomial degree above cap in Groebner kernel")
    return a + b - _ZERO_PACKED


def pdivides(a, b):
    """True if monomial a divides monomial b."""
    return (((a & _COMP_MASK) | _GUARDS) - (b & _COMP_MASK)) & _GUARDS == _GUARDS


def plcm(a, b):
    ea = unpack_mono(a)
    eb = unpack_mono(b)
    return pack_mono(tuple(max(x, y) for x, y in zip(ea, eb)))


_PACKED_ZERO_MONO = pack_mono((0,) * NVARS)


@dataclass
class GBLimits:
    max_pair_reductions: int = 200_000
    max_term_ops: int = 5_000_000


@dataclass
class _Budget:
    limits: GBLimits
    pairs: int = 0
    term_ops: int = 0

    def charge_pair(self):
        self.pairs += 1
        if self.pairs > self.limits.max_pair_reductions:
            raise BudgetExceeded(
                f"pair budget {self.limits.max_pair_reductions} exhausted",
                pairs_done=self.pairs, terms_held=self.term_ops)

    def charge_terms(self, n):
        self.term_ops += n
        if self.term_ops > self.limits.max_term_ops:
            raise BudgetExceeded(
                f"term budget {self.limits.max_term_ops} exhausted",
                pairs_done=self.pairs, terms_held=self.term_ops)


def _to_kernel(f: Poly):
    return {pack_mono(m): c for m, c in f.terms.items()}


def _from_kernel(d, fld):
    return Poly(fld, {unpack_mono(pm): c for pm, c in d.items()}, _clean=True)


def _make_monic(d, fld):
    lead = d[max(d)]
    if lead == fld.one:
        return d
    inv = fld.inv(lead)
    return {m: fld.mul(inv, c) for m, c in d.items()}


def _reduce_full(f, basis, fld, budget=None):
    """Full normal form of kernel poly f against [(lm, terms), ...]."""
    f = dict(f)
    zero = fld.zero
    remainder = {}
    while f:
        lm = max(f)
        c = f[lm]
        for glm, g in basis:
            if pdivides(glm, lm):
                off = lm - glm
                if budget is not None:
                    budget.charge_terms(len(g))
                for gm, gc in g.items():
                    nm = gm + off
                    acc = fld.sub(f.get(nm, zero), fld.mul(c, gc))
                    if acc == zero:
                        f.pop(nm, None)
                    else:
                        f[nm] = acc
                break
        else:
            remainder[lm] = c
            del f[lm]
    return remainder


def _reduce_head(f, basis, fld, budget):
    """Reduce f until its head is irreducible (weak normal form)."""
    zero = fld.zero
    while f:
        lm = max(f)
        c = f[lm]
        for glm, g in basis:
            if pdivides(glm, lm):
                off = lm - glm
                budget.charge_terms(len(g))
                for gm, gc in g.items():
                    nm = gm + off
                    acc = fld.sub(f.get(nm, zero), fld.mul(c, gc))
                    if acc == zero:
                        f.pop(nm, None)
                    else:
                        f[nm] = acc
                break
        else:
            return f
    return f


def _spoly(d1, d2, fld):
    """S-polynomial of two monic kernel polynomials."""
    lm1 = max(d1)
    lm2 = max(d2)
    lcm = plcm(lm1, lm2)
    off1 = lcm - lm1
    off2 = lcm - lm2
    zero = fld.zero
    out = {}
    for m, c in d1.items():
        out[m + off1] = c
    for m, c in d2.items():
        nm = m + off2
        acc = fld.sub(out.get(nm, zero), c)
        if acc == zero:
            out.pop(nm, None)
        else:
            out[nm] = acc
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced, monic Groebner basis under grevlex."""

    field: object
    generators: tuple
    order: str = "grevlex"
    stats: dict = dc_field(default_factory=dict, compare=False)

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.generators]

    def _kernel(self):
        pairs = [(pack_mono(g.leading_monomial()), _to_kernel(g))
                 for g in self.generators]
        pairs.sort(key=lambda t: t[0])
        return pairs

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self).is_zero()


def buchberger(gens, limits: GBLimits | None = None) -> GroebnerBasis:
    """Reduced grevlex Groebner basis of the ideal generated by gens.

    Buchberger with the Gebauer-Moeller product and chain criteria and
    normal (minimal lcm) pair selection. Raises BudgetExceeded when the
    configured pair/term budgets run out.
    """
    gens = [g for g in gens if isinstance(g, Poly)]
    if not gens:
        raise ValueError("buchberger requires at least one generator")
    fld = gens[0].field
    for g in gens[1:]:
        if g.field != fld:
            raise MixedFields("generators over different fields")
    if fld.characteristic() == 0:
        log.info("Groebner basis over %s: coefficient growth may be slow",
                 fld.name())
    budget = _Budget(limits or GBLimits())

    work = [_to_kernel(g) for g in gens if not g.is_zero()]
    if not work:
        raise ValueError("all generators are zero")

    # Interreduce the input so every generator has a distinct head.
    work = _interreduce(work, fld, budget)

    f = list(work)                       # all polynomials ever created
    lms = [max(d) for d in f]
    G: set[int] = set()                  # indices of current basis
    B: set[tuple[int, int]] = set()      # surviving critical pairs
    heap: list = []                      # (lcm, i, j) with lazy invalidation

    def update(ih):
        # Gebauer-Moeller: filter new pairs against each other and prune
        # old pairs; see the standard GROEBNERNEWS2 presentation.
        nonlocal G, B
        mh = lms[ih]
        C = set(G)
        D = set()
        while C:
            ig = C.pop()
            mg = lms[ig]
            lcm_hg = plcm(mh, mg)
            if pmul(mh, mg) == lcm_hg:
                disjoint = True
            else:
                disjoint = False

            def lcm_divides(ip):
                return pdivides(plcm(mh, lms[ip]), lcm_hg)

            if disjoint or (not any(lcm_divides(ix) for ix in C)
                            and not any(lcm_divides(pr[1]) for pr in D)):
                D.add((ih, ig))
        E = set()
        while D:
            ih2, ig = D.pop()
            mg = lms[ig]
            if pmul(mh, mg) != plcm(mh, mg):
                E.add((ih2, ig))
        B_new = set()
        while B:
            ig1, ig2 = B.pop()
            l12 = plcm(lms[ig1], lms[ig2])
            if (not pdivides(mh, l12)
                    or plcm(lms[ig1], mh) == l12
                    or plcm(lms[ig2], mh) == l12):
                B_new.add((ig1, ig2))
        for pair in E:
            B_new.add(pair)
            heapq.heappush(heap, (plcm(lms[pair[0]], lms[pair[1]]),
                                  pair[0], pair[1]))
        B = B_new
        G = {ig for ig in G if not pdivides(mh, lms[ig])}
        G.add(ih)

    order_in = sorted(range(len(f)), key=lambda i: lms[i])
    for ih in order_in:
        update(ih)
    for (i, j) in B:
        heapq.heappush(heap, (plcm(lms[i], lms[j]), i, j))

    while B:
        if not heap:
            for (i, j) in B:
                heapq.heappush(heap, (plcm(lms[i], lms[j]), i, j))
        while True:
            lcm, i, j = heapq.heappop(heap)
            if (i, j) in B and plcm(lms[i], lms[j]) == lcm:
                break
        B.discard((i, j))
        budget.charge_pair()
        s = _spoly(f[i], f[j], fld)
        basis_sorted = [(lms[ig], f[ig]) for ig in sorted(G, key=lambda x: lms[x])]
        h = _reduce_head(s, basis_sorted, fld, budget)
        if h:
            h = _make_monic(h, fld)
            f.append(h)
            lms.append(max(h))
            update(len(f) - 1)

    final = [f[ig] for ig in G]
    final = _interreduce(final, fld, budget, make_reduced=True)
    final.sort(key=max, reverse=True)
    polys = tuple(_from_kernel(d, fld).monic() for d in final)
    return GroebnerBasis(field=fld, generators=polys,
                         stats={"pair_reductions": budget.pairs,
                                "term_ops": budget.term_ops,
                                "basis_size": len(polys)})


def _interreduce(polys, fld, budget, make_reduced=False):
    """Reduce each polynomial fully against the others until stable.

    Each polynomial is reduced against the already-processed outputs plus the
    unprocessed tail, never against its own stale copy, so duplicated
    generators collapse to a single survivor instead of wiping each other out.
    """
    polys = [_make_monic(d, fld) for d in polys if d]
    while True:
        changed = False
        out = []
        for idx, d in enumerate(polys):
            reducers = [(max(o), o) for o in out] \
                + [(max(o), o) for o in polys[idx + 1:]]
            reducers.sort(key=lambda t: t[0])
            r = _reduce_full(d, reducers, fld, budget)
            if r != d:
                changed = True
            if r:
                out.append(_make_monic(r, fld))
        polys = out
        if not changed or not make_reduced:
            break
    return polys


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """The unique remainder of f modulo gb; zero iff f is in the ideal."""
    if f.field != gb.field:
        raise MixedFields("polynomial field differs from basis field")
    if f.is_zero():
        return f
    r = _reduce_full(_to_kernel(f), gb._kernel(), gb.field)
    return _from_kernel(r, gb.field)


def verify_buchberger(gb: GroebnerBasis) -> bool:
    """Independent pass: every S-polynomial of basis pairs reduces to zero."""
    fld = gb.field
    kern = [k for _, k in gb._kernel()]
    basis = gb._kernel()
    for d1, d2 in itertools.combinations(kern, 2):
        s = _spoly(_make_monic(dict(d1), fld), _make_monic(dict(d2), fld), fld)
        if _reduce_full(s, basis, fld):
            return False
    return True


@dataclass(frozen=True)
class EmptinessCertificate:
    empty: bool
    witness_exponents: dict      # coordinate name -> least pure power in LT ideal
    missing: tuple               # coordinate names with no pure power

    def to_json(self):
        return {"empty": self.empty,
                "witness_exponents": dict(self.witness_exponents),
                "missing": list(self.missing)}


def is_projectively_empty(gb: GroebnerBasis) -> EmptinessCertificate:
    """Projective Nullstellensatz test over the algebraic closure.

    The vanishing locus in P^7 is empty iff the leading-term ideal contains
    a pure power of every coordinate; the witness records the least such
    exponent per coordinate.
    """
    witnesses = {}
    unit = False
    for g in gb.generators:
        lm = g.leading_monomial()
        if sum(lm) == 0:
            unit = True
            continue
        nz = [v for v in range(NVARS) if lm[v]]
        if len(nz) == 1:
            v = nz[0]
            e = lm[v]
            name = COORDS[v]
            if name not in witnesses or e < witnesses[name]:
                witnesses[name] = e
    if unit:
        # the ideal is the whole ring; the locus is empty outright
        return EmptinessCertificate(True, {name: 0 for name in COORDS}, ())
    missing = tuple(name for name in COORDS if name not in witnesses)
    return EmptinessCertificate(not missing, witnesses, missing)


def standard_monomials(gb: GroebnerBasis, degree: int):
    """Monomials of the given degree outside the leading-term ideal."""
    lms = gb.leading_monomials()
    out = []
    for m in _monomials_of_degree(degree):
        if not any(mono_divides(lm, m) for lm in lms):
            out.append(m)
    return out


def _monomials_of_degree(d):
    for cuts in itertools.combinations(range(d + NVARS - 1), NVARS - 1):
        prev = -1
        m = []
        for c in cuts:
            m.append(c - prev - 1)
            prev = c
        m.append(d + NVARS - 2 - prev)
        yield tuple(m)


def hilbert_series_numerator(gb: GroebnerBasis, degree_cap: int):
    """Dimensions of the graded pieces of the quotient ring, degree 0..cap."""
    return [len(standard_monomials(gb, d)) for d in range(degree_cap + 1)]
