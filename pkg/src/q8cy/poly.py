"""Sparse polynomials in the 8 fixed coordinates (X1, Xa, Xb, Xg, Y, Z, Yp, Zp).

Monomials are length-8 exponent tuples; polynomials map monomials to nonzero
field payloads. Everything is exact and (by convention) immutable: operations
always build new Poly objects.
"""

from __future__ import annotations

from .errors import DegreeOverflow, MixedFields
from .fields import Field, Scalar

COORDS = ("X1", "Xa", "Xb", "Xg", "Y", "Z", "Yp", "Zp")
NVARS = 8
X1, XA, XB, XG, Y, Z, YP, ZP = range(NVARS)
DEGREE_CAP = 64

ZERO_MONO = (0,) * NVARS


def mono_degree(m):
    return sum(m)


def mono_mul(a, b):
    m = tuple(x + y for x, y in zip(a, b))
    if any(e > DEGREE_CAP for e in m):
        raise DegreeOverflow(f"exponent above {DEGREE_CAP} in {m}")
    return m


def mono_divides(a, b):
    """True if a | b, i.e. every exponent of a is <= that of b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m):
    """Sort key: bigger key = bigger monomial in graded reverse lex order."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def lex_key(m):
    return m


def monomial_key(m, order="grevlex"):
    if order == "grevlex":
        return grevlex_key(m)
    if order == "lex":
        return lex_key(m)
    raise ValueError(f"unknown monomial order {order!r}")


class Poly:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict | None = None, *, _clean=False):
        self.field = field
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            zero = field.zero
            self.terms = {m: c for m, c in terms.items() if c != zero}

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, {}, _clean=True)

    @classmethod
    def constant(cls, field, value):
        v = value.value if isinstance(value, Scalar) else field.from_int(value)
        return cls(field, {ZERO_MONO: v})

    @classmethod
    def variable(cls, field, v, coeff=1):
        mono = tuple(1 if i == v else 0 for i in range(NVARS))
        c = coeff.value if isinstance(coeff, Scalar) else field.from_int(coeff)
        return cls(field, {mono: c})

    @classmethod
    def from_terms(cls, field, pairs):
        """Build from (monomial, coefficient) pairs; coefficients may repeat."""
        terms = {}
        zero = field.zero
        for mono, coeff in pairs:
            c = coeff.value if isinstance(coeff, Scalar) else coeff
            if isinstance(c, int) and not isinstance(zero, int):
                c = field.from_int(c)
            acc = field.add(terms.get(mono, zero), c)
            if acc == zero:
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return cls(field, terms, _clean=True)

    # -- basic queries --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self):
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self, order="grevlex"):
        if not self.terms:
            return None
        return max(self.terms, key=lambda m: monomial_key(m, order))

    def leading_coefficient(self, order="grevlex"):
        lm = self.leading_monomial(order)
        return None if lm is None else self.terms[lm]

    def sorted_terms(self, order="grevlex"):
        """Terms in descending monomial order."""
        return sorted(self.terms.items(),
                      key=lambda mc: monomial_key(mc[0], order), reverse=True)

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero)

    def support_vars(self):
        """Indices of the coordinates that actually occur."""
        used = set()
        for m in self.terms:
            for v in range(NVARS):
                if m[v]:
                    used.add(v)
        return used

    # -- arithmetic -----------------------------------------------------------
    def _check_field(self, other):
        if self.field != other.field:
            raise MixedFields(
                f"polynomials over {self.field.name()} and {other.field.name()}")

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_field(other)
        fld = self.field
        zero = fld.zero
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = fld.add(terms.get(m, zero), c)
            if acc == zero:
                terms.pop(m, None)
            else:
                terms[m] = acc
        return Poly(fld, terms, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_field(other)
        fld = self.field
        zero = fld.zero
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = fld.sub(terms.get(m, zero), c)
            if acc == zero:
                terms.pop(m, None)
            else:
                terms[m] = acc
        return Poly(fld, terms, _clean=True)

    def __neg__(self):
        fld = self.field
        return Poly(fld, {m: fld.neg(c) for m, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        fld = self.field
        if isinstance(other, Scalar):
            if other.field != fld:
                raise MixedFields("scalar field differs from polynomial field")
            other_val = other.value
        elif isinstance(other, int):
            other_val = fld.from_int(other)
        elif isinstance(other, Poly):
            self._check_field(other)
            zero = fld.zero
            out = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    acc = fld.add(out.get(m, zero), fld.mul(c1, c2))
                    if acc == zero:
                        out.pop(m, None)
                    else:
                        out[m] = acc
            return Poly(fld, out, _clean=True)
        else:
            return NotImplemented
        if other_val == fld.zero:
            return Poly.zero(fld)
        return Poly(fld, {m: fld.mul(c, other_val) for m, c in self.terms.items()})

    __rmul__ = __mul__

    def scale(self, payload):
        """Multiply by a raw field payload."""
        fld = self.field
        if payload == fld.zero:
            return Poly.zero(fld)
        return Poly(fld, {m: fld.mul(c, payload) for m, c in self.terms.items()},
                    _clean=True)

    def monic(self, order="grevlex"):
        lc = self.leading_coefficient(order)
        if lc is None or lc == self.field.one:
            return self
        return self.scale(self.field.inv(lc))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field.spec, frozenset(self.terms.items())))

    # -- calculus and substitution ---------------------------------------------
    def differentiate(self, var):
        """Formal partial derivative with respect to coordinate index var."""
        fld = self.field
        out = {}
        zero = fld.zero
        for m, c in self.terms.items():
            e = m[var]
            if e == 0:
                continue
            nc = fld.mul(c, fld.from_int(e))
            if nc == zero:
                continue  # exponent divisible by the characteristic
            nm = m[:var] + (e - 1,) + m[var + 1:]
            acc = fld.add(out.get(nm, zero), nc)
            if acc == zero:
                out.pop(nm, None)
            else:
                out[nm] = acc
        return Poly(fld, out, _clean=True)

    def evaluate(self, point):
        """Exact value at a point given as 8 Scalars or raw payloads."""
        vals = []
        for x in point:
            if isinstance(x, Scalar):
                if x.field != self.field:
                    raise MixedFields("point field differs from polynomial field")
                vals.append(x.value)
            elif isinstance(x, int) and not isinstance(self.field.zero, int):
                vals.append(self.field.from_int(x))
            else:
                vals.append(x)
        return Scalar(self.field, self.evaluate_raw(vals))

    def evaluate_raw(self, vals):
        fld = self.field
        total = fld.zero
        for m, c in self.terms.items():
            term = c
            for v in range(NVARS):
                e = m[v]
                if e:
                    xv = vals[v]
                    for _ in range(e):
                        term = fld.mul(term, xv)
            total = fld.add(total, term)
        return total

    def substitute_zero(self, variables):
        """Set the named coordinate indices to zero."""
        kill = set(variables)
        terms = {m: c for m, c in self.terms.items()
                 if all(m[v] == 0 for v in kill)}
        return Poly(self.field, terms, _clean=True)

    def substitute_linear(self, mapping):
        """Replace each variable v by unit * x_target per mapping[v] = (target, unit).

        Only signed-monomial substitutions are supported, which is all the
        coordinate representation of the group needs.
        """
        fld = self.field
        out = {}
        zero = fld.zero
        for m, c in self.terms.items():
            nm = [0] * NVARS
            nc = c
            for v in range(NVARS):
                e = m[v]
                if not e:
                    continue
                tgt, unit = mapping[v]
                nm[tgt] += e
                if unit != fld.one:
                    for _ in range(e):
                        nc = fld.mul(nc, unit)
            nm = tuple(nm)
            acc = fld.add(out.get(nm, zero), nc)
            if acc == zero:
                out.pop(nm, None)
            else:
                out[nm] = acc
        return Poly(fld, out, _clean=True)

    # -- formatting --------------------------------------------------------------
    def to_string(self):
        """Report form, e.g. '2*X1^2 + 12*Y*Zp'."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v in range(NVARS):
                if m[v] == 1:
                    factors.append(COORDS[v])
                elif m[v] > 1:
                    factors.append(f"{COORDS[v]}^{m[v]}")
            coeff_str = self.field.format(c)
            if factors and coeff_str == "1":
                parts.append("*".join(factors))
            elif factors:
                parts.append(f"{coeff_str}*" + "*".join(factors))
            else:
                parts.append(coeff_str)
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.to_string()} over {self.field.name()})"


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    """Named entry point for polynomial ring operations."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")
