"""The 8-element quaternion group, its characters, and its action on the
coordinate ring.

Elements are the strings "1","-1","i","-i","j","-j","k","-k". The coordinate
action is: trivial on X1, by the three sign characters on Xa, Xb, Xg, and by
the 2x2 Pauli blocks on (Y,Z) and (Yp,Zp). Every block matrix is a signed
(possibly i-scaled) permutation, so acting on a polynomial permutes monomials.
"""

from __future__ import annotations

import itertools

from .errors import BadCharacteristic, NoSquareRootOfMinusOne
from .fields import Field, FieldSpec, field_for
from .linalg import matrix_rank
from .poly import COORDS, NVARS, Poly

ELEMENTS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
CHARACTER_NAMES = ("1", "a", "b", "g")

_AXES = {"1": 0, "i": 1, "j": 2, "k": 3}
_AXIS_NAMES = ("1", "i", "j", "k")


def _to_pair(g):
    if g.startswith("-"):
        return (-1, _AXES[g[1:]])
    return (1, _AXES[g])


def _from_pair(sign, axis):
    name = _AXIS_NAMES[axis]
    return name if sign == 1 else "-" + name


def _pair_mul(a, b):
    sa, ta = a
    sb, tb = b
    if ta == 0:
        return (sa * sb, tb)
    if tb == 0:
        return (sa * sb, ta)
    if ta == tb:
        return (-sa * sb, 0)
    # cyclic: i*j=k, j*k=i, k*i=j; reversed order flips the sign
    if (ta, tb) in ((1, 2), (2, 3), (3, 1)):
        return (sa * sb, 6 - ta - tb)
    return (-sa * sb, 6 - ta - tb)


MUL_TABLE = {
    (g, h): _from_pair(*_pair_mul(_to_pair(g), _to_pair(h)))
    for g in ELEMENTS for h in ELEMENTS
}


def multiply(g, h):
    return MUL_TABLE[(g, h)]


def inverse(g):
    if g in ("1", "-1"):
        return g
    return g[1:] if g.startswith("-") else "-" + g


def element_order(g):
    if g == "1":
        return 1
    if g == "-1":
        return 2
    return 4


# The three nontrivial sign characters: a is +1 on i, b on j, g on k,
# and every character is +1 on -1.
CHARACTER_TABLE = {
    "1": {g: 1 for g in ELEMENTS},
    "a": {"1": 1, "-1": 1, "i": 1, "-i": 1, "j": -1, "-j": -1, "k": -1, "-k": -1},
    "b": {"1": 1, "-1": 1, "i": -1, "-i": -1, "j": 1, "-j": 1, "k": -1, "-k": -1},
    "g": {"1": 1, "-1": 1, "i": -1, "-i": -1, "j": -1, "-j": -1, "k": 1, "-k": 1},
}


def character_value(chi, g):
    return CHARACTER_TABLE[chi][g]


def character_product(chi, psi):
    """Pointwise product of two characters; the four form a Klein group."""
    values = {g: CHARACTER_TABLE[chi][g] * CHARACTER_TABLE[psi][g]
              for g in ELEMENTS}
    for name, table in CHARACTER_TABLE.items():
        if table == values:
            return name
    raise AssertionError("character product fell outside the table")


# -- the 2x2 blocks ----------------------------------------------------------
#
# On a column vector (Y, Z):
#   rho(i) = [[ i, 0], [ 0,-i]]      rho(j) = [[ 0,-1], [ 1, 0]]
#   rho(k) = [[ 0,-i], [-i, 0]]
# extended to the other elements by rho(-g) = -rho(g), rho(1) = id.

_BLOCK_CACHE: dict[FieldSpec, dict] = {}


def _blocks(field: Field):
    cached = _BLOCK_CACHE.get(field.spec)
    if cached is not None:
        return cached
    one = field.one
    zero = field.zero
    ii = field.sqrt_minus_one()
    mi = field.neg(ii)
    base = {
        "1": ((one, zero), (zero, one)),
        "i": ((ii, zero), (zero, mi)),
        "j": ((zero, field.neg(one)), (one, zero)),
        "k": ((zero, mi), (mi, zero)),
    }
    blocks = {}
    for name, mat in base.items():
        blocks[name] = mat
        blocks["-" + name if name != "1" else "-1"] = tuple(
            tuple(field.neg(x) for x in row) for row in mat)
    _verify_block_homomorphism(blocks, field)
    _BLOCK_CACHE[field.spec] = blocks
    return blocks


def _mat2_mul(a, b, field):
    return tuple(
        tuple(field.add(field.mul(a[r][0], b[0][c]), field.mul(a[r][1], b[1][c]))
              for c in range(2))
        for r in range(2))


def _verify_block_homomorphism(blocks, field):
    # The displayed generators are extended by multiplicativity; check all
    # 64 products so a sign-convention slip cannot survive construction.
    for g in ELEMENTS:
        for h in ELEMENTS:
            if _mat2_mul(blocks[g], blocks[h], field) != blocks[multiply(g, h)]:
                raise AssertionError(f"rho({g})rho({h}) != rho({g}{h})")


def rep_matrix(g, spec_or_field):
    """The 8x8 matrix of g acting on (X1, Xa, Xb, Xg, Y, Z, Yp, Zp)."""
    field = spec_or_field if isinstance(spec_or_field, Field) else field_for(spec_or_field)
    block = _blocks(field)[g]
    zero = field.zero
    rows = []
    for r in range(NVARS):
        rows.append([zero] * NVARS)
    rows[0][0] = field.one
    for idx, chi in ((1, "a"), (2, "b"), (3, "g")):
        rows[idx][idx] = field.one if CHARACTER_TABLE[chi][g] == 1 else field.neg(field.one)
    for off in (4, 6):
        for r in range(2):
            for c in range(2):
                rows[off + r][off + c] = block[r][c]
    return tuple(tuple(r) for r in rows)


def _substitution_for(g, field):
    """Signed-monomial substitution data for x |-> rep_matrix(g) x.

    Returns a list over the 8 coordinates of (target_index, unit) meaning
    the variable at index v is replaced by unit * coordinate[target].
    """
    mat = rep_matrix(g, field)
    zero = field.zero
    mapping = []
    for v in range(NVARS):
        hits = [(w, mat[v][w]) for w in range(NVARS) if mat[v][w] != zero]
        if len(hits) != 1:
            raise AssertionError("coordinate action is not monomial")
        mapping.append(hits[0])
    return mapping


def act_on_poly(g, f: Poly) -> Poly:
    """Left action on polynomials: (g . f)(x) = f(rep_matrix(g^-1) x)."""
    field = f.field
    if not field.has_sqrt_minus_one():
        raise NoSquareRootOfMinusOne(
            f"{field.name()} does not admit the coordinate representation")
    return f.substitute_linear(_substitution_for(inverse(g), field))


def isotypic_project(f: Poly, chi: str) -> Poly:
    """Average f against a character: (1/8) sum_h chi(h) (h . f)."""
    field = f.field
    if field.characteristic() == 2:
        raise BadCharacteristic("projector needs 8 invertible in the field")
    acc = Poly.zero(field)
    for h in ELEMENTS:
        hf = act_on_poly(h, f)
        if CHARACTER_TABLE[chi][h] == 1:
            acc = acc + hf
        else:
            acc = acc - hf
    return acc.scale(field.inv(field.from_int(8)))


def quadric_monomials():
    """The 36 degree-2 monomials, in a fixed order."""
    monos = []
    for i, j in itertools.combinations_with_replacement(range(NVARS), 2):
        m = [0] * NVARS
        m[i] += 1
        m[j] += 1
        monos.append(tuple(m))
    return monos


def isotypic_dimensions():
    """Dimension of each character eigenspace inside the 36 quadrics.

    Computed as the rank of the averaging projector over Q(i); returns
    (per-character dict, residual dimension).
    """
    field = field_for(FieldSpec("gaussian_rational"))
    monos = quadric_monomials()
    index = {m: i for i, m in enumerate(monos)}
    dims = {}
    for chi in CHARACTER_NAMES:
        rows = []
        for m in monos:
            image = isotypic_project(Poly(field, {m: field.one}), chi)
            row = [field.zero] * len(monos)
            for mono, coeff in image.terms.items():
                row[index[mono]] = coeff
            rows.append(row)
        dims[chi] = matrix_rank(rows, field)
    residual = len(monos) - sum(dims.values())
    return dims, residual


def coordinate_character():
    """Trace of the coordinate representation at each group element."""
    field = field_for(FieldSpec("gaussian_rational"))
    traces = {}
    for g in ELEMENTS:
        mat = rep_matrix(g, field)
        total = field.zero
        for v in range(NVARS):
            total = field.add(total, mat[v][v])
        re, im = total
        assert im == 0 and re.denominator == 1
        traces[g] = int(re)
    return traces


REGULAR_CHARACTER = {g: (8 if g == "1" else 0) for g in ELEMENTS}
