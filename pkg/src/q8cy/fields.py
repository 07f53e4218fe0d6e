"""Exact coefficient arithmetic over Q, Q(i), F_p and F_{p^k}.

Field elements are lightweight payloads (int residues, coefficient tuples,
Fraction, or (Fraction, Fraction) pairs) manipulated through a Field object;
the Scalar wrapper binds a payload to its field and supplies operators.
All values are kept in a unique canonical form so == and hash just work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    DivisionByZero,
    InfiniteField,
    MixedFields,
    NoSquareRootOfMinusOne,
)

_MAX_PRIME = 2**64

# Witnesses making Miller-Rabin deterministic below 3.3e24 (> 2^64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _poly_mod_mul(a, b, modulus, p):
    """Product of coefficient tuples modulo a monic modulus over F_p."""
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        lead = prod[deg]
        if lead:
            prod[deg] = 0
            for j in range(k):
                prod[deg - k + j] = (prod[deg - k + j] - lead * modulus[j]) % p
    return tuple(prod[:k])


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over F_p in lexicographic order."""
    for tail in itertools.product(range(p), repeat=k):
        # tail is (c_{k-1}, ..., c_0); build low-to-high with leading 1
        cand = tuple(reversed(tail)) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError("no irreducible polynomial found")  # unreachable for k >= 1


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Brute-force irreducibility test for small degree over F_p."""
    k = len(poly) - 1
    if k == 1:
        return True
    if poly[0] == 0:
        return False
    # no linear factor <=> no root
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            return False
    # trial division by monic factors of degree 2..k//2
    for d in range(2, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if _poly_divides(divisor, poly, p):
                return False
    return True


def _poly_divides(d, f, p):
    rem = list(f)
    dd = len(d) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for j in range(dd + 1):
                rem[shift + j] = (rem[shift + j] - lead * d[j]) % p
        rem.pop()
    return all(c == 0 for c in rem)


@dataclass(frozen=True)
class FieldSpec:
    """Which coefficient field to work over.

    kind: "rational" | "gaussian_rational" | "prime" | "prime_ext"
    p, k, modulus_poly only apply to the finite kinds; modulus_poly is monic,
    stored low-to-high including the leading 1.
    """

    kind: str
    p: int = 0
    k: int = 1
    modulus_poly: tuple[int, ...] = dc_field(default=tuple())

    def __post_init__(self):
        if self.kind in ("rational", "gaussian_rational"):
            if self.p or self.k != 1 or self.modulus_poly:
                raise ValueError(f"{self.kind} takes no modulus parameters")
            return
        if self.kind not in ("prime", "prime_ext"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.p >= _MAX_PRIME:
            raise ValueError("modulus must be < 2^64")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind == "prime":
            if self.k != 1 or self.modulus_poly:
                raise ValueError("prime fields take no extension parameters")
        else:
            if self.k < 2:
                raise ValueError("prime_ext requires extension degree k >= 2")
            if not self.modulus_poly:
                object.__setattr__(self, "modulus_poly", _find_irreducible(self.p, self.k))
            mod = tuple(c % self.p for c in self.modulus_poly)
            if len(mod) != self.k + 1 or mod[-1] != 1:
                raise ValueError("modulus_poly must be monic of degree k")
            if not _is_irreducible(mod, self.p):
                raise ValueError("modulus_poly is reducible")
            object.__setattr__(self, "modulus_poly", mod)

    def to_json(self) -> dict:
        if self.kind in ("rational", "gaussian_rational"):
            return {"kind": self.kind}
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "prime_ext", "p": self.p, "k": self.k,
                "modulus_poly": list(self.modulus_poly)}

    @staticmethod
    def from_json(obj: dict) -> "FieldSpec":
        kind = obj["kind"]
        if kind in ("rational", "gaussian_rational"):
            return FieldSpec(kind)
        if kind == "prime":
            return FieldSpec("prime", p=int(obj["p"]))
        if kind == "prime_ext":
            return FieldSpec("prime_ext", p=int(obj["p"]), k=int(obj["k"]),
                             modulus_poly=tuple(obj.get("modulus_poly", ())))
        raise ValueError(f"unknown field kind {kind!r}")


def parse_field_string(text: str) -> FieldSpec:
    """Parse CLI field syntax: 'fp:13', 'fp:13^2', 'qi', 'q'."""
    text = text.strip().lower()
    if text == "q":
        return FieldSpec("rational")
    if text == "qi":
        return FieldSpec("gaussian_rational")
    if text.startswith("fp:"):
        body = text[3:]
        if "^" in body:
            ps, ks = body.split("^", 1)
            return FieldSpec("prime_ext", p=int(ps), k=int(ks))
        return FieldSpec("prime", p=int(body))
    raise ValueError(f"cannot parse field spec {text!r}")


class Field:
    """Arithmetic for one coefficient field; payloads are canonical values."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self._i = None

    # -- subclass surface -------------------------------------------------
    zero = None
    one = None

    def characteristic(self) -> int:
        raise NotImplementedError

    def size(self):
        """Number of elements, or None for infinite fields."""
        return None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        if b == self.zero:
            raise DivisionByZero(f"division by zero in {self.name()}")
        return self.mul(a, self.inv(b))

    def from_int(self, n: int):
        raise NotImplementedError

    def elements(self):
        raise InfiniteField(f"{self.name()} is infinite")

    def _compute_sqrt_minus_one(self):
        raise NoSquareRootOfMinusOne(f"-1 is not a square in {self.name()}")

    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def random_element(self, rng):
        raise NotImplementedError

    # -- shared helpers ----------------------------------------------------
    def sqrt_minus_one(self):
        if self._i is None:
            self._i = self._compute_sqrt_minus_one()
        return self._i

    def has_sqrt_minus_one(self) -> bool:
        try:
            self.sqrt_minus_one()
            return True
        except NoSquareRootOfMinusOne:
            return False

    def random_nonzero(self, rng):
        while True:
            a = self.random_element(rng)
            if a != self.zero:
                return a

    def name(self) -> str:
        s = self.spec
        if s.kind == "rational":
            return "Q"
        if s.kind == "gaussian_rational":
            return "Q(i)"
        if s.kind == "prime":
            return f"F_{s.p}"
        return f"F_{s.p}^{s.k}"

    def scalar(self, value) -> "Scalar":
        return Scalar(self, value)

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Field({self.name()})"


class RationalField(Field):
    zero = Fraction(0)
    one = Fraction(1)

    def characteristic(self):
        return 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def format(self, a):
        return str(a)

    def parse(self, text):
        return Fraction(text)

    def random_element(self, rng):
        return Fraction(rng.randrange(-9, 10), rng.randrange(1, 10))


class GaussianRationalField(Field):
    """Q(i); payloads are (re, im) pairs of Fractions."""

    zero = (Fraction(0), Fraction(0))
    one = (Fraction(1), Fraction(0))

    def characteristic(self):
        return 0

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def mul(self, a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def neg(self, a):
        return (-a[0], -a[1])

    def inv(self, a):
        n = a[0] * a[0] + a[1] * a[1]
        if n == 0:
            raise DivisionByZero("division by zero in Q(i)")
        return (a[0] / n, -a[1] / n)

    def from_int(self, n):
        return (Fraction(n), Fraction(0))

    def _compute_sqrt_minus_one(self):
        return (Fraction(0), Fraction(1))

    def format(self, a):
        return f"{a[0]},{a[1]}"

    def parse(self, text):
        re, im = text.split(",")
        return (Fraction(re), Fraction(im))

    def random_element(self, rng):
        return (Fraction(rng.randrange(-4, 5), rng.randrange(1, 5)),
                Fraction(rng.randrange(-4, 5), rng.randrange(1, 5)))


class PrimeField(Field):
    def __init__(self, spec):
        super().__init__(spec)
        self.p = spec.p
        self.zero = 0
        self.one = 1 % self.p

    def characteristic(self):
        return self.p

    def size(self):
        return self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero(f"division by zero in F_{self.p}")
        return a * pow(b, self.p - 2, self.p) % self.p

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def _compute_sqrt_minus_one(self):
        p = self.p
        if p % 4 != 1:
            raise NoSquareRootOfMinusOne(f"p = {p} is 3 mod 4")
        # r = a^((p-1)/4) for a quadratic non-residue a; canonical root is
        # the smaller of the pair {r, p-r}.
        a = 2
        while pow(a, (p - 1) // 2, p) != p - 1:
            a += 1
        r = pow(a, (p - 1) // 4, p)
        assert r * r % p == p - 1
        return min(r, p - r)

    def format(self, a):
        return str(a)

    def parse(self, text):
        return int(text) % self.p

    def random_element(self, rng):
        return rng.randrange(self.p)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.p)


class ExtField(Field):
    """F_{p^k}; payloads are k-tuples of residues, low degree first."""

    def __init__(self, spec):
        super().__init__(spec)
        self.p = spec.p
        self.k = spec.k
        self.modulus = spec.modulus_poly
        self.q = spec.p ** spec.k
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def characteristic(self):
        return self.p

    def size(self):
        return self.q

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        return _poly_mod_mul(a, b, self.modulus, self.p)

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZero(f"division by zero in {self.name()}")
        return self.pow(a, self.q - 2)

    def pow(self, a, n):
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_index(self, v: int):
        """Element number v in enumeration order (base-p digits of v)."""
        digits = []
        for _ in range(self.k):
            digits.append(v % self.p)
            v //= self.p
        return tuple(digits)

    def elements(self):
        return (self.from_index(v) for v in range(self.q))

    def _compute_sqrt_minus_one(self):
        if self.p % 4 == 1:
            prime = PrimeField(FieldSpec("prime", p=self.p))
            return self.from_int(prime.sqrt_minus_one())
        if self.k % 2 == 1:
            raise NoSquareRootOfMinusOne(
                f"p = {self.p} is 3 mod 4 and k = {self.k} is odd")
        minus_one = self.neg(self.one)
        for x in self.elements():
            if self.mul(x, x) == minus_one:
                return x
        raise AssertionError("even-degree extension must contain sqrt(-1)")

    def format(self, a):
        return ",".join(str(c) for c in a)

    def parse(self, text):
        coeffs = tuple(int(c) % self.p for c in text.split(","))
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients")
        return coeffs

    def random_element(self, rng):
        return self.from_index(rng.randrange(self.q))

    def random_nonzero(self, rng):
        return self.from_index(rng.randrange(1, self.q))


_FIELD_CACHE: dict[FieldSpec, Field] = {}


def field_for(spec: FieldSpec) -> Field:
    f = _FIELD_CACHE.get(spec)
    if f is None:
        if spec.kind == "rational":
            f = RationalField(spec)
        elif spec.kind == "gaussian_rational":
            f = GaussianRationalField(spec)
        elif spec.kind == "prime":
            f = PrimeField(spec)
        else:
            f = ExtField(spec)
        _FIELD_CACHE[spec] = f
    return f


class Scalar:
    """A field element bound to its field; operators stay inside the field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(
                    f"cannot combine {self.field.name()} with {other.field.name()}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(v, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field.name()}"


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Named entry point for the four field operations."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def sqrt_minus_one(spec: FieldSpec) -> Scalar:
    f = field_for(spec)
    return Scalar(f, f.sqrt_minus_one())


def enumerate_field(spec: FieldSpec):
    """Yield every element of a finite field exactly once, in a fixed order."""
    f = field_for(spec)
    for v in f.elements():
        yield Scalar(f, v)
