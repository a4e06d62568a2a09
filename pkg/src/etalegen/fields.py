"""Exact coefficient fields.

Four kinds of field are supported:

* ``Q`` -- the rationals, raw values are :class:`fractions.Fraction`;
* ``GF(p)`` -- prime fields, raw values are ints in ``[0, p)``;
* ``GF(p, k)`` -- finite fields of order ``p**k`` (used for residue fields of
  points over extensions), raw values are ints encoding coefficient vectors in
  base ``p`` over a primitive modulus;
* ``FunctionField(base, "t")`` -- one-variable rational functions over ``Q`` or
  ``GF(p)``, raw values are reduced ``(numerator, denominator)`` pairs of
  coefficient tuples with monic denominator.

Field descriptors expose arithmetic on raw values (``F.add(a, b)`` and so on),
which is what the algorithms use internally. :class:`FieldElem` wraps a raw
value together with its descriptor for public, operator-based use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import _upoly as up
from .errors import FieldMismatchError, ParseError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common behaviour of all field descriptors."""

    kind: str
    zero = None
    one = None

    # --- raw arithmetic, overridden where a faster form exists ---
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        acc = self.one
        while e:
            if e & 1:
                acc = self.mul(acc, a)
            a = self.mul(a, a)
            e >>= 1
        return acc

    def from_int(self, n: int):
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    # --- wrapping ---
    def __call__(self, x) -> "FieldElem":
        return FieldElem(self, self.convert(x))

    def convert(self, x):
        """Coerce ints, FieldElems of this field, and raw values to a raw value."""
        if isinstance(x, FieldElem):
            if x.field != self:
                raise FieldMismatchError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return self.from_int(x)
        return self._convert_other(x)

    def _convert_other(self, x):
        raise TypeError(f"cannot convert {x!r} into {self}")

    def elements(self):
        raise ValueError(f"{self} is infinite")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class RationalField(Field):
    kind = "rationals"
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0
    order = None
    name = "Q"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def from_int(self, n):
        return Fraction(n)

    def _convert_other(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} into Q")

    def sort_key(self, a):
        sign = (a > 0) - (a < 0)
        return (sign, a.numerator, a.denominator)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("not a rational number", text, 0) from None

    def random_element(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def __repr__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    kind = "prime-field"
    zero = 0
    one = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    @property
    def name(self):
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return pow(a, -1, self.p)

    def from_int(self, n):
        return n % self.p

    def _convert_other(self, x):
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def elements(self):
        return range(self.p)

    def sort_key(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        m = re.fullmatch(r"\s*(-?\d+)(?:\s*/\s*(-?\d+))?\s*", text)
        if not m:
            raise ParseError(f"not an element of {self.name}", text, 0)
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den % self.p == 0:
            raise ParseError("zero denominator", text, m.start(2))
        return self.div(self.from_int(num), self.from_int(den))

    def random_element(self, rng):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class ExtensionField(Field):
    """GF(p^k), k >= 2, with log/antilog tables over a primitive modulus."""

    p: int
    k: int

    kind = "extension-field"
    zero = 0
    one = 1

    def __post_init__(self):
        if not is_prime(self.p) or self.k < 2:
            raise ValueError("extension fields need a prime p and degree k >= 2")
        if self.p**self.k > 1 << 16:
            raise ValueError("extension fields are limited to order 2**16")

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p**self.k

    @property
    def name(self):
        return f"F{self.p}^{self.k}"

    @cached_property
    def _tables(self):
        p, k, q = self.p, self.k, self.p**self.k
        # search monic moduli x^k + ... in encoding order until x is primitive
        for tail in range(1, p**k):
            modulus = [(tail // p**i) % p for i in range(k)]
            exp = [1]
            cur = [1] + [0] * (k - 1)
            ok = True
            for _ in range(q - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [(c - top * m) % p for c, m in zip(cur, modulus)]
                code = sum(c * p**i for i, c in enumerate(cur))
                if code == 1:
                    ok = False
                    break
                exp.append(code)
            if ok and len(set(exp)) == q - 1:
                log = [0] * q
                for i, code in enumerate(exp):
                    log[code] = i
                return tuple(modulus), exp, log
        raise AssertionError("no primitive modulus found")

    @property
    def modulus(self):
        """Low coefficients of the monic primitive modulus x^k + ..."""
        return self._tables[0]

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.k)]

    def undigits(self, ds):
        return sum((d % self.p) * self.p**i for i, d in enumerate(ds))

    def _digit_add(self, a, b):
        p = self.p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    @cached_property
    def _add_table(self):
        q = self.order
        if q > 1024:
            return None
        return [[self._digit_add(a, b) for b in range(q)] for a in range(q)]

    def add(self, a, b):
        table = self._add_table
        if table is not None:
            return table[a][b]
        return self._digit_add(a, b)

    def neg(self, a):
        p = self.p
        out, scale = 0, 1
        while a:
            out += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        _, exp, log = self._tables
        return exp[(log[a] + log[b]) % (len(exp))]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        _, exp, log = self._tables
        return exp[-log[a] % len(exp)]

    def from_int(self, n):
        return n % self.p

    def generator(self):
        """The primitive element x (a non-square when p is odd)."""
        return self._tables[1][1]

    def log(self, a):
        return self._tables[2][a]

    def _convert_other(self, x):
        if isinstance(x, (list, tuple)):
            return self.undigits(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot convert {x!r} into {self}")

    def elements(self):
        return range(self.order)

    def sort_key(self, a):
        return a

    def format(self, a) -> str:
        return "[" + ",".join(str(d) for d in self.digits(a)) + "]"

    def parse(self, text: str):
        s = text.strip()
        if re.fullmatch(r"-?\d+", s):
            return self.from_int(int(s))
        m = re.fullmatch(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\]", s)
        if not m:
            raise ParseError(f"not an element of {self.name}", text, 0)
        ds = [int(d) for d in m.group(1).split(",")]
        if len(ds) > self.k:
            raise ParseError("too many coefficients", text, 0)
        return self.undigits(ds)

    def random_element(self, rng):
        return rng.randrange(self.order)

    def __repr__(self):
        return f"GF({self.p}, {self.k})"


@dataclass(frozen=True)
class FunctionField(Field):
    """Rational functions in one variable over Q or a prime field."""

    base: Field
    var: str = "t"

    kind = "rational-functions"

    def __post_init__(self):
        if not isinstance(self.base, (RationalField, PrimeField)):
            raise ValueError("function fields are built over Q or a prime field only")

    @property
    def zero(self):
        return ((), (self.base.one,))

    @property
    def one(self):
        return ((self.base.one,), (self.base.one,))

    @property
    def characteristic(self):
        return self.base.characteristic

    order = None

    @property
    def name(self):
        return f"{self.base.name}({self.var})"

    def _make(self, num, den):
        B = self.base
        if not den:
            raise ZeroDivisionError(f"division by zero in {self.name}")
        if not num:
            return self.zero
        g = up.gcd(B, num, den)
        if len(g) > 1:
            num = up.divmod_(B, num, g)[0]
            den = up.divmod_(B, den, g)[0]
        lc_inv = B.inv(den[-1])
        return up.scale(B, num, lc_inv), up.scale(B, den, lc_inv)

    def add(self, a, b):
        B = self.base
        if a[1] == b[1]:
            return self._make(up.add(B, a[0], b[0]), a[1])
        num = up.add(B, up.mul(B, a[0], b[1]), up.mul(B, b[0], a[1]))
        return self._make(num, up.mul(B, a[1], b[1]))

    def neg(self, a):
        return up.neg(self.base, a[0]), a[1]

    def mul(self, a, b):
        B = self.base
        return self._make(up.mul(B, a[0], b[0]), up.mul(B, a[1], b[1]))

    def inv(self, a):
        return self._make(a[1], a[0])

    def is_zero(self, a):
        return not a[0]

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def from_base(self, c):
        return (up.trim(self.base, (c,)), (self.base.one,))

    def gen(self):
        """The transcendental variable as a raw value."""
        return ((self.base.zero, self.base.one), (self.base.one,))

    def specialize(self, a, value):
        """Evaluate a raw rational function at a base-field value."""
        B = self.base
        den = up.evaluate(B, a[1], value)
        if B.is_zero(den):
            raise ZeroDivisionError(f"pole at {B.format(value)}")
        return B.div(up.evaluate(B, a[0], value), den)

    def _convert_other(self, x):
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
            B = self.base
            return self._make(up.trim(B, map(B.convert, x[0])), up.trim(B, map(B.convert, x[1])))
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, FieldElem) and x.field == self.base:
            return self.from_base(x.value)
        return self.from_base(self.base.convert(x))

    def convert(self, x):
        if isinstance(x, FieldElem) and x.field == self.base:
            return self.from_base(x.value)
        return super().convert(x)

    def sort_key(self, a):
        B = self.base
        return (len(a[0]), tuple(B.sort_key(c) for c in a[0]), len(a[1]),
                tuple(B.sort_key(c) for c in a[1]))

    def format(self, a) -> str:
        B = self.base

        def coeffs(p):
            return "[" + ",".join(B.format(c) for c in p) + "]"

        if a[1] == (B.one,):
            return coeffs(a[0])
        return coeffs(a[0]) + "/" + coeffs(a[1])

    def parse(self, text: str):
        s = text.strip()
        if not s.startswith("["):
            return self.from_base(self.base.parse(s))
        m = re.fullmatch(r"\[([^\]]*)\](?:\s*/\s*\[([^\]]*)\])?", s)
        if not m:
            raise ParseError(f"not an element of {self.name}", text, 0)
        B = self.base

        def poly(body, offset):
            if not body.strip():
                return ()
            out = []
            pos = offset
            for part in body.split(","):
                try:
                    out.append(B.parse(part))
                except ParseError:
                    raise ParseError(f"bad coefficient {part.strip()!r}", text, pos) from None
                pos += len(part) + 1
            return up.trim(B, out)

        num = poly(m.group(1), m.start(1))
        den = poly(m.group(2), m.start(2)) if m.group(2) is not None else (B.one,)
        if not den:
            raise ParseError("zero denominator", text, m.start(2))
        return self._make(num, den)

    def random_element(self, rng, degree=2):
        B = self.base
        num = up.trim(B, [B.random_element(rng) for _ in range(degree + 1)])
        den = ()
        while not den:
            den = up.trim(B, [B.random_element(rng) for _ in range(degree + 1)])
        return self._make(num, den)

    def __repr__(self):
        return f"FunctionField({self.base!r}, {self.var!r})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> Field:
    """Finite field of order p**k."""
    if k == 1:
        return PrimeField(p)
    return ExtensionField(p, k)


_FIELD_RE = re.compile(r"\s*(?:(Q|QQ)|F(\d+)(?:\^(\d+))?|GF\((\d+)\))\s*(?:\(\s*([A-Za-z_]\w*)\s*\))?\s*")


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``F5``, ``GF(5)``, ``F5^2``, ``Q(t)`` or ``F5(t)``."""
    m = _FIELD_RE.fullmatch(text)
    if not m:
        raise ParseError("unknown field (expected Q, Fp, Fp^k, Q(t) or Fp(t))", text, 0)
    if m.group(1):
        base = QQ
    else:
        p = int(m.group(2) or m.group(4))
        k = int(m.group(3) or 1)
        if not is_prime(p):
            raise ParseError(f"{p} is not prime", text, m.start(2) if m.group(2) else m.start(4))
        try:
            base = GF(p, k)
        except ValueError as exc:
            raise ParseError(str(exc), text, 0) from None
    if m.group(5):
        if isinstance(base, ExtensionField):
            raise ParseError("function fields over extension fields are not supported", text, m.start(5))
        return FunctionField(base, m.group(5))
    return base


class FieldElem:
    """An immutable field element tagged with its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.value
        return self.field.convert(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElem(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def is_unit(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.convert(other)
        except (TypeError, FieldMismatchError, ParseError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def sort_key(self):
        return self.field.sort_key(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field.name}({self.field.format(self.value)})"
