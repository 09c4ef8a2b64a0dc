from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import integer_nthroot  # type: ignore
from sympy.ntheory.factor_ import core  # type: ignore

from qforms import settings


class SeriesError(Exception):
    pass


class FieldMismatchError(SeriesError):
    pass


class RootExtractionError(SeriesError):
    pass


class CompositionDomainError(SeriesError):
    pass


class ExponentDenominatorError(SeriesError):
    pass


class PrecisionError(SeriesError):
    pass


Rational = Fraction


@lru_cache(maxsize=None)
def _check_discriminant(d: int) -> int:
    if d == 1 or (d != 0 and core(abs(d)) != abs(d)):
        raise FieldMismatchError(f"discriminant {d} is not square-free")
    return d


def _rational_root(c: Fraction, k: int) -> Optional[Fraction]:
    if c == 0:
        return Fraction(0)
    if c < 0 and k % 2 == 0:
        return None
    sign = -1 if c < 0 else 1
    num, num_exact = integer_nthroot(abs(c.numerator), k)
    den, den_exact = integer_nthroot(c.denominator, k)
    if not (num_exact and den_exact):
        return None
    return sign * Fraction(int(num), int(den))


class QuadExtScalar:
    """Exact a + b*w with w^2 = d."""

    __slots__ = ("a", "b", "d")

    def __init__(
        self,
        a: Union[int, Fraction] = 0,
        b: Union[int, Fraction] = 0,
        d: int = 0,
    ):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = _check_discriminant(d)
        if self.d == 0 and self.b:
            raise FieldMismatchError("a radical part needs a nonzero discriminant")

    @classmethod
    def coerce(cls, value: "Scalar", d: int) -> "QuadExtScalar":
        if isinstance(value, QuadExtScalar):
            if value.d == d:
                return value
            if not value.b:
                return cls(value.a, 0, d)
            raise FieldMismatchError(f"cannot move {value} into Q(sqrt({d}))")
        return cls(value, 0, d)

    def _unify(self, other) -> Optional[Tuple[Fraction, Fraction, int]]:
        if isinstance(other, QuadExtScalar):
            if other.d == self.d:
                return other.a, other.b, self.d
            if not other.b:
                return other.a, other.b, self.d
            if not self.b:
                return other.a, other.b, other.d
            raise FieldMismatchError(
                f"Q(sqrt({self.d})) and Q(sqrt({other.d})) do not mix"
            )
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0), self.d
        return None

    def __add__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        return QuadExtScalar(self.a + a, self.b + b, d)

    __radd__ = __add__

    def __sub__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        return QuadExtScalar(self.a - a, self.b - b, d)

    def __rsub__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        return QuadExtScalar(a - self.a, b - self.b, d)

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.d)

    def __mul__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        if not b:
            return QuadExtScalar(self.a * a, self.b * a, d)
        if not self.b:
            return QuadExtScalar(self.a * a, self.a * b, d)
        return QuadExtScalar(self.a * a + self.b * b * d, self.a * b + a * self.b, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        return self * QuadExtScalar(a, b, d).inverse()

    def __rtruediv__(self, other):
        parts = self._unify(other)
        if parts is None:
            return NotImplemented
        a, b, d = parts
        return QuadExtScalar(a, b, d) * self.inverse()

    def __pow__(self, n: int) -> "QuadExtScalar":
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = QuadExtScalar(1, 0, self.d)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExtScalar):
            if self.b or other.b:
                return self.d == other.d and self.a == other.a and self.b == other.b
            return self.a == other.a
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def conjugate(self) -> "QuadExtScalar":
        return QuadExtScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadExtScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("cannot invert zero in a quadratic field")
        return QuadExtScalar(self.a / n, -self.b / n, self.d)

    @property
    def is_rational(self) -> bool:
        return not self.b

    @property
    def rational(self) -> Fraction:
        if self.b:
            raise FieldMismatchError(f"{self} is not rational")
        return self.a

    def root(self, k: int) -> "QuadExtScalar":
        """Principal k-th root inside the same field, when one exists."""
        if k < 1:
            raise ValueError("root index must be positive")
        if k == 1:
            return self
        if not self.b:
            r = _rational_root(self.a, k)
            if r is not None:
                return QuadExtScalar(r, 0, self.d)
            if k == 2 and self.d:
                s = _rational_root(self.a / self.d, 2)
                if s is not None:
                    return QuadExtScalar(0, s, self.d)
        elif k % 2 == 0:
            half = self._square_root()
            if half is not None:
                return half.root(k // 2)
        if k % 2 == 0 and k > 2 and not self.b:
            try:
                return self.root(2).root(k // 2)
            except RootExtractionError:
                pass
        raise RootExtractionError(f"({self})^(1/{k}) is not in Q(sqrt({self.d}))")

    def _square_root(self) -> Optional["QuadExtScalar"]:
        # (x + y w)^2 = a + b w  <=>  x^2 + d y^2 = a, 2 x y = b
        n = _rational_root(self.norm(), 2)
        if n is None:
            return None
        for half_a in ((self.a + n) / 2, (self.a - n) / 2):
            x = _rational_root(half_a, 2)
            if x:
                return QuadExtScalar(x, self.b / (2 * x), self.d)
        return None

    def render(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*w"
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def __repr__(self) -> str:
        return f"QuadExtScalar({self.render()}, d={self.d})"

    __str__ = render


Scalar = Union[int, Fraction, QuadExtScalar]
Coefficient = Union[Fraction, QuadExtScalar]
Precision = Optional[Fraction]


def _coerce(value: Scalar, d: int) -> Coefficient:
    if d == 0:
        if isinstance(value, QuadExtScalar):
            return value.rational
        return Fraction(value)
    return QuadExtScalar.coerce(value, d)


def _pmin(*values: Precision) -> Precision:
    known = [v for v in values if v is not None]
    return min(known) if known else None


def _padd(p: Precision, x: Fraction) -> Precision:
    return None if p is None else p + x


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _inverse_of(c: Coefficient) -> Coefficient:
    if isinstance(c, QuadExtScalar):
        return c.inverse()
    return 1 / c


def scalar_power(c: Coefficient, e: Fraction, d: int) -> Coefficient:
    if isinstance(c, Fraction):
        base = _rational_root(c, e.denominator)
        if base is not None:
            return base**e.numerator
        if d == 0:
            raise RootExtractionError(f"({c})^({e}) is not rational")
    root = QuadExtScalar.coerce(c, d).root(e.denominator)
    result = root**e.numerator
    return result if d else result.rational


class PuiseuxSeries:
    """
    Truncated series in q^(1/den), trusted below `precision` (in units of q).
    A precision of None means the stored terms are the whole series.
    """

    __slots__ = ("_coeffs", "den", "precision", "d")

    def __init__(
        self,
        coeffs: Optional[Mapping[int, Scalar]] = None,
        den: int = 1,
        precision: Optional[Union[int, Fraction]] = None,
        d: int = 0,
    ):
        _check_discriminant(d)
        cleaned = {n: _coerce(c, d) for n, c in (coeffs or {}).items()}
        self._setup(cleaned, den, None if precision is None else Fraction(precision), d)

    @classmethod
    def _build(
        cls, coeffs: Dict[int, Coefficient], den: int, precision: Precision, d: int
    ) -> "PuiseuxSeries":
        series = cls.__new__(cls)
        series._setup(coeffs, den, precision, d)
        return series

    def _setup(
        self, coeffs: Dict[int, Coefficient], den: int, precision: Precision, d: int
    ) -> None:
        if precision is not None:
            limit = precision * den
            coeffs = {n: c for n, c in coeffs.items() if c and n < limit}
        else:
            coeffs = {n: c for n, c in coeffs.items() if c}
        g = den
        for n in coeffs:
            g = gcd(g, n)
            if g == 1:
                break
        if g > 1:
            coeffs = {n // g: c for n, c in coeffs.items()}
            den //= g
        if not coeffs:
            den = 1
        if den > settings.QFORMS_MAX_EXPONENT_DENOMINATOR:
            raise ExponentDenominatorError(
                f"exponent denominator {den} exceeds "
                f"{settings.QFORMS_MAX_EXPONENT_DENOMINATOR}"
            )
        self._coeffs = coeffs
        self.den = den
        self.precision = precision
        self.d = d

    @classmethod
    def constant(
        cls, value: Scalar, precision: Optional[Union[int, Fraction]] = None, d: int = 0
    ) -> "PuiseuxSeries":
        return cls({0: value}, 1, precision, d)

    @classmethod
    def zero(
        cls, precision: Optional[Union[int, Fraction]] = None, d: int = 0
    ) -> "PuiseuxSeries":
        return cls({}, 1, precision, d)

    @classmethod
    def monomial(
        cls,
        exponent: Union[int, Fraction],
        value: Scalar = 1,
        precision: Optional[Union[int, Fraction]] = None,
        d: int = 0,
    ) -> "PuiseuxSeries":
        e = Fraction(exponent)
        return cls({e.numerator: value}, e.denominator, precision, d)

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[Fraction, Scalar],
        precision: Optional[Union[int, Fraction]] = None,
        d: int = 0,
    ) -> "PuiseuxSeries":
        den = 1
        for e in terms:
            den = _lcm(den, Fraction(e).denominator)
        coeffs: Dict[int, Scalar] = {}
        for e, c in terms.items():
            n = int(Fraction(e) * den)
            coeffs[n] = coeffs[n] + c if n in coeffs else c
        return cls(coeffs, den, precision, d)

    def __len__(self) -> int:
        return len(self._coeffs)

    def terms(self) -> Iterator[Tuple[Fraction, Coefficient]]:
        for n in sorted(self._coeffs):
            yield Fraction(n, self.den), self._coeffs[n]

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        # raw grid indices, exponent = n / den
        return iter(sorted(self._coeffs.items()))

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_exact(self) -> bool:
        return self.precision is None

    def valuation(self) -> Optional[Fraction]:
        if not self._coeffs:
            return None
        return Fraction(min(self._coeffs), self.den)

    @property
    def order(self) -> Optional[Fraction]:
        """Order used for precision bookkeeping; a zero series counts as O(q^P)."""
        v = self.valuation()
        return self.precision if v is None else v

    def leading(self) -> Tuple[Fraction, Coefficient]:
        if not self._coeffs:
            raise ZeroDivisionError("zero series has no leading term")
        n = min(self._coeffs)
        return Fraction(n, self.den), self._coeffs[n]

    def coefficient(self, exponent: Union[int, Fraction]) -> Coefficient:
        e = Fraction(exponent)
        if self.precision is not None and e >= self.precision:
            raise PrecisionError(f"q^{e} is beyond precision {self.precision}")
        zero = Fraction(0) if self.d == 0 else QuadExtScalar(0, 0, self.d)
        if (e * self.den).denominator != 1:
            return zero
        return self._coeffs.get(int(e * self.den), zero)

    def coefficient_list(self, count: int, step: Union[int, Fraction] = 1) -> List:
        return [self.coefficient(k * Fraction(step)) for k in range(count)]

    def truncate(self, precision: Union[int, Fraction]) -> "PuiseuxSeries":
        return PuiseuxSeries._build(
            dict(self._coeffs),
            self.den,
            _pmin(self.precision, Fraction(precision)),
            self.d,
        )

    def over(self, d: int) -> "PuiseuxSeries":
        """Move into Q(sqrt(d)): promotion from Q, or demotion when no radical parts."""
        if d == self.d:
            return self
        if self.d == 0:
            coeffs = {n: QuadExtScalar(c, 0, d) for n, c in self._coeffs.items()}
            return PuiseuxSeries._build(coeffs, self.den, self.precision, d)
        if d == 0:
            if any(c.b for c in self._coeffs.values()):
                raise FieldMismatchError(
                    f"series has radical parts over Q(sqrt({self.d}))"
                )
            coeffs = {n: c.a for n, c in self._coeffs.items()}
            return PuiseuxSeries._build(coeffs, self.den, self.precision, 0)
        raise FieldMismatchError(f"cannot move Q(sqrt({self.d})) into Q(sqrt({d}))")

    def rational_part(self) -> "PuiseuxSeries":
        if self.d == 0:
            return self
        coeffs = {n: c.a for n, c in self._coeffs.items()}
        return PuiseuxSeries._build(coeffs, self.den, self.precision, 0)

    def radical_part(self) -> "PuiseuxSeries":
        if self.d == 0:
            return PuiseuxSeries.zero(self.precision)
        coeffs = {n: c.b for n, c in self._coeffs.items()}
        return PuiseuxSeries._build(coeffs, self.den, self.precision, 0)

    def is_rational(self) -> bool:
        return self.d == 0 or not any(c.b for c in self._coeffs.values())

    def _regrid(self, den: int) -> Dict[int, Coefficient]:
        if den == self.den:
            return self._coeffs
        scale = den // self.den
        return {n * scale: c for n, c in self._coeffs.items()}

    def scale(self, value: Scalar) -> "PuiseuxSeries":
        a = self
        if isinstance(value, QuadExtScalar) and value.b and value.d != a.d:
            a = a.over(value.d)
        c = _coerce(value, a.d)
        if not c:
            return PuiseuxSeries.zero(None, a.d)
        coeffs = {n: x * c for n, x in a._coeffs.items()}
        return PuiseuxSeries._build(coeffs, a.den, a.precision, a.d)

    def first_difference(self, other: "PuiseuxSeries") -> Optional[Fraction]:
        return sub(self, other).valuation()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QuadExtScalar)):
            other = PuiseuxSeries.constant(other, None, self.d)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        try:
            return self.first_difference(other) is None
        except FieldMismatchError:
            return False

    __hash__ = None  # type: ignore

    def __add__(self, other):
        other = _as_series(other, self.d)
        return NotImplemented if other is None else add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_series(other, self.d)
        return NotImplemented if other is None else sub(self, other)

    def __rsub__(self, other):
        other = _as_series(other, self.d)
        return NotImplemented if other is None else sub(other, self)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QuadExtScalar)):
            return self.scale(other)
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QuadExtScalar)):
            return self.scale(_inverse_of(_coerce(other, _field_of(other, self.d))))
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return mul(self, invert(other))

    def __rtruediv__(self, other):
        other = _as_series(other, self.d)
        return NotImplemented if other is None else mul(other, invert(self))

    def __pow__(self, e):
        return rational_pow(self, Fraction(e))

    def render(self, variable: str = "q") -> str:
        parts = []
        for e, c in self.terms():
            text = c.render() if isinstance(c, QuadExtScalar) else str(c)
            if e == 0:
                parts.append(text)
            else:
                power = variable if e == 1 else f"{variable}^{e}"
                parts.append(f"({text})*{power}")
        if self.precision is not None:
            parts.append(f"O({variable}^{self.precision})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"PuiseuxSeries({self.render()}, d={self.d})"


def _field_of(value: Scalar, d: int) -> int:
    if isinstance(value, QuadExtScalar) and value.b:
        return value.d
    return d


def _as_series(value, d: int) -> Optional[PuiseuxSeries]:
    if isinstance(value, PuiseuxSeries):
        return value
    if isinstance(value, (int, Fraction, QuadExtScalar)):
        return PuiseuxSeries.constant(value, None, _field_of(value, d))
    return None


def unify_fields(
    a: PuiseuxSeries, b: PuiseuxSeries
) -> Tuple[PuiseuxSeries, PuiseuxSeries]:
    if a.d == b.d:
        return a, b
    if a.d == 0:
        return a.over(b.d), b
    if b.d == 0:
        return a, b.over(a.d)
    raise FieldMismatchError(f"Q(sqrt({a.d})) and Q(sqrt({b.d})) do not mix")


def add(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    a, b = unify_fields(a, b)
    den = _lcm(a.den, b.den)
    coeffs = dict(a._regrid(den))
    for n, c in b._regrid(den).items():
        coeffs[n] = coeffs[n] + c if n in coeffs else c
    return PuiseuxSeries._build(coeffs, den, _pmin(a.precision, b.precision), a.d)


def sub(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    return add(a, b.scale(-1))


def _convolve(
    ca: Dict[int, Coefficient], cb: Dict[int, Coefficient], limit: Optional[int]
) -> Dict[int, Coefficient]:
    if len(ca) > len(cb):
        ca, cb = cb, ca
    if len(ca) >= settings.QFORMS_DENSE_THRESHOLD:
        return _convolve_dense(ca, cb, limit)
    keys_b = sorted(cb)
    out: Dict[int, Coefficient] = {}
    for i, x in ca.items():
        for j in keys_b:
            n = i + j
            if limit is not None and n >= limit:
                break
            y = x * cb[j]
            out[n] = out[n] + y if n in out else y
    return out


def _convolve_dense(
    ca: Dict[int, Coefficient], cb: Dict[int, Coefficient], limit: Optional[int]
) -> Dict[int, Coefficient]:
    lo_a, lo_b = min(ca), min(cb)
    va = [ca.get(lo_a + k, 0) for k in range(max(ca) - lo_a + 1)]
    vb = [cb.get(lo_b + k, 0) for k in range(max(cb) - lo_b + 1)]
    size = len(va) + len(vb) - 1
    if limit is not None:
        size = min(size, limit - lo_a - lo_b)
    if size <= 0:
        return {}
    out: List = [0] * size
    for i, x in enumerate(va):
        if not x:
            continue
        for j in range(min(len(vb), size - i)):
            y = vb[j]
            if y:
                out[i + j] += x * y
    return {lo_a + lo_b + k: c for k, c in enumerate(out) if c}


def mul(a: PuiseuxSeries, b: PuiseuxSeries) -> PuiseuxSeries:
    a, b = unify_fields(a, b)
    if (a.is_zero() and a.is_exact()) or (b.is_zero() and b.is_exact()):
        return PuiseuxSeries.zero(None, a.d)
    precision = _pmin(_padd(a.precision, b.order), _padd(b.precision, a.order))
    den = _lcm(a.den, b.den)
    limit = None if precision is None else ceil(precision * den)
    coeffs = _convolve(a._regrid(den), b._regrid(den), limit)
    return PuiseuxSeries._build(coeffs, den, precision, a.d)


def _unit_part(
    a: PuiseuxSeries,
) -> Tuple[int, Coefficient, List[Tuple[int, Coefficient]], Optional[int]]:
    """Split a = c q^(m/den) (1 + v); returns m, c, the terms of v and their count."""
    m = min(a._coeffs)
    c = a._coeffs[m]
    inv_c = _inverse_of(c)
    g = sorted((n - m, x * inv_c) for n, x in a._coeffs.items() if n != m)
    if a.precision is None:
        if g:
            raise PrecisionError("exact series with several terms needs a precision")
        return m, c, g, None
    count = ceil((a.precision - Fraction(m, a.den)) * a.den)
    return m, c, [t for t in g if t[0] < count], count


def invert(a: PuiseuxSeries) -> PuiseuxSeries:
    if a.is_zero():
        raise ZeroDivisionError("cannot invert a zero series")
    m, c, g, count = _unit_part(a)
    inv_c = _inverse_of(c)
    h: List[Coefficient] = [_coerce(1, a.d)]
    for n in range(1, count or 1):
        s = 0
        for k, gk in g:
            if k > n:
                break
            s = s + gk * h[n - k]
        h.append(-s)
    coeffs = {n - m: x * inv_c for n, x in enumerate(h)}
    v = Fraction(m, a.den)
    precision = None if a.precision is None else a.precision - 2 * v
    return PuiseuxSeries._build(coeffs, a.den, precision, a.d)


def rational_pow(a: PuiseuxSeries, e: Union[int, Fraction]) -> PuiseuxSeries:
    """a^e through the J.C.P. Miller recurrence on the unit part."""
    e = Fraction(e)
    if e == 0:
        return PuiseuxSeries.constant(1, None, a.d)
    if e == 1:
        return a
    if a.is_zero():
        if e < 0:
            raise ZeroDivisionError("negative power of a zero series")
        return PuiseuxSeries.zero(None if a.precision is None else a.precision * e, a.d)
    if a.is_exact() and e.denominator == 1 and e > 0 and len(a) > 1:
        return _exact_power(a, int(e))
    m, c, g, count = _unit_part(a)
    lead = scalar_power(c, e, a.d)
    v = Fraction(m, a.den)
    shift = v * e
    den = _lcm(a.den, shift.denominator)
    scale = den // a.den
    one = _coerce(1, a.d)
    f: List[Coefficient] = [one]
    for n in range(1, count or 1):
        s = 0
        for k, gk in g:
            if k > n:
                break
            s = s + ((e + 1) * k - n) * gk * f[n - k]
        f.append(s * Fraction(1, n))
    base = int(shift * den)
    coeffs = {base + n * scale: x * lead for n, x in enumerate(f)}
    precision = None if a.precision is None else shift + (a.precision - v)
    return PuiseuxSeries._build(coeffs, den, precision, a.d)


def derive(a: PuiseuxSeries) -> PuiseuxSeries:
    """q d/dq."""
    coeffs = {n: c * Fraction(n, a.den) for n, c in a._coeffs.items()}
    return PuiseuxSeries._build(coeffs, a.den, a.precision, a.d)


def substitute_power(a: PuiseuxSeries, m: Union[int, Fraction]) -> PuiseuxSeries:
    """q -> q^m for positive rational m."""
    m = Fraction(m)
    if m <= 0:
        raise SeriesError(f"substitution power must be positive, got {m}")
    if m == 1:
        return a
    coeffs = {n * m.numerator: c for n, c in a._coeffs.items()}
    precision = None if a.precision is None else a.precision * m
    return PuiseuxSeries._build(coeffs, a.den * m.denominator, precision, a.d)


def compose(f: PuiseuxSeries, g: PuiseuxSeries) -> PuiseuxSeries:
    """f(g) for a power series f in its own variable and ord(g) > 0."""
    if f.den != 1 or any(n < 0 for n in f._coeffs):
        raise CompositionDomainError("outer series must be a power series")
    f, g = unify_fields(f, g)
    constant = f._coeffs.get(0, _coerce(0, f.d))
    if g.is_zero() and g.is_exact():
        return PuiseuxSeries.constant(constant, None, f.d)
    v = g.order
    if v is None or v <= 0:
        raise CompositionDomainError(f"inner series has order {v}, needs > 0")
    target = _pmin(None if f.precision is None else f.precision * v, g.precision)
    if target is None:
        top = max(f._coeffs, default=0)
    else:
        top = min(ceil(target / v) - 1, max(f._coeffs, default=0))
    result = PuiseuxSeries.constant(f._coeffs.get(top, 0), None, f.d)
    for k in range(top - 1, -1, -1):
        result = mul(result, g)
        if target is not None:
            result = result.truncate(target)
        if k in f._coeffs:
            result = add(result, PuiseuxSeries.constant(f._coeffs[k], None, f.d))
    if target is not None:
        result = result.truncate(target)
    return result


def _exact_power(a: PuiseuxSeries, n: int) -> PuiseuxSeries:
    result = PuiseuxSeries.constant(1, None, a.d)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result
