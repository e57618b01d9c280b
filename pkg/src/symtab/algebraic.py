"""Exact character values: Python ints and quadratic integers ``(a + b*sqrt(D)) / 2``.

Integer values are represented by plain ``int``; arithmetic on :class:`Quad`
demotes to ``int`` whenever the irrational part cancels, so tables of
symmetric groups never leave the integers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Value = Union[int, "Quad"]


class RadicandMismatch(ValueError):
    pass


def squarefree_decomposition(d: int) -> tuple[int, int]:
    """Write ``d = k**2 * s`` with ``s`` squarefree; returns ``(k, s)``."""
    if d == 0:
        raise ValueError("zero has no squarefree part")
    sgn = -1 if d < 0 else 1
    d = abs(d)
    k = 1
    f = 2
    while f * f <= d:
        while d % (f * f) == 0:
            d //= f * f
            k *= f
        f += 1
    return k, sgn * d


class Quad:
    """Algebraic integer ``(a + b*sqrt(D)) / 2`` with ``D`` squarefree and ``b != 0``.

    Use :func:`quad` to build values; it normalizes the radicand and returns an
    ``int`` when the value is rational.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a: int, b: int, D: int):
        if b == 0 or D in (0, 1) or squarefree_decomposition(D)[0] != 1:
            raise ValueError(f"non-normalized quadratic value ({a}, {b}, {D})")
        if D % 4 == 1:
            if (a - b) % 2:
                raise ValueError("not an algebraic integer")
        elif a % 2 or b % 2:
            raise ValueError("not an algebraic integer")
        self.a, self.b, self.D = a, b, D

    def __repr__(self) -> str:
        return f"Quad({self.a}, {self.b}, {self.D})"

    def __str__(self) -> str:
        sgn = "+" if self.b > 0 else "-"
        b = abs(self.b)
        root = f"sqrt({self.D})" if b == 1 else f"{b}*sqrt({self.D})"
        return f"({self.a}{sgn}{root})/2"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Quad):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D)
        return NotImplemented if not isinstance(other, int) else False

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.D))

    def _coerce(self, other: Value) -> tuple[int, int]:
        if isinstance(other, Quad):
            if other.D != self.D:
                raise RadicandMismatch(f"sqrt({self.D}) and sqrt({other.D}) cannot be mixed")
            return other.a, other.b
        if isinstance(other, int):
            return 2 * other, 0
        raise TypeError(type(other))

    def __add__(self, other: Value) -> Value:
        if not isinstance(other, (int, Quad)):
            return NotImplemented
        a, b = self._coerce(other)
        return _make(self.a + a, self.b + b, self.D)

    __radd__ = __add__

    def __neg__(self) -> Quad:
        return Quad(-self.a, -self.b, self.D)

    def __sub__(self, other: Value) -> Value:
        if not isinstance(other, (int, Quad)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Value) -> Value:
        return (-self) + other

    def __mul__(self, other: Value) -> Value:
        if not isinstance(other, (int, Quad)):
            return NotImplemented
        a, b = self._coerce(other)
        # ((a1 + b1 r)(a2 + b2 r)) / 4, rewritten over the denominator 2
        na = self.a * a + self.b * b * self.D
        nb = self.a * b + self.b * a
        assert na % 2 == 0 and nb % 2 == 0
        return _make(na // 2, nb // 2, self.D)

    __rmul__ = __mul__

    def __float__(self) -> float:
        if self.D < 0:
            raise TypeError("value is not real")
        return (self.a + self.b * self.D**0.5) / 2

    def __complex__(self) -> complex:
        return complex((self.a + self.b * complex(self.D) ** 0.5) / 2)


def _make(a: int, b: int, D: int) -> Value:
    if b == 0:
        assert a % 2 == 0
        return a // 2
    return Quad(a, b, D)


def quad(a: int, b: int, d: int) -> Value:
    """The value ``(a + b*sqrt(d)) / 2`` in normalized form (``d`` need not be squarefree)."""
    if b == 0 or d == 0:
        if a % 2:
            raise ValueError("not an algebraic integer")
        return a // 2
    k, s = squarefree_decomposition(d)
    b *= k
    if s == 1:
        if (a + b) % 2:
            raise ValueError("not an algebraic integer")
        return (a + b) // 2
    return Quad(a, b, s)


def galois_conjugate(x: Value) -> Value:
    if isinstance(x, Quad):
        return Quad(x.a, -x.b, x.D)
    return x


def complex_conjugate(x: Value) -> Value:
    """Complex conjugation; the identity on real values."""
    if isinstance(x, Quad) and x.D < 0:
        return galois_conjugate(x)
    return x


def trace(x: Value) -> int:
    return x.a if isinstance(x, Quad) else 2 * x


def norm(x: Value) -> int:
    if isinstance(x, Quad):
        return (x.a * x.a - x.b * x.b * x.D) // 4
    return x * x


def is_real(x: Value) -> bool:
    return not (isinstance(x, Quad) and x.D < 0)


def sign_of(x: Value) -> int:
    """Exact sign of a real value."""
    if isinstance(x, int):
        return (x > 0) - (x < 0)
    if x.D < 0:
        raise ValueError(f"{x} is not real")
    # sign of a + b*sqrt(D)
    sa = (x.a > 0) - (x.a < 0)
    sb = 1 if x.b > 0 else -1
    if sa == 0 or sa == sb:
        return sb
    return sa if x.a * x.a > x.b * x.b * x.D else sb


def is_positive(x: Value) -> bool:
    return is_real(x) and sign_of(x) > 0


def to_rational(x: Value) -> Fraction:
    if isinstance(x, Quad):
        raise ValueError(f"{x} is irrational")
    return Fraction(x)


def value_key(x: Value) -> tuple:
    """Total order on values, used only for sorting and canonical multisets."""
    if isinstance(x, Quad):
        return (1, x.D, x.a, x.b)
    return (0, x)


def to_wire(x: Value) -> str | dict:
    if isinstance(x, Quad):
        return {"a": x.a, "b": x.b, "D": x.D}
    return str(x)


def from_wire(obj) -> Value:
    if isinstance(obj, dict):
        return quad(int(obj["a"]), int(obj["b"]), int(obj["D"]))
    if isinstance(obj, bool):
        raise ValueError("boolean is not a character value")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        return int(obj)
    raise ValueError(f"cannot decode entry {obj!r}")


class ExactSum:
    """Running sum of rational multiples of values that may involve several radicands.

    Square roots of distinct squarefree integers are linearly independent over the
    rationals, so the total is rational exactly when every irrational part cancels.
    """

    def __init__(self):
        self.rational = Fraction(0)
        self.irrational: dict[int, Fraction] = {}

    def add(self, value: Value, weight: Fraction | int = 1) -> None:
        if isinstance(value, Quad):
            self.rational += Fraction(value.a, 2) * weight
            self.irrational[value.D] = self.irrational.get(value.D, Fraction(0)) + Fraction(value.b, 2) * weight
        else:
            self.rational += value * weight

    def is_rational(self) -> bool:
        return not any(self.irrational.values())

    def value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("sum is irrational")
        return self.rational
