"""Exact scalar rings: prime fields, rationals, and dual numbers.

Everything downstream compares morphisms by exact equality, so no floating
point is allowed anywhere.  A ring object bundles the element operations;
elements themselves are plain values (int mod p, Fraction, or an (a, b) pair
for a + eps*b with eps^2 = 0).
"""

from __future__ import annotations

from fractions import Fraction


class Ring:
    """Base interface.  Elements are opaque values manipulated via the ring."""

    name = "ring"

    def add(self, a, b): raise NotImplementedError
    def sub(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def neg(self, a): raise NotImplementedError
    def inv(self, a): raise NotImplementedError

    zero = None
    one = None

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return self.eq(a, self.zero)

    def from_int(self, n: int):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        try:
            self.inv(a)
            return True
        except ZeroDivisionError:
            return False

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def show(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        raise NotImplementedError


class PrimeField(Ring):
    """F_p with elements stored as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b): return (a + b) % self.p
    def sub(self, a, b): return (a - b) % self.p
    def mul(self, a, b): return (a * b) % self.p
    def neg(self, a): return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, text: str):
        return int(text) % self.p

    def units(self):
        return list(range(1, self.p))

    def element_of_order(self, k: int) -> int:
        """Some unit of multiplicative order exactly k (brute force)."""
        for a in range(2, self.p):
            if pow(a, k, self.p) == 1 and all(pow(a, d, self.p) != 1 for d in range(1, k)):
                return a
        raise ValueError(f"no element of order {k} in F_{self.p}")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class Rationals(Ring):
    """Q with Fraction elements."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b): return a + b
    def sub(self, a, b): return a - b
    def mul(self, a, b): return a * b
    def neg(self, a): return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible")
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def show(self, a) -> str:
        return str(a)  # Fraction prints as "a/b" or "a"

    def parse(self, text: str):
        return Fraction(text)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


QQ = Rationals()


class DualNumbers(Ring):
    """k[eps]/(eps^2) over a base field; elements are (a, b) = a + eps*b.

    Not a field: a + eps*b is a unit iff a is, with inverse
    a^{-1} - eps a^{-2} b.
    """

    def __init__(self, base: Ring):
        self.base = base
        self.name = f"{base.name}[eps]"
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)

    def add(self, x, y): return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))
    def sub(self, x, y): return (self.base.sub(x[0], y[0]), self.base.sub(x[1], y[1]))

    def mul(self, x, y):
        a, b = x
        c, d = y
        k = self.base
        return (k.mul(a, c), k.add(k.mul(a, d), k.mul(b, c)))

    def neg(self, x): return (self.base.neg(x[0]), self.base.neg(x[1]))

    def inv(self, x):
        a, b = x
        ia = self.base.inv(a)
        return (ia, self.base.neg(self.base.mul(ia, self.base.mul(b, ia))))

    def from_int(self, n: int):
        return (self.base.from_int(n), self.base.zero)

    def eps(self, b=None):
        """eps * b (b defaults to 1)."""
        return (self.base.zero, self.base.one if b is None else b)

    def show(self, x) -> str:
        a, b = x
        return f"{self.base.show(a)}+eps*{self.base.show(b)}"

    def parse(self, text: str):
        if "+eps*" in text:
            a, b = text.split("+eps*")
            return (self.base.parse(a), self.base.parse(b))
        return (self.base.parse(text), self.base.zero)

    def __eq__(self, other):
        return isinstance(other, DualNumbers) and other.base == self.base

    def __hash__(self):
        return hash(("dual", self.base))


def ring_from_name(name: str) -> Ring:
    """Parse ring descriptors: "Q", "F11", "F7[eps]", "Q[eps]"."""
    name = name.strip()
    if name.endswith("[eps]"):
        return DualNumbers(ring_from_name(name[:-5]))
    if name == "Q":
        return QQ
    if name.startswith("F"):
        return PrimeField(int(name[1:]))
    raise ValueError(f"unknown ring {name!r}")
