"""Exact univariate polynomial arithmetic over Z and Q.

Coefficients are stored ascending (index = power of t).  The integer
type :class:`IntPolynomial` is immutable; rational intermediate results
(inside gcds and square-free splitting) use plain Fraction lists and are
converted back to primitive integer polynomials at the edges, which is
the canonical form used everywhere else in the library.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "IntPolynomial",
    "gcd_primitive",
    "exact_div",
    "squarefree_decomposition",
    "rational_roots",
    "x_power_minus_one",
]


class IntPolynomial:
    """Integer polynomial with ascending coefficients.

    >>> f = IntPolynomial([-1, 0, 1])   # t^2 - 1
    >>> f.degree, f.leading
    (2, 1)
    >>> (f * f).coeffs
    (1, 0, -2, 0, 1)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @property
    def degree(self):
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant(self):
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == (1,)

    def content(self):
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self):
        """Divide out the content and normalize the leading sign."""
        if self.is_zero():
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return IntPolynomial([a // c for a in self.coeffs])

    def is_primitive(self):
        return not self.is_zero() and self.content() == 1 and self.leading > 0

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self):
        return IntPolynomial([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * a for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift_up(self, k):
        """Multiply by t^k."""
        return IntPolynomial((0,) * k + self.coeffs)

    def strip_t_power(self):
        """Return (a, g) with self = t^a * g and g(0) != 0 (zero poly -> (0, 0))."""
        if self.is_zero():
            return 0, self
        a = 0
        while self.coeffs[a] == 0:
            a += 1
        return a, IntPolynomial(self.coeffs[a:])

    def scale_arg(self, c):
        """f(c*t) as an integer polynomial (c an integer)."""
        return IntPolynomial([a * c**i for i, a in enumerate(self.coeffs)])

    def reverse(self):
        """t^deg * f(1/t): the coefficient-reversed polynomial."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def derivative(self):
        return IntPolynomial([i * a for i, a in enumerate(self.coeffs)][1:])

    def eval_fraction(self, q):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * q + a
        return acc

    def eval_complex(self, z):
        acc = 0j
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial{self.coeffs}"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if not a:
                continue
            if i == 0:
                term = str(abs(a))
            else:
                t = "t" if i == 1 else f"t^{i}"
                term = t if abs(a) == 1 else f"{abs(a)}*{t}"
            if not parts:
                parts.append(term if a > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if a > 0 else f"- {term}")
        return " ".join(parts)


def x_power_minus_one(n):
    """t^n - 1."""
    return IntPolynomial([-1] + [0] * (n - 1) + [1])


def _to_fraction_list(f):
    return [Fraction(c) for c in f.coeffs]


def _frac_divmod(a, b):
    """Polynomial divmod over Q on ascending Fraction lists."""
    a = a[:]
    while a and not a[-1]:
        a.pop()
    db = len(b) - 1
    while db >= 0 and not b[db]:
        db -= 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - db)
    inv = Fraction(1) / b[db]
    while len(a) - 1 >= db and a:
        d = len(a) - 1
        coef = a[-1] * inv
        q[d - db] = coef
        for i in range(db + 1):
            a[d - db + i] -= coef * b[i]
        while a and not a[-1]:
            a.pop()
    return q, a


def _from_fraction_list(cs):
    """Clear denominators and return the primitive integer polynomial."""
    cs = [Fraction(c) for c in cs]
    while cs and not cs[-1]:
        cs.pop()
    if not cs:
        return IntPolynomial([])
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return IntPolynomial([int(c * den) for c in cs]).primitive()


def exact_div(f, g):
    """f // g when g divides f exactly over Q; result primitive up to sign.

    Returns the integer quotient polynomial (exact); raises ValueError on
    a nonzero remainder.
    """
    q, r = _frac_divmod(_to_fraction_list(f), _to_fraction_list(g))
    if any(r):
        raise ValueError("exact_div: division leaves a remainder")
    den = 1
    for c in q:
        den = den * c.denominator // math.gcd(den, c.denominator)
    if den != 1:
        raise ValueError("exact_div: quotient is not integral")
    return IntPolynomial([int(c) for c in q])


def divides(g, f):
    """True when g | f over Q."""
    if g.is_zero():
        return f.is_zero()
    _, r = _frac_divmod(_to_fraction_list(f), _to_fraction_list(g))
    return not any(r)


def gcd_primitive(f, g):
    """Primitive gcd over Z (Euclid over Q, then primitive part)."""
    a, b = _to_fraction_list(f), _to_fraction_list(g)
    while any(b):
        _, r = _frac_divmod(a, b)
        a, b = b, r
    return _from_fraction_list(a)


def squarefree_decomposition(f):
    """Yun's algorithm: primitive f > 0 as prod_i h_i^i with h_i primitive.

    Returns a list of (h_i, i) pairs, squarefree h_i, skipping trivial
    factors.  Requires a primitive input with positive leading term.
    """
    if not f.is_primitive():
        raise ValueError("squarefree_decomposition expects a primitive polynomial")
    if f.degree == 0:
        return []
    out = []
    g = gcd_primitive(f, f.derivative())
    w = exact_div(f, g)
    i = 1
    while w.degree > 0:
        y = gcd_primitive(w, g)
        factor = exact_div(w, y)
        if factor.degree > 0:
            out.append((factor.primitive(), i))
        w = y
        g = exact_div(g, y)
        i += 1
    return out


def rational_roots(f):
    """All rational roots with multiplicity, plus the rootless cofactor.

    Returns (roots, g) where roots is a list of (Fraction, multiplicity)
    and g is the primitive polynomial left after dividing the roots out.
    Assumes f(0) != 0 (strip t powers first).
    """
    if f.is_zero() or f.constant == 0:
        raise ValueError("rational_roots expects a nonzero constant term")
    g = f.primitive()
    roots = []
    for p in sorted(_divisors(abs(g.constant))):
        for q in sorted(_divisors(abs(g.leading))):
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                mult = 0
                while g.degree > 0 and g.eval_fraction(cand) == 0:
                    lin = IntPolynomial([-cand.numerator, cand.denominator])
                    g = exact_div(g, lin).primitive()
                    mult += 1
                if mult:
                    roots.append((cand, mult))
    return roots, g


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out
