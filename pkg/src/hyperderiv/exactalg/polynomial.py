"""Sparse weighted polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Union

from .variables import X, VarId

Rational = Fraction
Monomial = tuple  # sorted tuple of (VarId, exponent) pairs
Scalar = Union[int, Fraction]

UNIT: Monomial = ()


class GenusMismatch(ValueError):
    pass


@lru_cache(maxsize=1 << 20)
def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def mono_weight(m: Monomial) -> int:
    return sum(v.weight * e for v, e in m)


@lru_cache(maxsize=1 << 18)
def mono_partials(m: Monomial) -> tuple:
    """For each variable v of ``m``: (v, exponent, m / v)."""
    out = []
    for k, (v, e) in enumerate(m):
        rest = m[:k] + ((v, e - 1),) + m[k + 1:] if e > 1 else m[:k] + m[k + 1:]
        out.append((v, e, rest))
    return tuple(out)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_divides(d: Monomial, m: Monomial) -> bool:
    dm = dict(m)
    return all(dm.get(v, 0) >= e for v, e in d)


def mono_div(m: Monomial, d: Monomial) -> Monomial:
    dm = dict(m)
    for v, e in d:
        dm[v] -= e
    return tuple((v, e) for v, e in sorted(dm.items()) if e)


def order_key(m: Monomial) -> tuple:
    """Canonical print order key: descending weight, then the monomial with
    the larger highest variable (and, on ties, the larger exponent) first."""
    return (-mono_weight(m),
            tuple((-v.kind, -v.a, -v.b, -e) for v, e in reversed(m)))


def _lex_key(m: Monomial) -> tuple:
    # pure lex with x[1,1] > x[2,1] > ... ; used for leading terms in division
    return tuple(x for v, e in m for x in (-v.kind, -v.a, -v.b, e))


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable polynomial ``{monomial: Fraction}`` in an ambient genus.

    The genus is ``None`` for elements of the free differential ring, which
    only use ``f(n)`` symbols.
    """

    __slots__ = ("terms", "genus", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None,
                 genus: int | None = None, *, _trusted: bool = False):
        if _trusted:
            self.terms = terms
        else:
            self.terms = {m: _as_fraction(c) for m, c in (terms or {}).items() if c != 0}
        self.genus = genus
        self._hash = None

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, genus: int | None = None) -> "Polynomial":
        return cls({}, genus, _trusted=True)

    @classmethod
    def const(cls, c: Scalar, genus: int | None = None) -> "Polynomial":
        return cls({UNIT: c}, genus)

    @classmethod
    def var(cls, v: VarId, genus: int | None = None, coeff: Scalar = 1) -> "Polynomial":
        return cls({((v, 1),): coeff}, genus)

    @classmethod
    def monomial(cls, m: Monomial, genus: int | None = None, coeff: Scalar = 1) -> "Polynomial":
        return cls({m: coeff}, genus)

    # basic protocol -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {UNIT: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .serialize import serialize
        return f"Polynomial({serialize(self)!r})"

    def __str__(self) -> str:
        from .serialize import serialize
        return serialize(self)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.genus != self.genus:
                raise GenusMismatch(f"genus {self.genus} vs {other.genus}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.genus)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out, self.genus, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()}, self.genus, _trusted=True)

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, (Polynomial, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        if c == 0:
            return Polynomial.zero(self.genus)
        c = _as_fraction(c)
        return Polynomial({m: c * v for m, v in self.terms.items()}, self.genus, _trusted=True)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial({m: c for m, c in out.items() if c}, self.genus, _trusted=True)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "Polynomial":
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return self.scale(Fraction(1) / c)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.const(1, self.genus)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # inspection -----------------------------------------------------------
    def weight(self) -> int | None:
        """The common weight of all monomials; None if the polynomial is not
        weight-homogeneous (the zero polynomial has no unique weight)."""
        ws = {mono_weight(m) for m in self.terms}
        return ws.pop() if len(ws) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({mono_weight(m) for m in self.terms}) <= 1

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v, _ in m}

    def degree(self, kinds: Iterable[int] | None = None) -> int:
        """Total degree, optionally counting only the given variable kinds."""
        if not self.terms:
            return -1
        kinds = None if kinds is None else set(kinds)
        return max(sum(e for v, e in m if kinds is None or v.kind in kinds)
                   for m in self.terms)

    def degree_in(self, v: VarId) -> int:
        return max((e for m in self.terms for u, e in m if u == v), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get(UNIT, Fraction(0))

    def is_constant(self) -> bool:
        return all(m == UNIT for m in self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    # calculus and substitution -------------------------------------------
    def diff(self, v: VarId) -> "Polynomial":
        out: dict = {}
        for m, c in self.terms.items():
            for u, e, rest in mono_partials(m):
                if u == v:
                    out[rest] = out.get(rest, 0) + c * e
        return Polynomial({m: c for m, c in out.items() if c}, self.genus, _trusted=True)

    def split_linear(self, v: VarId) -> tuple["Polynomial", "Polynomial"]:
        """Write ``self = a*v + b`` with a, b free of v; requires degree <= 1 in v."""
        a: dict = {}
        b: dict = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == 0:
                b[m] = c
            elif e == 1:
                a[tuple(p for p in m if p[0] != v)] = c
            else:
                raise ValueError(f"{v} appears non-linearly")
        return (Polynomial(a, self.genus, _trusted=True),
                Polynomial(b, self.genus, _trusted=True))

    def subs(self, mapping: Mapping[VarId, "Polynomial"], genus: int | None = ...) -> "Polynomial":
        """Substitute polynomials for variables; unmapped variables stay."""
        target = self.genus if genus is ... else genus
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                p = mapping[v]
                powers[key] = p if e == 1 else p ** e
            return powers[key]

        acc: dict = {}
        for m, c in self.terms.items():
            keep = tuple((v, e) for v, e in m if v not in mapping)
            term = Polynomial({keep: c}, target, _trusted=True)
            for v, e in m:
                if v in mapping:
                    term = term * Polynomial(power(v, e).terms, target, _trusted=True)
            for mm, cc in term.terms.items():
                acc[mm] = acc.get(mm, 0) + cc
        return Polynomial({m: c for m, c in acc.items() if c}, target, _trusted=True)

    def evaluate(self, values: Mapping[VarId, object]):
        """Evaluate at a point; every variable must be assigned. The result has
        the arithmetic type of the supplied values (exact for Fractions)."""
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t = t * values[v] ** e
            total = total + t
        return total

    def with_genus(self, genus: int | None) -> "Polynomial":
        return Polynomial(self.terms, genus, _trusted=True)

    # division -------------------------------------------------------------
    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=_lex_key)

    def divmod(self, q: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Multivariate division by a single divisor in lex order.

        The remainder is zero iff ``q`` divides ``self``.
        """
        q = self._coerce(q)
        if q.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lm_q = q.leading_monomial()
        lc_q = q.terms[lm_q]
        rest = dict(self.terms)
        quot: dict = {}
        rem: dict = {}
        while rest:
            lm = max(rest, key=_lex_key)
            lc = rest[lm]
            if mono_divides(lm_q, lm):
                t = mono_div(lm, lm_q)
                f = lc / lc_q
                quot[t] = quot.get(t, 0) + f
                for m, c in q.terms.items():
                    mm = mono_mul(t, m)
                    s = rest.get(mm, 0) - f * c
                    if s:
                        rest[mm] = s
                    else:
                        rest.pop(mm, None)
            else:
                rem[lm] = lc
                del rest[lm]
        return (Polynomial({m: c for m, c in quot.items() if c}, self.genus, _trusted=True),
                Polynomial(rem, self.genus, _trusted=True))

    def exact_div(self, q: "Polynomial") -> "Polynomial":
        quot, rem = self.divmod(q)
        if rem:
            raise ArithmeticError("division is not exact")
        return quot


def apply_images(images: Mapping[VarId, Polynomial] | Callable[[VarId], Polynomial | None],
                 p: Polynomial, genus: int | None = ...) -> Polynomial:
    """Apply the derivation determined by ``images`` (v -> D(v)) to ``p``.

    Variables with no image are treated as constants.
    """
    target = p.genus if genus is ... else genus
    lookup = images if callable(images) else images.get
    out: dict = {}
    cache: dict = {}
    for m, c in p.terms.items():
        for v, e, rest in mono_partials(m):
            if v in cache:
                img = cache[v]
            else:
                img = cache[v] = lookup(v)
            if not img:
                continue
            ce = c * e
            for mi, ci in img.terms.items():
                mm = mono_mul(rest, mi)
                out[mm] = out.get(mm, 0) + ce * ci
    return Polynomial({m: c for m, c in out.items() if c}, target, _trusted=True)


def monomial_basis(weight: int, alphabet: Iterable[VarId]) -> list[Monomial]:
    """All monomials of exact ``weight`` over ``alphabet`` in canonical order."""
    if weight < 0:
        return []
    vars_ = sorted(set(alphabet))
    out: list[Monomial] = []

    def rec(k: int, remaining: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if k == len(vars_):
            return
        v = vars_[k]
        w = v.weight
        e = remaining // w
        while e >= 0:
            if e:
                acc.append((v, e))
            rec(k + 1, remaining - e * w, acc)
            if e:
                acc.pop()
            e -= 1

    rec(0, weight, [])
    out.sort(key=order_key)
    return out


def only_kinds(p: Polynomial, kinds: Iterable[int]) -> bool:
    kinds = set(kinds)
    return all(v.kind in kinds for v in p.variables())


def x_only(p: Polynomial) -> bool:
    return only_kinds(p, (X,))
