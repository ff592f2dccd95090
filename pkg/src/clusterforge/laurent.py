"""Exact integer Laurent polynomials in named variables.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with nonzero
exponents; a polynomial maps monomials to nonzero integer coefficients.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

Monomial = tuple  # tuple[tuple[str, int], ...]


class ExactDivisionFailed(ArithmeticError):
    pass


_NUM_SPLIT = re.compile(r"(\d+)")


def var_sort_key(name: str):
    """Natural ordering so that x2 sorts before x10."""
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in _NUM_SPLIT.split(name) if p)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            d.pop(v, None)
    return tuple(sorted(d.items()))


def _mono_inv(m: Monomial) -> Monomial:
    return tuple((v, -e) for v, e in m)


def _mono_pow(m: Monomial, k: int) -> Monomial:
    if k == 0:
        return ()
    return tuple((v, e * k) for v, e in m)


class Laurent:
    """Immutable integer Laurent polynomial."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = clean.get(m, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction ---------------------------------------------------
    @classmethod
    def var(cls, name: str, power: int = 1) -> "Laurent":
        return cls({((name, power),) if power else (): 1})

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({(): c})

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Iterable[tuple[str, int]], coef: int = 1) -> "Laurent":
        items = exps.items() if isinstance(exps, Mapping) else exps
        d: dict[str, int] = {}
        for v, e in items:
            d[v] = d.get(v, 0) + e
        return cls({tuple(sorted((v, e) for v, e in d.items() if e)): coef})

    @classmethod
    def product_of(cls, names: Iterable[str]) -> "Laurent":
        return cls.monomial([(n, 1) for n in names])

    # access ---------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> list[str]:
        names = {v for m in self._terms for v, _ in m}
        return sorted(names, key=var_sort_key)

    def coefficients_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def denominator_vars(self) -> set[str]:
        return {v for m in self._terms for v, e in m if e < 0}

    def min_exponent(self, v: str) -> int:
        return min((dict(m).get(v, 0) for m in self._terms), default=0)

    def max_exponent(self, v: str) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=0)

    def only_monomial(self) -> tuple[Monomial, int]:
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        return next(iter(self._terms.items()))

    # arithmetic -----------------------------------------------------
    def __add__(self, other) -> "Laurent":
        other = _as_laurent(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Laurent":
        return self + (-_as_laurent(other))

    def __rsub__(self, other) -> "Laurent":
        return _as_laurent(other) - self

    def __mul__(self, other) -> "Laurent":
        other = _as_laurent(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Laurent":
        if k < 0:
            if not self.is_monomial():
                raise ExactDivisionFailed("negative power of a non-monomial")
            m, c = self.only_monomial()
            if c not in (1, -1):
                raise ExactDivisionFailed("negative power of a non-unit coefficient")
            return Laurent({_mono_pow(m, k): c ** (-k)})
        out = Laurent.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other) -> "Laurent":
        return exact_divide(self, _as_laurent(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def substitute(self, values: Mapping[str, "Laurent"]) -> "Laurent":
        """Replace variables by Laurent polynomials (negative powers need monomials)."""
        total = Laurent()
        for m, c in self._terms.items():
            term = Laurent.const(c)
            for v, e in m:
                if v in values:
                    term = term * (values[v] ** e)
                else:
                    term = term * Laurent.var(v, e)
            total = total + term
        return total

    def evaluate(self, values: Mapping[str, object]):
        """Numeric evaluation, e.g. with Fractions."""
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t = t * values[v] ** e
            total = total + t
        return total

    # presentation ---------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        vs = self.variables()

        def key(item):
            d = dict(item[0])
            return tuple(-d.get(v, 0) for v in vs)

        return sorted(self._terms.items(), key=key)

    def to_json(self, variables: list[str] | None = None) -> dict:
        vs = variables if variables is not None else self.variables()
        terms = []
        for m, c in self._terms.items():
            d = dict(m)
            terms.append({"coef": c, "exps": [d.get(v, 0) for v in vs]})
        terms.sort(key=lambda t: t["exps"])
        return {"vars": list(vs), "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Laurent":
        vs = data["vars"]
        out: dict[Monomial, int] = {}
        for t in data["terms"]:
            m = tuple(sorted((v, e) for v, e in zip(vs, t["exps"]) if e))
            out[m] = out.get(m, 0) + t["coef"]
        return cls(out)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            num = [f"{v}^{e}" if e > 1 else v for v, e in sorted(m, key=lambda p: var_sort_key(p[0])) if e > 0]
            den = [f"{v}^{-e}" if e < -1 else v for v, e in sorted(m, key=lambda p: var_sort_key(p[0])) if e < 0]
            body = "*".join(num) if num else ""
            if abs(c) != 1 or not body:
                body = f"{abs(c)}*{body}" if body else str(abs(c))
            if den:
                body += "/" + ("(" + "*".join(den) + ")" if len(den) > 1 else den[0])
            pieces.append(("-" if c < 0 else "+", body))
        text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for s, b in pieces[1:]:
            text += f" {s} {b}"
        return text

    def __repr__(self) -> str:
        return f"Laurent({self})"


def _as_laurent(x) -> Laurent:
    if isinstance(x, Laurent):
        return x
    if isinstance(x, int):
        return Laurent.const(x)
    raise TypeError(f"cannot combine Laurent with {type(x).__name__}")


def _lex_key(m: Monomial, order: list[str]):
    d = dict(m)
    return tuple(d.get(v, 0) for v in order)


def exact_divide(f: Laurent, g: Laurent) -> Laurent:
    """Return h with f == g*h, or raise ExactDivisionFailed.

    Lex leading-term division.  Exponent bounds of the quotient are known in
    advance (per-variable max/min degrees add under multiplication), which
    guarantees termination when no exact quotient exists.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if f.is_zero():
        return Laurent()
    if g.is_monomial():
        m, c = g.only_monomial()
        inv = _mono_inv(m)
        out = {}
        for fm, fc in f.items():
            if fc % c:
                raise ExactDivisionFailed(f"coefficient {fc} not divisible by {c}")
            out[_mono_mul(fm, inv)] = fc // c
        return Laurent(out)
    order = sorted(set(f.variables()) | set(g.variables()), key=var_sort_key)
    hi = {v: f.max_exponent(v) - g.max_exponent(v) for v in order}
    lo = {v: f.min_exponent(v) - g.min_exponent(v) for v in order}
    if any(lo[v] > hi[v] for v in order):
        raise ExactDivisionFailed("degree bounds rule out an exact quotient")
    g_items = list(g.items())
    g_lead, g_lc = max(g_items, key=lambda it: _lex_key(it[0], order))
    g_inv = _mono_inv(g_lead)
    rem = dict(f.terms)
    quot: dict[Monomial, int] = {}
    while rem:
        lead = max(rem, key=lambda m: _lex_key(m, order))
        c = rem[lead]
        if c % g_lc:
            raise ExactDivisionFailed("leading coefficient not divisible")
        qm = _mono_mul(lead, g_inv)
        qd = dict(qm)
        if any(not lo[v] <= qd.get(v, 0) <= hi[v] for v in order):
            raise ExactDivisionFailed("quotient term escapes degree bounds")
        qc = c // g_lc
        quot[qm] = quot.get(qm, 0) + qc
        for gm, gc in g_items:
            m = _mono_mul(qm, gm)
            v = rem.get(m, 0) - qc * gc
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Laurent(quot)


def x(i) -> Laurent:
    """Shorthand for the variable ``x{i}``."""
    return Laurent.var(f"x{i}")


def xs(*labels) -> Laurent:
    return Laurent.product_of(f"x{i}" for i in labels)
