"""Words over {a, b}, continued fractions and q-polynomials.

Words are plain Python strings over the alphabet ``{"a", "b"}``.  Positions
are 1-indexed in documentation and 0-indexed in code, so the "odd" positions
of a word are the even Python indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

ALPHABET = frozenset("ab")


class InvalidWord(ValueError):
    pass


def check_word(w: str) -> str:
    if not isinstance(w, str):
        raise InvalidWord(f"word must be a string, got {type(w).__name__}")
    bad = set(w) - ALPHABET
    if bad:
        raise InvalidWord(f"word {w!r} contains letters outside {{a,b}}: {sorted(bad)}")
    return w


def star(letter: str) -> str:
    return "b" if letter == "a" else "a"


def dual_word(w: str) -> str:
    """Swap the letters at odd (1-indexed) positions."""
    check_word(w)
    return "".join(star(c) if i % 2 == 0 else c for i, c in enumerate(w))


def transpose_word(w: str) -> str:
    return "".join(star(c) for c in check_word(w))


def reverse_word(w: str) -> str:
    return check_word(w)[::-1]


def conjugate_word(w: str) -> str:
    return transpose_word(reverse_word(w))


def is_straight(w: str) -> bool:
    return len(set(check_word(w))) <= 1


def is_zigzag(w: str) -> bool:
    check_word(w)
    return "aa" not in w and "bb" not in w


def word_predicates(w: str) -> dict:
    """Boolean shape predicates of a word.

    ``symmetric`` means the word is a palindrome and ``self_conjugate`` means
    reversing and swapping every letter gives the word back.
    """
    check_word(w)
    return {
        "straight": is_straight(w),
        "zigzag": is_zigzag(w),
        "symmetric": reverse_word(w) == w,
        "self_conjugate": conjugate_word(w) == w,
    }


def all_words(max_len: int, min_len: int = 0) -> list[str]:
    """All words with ``min_len <= len <= max_len`` in length-then-lex order."""
    out = [""] if min_len == 0 else []
    layer = [""]
    for length in range(1, max_len + 1):
        layer = [u + c for u in layer for c in "ab"]
        if length >= min_len:
            out.extend(layer)
    return out


# ---------------------------------------------------------------- fractions

def _check_cf(cf: Sequence[int]) -> list[int]:
    entries = list(cf)
    if not entries:
        raise ValueError("continued fraction needs at least one entry")
    for e in entries:
        if not isinstance(e, int) or e < 1:
            raise ValueError(f"continued fraction entries must be positive integers: {entries}")
    return entries


def cf_value(cf: Sequence[int]) -> Fraction:
    entries = _check_cf(cf)
    value = Fraction(entries[-1])
    for e in reversed(entries[:-1]):
        value = e + 1 / value
    return value


def cf_dual(cf: Sequence[int]) -> list[int]:
    """Write each entry as a sum of ones, then swap every ',' with '+'.

    The result is not normalized, so applying this twice returns the input.
    """
    entries = _check_cf(cf)
    # separators between consecutive ones: True for ',' and False for '+'
    seps: list[bool] = []
    for idx, e in enumerate(entries):
        seps.extend([False] * (e - 1))
        if idx < len(entries) - 1:
            seps.append(True)
    out = [1]
    for is_comma in seps:
        if is_comma:
            out[-1] += 1
        else:
            out.append(1)
    return out


def cf_normalize(cf: Sequence[int]) -> list[int]:
    """Fold a trailing 1 into the previous entry: [.., a, 1] -> [.., a+1]."""
    entries = _check_cf(cf)
    if len(entries) > 1 and entries[-1] == 1:
        return entries[:-2] + [entries[-2] + 1]
    return entries


def fibonacci(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


# ---------------------------------------------------------------- q-polynomials

@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in q, stored as coefficients by degree."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> "QPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coef: int = 1) -> "QPolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls((0,) * degree + (coef,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "QPolynomial | int") -> "QPolynomial":
        other = _as_qpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPolynomial(tuple(self[i] + other[i] for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QPolynomial | int") -> "QPolynomial":
        return self + (-_as_qpoly(other))

    def __mul__(self, other: "QPolynomial | int") -> "QPolynomial":
        other = _as_qpoly(other)
        if self.is_zero() or other.is_zero():
            return QPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QPolynomial":
        out = QPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "QPolynomial":
        """Multiply by q^k (k may be negative if the low coefficients vanish)."""
        if k >= 0:
            return QPolynomial((0,) * k + self.coeffs)
        if any(self.coeffs[: -k]):
            raise ValueError("shift would produce negative powers of q")
        return QPolynomial(self.coeffs[-k:])

    def reversed(self, degree: int | None = None) -> "QPolynomial":
        """q^degree * p(1/q); degree defaults to deg p."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("degree too small for reversal")
        return QPolynomial(tuple(self[d - i] for i in range(d + 1)))

    def divmod(self, other: "QPolynomial") -> tuple["QPolynomial", "QPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - len(other.coeffs) + 1, 0)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + other.degree]
            if c % lead:
                raise ArithmeticError("non-integral polynomial division")
            c //= lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return QPolynomial(tuple(quot)), QPolynomial(tuple(rem))

    def exact_div(self, other: "QPolynomial") -> "QPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division left a nonzero remainder")
        return q

    def __call__(self, q):
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "q"
            else:
                mono = f"q^{k}"
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _as_qpoly(x: "QPolynomial | int") -> QPolynomial:
    if isinstance(x, QPolynomial):
        return x
    if isinstance(x, int):
        return QPolynomial((x,))
    raise TypeError(f"cannot combine QPolynomial with {type(x).__name__}")


ONE = QPolynomial((1,))
ZERO = QPolynomial()


def q_number(m: int) -> QPolynomial:
    """[m]_q = 1 + q + ... + q^(m-1); [0]_q = 0."""
    if m < 0:
        raise ValueError("q_number needs m >= 0")
    return QPolynomial((1,) * m)


def q_binomial(n: int, k: int) -> QPolynomial:
    """Gaussian binomial via the q-Pascal recurrence."""
    if not 0 <= k <= n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    # row[j] = [i choose j]_q
    row = [ONE]
    for i in range(1, n + 1):
        new = [ONE]
        for j in range(1, i):
            new.append(row[j - 1] + row[j].shift(j))
        new.append(ONE)
        row = new
    return row[k]


def q_factorial(n: int) -> QPolynomial:
    out = ONE
    for m in range(1, n + 1):
        out = out * q_number(m)
    return out
