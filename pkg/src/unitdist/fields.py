"""Exact arithmetic in towers of real quadratic extensions of the rationals.

A :class:`FieldTower` is a chain Q = K_0 < K_1 < ... < K_t where each level
adjoins the square root of a positive element of the level below that is not
already a square there.  A :class:`ConstructibleNumber` is an element of some
tower, stored as nested pairs ``a + b*sqrt(d)`` bottoming out in
:class:`fractions.Fraction`.  Every predicate that matters downstream
(zero test, sign, comparison) is decided exactly; floating point never
enters the representation.  Rational interval enclosures of arbitrary
precision are available for display and for fast numeric pre-filtering.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Union

Rational = Union[int, Fraction]

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


class FieldError(ValueError):
    """Structural misuse of towers or their elements."""


class NegativeRadicandError(FieldError):
    """Square root of a negative value requested."""


class ZeroReciprocalError(ZeroDivisionError):
    """Reciprocal of the zero element requested."""


# ---------------------------------------------------------------------------
# internal representation: Fraction at depth 0, (a, b) pairs above,
# where (a, b) at depth k means a + b*sqrt(rads[k-1])
# ---------------------------------------------------------------------------

def _zero_rep(depth: int):
    rep = Fraction(0)
    for _ in range(depth):
        rep = (rep, rep)
    return rep


def _lift_rep(rep, from_depth: int, to_depth: int):
    for k in range(from_depth, to_depth):
        rep = (rep, _zero_rep(k))
    return rep


def _is_zero_rep(rep, depth: int) -> bool:
    if depth == 0:
        return rep == 0
    return _is_zero_rep(rep[0], depth - 1) and _is_zero_rep(rep[1], depth - 1)


def _add_rep(x, y, depth: int):
    if depth == 0:
        return x + y
    return (_add_rep(x[0], y[0], depth - 1), _add_rep(x[1], y[1], depth - 1))


def _neg_rep(x, depth: int):
    if depth == 0:
        return -x
    return (_neg_rep(x[0], depth - 1), _neg_rep(x[1], depth - 1))


def _sub_rep(x, y, depth: int):
    if depth == 0:
        return x - y
    return (_sub_rep(x[0], y[0], depth - 1), _sub_rep(x[1], y[1], depth - 1))


def _scale_rep(x, c: Fraction, depth: int):
    if depth == 0:
        return x * c
    return (_scale_rep(x[0], c, depth - 1), _scale_rep(x[1], c, depth - 1))


def _mul_rep(x, y, depth: int, rads):
    if depth == 0:
        return x * y
    a, b = x
    c, d = y
    k = depth - 1
    bzero = _is_zero_rep(b, k)
    dzero = _is_zero_rep(d, k)
    ac = _mul_rep(a, c, k, rads)
    if bzero and dzero:
        return (ac, _zero_rep(k))
    if bzero:
        return (ac, _mul_rep(a, d, k, rads))
    if dzero:
        return (ac, _mul_rep(b, c, k, rads))
    bd = _mul_rep(b, d, k, rads)
    cross = _sub_rep(
        _mul_rep(_add_rep(a, b, k), _add_rep(c, d, k), k, rads),
        _add_rep(ac, bd, k),
        k,
    )
    return (_add_rep(ac, _mul_rep(bd, rads[k], k, rads), k), cross)


def _sq_rep(x, depth: int, rads):
    if depth == 0:
        return x * x
    a, b = x
    k = depth - 1
    if _is_zero_rep(b, k):
        return (_sq_rep(a, k, rads), _zero_rep(k))
    a2 = _sq_rep(a, k, rads)
    b2 = _sq_rep(b, k, rads)
    ab = _mul_rep(a, b, k, rads)
    return (_add_rep(a2, _mul_rep(b2, rads[k], k, rads), k), _add_rep(ab, ab, k))


def _recip_rep(x, depth: int, rads):
    if depth == 0:
        if x == 0:
            raise ZeroReciprocalError("reciprocal of zero")
        return Fraction(1) / x
    a, b = x
    k = depth - 1
    if _is_zero_rep(b, k):
        return (_recip_rep(a, k, rads), _zero_rep(k))
    norm = _sub_rep(_sq_rep(a, k, rads), _mul_rep(_sq_rep(b, k, rads), rads[k], k, rads), k)
    # norm = 0 would make sqrt(d) rational at its level, excluded by construction
    r = _recip_rep(norm, k, rads)
    return (_mul_rep(a, r, k, rads), _neg_rep(_mul_rep(b, r, k, rads), k))


def _sign_rep(x, depth: int, rads) -> int:
    if depth == 0:
        return (x > 0) - (x < 0)
    a, b = x
    k = depth - 1
    sb = _sign_rep(b, k, rads)
    if sb == 0:
        return _sign_rep(a, k, rads)
    sa = _sign_rep(a, k, rads)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    cmp = _sign_rep(
        _sub_rep(_sq_rep(a, k, rads), _mul_rep(_sq_rep(b, k, rads), rads[k], k, rads), k),
        k,
        rads,
    )
    if cmp == 0:
        raise FieldError("degenerate tower: radicand is a square at its level")
    return sa if cmp > 0 else sb


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    pn, qn = x.numerator, x.denominator
    rp, rq = isqrt(pn), isqrt(qn)
    if rp * rp == pn and rq * rq == qn:
        return Fraction(rp, rq)
    return None


def _try_sqrt_rep(x, depth: int, rads):
    """Exact square root of x within its level, or None if x is not a square there."""
    if depth == 0:
        return _rational_sqrt(x)
    a, b = x
    k = depth - 1
    d = rads[k]
    if _is_zero_rep(b, k):
        r = _try_sqrt_rep(a, k, rads)
        if r is not None:
            return (r, _zero_rep(k))
        # a = t*d with t a square gives sqrt(a) = sqrt(t)*sqrt(d)
        t = _mul_rep(a, _recip_rep(d, k, rads), k, rads)
        r = _try_sqrt_rep(t, k, rads)
        if r is not None:
            return (_zero_rep(k), r)
        return None
    disc = _sub_rep(_sq_rep(a, k, rads), _mul_rep(_sq_rep(b, k, rads), d, k, rads), k)
    s = _try_sqrt_rep(disc, k, rads)
    if s is None:
        return None
    half = Fraction(1, 2)
    for ss in (s, _neg_rep(s, k)):
        cand = _scale_rep(_add_rep(a, ss, k), half, k)
        p = _try_sqrt_rep(cand, k, rads)
        if p is None or _is_zero_rep(p, k):
            continue
        q = _scale_rep(_mul_rep(b, _recip_rep(p, k, rads), k, rads), half, k)
        root = (p, q)
        if _is_zero_rep(_sub_rep(_sq_rep(root, depth, rads), x, depth), depth):
            return root
    return None


# ---------------------------------------------------------------------------
# rational interval arithmetic with outward dyadic rounding
# ---------------------------------------------------------------------------

def _round_down(x: Fraction, scale: int) -> Fraction:
    return Fraction(x.numerator * scale // x.denominator, scale)


def _round_up(x: Fraction, scale: int) -> Fraction:
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


def _iv_make(lo: Fraction, hi: Fraction, scale: int):
    return (_round_down(lo, scale), _round_up(hi, scale))


def _iv_add(a, b, scale):
    return _iv_make(a[0] + b[0], a[1] + b[1], scale)


def _iv_mul(a, b, scale):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return _iv_make(min(prods), max(prods), scale)


def _iv_sqrt(a, scale):
    lo = max(a[0], Fraction(0))
    n_lo = (lo.numerator * scale * scale) // lo.denominator
    r_lo = isqrt(n_lo)
    hi = a[1]
    if hi < 0:
        raise NegativeRadicandError("interval sqrt of negative range")
    n_hi = -((-hi.numerator * scale * scale) // hi.denominator)
    r_hi = isqrt(n_hi)
    if r_hi * r_hi < n_hi:
        r_hi += 1
    return (Fraction(r_lo, scale), Fraction(r_hi, scale))


def _eval_iv(rep, depth: int, tower: "FieldTower", scale: int):
    if depth == 0:
        return _iv_make(rep, rep, scale)
    a, b = rep
    k = depth - 1
    if _is_zero_rep(b, k):
        return _eval_iv(a, k, tower, scale)
    sq = tower._sqrt_interval(k, scale)
    return _iv_add(_eval_iv(a, k, tower, scale), _iv_mul(_eval_iv(b, k, tower, scale), sq, scale), scale)


# ---------------------------------------------------------------------------
# public classes
# ---------------------------------------------------------------------------

class FieldTower:
    """Immutable chain of real quadratic extensions of Q.

    ``rads[i]`` is the adjoined radicand of level ``i+1``: an element of the
    tower truncated to depth ``i``, positive and not a square there.
    """

    __slots__ = ("_rads", "_iv_cache")

    def __init__(self, _rads: tuple = ()):
        self._rads = _rads
        self._iv_cache: dict = {}

    @property
    def depth(self) -> int:
        return len(self._rads)

    @property
    def radicands(self) -> tuple["ConstructibleNumber", ...]:
        return tuple(
            ConstructibleNumber(FieldTower(self._rads[:i]), rep)
            for i, rep in enumerate(self._rads)
        )

    def extend(self, radicand: "ConstructibleNumber") -> "FieldTower":
        """Adjoin sqrt(radicand); the radicand must be positive and not a square here."""
        rep = self._coerce_rep(radicand)
        if _sign_rep(rep, self.depth, self._rads) <= 0:
            raise NegativeRadicandError("radicand must be positive")
        if _try_sqrt_rep(rep, self.depth, self._rads) is not None:
            raise FieldError("radicand is already a square at its level")
        return FieldTower(self._rads + (rep,))

    def element(self, value: Rational) -> "ConstructibleNumber":
        return ConstructibleNumber(self, _lift_rep(Fraction(value), 0, self.depth))

    def _coerce_rep(self, x: "ConstructibleNumber"):
        if x.tower == self:
            return x._rep
        if x.tower.is_prefix_of(self):
            return _lift_rep(x._rep, x.tower.depth, self.depth)
        raise FieldError("element does not live in this tower")

    def is_prefix_of(self, other: "FieldTower") -> bool:
        return self._rads == other._rads[: len(self._rads)]

    def _sqrt_interval(self, level: int, scale: int):
        key = (level, scale)
        got = self._iv_cache.get(key)
        if got is None:
            rad_iv = _eval_iv(self._rads[level], level, self, scale)
            got = _iv_sqrt(rad_iv, scale)
            self._iv_cache[key] = got
        return got

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FieldTower) and self._rads == other._rads

    def __hash__(self) -> int:
        return hash(("FieldTower", _tower_key(self._rads)))

    def __repr__(self) -> str:
        if not self._rads:
            return "Q"
        names = ", ".join(
            "sqrt(%s)" % _expr_rep(rep, i, self._rads) for i, rep in enumerate(self._rads)
        )
        return f"Q({names})"


def _tower_key(rads) -> tuple:
    def freeze(rep):
        if isinstance(rep, Fraction):
            return rep
        return (freeze(rep[0]), freeze(rep[1]))
    return tuple(freeze(r) for r in rads)


ROOT = FieldTower()


class ConstructibleNumber:
    """Element of a :class:`FieldTower`; exact field arithmetic and exact sign."""

    __slots__ = ("tower", "_rep", "_iv", "_float")

    def __init__(self, tower: FieldTower, rep):
        self.tower = tower
        self._rep = rep
        self._iv = None
        self._float = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def from_rational(value: Rational) -> "ConstructibleNumber":
        return ConstructibleNumber(ROOT, Fraction(value))

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return _is_zero_rep(self._rep, self.tower.depth)

    def sign(self) -> int:
        return _sign_rep(self._rep, self.tower.depth, self.tower._rads)

    def is_rational(self) -> bool:
        rep, depth = self._rep, self.tower.depth
        while depth > 0:
            if not _is_zero_rep(rep[1], depth - 1):
                return False
            rep, depth = rep[0], depth - 1
        return True

    def as_rational(self) -> Fraction:
        rep, depth = self._rep, self.tower.depth
        while depth > 0:
            if not _is_zero_rep(rep[1], depth - 1):
                raise FieldError("value is irrational")
            rep, depth = rep[0], depth - 1
        return rep

    # -- arithmetic ----------------------------------------------------------

    def _binary(self, other):
        if isinstance(other, (int, Fraction)):
            other = ConstructibleNumber(self.tower, _lift_rep(Fraction(other), 0, self.tower.depth))
        if not isinstance(other, ConstructibleNumber):
            return None, None, None
        if self.tower == other.tower:
            return self.tower, self._rep, other._rep
        if self.tower.is_prefix_of(other.tower):
            return other.tower, _lift_rep(self._rep, self.tower.depth, other.tower.depth), other._rep
        if other.tower.is_prefix_of(self.tower):
            return self.tower, self._rep, _lift_rep(other._rep, other.tower.depth, self.tower.depth)
        merged, images = _merge_towers(self.tower, other.tower)
        return merged, merged._coerce_rep(self), _transport_rep(other._rep, other.tower.depth, images, merged)

    def __add__(self, other):
        tower, x, y = self._binary(other)
        if tower is None:
            return NotImplemented
        return ConstructibleNumber(tower, _add_rep(x, y, tower.depth))

    __radd__ = __add__

    def __sub__(self, other):
        tower, x, y = self._binary(other)
        if tower is None:
            return NotImplemented
        return ConstructibleNumber(tower, _sub_rep(x, y, tower.depth))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ConstructibleNumber(self.tower, _neg_rep(self._rep, self.tower.depth))

    def __mul__(self, other):
        tower, x, y = self._binary(other)
        if tower is None:
            return NotImplemented
        return ConstructibleNumber(tower, _mul_rep(x, y, tower.depth, tower._rads))

    __rmul__ = __mul__

    def reciprocal(self) -> "ConstructibleNumber":
        if self.is_zero():
            raise ZeroReciprocalError("reciprocal of zero")
        return ConstructibleNumber(self.tower, _recip_rep(self._rep, self.tower.depth, self.tower._rads))

    def __truediv__(self, other):
        tower, x, y = self._binary(other)
        if tower is None:
            return NotImplemented
        if _is_zero_rep(y, tower.depth):
            raise ZeroReciprocalError("division by zero")
        return ConstructibleNumber(tower, _mul_rep(x, _recip_rep(y, tower.depth, tower._rads), tower.depth, tower._rads))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def square(self) -> "ConstructibleNumber":
        return ConstructibleNumber(self.tower, _sq_rep(self._rep, self.tower.depth, self.tower._rads))

    def sqrt(self) -> "ConstructibleNumber":
        return sqrt_extend(self)[1]

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        tower, x, y = self._binary(other)
        if tower is None:
            return NotImplemented
        return _is_zero_rep(_sub_rep(x, y, tower.depth), tower.depth)

    __hash__ = None  # semantic equality across towers; not hashable

    def _cmp_sign(self, other) -> int:
        tower, x, y = self._binary(other)
        if tower is None:
            raise TypeError("cannot compare")
        return _sign_rep(_sub_rep(x, y, tower.depth), tower.depth, tower._rads)

    def __lt__(self, other):
        return self._cmp_sign(other) < 0

    def __le__(self, other):
        return self._cmp_sign(other) <= 0

    def __gt__(self, other):
        return self._cmp_sign(other) > 0

    def __ge__(self, other):
        return self._cmp_sign(other) >= 0

    # -- numeric views -------------------------------------------------------

    def interval(self, precision: int):
        """Rational enclosure [lo, hi] with hi - lo <= 2**-precision.

        Cached: a stored enclosure at equal or higher precision is reused,
        which keeps repeated pairwise distance filters cheap."""
        if self._iv is not None:
            cached_prec, cached = self._iv
            if cached_prec >= precision:
                return cached
        result = to_interval(self, precision)
        self._iv = (precision, result)
        return result

    def __float__(self) -> float:
        if self._float is None:
            lo, hi = self.interval(60)
            self._float = float((lo + hi) / 2)
        return self._float

    def __repr__(self) -> str:
        return f"ConstructibleNumber({to_expression(self)})"


def _merge_towers(a: FieldTower, b: FieldTower):
    """Smallest computed tower holding both; returns (tower, images of b's roots).

    Images are (rep, depth) pairs recording, inside the merged tower, the
    element representing sqrt of each of b's radicands.
    """
    merged = a
    images: list[tuple] = []
    for j, rad in enumerate(b._rads):
        rad_rep = _transport_rep(rad, j, images, merged)
        merged2, root = sqrt_extend(ConstructibleNumber(merged, rad_rep))
        merged = merged2
        images = [(_lift_rep(rep, depth, merged.depth), merged.depth) for rep, depth in images]
        images.append((root._rep, merged.depth))
    return merged, images


def _transport_rep(rep, depth: int, images, target: FieldTower):
    """Rewrite an element of the source tower (depth levels) inside the target tower."""
    if depth == 0:
        return _lift_rep(rep, 0, target.depth)
    a = _transport_rep(rep[0], depth - 1, images, target)
    b = _transport_rep(rep[1], depth - 1, images, target)
    img_rep, img_depth = images[depth - 1]
    img = _lift_rep(img_rep, img_depth, target.depth)
    return _add_rep(a, _mul_rep(b, img, target.depth, target._rads), target.depth)


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def rational(value: Rational) -> ConstructibleNumber:
    """Embed an integer or Fraction as a constructible number."""
    return ConstructibleNumber.from_rational(value)


def add(x: ConstructibleNumber, y: ConstructibleNumber) -> ConstructibleNumber:
    return x + y


def sub(x: ConstructibleNumber, y: ConstructibleNumber) -> ConstructibleNumber:
    return x - y


def mul(x: ConstructibleNumber, y: ConstructibleNumber) -> ConstructibleNumber:
    return x * y


def recip(x: ConstructibleNumber) -> ConstructibleNumber:
    return x.reciprocal()


def sign(x: ConstructibleNumber) -> int:
    return x.sign()


def _strip_square_factors(n: int) -> tuple[int, int]:
    """n = d * s**2 with d free of small square factors; returns (d, s)."""
    s = 1
    for p in _SMALL_PRIMES:
        p2 = p * p
        while n % p2 == 0:
            n //= p2
            s *= p
    r = isqrt(n)
    if r * r == n:
        return 1, s * r
    return n, s


def sqrt_extend(x: ConstructibleNumber) -> tuple[FieldTower, ConstructibleNumber]:
    """Tower containing sqrt(x) (extending x's tower when needed) plus the root.

    Rational radicands are normalised so that e.g. sqrt(3/4) adjoins sqrt(3)
    and returns sqrt(3)/2.  If x is already a square in its tower, the tower
    is returned unchanged with the exact nonnegative root.
    """
    sgn = x.sign()
    if sgn < 0:
        raise NegativeRadicandError("sqrt of negative value")
    tower = x.tower
    if sgn == 0:
        return tower, ConstructibleNumber(tower, _zero_rep(tower.depth))
    root_rep = _try_sqrt_rep(x._rep, tower.depth, tower._rads)
    if root_rep is not None:
        if _sign_rep(root_rep, tower.depth, tower._rads) < 0:
            root_rep = _neg_rep(root_rep, tower.depth)
        return tower, ConstructibleNumber(tower, root_rep)
    if x.is_rational():
        # adjoin the square-factor-free integer kernel: sqrt(p/q) = sqrt(pq)/q
        v = x.as_rational()
        d, s = _strip_square_factors(v.numerator * v.denominator)
        scale = Fraction(s, v.denominator)
        rad_rep = _lift_rep(Fraction(d), 0, tower.depth)
        new = tower.extend(ConstructibleNumber(tower, rad_rep))
        root = ConstructibleNumber(new, (_zero_rep(tower.depth), _lift_rep(scale, 0, tower.depth)))
        return new, root
    new = tower.extend(x)
    one = _lift_rep(Fraction(1), 0, tower.depth)
    return new, ConstructibleNumber(new, (_zero_rep(tower.depth), one))


def to_interval(x: ConstructibleNumber, precision: int):
    """Rational interval [lo, hi] containing x with width <= 2**-precision.

    Intervals at increasing precision are nested; pure rationals come back
    as degenerate exact intervals.
    """
    if precision < 0:
        raise ValueError("precision must be nonnegative")
    if x.is_rational():
        v = x.as_rational()
        return (v, v)
    target = Fraction(1, 1 << (precision + 2))
    work = precision + 32
    while True:
        scale = 1 << work
        lo, hi = _eval_iv(x._rep, x.tower.depth, x.tower, scale)
        if hi - lo <= target:
            out_scale = 1 << (precision + 2)
            return (_round_down(lo, out_scale), _round_up(hi, out_scale))
        work *= 2


# ---------------------------------------------------------------------------
# expression serialization (catalog file format)
# ---------------------------------------------------------------------------

def _frac_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _expr_rep(rep, depth: int, rads) -> str:
    if depth == 0:
        return _frac_str(rep)
    a, b = rep
    k = depth - 1
    sq = f"sqrt({_expr_rep(rads[k], k, rads)})"
    azero = _is_zero_rep(a, k)
    bzero = _is_zero_rep(b, k)
    if bzero:
        return _expr_rep(a, k, rads)
    bexpr = f"({_expr_rep(b, k, rads)})*{sq}"
    if azero:
        return bexpr
    return f"({_expr_rep(a, k, rads)}) + {bexpr}"


def to_expression(x: ConstructibleNumber) -> str:
    """Serialize as a text expression over rationals, +, *, and sqrt(...)."""
    return _expr_rep(x._rep, x.tower.depth, x.tower._rads)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise FieldError(f"parse error at {self.pos}: {msg} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> ConstructibleNumber:
        value = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return value

    def expr(self) -> ConstructibleNumber:
        value = self.term()
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                value = value + self.term()
            elif ch == "-":
                self.pos += 1
                value = value - self.term()
            else:
                return value

    def term(self) -> ConstructibleNumber:
        value = self.factor()
        while self.peek() == "*":
            self.pos += 1
            value = value * self.factor()
        return value

    def factor(self) -> ConstructibleNumber:
        ch = self.peek()
        if ch == "-":
            self.pos += 1
            return -self.factor()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            self.expect(")")
            return value
        if self.text.startswith("sqrt", self.pos):
            self.pos += 4
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return sqrt_extend(inner)[1]
        if ch.isdigit():
            return rational(self.rational_token())
        self.error("expected factor")

    def rational_token(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        num = int(self.text[start:self.pos])
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            save = self.pos
            self.pos += 1
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                dstart = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                return Fraction(num, int(self.text[dstart:self.pos]))
            self.pos = save
        return Fraction(num)


def parse_expression(text: str) -> ConstructibleNumber:
    """Inverse of :func:`to_expression`; round-trips exactly."""
    return _Parser(text).parse()
