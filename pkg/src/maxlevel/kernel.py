"""Exact rationals, lines, points and the parallel-shift perturbation.

Every coordinate is a gmpy2 ``mpq``.  Perturbed line copies are
``y = a*x + b + eps_i`` with eps_1 >> eps_2 >> ... >> eps_N, and the x
coordinate of a crossing of two copies is kept as a main rational part plus a
sparse vector of eps coefficients (``PerturbedX``).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import gmpy2

mpq = gmpy2.mpq
Rational = type(mpq(0))


class EmptyInstance(ValueError):
    pass


class BadK(ValueError):
    pass


class ParallelError(ValueError):
    pass


class BoundViolated(RuntimeError):
    """A guaranteed bound failed to hold; always a bug."""


class InvariantError(RuntimeError):
    pass


def rational(value) -> Rational:
    """Convert ints, Fractions, mpq or strings like '3', '-2/7', '0.25' exactly."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rational(r) -> str:
    r = rational(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


class Point(NamedTuple):
    x: Rational
    y: Rational

    def __repr__(self):
        return f"Point({format_rational(self.x)}, {format_rational(self.y)})"


@dataclass(frozen=True, slots=True)
class Line:
    id: int
    a: Rational
    b: Rational

    def at(self, x):
        return self.a * x + self.b

    @property
    def key(self):
        return (self.a, self.b)


@dataclass(frozen=True, slots=True)
class VerticalLine:
    id: int
    x0: Rational


@dataclass
class Instance:
    lines: list = field(default_factory=list)
    multiplicities: dict = field(default_factory=dict)
    verticals: list = field(default_factory=list)

    @classmethod
    def from_pairs(cls, pairs, verticals=(), mult=None):
        """Build from (a, b) pairs; ids are 1.. in order, verticals numbered after."""
        lines = [Line(i, rational(a), rational(b)) for i, (a, b) in enumerate(pairs, 1)]
        vs = [VerticalLine(len(lines) + j, rational(x)) for j, x in enumerate(verticals, 1)]
        mu = {}
        for key, m in (mult or {}).items():
            mu[key] = int(m)
        return cls(lines, mu, vs)

    def mu(self, ident) -> int:
        return self.multiplicities.get(ident, 1)

    @property
    def n(self) -> int:
        return self.n_lines + sum(self.mu(v.id) for v in self.verticals)

    @property
    def n_lines(self) -> int:
        return sum(self.mu(l.id) for l in self.lines)

    def has_duplicates(self) -> bool:
        if any(self.mu(l.id) > 1 for l in self.lines):
            return True
        return len({l.key for l in self.lines}) < len(self.lines)

    def without_verticals(self) -> "Instance":
        mu = {l.id: self.mu(l.id) for l in self.lines if self.mu(l.id) != 1}
        return Instance(list(self.lines), mu, [])


class Relation(enum.Enum):
    PARALLEL = "parallel"
    COINCIDENT = "coincident"


class Side(enum.Enum):
    BELOW = -1
    ON = 0
    ABOVE = 1


def intersect(l1: Line, l2: Line):
    if l1.a == l2.a:
        return Relation.COINCIDENT if l1.b == l2.b else Relation.PARALLEL
    x = (l2.b - l1.b) / (l1.a - l2.a)
    return Point(x, l1.a * x + l1.b)


def below(l: Line, p: Point) -> Side:
    """Where the line passes relative to p."""
    v = l.a * p.x + l.b
    if v < p.y:
        return Side.BELOW
    if v > p.y:
        return Side.ABOVE
    return Side.ON


class Handle(NamedTuple):
    """One perturbed copy: y = a*x + b + eps_idx; ``line`` is the id of the distinct line it copies."""
    idx: int
    a: Rational
    b: Rational
    line: int


def perturb(instance: Instance) -> list:
    """One handle per copy, eps indices in input order.

    Copies of coinciding lines map to the id of the first input line with
    the same (a, b).
    """
    rep = {}
    out = []
    idx = 0
    for l in instance.lines:
        g = rep.setdefault(l.key, l.id)
        for _ in range(instance.mu(l.id)):
            idx += 1
            out.append(Handle(idx, l.a, l.b, g))
    return out


def _sign(q) -> int:
    return (q > 0) - (q < 0)


class PerturbedX:
    """main + sum(coef * eps_idx), eps ordered by increasing idx = decreasing magnitude."""
    __slots__ = ("main", "eps")

    def __init__(self, main, eps=()):
        self.main = main
        self.eps = tuple(eps)

    def __lt__(self, other):
        return cmp_perturbed(self, other) < 0

    def __le__(self, other):
        return cmp_perturbed(self, other) <= 0

    def __gt__(self, other):
        return cmp_perturbed(self, other) > 0

    def __ge__(self, other):
        return cmp_perturbed(self, other) >= 0

    def __eq__(self, other):
        if not isinstance(other, PerturbedX):
            return NotImplemented
        return self.main == other.main and self.eps == other.eps

    def __hash__(self):
        return hash((self.main, self.eps))

    def __repr__(self):
        terms = " ".join(f"{'+' if c > 0 else '-'} {format_rational(abs(c))}e{i}" for i, c in self.eps)
        return f"PerturbedX({format_rational(self.main)} {terms})".replace(" )", ")")


def _eps_cmp(e1, e2) -> int:
    i = j = 0
    while i < len(e1) or j < len(e2):
        if j == len(e2) or (i < len(e1) and e1[i][0] < e2[j][0]):
            return _sign(e1[i][1])
        if i == len(e1) or e2[j][0] < e1[i][0]:
            return -_sign(e2[j][1])
        d = e1[i][1] - e2[j][1]
        if d:
            return _sign(d)
        i += 1
        j += 1
    return 0


def cmp_perturbed(x1: PerturbedX, x2: PerturbedX) -> int:
    if x1.main != x2.main:
        return -1 if x1.main < x2.main else 1
    return _eps_cmp(x1.eps, x2.eps)


def perturbed_intersection_x(hi, hj) -> PerturbedX:
    """Crossing of two perturbed copies (Handle-like: idx, a, b)."""
    d = hj.a - hi.a
    if d == 0:
        raise ParallelError(f"copies {hi.idx} and {hj.idx} are parallel")
    main = (hi.b - hj.b) / d
    ci, cj = 1 / d, -1 / d
    if hi.idx < hj.idx:
        return PerturbedX(main, ((hi.idx, ci), (hj.idx, cj)))
    return PerturbedX(main, ((hj.idx, cj), (hi.idx, ci)))


def cross_main(h, m):
    """Unperturbed x of the crossing of two non-parallel lines."""
    return (h.b - m.b) / (m.a - h.a)


def order_key(h):
    """Top-to-bottom order of perturbed copies at x = -infinity."""
    return (h.a, -h.b, h.idx)


def is_after(h, m, x: Optional[PerturbedX], main=None) -> bool:
    """True if copies h and m (non-parallel) cross strictly to the right of x."""
    if x is None:
        return True
    if main is None:
        main = cross_main(h, m)
    if main != x.main:
        return main > x.main
    return cmp_perturbed(perturbed_intersection_x(h, m), x) > 0


def above_after(m, cur, x: Optional[PerturbedX]) -> bool:
    """Is copy m strictly above copy cur just to the right of x (None = -infinity)?"""
    if m.a == cur.a:
        return m.b > cur.b or (m.b == cur.b and m.idx < cur.idx)
    if x is None:
        return m.a < cur.a
    main = cross_main(cur, m)
    if main != x.main:
        c = -1 if main < x.main else 1
    else:
        c = cmp_perturbed(perturbed_intersection_x(cur, m), x)
    if c == 0:
        return m.a > cur.a
    # c > 0: the crossing is still ahead, so m is on the side it occupies at -infinity
    return (m.a < cur.a) if c > 0 else (m.a > cur.a)
