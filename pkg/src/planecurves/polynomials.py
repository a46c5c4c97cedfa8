"""Exact polynomial arithmetic over the rationals.

Three carriers: UniPoly (one variable, dense), BiPoly (two variables, sparse
map from exponent pairs to coefficients) and MultiPoly (n variables, used by
the Groebner engine and the equivalence solver).  All coefficients are
fractions.Fraction; every operation is a pure function on immutable values.

The degree of the zero polynomial is NEG_INF so that degree comparisons are
total and never accidentally match an integer degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import ConstantInput, DivisionByZero, InvalidResultantInput

NEG_INF = float("-inf")


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def term(cls, c, k: int) -> "UniPoly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "UniPoly":
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def scale(self, c) -> "UniPoly":
        c = _frac(c)
        return UniPoly([c * a for a in self.coeffs])

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly.zero()
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.const(c)
        return acc

    def to_str(self, var: str = "t") -> str:
        terms = [(k, c) for k, c in enumerate(self.coeffs) if c != 0]
        terms.sort(reverse=True)
        return _render_terms([((k,), c) for k, c in terms], (var,))

    def __repr__(self):
        return f"UniPoly({self.to_str()})"


# ---------------------------------------------------------------------------
# bivariate polynomials


def _grlex_key(ij):
    i, j = ij
    return (i + j, i)


class BiPoly:
    """Sparse bivariate polynomial: map (i, j) -> nonzero coefficient of x^i y^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for (i, j), c in terms.items():
                c = _frac(c)
                if c != 0:
                    t[(i, j)] = c
        self.terms = t

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def term(cls, c, i: int, j: int) -> "BiPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    @property
    def total_degree(self):
        return max((i + j for (i, j) in self.terms), default=NEG_INF)

    @property
    def deg_x(self):
        return max((i for (i, _) in self.terms), default=NEG_INF)

    @property
    def deg_y(self):
        return max((j for (_, j) in self.terms), default=NEG_INF)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for ij, c in other.terms.items():
            s = out.get(ij, Fraction(0)) + c
            if s == 0:
                out.pop(ij, None)
            else:
                out[ij] = s
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({ij: -c for ij, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                ij = (i1 + i2, j1 + j2)
                s = out.get(ij, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(ij, None)
                else:
                    out[ij] = s
        return BiPoly(out)

    def scale(self, c) -> "BiPoly":
        c = _frac(c)
        if c == 0:
            return BiPoly.zero()
        return BiPoly({ij: c * v for ij, v in self.terms.items()})

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = BiPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def leading_term(self):
        """Greatest term under graded lex with x > y: ((i, j), coefficient)."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        ij = max(self.terms, key=_grlex_key)
        return ij, self.terms[ij]

    def substitute(self, sx: "BiPoly", sy: "BiPoly") -> "BiPoly":
        """Value of self at x = sx, y = sy, fully expanded."""
        xpow = {0: BiPoly.const(1)}
        ypow = {0: BiPoly.const(1)}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = power(cache, base, e - 1) * base
            return cache[e]

        acc = BiPoly.zero()
        for (i, j), c in sorted(self.terms.items()):
            acc = acc + (power(xpow, sx, i) * power(ypow, sy, j)).scale(c)
        return acc

    def eval_uni(self, u: UniPoly, v: UniPoly) -> UniPoly:
        """Value of self at x = u(t), y = v(t)."""
        upow = {0: UniPoly.const(1)}
        vpow = {0: UniPoly.const(1)}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = power(cache, base, e - 1) * base
            return cache[e]

        acc = UniPoly.zero()
        for (i, j), c in sorted(self.terms.items()):
            acc = acc + (power(upow, u, i) * power(vpow, v, j)).scale(c)
        return acc

    def swap_xy(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def normalized(self) -> "BiPoly":
        """Scalar-normal form: integer coefficients with content 1 and a
        positive leading graded-lex coefficient."""
        if not self.terms:
            return self
        den_lcm = 1
        for c in self.terms.values():
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in self.terms.values():
            num_gcd = gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        factor = Fraction(den_lcm, num_gcd)
        _, lead = self.leading_term()
        if lead < 0:
            factor = -factor
        return self.scale(factor)

    def to_str(self, vars=("x", "y")) -> str:
        terms = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        return _render_terms(terms, vars)

    def __repr__(self):
        return f"BiPoly({self.to_str()})"


def _render_terms(terms, vars) -> str:
    """Shared pretty-printer: terms is a list of (exponent tuple, coefficient)."""
    if not terms:
        return "0"
    parts = []
    for exps, c in terms:
        factors = []
        for e, v in zip(exps, vars):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# multivariate polynomials (Groebner carrier)


class MultiPoly:
    """Sparse polynomial of fixed arity; terms map exponent tuples to coefficients."""

    __slots__ = ("arity", "terms", "names")

    def __init__(self, arity: int, terms=None, names=None):
        if arity < 1:
            raise ValueError("arity must be at least 1")
        self.arity = arity
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(arity))
        t = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != arity:
                    raise ValueError("exponent vector has wrong arity")
                c = _frac(c)
                if c != 0:
                    t[tuple(exps)] = c
        self.terms = t

    @classmethod
    def zero(cls, arity: int, names=None) -> "MultiPoly":
        return cls(arity, None, names)

    @classmethod
    def const(cls, arity: int, c, names=None) -> "MultiPoly":
        return cls(arity, {(0,) * arity: c}, names)

    @classmethod
    def var(cls, arity: int, idx: int, names=None) -> "MultiPoly":
        exps = [0] * arity
        exps[idx] = 1
        return cls(arity, {tuple(exps): 1}, names)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(self.arity, out, self.names)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(self.arity, out, self.names)

    def scale(self, c) -> "MultiPoly":
        c = _frac(c)
        if c == 0:
            return MultiPoly.zero(self.arity, self.names)
        return MultiPoly(self.arity, {e: c * v for e, v in self.terms.items()}, self.names)

    def __pow__(self, e: int) -> "MultiPoly":
        result = MultiPoly.const(self.arity, 1, self.names)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def substitute_var(self, idx: int, value: "MultiPoly") -> "MultiPoly":
        """Replace variable idx by the given polynomial (same arity)."""
        cache = {0: MultiPoly.const(self.arity, 1, self.names)}

        def power(e):
            if e not in cache:
                cache[e] = power(e - 1) * value
            return cache[e]

        acc = MultiPoly.zero(self.arity, self.names)
        for exps, c in sorted(self.terms.items()):
            rest = list(exps)
            e = rest[idx]
            rest[idx] = 0
            acc = acc + (MultiPoly(self.arity, {tuple(rest): c}, self.names) * power(e))
        return acc

    def variables_present(self):
        present = set()
        for exps in self.terms:
            for k, e in enumerate(exps):
                if e:
                    present.add(k)
        return present

    def to_str(self) -> str:
        terms = sorted(
            self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True
        )
        return _render_terms(terms, self.names)

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"


# ---------------------------------------------------------------------------
# integer / rational root helpers


def int_nth_root(n: int, e: int):
    """Exact e-th root of a nonnegative integer, or None."""
    if n < 0:
        raise ValueError("negative argument")
    if n in (0, 1) or e == 1:
        return n
    if e == 2:
        r = isqrt(n)
        return r if r * r == n else None
    lo, hi = 0, 1
    while hi**e <= n:
        hi <<= 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**e <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo**e == n else None


def rat_nth_root(r: Fraction, e: int):
    """Exact rational e-th root of r, or None.  For even e the nonnegative
    root is returned."""
    if e < 1:
        raise ValueError("root order must be positive")
    if r < 0:
        if e % 2 == 0:
            return None
        root = rat_nth_root(-r, e)
        return None if root is None else -root
    pn = int_nth_root(r.numerator, e)
    if pn is None:
        return None
    pd = int_nth_root(r.denominator, e)
    if pd is None:
        return None
    return Fraction(pn, pd)


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly):
    """All rational roots of p (each listed once), by the rational root test."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    ints = [c // content for c in ints]
    roots = [Fraction(0)] if shift else []
    if len(ints) == 1:
        return roots
    # binomial shortcut: a*z^d + b = 0 avoids factoring large constants
    if len([c for c in ints if c != 0]) == 2 and ints[0] != 0:
        d = len(ints) - 1
        r = rat_nth_root(Fraction(-ints[0], ints[-1]), d)
        if r is not None:
            roots.append(r)
            if d % 2 == 0 and r != 0:
                roots.append(-r)
        return roots
    for pn in _divisors(ints[0]):
        for pd in _divisors(ints[-1]):
            for cand in (Fraction(pn, pd), Fraction(-pn, pd)):
                if cand not in roots and p.evaluate(cand) == 0:
                    roots.append(cand)
    return roots


# ---------------------------------------------------------------------------
# spec operations on BiPoly


def substitute(p: BiPoly, sx: BiPoly, sy: BiPoly) -> BiPoly:
    """p with x replaced by sx and y replaced by sy."""
    return p.substitute(sx, sy)


def face_polynomials(p: BiPoly):
    """The restrictions (p(0, t), p(t, 0)) to the two coordinate axes."""
    on_y = {}  # x = 0
    on_x = {}  # y = 0
    for (i, j), c in p.terms.items():
        if i == 0:
            on_y[j] = on_y.get(j, Fraction(0)) + c
        if j == 0:
            on_x[i] = on_x.get(i, Fraction(0)) + c
    def build(d):
        if not d:
            return UniPoly.zero()
        out = [Fraction(0)] * (max(d) + 1)
        for k, c in d.items():
            out[k] = c
        return UniPoly(out)
    return build(on_y), build(on_x)


@dataclass(frozen=True)
class TriangularForm:
    """Shape a*x^n + b*y^m + (terms with i*m + j*n <= m*n); a, b nonzero."""

    n: int
    m: int
    a: Fraction
    b: Fraction


def triangular_profile(p: BiPoly):
    """TriangularForm of p, or None.

    Requires a pure x^n term (n >= 1) and a pure y^m term (m >= 1); every
    term x^i y^j must satisfy i*m + j*n <= m*n.  Terms on a coordinate axis
    are admitted whenever they satisfy the inequality.
    """
    n = max((i for (i, j) in p.terms if j == 0 and i >= 1), default=0)
    m = max((j for (i, j) in p.terms if i == 0 and j >= 1), default=0)
    if n == 0 or m == 0:
        return None
    for (i, j) in p.terms:
        if i * m + j * n > m * n:
            return None
    return TriangularForm(n, m, p.terms[(n, 0)], p.terms[(0, m)])


def boundary_face(p: BiPoly, profile: TriangularForm) -> BiPoly:
    """Terms of p lying on the edge i*m + j*n = m*n of the Newton polygon."""
    n, m = profile.n, profile.m
    return BiPoly({(i, j): c for (i, j), c in p.terms.items() if i * m + j * n == m * n})


def exact_divide(f: BiPoly, g: BiPoly):
    """Quotient f/g when g divides f exactly, else None."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return BiPoly.zero()
    (gi, gj), gc = g.leading_term()
    quotient = {}
    rem = dict(f.terms)
    while rem:
        ij = max(rem, key=_grlex_key)
        i, j = ij
        if i < gi or j < gj:
            return None
        q = (i - gi, j - gj)
        c = rem[ij] / gc
        quotient[q] = c
        for (ti, tj), tc in g.terms.items():
            key = (q[0] + ti, q[1] + tj)
            s = rem.get(key, Fraction(0)) - c * tc
            if s == 0:
                rem.pop(key, None)
            else:
                rem[key] = s
    return BiPoly(quotient)


# ---------------------------------------------------------------------------
# resultants


def _t_coefficients(p: BiPoly, second_axis: str):
    """Read p as a polynomial in t (first exponent); coefficients are BiPoly
    in x (second_axis='x') or y (second_axis='y')."""
    deg_t = int(p.deg_x) if not p.is_zero() else -1
    coeffs = [dict() for _ in range(deg_t + 1)]
    for (ti, e), c in p.terms.items():
        key = (e, 0) if second_axis == "x" else (0, e)
        coeffs[ti][key] = coeffs[ti].get(key, Fraction(0)) + c
    return [BiPoly(d) for d in coeffs]


def _bareiss_det(mat):
    """Exact determinant of a square matrix of BiPoly by fraction-free
    elimination; every interior division is exact over the polynomial ring."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = BiPoly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, n) if not m[r][k].is_zero()), None)
            if pivot_row is None:
                return BiPoly.zero()
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                q = exact_divide(num, prev)
                assert q is not None, "Bareiss division must be exact"
                m[i][j] = q
            m[i][k] = BiPoly.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f: BiPoly, g: BiPoly):
    """Sylvester matrix of f (in t and x) and g (in t and y) with respect to
    t.  Row block one holds f's coefficients, block two g's."""
    fc = _t_coefficients(f, "x")
    gc = _t_coefficients(g, "y")
    df, dg = len(fc) - 1, len(gc) - 1
    if df < 1 or dg < 1:
        raise InvalidResultantInput("arguments must have positive degree in t")
    size = df + dg
    zero = BiPoly.zero()
    rows = []
    for r in range(dg):
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[r + k] = c
        rows.append(row)
    for r in range(df):
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[r + k] = c
        rows.append(row)
    return rows


def resultant_t(f: BiPoly, g: BiPoly) -> BiPoly:
    """Resultant of f(t, x) and g(t, y) with respect to t, as a polynomial in
    (x, y); equals the Sylvester determinant, sign included."""
    return _bareiss_det(sylvester_matrix(f, g))


# ---------------------------------------------------------------------------
# perfect powers


def _poly_nth_root(p: BiPoly, e: int):
    """Exact e-th root of p (primitive, positive leading coefficient), or
    None.  Root terms are found greatest-first under graded lex; each
    candidate term is forced by the leading term of the running difference."""
    if e == 1:
        return p
    lt, lc = p.leading_term()
    if lt[0] % e or lt[1] % e:
        return None
    root_lc = rat_nth_root(lc, e)
    if root_lc is None:
        return None
    root = BiPoly.term(root_lc, lt[0] // e, lt[1] // e)
    last_key = _grlex_key((lt[0] // e, lt[1] // e))
    while True:
        diff = p - root**e
        if diff.is_zero():
            return root
        (di, dj), dc = diff.leading_term()
        lead_pow = root**(e - 1)
        (li, lj), lpc = lead_pow.leading_term()
        if di < li or dj < lj:
            return None
        mono = (di - li, dj - lj)
        if _grlex_key(mono) >= last_key:
            return None
        last_key = _grlex_key(mono)
        root = root + BiPoly.term(dc / (e * lpc), *mono)


def perfect_power_root(R: BiPoly):
    """(p, mult) with R = c * p^mult for a nonzero constant c and maximal
    mult; p is normalized (content 1, positive leading coefficient)."""
    if R.is_zero() or R.is_constant():
        raise ConstantInput("perfect_power_root needs a nonconstant polynomial")
    N = R.normalized()
    dx, dy = int(N.deg_x) if N.deg_x != NEG_INF else 0, int(N.deg_y) if N.deg_y != NEG_INF else 0
    g = gcd(dx, dy)
    for e in sorted(_divisors(g), reverse=True):
        root = _poly_nth_root(N, e)
        if root is not None:
            return root, e
    return N, 1
