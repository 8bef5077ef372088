"""Exact arithmetic over the field of rational functions in one indeterminate u.

Polynomials are dense coefficient tuples over arbitrary-precision rationals,
rational functions are canonical num/den pairs (monic denominator, gcd one),
and matrices over them support the linear algebra needed elsewhere: products,
Berkowitz characteristic polynomials, and exact nullspaces/eigenspaces.

Everything here is an immutable value; all operations are pure.  Coefficients
are stored as plain ints whenever the denominator is 1, so the hot loops run
on machine/long integer arithmetic instead of Fraction objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _norm_coeff(c):
    """Collapse integral Fractions to int; leave everything else alone."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Dense univariate polynomial over the rationals, in the indeterminate u.

    coeffs[i] is the coefficient of u^i; the top coefficient is nonzero
    unless the polynomial is zero, which is the empty tuple.  The degree of
    the zero polynomial is None, never a number.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
              for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def monomial(c, d: int) -> "Poly":
        if c == 0:
            return P_ZERO
        return Poly((0,) * d + (c,))

    # -- structure -------------------------------------------------------------

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                     for i in range(n)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return P_ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, c) -> "Poly":
        if c == 0:
            return P_ZERO
        return Poly([ci * c for ci in self.coeffs])

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = P_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: "Poly"):
        """Exact polynomial division with remainder over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return P_ZERO, self
        quo = [0] * (dq + 1)
        lead = Fraction(other.leading())
        for i in range(dq, -1, -1):
            top = rem[i + len(other.coeffs) - 1]
            if top == 0:
                continue
            q = _norm_coeff(top / lead)
            quo[i] = q
            for j, c in enumerate(other.coeffs):
                rem[i + j] -= q * c
        return Poly(quo), Poly(rem)

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (Euclid over the rationals)."""
        a, b = self, other
        if a.is_zero():
            return b.monic()
        if b.is_zero():
            return a.monic()
        # factor out powers of u first, then run Euclid on the units
        v = min(_valuation(a), _valuation(b))
        a = Poly(a.coeffs[_valuation(a):])
        b = Poly(b.coeffs[_valuation(b):])
        if len(a.coeffs) == 1 or len(b.coeffs) == 1:
            return Poly.monomial(1, v)
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        a = a.monic()
        return a * Poly.monomial(1, v) if v else a

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.leading()
        if lead == 1:
            return self
        inv = Fraction(1, 1) / lead
        return Poly([c * inv for c in self.coeffs])

    def __call__(self, q):
        """Evaluate at a rational point by Horner's rule."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return _norm_coeff(Fraction(acc))

    # -- printing ----------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            elif mag == 1:
                body = "u" if i == 1 else f"u^{i}"
            else:
                body = f"{mag}*u" if i == 1 else f"{mag}*u^{i}"
            parts.append(("-" if c < 0 else "+", body))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"Poly({self})"


P_ZERO = Poly(())
P_ONE = Poly((1,))
P_U = Poly((0, 1))


def poly_p(d: int) -> Poly:
    """The degree-2d polynomial 1 + 2*sum((-u^2)^i, i=1..d-1) + (-u^2)^d."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if d == 0:
        return P_ONE
    coeffs = [0] * (2 * d + 1)
    coeffs[0] = 1
    for i in range(1, d):
        coeffs[2 * i] = 2 * (-1) ** i
    coeffs[2 * d] = (-1) ** d
    return Poly(coeffs)


def _valuation(p: Poly) -> int:
    """Index of the lowest nonzero coefficient (p must be nonzero)."""
    for i, c in enumerate(p.coeffs):
        if c != 0:
            return i
    raise ValueError("valuation of the zero polynomial")


def _is_monomial(p: Poly) -> bool:
    cs = p.coeffs
    return bool(cs) and all(c == 0 for c in cs[:-1])


class RatFunc:
    """Rational function num/den in canonical form.

    Canonical means: den monic and nonzero, gcd(num, den) = 1, and zero is
    0/1.  Equality and hashing are structural on the canonical form.

    Denominators that are powers of u are extremely common downstream (basis
    inverses, the bar maps), so that case reduces by valuation alone and
    never runs the Euclidean algorithm.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = P_ONE, _canonical: bool = False):
        if _canonical:
            object.__setattr__(self, "num", num)
            object.__setattr__(self, "den", den)
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            object.__setattr__(self, "num", P_ZERO)
            object.__setattr__(self, "den", P_ONE)
            return
        if den.coeffs != (1,):
            if _is_monomial(den):
                lead = den.leading()
                if lead != 1:
                    inv = Fraction(1, 1) / lead
                    num = num.scale(inv)
                shift = min(_valuation(num), den.degree)
                if shift:
                    num = Poly(num.coeffs[shift:])
                den = Poly.monomial(1, den.degree - shift)
            else:
                g = num.gcd(den)
                if g.coeffs != (1,):
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
                lead = den.leading()
                if lead != 1:
                    inv = Fraction(1, 1) / lead
                    num = num.scale(inv)
                    den = den.scale(inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    # -- construction ----------------------------------------------------------

    @staticmethod
    def from_const(c) -> "RatFunc":
        return RatFunc(Poly((c,)), P_ONE, _canonical=True) if c != 0 else RF_ZERO

    @staticmethod
    def upow(k: int) -> "RatFunc":
        """u^k for any integer k, negative exponents allowed."""
        if k >= 0:
            return RatFunc(Poly.monomial(1, k), P_ONE, _canonical=True)
        return RatFunc(P_ONE, Poly.monomial(1, -k), _canonical=True)

    # -- structure ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.coeffs == (1,)

    def __eq__(self, other):
        return (isinstance(other, RatFunc)
                and self.num.coeffs == other.num.coeffs
                and self.den.coeffs == other.den.coeffs)

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    # -- field arithmetic ----------------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RatFunc(self.num + other.num, P_ONE)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            return self
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RatFunc(self.num - other.num, P_ONE)
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RatFunc(self.num * other.num, P_ONE, _canonical=True)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        result = RF_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- printing -----------------------------------------------------------------

    def __str__(self):
        if self.den.coeffs == (1,):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({self})"


RF_ZERO = RatFunc(P_ZERO, P_ONE, _canonical=True)
RF_ONE = RatFunc(P_ONE, P_ONE, _canonical=True)
RF_U = RatFunc(P_U, P_ONE, _canonical=True)


def rf(num, den=None) -> RatFunc:
    """Convenience constructor from ints, Fractions, Polys, or coefficient lists."""
    def to_poly(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return Poly((x,))
        return Poly(x)
    if den is None:
        return RatFunc(to_poly(num))
    return RatFunc(to_poly(num), to_poly(den))


# -- field automorphisms and evaluation ----------------------------------------------


def _substitute_inverse(p: Poly, sign: int) -> tuple[Poly, int]:
    """Rewrite p(sign/u) as (q(u), d) with p(sign/u) = q(u)/u^d, d = deg p."""
    if p.is_zero():
        return P_ZERO, 0
    d = p.degree
    coeffs = [0] * (d + 1)
    for i, c in enumerate(p.coeffs):
        coeffs[d - i] = c * (sign ** i)
    return Poly(coeffs), d


def sigma(f: RatFunc) -> RatFunc:
    """The involutory field automorphism substituting u -> -1/u."""
    if f.is_zero():
        return RF_ZERO
    pn, dn = _substitute_inverse(f.num, -1)
    pd, dd = _substitute_inverse(f.den, -1)
    if dn >= dd:
        return RatFunc(pn, pd * Poly.monomial(1, dn - dd))
    return RatFunc(pn * Poly.monomial(1, dd - dn), pd)


def ubar(f: RatFunc) -> RatFunc:
    """The involutory field automorphism substituting u -> 1/u."""
    if f.is_zero():
        return RF_ZERO
    pn, dn = _substitute_inverse(f.num, 1)
    pd, dd = _substitute_inverse(f.den, 1)
    if dn >= dd:
        return RatFunc(pn, pd * Poly.monomial(1, dn - dd))
    return RatFunc(pn * Poly.monomial(1, dd - dn), pd)


def zeta(f: RatFunc) -> RatFunc:
    """The field automorphism substituting u -> -u."""
    def sub(p: Poly) -> Poly:
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(p.coeffs)])
    return RatFunc(sub(f.num), sub(f.den))


def eval_at(f: RatFunc, q) -> Fraction:
    """Evaluate f at the rational point q; raises at a pole."""
    dv = f.den(q)
    if dv == 0:
        raise ZeroDivisionError(f"pole at u = {q}")
    return _norm_coeff(Fraction(f.num(q)) / Fraction(dv))


def apply_field_map(f: RatFunc, which: str, q=None):
    """Dispatch for the named field maps: 'sigma', 'bar', or 'eval'."""
    if which == "sigma":
        return sigma(f)
    if which == "bar":
        return ubar(f)
    if which == "eval":
        return eval_at(f, q)
    raise ValueError(f"unknown field map {which!r}")


# -- matrices --------------------------------------------------------------------------


class RatMatrix:
    """Square matrix over the rational-function field."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[RatFunc]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[RF_ONE if i == j else RF_ZERO for j in range(n)]
                          for i in range(n)])

    @staticmethod
    def zero(n: int) -> "RatMatrix":
        return RatMatrix([[RF_ZERO] * n for _ in range(n)])

    def __eq__(self, other):
        return (isinstance(other, RatMatrix) and self.n == other.n
                and self.rows == other.rows)

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check(other)
        return RatMatrix([[a + b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check(other)
        return RatMatrix([[a - b for a, b in zip(ra, rb)]
                          for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self.rows])

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        self._check(other)
        n = self.n
        out = [[RF_ZERO] * n for _ in range(n)]
        brows = other.rows
        for i in range(n):
            row = self.rows[i]
            acc = out[i]
            for k in range(n):
                a = row[k]
                if a.num.coeffs:
                    br = brows[k]
                    for j in range(n):
                        b = br[j]
                        if b.num.coeffs:
                            acc[j] = acc[j] + a * b
        return RatMatrix(out)

    def scale(self, c: RatFunc) -> "RatMatrix":
        return RatMatrix([[c * a for a in r] for r in self.rows])

    def transpose(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.rows)))

    def trace(self) -> RatFunc:
        t = RF_ZERO
        for i in range(self.n):
            t = t + self.rows[i][i]
        return t

    def apply_entrywise(self, fn) -> "RatMatrix":
        return RatMatrix([[fn(a) for a in r] for r in self.rows])

    def apply_vector(self, vec: Sequence[RatFunc]) -> list[RatFunc]:
        """Matrix-vector product, skipping zero entries."""
        out = [RF_ZERO] * self.n
        for i, row in enumerate(self.rows):
            acc = RF_ZERO
            for a, v in zip(row, vec):
                if a.num.coeffs and v.num.coeffs:
                    acc = acc + a * v
            out[i] = acc
        return out

    def is_zero(self) -> bool:
        return all(a.num.is_zero() for r in self.rows for a in r)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + "]"


def char_poly(m: RatMatrix) -> tuple[RatFunc, ...]:
    """Monic characteristic polynomial det(xI - M) by the Berkowitz method.

    Returns the coefficient tuple in ascending powers of the outer variable;
    the method is division-free on the matrix entries, so no pivot choices
    affect the (exact) result.
    """
    n = m.n
    if n == 0:
        return (RF_ONE,)

    def vector(rows) -> list[RatFunc]:
        # coefficients of char poly of the submatrix, highest power first
        k = len(rows)
        if k == 1:
            return [RF_ONE, -rows[0][0]]
        a = rows[0][0]
        r_row = rows[0][1:]
        c_col = [rows[i][0] for i in range(1, k)]
        sub = [row[1:] for row in rows[1:]]
        # items = [1, -a, -R C, -R A C, -R A^2 C, ...]
        items = [RF_ONE, -a]
        vec = c_col
        for _ in range(k - 1):
            dot = RF_ZERO
            for x, y in zip(r_row, vec):
                if x.num.coeffs and y.num.coeffs:
                    dot = dot + x * y
            items.append(-dot)
            nxt = [RF_ZERO] * (k - 1)
            for i in range(k - 1):
                acc = RF_ZERO
                for x, y in zip(sub[i], vec):
                    if x.num.coeffs and y.num.coeffs:
                        acc = acc + x * y
                nxt[i] = acc
            vec = nxt
        prev = vector(sub)
        out = [RF_ZERO] * (k + 1)
        for i in range(k + 1):
            acc = RF_ZERO
            for j in range(k):
                d = i - j
                if 0 <= d <= k:
                    t = items[d]
                    if t.num.coeffs and prev[j].num.coeffs:
                        acc = acc + t * prev[j]
            out[i] = acc
        return out

    desc = vector([list(r) for r in m.rows])
    return tuple(reversed(desc))


def lampoly_mul(a: Sequence[RatFunc], b: Sequence[RatFunc]) -> tuple[RatFunc, ...]:
    """Product of two polynomials given as ascending RatFunc coefficient tuples."""
    if not a or not b:
        return ()
    out = [RF_ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.num.coeffs:
            for j, cb in enumerate(b):
                if cb.num.coeffs:
                    out[i + j] = out[i + j] + ca * cb
    return tuple(out)


def lampoly_eval_matrix(coeffs: Sequence[RatFunc], m: RatMatrix) -> RatMatrix:
    """Evaluate an ascending coefficient tuple at a matrix argument (Horner)."""
    acc = RatMatrix.zero(m.n)
    for c in reversed(coeffs):
        acc = acc * m + RatMatrix.identity(m.n).scale(c)
    return acc


def lampoly_str(coeffs: Sequence[RatFunc], var: str = "x") -> str:
    """Render an ascending RatFunc coefficient tuple as a readable polynomial."""
    parts = []
    for i, c in enumerate(coeffs):
        if c.is_zero():
            continue
        if i == 0:
            parts.append(f"({c})")
        elif i == 1:
            parts.append(f"({c})*{var}")
        else:
            parts.append(f"({c})*{var}^{i}")
    return " + ".join(parts) if parts else "0"


def rref(rows: list[list[RatFunc]]) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form with the first-nonzero pivot rule.

    Returns the reduced rows and the list of pivot column indices.  The input
    may be rectangular; rows are not copied defensively, pass a fresh list.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][col].num.coeffs:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [inv * a for a in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col].num.coeffs:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def nullspace(rows: list[list[RatFunc]], ncols: int) -> list[list[RatFunc]]:
    """Basis of the right nullspace of a (possibly rectangular) matrix."""
    if not rows:
        return [[RF_ONE if i == j else RF_ZERO for i in range(ncols)]
                for j in range(ncols)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [RF_ZERO] * ncols
        vec[f] = RF_ONE
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def matrix_rank(rows: list[list[RatFunc]]) -> int:
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def solve_simultaneous_eigenspace(mats: Sequence[RatMatrix],
                                  eigenvalues: Sequence[RatFunc],
                                  dim: int | None = None) -> list[list[RatFunc]]:
    """Basis of the intersection of ker(M_i - lambda_i * I) over all i.

    With an empty list of matrices the ambient dimension must be supplied,
    and the full standard basis is returned.
    """
    if len(mats) != len(eigenvalues):
        raise ValueError("matrix and eigenvalue lists must have equal length")
    if not mats:
        if dim is None:
            raise ValueError("ambient dimension required when no matrices given")
        return [[RF_ONE if i == j else RF_ZERO for i in range(dim)]
                for j in range(dim)]
    n = mats[0].n
    for m in mats:
        if m.n != n:
            raise ValueError("all matrices must share one dimension")
    stacked: list[list[RatFunc]] = []
    for m, lam in zip(mats, eigenvalues):
        for i in range(n):
            row = [m.rows[i][j] - lam if i == j else m.rows[i][j] for j in range(n)]
            stacked.append(row)
    return nullspace(stacked, n)
