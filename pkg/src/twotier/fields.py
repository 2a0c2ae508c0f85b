"""Exact arithmetic in GF(p) and extension fields GF(p^n) in polynomial basis.

An element is a length-n coefficient vector over GF(p), low-order
coefficient first, reduced modulo a monic irreducible polynomial.
Constructing a :class:`FieldContext` validates that the modulus is
irreducible (trial division, feasible at desk scale) and primitive: the
residue class of x must generate the whole multiplicative group. Every
context therefore carries a primitive element ``gamma``, and small fields
get discrete log tables so multiplication and inversion are exponent
arithmetic.

Elements serialize as base-p digit strings, low-order digit first
(``"110"`` is 1 + x in GF(2^3)); configuration may also give elements as
powers of gamma (``"g^3"``).
"""

import itertools

import numpy as np

from . import linalg

# Desk scale: digit-string serialization and trial-division validation
# both assume a single-digit prime base.
DESK_PRIMES = (2, 3, 5, 7)
MAX_FIELD_SIZE = 2 ** 30
LOG_TABLE_LIMIT = 2 ** 16

# Moduli named in the shipped example configurations: x^3+x+1 over GF(2)
# and x^6+x+2 over GF(3). Anything else must be supplied explicitly.
BUILTIN_MODULI = {
    (2, 3): (1, 1, 0, 1),
    (3, 6): (2, 1, 0, 0, 0, 0, 1),
}


def _factorize(m: int):
    factors = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors.add(d)
            m //= d
        d += 1
    if m > 1:
        factors.add(m)
    return sorted(factors)


class FieldContext:
    """GF(p^n) with a fixed monic primitive modulus.

    Arithmetic always runs on polynomial-basis coefficients. An optional
    change-of-basis matrix (rows = basis elements in polynomial
    coordinates) switches the representation that ``to_vector`` emits,
    which is what packet layouts and Hamming weights see.
    """

    def __init__(self, p: int, n: int, modulus=None, basis=None):
        if p not in DESK_PRIMES:
            raise ValueError(f"base characteristic must be a prime in {DESK_PRIMES}, got {p}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"extension degree must be a positive integer, got {n}")
        if p ** n > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{n} exceeds the desk-scale limit 2^30")
        if modulus is None:
            modulus = BUILTIN_MODULI.get((p, n))
            if modulus is None:
                raise ValueError(f"no built-in modulus for GF({p}^{n}); supply one")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n, coefficients low-to-high")
        if any(not 0 <= c < p for c in modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")

        self.p = p
        self.n = n
        self.size = p ** n
        self.modulus = modulus

        if n > 1 and not self._is_irreducible():
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")

        self.zero = FieldElement(self, (0,) * n)
        self.one = FieldElement(self, tuple([1] + [0] * (n - 1)))
        if n == 1:
            gamma = (-modulus[0]) % p
            self.gamma = FieldElement(self, (gamma,))
        else:
            self.gamma = FieldElement(self, tuple([0, 1] + [0] * (n - 2)))

        self._pow = None
        self._log = None
        self._subfield_bases = {}
        self.basis = None
        self._to_basis = None
        self._from_basis = None
        self._check_primitive()
        if basis is not None:
            self._install_basis(basis)

    def _install_basis(self, basis):
        rows = tuple(tuple(int(c) for c in row) for row in basis)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"basis must be a {self.n}x{self.n} matrix")
        if any(not 0 <= c < self.p for row in rows for c in row):
            raise ValueError(f"basis entries must lie in [0, {self.p})")
        mat, pivots = linalg.rref(rows, self.p)
        if len(pivots) != self.n:
            raise ValueError("basis matrix is singular")
        # coords c with sum c_i b_i = a solve c @ B = a, so c = a @ B^-1;
        # invert by reducing [B | I]
        aug = np.hstack([linalg.as_array(rows, self.p), np.eye(self.n, dtype=np.int64)])
        red, _ = linalg.rref(aug, self.p)
        inv = red[:, self.n:]
        self.basis = rows
        self._from_basis = linalg.as_array(rows, self.p)
        self._to_basis = inv

    @property
    def polynomial_basis(self) -> bool:
        return self.basis is None

    def to_coords(self, a: "FieldElement") -> tuple:
        """Representation coordinates of an element (basis-aware)."""
        if self.basis is None:
            return a.coeffs
        vec = (np.array(a.coeffs, dtype=np.int64) @ self._to_basis) % self.p
        return tuple(int(x) for x in vec)

    def from_vector(self, coords) -> "FieldElement":
        """Element whose representation coordinates are the given vector."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coords)}")
        if self.basis is None:
            return self.element(coords)
        poly = (np.array(coords, dtype=np.int64) @ self._from_basis) % self.p
        return FieldElement(self, tuple(int(x) for x in poly))

    # -- construction checks -------------------------------------------

    def _is_irreducible(self) -> bool:
        p, n = self.p, self.n
        for d in range(1, n // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                divisor = tail + (1,)
                rem = list(self.modulus)
                for i in range(n, d - 1, -1):
                    c = rem[i]
                    if c:
                        for j in range(d + 1):
                            rem[i - d + j] = (rem[i - d + j] - c * divisor[j]) % p
                if not any(rem):
                    return False
        return True

    def _check_primitive(self):
        order = self.size - 1
        if order == 1:
            if self.gamma != self.one:
                raise ValueError(f"modulus {self.modulus} is not primitive")
            self._pow = [self.one.coeffs]
            self._log = {self.one.coeffs: 0}
            return
        if self.size <= LOG_TABLE_LIMIT:
            # one pass builds the log tables and proves primitivity
            pows = [self.one.coeffs]
            log = {self.one.coeffs: 0}
            acc = self.gamma.coeffs
            k = 1
            while acc != self.one.coeffs:
                pows.append(acc)
                log[acc] = k
                acc = self._mul_coeffs(acc, self.gamma.coeffs)
                k += 1
            if k != order:
                raise ValueError(
                    f"modulus {self.modulus} is not primitive: x has order {k}, need {order}")
            self._pow = pows
            self._log = log
        else:
            for f in _factorize(order):
                if self._pow_coeffs(self.gamma.coeffs, order // f) == self.one.coeffs:
                    raise ValueError(f"modulus {self.modulus} is not primitive")

    # -- coefficient arithmetic ----------------------------------------

    def _mul_coeffs(self, a, b):
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(n):
                    prod[i - n + j] = (prod[i - n + j] - c * mod[j]) % p
        return tuple(prod[:n])

    def _pow_coeffs(self, a, e):
        result = self.one.coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul_coeffs(result, base)
            base = self._mul_coeffs(base, base)
            e >>= 1
        return result

    # -- element constructors ------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.p})")
        return FieldElement(self, coeffs)

    def from_int(self, code: int) -> "FieldElement":
        """Element whose base-p digits (low first) are the digits of code."""
        if not 0 <= code < self.size:
            raise ValueError(f"code {code} out of range for field of size {self.size}")
        coeffs = []
        for _ in range(self.n):
            coeffs.append(code % self.p)
            code //= self.p
        return FieldElement(self, tuple(coeffs))

    def gamma_pow(self, k: int) -> "FieldElement":
        k %= self.size - 1
        if self._pow is not None:
            return FieldElement(self, self._pow[k])
        return FieldElement(self, self._pow_coeffs(self.gamma.coeffs, k))

    def elements(self):
        for code in range(self.size):
            yield self.from_int(code)

    # -- subfields -------------------------------------------------------

    def validate_subfield(self, order: int) -> int:
        """Check GF(order) embeds as a subfield; returns its degree over GF(p)."""
        if order < self.p:
            raise ValueError(f"{order} is not a power of {self.p}")
        t = 0
        m = order
        while m % self.p == 0:
            m //= self.p
            t += 1
        if m != 1 or t == 0:
            raise ValueError(f"{order} is not a power of {self.p}")
        if self.n % t != 0:
            raise ValueError(f"GF({order}) is not a subfield of GF({self.p}^{self.n})")
        return t

    def subfield_basis(self, order: int):
        """Canonical GF(p)-basis of the fixed set of x -> x^order."""
        t = self.validate_subfield(order)
        cached = self._subfield_bases.get(order)
        if cached is not None:
            return cached
        # kernel of the GF(p)-linear map x -> x^order - x
        cols = []
        for i in range(self.n):
            e = tuple(1 if j == i else 0 for j in range(self.n))
            img = self._pow_coeffs(e, order)
            cols.append(tuple((img[j] - e[j]) % self.p for j in range(self.n)))
        mat = [[cols[c][r] for c in range(self.n)] for r in range(self.n)]
        basis = linalg.basis_rows(linalg.kernel_basis(mat, self.p), self.p)
        if len(basis) != t:
            raise AssertionError("subfield dimension mismatch")
        self._subfield_bases[order] = basis
        return basis

    def subfield_coords(self, a: "FieldElement", order: int):
        """Coordinates of a subfield member w.r.t. the canonical subfield basis."""
        basis = self.subfield_basis(order)
        mat = [[basis[i][j] for i in range(len(basis))] for j in range(self.n)]
        coords = linalg.solve(mat, a.coeffs, self.p)
        if coords is None:
            raise ValueError(f"{a} is not in the subfield of order {order}")
        return coords

    # -- plumbing --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FieldContext):
            return NotImplemented
        return ((self.p, self.n, self.modulus, self.basis) ==
                (other.p, other.n, other.modulus, other.basis))

    def __hash__(self):
        return hash((self.p, self.n, self.modulus, self.basis))

    def __repr__(self):
        return f"FieldContext(GF({self.p}^{self.n}), modulus={list(self.modulus)})"


class FieldElement:
    """Immutable element of a FieldContext; supports +, -, *, /, **."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ValueError("elements from distinct field contexts")

    def __add__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.ctx.p
        return FieldElement(self.ctx, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        ctx = self.ctx
        if ctx._log is not None:
            if not any(self.coeffs) or not any(other.coeffs):
                return ctx.zero
            k = ctx._log[self.coeffs] + ctx._log[other.coeffs]
            return FieldElement(ctx, ctx._pow[k % (ctx.size - 1)])
        return FieldElement(ctx, ctx._mul_coeffs(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        ctx = self.ctx
        if not any(self.coeffs):
            if e == 0:
                return ctx.one
            if e < 0:
                raise ZeroDivisionError("inverse of zero field element")
            return ctx.zero
        e %= ctx.size - 1
        if ctx._log is not None:
            k = (ctx._log[self.coeffs] * e) % (ctx.size - 1)
            return FieldElement(ctx, ctx._pow[k])
        return FieldElement(ctx, ctx._pow_coeffs(self.coeffs, e))

    def inverse(self) -> "FieldElement":
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.ctx.size - 2)

    def frobenius(self, i: int, q: int) -> "FieldElement":
        """Raise to q^i, the i-th Frobenius power over the subfield GF(q)."""
        if i < 0:
            raise ValueError("frobenius exponent must be nonnegative")
        self.ctx.validate_subfield(q)
        return self ** (q ** i)

    def in_subfield(self, order: int) -> bool:
        """True iff the element is fixed by x -> x^order."""
        self.ctx.validate_subfield(order)
        return (self ** order) == self

    def order(self) -> int:
        """Multiplicative order; divides p^n - 1."""
        if not any(self.coeffs):
            raise ZeroDivisionError("order of zero field element")
        e = self.ctx.size - 1
        for f in _factorize(e):
            while e % f == 0 and (self ** (e // f)) == self.ctx.one:
                e //= f
        return e

    def to_vector(self) -> tuple:
        """Representation coordinate vector over GF(p), low order first.

        Polynomial-basis coefficients unless the context carries a
        change-of-basis matrix.
        """
        return self.ctx.to_coords(self)

    def to_int(self) -> int:
        code = 0
        for c in reversed(self.coeffs):
            code = code * self.ctx.p + c
        return code

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.ctx.p, self.ctx.n))

    def __repr__(self):
        return f"GF({self.ctx.p}^{self.ctx.n}):{format_element(self)}"


def is_in_subfield(a: FieldElement, order: int) -> bool:
    return a.in_subfield(order)


def format_element(a: FieldElement) -> str:
    """Base-p digit string, low-order digit first."""
    return "".join(str(c) for c in a.coeffs)


def parse_element(ctx: FieldContext, text) -> FieldElement:
    """Parse a digit string, a gamma power like "g^3", or a digit sequence."""
    if isinstance(text, (list, tuple)):
        return ctx.element(text)
    s = str(text).strip()
    if s == "g":
        return ctx.gamma
    if s.startswith("g^"):
        return ctx.gamma_pow(int(s[2:]))
    if len(s) != ctx.n or not all(ch.isdigit() for ch in s):
        raise ValueError(f"cannot parse field element {text!r} for GF({ctx.p}^{ctx.n})")
    return ctx.element([int(ch) for ch in s])
