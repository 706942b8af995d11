"""Finite fields built from Conway polynomials.

Elements are plain Python ints: ``c_0 + c_1 p + ... + c_{n-1} p^{n-1}`` stands
for ``c_0 + c_1 X + ... + c_{n-1} X^{n-1}`` modulo the Conway polynomial.  So
0 and 1 are the field's zero and one, the prime subfield is ``range(p)``, and
``X`` itself (the canonical primitive element, for n > 1) is the int ``p``.

A :class:`FieldCtx` couples F_q = GF(p, k) with E = F_{q^2} = GF(p, 2k).  The
Conway compatibility condition makes ``xi = zeta^(q+1)`` a root of the degree
k Conway polynomial, which fixes the embedding F_q -> F_{q^2}.  The canonical
ordering of elements is lexicographic on the digit tuple (c_0, c_1, ...) of
the F_{q^2} representation; see :meth:`GF.key`.
"""

from __future__ import annotations

import random
from functools import cached_property, lru_cache
from math import isqrt

import numpy as np

from .conway import conway_polynomial
from .errors import EvenCharacteristic, ZeroInput

TABLE_LIMIT = 1 << 16   # fields up to this size get exp/log/Zech tables
DEFAULT_SEED = 1


def default_rng(rng=None):
    """Explicit RNG plumbing: ``None`` means a fresh generator with the
    documented default seed, never a module-level one."""
    if rng is None:
        return random.Random(DEFAULT_SEED)
    if isinstance(rng, int):
        return random.Random(rng)
    return rng


class GF:
    """The field GF(p^n) with Conway defining polynomial.

    ``mode`` is one of ``prime`` (n = 1), ``table`` (n > 1 and p^n <= 2^16)
    or ``poly`` (digit-vector arithmetic, used for large extensions).
    """

    def __init__(self, p: int, n: int):
        self.poly = conway_polynomial(p, n)
        self.p, self.n = p, n
        self.order = p**n
        self._qm1 = self.order - 1
        self._pw = [p**i for i in range(n + 1)]
        if n == 1:
            self.mode = "prime"
            self.gen = (-self.poly[0]) % p
        else:
            self.gen = p
            self.mode = "table" if self.order <= TABLE_LIMIT else "poly"
        if self.mode == "table":
            self._build_tables()
            self.dtype = np.int64
        elif self.mode == "prime" and p < (1 << 31):
            self.dtype = np.int64
        else:
            self.dtype = object
        if p == 2 and n > 1:
            self._mask = sum(c << i for i, c in enumerate(self.poly[:n]))

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (field, (self.p, self.n))

    # ------------------------------------------------------------------
    # table construction
    def _build_tables(self):
        p, n, Q = self.p, self.n, self.order
        exp = np.zeros(2 * (Q - 1) + 1, dtype=np.int64)
        log = np.zeros(Q, dtype=np.int64)
        if p == 2:
            mask, top = self._mask_int(), 1 << n
            x = 1
            for i in range(Q - 1):
                exp[i] = x
                log[x] = i
                x <<= 1
                if x & top:
                    x ^= top | mask
        else:
            neg = [(-c) % p for c in self.poly[:n]]
            dig = [1] + [0] * (n - 1)
            for i in range(Q - 1):
                x = 0
                for j in range(n - 1, -1, -1):
                    x = x * p + dig[j]
                exp[i] = x
                log[x] = i
                t = dig[-1]
                dig = [0] + dig[:-1]
                if t:
                    dig = [(dig[j] + t * neg[j]) % p for j in range(n)]
        if exp[0] != 1 or len(set(exp[: Q - 1].tolist())) != Q - 1:
            raise AssertionError(f"Conway polynomial for GF({p}^{n}) is not primitive")
        exp[Q - 1 : 2 * (Q - 1)] = exp[: Q - 1]
        zech = np.empty(Q - 1, dtype=np.int64)
        for i in range(Q - 1):
            v = int(exp[i])
            c0 = v % p
            w = v - c0 + (c0 + 1) % p
            zech[i] = log[w] if w else -1
        self._exp, self._log, self._zech = exp, log, zech
        if p == 2:
            self._neg = np.arange(Q, dtype=np.int64)
        else:
            negt = np.zeros(Q, dtype=np.int64)
            for a in range(Q):
                negt[a] = self._neg_digits(a)
            self._neg = negt
        # python-list copies are faster for scalar indexing
        self._lexp = exp.tolist()
        self._llog = log.tolist()
        self._lzech = zech.tolist()
        self._lneg = self._neg.tolist()

    def _mask_int(self):
        return sum(c << i for i, c in enumerate(self.poly[: self.n]))

    # ------------------------------------------------------------------
    # digits
    def digits(self, a: int) -> list:
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds) -> int:
        ds = list(ds)
        if len(ds) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(ds)}")
        x = 0
        for c in reversed(ds):
            x = x * self.p + (int(c) % self.p)
        return x

    def key(self, a: int) -> tuple:
        """Sort key realising the lexicographic order on (c_0, c_1, ...)."""
        return tuple(self.digits(a))

    def _neg_digits(self, a):
        p = self.p
        return self.from_digits([(-c) % p for c in self.digits(a)])

    # ------------------------------------------------------------------
    # scalar arithmetic
    def add(self, a: int, b: int) -> int:
        m = self.mode
        if m == "prime":
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        if self.p == 2:
            return a ^ b
        if m == "table":
            lg = self._llog
            la = lg[a]
            d = lg[b] - la
            if d < 0:
                d += self._qm1
            z = self._lzech[d]
            return 0 if z < 0 else self._lexp[la + z]
        p = self.p
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.mode == "prime":
            return (-a) % self.p
        if self.p == 2:
            return a
        if self.mode == "table":
            return self._lneg[a]
        return self._neg_digits(a)

    def sub(self, a: int, b: int) -> int:
        if self.mode == "prime":
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        m = self.mode
        if m == "prime":
            return a * b % self.p
        if not a or not b:
            return 0
        if m == "table":
            lg = self._llog
            return self._lexp[lg[a] + lg[b]]
        if self.p == 2:
            return self._clmul_reduce(a, b)
        return self._poly_mul(a, b)

    def _clmul_reduce(self, a, b):
        n = self.n
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        mask = self._mask
        for i in range(r.bit_length() - 1, n - 1, -1):
            if r >> i & 1:
                r ^= (1 << i) | (mask << (i - n))
        return r

    def _poly_mul(self, a, b):
        p, n = self.p, self.n
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        poly = self.poly
        for i in range(2 * n - 2, n - 1, -1):
            t = prod[i] % p
            if t:
                for j in range(n):
                    prod[i - n + j] -= t * poly[j]
        return self.from_digits([c % p for c in prod[:n]])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if e == 0:
            return 1
        if not a:
            return 0
        if self.mode == "prime":
            return pow(a, e, self.p)
        if self.mode == "table":
            return self._lexp[self._llog[a] * e % self._qm1]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.mode == "prime":
            return pow(a, -1, self.p)
        if self.mode == "table":
            lg = self._llog[a]
            return self._lexp[(self._qm1 - lg) % self._qm1]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.order)

    def random(self, rng) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.order)

    # ------------------------------------------------------------------
    # vectorised arithmetic on numpy arrays (used by la and the kernels)
    def array(self, data):
        return np.array(data, dtype=self.dtype)

    @cached_property
    def _ufuncs(self):
        return {
            "add": np.frompyfunc(self.add, 2, 1),
            "mul": np.frompyfunc(self.mul, 2, 1),
            "neg": np.frompyfunc(self.neg, 1, 1),
            "inv": np.frompyfunc(self.inv, 1, 1),
        }

    def vadd(self, A, B):
        if self.dtype is object:
            return self._ufuncs["add"](A, B).astype(object)
        if self.mode == "prime":
            return (A + B) % self.p
        if self.p == 2:
            return A ^ B
        A, B = np.broadcast_arrays(A, B)
        lg = self._log
        la = lg[A]
        d = (lg[B] - la) % self._qm1
        z = self._zech[d]
        r = np.where(z < 0, 0, self._exp[la + np.maximum(z, 0)])
        return np.where(A == 0, B, np.where(B == 0, A, r))

    def vneg(self, A):
        if self.dtype is object:
            return self._ufuncs["neg"](A).astype(object)
        if self.mode == "prime":
            return (-A) % self.p
        return self._neg[A]

    def vsub(self, A, B):
        return self.vadd(A, self.vneg(B))

    def vmul(self, A, B):
        if self.dtype is object:
            return self._ufuncs["mul"](A, B).astype(object)
        if self.mode == "prime":
            return (A * B) % self.p
        lg = self._log
        r = self._exp[lg[A] + lg[B]]
        return np.where((A == 0) | (B == 0), 0, r)

    def vscale(self, c: int, A):
        if self.dtype is object:
            return self.vmul(np.full(A.shape, c, dtype=object), A) if A.size else A.copy()
        if self.mode == "prime":
            return (A * c) % self.p
        if c == 0:
            return np.zeros_like(A)
        r = self._exp[self._log[A] + self._llog[c]]
        return np.where(A == 0, 0, r)

    def vpow(self, A, e: int):
        if self.mode == "table":
            e %= self._qm1
            r = self._exp[(self._log[A] * e) % self._qm1]
            return np.where(A == 0, 0 if e else 1, r)
        f = np.frompyfunc(lambda x: self.pow(x, e), 1, 1)
        return f(A).astype(self.dtype)

    def vinv(self, A):
        if self.mode == "table":
            return self._exp[(self._qm1 - self._log[A]) % self._qm1]
        if self.mode == "prime" and self.dtype is not object:
            return self.vpow(A, self.p - 2)
        return self._ufuncs["inv"](A).astype(self.dtype)


@lru_cache(maxsize=None)
def field(p: int, n: int) -> GF:
    """Cached constructor; fields are immutable after construction."""
    return GF(p, n)


# ----------------------------------------------------------------------
# discrete logarithms


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple:
    from sympy import factorint

    return tuple(sorted(factorint(n).items()))


def _bsgs(F: GF, g: int, h: int, n: int) -> int:
    """x in [0, n) with g^x = h, where g has order n."""
    m = isqrt(n - 1) + 1 if n > 1 else 1
    baby = {}
    x = 1
    for j in range(m):
        baby.setdefault(x, j)
        x = F.mul(x, g)
    giant = F.inv(F.pow(g, m))
    y = h
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % n
        y = F.mul(y, giant)
    raise ValueError("logarithm does not exist")


def discrete_log(F: GF, a: int, base: int | None = None) -> int:
    """Pohlig-Hellman over the factorisation of |F^x|, baby-step/giant-step
    on each prime.  ``base`` must be primitive (default: F.gen)."""
    if a == 0:
        raise ZeroInput("dlog of zero")
    g = F.gen if base is None else base
    N = F.order - 1
    if N == 1:
        return 0
    x, mod = 0, 1
    for ell, e in _factor(N):
        gl = F.pow(g, N // ell)
        xl, lpow = 0, 1
        for _ in range(e):
            h = F.pow(F.mul(a, F.pow(g, -xl)), N // (lpow * ell))
            xl += _bsgs(F, gl, h, ell) * lpow
            lpow *= ell
        # CRT combine
        t = ((xl - x) * pow(mod, -1, lpow)) % lpow
        x += mod * t
        mod *= lpow
    return x % N


# ----------------------------------------------------------------------
# the context F_q < F_{q^2}


class FieldCtx:
    """F = GF(p, k) inside E = GF(p, 2k), with ``xi`` and ``zeta``."""

    def __init__(self, p: int, k: int):
        self.p, self.k = p, k
        self.q = p**k
        self.F = field(p, k)
        self.E = field(p, 2 * k)
        self.xi = self.F.gen
        self.zeta = self.E.gen
        E, q = self.E, self.q
        xiE = E.pow(self.zeta, q + 1)
        val = 0
        for i, c in enumerate(self.F.poly):
            val = E.add(val, E.mul(c, E.pow(xiE, i)))
        if val != 0:
            raise AssertionError("Conway polynomials are not compatible")
        self.xi_E = xiE
        self._basis = [E.pow(xiE, i) for i in range(k)]
        self._setup_projection()

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    @property
    def label(self):
        return f"GF({self.p}^{self.k})"

    @property
    def odd(self):
        return self.p != 2

    # -- embedding / projection
    def _setup_projection(self):
        p, k, E = self.p, self.k, self.E
        rows = [E.digits(b) for b in self._basis]      # k x 2k over F_p
        # choose k independent digit positions greedily, invert that block
        A = [[rows[i][j] for i in range(k)] for j in range(2 * k)]   # 2k x k
        sel, work = [], []
        for j, row in enumerate(A):
            v = row[:]
            for (sj, w, pc) in work:
                if v[pc]:
                    f = v[pc]
                    v = [(x - f * y) % p for x, y in zip(v, w)]
            nz = [i for i, x in enumerate(v) if x]
            if nz:
                pc = nz[0]
                inv = pow(v[pc], -1, p)
                v = [x * inv % p for x in v]
                work.append((j, v, pc))
                sel.append(j)
            if len(sel) == k:
                break
        # B[c][i] = digit sel[c] of basis i ; we need its inverse
        B = [[rows[i][j] for i in range(k)] for j in sel]
        self._proj_cols = sel
        self._proj_inv = _inv_mod_p(B, p)
        if self.F.mode == "table" and self.E.mode == "table":
            Fl, El = self.F._lexp, self.E._lexp
            emb = [0] * self.q
            for i in range(self.q - 1):
                emb[Fl[i]] = El[i * (self.q + 1)]
            self._emb = emb
            self._proj = {v: a for a, v in enumerate(emb)}
        else:
            self._emb = None
            self._proj = None

    def embed(self, a: int) -> int:
        if self.k == 1:
            return a
        if self._emb is not None:
            return self._emb[a]
        E = self.E
        r = 0
        for c, b in zip(self.F.digits(a), self._basis):
            if c:
                r = E.add(r, E.mul(c, b))
        return r

    def in_subfield(self, z: int) -> bool:
        if self.k == 1:
            return z < self.p
        if self._proj is not None:
            return z in self._proj
        return self.E.pow(z, self.q) == z

    def project(self, z: int) -> int:
        """Inverse of :meth:`embed`; raises ValueError off the subfield."""
        if self.k == 1:
            if z >= self.p:
                raise ValueError("element not in subfield")
            return z
        if self._proj is not None:
            try:
                return self._proj[z]
            except KeyError:
                raise ValueError("element not in subfield") from None
        p = self.p
        d = self.E.digits(z)
        rhs = [d[j] for j in self._proj_cols]
        inv = self._proj_inv
        c = [sum(inv[i][j] * rhs[j] for j in range(self.k)) % p for i in range(self.k)]
        a = self.F.from_digits(c)
        if self.embed(a) != z:
            raise ValueError("element not in subfield")
        return a

    def key(self, a: int) -> tuple:
        """Canonical order key for an element of F_q (via F_{q^2})."""
        return self.E.key(self.embed(a))

    # -- canonical constants (deterministic, so caching is safe)
    @cached_property
    def gamma(self) -> int:
        return canonical_gamma(self)

    @cached_property
    def nu(self) -> int:
        return canonical_nu(self)


def _inv_mod_p(M, p):
    n = len(M)
    A = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        r = next(i for i in range(c, n) if A[i][c] % p)
        A[c], A[r] = A[r], A[c]
        inv = pow(A[c][c], -1, p)
        A[c] = [x * inv % p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def make_field(p: int, k: int = 1) -> FieldCtx:
    # one context per (p, k), however the arguments are spelled
    return _make_field(int(p), int(k))


@lru_cache(maxsize=None)
def _make_field(p, k):
    return FieldCtx(p, k)


def parse_field(text: str) -> FieldCtx:
    """Parse ``GF(p^k)``, ``GF(p)`` or ``GF(q)`` with q a prime power."""
    from .errors import ParseError

    t = text.strip().replace(" ", "")
    if not (t.startswith("GF(") and t.endswith(")")):
        raise ParseError(f"bad field spec {text!r}")
    body = t[3:-1]
    try:
        if "^" in body:
            p, k = (int(x) for x in body.split("^"))
        else:
            p, k = int(body), 1
    except ValueError:
        raise ParseError(f"bad field spec {text!r}") from None
    if k == 1 and p > 1:
        fac = _factor(p)
        if len(fac) == 1:
            p, k = fac[0]
    return make_field(p, k)


# ----------------------------------------------------------------------
# canonical field constructions


def frobenius(ctx: FieldCtx, z: int) -> int:
    """z -> z^q on F_{q^2}."""
    return ctx.E.pow(z, ctx.q)


def iota(ctx: FieldCtx, a: int) -> int:
    """Square class of a nonzero element of F_q (q odd)."""
    if not ctx.odd:
        raise EvenCharacteristic("iota needs odd q")
    if a == 0:
        raise ZeroInput("iota(0)")
    return 0 if ctx.F.pow(a, (ctx.q - 1) // 2) == 1 else 1


def _sort(ctx, r1, r2):
    E = ctx.E
    return (r1, r2) if E.key(r1) <= E.key(r2) else (r2, r1)


def _sqrt_E(ctx: FieldCtx, D: int, rng) -> int:
    """Some square root of D in F_{q^2} (odd q).  Cantor-Zassenhaus: split
    X^2 - D via (X + delta)^((Q-1)/2) in F_{q^2}[X]/(X^2 - D)."""
    E = ctx.E
    if D == 0:
        return 0
    Q = E.order
    if E.pow(D, (Q - 1) // 2) != 1:
        raise ValueError("not a square in F_{q^2}")
    add, mul = E.add, E.mul
    e = (Q - 1) // 2
    while True:
        delta = E.random(rng)
        # element u*X + v of the quotient ring
        ru, rv = 0, 1
        n = e
        bu, bv = 1, delta
        while n:
            if n & 1:
                ru, rv = add(mul(ru, bv), mul(rv, bu)), add(mul(rv, bv), mul(mul(ru, bu), D))
            bu, bv = add(mul(bu, bv), mul(bv, bu)), add(mul(bv, bv), mul(mul(bu, bu), D))
            n >>= 1
        # gcd(X^2 - D, ru X + rv - 1): a linear factor when ru != 0
        if ru:
            x = E.div(E.sub(1, rv), ru)
            if mul(x, x) == D:
                return x


def quad_roots(ctx: FieldCtx, a: int, b: int, c: int, rng=None) -> tuple:
    """Both roots of aX^2 + bX + c (coefficients in F_q) in F_{q^2},
    smallest first."""
    if a == 0:
        raise ZeroInput("leading coefficient is zero")
    F, E = ctx.F, ctx.E
    if ctx.odd:
        rng = default_rng(rng)
        D = F.sub(F.mul(b, b), F.mul(4 % ctx.p, F.mul(a, c)))
        inv2a = E.inv(ctx.embed(F.add(a, a)))
        mb = ctx.embed(F.neg(b))
        if D == 0:
            r = E.mul(mb, inv2a)
            return (r, r)
        s = _sqrt_E(ctx, ctx.embed(D), rng)
        return _sort(ctx, E.mul(E.add(mb, s), inv2a), E.mul(E.sub(mb, s), inv2a))
    if b == 0:
        r = ctx.embed(F.pow(F.div(c, a), ctx.q // 2))
        return (r, r)
    # substitute X = (b/a) Y:  Y^2 + Y + ac/b^2
    cc = ctx.embed(F.div(F.mul(a, c), F.mul(b, b)))
    y = _artin_schreier(E, cc)
    ba = ctx.embed(F.div(b, a))
    return _sort(ctx, E.mul(ba, y), E.mul(ba, E.add(y, 1)))


def _artin_schreier(E: GF, c: int) -> int:
    """A root of Y^2 + Y = c in E (characteristic 2) by F_2-linear algebra
    on the polynomial basis; the free variable is set to zero."""
    n = E.n
    cols = [E.add(E.mul(1 << i, 1 << i), 1 << i) for i in range(n)]
    # rows of the augmented system: bit r of sum_i y_i cols[i] = bit r of c
    rows = []
    for r in range(n):
        coeffs = 0
        for i in range(n):
            if cols[i] >> r & 1:
                coeffs |= 1 << i
        rows.append([coeffs, c >> r & 1])
    piv = []
    rank = 0
    for i in range(n):
        sel = next((r for r in range(rank, n) if rows[r][0] >> i & 1), None)
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        for r in range(n):
            if r != rank and rows[r][0] >> i & 1:
                rows[r][0] ^= rows[rank][0]
                rows[r][1] ^= rows[rank][1]
        piv.append(i)
        rank += 1
    if any(rows[r][1] for r in range(rank, n)):
        raise ValueError("Y^2 + Y = c has no solution in this field")
    y = 0
    for r, i in enumerate(piv):
        if rows[r][1]:
            y |= 1 << i
    return y


def canonical_sqrt(ctx: FieldCtx, a: int, rng=None) -> int:
    """Canonical square root in F_{q^2} of a in F_q."""
    if a == 0:
        return 0
    if not ctx.odd:
        return ctx.embed(ctx.F.pow(a, ctx.q // 2))
    return quad_roots(ctx, 1, 0, ctx.F.neg(a), rng)[0]


def sqrt_in_field(ctx: FieldCtx, a: int, rng=None) -> int:
    """Canonical square root of a square a of F_q, as an element of F_q."""
    return ctx.project(canonical_sqrt(ctx, a, rng))


def solve_trace(ctx: FieldCtx, a: int) -> int:
    """Canonical eta in F_{q^2} with eta + eta^q = a."""
    if a == 0:
        raise ZeroInput("trace equation with zero right-hand side")
    E = ctx.E
    if ctx.odd:
        return ctx.embed(ctx.F.div(a, 2))
    # eta = x + y zeta over the basis (1, zeta): x drops out, y = a/(zeta+zeta^q)
    t = E.add(ctx.zeta, frobenius(ctx, ctx.zeta))
    return E.mul(E.div(ctx.embed(a), t), ctx.zeta)


def _norm_c(p: int) -> int:
    """The constant c in F_p (p = 3 mod 4) making X^2 - 2cX - 1 irreducible."""
    m, s = 0, p + 1
    while s % 2 == 0:
        s //= 2
        m += 1
    e = (p + 1) // 4
    half = pow(2, -1, p)
    c = 0
    for _ in range(m - 2):
        c = pow((c + 1) * half % p, e, p)
    return pow((c - 1) * half % p, e, p)


def solve_norm(ctx: FieldCtx, a: int, rng=None) -> int:
    """Canonical eta in F_{q^2} with eta^(q+1) = a."""
    if a == 0:
        raise ZeroInput("norm equation with zero right-hand side")
    F = ctx.F
    if not ctx.odd or iota(ctx, a) == 0:
        return canonical_sqrt(ctx, a, rng)
    if ctx.q % 4 == 1:
        return quad_roots(ctx, 1, 0, a, rng)[0]
    beta = sqrt_in_field(ctx, F.neg(a), rng)
    c = _norm_c(ctx.p)
    return quad_roots(ctx, 1, F.neg(F.mul(F.add(beta, beta), c)), a, rng)[0]


def canonical_gamma(ctx: FieldCtx) -> int:
    F, E = ctx.F, ctx.E
    if ctx.odd:
        t = E.add(ctx.zeta, frobenius(ctx, ctx.zeta))
        return ctx.project(E.div(ctx.xi_E, E.mul(t, t)))
    if ctx.k % 2 == 1:
        return 1
    a = 1
    while True:
        r = quad_roots(ctx, 1, 1, a)[0]
        if not ctx.in_subfield(r):
            return a
        a = ctx.project(r)


def canonical_nu(ctx: FieldCtx) -> int:
    if not ctx.odd:
        raise EvenCharacteristic("nu is only defined for odd q")
    E, z = ctx.E, ctx.zeta
    num = E.mul(2, E.pow(z, (ctx.q + 1) // 2))
    return ctx.project(E.div(num, E.sub(z, frobenius(ctx, z))))


def dlog(ctx: FieldCtx, a: int, base: str = "xi") -> int:
    """log to base xi (a in F_q) or zeta (a in F_{q^2})."""
    if base == "xi":
        return discrete_log(ctx.F, a)
    if base == "zeta":
        return discrete_log(ctx.E, a)
    raise ValueError("base must be 'xi' or 'zeta'")


def elt_str(F: GF, a: int) -> str:
    return ",".join(str(c) for c in F.digits(a))


def parse_elt(F: GF, text: str) -> int:
    from .errors import ParseError

    try:
        cs = [int(x) for x in text.split(",")]
    except ValueError:
        raise ParseError(f"bad element {text!r}") from None
    if len(cs) != F.n or any(not 0 <= c < F.p for c in cs):
        raise ParseError(f"element {text!r} needs {F.n} coefficients in [0, {F.p})")
    return F.from_digits(cs)


def hilbert90(ctx: FieldCtx, delta: int) -> int:
    """Canonical beta in F_{q^2} with beta^(q-1) = delta, for delta of norm 1."""
    E = ctx.E
    if E.pow(delta, ctx.q + 1) != 1:
        raise ValueError("delta must have norm 1")
    if delta == 1:
        return 1
    if delta == E.neg(1):
        return E.sub(ctx.zeta, frobenius(ctx, ctx.zeta))
    return E.add(1, E.inv(delta))
