"""Symplectic, unitary and quadratic forms: canonical forms, diagonalisation
and canonical isometries.

Conventions.  A form lives on row vectors; ``beta(u, v) = u F v^(sigma T)``
and ``Q(v) = v M v^T`` with ``M`` upper triangular and ``F = M + M^T``.
Canonical bases are ordered ``(e_1, ..., e_m, [x, [y]], f_m, ..., f_1)``.
Symplectic and quadratic forms have matrices over F_q, unitary forms over
F_{q^2}.

:func:`transform_to_canonical` returns ``X`` with ``X F X^dagger = lam F_can``.
Internally each form is first reduced to a fixed *reduced form* (a direct
sum of small blocks) and then pulled back through the reduction of the
canonical form itself, so canonical input gives ``X = I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (Degenerate, IncompatibleDimension, KindMismatch, NotIsometric,
                     OddCharRequired, ShapeMismatch, SymmetryViolation, ZeroForm)
from .ff import FieldCtx, iota, quad_roots, solve_norm, sqrt_in_field
from .la import Matrix, block_diag, dagger, fold, star

LABELS = ("Sp", "U", "O0", "O+", "O-")
_ADJ = {"symplectic": "symplectic", "unitary": "unitary", "quadratic": "orthogonal"}


@dataclass(frozen=True)
class FormType:
    label: str
    m: int
    lam: int = 1      # similarity scalar, element of the form's matrix field

    def __str__(self):
        return f"{self.label} m={self.m}"


@dataclass(frozen=True, eq=False)
class Form:
    kind: str                # symplectic | unitary | quadratic
    gram: Matrix
    ctx: FieldCtx
    quad: Matrix | None = None

    @property
    def d(self):
        return self.gram.rows

    @property
    def field(self):
        return self.gram.F

    @property
    def adj(self):
        return _ADJ[self.kind]

    def __eq__(self, other):
        return (isinstance(other, Form) and self.kind == other.kind and self.ctx is other.ctx
                and self.gram == other.gram and self.quad == other.quad)

    def __hash__(self):
        return hash((self.kind, self.gram, self.quad))

    # -- constructors
    @classmethod
    def symplectic(cls, ctx, F):
        F = F if isinstance(F, Matrix) else Matrix(ctx.F, F)
        f = cls("symplectic", F, ctx)
        f.validate()
        return f

    @classmethod
    def unitary(cls, ctx, F):
        F = F if isinstance(F, Matrix) else Matrix(ctx.E, F)
        f = cls("unitary", F, ctx)
        f.validate()
        return f

    @classmethod
    def quadratic(cls, ctx, M):
        """From any matrix representing Q (it is folded to upper triangular)."""
        M = M if isinstance(M, Matrix) else Matrix(ctx.F, M)
        M = fold(M)
        return cls("quadratic", M + M.T, ctx, M)

    @classmethod
    def quadratic_from_gram(cls, ctx, F):
        """Odd q only: Q(v) = beta(v, v) / 2."""
        if not ctx.odd:
            raise OddCharRequired("a symmetric Gram matrix does not determine Q in even characteristic")
        F = F if isinstance(F, Matrix) else Matrix(ctx.F, F)
        Fl = ctx.F
        a = np.triu(F.a).copy()
        for i in range(F.rows):
            a[i, i] = Fl.div(int(a[i, i]), 2)
        f = cls("quadratic", F, ctx, Matrix(Fl, a))
        f.validate()
        return f

    def validate(self):
        F = self.gram
        if not F.is_square():
            raise ShapeMismatch("Gram matrix must be square")
        if self.kind == "symplectic":
            if F != -F.T or any(F[i, i] for i in range(F.rows)):
                raise SymmetryViolation("symplectic Gram must be alternating")
        elif self.kind == "unitary":
            if F != star(F, "unitary"):
                raise SymmetryViolation("unitary Gram must be hermitian")
        elif self.kind == "quadratic":
            M = self.quad
            if M is None or M != fold(M) or F != M + M.T:
                raise SymmetryViolation("quadratic form needs upper-triangular M with F = M + M^T")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    def nondegenerate(self):
        return self.gram.det() != 0

    def scaled(self, c):
        return Form(self.kind, self.gram.scale(c), self.ctx,
                    None if self.quad is None else self.quad.scale(c))

    def transformed(self, P: Matrix) -> "Form":
        """The form with Gram P F P^dagger (and Q-matrix fold(P M P^T))."""
        G = P @ self.gram @ dagger(P, self.adj)
        if self.kind == "quadratic":
            M = fold(P @ self.quad @ P.T)
            return Form("quadratic", G, self.ctx, M)
        return Form(self.kind, G, self.ctx)


# ----------------------------------------------------------------------
# canonical forms and evaluation


def witt_index(label: str, d: int) -> int:
    return {"Sp": d // 2, "U": d // 2, "O0": (d - 1) // 2, "O+": d // 2, "O-": d // 2 - 1}[label]


def _check_dim(label, d, ctx):
    if label not in LABELS:
        raise ValueError(f"unknown form label {label!r}")
    ok = d >= 1
    if label in ("Sp", "O+"):
        ok = d >= 2 and d % 2 == 0
    elif label == "O-":
        ok = d >= 2 and d % 2 == 0
    elif label == "O0":
        ok = d % 2 == 1 and ctx.odd
    if not ok:
        raise IncompatibleDimension(f"no canonical {label} form in dimension {d} over {ctx.label}")


@lru_cache(maxsize=None)
def canonical_form(label: str, d: int, ctx: FieldCtx) -> Form:
    _check_dim(label, d, ctx)
    m = witt_index(label, d)
    if label in ("Sp", "U"):
        K = ctx.E if label == "U" else ctx.F
        a = np.zeros((d, d), dtype=K.dtype)
        for i in range(d):
            a[i, d - 1 - i] = 1
        if label == "Sp":
            for i in range(m):
                a[d - 1 - i, i] = K.neg(1)
        return Form("unitary" if label == "U" else "symplectic", Matrix(K, a), ctx)
    F = ctx.F
    M = np.zeros((d, d), dtype=F.dtype)
    for i in range(m):
        M[i, d - 1 - i] = 1
    if label == "O0":
        M[m, m] = 1
    elif label == "O-":
        M[m, m] = 1
        M[m, m + 1] = 1
        M[m + 1, m + 1] = ctx.gamma
    return Form.quadratic(ctx, Matrix(F, M))


def _vec(form, v):
    if isinstance(v, Matrix):
        return v if v.rows == 1 else v.T
    return Matrix(form.field, [list(v)])


def evaluate_beta(form: Form, u, v) -> int:
    u, v = _vec(form, u), _vec(form, v)
    if u.cols != form.d or v.cols != form.d:
        raise ShapeMismatch("vector length does not match the form")
    return (u @ form.gram @ dagger(v, form.adj))[0, 0]


def evaluate_Q(form: Form, v) -> int:
    if form.kind != "quadratic":
        raise KindMismatch("Q is only defined for quadratic forms")
    v = _vec(form, v)
    if v.cols != form.d:
        raise ShapeMismatch("vector length does not match the form")
    return (v @ form.quad @ v.T)[0, 0]


# ----------------------------------------------------------------------
# canonical vectors


def _first_aniso(A: Matrix, unitary: bool, ctx: FieldCtx) -> list:
    """Smallest i with A_ii != 0 gives v_i; otherwise the lexicographically
    least (i, j) with A_ij != 0 gives v_i + v_j (v_i + zeta v_j, unitary)."""
    d = A.rows
    diag = np.flatnonzero(np.diagonal(A.a))
    if diag.size:
        v = [0] * d
        v[int(diag[0])] = 1
        return v
    nz = np.argwhere(A.a)
    if nz.size == 0:
        raise ZeroForm("form is identically zero")
    i, j = (int(x) for x in nz[0])
    v = [0] * d
    v[i] = 1
    if not unitary:
        v[j] = 1
        return v
    E = ctx.E
    a = A[i, j]
    # beta(v_i + c v_j) = Tr(a c^q); c = zeta unless that trace vanishes
    zq = E.pow(ctx.zeta, ctx.q)
    t = E.mul(a, zq)
    v[j] = ctx.zeta if E.add(t, E.pow(t, ctx.q)) else 1
    return v


def nonsingular_vector(form: Form) -> list:
    """Canonical v with Q(v) != 0, read off the quadratic matrix M."""
    if form.kind != "quadratic":
        raise KindMismatch("nonsingular_vector needs a quadratic form")
    return _first_aniso(form.quad, False, form.ctx)


def anisotropic_vector(form: Form) -> list:
    """Canonical v with beta(v, v) != 0 (unitary, or quadratic with q odd)."""
    if form.kind == "quadratic" and not form.ctx.odd:
        raise OddCharRequired("symmetric forms in even characteristic are alternating")
    if form.kind == "symplectic":
        raise KindMismatch("symplectic forms have no anisotropic vectors")
    return _first_aniso(form.gram, form.kind == "unitary", form.ctx)


def _perp_basis(form: Form, v: Matrix) -> Matrix:
    col = form.gram @ dagger(v, form.adj)          # d x 1
    return col.left_nullspace()


def square_nonsquare_pair(form: Form, rng=None):
    """Canonical u1, u2 with iota(Q(u1)) = 0 and iota(Q(u2)) = 1 (q odd)."""
    ctx = form.ctx
    if not ctx.odd:
        raise OddCharRequired("square/nonsquare pair needs odd q")
    if form.kind != "quadratic" or form.d < 2:
        raise IncompatibleDimension("need a quadratic form of dimension >= 2")
    if not form.nondegenerate():
        raise Degenerate("form is degenerate")
    F = ctx.F
    v1 = Matrix(F, [nonsingular_vector(form)])
    W = _perp_basis(form, v1)
    sub = Form.quadratic(ctx, W @ form.quad @ W.T)
    c = Matrix(F, [nonsingular_vector(sub)])
    v2 = c @ W
    q1, q2 = evaluate_Q(form, v1), evaluate_Q(form, v2)
    i1, i2 = iota(ctx, q1), iota(ctx, q2)
    if i1 != i2:
        return (v1.row(0), v2.row(0)) if i1 == 0 else (v2.row(0), v1.row(0))
    s = sqrt_in_field(ctx, F.div(q1, q2), rng)
    w = v1 + v2.scale(F.mul(ctx.nu, s))
    return (v1.row(0), w.row(0)) if i1 == 0 else (w.row(0), v1.row(0))


# ----------------------------------------------------------------------
# diagonalisation (Lemmas L1 - L4)


def _congr(S, A, kind):
    return S @ A @ dagger(S, kind)


def _eye(K, n):
    return Matrix.identity(K, n)


def _lemma2(A: Matrix):
    """T with T A T^dagger = A1 (+) 0, A1 invertible of size r = rank."""
    _, T, r = A.echelon()
    return T, r


def _lemma1(A: Matrix, k: int, s: int):
    """A has invertible leading k-block and zero rows/cols k..k+s-1; clear the
    rest of the first k columns by a Schur-complement step."""
    K, d = A.F, A.rows
    A1inv = A[:k, :k].inverse()
    low = -(A[k + s:, :k] @ A1inv)
    S = np.eye(d, dtype=np.int64).astype(K.dtype)
    S[k + s:, :k] = low.a
    return Matrix(K, S, check=False)


def _lemma3(A: Matrix, kind: str, ctx: FieldCtx):
    """A = [[0, A1], [A1^*, A2]] (size 2h, A1 invertible): make the leading
    h-block invertible."""
    K, d = A.F, A.rows
    h = d // 2
    A1, A2 = A[:h, h:], A[h:, h:]
    if A2.is_zero():
        U, k3 = _eye(K, h), 0
    else:
        U, k3 = _lemma2(A2)
    S1 = block_diag((A1 @ dagger(U, kind)).inverse(), U)
    rows = []
    eye = np.eye(d, dtype=np.int64)
    if kind == "symplectic":
        first = [eye[h + i] for i in range(k3)]
        last = [eye[i] for i in range(k3)]
        npair = (h - k3) // 2
        for t in range(h - k3):
            i = k3 + t
            (first if t < npair else last).extend([eye[i], eye[h + i]])
        rows = first + last
    else:
        c = 1
        if kind == "unitary" and not ctx.odd:
            c = ctx.zeta
        first = [eye[h + i] for i in range(k3)]
        last = [eye[i] for i in range(k3)]
        for i in range(k3, h):
            r = np.zeros(d, dtype=np.int64)
            r[i] = 1
            r[h + i] = c
            first.append(r)
            last.append(eye[h + i])
        rows = first + last
    S2 = Matrix(K, np.array(rows, dtype=np.int64).astype(K.dtype))
    return S2 @ S1


def _lemma4(A: Matrix, l: int, kind: str, ctx: FieldCtx):
    """A invertible, l <= d/2: S with (S A S^dagger)[:l, :l] invertible."""
    K, d = A.F, A.rows
    if l == 1:
        if A[0, 0]:
            return _eye(K, d)
        v = _first_aniso(A, kind == "unitary", ctx)
        i = next(t for t, x in enumerate(v) if x)
        rows = [v] + [[int(t == s) for s in range(d)] for t in range(d) if t != i]
        return Matrix(K, rows)
    row0 = np.flatnonzero(A.a[0])
    j = int(row0[0])
    perm = list(range(d))
    if j >= l:
        perm[1], perm[j] = perm[j], perm[1]
    P = Matrix.permutation(K, perm)
    B = _congr(P, A, kind)
    B1 = B[:l, :l]
    if B1.det():
        return P
    U, k = _lemma2(B1)
    S2 = block_diag(U, _eye(K, d - l))
    C = _congr(S2, B, kind)
    S3 = _lemma1(C, k, l - k)
    D = _congr(S3, C, kind)
    D1 = D[k:l, l:]
    _, piv = D1.rref()
    order = list(piv) + [t for t in range(d - l) if t not in set(piv)]
    S4 = block_diag(_eye(K, l), Matrix.permutation(K, order))
    E = _congr(S4, D, kind)
    h2 = 2 * (l - k)
    Msub = _lemma3(E[k:k + h2, k:k + h2], kind, ctx)
    S5 = block_diag(_eye(K, k), Msub, _eye(K, d - k - h2))
    return S5 @ S4 @ S3 @ S2 @ P


def _diag(A: Matrix, kind: str, ctx: FieldCtx) -> Matrix:
    K, d = A.F, A.rows
    if A.is_zero():
        return _eye(K, d)
    T, r = _lemma2(A)
    if r == d:
        T = _eye(K, d)
        A1 = A
    else:
        A1 = _congr(T, A, kind)[:r, :r]
    case_s = kind == "symplectic"
    if r <= (2 if case_s else 1):
        return T
    l = 2 * (r // 4) if case_s else r // 2
    S2 = _lemma4(A1, l, kind, ctx)
    A2 = _congr(S2, A1, kind)
    S3 = _lemma1(A2, l, 0)
    A3 = _congr(S3, A2, kind)
    SB = _diag(A3[:l, :l], kind, ctx)
    SC = _diag(A3[l:, l:], kind, ctx)
    Sr = block_diag(SB, SC) @ S3 @ S2
    if r < d:
        Sr = block_diag(Sr, _eye(K, d - r))
    return Sr @ T


def diagonalize(A: Matrix, kind: str, ctx: FieldCtx) -> Matrix:
    """Canonical invertible S with S A S^dagger diagonal (2x2 blocks in the
    symplectic case).  ``kind`` is symplectic, unitary or orthogonal."""
    if kind == "quadratic":
        kind = "orthogonal"
    if kind not in ("symplectic", "unitary", "orthogonal"):
        raise ValueError(f"unknown kind {kind!r}")
    if not A.is_square():
        raise ShapeMismatch("diagonalize needs a square matrix")
    if A != star(A, kind):
        raise SymmetryViolation(f"matrix is not {kind}-symmetric")
    if kind == "symplectic" and any(A[i, i] for i in range(A.rows)):
        raise SymmetryViolation("symplectic matrix must have zero diagonal")
    if kind == "orthogonal" and not ctx.odd:
        raise OddCharRequired("symmetric diagonalisation needs odd q")
    return _diag(A, kind, ctx)


# ----------------------------------------------------------------------
# reduction to fixed block forms


def _reduce(form: Form, rng=None):
    """(X, key, lam): X F X^dagger = lam R_key for a fixed reduced form."""
    ctx, d = form.ctx, form.d
    if form.kind == "symplectic":
        return _reduce_sp(form)
    if form.kind == "unitary":
        return _reduce_u(form, rng)
    if ctx.odd:
        return _reduce_o_odd(form, rng)
    return _reduce_o_even(form, rng)


def _reduce_sp(form):
    K, d = form.field, form.d
    S = _diag(form.gram, "symplectic", form.ctx)
    B = _congr(S, form.gram, "symplectic")
    sc = [1] * d
    for i in range(0, d, 2):
        sc[i] = K.inv(B[i, i + 1])
    return S.scale_rows(sc), ("Sp", d), 1


def _reduce_u(form, rng):
    ctx, K, d = form.ctx, form.field, form.d
    S = _diag(form.gram, "unitary", ctx)
    B = _congr(S, form.gram, "unitary")
    sc = [solve_norm(ctx, ctx.F.inv(ctx.project(B[i, i])), rng) for i in range(d)]
    return S.scale_rows(sc), ("U", d), 1


def _reduce_o_odd(form, rng):
    ctx, F, d = form.ctx, form.ctx.F, form.d
    S = _diag(form.gram, "orthogonal", ctx)
    B = _congr(S, form.gram, "orthogonal")
    a = [B[i, i] for i in range(d)]
    lam = 1
    if d % 2 == 1:
        disc = 1
        for x in a:
            disc = F.mul(disc, x)
        if iota(ctx, disc):
            lam = ctx.xi
    inv_lam = F.inv(lam)
    a = [F.mul(x, inv_lam) for x in a]
    sc, ns = [], []
    for i, x in enumerate(a):
        if iota(ctx, x) == 0:
            sc.append(F.inv(sqrt_in_field(ctx, x, rng)))
        else:
            sc.append(F.inv(sqrt_in_field(ctx, F.div(x, ctx.xi), rng)))
            ns.append(i)
    X = S.scale_rows(sc)                     # X F X^T = lam diag(1 or xi)
    if len(ns) >= 2:
        nu = ctx.nu
        c_inv = F.inv(sqrt_in_field(ctx, F.mul(ctx.xi, F.add(1, F.mul(nu, nu))), rng))
        rows = X.a.copy()
        for t in range(0, len(ns) - 1, 2):
            u, w = X[ns[t]], X[ns[t + 1]]
            rows[ns[t]] = (u + w.scale(nu)).scale(c_inv).a[0]
            rows[ns[t + 1]] = (u.scale(nu) - w).scale(c_inv).a[0]
        X = Matrix(F, rows, check=False)
    odd_one = len(ns) % 2
    if odd_one:
        i = ns[-1]
        perm = list(range(d))
        perm[0], perm[i] = perm[i], perm[0]
        X = Matrix.permutation(F, perm) @ X
    return X, ("O", d, odd_one), lam


def _reduce_o_even(form, rng):
    ctx, F, d = form.ctx, form.ctx.F, form.d
    if d % 2:
        raise Degenerate("quadratic forms of odd dimension are degenerate in even characteristic")
    M = form.quad
    S = _diag(form.gram, "symplectic", ctx)

    def Q(v):
        return (v @ M @ v.T)[0, 0]

    def beta(u, v):
        return (u @ form.gram @ v.T)[0, 0]

    def sq(x):                       # square root in F_q, q even
        return F.pow(x, ctx.q // 2)

    hyp, typeA = [], []
    for i in range(0, d, 2):
        u, w = S[i], S[i + 1]
        x, y, a = Q(u), Q(w), beta(u, w)
        if not x and not y:
            hyp.append((u.scale(F.inv(a)), w))
        elif x and y:
            su, sw = sq(x), sq(y)
            typeA.append((u.scale(F.inv(su)), w.scale(F.inv(sw)), F.div(a, F.mul(su, sw))))
        elif x:
            hyp.append((w.scale(F.inv(a)), u + w.scale(F.div(x, a))))
        else:
            hyp.append((u.scale(F.inv(a)), w + u.scale(F.div(y, a))))
    cur = None
    for (u3, u4, b) in typeA:
        if cur is None:
            cur = (u3, u4, b)
            continue
        u1, u2, a = cur
        hyp.append((u1 + u3, (u1 + u4).scale(F.inv(b))))
        r1, r2 = u1, u2.scale(b) + (u3 + u4).scale(a)
        ab = F.mul(a, b)
        y = F.mul(b, F.add(F.mul(a, a), b))
        if y:
            s = sq(y)
            cur = (r1, r2.scale(F.inv(s)), F.div(ab, s))
        else:
            iab = F.inv(ab)
            hyp.append((r2.scale(iab), r1 + r2.scale(iab)))
            cur = None
    aniso = None
    if cur is not None:
        u, w, a = cur
        ia2 = F.inv(F.mul(a, a))
        roots = quad_roots(ctx, 1, 1, ia2, rng)
        if ctx.in_subfield(roots[0]):
            s0 = ctx.project(quad_roots(ctx, 1, a, 1, rng)[0])
            e = u.scale(s0) + w
            ia = F.inv(a)
            f = (u + e.scale(ia)).scale(ia)
            hyp.append((e, f))
        else:
            e = ctx.project(quad_roots(ctx, 1, 1, F.add(ctx.gamma, ia2), rng)[0])
            aniso = (u, w.scale(F.inv(a)) + u.scale(e))
    rows = []
    for e, f in hyp:
        rows.extend([e.a[0], f.a[0]])
    if aniso:
        rows.extend([aniso[0].a[0], aniso[1].a[0]])
    X = Matrix(F, np.array(rows), check=False)
    return X, ("O", d, int(aniso is not None)), 1


# ----------------------------------------------------------------------
# canonical transformation


@lru_cache(maxsize=None)
def _canonical_reduction(label, d, ctx):
    form = canonical_form(label, d, ctx)
    Y, key, lam = _reduce(form)
    return Y.inverse(), key, lam


def _label_of(form: Form, key) -> str:
    d = form.d
    if form.kind == "symplectic":
        return "Sp"
    if form.kind == "unitary":
        return "U"
    if d % 2 == 1:
        return "O0"
    for lab in ("O+", "O-"):
        if _canonical_reduction(lab, d, form.ctx)[1] == key:
            return lab
    raise AssertionError("reduced form matches no canonical quadratic form")


def transform_to_canonical(form: Form, rng=None):
    """(X, FormType) with X F X^dagger = lam F_can (and, for quadratic forms,
    fold(X M X^T) = lam M_can)."""
    if form.kind == "quadratic" and not form.ctx.odd and form.d % 2:
        raise Degenerate("odd-dimensional quadratic forms are degenerate for even q")
    if not form.nondegenerate():
        raise Degenerate("form is degenerate")
    Xin, key, lam_in = _reduce(form, rng)
    label = _label_of(form, key)
    Yinv, key_c, lam_c = _canonical_reduction(label, form.d, form.ctx)
    X = Yinv @ Xin
    K = form.field
    lam = K.div(lam_in, lam_c)
    if lam != 1:
        ctx = form.ctx
        # only the odd-dimensional orthogonal case can get here
        if iota(ctx, lam) == 0:
            X = X.scale(K.inv(sqrt_in_field(ctx, lam, rng)))
            lam = 1
        else:
            X = X.scale(K.inv(sqrt_in_field(ctx, K.div(lam, ctx.xi), rng)))
            lam = ctx.xi
    return X, FormType(label, witt_index(label, form.d), lam)


def classify(form: Form, rng=None) -> FormType:
    return transform_to_canonical(form, rng)[1]


def discriminant(form: Form):
    """iota(det F) for q odd, else None."""
    if not form.ctx.odd:
        return None
    K = form.field
    dt = form.gram.det()
    if form.kind == "unitary":
        dt = form.ctx.project(dt)
    if dt == 0:
        raise Degenerate("form is degenerate")
    return iota(form.ctx, dt)


def isometry(form1: Form, form2: Form, rng=None) -> Matrix:
    """T with T F1 T^dagger = F2 (and matching Q for quadratic forms)."""
    if form1.kind != form2.kind:
        raise KindMismatch(f"cannot compare a {form1.kind} form with a {form2.kind} form")
    if form1.d != form2.d or form1.ctx is not form2.ctx:
        raise KindMismatch("forms have different dimension or field")
    X1, t1 = transform_to_canonical(form1, rng)
    X2, t2 = transform_to_canonical(form2, rng)
    if t1.label != t2.label:
        raise NotIsometric(f"forms have types {t1.label} and {t2.label}")
    if t1.lam != t2.lam:
        K = form1.field
        raise NotIsometric("forms are similar but not isometric", similar=K.div(t1.lam, t2.lam))
    return X2.inverse() @ X1


def check_congruence(form: Form, X: Matrix, target: Form, lam=1) -> bool:
    """X F X^dagger == lam * target (Gram, and fold of Q for quadratics)."""
    G = X @ form.gram @ dagger(X, form.adj)
    if G != target.gram.scale(lam):
        return False
    if form.kind == "quadratic":
        return fold(X @ form.quad @ X.T) == target.quad.scale(lam)
    return True
