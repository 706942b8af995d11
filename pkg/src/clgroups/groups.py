"""Similarity factors, spinor norms, reflections and membership tests for
the groups Omega <= I <= Delta attached to a form.

Families: ``SL``, ``Sp``, ``SU``, ``O0`` (odd dimension, q odd), ``O+``,
``O-`` (q odd) and ``Oeven`` (q even, either type; ``spec.label`` keeps
the type).  Omega is SL, Sp, SU or the kernel of the spinor norm on SO.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache

from .errors import (Degenerate, IncompatibleDimension, NotIsometry, NotQuasisimple,
                     NotSimilarity, OutOfRange, SingularVector)
from .ff import FieldCtx, default_rng, hilbert90, iota
from .forms import (Form, canonical_form, evaluate_Q, nonsingular_vector,
                    square_nonsquare_pair, transform_to_canonical)
from .la import Matrix, block_diag, dagger, fold, outer

FAMILIES = ("SL", "Sp", "SU", "O0", "O+", "O-", "Oeven")
_LABEL = {"Sp": "Sp", "SU": "U", "O0": "O0", "O+": "O+", "O-": "O-"}


class Level(str, Enum):
    OMEGA = "Omega"
    I_NOT_OMEGA = "I\\Omega"
    DELTA_NOT_I = "Delta\\I"
    OUTSIDE = "outside"


@dataclass(frozen=True, eq=False)
class GroupSpec:
    family: str
    ctx: FieldCtx
    d: int
    form: Form | None = None
    label: str | None = None       # form label (Sp, U, O0, O+, O-)
    X: Matrix | None = None        # X F X^dagger = lam F_can

    @property
    def K(self):
        """Field of the matrix entries."""
        return self.ctx.E if self.family == "SU" else self.ctx.F

    @property
    def orthogonal(self):
        return self.family in ("O0", "O+", "O-", "Oeven")

    @cached_property
    def Xinv(self):
        return self.X.inverse() if self.X is not None else None

    def to_canonical(self, g: Matrix) -> Matrix:
        return g if self.X is None else self.X @ g @ self.Xinv

    def from_canonical(self, c: Matrix) -> Matrix:
        return c if self.X is None else self.Xinv @ c @ self.X

    def __repr__(self):
        return f"GroupSpec({self.family}, d={self.d}, {self.ctx.label}" + (
            f", {self.label})" if self.label and self.family == "Oeven" else ")")


def _check_params(family, d, ctx):
    if family == "SL":
        ok = d >= 2
    elif family == "Sp":
        ok = d >= 2 and d % 2 == 0
    elif family == "SU":
        ok = d >= 2
    elif family == "O0":
        ok = d >= 3 and d % 2 == 1 and ctx.odd
    else:
        ok = d >= 3 and d % 2 == 0
    if not ok:
        raise NotQuasisimple(f"{family} in dimension {d} over {ctx.label} is outside the supported range")


def make_spec(family: str, d: int, ctx: FieldCtx, form: Form | None = None, rng=None) -> GroupSpec:
    """GroupSpec for ``family``; with ``form=None`` the canonical form is used.
    Orthogonal families over even q are normalised to ``Oeven``."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family == "SL":
        _check_params("SL", d, ctx)
        return GroupSpec("SL", ctx, d)
    if family == "Oeven":
        if form is None:
            raise ValueError("Oeven needs a form (or use O+/O- with even q)")
        family = "O+"
    if family == "O0" and not ctx.odd:
        raise NotQuasisimple("no odd-dimensional orthogonal groups for even q")
    _check_params(family, d, ctx)
    label = _LABEL[family]
    if form is None:
        form = canonical_form(label, d, ctx)
    if form.d != d:
        raise IncompatibleDimension("form dimension does not match")
    X, ft = transform_to_canonical(form, rng)
    if ft.label != label and not (family in ("O+", "O-") and ft.label in ("O+", "O-")):
        raise IncompatibleDimension(f"form has type {ft.label}, not {label}")
    label = ft.label
    fam = family
    if fam in ("O+", "O-"):
        fam = ("Oeven" if not ctx.odd else label)
    _check_params(fam, d, ctx)
    return GroupSpec(fam, ctx, d, form, label, X)


def spec_from_form(form: Form, rng=None) -> GroupSpec:
    X, ft = transform_to_canonical(form, rng)
    fam = {"Sp": "Sp", "U": "SU", "O0": "O0", "O+": "O+", "O-": "O-"}[ft.label]
    return make_spec(fam, form.d, form.ctx, form, rng)


# ----------------------------------------------------------------------
# tau


def _check_square(g, form):
    if g.shape != (form.d, form.d) or g.F is not form.field:
        raise NotSimilarity("matrix has the wrong shape or field")


def similarity_factor(g: Matrix, form: Form):
    """tau(g) if g is a similarity of the form (full check), else None."""
    if g.shape != (form.d, form.d) or g.F is not form.field:
        return None
    G = g @ form.gram @ dagger(g, form.adj)
    t = _tau_from(G, form)
    if t is None or t == 0 or G != form.gram.scale(t):
        return None
    if form.kind == "quadratic" and fold(g @ form.quad @ g.T) != form.quad.scale(t):
        return None
    return t


def _tau_from(G, form):
    F = form.gram
    K = form.field
    col = F.a[:, 0]
    for i in range(form.d):
        if col[i]:
            return K.div(int(G.a[i, 0]), int(col[i]))
    return None


def tau(g: Matrix, form: Form, check: bool = False) -> int:
    """beta(wg, v_1 g) / beta(w, v_1) for the first basis vector w with
    beta(w, v_1) != 0."""
    _check_square(g, form)
    if check:
        t = similarity_factor(g, form)
        if t is None:
            raise NotSimilarity("matrix is not a similarity of the form")
        return t
    F = form.gram
    K = form.field
    i = next(i for i in range(form.d) if F[i, 0])
    wi = g[i]
    v1 = g[0]
    val = (wi @ F @ dagger(v1, form.adj))[0, 0]
    return K.div(val, F[i, 0])


# ----------------------------------------------------------------------
# spinor norm and reflections


@dataclass(frozen=True)
class SpinorWitness:
    spin: int
    chi: Matrix | None = None     # odd q
    rank: int | None = None       # even q: rank(I + g)


def is_isometry(g: Matrix, form: Form) -> bool:
    return similarity_factor(g, form) == 1


def spinor_norm(g: Matrix, form: Form, check: bool = True, witness: bool = False):
    """Spinor norm (q odd) or Dickson invariant (q even) of an isometry."""
    if form.kind != "quadratic":
        raise NotIsometry("spinor norm needs a quadratic form")
    if check and not is_isometry(g, form):
        raise NotIsometry("matrix is not an isometry of the form")
    ctx, K, d = form.ctx, form.field, form.d
    eye = Matrix.identity(K, d)
    if not ctx.odd:
        r = (eye + g).rank()
        w = SpinorWitness(r % 2, rank=r)
        return w if witness else w.spin
    a = eye - g
    N = a.left_nullspace()
    piv = set(N.rref()[1]) if N.rows else set()
    comp = [j for j in range(d) if j not in piv]
    if not comp:
        w = SpinorWitness(0, chi=Matrix.zeros(K, 0))
        return w if witness else 0
    Mc = eye[comp, :]
    chi = (Mc @ form.gram @ (Mc @ a).T).scale(2 % ctx.p)
    s = iota(ctx, chi.det())
    w = SpinorWitness(s, chi=chi)
    return w if witness else s


def reflection(v, form: Form) -> Matrix:
    """u -> u - beta(u, v) v / Q(v)."""
    K = form.field
    v = v if isinstance(v, Matrix) else Matrix(K, [list(v)])
    Qv = evaluate_Q(form, v)
    if Qv == 0:
        raise SingularVector("Q(v) = 0")
    col = form.gram @ v.T
    return Matrix.identity(K, form.d) - outer(col, v.scale(K.inv(Qv)))


def canonical_reflections(form: Form, rng=None):
    """(R0, R1) with spin(R_i) = i for q odd; (R0,) with spin 1 for q even."""
    ctx = form.ctx
    if form.d < 2:
        raise IncompatibleDimension("need d >= 2")
    if not form.nondegenerate():
        raise Degenerate("form is degenerate")
    if not ctx.odd:
        return (reflection(nonsingular_vector(form), form),)
    u1, u2 = square_nonsquare_pair(form, rng)
    # spin(refl_u) = iota(2 Q(u)), so R_i uses the vector with iota(2Q) = i
    if iota(ctx, 2) == 0:
        return reflection(u1, form), reflection(u2, form)
    return reflection(u2, form), reflection(u1, form)


# ----------------------------------------------------------------------
# membership


def membership(g: Matrix, spec: GroupSpec) -> Level:
    K, d = spec.K, spec.d
    if g.shape != (d, d) or g.F is not K:
        return Level.OUTSIDE
    dt = g.det()
    if dt == 0:
        return Level.OUTSIDE
    if spec.family == "SL":
        return Level.OMEGA if dt == 1 else Level.DELTA_NOT_I
    t = similarity_factor(g, spec.form)
    if t is None:
        return Level.OUTSIDE
    if t != 1:
        return Level.DELTA_NOT_I
    if spec.family == "Sp":
        return Level.OMEGA
    if spec.family == "SU":
        return Level.OMEGA if dt == 1 else Level.I_NOT_OMEGA
    if dt != 1:
        return Level.I_NOT_OMEGA
    return Level.OMEGA if spinor_norm(g, spec.form, check=False) == 0 else Level.I_NOT_OMEGA


def go_image(g: Matrix, form: Form):
    """(det bit, spin bit) for q odd, spin bit for q even."""
    if not is_isometry(g, form):
        raise NotIsometry("matrix is not an isometry of the form")
    s = spinor_norm(g, form, check=False)
    if not form.ctx.odd:
        return s
    return (0 if g.det() == 1 else 1, s)


# ----------------------------------------------------------------------
# canonical-basis similarities (the conformal generators before conjugation)


def canonical_similarity(label: str, d: int, ctx: FieldCtx, lam: int) -> Matrix:
    """A(lam) / C(lam) in the canonical basis; tau is lam (Sp, O+, even q),
    lam^(q+1) (U, lam in F_{q^2}) or lam^2 (O0, O-)."""
    F = ctx.F
    if label == "U":
        return Matrix.scalar(ctx.E, d, lam)
    if not ctx.odd:
        return Matrix.scalar(F, d, F.pow(lam, ctx.q // 2))
    m = d // 2
    if label in ("Sp", "O+"):
        return Matrix.diag(F, [lam] * m + [1] * m)
    l2 = F.mul(lam, lam)
    if label == "O0":
        return Matrix.diag(F, [l2] * m + [lam] + [1] * m)
    if label == "O-":
        m = (d - 2) // 2
        return Matrix.diag(F, [l2] * m + [lam, lam] + [1] * m)
    raise ValueError(label)


def canonical_c0(d: int, ctx: FieldCtx) -> Matrix:
    """gamma I_m (+) [[0,1],[gamma,0]] (+) I_m for the canonical O- form."""
    F, g = ctx.F, ctx.gamma
    m = (d - 2) // 2
    mid = Matrix(F, [[0, 1], [g, 0]])
    return block_diag(Matrix.scalar(F, m, g), mid, Matrix.identity(F, m))


def canonical_b(d: int, ctx: FieldCtx, lam: int) -> Matrix:
    """diag(lam^q, 1, ..., 1, lam^-1), the unitary B(lam)."""
    E = ctx.E
    return Matrix.diag(E, [E.pow(lam, ctx.q)] + [1] * (d - 2) + [E.inv(lam)])


# ----------------------------------------------------------------------
# random elements (test plumbing, not uniform samplers)


def _random_invertible(K, d, rng):
    while True:
        A = Matrix(K, [[K.random(rng) for _ in range(d)] for _ in range(d)], check=False)
        if A.det():
            return A


@lru_cache(maxsize=512)
def _inverse_transform(form: Form) -> Matrix:
    # canonical, so caching cannot change any output
    return transform_to_canonical(form)[0].inverse()


@lru_cache(maxsize=512)
def _type_of(form: Form):
    return transform_to_canonical(form)[1]


def random_isometry(form: Form, rng=None) -> Matrix:
    rng = default_rng(rng)
    A = _random_invertible(form.field, form.d, rng)
    Xinv = _inverse_transform(form)
    X2, _ = transform_to_canonical(form.transformed(A), rng)
    g = Xinv @ X2 @ A
    if form.kind == "quadratic" and form.d >= 2:
        refl = canonical_reflections(form, rng)
        for R in refl:
            if rng.random() < 0.5:
                g = g @ R
        # a random reflection too, when one is cheap to find
        for _ in range(4):
            v = [form.field.random(rng) for _ in range(form.d)]
            if evaluate_Q(form, v):
                g = reflection(v, form) @ g
                break
    return g


def random_similarity(form: Form, rng=None) -> Matrix:
    rng = default_rng(rng)
    ctx, d = form.ctx, form.d
    g = random_isometry(form, rng)
    Xinv = _inverse_transform(form)
    label = _type_of(form).label
    K = form.field
    lam = K.random_nonzero(rng)
    C = canonical_similarity(label, d, ctx, lam)
    if label == "O-" and ctx.odd and rng.random() < 0.5:
        C = C @ canonical_c0(d, ctx)
    return g @ Xinv @ C @ Xinv.inverse()


def random_element(spec: GroupSpec, rng=None, level: str = "Delta") -> Matrix:
    """Random element of Delta, I or Omega for ``spec``."""
    rng = default_rng(rng)
    K, d = spec.K, spec.d
    if spec.family == "SL":
        g = _random_invertible(K, d, rng)
        if level in ("I", "Omega"):
            g = Matrix.diag(K, [K.inv(g.det())] + [1] * (d - 1)) @ g
        return g
    form = spec.form
    if level == "Delta":
        return random_similarity(form, rng)
    g = random_isometry(form, rng)
    if level == "I" or spec.family == "Sp":
        return g
    if spec.family == "SU":
        beta = hilbert90(spec.ctx, K.inv(g.det()))
        return spec.from_canonical(canonical_b(d, spec.ctx, beta)) @ g
    return omega_correct(g, spec, rng)


def random_omega_reflections(form: Form, rng=None, pairs: int = 3) -> Matrix:
    """Product of ``pairs`` pairs of reflections, each pair with equal spin,
    so the result lies in Omega (orthogonal forms only)."""
    rng = default_rng(rng)
    ctx, K, d = form.ctx, form.field, form.d
    g = Matrix.identity(K, d)
    pending = {}
    done = 0
    while done < pairs:
        v = [K.random(rng) for _ in range(d)]
        Qv = evaluate_Q(form, v)
        if not Qv:
            continue
        cls = iota(ctx, K.add(Qv, Qv)) if ctx.odd else 1
        R = reflection(v, form)
        if cls in pending:
            g = g @ pending.pop(cls) @ R
            done += 1
        else:
            pending[cls] = R
    return g


def omega_correct(g: Matrix, spec: GroupSpec, rng=None) -> Matrix:
    """Multiply an isometry by canonical reflections to land in Omega."""
    refl = canonical_reflections(spec.form, rng)
    if spec.ctx.odd:
        R0, R1 = refl
        if g.det() != 1:
            g = g @ R0
        if spinor_norm(g, spec.form, check=False):
            g = g @ R0 @ R1
    elif spinor_norm(g, spec.form, check=False):
        g = g @ refl[0]
    return g


# ----------------------------------------------------------------------
# orders


def _prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


def group_order(family: str, d: int, q: int, level: str = "Omega") -> int:
    """|Omega|, |I| or |Delta| by the classical order formulas.  For
    orthogonal groups use O0, O+, O- (q odd or even)."""
    if level not in ("Omega", "I", "Delta"):
        raise ValueError("level must be Omega, I or Delta")
    if family == "Oeven":
        raise ValueError("pass O+ or O- for orthogonal groups over even q")
    if d < 1 or q < 2:
        raise OutOfRange("d >= 1 and q >= 2 required")
    odd = q % 2 == 1
    if family == "SL":
        om = q ** (d * (d - 1) // 2) * _prod(q**i - 1 for i in range(2, d + 1))
        return {"Omega": om, "I": om, "Delta": om * (q - 1)}[level]
    if family == "Sp":
        if d % 2:
            raise OutOfRange("Sp needs even d")
        m = d // 2
        om = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return {"Omega": om, "I": om, "Delta": om * (q - 1)}[level]
    if family == "SU":
        om = q ** (d * (d - 1) // 2) * _prod(q**i - (-1) ** i for i in range(2, d + 1))
        return {"Omega": om, "I": om * (q + 1), "Delta": om * (q * q - 1)}[level]
    if family == "O0":
        if d % 2 == 0 or not odd:
            raise OutOfRange("O0 needs odd d and odd q")
        m = d // 2
        so = q ** (m * m) * _prod(q ** (2 * i) - 1 for i in range(1, m + 1))
        return {"Omega": so // 2, "I": 2 * so, "Delta": so * (q - 1)}[level]
    if family in ("O+", "O-"):
        if d % 2:
            raise OutOfRange("O+/O- need even d")
        eps = 1 if family == "O+" else -1
        m = d // 2
        full = 2 * q ** (m * (m - 1)) * (q**m - eps) * _prod(q ** (2 * i) - 1 for i in range(1, m))
        # tau maps Delta onto F_q^x for even d; Omega has index 4 (q odd) or 2 in I
        if odd:
            return {"Omega": full // 4, "I": full, "Delta": full * (q - 1)}[level]
        return {"Omega": full // 2, "I": full, "Delta": full * (q - 1)}[level]
    raise ValueError(f"unknown family {family!r}")
