"""The quotient Delta/Omega: presentations P1 and P2, images of elements as
canonical words, and canonical coset representatives.

Generators are the conformal generator matrices written in the canonical basis and
conjugated into the basis of the given form: for ``Y`` in canonical
coordinates the generator is ``X^-1 Y X`` where ``X F X^dagger = lam F_can``.

A few relations are adjusted to the normalisations used here; each one is checked by
:func:`verify_presentation`:

* ``spin(R_i) = i`` makes ``c(-1) = r_{iota(2)}`` for O0 and
  ``c(-1) = (r0 r1)^(1 + iota(-1))`` for O-.
* For O+ ``c(xi)^(q-1) = c(1)`` is trivial, so P2 has ``c^(q-1) = 1``.
* The unitary image is ``a(mu) b(beta)`` with ``mu^(q+1) = tau(g)`` and
  ``beta^(q-1) = det(g) mu^-d`` (the determinant of B(beta) is beta^(q-1)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from functools import lru_cache

from .errors import NotInDelta, NotQuasisimple
from .ff import dlog, hilbert90, iota, solve_norm, sqrt_in_field
from .forms import canonical_form
from .groups import (GroupSpec, Level, canonical_b, canonical_c0, canonical_reflections,
                     canonical_similarity, group_order, membership, similarity_factor,
                     spinor_norm)
from .la import Matrix

# ----------------------------------------------------------------------
# generators


def _canon_label(spec):
    return {"SL": None, "Sp": "Sp", "SU": "U"}.get(spec.family, spec.label)


@lru_cache(maxsize=256)
def _canonical_refl(label, d, ctx):
    return canonical_reflections(canonical_form(label, d, ctx))


@lru_cache(maxsize=8192)
def _gen_canonical(spec: GroupSpec, name: str, lam: int | None) -> Matrix:
    """Generator in canonical coordinates (no X conjugation)."""
    ctx, d, fam = spec.ctx, spec.d, spec.family
    if fam == "SL":
        return Matrix.diag(ctx.F, [lam] + [1] * (d - 1))
    if fam == "Sp":
        return canonical_similarity("Sp", d, ctx, lam)
    if fam == "SU":
        if name == "a":
            return canonical_similarity("U", d, ctx, lam)
        return canonical_b(d, ctx, lam)
    if name in ("r0", "r1"):
        return _canonical_refl(spec.label, d, ctx)[int(name[1])]
    if name == "c0":
        return canonical_c0(d, ctx)
    return canonical_similarity(spec.label, d, ctx, lam)


@lru_cache(maxsize=8192)
def generator(spec: GroupSpec, name: str, lam: int | None = None) -> Matrix:
    """X0 matrix ``name`` (a, b, c, c0, r0, r1) at parameter ``lam``, in the
    basis of the GroupSpec's form."""
    return spec.from_canonical(_gen_canonical(spec, name, lam))


def generators_X0(spec: GroupSpec) -> list:
    """[(name, matrix)] for the generating X0 elements: A(xi), B(zeta),
    R0, R1, C(xi), C0 as applicable."""
    ctx, fam = spec.ctx, spec.family
    if fam in ("SL", "Sp"):
        return [("A(xi)", generator(spec, "a", ctx.xi))]
    if fam == "SU":
        return [("A(zeta)", generator(spec, "a", ctx.zeta)),
                ("B(zeta)", generator(spec, "b", ctx.zeta))]
    out = [("R0", generator(spec, "r0"))]
    if fam != "Oeven":
        out.append(("R1", generator(spec, "r1")))
    out.append(("C(xi)", generator(spec, "c", ctx.xi)))
    if fam == "O-":
        out.append(("C0", generator(spec, "c0")))
    return out


# ----------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """P1: generators indexed by field elements, relations as schemas."""
    family: str
    generators: tuple
    relations: tuple

    def dump(self):
        return "\n".join(self.relations)


def build_P1(spec: GroupSpec) -> Presentation:
    fam = spec.family
    mult = "{g}(l){g}(m) = {g}(lm)"
    rr = ("r0^2 = 1", "r1^2 = 1", "(r0 r1)^2 = 1")
    if fam in ("SL", "Sp"):
        return Presentation(fam, ("a(l)",), (mult.format(g="a"),))
    if fam == "SU":
        return Presentation(fam, ("a(l)", "b(l)"), (
            mult.format(g="a"), mult.format(g="b"), "b(l)^(q+1) = 1",
            "a(l)^(q-1) = b(l)^d", "[a(l), b(m)] = 1"))
    if fam == "Oeven":
        return Presentation(fam, ("r0", "c(l)"), (mult.format(g="c"), "r0^2 = 1", "[r0, c(l)] = 1"))
    if fam == "O0":
        return Presentation(fam, ("r0", "r1", "c(l)"), (mult.format(g="c"),) + rr + (
            "[r0, c(l)] = 1", "[r1, c(l)] = 1", "c(-1) = r_iota(2)"))
    if fam == "O+":
        return Presentation(fam, ("r0", "r1", "c(l)"), (mult.format(g="c"),) + rr + (
            "r0^c(l) = r_iota(l)", "r1^c(l) = r_(1+iota(l))"))
    return Presentation(fam, ("r0", "r1", "c0", "c(l)"), (mult.format(g="c"),) + rr + (
        "[r0, c(l)] = 1", "[r1, c(l)] = 1", "c(-1) = (r0 r1)^(1+iota(-1))",
        "[c0, c(l)] = 1", "c0^2 = c(gamma)", "r0^c0 = r1", "r1^c0 = r0"))


@dataclass(frozen=True)
class PcPresentation:
    """P2 with normal forms.

    * ``cyclic``: a^i, 0 <= i < n.
    * ``unitary``: a^i b^j, i < q-1, j < q+1, a^(q-1) = b^d.
    * ``orth``: r0^s r1^t c^k (no r1 for Oeven), k < n, c^n = r-word ``wrap``;
      conjugation by c swaps r0, r1 when ``swap``.
    """
    family: str
    kind: str
    generators: tuple
    relations: tuple
    n: int                        # order of the top generator modulo the rest
    m: int = 1                    # unitary: order of b
    d: int = 0                    # unitary: a^(q-1) = b^d
    wrap: tuple = (0, 0)
    swap: bool = False

    @property
    def nbits(self):
        return 2 if self.generators[:2] == ("r0", "r1") else (1 if self.kind == "orth" else 0)

    def identity(self):
        return QuotientWord(self, self._normal((0, 0, 0)))

    def _normal(self, e):
        if self.kind == "cyclic":
            return (e[0] % self.n,)
        if self.kind == "unitary":
            i, j = e[0], e[1]
            w, i = divmod(i, self.n)
            return (i, (j + w * self.d) % self.m)
        s, t, k = e
        w, k = divmod(k, self.n)
        if w % 2:
            s, t = s ^ self.wrap[0], t ^ self.wrap[1]
        return (s & 1, t & 1, k) if self.nbits == 2 else (s & 1, k)

    def word(self, exps):
        exps = tuple(int(x) for x in exps)
        if self.kind == "orth" and self.nbits == 1:
            exps = (exps[0], 0, exps[1])
        return QuotientWord(self, self._normal(exps))

    def multiply(self, u: "QuotientWord", v: "QuotientWord") -> "QuotientWord":
        x, y = u.exps, v.exps
        if self.kind == "cyclic":
            return QuotientWord(self, self._normal((x[0] + y[0],)))
        if self.kind == "unitary":
            return QuotientWord(self, self._normal((x[0] + y[0], x[1] + y[1])))
        if self.nbits == 1:
            x, y = (x[0], 0, x[1]), (y[0], 0, y[1])
        s, t, k = x
        s2, t2, k2 = y
        # c^k r0^s2 r1^t2 = r-word' c^k: c^-1 r0 c = r1 when swap
        if self.swap and k % 2:
            s2, t2 = t2, s2
        return QuotientWord(self, self._normal((s ^ s2, t ^ t2, k + k2)))

    def elements(self):
        """All normal forms (in lexicographic exponent order)."""
        if self.kind == "cyclic":
            return [QuotientWord(self, (i,)) for i in range(self.n)]
        if self.kind == "unitary":
            return [QuotientWord(self, (i, j)) for i in range(self.n) for j in range(self.m)]
        if self.nbits == 1:
            return [QuotientWord(self, (s, k)) for s in (0, 1) for k in range(self.n)]
        return [QuotientWord(self, (s, t, k)) for s in (0, 1) for t in (0, 1) for k in range(self.n)]

    def order(self):
        return len(self.elements())

    def generator_words(self):
        out = []
        for i in range(len(self.generators)):
            e = [0] * len(self.generators)
            e[i] = 1
            out.append(self.word(e))
        return out

    def dump(self):
        return "\n".join(self.relations)


def build_P2(spec: GroupSpec) -> PcPresentation:
    fam, q, d = spec.family, spec.ctx.q, spec.d
    if fam in ("SL", "Sp"):
        return PcPresentation(fam, "cyclic", ("a",), ("a^(q-1) = 1",), q - 1)
    if fam == "SU":
        return PcPresentation(fam, "unitary", ("a", "b"),
                              ("[a, b] = 1", "b^(q+1) = 1", "a^(q-1) = b^d"), q - 1, q + 1, d)
    rr = ("r0^2 = 1", "r1^2 = 1", "(r0 r1)^2 = 1")
    if fam == "Oeven":
        return PcPresentation(fam, "orth", ("r0", "c"), ("r0^2 = 1", "[r0, c] = 1", "c^(q-1) = 1"), q - 1)
    if fam == "O0":
        w = (1, 0) if iota(spec.ctx, 2) == 0 else (0, 1)
        return PcPresentation(fam, "orth", ("r0", "r1", "c"), rr + (
            "[r0, c] = 1", "[r1, c] = 1", f"c^((q-1)/2) = r{w.index(1)}"), (q - 1) // 2, wrap=w)
    if fam == "O+":
        return PcPresentation(fam, "orth", ("r0", "r1", "c"), rr + (
            "r0^c = r1", "r1^c = r0", "c^(q-1) = 1"), q - 1, swap=True)
    e = (1 + iota(spec.ctx, spec.ctx.F.neg(1))) % 2
    return PcPresentation(fam, "orth", ("r0", "r1", "c"), rr + (
        "r0^c = r1", "r1^c = r0", "c^(q-1) = " + ("r0 r1" if e else "1")), q - 1, wrap=(e, e), swap=True)


# ----------------------------------------------------------------------
# words and witnesses


@dataclass(frozen=True)
class CosetWitness:
    tau: int
    det: int | None = None
    mu: int | None = None          # unitary: mu^(q+1) = tau
    beta: int | None = None        # unitary: beta^(q-1) = det mu^-d
    lam: int | None = None         # orthogonal: C = C(lam) (times C0 if twisted)
    twisted: bool = False          # O-: tau nonsquare, C = C0 C(lam)
    a: int | None = None           # det(h)
    b: int | None = None           # spin(h)
    bprime: int | None = None


@dataclass(frozen=True)
class QuotientWord:
    """Word in P1 (``exps`` a tuple of (generator, parameter) letters, each
    to the first power) or P2 (``exps`` the normal-form exponent vector)."""
    presentation: object
    exps: tuple
    witness: CosetWitness | None = dfield(default=None, compare=False)

    def is_identity(self):
        if isinstance(self.presentation, PcPresentation):
            return not any(self.exps)
        return not self.exps

    def __mul__(self, other):
        return self.presentation.multiply(self, other)

    def __str__(self):
        P = self.presentation
        if isinstance(P, PcPresentation):
            names = P.generators
            if P.kind == "orth" and len(self.exps) == 2:
                names = ("r0", "c")
            return " ".join(f"{n}^{e}" for n, e in zip(names, self.exps) if e)
        return " ".join(n if lam is None else f"{n}({lam})" for n, lam in self.exps)


# ----------------------------------------------------------------------
# images


def _tau_of(g: Matrix, spec: GroupSpec) -> int:
    if g.shape != (spec.d, spec.d) or g.F is not spec.K:
        raise NotInDelta("matrix has the wrong shape or field")
    if spec.family == "SL":
        dt = g.det()
        if dt == 0:
            raise NotInDelta("matrix is singular")
        return dt
    t = similarity_factor(g, spec.form)
    if t is None:
        raise NotInDelta("matrix is not a similarity of the form")
    return t


def _orth_decompose(g: Matrix, spec: GroupSpec, t: int, rng):
    """(C, witness) with h = X g X^-1 C^-1 an isometry of the canonical form."""
    ctx, F, d = spec.ctx, spec.ctx.F, spec.d
    label = spec.label
    twisted = False
    if spec.family in ("Oeven", "O+"):
        lam = t
    elif spec.family == "O0" or iota(ctx, t) == 0:
        lam = sqrt_in_field(ctx, t, rng)
    else:
        lam = sqrt_in_field(ctx, F.div(t, ctx.gamma), rng)
        twisted = True
    C = canonical_similarity(label, d, ctx, lam)
    if twisted:
        C = canonical_c0(d, ctx) @ C
    h = spec.to_canonical(g) @ C.inverse()
    can = canonical_form(label, d, ctx)
    b = spinor_norm(h, can, check=False)
    a = h.det()
    bp = b if a == 1 else b ^ 1
    if not ctx.odd:
        bp = b
    return C, CosetWitness(t, lam=lam, twisted=twisted, a=a, b=b, bprime=bp)


def _unitary_decompose(g: Matrix, spec: GroupSpec, t: int, rng):
    ctx, E, d = spec.ctx, spec.ctx.E, spec.d
    mu = solve_norm(ctx, ctx.project(t), rng)
    dt = g.det()
    delta = E.div(dt, E.pow(mu, d))
    beta = hilbert90(ctx, delta)
    return CosetWitness(t, det=dt, mu=mu, beta=beta)


def image_P1(g: Matrix, spec: GroupSpec, rng=None) -> QuotientWord:
    """Canonical word for the coset Omega g in P1, with its witness."""
    P = build_P1(spec)
    t = _tau_of(g, spec)
    fam = spec.family
    if fam in ("SL", "Sp"):
        letters = (("a", t),) if t != 1 else ()
        return QuotientWord(P, letters, CosetWitness(t, det=g.det() if fam == "SL" else None))
    if fam == "SU":
        w = _unitary_decompose(g, spec, t, rng)
        letters = tuple(x for x in (("a", w.mu), ("b", w.beta)) if x[1] != 1)
        return QuotientWord(P, letters, w)
    _, w = _orth_decompose(g, spec, t, rng)
    letters = []
    if w.bprime:
        letters.append(("r0", None))
    if w.b and spec.family != "Oeven":
        letters.append(("r1", None))
    if w.twisted:
        letters.append(("c0", None))
    if w.lam != 1:
        letters.append(("c", w.lam))
    return QuotientWord(P, tuple(letters), w)


def image_P2(g: Matrix, spec: GroupSpec, rng=None) -> QuotientWord:
    """Normal form of Omega g in P2 (at most two discrete logarithms)."""
    P = build_P2(spec)
    ctx = spec.ctx
    t = _tau_of(g, spec)
    fam = spec.family
    if fam in ("SL", "Sp"):
        return QuotientWord(P, P._normal((dlog(ctx, t),)), CosetWitness(t))
    if fam == "SU":
        tf = ctx.project(t)
        i = dlog(ctx, tf)
        dt = g.det()
        ld = dlog(ctx, dt, "zeta")
        diff = ld - i * spec.d
        j = (diff // (ctx.q - 1)) % (ctx.q + 1)
        return QuotientWord(P, P._normal((i, j)), CosetWitness(t, det=dt))
    _, w = _orth_decompose(g, spec, t, rng)
    if fam == "O-":
        F = ctx.F
        lam_c = sqrt_in_field(ctx, F.div(ctx.xi, ctx.gamma), rng)
        if w.twisted:
            k = 2 * dlog(ctx, F.div(w.lam, lam_c)) + 1
        else:
            k = 2 * dlog(ctx, w.lam)
    else:
        k = dlog(ctx, w.lam)
    if fam == "Oeven":
        return QuotientWord(P, P._normal((w.b, 0, k)), w)
    return QuotientWord(P, P._normal((w.bprime, w.b, k)), w)


def coset_rep(g: Matrix, spec: GroupSpec, rng=None, witness: bool = False):
    """Canonical representative of Omega g."""
    t = _tau_of(g, spec)
    ctx, d, fam = spec.ctx, spec.d, spec.family
    if fam in ("SL", "Sp"):
        rep, w = generator(spec, "a", t), CosetWitness(t)
    elif fam == "SU":
        w = _unitary_decompose(g, spec, t, rng)
        rep = spec.from_canonical(canonical_similarity("U", d, ctx, w.mu) @ canonical_b(d, ctx, w.beta))
    else:
        C, w = _orth_decompose(g, spec, t, rng)
        refl = _canonical_refl(spec.label, d, ctx)
        Y = C
        if fam == "Oeven":
            if w.b:
                Y = refl[0] @ Y
        else:
            if w.b:
                Y = refl[1] @ Y
            if w.bprime:
                Y = refl[0] @ Y
        rep = spec.from_canonical(Y)
    return (rep, w) if witness else rep


# ----------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    spec: GroupSpec
    checked: int = 0
    failures: list = dfield(default_factory=list)
    p2_order: int | None = None
    index: int | None = None

    @property
    def ok(self):
        return not self.failures and self.p2_order == self.index

    def __str__(self):
        head = f"{self.spec}: {self.checked} relators checked, {len(self.failures)} failures"
        head += f", |P2| = {self.p2_order}, [Delta:Omega] = {self.index}"
        return "\n".join([head] + [f"  FAIL {f}" for f in self.failures])


def _comm(x, y):
    return x.inverse() @ y.inverse() @ x @ y


def _conj(x, y):
    return y.inverse() @ x @ y


def _index(spec: GroupSpec) -> int:
    fam = "O+" if spec.family == "Oeven" and spec.label == "O+" else (
        "O-" if spec.family == "Oeven" else spec.family)
    q, d = spec.ctx.q, spec.d
    return group_order(fam, d, q, "Delta") // group_order(fam, d, q, "Omega")


def verify_presentation(spec: GroupSpec, full_pairs_limit: int = 16) -> VerifyReport:
    """Instantiate every relator of P1 and P2 with the X0 matrices and check
    that it lies in Omega.  Two-parameter schemas run over all l with m the
    generator of the multiplicative group (this implies every pair), and
    over all pairs when the group has at most ``full_pairs_limit`` elements."""
    rep = VerifyReport(spec)
    ctx, d, fam = spec.ctx, spec.d, spec.family
    K = spec.K
    eye = Matrix.identity(K, d)
    gen = ctx.zeta if fam == "SU" else ctx.xi
    units = [x for x in range(1, K.order)]
    seconds = units if len(units) <= full_pairs_limit else [gen]

    def check(text, lhs, rhs=None):
        rep.checked += 1
        M = lhs if rhs is None else lhs @ rhs.inverse()
        if membership(M, spec) != Level.OMEGA:
            rep.failures.append(text)

    G = lambda name, lam=None: generator(spec, name, lam)  # noqa: E731
    mults = {"SL": "a", "Sp": "a", "SU": "ab"}.get(fam, "c")
    for g in mults:
        for l in units:
            for m in seconds:
                check(f"{g}({l}){g}({m}) = {g}({K.mul(l, m)})", G(g, l) @ G(g, m), G(g, K.mul(l, m)))
    if fam == "SU":
        q = ctx.q
        for l in units:
            check(f"b({l})^(q+1) = 1", G("b", l) ** (q + 1))
            check(f"a({l})^(q-1) = b({l})^d", G("a", l) ** (q - 1), G("b", l) ** d)
            for m in seconds:
                check(f"[a({l}), b({m})] = 1", _comm(G("a", l), G("b", m)))
    if spec.orthogonal:
        R0 = G("r0")
        check("r0^2 = 1", R0 @ R0)
        if fam == "Oeven":
            for l in units:
                check(f"[r0, c({l})] = 1", _comm(R0, G("c", l)))
        else:
            R1 = G("r1")
            R = (R0, R1)
            check("r1^2 = 1", R1 @ R1)
            check("(r0 r1)^2 = 1", (R0 @ R1) ** 2)
            F = ctx.F
            for l in units:
                C = G("c", l)
                for i in (0, 1):
                    if fam == "O+":
                        j = (i + iota(ctx, l)) % 2
                        check(f"r{i}^c({l}) = r{j}", _conj(R[i], C), R[j])
                    else:
                        check(f"[r{i}, c({l})] = 1", _comm(R[i], C))
            m1 = F.neg(1)
            if fam == "O0":
                check("c(-1) = r_iota(2)", G("c", m1), R[iota(ctx, 2)])
            if fam == "O-":
                e = (1 + iota(ctx, m1)) % 2
                check("c(-1) = (r0 r1)^(1+iota(-1))", G("c", m1), (R0 @ R1) ** e)
                C0 = G("c0")
                for l in units:
                    check(f"[c0, c({l})] = 1", _comm(C0, G("c", l)))
                check("c0^2 = c(gamma)", C0 @ C0, G("c", ctx.gamma))
                check("r0^c0 = r1", _conj(R0, C0), R1)
                check("r1^c0 = r0", _conj(R1, C0), R0)
    _verify_P2(spec, check, eye)
    rep.p2_order = build_P2(spec).order()
    rep.index = _index(spec)
    return rep


def p2_generator_matrices(spec: GroupSpec) -> dict:
    ctx, fam = spec.ctx, spec.family
    if fam in ("SL", "Sp"):
        return {"a": generator(spec, "a", ctx.xi)}
    if fam == "SU":
        return {"a": generator(spec, "a", ctx.zeta), "b": generator(spec, "b", ctx.zeta)}
    out = {"r0": generator(spec, "r0")}
    if fam != "Oeven":
        out["r1"] = generator(spec, "r1")
    if fam == "O-":
        lam_c = sqrt_in_field(ctx, ctx.F.div(ctx.xi, ctx.gamma))
        out["c"] = generator(spec, "c", lam_c) @ generator(spec, "c0")
    else:
        out["c"] = generator(spec, "c", ctx.xi)
    return out


def word_matrix(word: QuotientWord, spec: GroupSpec) -> Matrix:
    """Product of generator matrices spelled by a P2 normal form."""
    P = word.presentation
    M = p2_generator_matrices(spec)
    names = P.generators
    out = Matrix.identity(spec.K, spec.d)
    for n, e in zip(names, word.exps):
        if e:
            out = out @ M[n] ** e
    return out


def _verify_P2(spec, check, eye):
    P = build_P2(spec)
    M = p2_generator_matrices(spec)
    q, d = spec.ctx.q, spec.d
    if P.kind == "cyclic":
        check("P2: a^(q-1) = 1", M["a"] ** (q - 1))
        return
    if P.kind == "unitary":
        a, b = M["a"], M["b"]
        check("P2: [a, b] = 1", _comm(a, b))
        check("P2: b^(q+1) = 1", b ** (q + 1))
        check("P2: a^(q-1) = b^d", a ** (q - 1), b ** d)
        return
    r0, c = M["r0"], M["c"]
    check("P2: r0^2 = 1", r0 @ r0)
    if "r1" not in M:
        check("P2: [r0, c] = 1", _comm(r0, c))
        check("P2: c^(q-1) = 1", c ** P.n)
        return
    r1 = M["r1"]
    R = (r0, r1)
    check("P2: r1^2 = 1", r1 @ r1)
    check("P2: (r0 r1)^2 = 1", (r0 @ r1) ** 2)
    for i in (0, 1):
        j = 1 - i if P.swap else i
        check(f"P2: r{i}^c = r{j}", _conj(R[i], c), R[j])
    wrap = eye
    if P.wrap[0]:
        wrap = wrap @ r0
    if P.wrap[1]:
        wrap = wrap @ r1
    check(f"P2: c^{P.n} = wrap {P.wrap}", c ** P.n, wrap)
