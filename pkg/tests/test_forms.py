import itertools
import random

import pytest

from clgroups.errors import (Degenerate, IncompatibleDimension, KindMismatch, NotIsometric,
                             OddCharRequired, SymmetryViolation, ZeroForm)
from clgroups.ff import default_rng, iota, make_field
from clgroups.forms import (Form, anisotropic_vector, canonical_form, check_congruence, classify,
                            diagonalize, discriminant, evaluate_beta, evaluate_Q, isometry,
                            nonsingular_vector, square_nonsquare_pair, transform_to_canonical)
from clgroups.la import Matrix, dagger, fold

from oracles import NaiveField, conj_transpose, mat_mul, transpose
from oracles import fold as naive_fold

LABEL_DIMS = {"Sp": (2, 4, 6), "U": (2, 3, 4, 5), "O0": (3, 5, 7), "O+": (2, 4, 6), "O-": (2, 4, 6)}


def labels_for(ctx):
    return [lab for lab in LABEL_DIMS if lab != "O0" or ctx.odd]


def random_invertible(K, d, rng):
    while True:
        P = Matrix(K, [[K.random(rng) for _ in range(d)] for _ in range(d)])
        if P.det():
            return P


# -- canonical forms


def test_canonical_form_examples():
    c5 = make_field(5)
    assert canonical_form("Sp", 2, c5).gram.tolist() == [[0, 1], [4, 0]]
    c3 = make_field(3)
    U = canonical_form("U", 3, c3)
    assert U.gram.tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    Om = canonical_form("O-", 2, c3)
    assert Om.quad.tolist() == [[1, 1], [0, c3.gamma]]
    with pytest.raises(IncompatibleDimension):
        canonical_form("Sp", 3, c3)
    with pytest.raises(IncompatibleDimension):
        canonical_form("O0", 3, make_field(2))


def test_evaluate_examples():
    c = make_field(3)
    Sp = canonical_form("Sp", 4, c)
    e1, f1 = [1, 0, 0, 0], [0, 0, 0, 1]
    assert evaluate_beta(Sp, e1, f1) == 1
    rng = random.Random(2)
    for lab in ("O0", "O+", "O-"):
        d = 5 if lab == "O0" else 4
        Q = canonical_form(lab, d, c)
        assert evaluate_Q(Q, [1] + [0] * (d - 1)) == 0
        for _ in range(20):
            v = [rng.randrange(3) for _ in range(d)]
            assert evaluate_beta(Q, v, v) == c.F.mul(2, evaluate_Q(Q, v))
    with pytest.raises(KindMismatch):
        evaluate_Q(Sp, e1)


def test_canonical_vectors():
    c2, c3 = make_field(2), make_field(3)
    Q = Form.quadratic(c3, [[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert nonsingular_vector(Q) == [1, 0, 0]
    H = Form.quadratic(c2, [[0, 1], [0, 0]])
    v = nonsingular_vector(H)
    assert v == [1, 1] and evaluate_Q(H, v) == 1
    # canonical O+ d=2 q=3: check the pair against all nonzero vectors
    Op = canonical_form("O+", 2, c3)
    u1, u2 = square_nonsquare_pair(Op)
    assert iota(c3, evaluate_Q(Op, u1)) == 0 and iota(c3, evaluate_Q(Op, u2)) == 1
    vals = {iota(c3, evaluate_Q(Op, [a, b])) for a in range(3) for b in range(3) if evaluate_Q(Op, [a, b])}
    assert vals == {0, 1}
    with pytest.raises(ZeroForm):
        nonsingular_vector(Form.quadratic(c3, [[0, 0], [0, 0]]))
    with pytest.raises(OddCharRequired):
        anisotropic_vector(canonical_form("O+", 2, c2))


@pytest.mark.parametrize("pk", [(3, 1), (5, 1), (3, 2), (7, 1)])
def test_square_nonsquare_pair_random(pk):
    c = make_field(*pk)
    rng = random.Random(5)
    for lab in ("O0", "O+", "O-"):
        d = 5 if lab == "O0" else 4
        Q = canonical_form(lab, d, c).transformed(random_invertible(c.F, d, rng))
        u1, u2 = square_nonsquare_pair(Q, default_rng(1))
        assert iota(c, evaluate_Q(Q, u1)) == 0 and iota(c, evaluate_Q(Q, u2)) == 1
        assert square_nonsquare_pair(Q, default_rng(7)) == (u1, u2)


# -- diagonalisation


def _is_block_diag(D, size):
    d = D.rows
    for i in range(d):
        for j in range(d):
            if D[i, j] and i // size != j // size:
                return False
    return True


def test_diagonalize_examples():
    c5 = make_field(5)
    F = c5.F
    A = Matrix.diag(F, [1, 2, 3])
    S = diagonalize(A, "orthogonal", c5)
    D = S @ A @ S.T
    assert S.det() and _is_block_diag(D, 1)
    J = Matrix(F, [[0, 1], [4, 0]])
    S = diagonalize(J, "symplectic", c5)
    B = S @ J @ S.T
    assert S.det() and B[0, 0] == 0 and B[0, 1] and B[1, 0] == F.neg(B[0, 1])
    assert diagonalize(Matrix.zeros(F, 3), "orthogonal", c5).is_identity()
    with pytest.raises(SymmetryViolation):
        diagonalize(Matrix(F, [[0, 1], [0, 0]]), "orthogonal", c5)
    with pytest.raises(OddCharRequired):
        diagonalize(Matrix.identity(make_field(2).F, 2), "orthogonal", make_field(2))


@pytest.mark.parametrize("pk", [(3, 1), (5, 1), (2, 1), (2, 2), (3, 2)])
def test_diagonalize_random(pk):
    c = make_field(*pk)
    rng = random.Random(8)
    for d in (2, 3, 4, 6, 7):
        for kind in ("symplectic", "unitary", "orthogonal"):
            if kind == "orthogonal" and not c.odd:
                continue
            K = c.E if kind == "unitary" else c.F
            # low-rank inputs exercise the degenerate path
            r = rng.randint(1, d)
            P = Matrix(K, [[K.random(rng) for _ in range(d)] for _ in range(r)])
            if kind == "symplectic":
                if r < 2:
                    continue
                g = [[0] * r for _ in range(r)]
                for i in range(0, r - 1, 2):
                    g[i][i + 1], g[i + 1][i] = 1, K.neg(1)
                G = Matrix(K, g)
            else:
                G = Matrix.identity(K, r)
            A = dagger(P, kind) @ G @ P
            S = diagonalize(A, kind, c)
            D = S @ A @ dagger(S, kind)
            assert S.det() and _is_block_diag(D, 2 if kind == "symplectic" else 1)
            assert diagonalize(A, kind, c) == S


# -- transform_to_canonical


def test_transform_canonical_input_is_identity():
    for pk in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]:
        c = make_field(*pk)
        for lab in labels_for(c):
            for d in LABEL_DIMS[lab]:
                f = canonical_form(lab, d, c)
                X, ft = transform_to_canonical(f)
                assert X.is_identity() and ft.label == lab and ft.lam == 1


def test_transform_symplectic_example():
    c = make_field(5)
    f = Form.symplectic(c, [[0, 2], [3, 0]])
    X, ft = transform_to_canonical(f)
    assert ft.label == "Sp" and ft.m == 1
    assert (X @ f.gram @ X.T).tolist() == [[0, 1], [4, 0]]


@pytest.mark.parametrize("pk", [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)])
def test_transform_random_congruent(pk):
    c = make_field(*pk)
    rng = random.Random(13)
    for lab in labels_for(c):
        for d in LABEL_DIMS[lab]:
            if d > 8:
                continue
            can = canonical_form(lab, d, c)
            K = can.field
            for _ in range(3):
                f = can.transformed(random_invertible(K, d, rng))
                X, ft = transform_to_canonical(f, default_rng(3))
                assert ft.label == lab
                assert check_congruence(f, X, canonical_form(lab, d, c), ft.lam)
                assert transform_to_canonical(f, default_rng(11))[0] == X


def test_transform_similarity_scalar_only_for_O0():
    c = make_field(3)
    can = canonical_form("O0", 3, c)
    f = can.scaled(c.xi)
    X, ft = transform_to_canonical(f)
    assert ft.lam == c.xi and check_congruence(f, X, can, ft.lam)


def test_transform_errors():
    c = make_field(3)
    with pytest.raises(Degenerate):
        transform_to_canonical(Form.quadratic(c, [[1, 0], [0, 0]]))
    with pytest.raises(Degenerate):
        transform_to_canonical(Form.quadratic(make_field(2), [[1, 1, 0], [0, 0, 1], [0, 0, 0]]))
    with pytest.raises(SymmetryViolation):
        Form.symplectic(c, [[0, 1], [1, 0]])


# -- isometry


def test_isometry_examples():
    c = make_field(3)
    f = canonical_form("O+", 4, c)
    T = isometry(f, f)
    assert check_congruence(f, T, f)
    Q = canonical_form("O0", 3, c)
    with pytest.raises(NotIsometric) as ei:
        isometry(Q, Q.scaled(c.xi))
    assert ei.value.similar == c.F.inv(c.xi) or ei.value.similar == c.xi
    with pytest.raises(NotIsometric):
        isometry(canonical_form("O+", 4, c), canonical_form("O-", 4, c))
    with pytest.raises(KindMismatch):
        isometry(canonical_form("Sp", 4, c), canonical_form("O+", 4, c))


def test_isometry_unitary_random():
    c = make_field(3)
    rng = random.Random(21)
    can = canonical_form("U", 4, c)
    for _ in range(5):
        f1 = can.transformed(random_invertible(c.E, 4, rng))
        f2 = can.transformed(random_invertible(c.E, 4, rng))
        T = isometry(f1, f2)
        assert check_congruence(f1, T, f2)


@pytest.mark.parametrize("pk", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_discriminant_invariant(pk):
    c = make_field(*pk)
    rng = random.Random(4)
    # congruence P F P^T changes det F by a square (unitary forms have no such
    # invariant: the norm map is onto, and all hermitian forms are isometric)
    for lab in ("O0", "O+", "O-"):
        d = 5 if lab == "O0" else 4
        can = canonical_form(lab, d, c)
        disc = discriminant(can)
        for _ in range(5):
            P = random_invertible(can.field, d, rng)
            assert discriminant(can.transformed(P)) == disc
    assert discriminant(canonical_form("O+", 2, make_field(2))) is None


# -- brute-force isometry classes


def _gl_generators(N, d):
    """Elementary transvections and diag(gen, 1, ..): they generate GL_d."""
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                g = [[int(a == b) for b in range(d)] for a in range(d)]
                g[i][j] = 1
                gens.append(g)
    g = [[int(a == b) for b in range(d)] for a in range(d)]
    g[0][0] = N.gen
    gens.append(g)
    return gens


def _orbits(items, act):
    """Union-find orbits of ``items`` under the generator actions in ``act``."""
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in items:
        for f in act:
            y = f(x)
            a, b = find(x), find(y)
            if a != b:
                parent[b] = a
    return {x: find(x) for x in items}


def _key(A):
    return tuple(x for r in A for x in r)


def _unkey(k, d):
    return [list(k[i * d:(i + 1) * d]) for i in range(d)]


def _brute_cases():
    for p, k in [(2, 1), (3, 1)]:
        for d in (2, 3):
            yield "quadratic", p, k, d
            yield "unitary", p, k, d
        yield "symplectic", p, k, 2


@pytest.mark.parametrize("kind,p,k,d", list(_brute_cases()))
def test_isometry_classes_match_brute_force(kind, p, k, d):
    ctx = make_field(p, k)
    q = p**k
    if kind == "quadratic" and p == 2 and d % 2:
        pytest.skip("odd-dimensional quadratic forms are degenerate in characteristic 2")
    N = NaiveField(p, 2 * k) if kind == "unitary" else NaiveField(p, k)
    # enumerate each kind directly: upper triangle free, lower determined
    if kind == "unitary":
        diag_vals = [x for x in range(N.order) if N.pow(x, q) == x]
    elif kind == "symplectic":
        diag_vals = [0]
    else:
        diag_vals = list(range(N.order))
    upper = [(i, j) for i in range(d) for j in range(i + 1, d)]
    items = set()
    for dg in itertools.product(diag_vals, repeat=d):
        for ent in itertools.product(range(N.order), repeat=len(upper)):
            A = [[0] * d for _ in range(d)]
            for i in range(d):
                A[i][i] = dg[i]
            for (i, j), x in zip(upper, ent):
                A[i][j] = x
                if kind == "unitary":
                    A[j][i] = N.pow(x, q)
                elif kind == "symplectic":
                    A[j][i] = N.neg(x)
            items.add(_key(A))

    def act(P):
        if kind == "quadratic":
            return lambda x: _key(naive_fold(N, mat_mul(N, mat_mul(N, P, _unkey(x, d)), transpose(P))))
        Pd = conj_transpose(N, P, q) if kind == "unitary" else transpose(P)
        return lambda x: _key(mat_mul(N, mat_mul(N, P, _unkey(x, d)), Pd))

    orbit = _orbits(items, [act(P) for P in _gl_generators(N, d)])

    def make(x):
        A = _unkey(x, d)
        if kind == "quadratic":
            return Form.quadratic(ctx, A)
        if kind == "unitary":
            return Form.unitary(ctx, A)
        return Form.symplectic(ctx, A)

    types = {}
    for x in items:
        f = make(x)
        try:
            ft = classify(f)
        except Degenerate:
            assert not f.nondegenerate() or kind == "quadratic"
            continue
        types[x] = (ft.label, ft.lam)
    # isometric iff same orbit: the type map must be a bijection on orbits
    orb_to_type = {}
    type_to_orb = {}
    for x, t in types.items():
        assert orb_to_type.setdefault(orbit[x], t) == t
        assert type_to_orb.setdefault(t, orbit[x]) == orbit[x]
    # spot-check isometries between forms of the same type
    rng = random.Random(1)
    by_type = {}
    for x, t in types.items():
        by_type.setdefault(t, []).append(x)
    for xs in by_type.values():
        for _ in range(3):
            a, b = make(rng.choice(xs)), make(rng.choice(xs))
            assert check_congruence(a, isometry(a, b), b)


def test_quadratic_fold_roundtrip():
    c = make_field(2)
    M = Matrix(c.F, [[1, 1], [1, 0]])
    f = Form.quadratic(c, M)
    assert f.quad == fold(M) and f.quad.tolist() == [[1, 0], [0, 0]]
