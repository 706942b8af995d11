import json
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from clgroups.cli import main
from clgroups.errors import ParseError
from clgroups.ff import make_field
from clgroups.forms import canonical_form, check_congruence
from clgroups.groups import make_spec, random_element
from clgroups.la import Matrix
from clgroups.quotient import coset_rep, image_P2
from clgroups.textio import format_form, format_matrix, parse_form, parse_matrix


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def random_form(label, d, pk, seed):
    c = make_field(*pk)
    can = canonical_form(label, d, c)
    rng = random.Random(seed)
    K = can.field
    while True:
        P = Matrix(K, [[K.random(rng) for _ in range(d)] for _ in range(d)])
        if P.det():
            return can.transformed(P)


# -- text formats


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 1), (3, 2), (5, 1), (2, 3)]), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 2**20))
def test_matrix_roundtrip(pk, r, c, seed):
    F = make_field(*pk).F
    rng = random.Random(seed)
    A = Matrix(F, [[F.random(rng) for _ in range(c)] for _ in range(r)])
    assert parse_matrix("# comment\n" + format_matrix(A), F) == A


@pytest.mark.parametrize("label,d,pk", [("Sp", 4, (3, 1)), ("U", 3, (2, 1)), ("O-", 4, (2, 2)),
                                        ("O0", 3, (5, 1))])
def test_form_roundtrip(label, d, pk):
    f = random_form(label, d, pk, 1)
    g, lab = parse_form(format_form(f, label))
    assert g == f and lab == label


def test_parse_errors_have_lines():
    F = make_field(3).F
    with pytest.raises(ParseError) as ei:
        parse_matrix("2 2\n1 0\n0\n", F)
    assert ei.value.line == 3
    with pytest.raises(ParseError):
        parse_form("quadratic ? 2 GF(3)\n2 2\n0 1\n1 0\n2 2\n0 1\n0 1\n")
    with pytest.raises(ParseError):
        parse_form("hermitian ? 2 GF(3)\n")


# -- commands


def test_classify_and_canonical(tmp_path, capsys):
    f = random_form("O-", 4, (3, 1), 2)
    p = write(tmp_path, "f.txt", format_form(f))
    code, out, _ = run(["classify", p, "--canonical"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# seed=1"
    assert lines[1].startswith("O- m=1")
    can, lab = parse_form("\n".join(lines[2:]))
    assert can == canonical_form("O-", 4, make_field(3)) and lab == "O-"


def test_transform_roundtrip(tmp_path, capsys):
    f = random_form("U", 4, (3, 1), 3)
    p = write(tmp_path, "f.txt", format_form(f))
    code, out, _ = run(["transform", p], capsys)
    assert code == 0
    X = parse_matrix(out, f.field)
    assert check_congruence(f, X, canonical_form("U", 4, f.ctx))
    code2, out2, _ = run(["--seed", 7, "transform", p], capsys)
    assert code2 == 0 and parse_matrix(out2, f.field) == X


def test_isometry_and_exit_codes(tmp_path, capsys):
    f1 = write(tmp_path, "a.txt", format_form(random_form("O+", 4, (5, 1), 1)))
    f2 = write(tmp_path, "b.txt", format_form(random_form("O+", 4, (5, 1), 2)))
    f3 = write(tmp_path, "c.txt", format_form(random_form("O-", 4, (5, 1), 3)))
    code, out, _ = run(["isometry", f1, f2], capsys)
    assert code == 0 and out.rstrip().endswith("OK")
    assert run(["transform", f1, f2], capsys)[0] == 0
    code, _, err = run(["isometry", f1, f3], capsys)
    assert code == 2 and "NotIsometric" in err
    bad = write(tmp_path, "bad.txt", "quadratic ? 4 GF(5\n")
    assert run(["classify", bad], capsys)[0] == 3
    assert run(["classify", tmp_path / "missing.txt"], capsys)[0] == 3
    deg = write(tmp_path, "deg.txt", "quadratic ? 2 GF(3)\n2 2\n2 0\n0 0\n2 2\n1 0\n0 0\n")
    assert run(["classify", deg], capsys)[0] == 2


def test_tau_and_spinor(tmp_path, capsys):
    c = make_field(3)
    f = canonical_form("O+", 4, c)
    fp = write(tmp_path, "f.txt", format_form(f, "O+"))
    g = write(tmp_path, "g.txt", format_matrix(Matrix.diag(c.F, [2, 2, 1, 1])))
    code, out, _ = run(["tau", "--form", fp, g], capsys)
    assert code == 0 and out.splitlines()[1] == "2"
    refl = write(tmp_path, "r.txt", format_matrix(Matrix(c.F, [[1, 0, 0, 0], [0, 0, 2, 0],
                                                               [0, 2, 0, 0], [0, 0, 0, 1]])))
    code, out, _ = run(["spinor", "--form", fp, refl], capsys)
    assert code == 0 and out.splitlines()[1] in ("0", "1")
    assert run(["spinor", "--form", fp, g], capsys)[0] == 2


def test_image_examples(tmp_path, capsys):
    c = make_field(5)
    A = write(tmp_path, "a.txt", format_matrix(Matrix.diag(c.F, [2, 1, 1])))
    code, out, _ = run(["image", "--family", "SL", "--dim", 3, "--field", "GF(5)", A], capsys)
    assert code == 0 and out.splitlines()[1] == "a^1"
    I3 = write(tmp_path, "i.txt", format_matrix(Matrix.identity(c.F, 3)))
    code, out, _ = run(["image", "--family", "SL", "--dim", 3, "--field", "GF(5)", I3], capsys)
    assert code == 0 and out.splitlines()[1:] == [""] or out.splitlines()[1:] == []
    code, out, _ = run(["image", "--p1", "--family", "SL", "--dim", 3, "--field", "GF(5)", A], capsys)
    assert out.splitlines()[1] == "a(2)"
    Z = write(tmp_path, "z.txt", format_matrix(Matrix.zeros(c.F, 3)))
    assert run(["image", "--family", "SL", "--dim", 3, "--field", "GF(5)", Z], capsys)[0] == 2
    assert run(["image", "--family", "SL", A], capsys)[0] == 3


@pytest.mark.parametrize("family,d,pk", [("SU", 3, (3, 1)), ("O-", 4, (3, 1)), ("O+", 4, (2, 2))])
def test_image_and_coset_rep_match_library(tmp_path, capsys, family, d, pk):
    c = make_field(*pk)
    spec = make_spec(family, d, c)
    g = random_element(spec, random.Random(2))
    gp = write(tmp_path, "g.txt", format_matrix(g))
    flags = ["--family", family, "--dim", d, "--field", c.label]
    code, out, _ = run(["image", *flags, gp], capsys)
    assert code == 0 and out.splitlines()[1] == str(image_P2(g, spec))
    code, out, _ = run(["coset-rep", *flags, gp], capsys)
    assert code == 0 and parse_matrix(out, spec.K) == coset_rep(g, spec)


def test_form_flag_and_type(tmp_path, capsys):
    f = random_form("Sp", 4, (3, 1), 5)
    fp = write(tmp_path, "f.txt", format_form(f))
    code, out, _ = run(["present", "--form", fp], capsys)
    assert code == 0 and "a^(q-1) = 1" in out
    code, out, _ = run(["present", "--type", "U", "--dim", 3, "--field", "GF(2)", "--json"], capsys)
    data = json.loads(out.splitlines()[1])
    assert data["family"] == "SU" and data["order"] == 3
    code, out, _ = run(["present", "--p1", "--family", "O-", "--dim", 4, "--field", "GF(3)"], capsys)
    assert code == 0 and "c0^2 = c(gamma)" in out
    assert run(["present", "--type", "U", "--family", "Sp", "--dim", 4, "--field", "GF(3)"], capsys)[0] == 3
    assert run(["present", "--family", "Sp", "--dim", 3, "--field", "GF(3)"], capsys)[0] == 2


def test_out_flag(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = run(["--out", target, "present", "--family", "SL", "--dim", 2, "--field", "GF(7)"], capsys)
    assert code == 0 and out == ""
    assert target.read_text().startswith("# seed=1\n")


def test_selfcheck_restricted(capsys):
    code, out, _ = run(["selfcheck", "--families", "SL", "--dmax", 3, "--qset", "2,3", "-v"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].startswith("all ") and lines[-1].endswith(" checks passed")
    assert all("SL" in ln or ln.startswith(("#", "all", "ok   forms")) for ln in lines)
    code2, out2, _ = run(["--seed", 5, "selfcheck", "--families", "SL", "--dmax", 3, "--qset", "2,3"], capsys)
    assert code2 == 0 and out2.splitlines()[-1] == lines[-1]


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "clgroups", "present", "--family", "SL", "--dim", "2",
                          "--field", "GF(4)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("# seed=1")
