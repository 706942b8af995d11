"""Plain-text formats.

Element: ``c0,c1,...,c_{k-1}`` (base-p digits, ascending powers of the
generator).  Matrix: a line ``rows cols`` then one row per line.  Form: a
header ``kind label d GF(p^k)`` (label may be ``?``), the Gram matrix and,
for quadratic forms, the upper-triangular Q-matrix.  Lines starting with
``#`` and blank lines are ignored by the parsers.
"""

from __future__ import annotations

from .errors import ClassicalError, ParseError
from .ff import FieldCtx, elt_str, parse_elt, parse_field
from .forms import Form
from .la import Matrix

KINDS = ("symplectic", "unitary", "quadratic")


def _lines(text):
    """(lineno, stripped) for the meaningful lines."""
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s and not s.startswith("#"):
            yield i, s


def format_matrix(A: Matrix) -> str:
    F = A.F
    out = [f"{A.rows} {A.cols}"]
    out += [" ".join(elt_str(F, int(x)) for x in row) for row in A.a]
    return "\n".join(out) + "\n"


def _read_matrix(it, F):
    try:
        ln, head = next(it)
    except StopIteration:
        raise ParseError("expected a matrix header 'rows cols'") from None
    parts = head.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(f"bad matrix header {head!r}", line=ln)
    r, c = int(parts[0]), int(parts[1])
    rows = []
    for _ in range(r):
        try:
            ln, s = next(it)
        except StopIteration:
            raise ParseError(f"matrix ended after {len(rows)} of {r} rows") from None
        toks = s.split()
        if len(toks) != c:
            raise ParseError(f"expected {c} entries, got {len(toks)}", line=ln)
        try:
            rows.append([parse_elt(F, t) for t in toks])
        except ParseError as e:
            raise ParseError(str(e), line=ln) from None
    return Matrix(F, rows) if r else Matrix.zeros(F, 0, c)


def parse_matrix(text: str, F) -> Matrix:
    it = _lines(text)
    A = _read_matrix(it, F)
    extra = next(it, None)
    if extra is not None:
        raise ParseError("trailing data after matrix", line=extra[0])
    return A


def format_form(form: Form, label: str = "?") -> str:
    head = f"{form.kind} {label} {form.d} {form.ctx.label}\n"
    body = format_matrix(form.gram)
    if form.kind == "quadratic":
        body += format_matrix(form.quad)
    return head + body


def parse_form(text: str, ctx: FieldCtx | None = None) -> tuple:
    """(Form, label) from the form file format."""
    it = _lines(text)
    try:
        ln, head = next(it)
    except StopIteration:
        raise ParseError("empty form file") from None
    parts = head.split()
    if len(parts) != 4:
        raise ParseError("form header must read 'kind label d GF(p^k)'", line=ln)
    kind, label, d, fld = parts
    if kind not in KINDS:
        raise ParseError(f"unknown form kind {kind!r}", line=ln)
    if not d.isdigit():
        raise ParseError(f"bad dimension {d!r}", line=ln)
    try:
        fctx = parse_field(fld)
    except ParseError as e:
        raise ParseError(str(e), line=ln) from None
    if ctx is not None and fctx is not ctx:
        raise ParseError(f"form is over {fctx.label}, expected {ctx.label}", line=ln)
    K = fctx.E if kind == "unitary" else fctx.F
    G = _read_matrix(it, K)
    if G.shape != (int(d), int(d)):
        raise ParseError(f"Gram matrix is {G.rows}x{G.cols}, header says d={d}")
    try:
        if kind == "quadratic":
            M = _read_matrix(it, K)
            form = Form.quadratic(fctx, M)
            if form.gram != G:
                raise ParseError("Gram matrix is not M + M^T")
        elif kind == "symplectic":
            form = Form.symplectic(fctx, G)
        else:
            form = Form.unitary(fctx, G)
    except ParseError:
        raise
    except ClassicalError as e:
        raise ParseError(f"{type(e).__name__}: {e}") from None
    extra = next(it, None)
    if extra is not None:
        raise ParseError("trailing data after form", line=extra[0])
    return form, label
