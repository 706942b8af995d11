"""Command-line front end.

Every command prints a ``# seed=N`` comment first; the parsers skip ``#``
lines so any printed matrix or form can be fed back in.  Exit codes: 0 ok,
1 internal error or failed self-check, 2 domain rejection, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import groups, quotient
from .errors import ClassicalError, ParseError
from .ff import DEFAULT_SEED, default_rng, elt_str, parse_field
from .forms import canonical_form, check_congruence, discriminant, isometry, transform_to_canonical
from .textio import format_form, format_matrix, parse_form, parse_matrix

FAMILY_NAMES = ("SL", "Sp", "SU", "O0", "O+", "O-")
TYPE_FAMILY = {"Sp": "Sp", "U": "SU", "O0": "O0", "O+": "O+", "O-": "O-"}


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _load_form(path):
    return parse_form(_read(path))[0]


def _spec(args, rng):
    """GroupSpec from --form, or from --family/--dim/--field (canonical form)."""
    if getattr(args, "type", None):
        if args.family and args.family != TYPE_FAMILY[args.type]:
            raise ParseError("--type and --family disagree")
        args.family = TYPE_FAMILY[args.type]
    if getattr(args, "form", None):
        form = _load_form(args.form)
        if args.family and args.family != "SL":
            return groups.make_spec(args.family, form.d, form.ctx, form, rng)
        return groups.spec_from_form(form, rng)
    if not (args.family and args.dim and args.field):
        raise ParseError("give --form, or all of --family, --dim and --field")
    return groups.make_spec(args.family, args.dim, parse_field(args.field), None, rng)


# ----------------------------------------------------------------------
# commands


def cmd_classify(args, rng, out):
    form = _load_form(args.input)
    _, ft = transform_to_canonical(form, rng)
    disc = discriminant(form)
    lam = elt_str(form.field, ft.lam)
    out.append(f"{ft.label} m={ft.m} disc={'-' if disc is None else disc} lambda={lam}")
    if args.canonical:
        out.append(format_form(canonical_form(ft.label, form.d, form.ctx), ft.label).rstrip("\n"))


def cmd_transform(args, rng, out):
    form = _load_form(args.input)
    if args.other:
        return cmd_isometry(argparse.Namespace(input=args.input, other=args.other), rng, out)
    X, ft = transform_to_canonical(form, rng)
    target = canonical_form(ft.label, form.d, form.ctx)
    if not check_congruence(form, X, target, ft.lam):
        raise AssertionError("transform failed its own congruence check")
    out.append(f"# {ft.label} m={ft.m} lambda={elt_str(form.field, ft.lam)}")
    out.append(format_matrix(X).rstrip("\n"))


def cmd_isometry(args, rng, out):
    f1, f2 = _load_form(args.input), _load_form(args.other)
    T = isometry(f1, f2, rng)
    if not check_congruence(f1, T, f2):
        raise AssertionError("isometry failed its own congruence check")
    out.append(format_matrix(T).rstrip("\n"))
    out.append("OK")


def _element(args, spec):
    return parse_matrix(_read(args.element), spec.K)


def cmd_tau(args, rng, out):
    form = _load_form(args.form)
    g = parse_matrix(_read(args.element), form.field)
    out.append(elt_str(form.field, groups.tau(g, form, check=True)))


def cmd_spinor(args, rng, out):
    form = _load_form(args.form)
    g = parse_matrix(_read(args.element), form.field)
    w = groups.spinor_norm(g, form, witness=True)
    out.append(str(w.spin))


def cmd_image(args, rng, out):
    spec = _spec(args, rng)
    g = _element(args, spec)
    if args.p1:
        w = quotient.image_P1(g, spec, rng)
        out.append(str(w))
        return
    w = quotient.image_P2(g, spec, rng)
    # spot check of the homomorphism law against a random Delta element
    h = groups.random_element(spec, rng)
    if quotient.image_P2(g @ h, spec, rng) != w * quotient.image_P2(h, spec, rng):
        raise AssertionError("image spot check failed")
    out.append(str(w))


def cmd_coset_rep(args, rng, out):
    spec = _spec(args, rng)
    g = _element(args, spec)
    out.append(format_matrix(quotient.coset_rep(g, spec, rng)).rstrip("\n"))


def cmd_present(args, rng, out):
    spec = _spec(args, rng)
    P = quotient.build_P1(spec) if args.p1 else quotient.build_P2(spec)
    if args.json:
        data = {"family": spec.family, "d": spec.d, "field": spec.ctx.label,
                "generators": list(P.generators), "relations": list(P.relations)}
        if isinstance(P, quotient.PcPresentation):
            data.update(kind=P.kind, n=P.n, m=P.m, wrap=list(P.wrap), swap=P.swap, order=P.order())
        out.append(json.dumps(data, sort_keys=True))
    else:
        out.append(P.dump())


def cmd_selfcheck(args, rng, out):
    from .selfcheck import run

    fams = args.families.split(",") if args.families else list(FAMILY_NAMES)
    qs = [int(x) for x in args.qset.split(",")]
    results = run(fams, args.dmax, qs, args.seed)
    bad = [r for r in results if not r[1]]
    for name, ok, detail in results:
        if not ok or args.verbose:
            out.append(f"{'ok  ' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    if bad:
        out.append(f"{len(bad)} of {len(results)} checks failed")
        return 1
    out.append(f"all {len(results)} checks passed")
    return 0


# ----------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="clgroups", description="Classical groups over finite fields.")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    ap.add_argument("--out", help="write output here instead of stdout")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def spec_flags(p):
        p.add_argument("--form", help="form file defining the group")
        p.add_argument("--family", choices=FAMILY_NAMES)
        p.add_argument("--type", choices=sorted(TYPE_FAMILY), help="form label instead of --family")
        p.add_argument("--dim", type=int)
        p.add_argument("--field", help="GF(p^k)")

    p = sub.add_parser("classify", help="classify a form")
    p.add_argument("input")
    p.add_argument("--canonical", action="store_true", help="also print the canonical form")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("transform", help="matrix taking a form to its canonical form")
    p.add_argument("input")
    p.add_argument("other", nargs="?", help="second form: print an isometry instead")
    p.set_defaults(fn=cmd_transform)

    p = sub.add_parser("isometry", help="isometry between two forms")
    p.add_argument("input")
    p.add_argument("other")
    p.set_defaults(fn=cmd_isometry)

    for name, fn, hlp in (("tau", cmd_tau, "similarity multiplier of an element"),
                          ("spinor", cmd_spinor, "spinor norm of an isometry (0 or 1)")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("--form", required=True)
        p.add_argument("element")
        p.set_defaults(fn=fn)

    p = sub.add_parser("image", help="image of an element of Delta in P1 or P2 (default)")
    spec_flags(p)
    p.add_argument("element")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p1", action="store_true")
    g.add_argument("--p2", action="store_true")
    p.set_defaults(fn=cmd_image)

    p = sub.add_parser("coset-rep", help="canonical representative of the coset Omega g")
    spec_flags(p)
    p.add_argument("element")
    p.set_defaults(fn=cmd_coset_rep)

    p = sub.add_parser("present", help="print the presentation P1 or P2")
    spec_flags(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p1", action="store_true")
    g.add_argument("--p2", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_present)

    p = sub.add_parser("selfcheck", help="run the invariant suite")
    p.add_argument("--families", help="comma list, default all")
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--qset", default="2,3,4,5")
    p.add_argument("--verbose", "-v", action="store_true")
    p.set_defaults(fn=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    rng = default_rng(args.seed)
    out = [f"# seed={args.seed}"]
    code = 0
    try:
        code = args.fn(args, rng, out) or 0
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ClassicalError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except Exception as e:       # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    text = "\n".join(out) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
