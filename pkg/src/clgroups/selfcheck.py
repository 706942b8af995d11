"""Invariant suite behind ``clgroups selfcheck``.

Each check returns ``(name, ok, detail)``.  Canonical operations are run
twice with different seeds and compared bit for bit.
"""

from __future__ import annotations

from .errors import ClassicalError
from .ff import default_rng, make_field
from .forms import canonical_form, check_congruence, transform_to_canonical
from .groups import (Level, _random_invertible, canonical_reflections, make_spec, membership, random_element,
                     random_isometry, spinor_norm)
from .quotient import coset_rep, image_P1, image_P2, verify_presentation

_Q = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2),
      16: (2, 4), 25: (5, 2), 27: (3, 3), 11: (11, 1), 13: (13, 1)}


def field_of(q: int):
    if q not in _Q:
        raise ValueError(f"q={q} not in the self-check table")
    return make_field(*_Q[q])


def specs(families, dmax, qset):
    for q in qset:
        ctx = field_of(q)
        for fam in families:
            for d in range(2, dmax + 1):
                try:
                    yield make_spec(fam, d, ctx)
                except ClassicalError:
                    continue


def _check_spec(spec, rng, reps=8):
    out = []
    name = repr(spec)
    r = verify_presentation(spec)
    out.append((f"{name} presentation", r.ok, "" if r.ok else str(r)))
    alt = default_rng(rng.getrandbits(32) + 1)
    fails = []
    for _ in range(reps):
        g, h = random_element(spec, rng), random_element(spec, rng)
        if image_P2(g, spec, rng) * image_P2(h, spec, rng) != image_P2(g @ h, spec, rng):
            fails.append("P2 homomorphism")
        rep = coset_rep(g, spec, rng)
        if membership(g @ rep.inverse(), spec) != Level.OMEGA:
            fails.append("g rep^-1 not in Omega")
        om = random_element(spec, rng, "Omega")
        if coset_rep(om @ g, spec, alt) != rep:
            fails.append("coset_rep not constant on cosets")
        if coset_rep(rep, spec) != rep:
            fails.append("coset_rep not idempotent")
        if image_P1(g, spec, rng) != image_P1(g, spec, alt):
            fails.append("image_P1 depends on the seed")
        if spec.orthogonal:
            x, y = random_isometry(spec.form, rng), random_isometry(spec.form, rng)
            s = spinor_norm(x, spec.form) ^ spinor_norm(y, spec.form)
            if spinor_norm(x @ y, spec.form) != s:
                fails.append("spinor norm homomorphism")
    if spec.orthogonal:
        spins = [spinor_norm(R, spec.form) for R in canonical_reflections(spec.form)]
        if spins != ([0, 1] if spec.ctx.odd else [1]):
            fails.append(f"canonical reflection spins {spins}")
    out.append((f"{name} elements", not fails, ", ".join(sorted(set(fails)))))
    return out


def _check_forms(spec, rng):
    if spec.form is None:
        return []
    form = spec.form
    K, d = form.field, form.d
    fails = 0
    for _ in range(4):
        f2 = form.transformed(_random_invertible(K, d, rng))
        X, ft = transform_to_canonical(f2, rng)
        X2, _ = transform_to_canonical(f2, default_rng(12345))
        if X != X2 or not check_congruence(f2, X, canonical_form(ft.label, d, spec.ctx), ft.lam):
            fails += 1
    return [(f"{spec!r} transform", fails == 0, f"{fails} failures" if fails else "")]


def run(families, dmax, qset, seed):
    rng = default_rng(seed)
    results = []
    for spec in specs(families, dmax, qset):
        try:
            results += _check_forms(spec, rng)
            results += _check_spec(spec, rng)
        except Exception as e:     # noqa: BLE001
            results.append((repr(spec), False, f"{type(e).__name__}: {e}"))
    return results
