"""Bundled Conway polynomial table (see ``tools/extract_conway.py``)."""

import gzip
from functools import lru_cache
from importlib import resources

from .errors import NotPrime, UnknownConwayPolynomial


@lru_cache(maxsize=1)
def _table():
    out = {}
    with resources.files(__package__).joinpath("data/conway.txt.gz").open("rb") as raw:
        with gzip.open(raw, "rt") as fh:
            for line in fh:
                parts = line.split()
                if parts:
                    p, k = int(parts[0]), int(parts[1])
                    out[p, k] = parts[2:]
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for s in small:
        if n % s == 0:
            return n == s
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def conway_polynomial(p: int, k: int) -> tuple:
    """Coefficients (c_0, ..., c_k) of the Conway polynomial, ascending."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise UnknownConwayPolynomial(f"degree must be positive, got {k}")
    try:
        raw = _table()[p, k]
    except KeyError:
        raise UnknownConwayPolynomial(f"no bundled Conway polynomial for GF({p}^{k})") from None
    return tuple(int(c) for c in raw)


def available(p: int, k: int) -> bool:
    return (p, k) in _table()
