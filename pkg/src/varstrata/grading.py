"""Graded integer bookkeeping.

Vectors are plain tuples of ints indexed by degree ``0..n``.  Reads outside
that range return 0, so ``t[-1]`` and ``t[n+1]`` behave as zero everywhere in
the package (use :func:`at`, never raw indexing, for shifted reads).
"""

from itertools import product

from .errors import ResourceError

ENUMERATION_CAP = 10**7


def at(t, i):
    return t[i] if 0 <= i < len(t) else 0


def dimvec(t):
    """Coerce to a tuple of non-negative ints."""
    out = tuple(int(x) for x in t)
    if not out:
        raise ValueError("graded vector must have at least one entry")
    if any(x < 0 for x in out):
        raise ValueError(f"negative entry in dimension vector {out}")
    return out


def pad(a, b):
    n = max(len(a), len(b))
    return tuple(at(a, i) for i in range(n)), tuple(at(b, i) for i in range(n))


def chi(i, t):
    """Partial Euler characteristic t_i - t_{i-1} + ... + (-1)^i t_0."""
    total = 0
    sign = 1
    for j in range(i, -1, -1):
        total += sign * at(t, j)
        sign = -sign
    return total


def chi_vector(t):
    return tuple(chi(i, t) for i in range(len(t)))


def vec_sub(a, b):
    a, b = pad(a, b)
    return tuple(x - y for x, y in zip(a, b))


def vec_add(a, b):
    a, b = pad(a, b)
    return tuple(x + y for x, y in zip(a, b))


def vec_leq(s, r):
    s, r = pad(s, r)
    return all(x <= y for x, y in zip(s, r))


def vec_min(a, b):
    a, b = pad(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def box_points(upper):
    return product(*(range(u + 1) for u in upper))


def box_volume(upper):
    vol = 1
    for u in upper:
        vol *= u + 1
    return vol


def box_maximal_elements(box_upper, admissible, cap=ENUMERATION_CAP):
    """All admissible points of ``0 <= t <= box_upper`` with no admissible point strictly above.

    Output is sorted lexicographically.
    """
    upper = tuple(box_upper)
    vol = box_volume(upper)
    if vol > cap:
        raise ResourceError(f"box of volume {vol} exceeds enumeration cap {cap}")
    good = [t for t in box_points(upper) if admissible(t)]
    # a dominating point has strictly larger coordinate sum
    good.sort(key=lambda t: -sum(t))
    maxima = []
    for t in good:
        if not any(vec_leq(t, m) for m in maxima):
            maxima.append(t)
    return sorted(maxima)
