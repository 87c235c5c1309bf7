"""Shared random-parameter generators for property-style tests."""

from anisofield.exponents import derive_exponents


def random_lrd_triples(rng, n, kmax=4):
    """Yield (exponents, k) with 1 <= k < P, away from k = P."""
    out = []
    while len(out) < n:
        q1 = rng.uniform(0.55, 6.0)
        q2 = rng.uniform(0.55, 6.0)
        Q = 1.0 / q1 + 1.0 / q2
        if not 1.05 < Q < 1.95:
            continue
        e = derive_exponents(q1, q2)
        ks = [k for k in range(1, kmax + 1) if k < e.P - 1e-3]
        if not ks:
            continue
        k = int(rng.choice(ks))
        out.append((e, k))
    return out
