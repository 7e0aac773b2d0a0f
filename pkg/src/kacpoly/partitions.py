"""Integer partitions and vertex-indexed multipartitions.

Partitions are plain tuples of weakly decreasing positive integers; a
multipartition is one partition per quiver vertex, indexing the Jordan type
of a vertex-wise nilpotent endomorphism.  This module provides enumeration,
the hom-pairing, the automorphism b-polynomials, and the refinement order on
strata.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product

from .laurent import L_ONE, LaurentPolynomial, monomial


class DimensionMismatch(Exception):
    """Multipartitions being compared have different dimension vectors."""


def as_partition(parts) -> tuple[int, ...]:
    """Validate and normalize a sequence of parts."""
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n >= 0, in reverse-lexicographic order on part lists."""
    if n < 0:
        raise ValueError("partitions of a negative integer")

    def gen(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for k in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - k, k):
                yield (k,) + rest

    return tuple(gen(n, n))


def multipartitions_of(gamma):
    """Iterate over all multipartitions of the dimension vector gamma.

    The iteration order is the cartesian-product order of the per-vertex
    reverse-lexicographic partition lists; the count is the product of the
    partition numbers p(gamma(i)).
    """
    if any(c < 0 for c in gamma):
        raise ValueError("dimension vector must be componentwise nonnegative")
    return product(*(partitions_of(c) for c in gamma))


def weight(lam) -> int:
    return sum(lam)


def dimension_vector(pi) -> tuple[int, ...]:
    """The vector of component weights |pi|."""
    return tuple(sum(lam) for lam in pi)


def multiplicities(lam) -> Counter:
    """Part multiplicities psi_j = #{parts of lam equal to j}."""
    return Counter(lam)


def conjugate(lam) -> tuple[int, ...]:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p >= k) for k in range(1, lam[0] + 1))


@lru_cache(maxsize=None)
def pairing(lam, mu) -> int:
    """Hom-pairing of two partitions: sum of min(a, b) over all part pairs.

    This is the dimension of Hom between the nilpotent torsion modules with
    Jordan types lam and mu, and equals the dot product of the conjugate
    partitions.
    """
    return sum(min(a, b) for a in lam for b in mu)


def b_poly(lam, arg: str = "q") -> LaurentPolynomial:
    """b_lam = prod over part sizes j of (1-q)(1-q^2)...(1-q^(psi_j)).

    ``arg`` selects the variable: "q" or "q_inverse".
    """
    if arg not in ("q", "q_inverse"):
        raise ValueError(f"unsupported argument {arg!r}")
    sign = 1 if arg == "q" else -1
    out = L_ONE
    for _, psi in sorted(multiplicities(lam).items()):
        for t in range(1, psi + 1):
            out = out * (L_ONE - monomial(sign * 2 * t))
    return out


# -- refinement order on strata ------------------------------------------------

LESS = "less"
GREATER = "greater"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@lru_cache(maxsize=None)
def _refines(src: tuple[int, ...], dst: tuple[int, ...]) -> bool:
    """Whether the multiset src splits into len(dst) blocks summing to dst.

    Equivalent to the existence of a surjection src -> dst in which every
    target element is the sum of its preimage.  Both tuples sorted descending.
    """
    if sum(src) != sum(dst):
        return False
    if not dst:
        return not src
    if len(src) < len(dst) or src[0] > dst[0]:
        return False
    target = dst[0]
    rest = dst[1:]
    n = len(src)
    taken: set[int] = set()

    def pick(start, remaining):
        if remaining == 0:
            left = tuple(x for j, x in enumerate(src) if j not in taken)
            return _refines(left, rest)
        for j in range(start, n):
            if src[j] > remaining:
                continue
            if j > start and src[j] == src[j - 1]:
                continue
            taken.add(j)
            ok = pick(j + 1, remaining - src[j])
            taken.discard(j)
            if ok:
                return True
        return False

    return pick(0, target)


def stratum_leq(pi, pi2) -> str:
    """Compare two multipartitions in the refinement order.

    pi < pi2 when, at every vertex, the part multiset of pi maps onto that of
    pi2 with each target equal to the sum of its preimage (pi is finer).
    Returns one of "less", "greater", "equal", "incomparable".
    """
    if dimension_vector(pi) != dimension_vector(pi2):
        raise DimensionMismatch(
            f"dimension vectors differ: {dimension_vector(pi)} vs {dimension_vector(pi2)}"
        )
    if pi == pi2:
        return EQUAL
    if all(_refines(a, b) for a, b in zip(pi, pi2)):
        return LESS
    if all(_refines(b, a) for a, b in zip(pi, pi2)):
        return GREATER
    return INCOMPARABLE


def total_parts(pi) -> int:
    return sum(len(lam) for lam in pi)


def linearize_strata(pis):
    """Total order extending the refinement order: more total parts first,
    ties broken by the per-vertex part lists lexicographically."""
    pis = list(pis)
    dims = {dimension_vector(pi) for pi in pis}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed dimension vectors: {sorted(dims)}")
    return sorted(pis, key=lambda pi: (-total_parts(pi), pi))


# -- literals -------------------------------------------------------------------


def format_partition(lam) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


def format_multipartition(pi) -> str:
    inner = ", ".join(f"v{i}:{format_partition(lam)}" for i, lam in enumerate(pi))
    return "{" + inner + "}"


def parse_partition(text: str) -> tuple[int, ...]:
    """Parse a literal like ``[2,1]``."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"malformed partition literal: {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return as_partition(int(tok) for tok in body.split(","))


def parse_multipartition(text: str, n_vertices: int):
    """Parse a literal like ``{v0:[2,1], v1:[1]}``; omitted vertices are empty."""
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"malformed multipartition literal: {text!r}")
    body = text[1:-1].strip()
    chunks = []
    depth = 0
    token = ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            chunks.append(token)
            token = ""
        else:
            token += ch
    if token.strip():
        chunks.append(token)
    components = {}
    for chunk in chunks:
        name, sep, lit = chunk.partition(":")
        name = name.strip()
        if not sep or not name.startswith("v"):
            raise ValueError(f"malformed multipartition component: {chunk!r}")
        idx = int(name[1:])
        if not 0 <= idx < n_vertices:
            raise ValueError(f"vertex v{idx} out of range")
        components[idx] = parse_partition(lit)
    return tuple(components.get(i, ()) for i in range(n_vertices))
