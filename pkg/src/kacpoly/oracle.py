"""Brute-force finite-field oracle.

Enumerates quiver representations over a prime field, computes endomorphism
algebras by exact Gaussian elimination, decides absolute indecomposability
through locality of the endomorphism algebra, and counts nilpotent-pair and
all-pair stacks.  Everything here is an independent ground truth for the
closed-form pipeline, so none of it may reuse the symbolic code paths.
"""

from __future__ import annotations

from fractions import Fraction

DEFAULT_ENUM_BUDGET = 2**24
DEFAULT_END_BUDGET = 2**20


class BudgetExceeded(Exception):
    """An enumeration would exceed the configured budget."""

    def __init__(self, cost: int, budget: int, what: str):
        super().__init__(f"{what}: cost {cost} exceeds budget {budget}")
        self.cost = cost
        self.budget = budget


# -- small exact matrices over F_p ------------------------------------------------


def zero_matrix(rows: int, cols: int):
    return tuple((0,) * cols for _ in range(rows))


def identity_matrix(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b, p: int):
    if not a or not b:
        return tuple(() for _ in a)
    cols = len(b[0])
    inner = len(b)
    return tuple(
        tuple(sum(row[k] * b[k][j] for k in range(inner)) % p for j in range(cols))
        for row in a
    )


def mat_rank(m, p: int) -> int:
    rows = [list(r) for r in m if any(r)]
    rank = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def mat_is_invertible(m, p: int) -> bool:
    n = len(m)
    if n == 0:
        return True
    return mat_rank(m, p) == n


def mat_is_nilpotent(m, p: int) -> bool:
    """Nilpotency of a square block, tested by raising to the block size."""
    n = len(m)
    if n == 0:
        return True
    power = m
    for _ in range(n - 1):
        if all(x == 0 for row in power for x in row):
            return True
        power = mat_mul(power, m, p)
    return all(x == 0 for row in power for x in row)


def _nullspace(rows, n_unknowns: int, p: int):
    """Basis of the solution space of a homogeneous system over F_p."""
    mat = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for col in range(n_unknowns):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n_unknowns):
        if free in pivot_set:
            continue
        v = [0] * n_unknowns
        v[free] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-mat[ri][free]) % p
        basis.append(tuple(v))
    return basis


# -- representations ---------------------------------------------------------------


def _check_prime(p: int):
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def entry_count(q, gamma) -> int:
    return sum(gamma[a.src] * gamma[a.dst] for a in q.arrows)


def gl_order(gamma, p: int) -> int:
    """Order of the product of general linear groups GL_{gamma(i)}(F_p)."""
    total = 1
    for n in gamma:
        for k in range(n):
            total *= p**n - p**k
    return total


def rep_from_index(q, gamma, p: int, idx: int):
    """Decode the idx-th representation (base-p digits, arrow-major,
    row-major within each matrix)."""
    matrices = []
    for a in q.arrows:
        rows, cols = gamma[a.dst], gamma[a.src]
        entries = []
        for _ in range(rows * cols):
            entries.append(idx % p)
            idx //= p
        matrices.append(
            tuple(tuple(entries[r * cols + c] for c in range(cols)) for r in range(rows))
        )
    return tuple(matrices)


def enumerate_reps(q, gamma, p: int, budget: int = DEFAULT_ENUM_BUDGET):
    """Yield every representation of dimension vector gamma exactly once."""
    _check_prime(p)
    cost = p ** entry_count(q, gamma)
    if cost > budget:
        raise BudgetExceeded(cost, budget, "representation enumeration")
    for idx in range(cost):
        yield rep_from_index(q, gamma, p, idx)


def endomorphism_basis(q, gamma, p: int, rep):
    """Basis of End(rep): tuples of per-vertex matrices f_i satisfying
    f_{t(a)} rho_a = rho_a f_{s(a)} for every arrow a."""
    offsets = []
    total = 0
    for i in range(q.n_vertices):
        offsets.append(total)
        total += gamma[i] * gamma[i]

    def unknown(i, r, c):
        return offsets[i] + r * gamma[i] + c

    rows = []
    for a, m in zip(q.arrows, rep):
        s, t = a.src, a.dst
        for r in range(gamma[t]):
            for c in range(gamma[s]):
                row = [0] * total
                # (f_t m)[r, c] = sum_k f_t[r, k] m[k, c]
                for k in range(gamma[t]):
                    row[unknown(t, r, k)] = (row[unknown(t, r, k)] + m[k][c]) % p
                # -(m f_s)[r, c] = -sum_k m[r, k] f_s[k, c]
                for k in range(gamma[s]):
                    row[unknown(s, k, c)] = (row[unknown(s, k, c)] - m[r][k]) % p
                if any(row):
                    rows.append(row)
    basis_vectors = _nullspace(rows, total, p)

    def carve(vec):
        mats = []
        for i in range(q.n_vertices):
            n = gamma[i]
            mats.append(
                tuple(
                    tuple(vec[offsets[i] + r * n + c] for c in range(n))
                    for r in range(n)
                )
            )
        return tuple(mats)

    return [carve(v) for v in basis_vectors]


def _block_status(flat, off: int, n: int, p: int):
    """(invertible, nilpotent) for the n x n block at ``off`` in a flat
    row-major vector; closed Cayley-Hamilton forms up to n = 3."""
    if n == 0:
        return True, True
    if n == 1:
        x = flat[off]
        return x != 0, x == 0
    if n == 2:
        a, b, c, d = flat[off : off + 4]
        det = (a * d - b * c) % p
        if det:
            return True, False
        return False, (a + d) % p == 0
    if n == 3:
        a, b, c, d, e, f, g, h, i = flat[off : off + 9]
        det = (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p
        if det:
            return True, False
        e1 = (a + e + i) % p
        e2 = (a * e - b * d + a * i - c * g + e * i - f * h) % p
        return False, e1 == 0 and e2 == 0
    m = tuple(tuple(flat[off + r * n + c] for c in range(n)) for r in range(n))
    if mat_is_invertible(m, p):
        return True, False
    return False, mat_is_nilpotent(m, p)


def _scan_endomorphisms(gamma, p, basis, need_counts: bool, budget: int):
    """Walk all F_p-combinations of the basis.

    Returns (is_local, n_nilpotent, n_invertible); when ``need_counts`` is
    false the walk aborts on the first element that is neither nilpotent nor
    invertible and the counts are meaningless.
    """
    d = len(basis)
    cost = p**d
    if cost > budget:
        raise BudgetExceeded(cost, budget, "endomorphism scan")
    flat_basis = [
        [x for block in mats for row in block for x in row] for mats in basis
    ]
    total = len(flat_basis[0]) if flat_basis else 0
    offsets = []
    pos = 0
    for n in gamma:
        offsets.append(pos)
        pos += n * n
    n_nilp = 0
    n_inv = 0
    local = True
    flat = [0] * total
    digits = [0] * d
    remaining = cost
    while True:
        invertible = True
        nilpotent = True
        for off, n in zip(offsets, gamma):
            inv, nil = _block_status(flat, off, n, p)
            invertible = invertible and inv
            nilpotent = nilpotent and nil
            if not invertible and not nilpotent:
                break
        if invertible:
            n_inv += 1
        elif nilpotent:
            n_nilp += 1
        else:
            local = False
            if not need_counts:
                return False, n_nilp, n_inv
        remaining -= 1
        if remaining == 0:
            return local, n_nilp, n_inv
        # Odometer step: every touched digit moves by +1 mod p, so its basis
        # vector is added once (a reset adds -(p-1) = +1 as well).
        k = 0
        while True:
            vec = flat_basis[k]
            for j, x in enumerate(vec):
                if x:
                    flat[j] = (flat[j] + x) % p
            if digits[k] < p - 1:
                digits[k] += 1
                break
            digits[k] = 0
            k += 1


def _local_residue_degree(d: int, n_nilpotent: int, p: int) -> int:
    """dim of the residue field of a local algebra: d - dim(radical), with the
    radical size read off from the nilpotent count p^dim(J)."""
    dim_j = 0
    t = n_nilpotent
    while t > 1:
        if t % p:
            raise ArithmeticError("nilpotent count of a local algebra must be a p-power")
        t //= p
        dim_j += 1
    return d - dim_j


def is_absolutely_indecomposable(
    q, gamma, p: int, rep, budget: int = DEFAULT_END_BUDGET
) -> bool:
    """Indecomposability over the algebraic closure.

    The endomorphism algebra must be local (every element nilpotent or
    invertible) with residue field equal to the prime field itself; a larger
    residue field F_{p^s}, s > 1, means the representation splits after base
    change.
    """
    basis = endomorphism_basis(q, gamma, p, rep)
    local, n_nilp, _ = _scan_endomorphisms(
        gamma, p, basis, need_counts=False, budget=budget
    )
    if not local:
        return False
    return _local_residue_degree(len(basis), n_nilp, p) == 1


def count_absolutely_indecomposable(
    q,
    gamma,
    p: int,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    end_budget: int = DEFAULT_END_BUDGET,
) -> int:
    """Number of isomorphism classes of absolutely indecomposable
    representations, via orbit sizes: each class contributes
    |Stab| / |GL_gamma| summed over all its members."""
    stab_total = 0
    for rep in enumerate_reps(q, gamma, p, enum_budget):
        basis = endomorphism_basis(q, gamma, p, rep)
        local, n_nilp, n_inv = _scan_endomorphisms(
            gamma, p, basis, need_counts=False, budget=end_budget
        )
        if not local:
            continue
        if _local_residue_degree(len(basis), n_nilp, p) == 1:
            stab_total += n_inv
    count = Fraction(stab_total, gl_order(gamma, p))
    if count.denominator != 1:
        raise ArithmeticError(f"orbit count failed to clear: {count}")
    return int(count)


def count_nilpotent_pairs(
    q,
    gamma,
    p: int,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    end_budget: int = DEFAULT_END_BUDGET,
) -> Fraction:
    """Stacky count of pairs (rep, nilpotent endomorphism): the sum over all
    representations of the number of nilpotent endomorphisms, divided by the
    gauge group order."""
    total = 0
    for rep in enumerate_reps(q, gamma, p, enum_budget):
        basis = endomorphism_basis(q, gamma, p, rep)
        _, n_nilp, _ = _scan_endomorphisms(
            gamma, p, basis, need_counts=True, budget=end_budget
        )
        total += n_nilp
    return Fraction(total, gl_order(gamma, p))


def count_all_pairs(
    q,
    gamma,
    p: int,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    end_budget: int = DEFAULT_END_BUDGET,
) -> Fraction:
    """Stacky count of pairs (rep, arbitrary endomorphism); only the dimension
    of End is needed, so no element scan happens."""
    total = 0
    for rep in enumerate_reps(q, gamma, p, enum_budget):
        basis = endomorphism_basis(q, gamma, p, rep)
        total += p ** len(basis)
    return Fraction(total, gl_order(gamma, p))
