"""Nested sums ``K[L]``: ``L`` is inserted in place of the identity of ``K``.

The new carrier lists the elements of ``K`` other than ``1_K`` in their
original order, followed by the elements of ``L``.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .algebra import (
    Verdict,
    check_axioms,
    irreducibility_witnesses,
    make_algebra,
    residuals,
)
from .errors import IdentityNotIrreducible, NotResiduated, SignatureMismatch


@dataclass(frozen=True)
class NestedSum:
    algebra: object
    from_k: dict       # index in K (other than 1_K) -> index in the sum
    from_l: tuple      # index in L -> index in the sum

    def is_l(self, x):
        return x >= len(self.from_k)


def nested_sum(K, L):
    """Build ``K[L]``.

    ``1_K`` must be totally irreducible in ``K``.  Products mixing the two
    parts are computed in ``K`` with the ``L`` argument replaced by ``1_K``;
    the unary operations and the constants come from the part an element
    belongs to (``1`` and ``0`` from ``L``).
    """
    if K.signature != L.signature:
        raise SignatureMismatch("K and L carry different operation sets")
    wit = irreducibility_witnesses(K, K.one)
    for op, args in wit.items():
        if args is not None:
            raise IdentityNotIrreducible(
                f"1_K is produced by {op} on arguments {args}", witness=(op,) + args)

    one_k = K.one
    ks = [k for k in range(K.size) if k != one_k]
    nk = len(ks)
    from_k = {k: i for i, k in enumerate(ks)}
    from_l = tuple(nk + l for l in range(L.size))
    n = nk + L.size

    # part tag and the element of K each new index stands for (1_K for L)
    in_l = [i >= nk for i in range(n)]
    as_k = [ks[i] if i < nk else one_k for i in range(n)]
    as_l = [i - nk if i >= nk else None for i in range(n)]

    def k_back(k):
        return from_k[k]

    leq = [[False] * n for _ in range(n)]
    mult = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if in_l[x] and in_l[y]:
                leq[x][y] = L.leq[as_l[x]][as_l[y]]
                mult[x][y] = from_l[L.mult[as_l[x]][as_l[y]]]
            else:
                leq[x][y] = K.leq[as_k[x]][as_k[y]]
                mult[x][y] = k_back(K.mult[as_k[x]][as_k[y]])

    def unary(name):
        tk, tl = getattr(K, name), getattr(L, name)
        if tk is None:
            return None
        return [from_l[tl[as_l[x]]] if in_l[x] else k_back(tk[as_k[x]]) for x in range(n)]

    names = None
    if K.names or L.names:
        names = [K.label(k) for k in ks] + [L.label(l) for l in range(L.size)]
    A = make_algebra(
        leq, mult, from_l[L.one],
        zero=None if L.zero is None else from_l[L.zero],
        tilde=unary("tilde"), minus=unary("minus"), neg=unary("neg"),
        names=names,
    )
    _check_lattice_cases(K, L, A, from_k, from_l, in_l, as_k, as_l)
    return NestedSum(A, from_k, from_l)


def _mixed_meet_join(K, k):
    """Meet and join of ``k`` (in K, not 1_K) with any element of L, as elements of K.

    None stands for "the element of L itself".
    """
    one = K.one
    meet = None if K.leq[one][k] else K.meet[k][one]
    join = None if K.leq[k][one] else K.join[k][one]
    return meet, join


def _check_lattice_cases(K, L, A, from_k, from_l, in_l, as_k, as_l):
    """Compare the case-defined meet and join with those derived from the order."""
    n = A.size
    for x in range(n):
        for y in range(n):
            if in_l[x] and in_l[y]:
                m = from_l[L.meet[as_l[x]][as_l[y]]]
                j = from_l[L.join[as_l[x]][as_l[y]]]
            elif not in_l[x] and not in_l[y]:
                m = from_k[K.meet[as_k[x]][as_k[y]]]
                j = from_k[K.join[as_k[x]][as_k[y]]]
            else:
                k, l = (as_k[x], y) if in_l[y] else (as_k[y], x)
                mk, jk = _mixed_meet_join(K, k)
                m = l if mk is None else from_k[mk]
                j = l if jk is None else from_k[jk]
            if A.meet[x][y] != m or A.join[x][y] != j:
                raise AssertionError(f"lattice case table disagrees with the order at {(x, y)}")


class Admissibility(NamedTuple):
    totally_irreducible: bool
    per_operation: dict           # op -> witness arguments or None
    condition: Verdict            # k\1 != 1 and 1/k != 1 for every k != 1


def admissibility_report(K):
    """Irreducibility of ``1_K`` per operation, and the residual condition
    ``k\\1 != 1, 1/k != 1`` evaluated on its own."""
    try:
        res = residuals(K)
    except NotResiduated:
        res = None
    wit = irreducibility_witnesses(K, K.one, res)
    one = K.one
    cond = Verdict(False, (), "not residuated")
    if res is not None:
        bad = next((k for k in range(K.size)
                    if k != one and (res.under[k][one] == one or res.over[one][k] == one)), None)
        cond = Verdict(True) if bad is None else Verdict(False, (bad,))
    return Admissibility(all(w is None for w in wit.values()), wit, cond)


@dataclass
class ConicSumVerdict:
    nested: NestedSum
    k_conic: bool
    distributive: bool
    witness: Optional[tuple]      # N5 elements (k, k meet 1, k join 1, l0, l1) in the sum

    @property
    def consistent(self):
        """Distributivity of the sum matches conicity of K (needs |L| > 1)."""
        if self.nested.algebra.size - len(self.nested.from_k) < 2:
            return True
        return self.distributive == self.k_conic


def conic_sum_check(K, L):
    """Build ``K[L]`` and relate its distributivity to conicity of ``K``."""
    S = nested_sum(K, L)
    rep = check_axioms(S.algebra)
    one = K.one
    off = [k for k in range(K.size) if not K.leq[k][one] and not K.leq[one][k]]
    witness = None
    if off and L.size > 1:
        k = off[0]
        witness = (S.from_k[k], S.from_k[K.meet[k][one]], S.from_k[K.join[k][one]],
                   S.from_l[L.bottom], S.from_l[L.top])
    return ConicSumVerdict(S, not off, rep["distributive"], witness)


def n5_sublattice_ok(A, elems):
    """Whether ``(k, m0, m1, l0, l1)`` spans a sublattice shaped like N5."""
    k, m0, m1, l0, l1 = elems
    M, J = A.meet, A.join
    return (M[l0][l1] == l0 and J[l0][l1] == l1
            and M[k][l0] == M[k][l1] == m0 and J[k][l0] == J[k][l1] == m1
            and A.lt(m0, k) and A.lt(k, m1) and A.lt(m0, l0) and A.lt(l1, m1)
            and not A.leq[k][l1] and not A.leq[l0][k])

