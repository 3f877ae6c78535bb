"""Finite Sugihara chains.

The chain of size ``n`` is stored on indices ``0..n-1`` in ascending order.
Its labels are the integers ``-k..k`` when ``n = 2k+1`` and the nonzero
integers ``-k..-1, 1..k`` when ``n = 2k``.
"""

from dataclasses import dataclass
from typing import Optional

from .algebra import check_map, make_algebra
from .errors import EvenOuterChain, SizeTooSmall


def chain_labels(n):
    k = n // 2
    if n % 2:
        return tuple(range(-k, k + 1))
    return tuple(j for j in range(-k, k + 1) if j != 0)


def label_name(j):
    return f"a{j}"


@dataclass(frozen=True)
class SugiharaChain:
    n: int
    labels: tuple
    algebra: object
    arrow: Optional[tuple] = None

    def index(self, label):
        return self.labels.index(label)

    def label(self, i):
        return self.labels[i]


def _product(i, j):
    if abs(j) < abs(i):
        return i
    if abs(i) < abs(j):
        return j
    return min(i, j)


def sugihara_chain(n):
    """The ``n``-element Sugihara chain as an algebra with ``~ = - = neg``."""
    if n < 2:
        raise SizeTooSmall(f"Sugihara chains need at least 2 elements, got {n}")
    labels = chain_labels(n)
    pos = {j: i for i, j in enumerate(labels)}
    leq = [[i <= j for j in range(n)] for i in range(n)]
    mult = [[pos[_product(labels[i], labels[j])] for j in range(n)] for i in range(n)]
    tilde = [pos[-labels[i]] for i in range(n)]
    one = pos[0] if n % 2 else pos[1]
    A = make_algebra(leq, mult, one, zero=tilde[one], tilde=tilde, minus=tilde,
                     neg=tilde, names=[label_name(j) for j in labels])
    # a -> b is ~a join b below the diagonal and ~a meet b above it
    arrow = tuple(tuple(max(tilde[i], j) if i <= j else min(tilde[i], j)
                        for j in range(n)) for i in range(n))
    return SugiharaChain(n, labels, A, arrow)


def collapse_iso(n, m):
    """The index shift identifying ``S_n[S_m]`` with ``S_{n+m-1}``.

    Outer labels move away from the centre by ``m // 2``; inner labels stay.
    Returns an :class:`AlgebraMap` whose report records every preserved
    operation.
    """
    from .nested import nested_sum

    if n % 2 == 0:
        raise EvenOuterChain(f"outer chain must have odd size, got {n}")
    if n < 3 or m < 2:
        raise SizeTooSmall("need an outer chain of size >= 3 and inner size >= 2")
    K, L = sugihara_chain(n), sugihara_chain(m)
    S = nested_sum(K.algebra, L.algebra)
    T = sugihara_chain(n + m - 1)
    shift = m // 2
    f = [0] * S.algebra.size
    for k, new in S.from_k.items():
        j = K.labels[k]
        f[new] = T.index(j - shift if j < 0 else j + shift)
    for l, new in enumerate(S.from_l):
        f[new] = T.index(L.labels[l])
    return check_map(S.algebra, T.algebra, f)
