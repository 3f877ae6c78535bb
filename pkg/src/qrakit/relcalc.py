"""Binary relations on a finite point set, stored as row bitmasks.

Row ``x`` of a relation is an integer whose bit ``y`` is set when ``(x, y)``
belongs to it.  Python integers have no width limit, so the same code serves
any number of points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DimensionMismatch, InputError, NotABijection, NotAPoset, NotSubsetOfE


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class BinRel:
    n: int
    rows: tuple

    @classmethod
    def from_pairs(cls, n, pairs):
        rows = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise InputError(f"pair {(x, y)} out of range for {n} points")
            rows[x] |= 1 << y
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix):
        n = len(matrix)
        if any(len(r) != n for r in matrix):
            raise InputError("relation matrix must be square")
        return cls(n, tuple(sum(1 << y for y in range(n) if matrix[x][y]) for x in range(n)))

    @classmethod
    def empty(cls, n):
        return cls(n, (0,) * n)

    @classmethod
    def full(cls, n):
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def identity(cls, n):
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def graph(cls, f):
        """The relation ``{(x, f(x))}`` of a map given as a sequence."""
        return cls(len(f), tuple(1 << int(y) for y in f))

    def __contains__(self, pair):
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def pairs(self):
        return [(x, y) for x in range(self.n) for y in _bits(self.rows[x])]

    def matrix(self):
        return [[bool(self.rows[x] >> y & 1) for y in range(self.n)] for x in range(self.n)]

    def __len__(self):
        return sum(bin(r).count("1") for r in self.rows)

    def _same(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"relations on {self.n} and {other.n} points")

    def __and__(self, other):
        self._same(other)
        return BinRel(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __or__(self, other):
        self._same(other)
        return BinRel(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other):
        self._same(other)
        return BinRel(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other):
        self._same(other)
        return all((a & ~b) == 0 for a, b in zip(self.rows, other.rows))

    def __lt__(self, other):
        return self <= other and self != other

    def sort_key(self):
        """Size first, then the row-major bit pattern, for deterministic orderings."""
        flat = tuple(bool(self.rows[x] >> y & 1) for x in range(self.n) for y in range(self.n))
        return (len(self), tuple(not b for b in flat))

    def is_function(self):
        return all(r and (r & (r - 1)) == 0 for r in self.rows)

    def as_function(self):
        if not self.is_function():
            raise NotABijection("relation is not the graph of a map")
        return tuple(r.bit_length() - 1 for r in self.rows)

    def to_dict(self):
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    def __repr__(self):
        return f"BinRel({self.n}, {self.pairs()})"


def relation_from_dict(d):
    if "n" not in d or "pairs" not in d:
        raise InputError("relation record needs 'n' and 'pairs'")
    return BinRel.from_pairs(int(d["n"]), [tuple(p) for p in d["pairs"]])


def compose(R, S):
    """``R ; S``: pairs ``(x, y)`` with some ``z`` such that ``(x, z) in R`` and ``(z, y) in S``."""
    R._same(S)
    out = []
    srows = S.rows
    for r in R.rows:
        acc = 0
        for z in _bits(r):
            acc |= srows[z]
        out.append(acc)
    return BinRel(R.n, tuple(out))


def compose_all(*rels):
    out = rels[0]
    for R in rels[1:]:
        out = compose(out, R)
    return out


def converse(R):
    rows = [0] * R.n
    for x, r in enumerate(R.rows):
        for y in _bits(r):
            rows[y] |= 1 << x
    return BinRel(R.n, tuple(rows))


def complement_in(R, E):
    """Complement of ``R`` relative to ``E``; ``R`` must lie inside ``E``."""
    if not R <= E:
        bad = (R - E).pairs()[0]
        raise NotSubsetOfE("relation is not contained in E", witness=bad)
    return E - R


@dataclass(frozen=True)
class PointSet:
    size: int
    leq: BinRel

    @classmethod
    def from_matrix(cls, matrix):
        P = cls(len(matrix), BinRel.from_matrix(matrix))
        check_partial_order(P.leq)
        return P

    @classmethod
    def antichain(cls, n):
        return cls(n, BinRel.identity(n))


def check_partial_order(leq):
    n = leq.n
    for x in range(n):
        if (x, x) not in leq:
            raise NotAPoset("order is not reflexive", witness=(x, x))
    for x, y in leq.pairs():
        if x != y and (y, x) in leq:
            raise NotAPoset("order is not antisymmetric", witness=(x, y))
    comp = compose(leq, leq)
    if not comp <= leq:
        raise NotAPoset("order is not transitive", witness=(comp - leq).pairs()[0])


def is_upset(points, E, R):
    """Whether ``R`` is closed upward in ``(E, ≼)``, i.e. ``(≤ ; R ; ≤) ∩ E ⊆ R``.

    ``(u, v) ≼ (x, y)`` holds when ``x ≤ u`` and ``v ≤ y``.
    """
    leq = points.leq if isinstance(points, PointSet) else points
    if not R <= E:
        raise NotSubsetOfE("relation is not contained in E", witness=(R - E).pairs()[0])
    return compose_all(leq, R, leq) & E <= R


def upset_violation(points, E, R):
    """A pair forced into ``R`` by upward closure but missing from it, or None."""
    leq = points.leq if isinstance(points, PointSet) else points
    missing = (compose_all(leq, R, leq) & E) - R
    pairs = missing.pairs()
    return pairs[0] if pairs else None


def is_downset(points, E, R):
    leq = points.leq if isinstance(points, PointSet) else points
    if not R <= E:
        raise NotSubsetOfE("relation is not contained in E", witness=(R - E).pairs()[0])
    ge = converse(leq)
    return compose_all(ge, R, ge) & E <= R


def is_permutation_graph(g):
    ident = BinRel.identity(g.n)
    gc = converse(g)
    return compose(gc, g) == ident and compose(g, gc) == ident


@dataclass(frozen=True)
class IdentityCheck:
    left: bool      # (γ;R)^c = γ;R^c
    right: bool     # (R;γ)^c = R^c;γ

    def __bool__(self):
        return self.left and self.right


def graph_identities_check(gamma, R, E):
    """Complement commutes with composition by a bijection inside ``E``."""
    if not isinstance(gamma, BinRel):
        gamma = BinRel.graph(gamma)
    if not is_permutation_graph(gamma):
        raise NotABijection("gamma is not a bijection")
    for S, what in ((gamma, "gamma"), (R, "R")):
        if not S <= E:
            raise NotSubsetOfE(f"{what} is not contained in E", witness=(S - E).pairs()[0])
    Rc = complement_in(R, E)
    left = complement_in(compose(gamma, R), E) == compose(gamma, Rc)
    right = complement_in(compose(R, gamma), E) == compose(Rc, gamma)
    return IdentityCheck(left, right)


def equivalence_blocks(E):
    """Blocks of an equivalence relation, each sorted, listed by least element."""
    seen = set()
    blocks = []
    for x in range(E.n):
        if x in seen:
            continue
        block = tuple(sorted(_bits(E.rows[x])))
        seen.update(block)
        blocks.append(block)
    return blocks


def save_relation(R, path):
    with open(path, "w") as fh:
        json.dump(R.to_dict(), fh)
        fh.write("\n")
