"""Finite residuated structures and their axiom checks.

An algebra lives on the carrier ``0..n-1``.  The order is stored as a
boolean matrix, the monoid operation as a table of carrier indices and the
optional unary operations (``tilde`` for the left linear negation, ``minus``
for the right one, ``neg`` for the involution) as index tables.  Meets and
joins are always derived from the order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    InFLRequired,
    InputError,
    MissingNegations,
    NoJoin,
    NoMeet,
    NotALattice,
    NotAMonoid,
    NotAPoset,
    NotResiduated,
)

UNARY_OPS = ("tilde", "minus", "neg")


@dataclass(frozen=True)
class FiniteAlgebra:
    size: int
    leq: tuple
    mult: tuple
    one: int
    zero: Optional[int] = None
    tilde: Optional[tuple] = None
    minus: Optional[tuple] = None
    neg: Optional[tuple] = None
    names: Optional[tuple] = field(default=None, compare=False)

    def label(self, i):
        return self.names[i] if self.names else str(i)

    def index(self, name):
        """Carrier index of a display label."""
        if not self.names or name not in self.names:
            raise KeyError(name)
        return self.names.index(name)

    @property
    def signature(self):
        return tuple(getattr(self, op) is not None for op in UNARY_OPS) + (
            self.zero is not None,
        )

    @cached_property
    def leq_np(self):
        return np.array(self.leq, dtype=bool).reshape(self.size, self.size)

    @cached_property
    def mult_np(self):
        return np.array(self.mult, dtype=np.int64).reshape(self.size, self.size)

    @cached_property
    def _lattice(self):
        return lattice_ops(self)

    @property
    def meet(self):
        return self._lattice[0]

    @property
    def join(self):
        return self._lattice[1]

    @cached_property
    def meet_np(self):
        return np.array(self.meet, dtype=np.int64)

    @cached_property
    def join_np(self):
        return np.array(self.join, dtype=np.int64)

    @cached_property
    def bottom(self):
        return int(np.flatnonzero(self.leq_np.all(axis=1))[0])

    @cached_property
    def top(self):
        return int(np.flatnonzero(self.leq_np.all(axis=0))[0])

    def lt(self, a, b):
        return a != b and self.leq[a][b]

    def replace(self, **changes):
        data = {k: getattr(self, k) for k in
                ("size", "leq", "mult", "one", "zero", "tilde", "minus", "neg", "names")}
        data.update(changes)
        return FiniteAlgebra(**data)

    def __repr__(self):
        labels = list(self.names) if self.names else list(range(self.size))
        return f"FiniteAlgebra(size={self.size}, carrier={labels})"


def _freeze_matrix(rows, n, what, cast):
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"{what} must be a {n}x{n} table")
    return tuple(tuple(cast(x) for x in r) for r in rows)


def _freeze_vector(vec, n, what):
    if vec is None:
        return None
    if len(vec) != n:
        raise InputError(f"{what} must have length {n}")
    out = tuple(int(x) for x in vec)
    for i, x in enumerate(out):
        if not 0 <= x < n:
            raise InputError(f"{what}[{i}] = {x} out of range", witness=(i,))
    return out


def make_algebra(leq, mult, one, zero=None, tilde=None, minus=None, neg=None,
                 names=None):
    """Freeze tables into a :class:`FiniteAlgebra` without validating axioms."""
    n = len(leq)
    if n < 1:
        raise InputError("carrier must be non-empty")
    leq_t = _freeze_matrix(leq, n, "leq", bool)
    mult_t = _freeze_matrix(mult, n, "mult", int)
    for a, b in itertools.product(range(n), repeat=2):
        if not 0 <= mult_t[a][b] < n:
            raise InputError(f"mult[{a}][{b}] out of range", witness=(a, b))
    for what, c in (("one", one), ("zero", zero)):
        if c is not None and not 0 <= int(c) < n:
            raise InputError(f"{what} = {c} out of range")
    if names is not None:
        if len(names) != n:
            raise InputError(f"names must have length {n}")
        names = tuple(str(s) for s in names)
    return FiniteAlgebra(
        size=n,
        leq=leq_t,
        mult=mult_t,
        one=int(one),
        zero=None if zero is None else int(zero),
        tilde=_freeze_vector(tilde, n, "tilde"),
        minus=_freeze_vector(minus, n, "minus"),
        neg=_freeze_vector(neg, n, "neg"),
        names=names,
    )


def leq_from_covers(n, covers):
    """Reflexive-transitive closure of a list of ``(lower, upper)`` pairs."""
    m = np.eye(n, dtype=bool)
    for a, b in covers:
        m[a, b] = True
    for k in range(n):
        m |= m[:, [k]] & m[[k], :]
    return m.tolist()


# ---------------------------------------------------------------------------
# structural validation


def _poset_violation(leq):
    n = leq.shape[0]
    diag = np.flatnonzero(~np.diag(leq))
    if diag.size:
        a = int(diag[0])
        return "reflexivity", (a, a)
    anti = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if anti.size:
        a, b = anti[0]
        return "antisymmetry", (int(a), int(b))
    # leq[a,b] & leq[b,c] & ~leq[a,c]
    bad = np.argwhere(leq[:, :, None] & leq[None, :, :] & ~leq[:, None, :])
    if bad.size:
        a, b, c = bad[0]
        return "transitivity", (int(a), int(c))
    return None


def _bound_table(leq, upper):
    """Join table (``upper``) or meet table of a poset, or the first failing pair."""
    n = leq.shape[0]
    # a join has the largest up-set among upper bounds, a meet the largest down-set
    rank = leq.sum(axis=1) if upper else leq.sum(axis=0)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            if upper:
                common = np.flatnonzero(leq[a] & leq[b])
            else:
                common = np.flatnonzero(leq[:, a] & leq[:, b])
            if common.size == 0:
                return None, (a, b)
            cand = int(common[np.argmax(rank[common])])
            if upper:
                ok = leq[cand, common].all()
            else:
                ok = leq[common, cand].all()
            if not ok:
                return None, (a, b)
            table[a][b] = table[b][a] = cand
    return tuple(tuple(r) for r in table), None


def lattice_ops(A):
    """Meet and join tables derived from ``A.leq``.

    Raises :class:`NoMeet` or :class:`NoJoin` with the offending pair.
    """
    leq = np.array(A.leq, dtype=bool)
    meet, bad = _bound_table(leq, upper=False)
    if meet is None:
        raise NoMeet(f"elements {bad} have no greatest lower bound", witness=bad)
    join, bad = _bound_table(leq, upper=True)
    if join is None:
        raise NoJoin(f"elements {bad} have no least upper bound", witness=bad)
    return meet, join


def _monoid_violation(A):
    m = A.mult_np
    n = A.size
    ident = np.flatnonzero((m[A.one] != np.arange(n)) | (m[:, A.one] != np.arange(n)))
    if ident.size:
        return "identity", (int(ident[0]),)
    left = m[m[:, :, None], np.arange(n)[None, None, :]]     # (a*b)*c
    right = m[np.arange(n)[:, None, None], m[None, :, :]]    # a*(b*c)
    bad = np.argwhere(left != right)
    if bad.size:
        return "associativity", tuple(int(x) for x in bad[0])
    return None


_RAW_KEYS = {"size", "leq", "mult", "one", "zero", "tilde", "minus", "neg", "names"}


def validate_algebra(raw):
    """Build an algebra from a record and confirm poset, lattice and monoid laws.

    ``raw`` is either a mapping in the JSON schema or an existing
    :class:`FiniteAlgebra`.  Residuation is not checked here.
    """
    if isinstance(raw, FiniteAlgebra):
        A = raw
    else:
        extra = set(raw) - _RAW_KEYS
        if extra & {"meet", "join"}:
            raise InputError("meet/join tables are derived from leq and must not be supplied")
        if extra:
            raise InputError(f"unknown keys {sorted(extra)}")
        for key in ("leq", "mult", "one"):
            if key not in raw:
                raise InputError(f"missing key {key!r}")
        if "size" in raw and raw["size"] != len(raw["leq"]):
            raise InputError("size does not match leq")
        A = make_algebra(raw["leq"], raw["mult"], raw["one"], raw.get("zero"),
                         raw.get("tilde"), raw.get("minus"), raw.get("neg"),
                         raw.get("names"))
    bad = _poset_violation(A.leq_np)
    if bad:
        law, pair = bad
        raise NotAPoset(f"leq fails {law}", witness=pair)
    A.meet  # raises NoMeet / NoJoin
    bad = _monoid_violation(A)
    if bad:
        law, w = bad
        raise NotAMonoid(f"mult fails {law}", witness=w)
    return A


# ---------------------------------------------------------------------------
# residuals


@dataclass(frozen=True)
class ResidualTables:
    under: tuple   # under[a][c] = a\c
    over: tuple    # over[c][b] = c/b

    def ldiv(self, a, c):
        return self.under[a][c]

    def rdiv(self, c, b):
        return self.over[c][b]


def _greatest(leq, members):
    """Greatest element of ``members`` under ``leq`` or None."""
    if members.size == 0:
        return None
    downsizes = leq[:, members].sum(axis=0)
    cand = int(members[np.argmax(downsizes)])
    return cand if leq[members, cand].all() else None


def residuals(A):
    """Both residuals of the monoid operation, as maxima of the solution sets.

    ``c/b`` is the greatest ``a`` with ``a*b <= c`` and ``a\\c`` the greatest
    ``b`` with ``a*b <= c``.  A missing maximum, or a failure of the
    exhaustive three-way equivalence afterwards, raises :class:`NotResiduated`.
    """
    n = A.size
    leq = A.leq_np
    m = A.mult_np
    sat = leq[m]          # sat[a, b, c]  <=>  a*b <= c
    under = [[0] * n for _ in range(n)]
    over = [[0] * n for _ in range(n)]
    for a in range(n):
        for c in range(n):
            g = _greatest(leq, np.flatnonzero(sat[a, :, c]))
            if g is None:
                raise NotResiduated(f"{A.label(a)}\\{A.label(c)} has no maximum", witness=(a, c))
            under[a][c] = g
    for c in range(n):
        for b in range(n):
            g = _greatest(leq, np.flatnonzero(sat[:, b, c]))
            if g is None:
                raise NotResiduated(f"{A.label(c)}/{A.label(b)} has no maximum", witness=(c, b))
            over[c][b] = g
    tables = ResidualTables(tuple(map(tuple, under)), tuple(map(tuple, over)))
    bad = _residuation_violation(A, tables)
    if bad is not None:
        raise NotResiduated("residuation law fails", witness=bad)
    return tables


def _residuation_violation(A, res):
    n = A.size
    leq = A.leq_np
    sat = leq[A.mult_np]
    under = np.array(res.under)
    over = np.array(res.over)
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    via_over = leq[a, over[c, b]]
    via_under = leq[b, under[a, c]]
    bad = np.argwhere((sat != via_over) | (sat != via_under))
    if bad.size:
        return tuple(int(x) for x in bad[0])
    return None


def residuals_from_negations(A):
    """Residuals computed from the product and the linear negations.

    Uses ``c/b = -(b * ~c)`` and ``a\\c = ~(-c * a)``; only meaningful on
    involutive algebras.
    """
    if A.tilde is None or A.minus is None:
        raise InFLRequired("both linear negations are required")
    n = A.size
    t, mi, m = A.tilde, A.minus, A.mult
    under = tuple(tuple(t[m[mi[c]][a]] for c in range(n)) for a in range(n))
    over = tuple(tuple(mi[m[b][t[c]]] for b in range(n)) for c in range(n))
    return ResidualTables(under, over)


def with_negations(A, zero=None):
    """Return ``A`` with ``~a = a\\0`` and ``-a = 0/a`` filled in from residuation."""
    z = A.zero if zero is None else zero
    if z is None:
        raise MissingNegations("a zero constant is needed to derive the negations")
    res = residuals(A)
    tilde = tuple(res.under[a][z] for a in range(A.size))
    minus = tuple(res.over[z][a] for a in range(A.size))
    return A.replace(zero=z, tilde=tilde, minus=minus)


def dual_sum(A, a, b):
    """The dual product ``a + b = -(~b * ~a)``.

    This agrees with ``~(-a * -b)`` when the product commutes.  In general only
    the form used here is the order dual of the product (in a relation algebra
    it is the relative sum), so the De Morgan law for ``¬`` is checked with it.
    """
    if A.tilde is None or A.minus is None:
        raise MissingNegations("dual sum needs both linear negations")
    return A.minus[A.mult[A.tilde[b]][A.tilde[a]]]


# ---------------------------------------------------------------------------
# axiom report


class Verdict(NamedTuple):
    holds: bool
    witness: Optional[tuple] = None
    note: str = ""

    def __bool__(self):
        return self.holds


YES = Verdict(True)


def _no(witness=(), note=""):
    return Verdict(False, tuple(int(x) for x in witness), note)


def _first(mask):
    hits = np.argwhere(mask)
    return tuple(int(x) for x in hits[0]) if hits.size else None


@dataclass
class AxiomReport:
    verdicts: dict
    residual_tables: Optional[ResidualTables] = None

    def __getitem__(self, name):
        return self.verdicts[name].holds

    def witness(self, name):
        return self.verdicts[name].witness

    def failed(self):
        return [k for k, v in self.verdicts.items() if not v.holds]

    def to_dict(self):
        out = {}
        for k, v in self.verdicts.items():
            entry = {"holds": v.holds}
            if not v.holds:
                entry["witness"] = list(v.witness or ())
                if v.note:
                    entry["note"] = v.note
            out[k] = entry
        return out


QRA_PARTS = ("residuated", "negations", "In", "involutive", "Dm", "Di", "Dp")


def check_axioms(A):
    """Decide every structural and classification predicate by exhaustive loops."""
    v = {}
    n = A.size
    idx = np.arange(n)
    leq = A.leq_np

    bad = _poset_violation(leq)
    v["poset"] = YES if bad is None else _no(bad[1], bad[0])
    lattice_ok = False
    if v["poset"]:
        try:
            A.meet
            lattice_ok = True
            v["lattice"] = YES
        except NotALattice as exc:
            v["lattice"] = _no(exc.witness, type(exc).__name__)
    else:
        v["lattice"] = _no((), "order is not a partial order")
    bad = _monoid_violation(A)
    v["monoid"] = YES if bad is None else _no(bad[1], bad[0])

    res = None
    if lattice_ok and v["monoid"]:
        try:
            res = residuals(A)
            v["residuated"] = YES
        except NotResiduated as exc:
            v["residuated"] = _no(exc.witness, str(exc))
    else:
        v["residuated"] = _no((), "needs a lattice-ordered monoid")

    m = A.mult_np
    t = None if A.tilde is None else np.array(A.tilde)
    mi = None if A.minus is None else np.array(A.minus)
    ng = None if A.neg is None else np.array(A.neg)
    zero = A.zero if A.zero is not None else (A.tilde[A.one] if A.tilde else None)

    # linear negations agree with the residual-defined ones
    if t is None or mi is None:
        v["negations"] = _no((), "linear negations absent")
    elif res is None:
        v["negations"] = _no((), "not residuated")
    else:
        want_t = np.array([res.under[a][zero] for a in range(n)])
        want_m = np.array([res.over[zero][a] for a in range(n)])
        if A.zero is not None and (A.tilde[A.one] != A.zero or A.minus[A.one] != A.zero):
            v["negations"] = _no((A.one,), "~1 = -1 = 0 fails")
        else:
            w = _first((t != want_t) | (mi != want_m))
            v["negations"] = YES if w is None else _no(w, "~a = a\\0 or -a = 0/a fails")

    if t is None or mi is None:
        v["In"] = _no((), "linear negations absent")
    else:
        w = _first((t[mi] != idx) | (mi[t] != idx))
        v["In"] = YES if w is None else _no(w)

    if ng is None:
        for law in ("involutive", "Dm", "Di", "Dp"):
            v[law] = _no((), "involution absent")
    else:
        w = _first(ng[ng] != idx)
        v["involutive"] = YES if w is None else _no(w)
        if lattice_ok:
            J, M = A.join_np, A.meet_np
            w = _first(ng[J] != M[ng[:, None], ng[None, :]])
            v["Dm"] = YES if w is None else _no(w)
        else:
            v["Dm"] = _no((), "not a lattice")
        if t is None or mi is None:
            v["Di"] = _no((), "linear negations absent")
            v["Dp"] = _no((), "linear negations absent")
        else:
            w = _first(ng[t] != mi[ng])
            v["Di"] = YES if w is None else _no(w)
            plus = mi[m[t[None, :], t[:, None]]]           # plus[a, b] = -(~b * ~a)
            w = _first(ng[m] != plus[ng[:, None], ng[None, :]])
            v["Dp"] = YES if w is None else _no(w)

    if lattice_ok:
        J, M = A.join_np, A.meet_np
        a_, b_, c_ = idx[:, None, None], idx[None, :, None], idx[None, None, :]
        lhs = M[a_, J[b_, c_]]
        rhs = J[M[a_, b_], M[a_, c_]]
        w = _first(lhs != rhs)
        v["distributive"] = YES if w is None else _no(w)
    else:
        v["distributive"] = _no((), "not a lattice")

    if t is None or mi is None:
        v["cyclic"] = _no((), "linear negations absent")
    else:
        w = _first(t != mi)
        v["cyclic"] = YES if w is None else _no(w)
    if zero is None:
        v["odd"] = _no((), "no zero constant")
    else:
        v["odd"] = YES if zero == A.one else _no((A.one, zero))
    w = _first(m != m.T)
    v["commutative"] = YES if w is None else _no(w)
    w = _first(m[idx, idx] != idx)
    v["idempotent"] = YES if w is None else _no(w)
    w = _first(~(leq[:, A.one] | leq[A.one, :]))
    v["conic"] = YES if w is None else _no(w)

    v["InFL"] = _conjunction(v, ("residuated", "negations", "In"))
    v["qRA"] = _conjunction(v, QRA_PARTS)
    v["DqRA"] = _conjunction(v, ("qRA", "distributive"))
    return AxiomReport(v, res)


def _conjunction(v, parts):
    for p in parts:
        if not v[p].holds:
            return Verdict(False, v[p].witness, f"{p} fails" + (f": {v[p].note}" if v[p].note else ""))
    return YES


# ---------------------------------------------------------------------------
# irreducibility


def operations(A, residual_tables=None):
    """Non-nullary basic operations as ``name -> (arity, table)``.

    The residuals are included when they exist.
    """
    ops = {"meet": (2, A.meet), "join": (2, A.join), "mult": (2, A.mult)}
    res = residual_tables
    if res is None:
        try:
            res = residuals(A)
        except NotResiduated:
            res = None
    if res is not None:
        ops["ldiv"] = (2, res.under)
        ops["rdiv"] = (2, res.over)
    for name in UNARY_OPS:
        table = getattr(A, name)
        if table is not None:
            ops[name] = (1, table)
    return ops


def irreducibility_witnesses(A, b, residual_tables=None):
    """Per operation, the lexicographically least argument tuple that
    produces ``b`` without containing it, or None when there is none."""
    res = residual_tables
    if res is None:
        try:
            res = residuals(A)
        except NotResiduated:
            res = None
    ops = operations(A, res)
    out = {}
    n = A.size
    for name, (arity, table) in ops.items():
        found = None
        if arity == 1:
            for x in range(n):
                if x != b and table[x] == b:
                    found = (x,)
                    break
        else:
            for x in range(n):
                if x == b:
                    continue
                for y in range(n):
                    if y != b and table[x][y] == b:
                        found = (x, y)
                        break
                if found:
                    break
        out[name] = found
    return out


class Irreducibility(NamedTuple):
    holds: bool
    op: Optional[str] = None
    args: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def is_totally_irreducible(A, b):
    """Whether no basic operation yields ``b`` from arguments all different from ``b``."""
    for name, w in irreducibility_witnesses(A, b).items():
        if w is not None:
            return Irreducibility(False, name, w)
    return Irreducibility(True)


# ---------------------------------------------------------------------------
# forbidden sublattices


class ForbiddenSublattice(NamedTuple):
    kind: Optional[str]                  # "N5", "M3", or None past the scan cap
    elements: Optional[tuple]            # (bottom, x, y, z, top)


def find_forbidden_sublattice(A, cap=12):
    """A sublattice isomorphic to N5 or M3, or None if the lattice is distributive.

    For N5 the elements are listed as ``(bottom, a, c, b, top)`` with
    ``a < c`` and ``b`` incomparable to both; for M3 as ``(bottom, a, b, c, top)``.
    Above ``cap`` elements only the distributive law is evaluated.
    """
    if A.size > cap:
        if check_axioms(A).verdicts["distributive"]:
            return None
        return ForbiddenSublattice(None, None)
    n = A.size
    leq, M, J = A.leq, A.meet, A.join

    def incomparable(x, y):
        return not leq[x][y] and not leq[y][x]

    for a in range(n):
        for c in range(n):
            if a == c or not leq[a][c]:
                continue
            for b in range(n):
                if incomparable(a, b) and incomparable(c, b) \
                        and J[a][b] == J[c][b] and M[a][b] == M[c][b]:
                    return ForbiddenSublattice("N5", (M[a][b], a, c, b, J[a][b]))
    for a, b, c in itertools.combinations(range(n), 3):
        if incomparable(a, b) and incomparable(a, c) and incomparable(b, c):
            if M[a][b] == M[a][c] == M[b][c] and J[a][b] == J[a][c] == J[b][c]:
                return ForbiddenSublattice("M3", (M[a][b], a, b, c, J[a][b]))
    return None


# ---------------------------------------------------------------------------
# isomorphism


def _element_invariants(A):
    n = A.size
    leq = A.leq_np
    m = A.mult
    inv = []
    for x in range(n):
        inv.append((
            int(leq[:, x].sum()), int(leq[x].sum()),
            m[x][x] == x, x == A.one, x == A.zero,
            sorted((int(leq[:, m[x][y]].sum()), int(leq[:, m[y][x]].sum())) for y in range(n)),
            tuple(getattr(A, op)[x] == x if getattr(A, op) else None for op in UNARY_OPS),
        ))
    return inv


def are_isomorphic(A, B):
    """A bijection ``f`` (as a tuple, ``f[a]`` in B) preserving order, product,
    constants and every present unary operation, or None."""
    if A.size != B.size or A.signature != B.signature:
        return None
    n = A.size
    invA, invB = _element_invariants(A), _element_invariants(B)
    if sorted(map(repr, invA)) != sorted(map(repr, invB)):
        return None
    cands = [[y for y in range(n) if invB[y] == invA[x]] for x in range(n)]
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    f = [-1] * n
    used = [False] * n
    unary = [(getattr(A, op), getattr(B, op)) for op in UNARY_OPS if getattr(A, op) is not None]

    def consistent(x, y):
        for x2 in range(n):
            y2 = f[x2]
            if y2 < 0:
                continue
            if A.leq[x][x2] != B.leq[y][y2] or A.leq[x2][x] != B.leq[y2][y]:
                return False
            for p, q in ((x, x2), (x2, x)):
                r = A.mult[p][q]
                if f[r] >= 0 and f[r] != B.mult[f[p]][f[q]]:
                    return False
        r = A.mult[x][x]
        if f[r] >= 0 and f[r] != B.mult[y][y]:
            return False
        for ta, tb in unary:
            if f[ta[x]] >= 0 and f[ta[x]] != tb[y]:
                return False
            pre = [z for z in range(n) if ta[z] == x and f[z] >= 0]
            if any(tb[f[z]] != y for z in pre):
                return False
        return True

    def search(k):
        if k == n:
            return True
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            f[x] = y
            if consistent(x, y):
                used[y] = True
                if search(k + 1):
                    return True
                used[y] = False
            f[x] = -1
        return False

    if not search(0):
        return None
    if check_map(A, B, f).ok:
        return tuple(f)
    return None   # pragma: no cover - consistency checks are complete


# ---------------------------------------------------------------------------
# maps between algebras


@dataclass
class AlgebraMap:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple
    report: dict

    @property
    def ok(self):
        return all(v.holds for v in self.report.values())

    def __call__(self, x):
        return self.mapping[x]


def check_map(A, B, f, bijective=True):
    """Preservation report for ``f: A -> B`` over every operation both carry."""
    f = tuple(f)
    n = A.size
    rep = {}
    if len(f) != n:
        return AlgebraMap(A, B, f, {"shape": _no((), "wrong length")})
    if bijective:
        ok = sorted(f) == list(range(B.size))
        rep["bijective"] = YES if ok else _no((), "not a bijection")
    else:
        ok = len(set(f)) == n
        rep["injective"] = YES if ok else _no((), "not injective")
    bad = next(((x, y) for x in range(n) for y in range(n)
                if A.leq[x][y] != B.leq[f[x]][f[y]]), None)
    rep["order"] = YES if bad is None else _no(bad)
    for name, ta, tb in (("meet", A.meet, B.meet), ("join", A.join, B.join),
                         ("mult", A.mult, B.mult)):
        bad = next(((x, y) for x in range(n) for y in range(n)
                    if f[ta[x][y]] != tb[f[x]][f[y]]), None)
        rep[name] = YES if bad is None else _no(bad)
    for op in UNARY_OPS:
        ta, tb = getattr(A, op), getattr(B, op)
        if ta is None or tb is None:
            continue
        bad = next(((x,) for x in range(n) if f[ta[x]] != tb[f[x]]), None)
        rep[op] = YES if bad is None else _no(bad)
    rep["one"] = YES if f[A.one] == B.one else _no((A.one,))
    if A.zero is not None and B.zero is not None:
        rep["zero"] = YES if f[A.zero] == B.zero else _no((A.zero,))
    return AlgebraMap(A, B, f, rep)


def relabel(A, perm):
    """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
    n = A.size
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    leq = [[A.leq[inv[x]][inv[y]] for y in range(n)] for x in range(n)]
    mult = [[perm[A.mult[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]

    def un(t):
        return None if t is None else [perm[t[inv[x]]] for x in range(n)]

    return make_algebra(
        leq, mult, perm[A.one], None if A.zero is None else perm[A.zero],
        un(A.tilde), un(A.minus), un(A.neg),
        None if A.names is None else [A.names[inv[x]] for x in range(n)],
    )


# ---------------------------------------------------------------------------
# serialization and export


def algebra_to_dict(A):
    d = {
        "size": A.size,
        "leq": [[int(x) for x in row] for row in A.leq],
        "mult": [list(row) for row in A.mult],
        "one": A.one,
    }
    for key in ("zero", "tilde", "minus", "neg", "names"):
        val = getattr(A, key)
        if val is not None:
            d[key] = val if isinstance(val, int) else list(val)
    return d


def load_algebra(path):
    with open(path) as fh:
        return validate_algebra(json.load(fh))


def save_algebra(A, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_dict(A), fh)
        fh.write("\n")


def covers(leq):
    """Cover pairs ``(a, b)`` of a poset given as a boolean matrix."""
    n = len(leq)
    out = []
    for a in range(n):
        for b in range(n):
            if a != b and leq[a][b] and not any(
                    c not in (a, b) and leq[a][c] and leq[c][b] for c in range(n)):
                out.append((a, b))
    return out


def _dot_quote(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def hasse_dot(A, title=None):
    """Graphviz source for the Hasse diagram; idempotents are drawn filled."""
    lines = ["digraph hasse {", "  rankdir=BT;", "  edge [arrowhead=none];",
             "  node [shape=circle, width=0.15, fixedsize=true, label=\"\"];"]
    if title:
        lines.append(f"  label={_dot_quote(title)};")
    for x in range(A.size):
        filled = A.mult[x][x] == x
        style = "style=filled, fillcolor=black" if filled else "style=solid"
        lines.append(f"  n{x} [{style}, xlabel={_dot_quote(A.label(x))}];")
    for a, b in covers(A.leq):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_table(A, table: Sequence[Sequence[int]]):
    """Human-readable rendering of a binary table using display labels."""
    labels = [A.label(i) for i in range(A.size)]
    width = max(map(len, labels))
    head = " " * (width + 1) + " ".join(s.rjust(width) for s in labels)
    rows = [labels[i].rjust(width) + " " + " ".join(labels[v].rjust(width) for v in row)
            for i, row in enumerate(table)]
    return "\n".join([head] + rows)
