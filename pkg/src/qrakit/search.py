"""Bounded enumeration of finite residuated structures up to isomorphism.

The search is layered.  Lattices come first, built on a natural labelling
(``i <= j`` implies ``i <= j`` as integers) and deduplicated by canonical form.
An identity is chosen next, then the product is filled cell by cell.  Joins
are preserved in each argument and the bottom is absorbing, so every complete
table is residuated.  Associativity is checked as soon as the four entries
of a triple are known.  Negations and the involution are added last.
"""

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    algebra_to_dict,
    check_axioms,
    is_totally_irreducible,
    make_algebra,
    relabel,
    residuals,
)
from .errors import BudgetExceeded, InputError, NotResiduated

CONSTRAINTS = (
    "RL", "InFL", "qRA", "DqRA", "conic", "odd", "cyclic", "commutative",
    "idempotent", "totally_irreducible_one", "chain",
)
ALIASES = {
    "rl": "RL", "infl": "InFL", "qra": "qRA", "dqra": "DqRA",
    "tot-irr-one": "totally_irreducible_one", "totally-irreducible-one": "totally_irreducible_one",
}
DEFAULT_MAX_SIZE = 8
PERMUTATION_BUDGET = 200_000


def max_size():
    return int(os.environ.get("QRAKIT_MAX_SIZE", DEFAULT_MAX_SIZE))


def normalize_constraint(name):
    key = ALIASES.get(name, ALIASES.get(name.lower(), name))
    if key not in CONSTRAINTS:
        raise InputError(f"unknown constraint {name!r}; choose from {', '.join(CONSTRAINTS)}")
    return key


@dataclass(frozen=True)
class SearchSpec:
    size: int
    constraints: frozenset = frozenset()
    limit: int = None
    workers: int = 1

    def __post_init__(self):
        if self.size < 1:
            raise InputError("search size must be at least 1")
        object.__setattr__(self, "constraints",
                           frozenset(normalize_constraint(c) for c in self.constraints))

    @property
    def level(self):
        """Signature searched: ``qra`` with the involution, ``infl`` with
        the linear negations, ``rl`` with neither."""
        c = self.constraints
        if c & {"qRA", "DqRA"}:
            return "qra"
        if c & {"InFL", "odd", "cyclic"}:
            return "infl"
        return "rl"


@dataclass
class ModelSet:
    spec: SearchSpec
    models: list = field(default_factory=list)       # canonical algebras
    reports: list = field(default_factory=list)      # per model verdicts
    exhaustive: bool = True
    seconds: float = 0.0

    def __len__(self):
        return len(self.models)

    def summary(self):
        return {
            "size": self.spec.size,
            "constraints": sorted(self.spec.constraints),
            "count": len(self.models),
            "exhaustive": self.exhaustive,
            "seconds": round(self.seconds, 3),
        }


# ---------------------------------------------------------------------------
# canonical forms


def _refine(n, colors, neighbours):
    """Colour refinement.  ``neighbours(x)`` lists labelled edges ``(tag, y)``.
    Colours are renamed by sorting signatures, so the result does not depend
    on the labelling of the input."""
    while True:
        sigs = [(colors[x], tuple(sorted((t, colors[y]) for t, y in neighbours(x))))
                for x in range(n)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _algebra_edges(A):
    n = A.size
    unary = [(name, getattr(A, name)) for name in ("tilde", "minus", "neg")
             if getattr(A, name) is not None]

    def edges(x):
        out = []
        for y in range(n):
            out.append(("le" if A.leq[x][y] else "nle", y))
            out.append(("l", A.mult[x][y]))
            out.append(("r", A.mult[y][x]))
        for name, t in unary:
            out.append((name, t[x]))
        return out
    return edges


def _candidate_perms(colors, budget):
    """Relabellings listing colour classes in colour order, every order
    within a class."""
    classes = {}
    for x, c in enumerate(colors):
        classes.setdefault(c, []).append(x)
    groups = [classes[c] for c in sorted(classes)]
    total = 1
    for g in groups:
        for k in range(2, len(g) + 1):
            total *= k
    if total > budget:
        raise BudgetExceeded(f"{total} relabellings exceed the budget of {budget}",
                             witness=(total,))
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [x for part in choice for x in part]
        perm = [0] * len(colors)
        for new, old in enumerate(order):
            perm[old] = new
        yield perm


def _serialize(A, perm):
    n = A.size
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    out = [n, perm[A.one], -1 if A.zero is None else perm[A.zero]]
    out += [int(A.leq[inv[x]][inv[y]]) for x in range(n) for y in range(n)]
    out += [perm[A.mult[inv[x]][inv[y]]] for x in range(n) for y in range(n)]
    for name in ("tilde", "minus", "neg"):
        t = getattr(A, name)
        out += [-1] if t is None else [perm[t[inv[x]]] for x in range(n)]
    return tuple(out)


def canonical_perm(A, budget=PERMUTATION_BUDGET):
    n = A.size
    init = [(sum(A.leq[y][x] for y in range(n)), sum(A.leq[x]), x == A.one, x == A.zero,
             A.mult[x][x] == x) for x in range(n)]
    rank = {s: i for i, s in enumerate(sorted(set(init)))}
    colors = _refine(n, [rank[s] for s in init], _algebra_edges(A))
    best, best_perm = None, None
    for perm in _candidate_perms(colors, budget):
        s = _serialize(A, perm)
        if best is None or s < best:
            best, best_perm = s, perm
    return best_perm, best


def canonical_form(A, budget=PERMUTATION_BUDGET):
    """Byte string shared exactly by isomorphic algebras."""
    _, ser = canonical_perm(A, budget)
    return ",".join(map(str, ser)).encode()


def canonical_algebra(A, budget=PERMUTATION_BUDGET):
    perm, _ = canonical_perm(A, budget)
    return relabel(A, perm).replace(names=None)


def _poset_canonical(leq):
    n = len(leq)
    init = [(sum(leq[y][x] for y in range(n)), sum(leq[x])) for x in range(n)]
    rank = {s: i for i, s in enumerate(sorted(set(init)))}

    def edges(x):
        return [("le" if leq[x][y] else ("ge" if leq[y][x] else "par"), y) for y in range(n)]
    colors = _refine(n, [rank[s] for s in init], edges)
    best = None
    for perm in _candidate_perms(colors, PERMUTATION_BUDGET):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        s = tuple(int(leq[inv[x]][inv[y]]) for x in range(n) for y in range(n))
        if best is None or s < best:
            best = s
    return best


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    def __init__(self, leq):
        self.n = n = len(leq)
        self.leq = leq
        self.join = [[self._bound(a, b, True) for b in range(n)] for a in range(n)]
        self.meet = [[self._bound(a, b, False) for b in range(n)] for a in range(n)]
        # pairs of strictly smaller elements joining to each element
        self.join_pairs = [[(x, y) for x in range(n) for y in range(x + 1, n)
                            if x != a and y != a and self.join[x][y] == a] for a in range(n)]

    def _bound(self, a, b, upper):
        n, leq = self.n, self.leq
        if upper:
            cands = [c for c in range(n) if leq[a][c] and leq[b][c]]
            best = [c for c in cands if all(leq[c][d] for d in cands)]
        else:
            cands = [c for c in range(n) if leq[c][a] and leq[c][b]]
            best = [c for c in cands if all(leq[d][c] for d in cands)]
        return best[0] if best else None

    def is_lattice(self):
        return all(v is not None for row in self.join for v in row) and \
            all(v is not None for row in self.meet for v in row)

    def distributive(self):
        r = range(self.n)
        J, M = self.join, self.meet
        return all(M[a][J[b][c]] == J[M[a][b]][M[a][c]] for a in r for b in r for c in r)

    def is_chain(self):
        return all(self.leq[a][b] or self.leq[b][a] for a in range(self.n) for b in range(self.n))

    def dual_automorphisms(self):
        """Order-reversing bijections, as tuples."""
        n, leq = self.n, self.leq
        out = []
        for p in itertools.permutations(range(n)):
            if all(leq[a][b] == leq[p[b]][p[a]] for a in range(n) for b in range(n)):
                out.append(p)
        return out


def enumerate_lattices(n):
    """All lattices with ``n`` elements up to isomorphism, naturally labelled
    with ``0`` the bottom and ``n - 1`` the top, in canonical order."""
    if n == 1:
        return [Lattice([[True]])]
    found = {}

    def extend(downs):
        k = len(downs)
        if k == n - 1:
            full = downs + [set(range(n))]
            leq = [[x in full[y] for y in range(n)] for x in range(n)]
            L = Lattice(leq)
            if L.is_lattice():
                key = _poset_canonical(leq)
                found.setdefault(key, L)
            return
        # down-set of the new element k: a down-closed set of earlier
        # elements containing the bottom, plus k itself
        for r in range(1, k + 1):
            for combo in itertools.combinations(range(k), r):
                s = set(combo)
                if 0 not in s:
                    continue
                if all(downs[x] <= s | {k} for x in s):
                    extend(downs + [s | {k}])

    extend([{0}])
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# products


def _identity_ok(L, e, constraints):
    if "conic" in constraints and not all(L.leq[x][e] or L.leq[e][x] for x in range(L.n)):
        return False
    if "totally_irreducible_one" in constraints and L.n > 1:
        for x in range(L.n):
            for y in range(L.n):
                if x != e and y != e and (L.join[x][y] == e or L.meet[x][y] == e):
                    return False
    return True


def _products(L, e, constraints):
    """Yield every residuated monoid table on lattice ``L`` with identity ``e``."""
    n = L.n
    leq = L.leq
    if n == 1:
        yield [[0]]
        return
    if e == 0:
        return          # the bottom is absorbing, so it cannot be the identity
    T = [[-1] * n for _ in range(n)]
    for x in range(n):
        T[e][x] = T[x][e] = x
    for x in range(n):
        if x != e:
            T[0][x] = T[x][0] = 0
    T[0][e] = T[e][0] = 0
    cells = [(a, b) for a in range(n) for b in range(n) if T[a][b] < 0]
    below = [[y for y in range(n) if y != x and leq[y][x]] for x in range(n)]
    above = [[y for y in range(n) if y != x and leq[x][y]] for x in range(n)]
    no_one = "totally_irreducible_one" in constraints
    idem = "idempotent" in constraints
    comm = "commutative" in constraints
    join = L.join

    def fits(a, b, v):
        if no_one and v == e and a != e and b != e:
            return False
        if idem and a == b and v != a:
            return False
        if comm:
            w = T[b][a]
            if w >= 0 and w != v:
                return False
        for a2 in below[a]:
            w = T[a2][b]
            if w >= 0 and not leq[w][v]:
                return False
        for a2 in above[a]:
            w = T[a2][b]
            if w >= 0 and not leq[v][w]:
                return False
        for b2 in below[b]:
            w = T[a][b2]
            if w >= 0 and not leq[w][v]:
                return False
        for b2 in above[b]:
            w = T[a][b2]
            if w >= 0 and not leq[v][w]:
                return False
        for x, y in L.join_pairs[a]:
            p, q = T[x][b], T[y][b]
            if p >= 0 and q >= 0 and join[p][q] != v:
                return False
        for x, y in L.join_pairs[b]:
            p, q = T[a][x], T[a][y]
            if p >= 0 and q >= 0 and join[p][q] != v:
                return False
        return True

    def assoc(a, b):
        v = T[a][b]
        for x in range(n):
            bx, vx = T[b][x], T[v][x]
            if bx >= 0 and vx >= 0:
                t = T[a][bx]
                if t >= 0 and t != vx:
                    return False
            xa, xv = T[x][a], T[x][v]
            if xa >= 0 and xv >= 0:
                t = T[xa][b]
                if t >= 0 and t != xv:
                    return False
        for p in range(n):
            row = T[p]
            for q in range(n):
                if row[q] == a:
                    qb = T[q][b]
                    if qb >= 0:
                        t = T[p][qb]
                        if t >= 0 and t != v:
                            return False
                if row[q] == b:
                    ap = T[a][p]
                    if ap >= 0:
                        t = T[ap][q]
                        if t >= 0 and t != v:
                            return False
        return True

    def fill(k):
        if k == len(cells):
            yield [row[:] for row in T]
            return
        a, b = cells[k]
        if L.join_pairs[a]:
            x, y = L.join_pairs[a][0]
            forced = [join[T[x][b]][T[y][b]]]
        elif L.join_pairs[b]:
            x, y = L.join_pairs[b][0]
            forced = [join[T[a][x]][T[a][y]]]
        else:
            forced = range(n)
        for v in forced:
            if not fits(a, b, v):
                continue
            T[a][b] = v
            if assoc(a, b):
                yield from fill(k + 1)
            T[a][b] = -1

    yield from fill(0)


# ---------------------------------------------------------------------------
# negations and the involution


def _negation_choices(A, level, constraints, duals):
    """Complete ``A`` (order and product only) to the searched signature."""
    if level == "rl":
        yield A
        return
    try:
        res = residuals(A)
    except NotResiduated:        # pragma: no cover - tables are residuated by construction
        return
    n = A.size
    zeros = [A.one] if "odd" in constraints else range(n)
    for z in zeros:
        tilde = tuple(res.under[a][z] for a in range(n))
        minus = tuple(res.over[z][a] for a in range(n))
        if any(minus[tilde[a]] != a or tilde[minus[a]] != a for a in range(n)):
            continue
        if "cyclic" in constraints and tilde != minus:
            continue
        B = A.replace(zero=z, tilde=tilde, minus=minus)
        if level == "infl":
            yield B
            continue
        for d in duals:
            if any(d[d[a]] != a for a in range(n)):
                continue
            if any(d[tilde[a]] != minus[d[a]] for a in range(n)):
                continue
            yield B.replace(neg=d)


def model_report(A):
    rep = check_axioms(A)
    out = {k: v.holds for k, v in rep.verdicts.items()}
    out["RL"] = out["lattice"] and out["monoid"] and out["residuated"]
    leq = A.leq
    out["chain"] = all(leq[a][b] or leq[b][a] for a in range(A.size) for b in range(A.size))
    out["totally_irreducible_one"] = bool(is_totally_irreducible(A, A.one))
    return out


def _satisfies(report, constraints):
    return all(report.get(c, False) for c in constraints)


def _search_lattice(args):
    """All canonical models over one lattice, as (canonical bytes, algebra, report)."""
    L, spec = args
    c = spec.constraints
    level = spec.level
    duals = L.dual_automorphisms() if level == "qra" else None
    seen = {}
    for e in range(L.n):
        if not _identity_ok(L, e, c):
            continue
        for T in _products(L, e, c):
            base = make_algebra(L.leq, T, e)
            for A in _negation_choices(base, level, c, duals):
                key = canonical_form(A)
                if key in seen:
                    continue
                rep = model_report(A)
                if _satisfies(rep, c):
                    seen[key] = (canonical_algebra(A), rep)
    return sorted((k, A, r) for k, (A, r) in seen.items())


def enumerate_models(spec, max_n=None):
    """Exhaustive search for models of the requested size and constraints.

    Results are pairwise non-isomorphic and sorted by canonical form, so the
    output does not depend on the number of workers.
    """
    limit_n = max_size() if max_n is None else max_n
    if spec.size > limit_n:
        raise BudgetExceeded(f"size {spec.size} exceeds the search budget of {limit_n}",
                             witness=(spec.size,))
    start = time.perf_counter()
    c = spec.constraints
    lattices = enumerate_lattices(spec.size)
    if c & {"DqRA"}:
        lattices = [L for L in lattices if L.distributive()]
    if "chain" in c:
        lattices = [L for L in lattices if L.is_chain()]
    jobs = [(L, spec) for L in lattices]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            parts = list(pool.map(_search_lattice, jobs))
    else:
        parts = [_search_lattice(j) for j in jobs]
    merged = {}
    for part in parts:
        for key, A, rep in part:
            merged.setdefault(key, (A, rep))
    keys = sorted(merged)
    out = ModelSet(spec)
    if spec.limit is not None and len(keys) > spec.limit:
        keys = keys[:spec.limit]
        out.exhaustive = False
    out.models = [merged[k][0] for k in keys]
    out.reports = [merged[k][1] for k in keys]
    out.seconds = time.perf_counter() - start
    return out


def model_record(A, report):
    d = algebra_to_dict(A)
    d["report"] = report
    return d


def is_chain(A):
    leq = np.asarray(A.leq, dtype=bool)
    return bool((leq | leq.T).all())
