"""Algebras of up-sets of a partially ordered equivalence relation.

A context is a poset ``(X, ≤)`` with an equivalence ``E ⊇ ≤``, an order
automorphism ``alpha`` and a self-inverse dual order automorphism ``beta``,
both inside ``E`` and with ``beta = alpha;beta;alpha``.  The up-sets of
``(E, ≼)`` then carry intersection, union, composition, three negation-like
operations and the constants ``≤`` and ``alpha;(≤^c)⌣``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .algebra import Verdict, make_algebra
from .errors import (
    AlphaNotAutomorphism,
    BetaAlphaMismatch,
    BetaNotDualAutomorphism,
    BetaNotSelfInverse,
    BudgetExceeded,
    InputError,
    MapNotInE,
    NotAnEquivalence,
    NotAnUpset,
    OrderNotInE,
    PoolUnavailable,
    TooManyUpsets,
)
from .relcalc import (
    BinRel,
    PointSet,
    check_partial_order,
    complement_in,
    compose,
    compose_all,
    converse,
    equivalence_blocks,
    is_upset,
    upset_violation,
)

UPSET_CAP = 1 << 20


@dataclass(frozen=True)
class RepContext:
    points: PointSet
    E: BinRel
    alpha: tuple
    beta: tuple
    names: Optional[tuple] = None

    @property
    def n(self):
        return self.points.size

    @property
    def leq(self):
        return self.points.leq

    @cached_property
    def alpha_rel(self):
        return BinRel.graph(self.alpha)

    @cached_property
    def beta_rel(self):
        return BinRel.graph(self.beta)

    def label(self, x):
        return self.names[x] if self.names else str(x)

    def to_dict(self):
        d = {
            "points": self.n,
            "leq": [[int(b) for b in row] for row in self.leq.matrix()],
            "equiv": [[int(b) for b in row] for row in self.E.matrix()],
            "alpha": list(self.alpha),
            "beta": list(self.beta),
        }
        if self.names:
            d["names"] = list(self.names)
        return d


def _is_bijection(f, n):
    return len(f) == n and sorted(f) == list(range(n))


def make_context(leq, E, alpha, beta, names=None):
    """Validate the hypotheses on a context and return it.

    ``leq`` and ``E`` may be boolean matrices or :class:`BinRel` values;
    ``alpha`` and ``beta`` are maps given as sequences.
    """
    leq = leq if isinstance(leq, BinRel) else BinRel.from_matrix(leq)
    E = E if isinstance(E, BinRel) else BinRel.from_matrix(E)
    n = leq.n
    if E.n != n:
        raise InputError("order and equivalence have different point counts")
    check_partial_order(leq)
    for x in range(n):
        if (x, x) not in E:
            raise NotAnEquivalence("E is not reflexive", witness=(x, x))
    for x, y in E.pairs():
        if (y, x) not in E:
            raise NotAnEquivalence("E is not symmetric", witness=(x, y))
    EE = compose(E, E)
    if not EE <= E:
        raise NotAnEquivalence("E is not transitive", witness=(EE - E).pairs()[0])
    if not leq <= E:
        raise OrderNotInE("order is not contained in E", witness=(leq - E).pairs()[0])
    alpha = tuple(int(a) for a in alpha)
    beta = tuple(int(b) for b in beta)
    if not _is_bijection(alpha, n):
        raise AlphaNotAutomorphism("alpha is not a bijection")
    for x in range(n):
        for y in range(n):
            if ((x, y) in leq) != ((alpha[x], alpha[y]) in leq):
                raise AlphaNotAutomorphism("alpha does not preserve and reflect the order",
                                           witness=(x, y))
    if not _is_bijection(beta, n):
        raise BetaNotDualAutomorphism("beta is not a bijection")
    for x in range(n):
        for y in range(n):
            if ((x, y) in leq) != ((beta[y], beta[x]) in leq):
                raise BetaNotDualAutomorphism("beta does not reverse the order", witness=(x, y))
    for x in range(n):
        if beta[beta[x]] != x:
            raise BetaNotSelfInverse("beta is not an involution", witness=(x,))
    for f, what in ((alpha, "alpha"), (beta, "beta")):
        for x in range(n):
            if (x, f[x]) not in E:
                raise MapNotInE(f"{what} leaves its E-block", witness=(x, f[x]))
    for x in range(n):
        if alpha[beta[alpha[x]]] != beta[x]:
            raise BetaAlphaMismatch("beta differs from alpha;beta;alpha", witness=(x,))
    if names is not None:
        if len(names) != n:
            raise InputError("names must list every point")
        names = tuple(str(s) for s in names)
    return RepContext(PointSet(n, leq), E, alpha, beta, names)


def validate_context(raw):
    """Context from its JSON record (or an existing context, re-validated)."""
    if isinstance(raw, RepContext):
        return make_context(raw.leq, raw.E, raw.alpha, raw.beta, raw.names)
    for key in ("points", "leq", "equiv", "alpha", "beta"):
        if key not in raw:
            raise InputError(f"missing key {key!r}")
    n = int(raw["points"])
    if len(raw["leq"]) != n or len(raw["equiv"]) != n:
        raise InputError("matrix sizes do not match the point count")
    return make_context(raw["leq"], raw["equiv"], raw["alpha"], raw["beta"], raw.get("names"))


def load_context(path):
    with open(path) as fh:
        return validate_context(json.load(fh))


def save_context(ctx, path):
    with open(path, "w") as fh:
        json.dump(ctx.to_dict(), fh)
        fh.write("\n")


# ---------------------------------------------------------------------------
# operations on up-sets


def _require_upset(ctx, R):
    if R.n != ctx.n:
        raise InputError("relation lives on a different point set")
    if not R <= ctx.E:
        raise NotAnUpset("relation is not contained in E", witness=(R - ctx.E).pairs()[0])
    bad = upset_violation(ctx.leq, ctx.E, R)
    if bad is not None:
        raise NotAnUpset("relation is not upward closed", witness=bad)


def dq_constants(ctx):
    """The identity ``≤`` and the constant ``alpha;(≤^c)⌣``."""
    one = ctx.leq
    zero = compose(ctx.alpha_rel, converse(complement_in(one, ctx.E)))
    return one, zero


def _tilde(ctx, R):
    return compose(converse(complement_in(R, ctx.E)), ctx.alpha_rel)


def _minus(ctx, R):
    return compose(ctx.alpha_rel, converse(complement_in(R, ctx.E)))


def _neg(ctx, R):
    return compose_all(ctx.alpha_rel, ctx.beta_rel, complement_in(R, ctx.E), ctx.beta_rel)


def dq_unary(ctx, R):
    """``(~R, -R, ¬R)`` for an up-set ``R``."""
    _require_upset(ctx, R)
    return _tilde(ctx, R), _minus(ctx, R), _neg(ctx, R)


def dq_residuals(ctx, R, S):
    """``(R\\S, R/S)`` computed as ``(R⌣;S^c)^c`` and ``(R^c;S⌣)^c``."""
    _require_upset(ctx, R)
    _require_upset(ctx, S)
    E = ctx.E
    under = complement_in(compose(converse(R), complement_in(S, E)), E)
    over = complement_in(compose(complement_in(R, E), converse(S)), E)
    return under, over


# ---------------------------------------------------------------------------
# enumeration and generation


def enumerate_upsets(ctx, cap=UPSET_CAP):
    """Every up-set of ``(E, ≼)``, sorted by size and then bit pattern.

    Pairs of ``E`` are decided from the top of ``≼`` downwards; a pair may be
    included only when every pair above it already is, so each branch yields
    a distinct up-set.  More than ``cap`` results raise :class:`TooManyUpsets`.
    """
    pairs = ctx.E.pairs()
    index = {p: i for i, p in enumerate(pairs)}
    leq = ctx.leq
    above = []
    for (u, v) in pairs:
        mask = 0
        for (x, y) in pairs:
            if (x, y) != (u, v) and (x, u) in leq and (v, y) in leq:
                mask |= 1 << index[(x, y)]
        above.append(mask)
    order = sorted(range(len(pairs)), key=lambda i: bin(above[i]).count("1"))
    masks = [0]
    for i in order:
        bit = 1 << i
        need = above[i]
        grown = [m | bit for m in masks if (m & need) == need]
        masks.extend(grown)
        if len(masks) > cap:
            raise TooManyUpsets(f"more than {cap} up-sets", witness=(len(masks),))
    out = []
    n = ctx.n
    for m in masks:
        rows = [0] * n
        for i in range(len(pairs)):
            if m >> i & 1:
                x, y = pairs[i]
                rows[x] |= 1 << y
        out.append(BinRel(n, tuple(rows)))
    out.sort(key=BinRel.sort_key)
    return out


def generate_subalgebra(ctx, generators=(), cap=1 << 16):
    """Least set of up-sets containing the generators, ``∅``, ``E``, ``≤`` and
    the zero constant, closed under ``∩``, ``∪``, ``;``, ``~``, ``-`` and ``¬``."""
    for g in generators:
        _require_upset(ctx, g)
    one, zero = dq_constants(ctx)
    seen = []
    known = set()

    def add(R):
        if R not in known:
            known.add(R)
            seen.append(R)
            if len(seen) > cap:
                raise BudgetExceeded(f"closure exceeds {cap} elements")

    for R in [BinRel.empty(ctx.n), ctx.E, one, zero, *generators]:
        add(R)
    done = 0
    while done < len(seen):
        R = seen[done]
        for f in (_tilde, _minus, _neg):
            add(f(ctx, R))
        for S in seen[:done + 1]:
            add(R & S)
            add(R | S)
            add(compose(R, S))
            add(compose(S, R))
        done += 1
    return sorted(seen, key=BinRel.sort_key)


@dataclass(frozen=True)
class DqAlgebra:
    algebra: object
    elements: tuple      # element i of the algebra is the relation elements[i]

    def index(self, R):
        return self.elements.index(R)


def dq_algebra(ctx, elements=None):
    """The algebra on a set of up-sets closed under the operations.

    Without ``elements`` the full set of up-sets is used.
    """
    if elements is None:
        elements = enumerate_upsets(ctx)
    elements = tuple(sorted(set(elements), key=BinRel.sort_key))
    pos = {R: i for i, R in enumerate(elements)}
    n = len(elements)

    def at(R):
        if R not in pos:
            raise InputError("element set is not closed under the operations")
        return pos[R]

    one, zero = dq_constants(ctx)
    leq = [[R <= S for S in elements] for R in elements]
    mult = [[at(compose(R, S)) for S in elements] for R in elements]
    tilde = [at(_tilde(ctx, R)) for R in elements]
    minus = [at(_minus(ctx, R)) for R in elements]
    neg = [at(_neg(ctx, R)) for R in elements]
    A = make_algebra(leq, mult, at(one), at(zero), tilde, minus, neg)
    return DqAlgebra(A, elements)


# ---------------------------------------------------------------------------
# embeddings


@dataclass
class RelEmbedding:
    source: object
    context: RepContext
    images: tuple
    report: dict

    @property
    def ok(self):
        return all(v.holds for v in self.report.values())

    def failed(self):
        return [k for k, v in self.report.items() if not v.holds]

    def to_dict(self):
        A = self.source
        return {
            "images": [{"element": A.label(i), "pairs": [list(p) for p in R.pairs()]}
                       for i, R in enumerate(self.images)],
            "report": {k: ({"holds": True} if v.holds else
                           {"holds": False, "witness": list(v.witness or ()), "note": v.note})
                       for k, v in self.report.items()},
        }


def images_from_record(record, n):
    """Images from an embedding record (``{"images": [{"pairs": ...}]}``) or
    a plain list of pair lists, as relations on ``n`` points."""
    items = record["images"] if isinstance(record, dict) else record
    if not isinstance(items, list):
        raise InputError("images must be a list")
    out = []
    for item in items:
        pairs = item["pairs"] if isinstance(item, dict) else item
        out.append(BinRel.from_pairs(n, [tuple(p) for p in pairs]))
    return out


def load_images(path, n):
    with open(path) as fh:
        return images_from_record(json.load(fh), n)


def verify_embedding(A, ctx, images):
    """Check that ``images`` defines an injective homomorphism of ``A`` into
    the up-set algebra of ``ctx``; one verdict per law."""
    images = tuple(images)
    rep = {}
    n = A.size
    if len(images) != n:
        rep["shape"] = Verdict(False, (), f"expected {n} images, got {len(images)}")
        return RelEmbedding(A, ctx, images, rep)
    bad = None
    for i, R in enumerate(images):
        if R.n != ctx.n or not R <= ctx.E or upset_violation(ctx.leq, ctx.E, R) is not None:
            bad = (i,)
            break
    rep["upsets"] = Verdict(bad is None, bad, "" if bad is None else "image is not an up-set")
    if bad is not None:
        return RelEmbedding(A, ctx, images, rep)
    first = {}
    bad = None
    for i, R in enumerate(images):
        if R in first:
            bad = (first[R], i)
            break
        first[R] = i
    rep["injective"] = Verdict(bad is None, bad)

    def binary(name, table, op):
        w = next(((a, b) for a in range(n) for b in range(n)
                  if images[table[a][b]] != op(images[a], images[b])), None)
        rep[name] = Verdict(w is None, w)

    binary("meet", A.meet, lambda R, S: R & S)
    binary("join", A.join, lambda R, S: R | S)
    binary("mult", A.mult, compose)
    for name, op in (("tilde", _tilde), ("minus", _minus), ("neg", _neg)):
        table = getattr(A, name)
        if table is None:
            rep[name] = Verdict(False, (), "operation absent from the source")
            continue
        w = next(((a,) for a in range(n) if images[table[a]] != op(ctx, images[a])), None)
        rep[name] = Verdict(w is None, w)
    one, zero = dq_constants(ctx)
    rep["one"] = Verdict(images[A.one] == one, None if images[A.one] == one else (A.one,))
    if A.zero is None:
        rep["zero"] = Verdict(False, (), "source has no zero")
    else:
        rep["zero"] = Verdict(images[A.zero] == zero, None if images[A.zero] == zero else (A.zero,))
    return RelEmbedding(A, ctx, images, rep)


def _assignment_order(A):
    """Join-irreducible elements first (by index), then the rest."""
    lower_covers = {x: [y for y in range(A.size) if A.lt(y, x) and not any(
        A.lt(y, z) and A.lt(z, x) for z in range(A.size))] for x in range(A.size)}
    ji = [x for x in range(A.size) if len(lower_covers[x]) == 1]
    return ji + [x for x in range(A.size) if x not in ji]


def find_embedding(A, ctx, pool=None, cap=UPSET_CAP):
    """First embedding of ``A`` into the up-set algebra of ``ctx`` in a fixed
    candidate order, or None.

    Candidates come from ``pool`` when given, otherwise from the full list of
    up-sets.  A None answer over a partial pool only means that no embedding
    uses those relations.
    """
    if pool is None:
        try:
            pool = enumerate_upsets(ctx, cap)
        except TooManyUpsets as exc:
            raise PoolUnavailable("up-set enumeration exceeds the budget; supply a pool",
                                  witness=exc.witness) from exc
    pool = sorted(set(pool), key=BinRel.sort_key)
    pool_set = set(pool)
    n = A.size
    one, zero = dq_constants(ctx)
    if A.tilde is None or A.minus is None or A.neg is None or A.zero is None:
        raise InputError("source must carry all three unary operations and zero")

    cache = {}

    def img_op(name, R, S=None):
        key = (name, R, S)
        if key not in cache:
            if name == "meet":
                cache[key] = R & S
            elif name == "join":
                cache[key] = R | S
            elif name == "mult":
                cache[key] = compose(R, S)
            elif name == "tilde":
                cache[key] = _tilde(ctx, R)
            elif name == "minus":
                cache[key] = _minus(ctx, R)
            else:
                cache[key] = _neg(ctx, R)
        return cache[key]

    binary = (("meet", A.meet), ("join", A.join), ("mult", A.mult))
    unary = (("tilde", A.tilde), ("minus", A.minus), ("neg", A.neg))

    def order_ok(f, x):
        R = f[x]
        for y, S in f.items():
            if (A.leq[x][y] != (R <= S)) or (A.leq[y][x] != (S <= R)):
                return False
        return True

    def assign(f, used, x, R):
        if x in f:
            return f[x] == R
        if R in used or R not in pool_set:
            return False
        f[x] = R
        used.add(R)
        return order_ok(f, x)

    def propagate(f, used):
        changed = True
        while changed:
            changed = False
            keys = sorted(f)
            for name, table in unary:
                for x in keys:
                    r = table[x]
                    had = r in f
                    if not assign(f, used, r, img_op(name, f[x])):
                        return False
                    changed |= not had
            for name, table in binary:
                for x in keys:
                    for y in keys:
                        r = table[x][y]
                        had = r in f
                        if not assign(f, used, r, img_op(name, f[x], f[y])):
                            return False
                        changed |= not had
        return True

    f, used = {}, set()
    if not (assign(f, used, A.one, one) and assign(f, used, A.zero, zero)
            and propagate(f, used)):
        return None
    order = _assignment_order(A)

    def search(f, used):
        todo = [x for x in order if x not in f]
        if not todo:
            return f
        x = todo[0]
        for R in pool:
            if R in used:
                continue
            g, u = dict(f), set(used)
            if assign(g, u, x, R) and propagate(g, u):
                found = search(g, u)
                if found is not None:
                    return found
        return None

    found = search(f, used)
    if found is None:
        return None
    emb = verify_embedding(A, ctx, [found[x] for x in range(n)])
    return emb if emb.ok else None


def algebra_closure_checks(ctx):
    """Identities ``g;E = E;g = E`` and ``g;∅ = ∅`` for ``g`` in ``{alpha, beta}``."""
    empty = BinRel.empty(ctx.n)
    out = {}
    for name, g in (("alpha", ctx.alpha_rel), ("beta", ctx.beta_rel)):
        out[name] = (compose(g, ctx.E) == ctx.E and compose(ctx.E, g) == ctx.E
                     and compose(g, empty) == empty)
    return out


# ---------------------------------------------------------------------------
# export


def _q(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def context_dot(ctx, title=None):
    """Graphviz picture of a context: Hasse diagram of the points, alpha as
    dashed arrows, beta as dotted arrows and one bold cluster per E-block."""
    leq = ctx.leq
    lines = ["digraph context {", "  rankdir=BT;", "  compound=true;",
             "  node [shape=circle, width=0.15, fixedsize=true, label=\"\"];"]
    if title:
        lines.append(f"  label={_q(title)};")
    for b, block in enumerate(equivalence_blocks(ctx.E)):
        lines.append(f"  subgraph cluster_{b} {{")
        lines.append("    style=\"rounded,bold\";")
        for x in block:
            lines.append(f"    p{x} [xlabel={_q(ctx.label(x))}];")
        lines.append("  }")
    for x, y in leq.pairs():
        if x != y and not any(z not in (x, y) and (x, z) in leq and (z, y) in leq
                              for z in range(ctx.n)):
            lines.append(f"  p{x} -> p{y} [arrowhead=none];")
    for x in range(ctx.n):
        lines.append(f"  p{x} -> p{ctx.alpha[x]} [style=dashed, constraint=false];")
    for x in range(ctx.n):
        lines.append(f"  p{x} -> p{ctx.beta[x]} [style=dotted, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def relation_lattice_dot(ctx, elements, labels=None, title=None):
    """Hasse diagram of a family of relations ordered by inclusion."""
    lines = ["digraph relations {", "  rankdir=BT;", "  edge [arrowhead=none];",
             "  node [shape=box, fontsize=10];"]
    if title:
        lines.append(f"  label={_q(title)};")
    for i, R in enumerate(elements):
        text = labels[i] if labels else "{" + ", ".join(
            f"({ctx.label(x)},{ctx.label(y)})" for x, y in R.pairs()) + "}"
        lines.append(f"  r{i} [label={_q(text)}];")
    for i, R in enumerate(elements):
        for j, S in enumerate(elements):
            if R < S and not any(R < T < S for T in elements):
                lines.append(f"  r{i} -> r{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "RepContext", "make_context", "validate_context", "load_context", "save_context",
    "dq_constants", "dq_unary", "dq_residuals", "enumerate_upsets", "generate_subalgebra",
    "DqAlgebra", "dq_algebra", "RelEmbedding", "verify_embedding", "find_embedding",
    "images_from_record", "load_images",
    "algebra_closure_checks", "context_dot", "relation_lattice_dot", "is_upset",
]
