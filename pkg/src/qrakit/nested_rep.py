"""Representations of ``S3[L]`` built from a representation of ``L``.

Each ``E``-block of the context of ``L`` receives two fresh points above it
and two below it.  The fresh pairs stand for the two points of the context
of ``S3`` (a two-point antichain whose automorphism swaps the points).
"""

from dataclasses import dataclass

from . import fixtures
from .algebra import check_map
from .errors import EmbeddingInvalid, EvenOuterChain, SizeTooSmall
from .nested import nested_sum
from .relcalc import BinRel, equivalence_blocks
from .representation import make_context, verify_embedding
from .sugihara import collapse_iso, sugihara_chain

LAYERS = ("lower", "upper")

# layer sizes, bottom to top, of the posets representing S_4 .. S_7
SUGIHARA_LADDERS = {4: (2, 1, 2), 5: (2, 2, 2), 6: (2, 2, 1, 2, 2), 7: (2, 2, 2, 2, 2)}
TAGS = ("x", "y")


@dataclass(frozen=True)
class NestedContext:
    ctx: object             # the new context
    base: object            # the context of L
    blocks: tuple           # E-blocks of the base, by least point
    block_index: tuple      # point -> (block id, layer, tag); layer "core" for old points
    l_points: tuple         # old point -> new point (always the identity prefix)

    def point(self, block_id, layer, tag):
        return self.block_index.index((block_id, layer, tag))


def build_nested_context(ctxL):
    """Context for ``S3[L]`` from a context of ``L``.

    Old points keep their indices.  Per block, in block order, the new points
    are the lower ``x``, lower ``y``, upper ``x`` and upper ``y`` copies.
    """
    m = ctxL.n
    blocks = tuple(equivalence_blocks(ctxL.E))
    index = []
    for z in range(m):
        block = next(b for b in blocks if z in b)
        index.append((block[0], "core", None))
    for block in blocks:
        for layer in LAYERS:
            for tag in TAGS:
                index.append((block[0], layer, tag))
    n = len(index)
    pos = {key: i for i, key in enumerate(index) if key[1] != "core"}

    pairs = set((x, x) for x in range(n))
    pairs.update(ctxL.leq.pairs())
    equiv = set()
    for block in blocks:
        b = block[0]
        low = [pos[(b, "lower", t)] for t in TAGS]
        up = [pos[(b, "upper", t)] for t in TAGS]
        pairs.update((z, u) for z in block for u in up)
        pairs.update((l, z) for l in low for z in block)
        pairs.update((l, u) for l in low for u in up)
        members = list(block) + low + up
        equiv.update((p, q) for p in members for q in members)

    alpha, beta = [0] * n, [0] * n
    for i, (b, layer, tag) in enumerate(index):
        if layer == "core":
            alpha[i], beta[i] = ctxL.alpha[i], ctxL.beta[i]
        else:
            other_tag = "y" if tag == "x" else "x"
            other_layer = "upper" if layer == "lower" else "lower"
            alpha[i] = pos[(b, layer, other_tag)]
            beta[i] = pos[(b, other_layer, tag)]

    names = []
    for i, (b, layer, tag) in enumerate(index):
        if layer == "core":
            names.append(ctxL.label(i))
        else:
            mark = "_" if layer == "lower" else "^"
            names.append(f"{tag}{mark}[{ctxL.label(b)}]")
    ctx = make_context(BinRel.from_pairs(n, pairs), BinRel.from_pairs(n, equiv),
                       alpha, beta, names)
    return NestedContext(ctx, ctxL, blocks, tuple(index), tuple(range(m)))


def lift(R, n):
    """A relation on the first ``R.n`` points viewed on ``n`` points."""
    return BinRel(n, tuple(R.rows) + (0,) * (n - R.n))


@dataclass
class PsiMap:
    nested: object          # the NestedSum S3[L]
    images: tuple           # per element of the nested sum
    r_relation: BinRel      # new order minus the old one
    embedding: object       # verification report

    @property
    def ok(self):
        return self.embedding.ok


def build_psi(nctx, L, phiL):
    """Images of ``S3[L]``: ``∅`` and ``E`` for the outer elements and
    ``R ∪ φ_L(m)`` for ``m`` in ``L``, where ``R`` is the new order minus the
    old order.  ``phiL`` is a list of images or a verified embedding of ``L``."""
    images_l = tuple(getattr(phiL, "images", phiL))
    check = verify_embedding(L, nctx.base, images_l)
    if not check.ok:
        raise EmbeddingInvalid(f"representation of L fails: {check.failed()}")
    ctx = nctx.ctx
    n = ctx.n
    K = sugihara_chain(3)
    S = nested_sum(K.algebra, L)
    R = ctx.leq - lift(nctx.base.leq, n)
    images = [None] * S.algebra.size
    images[S.from_k[K.index(-1)]] = BinRel.empty(n)
    images[S.from_k[K.index(1)]] = ctx.E
    for l, new in enumerate(S.from_l):
        images[new] = R | lift(images_l[l], n)
    images = tuple(images)
    return PsiMap(S, images, R, verify_embedding(S.algebra, ctx, images))


@dataclass
class Representation:
    algebra: object
    context: object
    embedding: object

    @property
    def ok(self):
        return self.embedding.ok


def sugihara_representation(n):
    """Finite representation of the Sugihara chain of size ``n``.

    Sizes 2 and 3 use the one-point and two-point base contexts; larger sizes
    represent ``S3[S_{n-2}]`` and transport the images along the isomorphism
    onto ``S_n``.
    """
    if n < 2:
        raise SizeTooSmall(f"Sugihara chains need at least 2 elements, got {n}")
    A = sugihara_chain(n).algebra
    if n == 2:
        ctx, images = fixtures.context_s2(), fixtures.images_s2()
        return Representation(A, ctx, verify_embedding(A, ctx, images))
    if n == 3:
        ctx, images = fixtures.context_s3(), fixtures.images_s3()
        return Representation(A, ctx, verify_embedding(A, ctx, images))
    inner = sugihara_representation(n - 2)
    nctx = build_nested_context(inner.context)
    psi = build_psi(nctx, inner.algebra, inner.embedding)
    iso = collapse_iso(3, n - 2)
    if not iso.ok:
        raise AssertionError("index shift is not an isomorphism")
    images = [None] * n
    for i, R in enumerate(psi.images):
        images[iso.mapping[i]] = R
    return Representation(A, nctx.ctx, verify_embedding(A, nctx.ctx, images))


def sn_nested_representation(n, L, ctxL, phiL):
    """Representation of ``S_n[L]`` for odd ``n`` by wrapping ``L`` in ``S3``
    ``(n - 1) / 2`` times and relabelling the result onto ``S_n[L]``."""
    if n % 2 == 0:
        raise EvenOuterChain(f"outer chain must have odd size, got {n}")
    if n < 3:
        raise SizeTooSmall("outer chain must have at least 3 elements")
    images_l = tuple(getattr(phiL, "images", phiL))
    check = verify_embedding(L, ctxL, images_l)
    if not check.ok:
        raise EmbeddingInvalid(f"representation of L fails: {check.failed()}")
    S3 = sugihara_chain(3)
    alg, ctx, images = L, ctxL, images_l
    # origin of each element of the current algebra: ("L", l) or ("K", level label)
    origin = [("L", l) for l in range(L.size)]
    for depth in range(1, (n - 1) // 2 + 1):
        nctx = build_nested_context(ctx)
        psi = build_psi(nctx, alg, images)
        S = psi.nested
        new_origin = [None] * S.algebra.size
        for k, new in S.from_k.items():
            new_origin[new] = ("K", depth * S3.labels[k])
        for old, new in enumerate(S.from_l):
            new_origin[new] = origin[old]
        alg, ctx, images, origin = S.algebra, nctx.ctx, psi.images, new_origin

    Sn = sugihara_chain(n)
    target = nested_sum(Sn.algebra, L)
    f = []
    for kind, value in origin:
        if kind == "L":
            f.append(target.from_l[value])
        else:
            f.append(target.from_k[Sn.index(value)])
    iso = check_map(alg, target.algebra, f)
    if not iso.ok:
        raise AssertionError("iterated nested sum does not match S_n[L]")
    out = [None] * len(f)
    for i, R in enumerate(images):
        out[f[i]] = R
    return Representation(target.algebra, ctx,
                          verify_embedding(target.algebra, ctx, out))


def layer_profile(leq):
    """Layer sizes, bottom to top, when the order is a stack of antichains
    with every element of a layer below every element of the layers above;
    None for any other order."""
    n = leq.n
    height = [0] * n
    for x in sorted(range(n), key=lambda x: len(converse_row(leq, x))):
        below = [y for y in converse_row(leq, x) if y != x]
        height[x] = 1 + max((height[y] for y in below), default=-1)
    for x in range(n):
        for y in range(n):
            if ((x, y) in leq) != (x == y or height[x] < height[y]):
                return None
    sizes = [0] * (max(height) + 1 if n else 0)
    for h in height:
        sizes[h] += 1
    return tuple(sizes)


def converse_row(leq, x):
    return [y for y in range(leq.n) if (y, x) in leq]
