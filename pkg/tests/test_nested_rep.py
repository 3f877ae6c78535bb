import pytest

from qrakit import fixtures
from qrakit.errors import EmbeddingInvalid, EvenOuterChain, SizeTooSmall
from qrakit.nested_rep import (
    SUGIHARA_LADDERS,
    build_nested_context,
    build_psi,
    layer_profile,
    lift,
    sn_nested_representation,
    sugihara_representation,
)
from qrakit.relcalc import BinRel
from qrakit.sugihara import sugihara_chain


def test_one_point_base_layout():
    nctx = build_nested_context(fixtures.context_s2())
    ctx = nctx.ctx
    assert ctx.names == ("u", "x_[u]", "y_[u]", "x^[u]", "y^[u]")
    u, xl, yl, xu, yu = range(5)
    expected = {(p, p) for p in range(5)}
    expected |= {(l, u) for l in (xl, yl)} | {(u, h) for h in (xu, yu)}
    expected |= {(l, h) for l in (xl, yl) for h in (xu, yu)}
    assert set(ctx.leq.pairs()) == expected
    assert ctx.E == BinRel.full(5)
    assert ctx.alpha == (u, yl, xl, yu, xu)
    assert ctx.beta == (u, xu, yu, xl, yl)
    assert nctx.point(0, "upper", "y") == yu


def test_two_point_base_layout():
    nctx = build_nested_context(fixtures.context_s3())
    ctx = nctx.ctx
    assert ctx.n == 6
    assert ctx.alpha[:2] == (1, 0) and ctx.beta[:2] == (0, 1)
    assert layer_profile(ctx.leq) == (2, 2, 2)


def test_discrete_base_gets_one_block_per_point():
    nctx = build_nested_context(fixtures.context_l1())
    assert nctx.ctx.n == 10 and len(nctx.blocks) == 2
    assert nctx.ctx.E.pairs() and (0, 1) not in nctx.ctx.E


def test_lift_pads_rows():
    R = BinRel.from_pairs(2, [(0, 1)])
    assert lift(R, 4).pairs() == [(0, 1)] and lift(R, 4).n == 4


def test_psi_rejects_bad_base_images():
    nctx = build_nested_context(fixtures.context_s3())
    bad = fixtures.images_s3()
    bad[0], bad[1] = bad[1], bad[0]
    with pytest.raises(EmbeddingInvalid):
        build_psi(nctx, sugihara_chain(3).algebra, bad)


@pytest.mark.parametrize("n,points", [(2, 1), (3, 2), (4, 5), (5, 6), (6, 9), (7, 10)])
def test_sugihara_representation_sizes(n, points):
    rep = sugihara_representation(n)
    assert rep.ok and rep.context.n == points


@pytest.mark.parametrize("n", sorted(SUGIHARA_LADDERS))
def test_ladder_shapes(n):
    assert layer_profile(sugihara_representation(n).context.leq) == SUGIHARA_LADDERS[n]


def test_layer_profile_rejects_non_ladders():
    zigzag = BinRel.from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1)])
    assert layer_profile(zigzag) is None


def test_sugihara_representation_too_small():
    with pytest.raises(SizeTooSmall):
        sugihara_representation(1)


def test_nested_representation_of_diamond():
    rep = sn_nested_representation(3, fixtures.diamond_l1(), fixtures.context_l1(),
                                   fixtures.images_l1())
    assert rep.ok and rep.algebra.size == 6 and rep.context.n == 10


def test_nested_representation_errors():
    args = (fixtures.diamond_l1(), fixtures.context_l1(), fixtures.images_l1())
    with pytest.raises(EvenOuterChain):
        sn_nested_representation(4, *args)
    with pytest.raises(SizeTooSmall):
        sn_nested_representation(1, *args)
