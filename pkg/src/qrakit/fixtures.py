"""Small named algebras and contexts used throughout tests and the CLI."""

from .algebra import leq_from_covers, make_algebra, validate_algebra, with_negations
from .relcalc import BinRel
from .representation import make_context


def diamond_l1():
    """Four-element Boolean lattice with product = meet and complement as all negations."""
    names = ["0", "a", "b", "1"]
    leq = leq_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    mult = [[min(x, y) if x in (0, 3) or y in (0, 3) else (x if x == y else 0)
             for y in range(4)] for x in range(4)]
    comp = [3, 2, 1, 0]
    return validate_algebra(make_algebra(leq, mult, 3, 0, comp, comp, comp, names))


def diamond_k2():
    """Odd diamond: ``a`` and ``1 = 0`` are incomparable atoms, ``a*a = ⊥``."""
    names = ["⊥", "a", "1", "⊤"]
    B, a, one, T = range(4)
    leq = leq_from_covers(4, [(B, a), (B, one), (a, T), (one, T)])
    mult = [[B] * 4 for _ in range(4)]
    for x in range(4):
        mult[one][x] = mult[x][one] = x
    mult[B][one] = mult[one][B] = B
    mult[a][T] = mult[T][a] = a
    mult[T][T] = T
    A = validate_algebra(make_algebra(leq, mult, one, names=names))
    A = with_negations(A, zero=one)
    return A.replace(neg=A.tilde)


def five_element_n5():
    """Five-element non-distributive algebra: chain ⊥ < 0 < 1 < ⊤ with ``a`` beside it.

    Entries not displayed with the original tables are completed by ``⊥``
    absorbing and by join preservation of the product.
    """
    names = ["⊥", "0", "a", "1", "⊤"]
    B, z, a, one, T = range(5)
    leq = leq_from_covers(5, [(B, z), (z, one), (one, T), (B, a), (a, T)])
    table = {
        (z, z): z, (z, a): a, (a, z): a, (a, a): B,
        (T, z): T, (z, T): T, (T, a): a, (a, T): a, (T, T): T,
    }
    mult = [[B] * 5 for _ in range(5)]
    for x in range(5):
        mult[one][x] = mult[x][one] = x
    for (x, y), v in table.items():
        mult[x][y] = v
    mult[B][one] = mult[one][B] = B
    A = validate_algebra(make_algebra(leq, mult, one, names=names))
    A = with_negations(A, zero=z)
    return A.replace(neg=A.tilde)


def k1_chain():
    """The three-element Sugihara chain with labels ``⊥ < 1 < ⊤``."""
    from .sugihara import sugihara_chain
    return sugihara_chain(3).algebra.replace(names=("⊥", "1", "⊤"))


def l2_chain():
    """The two-element Sugihara chain with labels ``0 < 1``."""
    from .sugihara import sugihara_chain
    return sugihara_chain(2).algebra.replace(names=("0", "1"))


def k1_l1_sum():
    """Six-element DqRA obtained by inserting :func:`diamond_l1` into :func:`k1_chain`."""
    from .nested import nested_sum
    return nested_sum(k1_chain(), diamond_l1()).algebra


def k2_l2_sum():
    """Five-element qRA obtained by inserting :func:`l2_chain` into :func:`diamond_k2`."""
    from .nested import nested_sum
    return nested_sum(diamond_k2(), l2_chain()).algebra


def trivial_algebra():
    return validate_algebra(make_algebra([[True]], [[0]], 0, 0, [0], [0], [0], ["1"]))


# ---------------------------------------------------------------------------
# contexts


def context_s2():
    """One point, everything the identity."""
    return make_context([[1]], [[1]], [0], [0], names=["u"])


def context_s3():
    """Two-point antichain, ``E`` full, ``alpha`` swapping the points, ``beta`` the identity."""
    return make_context([[1, 0], [0, 1]], [[1, 1], [1, 1]], [1, 0], [0, 1], names=["x", "y"])


def context_l1():
    """Two-point antichain with ``E``, ``alpha`` and ``beta`` all the identity."""
    ident = [[1, 0], [0, 1]]
    return make_context(ident, ident, [0, 1], [0, 1], names=["u", "v"])


def images_s2():
    """Images of the two-element chain (bottom first) in :func:`context_s2`."""
    return [BinRel.empty(1), BinRel.full(1)]


def images_s3():
    """Images of the three-element chain in :func:`context_s3`."""
    return [BinRel.empty(2), BinRel.identity(2), BinRel.full(2)]


def images_l1():
    """Images of ``0, a, b, 1`` of :func:`diamond_l1` in :func:`context_l1`."""
    return [BinRel.empty(2), BinRel.from_pairs(2, [(0, 0)]),
            BinRel.from_pairs(2, [(1, 1)]), BinRel.identity(2)]
