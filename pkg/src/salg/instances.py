"""Standing example algebras used across the verification suites."""

from __future__ import annotations

from .scalars import Q, NumberField, cyclotomic
from .tencat import Obj, line, plain_obj, super_vec, graded_vec, vec
from .algebra import Algebra, from_table, end_algebra, tensor_algebras

QQ = cyclotomic(1)


def quaternions(field: NumberField = QQ) -> Algebra:
    """Hamilton quaternions with basis 1, i, j, k."""
    F = field
    V = vec(F)
    one, i, j, k = 0, 1, 2, 3
    t = {}

    def put(a, b, c, s):
        t[(a, b)] = {c: F(s)}

    put(one, one, one, 1)
    for x in (i, j, k):
        put(one, x, x, 1)
        put(x, one, x, 1)
        put(x, x, one, -1)
    put(i, j, k, 1)
    put(j, i, k, -1)
    put(j, k, i, 1)
    put(k, j, i, -1)
    put(k, i, j, 1)
    put(i, k, j, -1)
    A = from_table(plain_obj(V, 4), t, {one: F.one}, labels=["1", "i", "j", "k"],
                   generators=[i, j], name="H")
    return A


def quaternion_conjugation(field: NumberField = QQ):
    """x -> xbar on the quaternions, as a sparse column map."""
    F = field
    from .linalg import Mor

    return Mor.from_entries(F, 4, 4, [(0, 0, F.one), (1, 1, F(-1)),
                                      (2, 2, F(-1)), (3, 3, F(-1))])


def matrix_algebra(field: NumberField, n: int):
    """M_n over the base field, with its column module."""
    V = plain_obj(vec(field), n)
    return end_algebra(V)


def split_product_algebra(field: NumberField = QQ) -> Algebra:
    """The commutative algebra k x k; a negative control (not Azumaya)."""
    F = field
    V = vec(F)
    t = {(0, 0): {0: F.one}, (1, 1): {1: F.one}}
    return from_table(plain_obj(V, 2), t, {0: F.one, 1: F.one}, name="k x k")


def clifford_super(field: NumberField = QQ) -> Algebra:
    """k[x]/(x^2 = 1) with x odd, inside super vector spaces."""
    F = field
    S = super_vec(F)
    carrier = Obj(S, 2, degrees=((0,), (1,)))
    t = {
        (0, 0): {0: F.one},
        (0, 1): {1: F.one},
        (1, 0): {1: F.one},
        (1, 1): {0: F.one},
    }
    return from_table(carrier, t, {0: F.one}, labels=["1", "x"],
                      generators=[1], name="Cl1")


def clifford_pair(field: NumberField = QQ) -> Algebra:
    """The graded tensor square of the odd Clifford line (rank-2 Clifford)."""
    c = clifford_super(field)
    return tensor_algebras(c, c)


def klein_graded(field: NumberField = QQ) -> Algebra:
    """k[x,y]/(x^2=y^2=1), x in degree (1,0), y in degree (0,1), with the
    total-degree super sign rule on Z/2 x Z/2.

    Graded-polynomial convention: x and y are both odd for the total degree,
    so they anticommute.
    """
    F = field
    spec = graded_vec(F, (2, 2), ((-1, -1), (-1, -1)))
    degs = ((0, 0), (1, 0), (0, 1), (1, 1))
    carrier = Obj(spec, 4, degrees=degs)
    t = {}
    names = ["1", "x", "y", "xy"]
    exps = [(0, 0), (1, 0), (0, 1), (1, 1)]
    idx = {e: i for i, e in enumerate(exps)}
    for a, ea in enumerate(exps):
        for b, eb in enumerate(exps):
            c = idx[((ea[0] + eb[0]) % 2, (ea[1] + eb[1]) % 2)]
            # x^a1 y^a2 * x^b1 y^b2 moves y^a2 past x^b1
            sign = F(-1) if (ea[1] * eb[0]) % 2 else F.one
            t[(a, b)] = {c: sign}
    return from_table(carrier, t, {0: F.one}, labels=names,
                      generators=[1, 2], name="Klein")
