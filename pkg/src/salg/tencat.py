"""Concrete symmetric tensor category instances.

Three kinds are supported: plain vector spaces, finite-abelian-graded vector
spaces with a symmetric sign bicharacter (super vector spaces are the case
Z/2 with the nontrivial sign), and representations of a small finite group
presented by generators.  Objects are pointed: a basis is fixed, each basis
slot carries a degree (graded case) and generator matrices act (rep case).
Associators are strict throughout.
"""

from __future__ import annotations

import itertools

from .scalars import NumberField, FiniteField
from .linalg import Mor, RowEchelon, intertwiner_space


# ---------------------------------------------------------------------------
# finite groups by closure


class FiniteGroup:
    """Finite group enumerated by closure from generators.

    Elements are hashable keys; `mul` and `inv` work on keys.  BFS parents
    give a generator word for every element.
    """

    def __init__(self, generators, mul, identity, bound=10000):
        self._mul = mul
        self.identity = identity
        self.generators = list(generators)
        elems = [identity]
        index = {identity: 0}
        parent = {identity: None}  # key -> (parent key, generator position)
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(self.generators):
                    h = mul(g, s)
                    if h not in index:
                        index[h] = len(elems)
                        elems.append(h)
                        parent[h] = (g, k)
                        nxt.append(h)
                        if len(elems) > bound:
                            raise ValueError(f"group closure exceeded bound {bound}")
            frontier = nxt
        self.elements = elems
        self.index = index
        self._parent = parent
        self.order = len(elems)
        self._inv = None
        self._classes = None

    def mul(self, a, b):
        return self._mul(a, b)

    def inverse(self, a):
        if self._inv is None:
            inv = {}
            for g in self.elements:
                if g in inv:
                    continue
                h = g
                while True:
                    gh = self._mul(g, h)
                    if gh == self.identity:
                        inv[g] = h
                        inv[h] = g
                        break
                    h = gh
            self._inv = inv
        return self._inv[a]

    def word(self, g) -> list:
        """Generator positions whose left-to-right product is g."""
        out = []
        while self._parent[g] is not None:
            p, k = self._parent[g]
            out.append(k)
            g = p
        out.reverse()
        return out

    def conjugacy_classes(self) -> list:
        if self._classes is None:
            seen = set()
            classes = []
            for g in self.elements:
                if g in seen:
                    continue
                orbit = {self._mul(self._mul(h, g), self.inverse(h)) for h in self.elements}
                seen |= orbit
                classes.append(sorted(orbit, key=lambda x: self.index[x]))
            self._classes = classes
        return self._classes


def _ff_mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), start=a[0][0].field.zero) for j in range(n))
        for i in range(n)
    )


def matrix_group(ff: FiniteField, generator_rows, bound=10000) -> FiniteGroup:
    """Group of matrices over a finite field, given by integer generator rows."""
    gens = [
        tuple(tuple(ff(int(x)) for x in row) for row in g) for g in generator_rows
    ]
    n = len(gens[0])
    ident = tuple(
        tuple(ff.one if i == j else ff.zero for j in range(n)) for i in range(n)
    )
    return FiniteGroup(gens, _ff_mat_mul, ident, bound=bound)


def permutation_group(perms, bound=10000) -> FiniteGroup:
    """Group generated by permutations given as image tuples."""
    perms = [tuple(p) for p in perms]
    n = len(perms[0])
    ident = tuple(range(n))

    def mul(a, b):  # (a*b)(x) = a(b(x))
        return tuple(a[b[i]] for i in range(n))

    return FiniteGroup(perms, mul, ident, bound=bound)


def sl2(ff: FiniteField) -> FiniteGroup:
    """SL_2 over a finite field, from the standard two generators."""
    g = matrix_group(ff, [[[0, -1], [1, 0]], [[1, 1], [0, 1]]])
    q = ff.q
    assert g.order == q * (q * q - 1)
    return g


# ---------------------------------------------------------------------------
# category specs


class CategorySpec:
    """Ambient category data shared by all objects and morphisms."""

    def __init__(self, field: NumberField, orders=(), bichar=None, group=None,
                 group_field=None):
        self.field = field
        self.orders = tuple(orders)
        self.group = group
        self.group_field = group_field
        if group is None:
            r = len(self.orders)
            if bichar is None:
                bichar = tuple(tuple(1 for _ in range(r)) for _ in range(r))
            self.bichar = tuple(tuple(int(x) for x in row) for row in bichar)
            assert all(len(row) == r for row in self.bichar)
            assert all(
                self.bichar[i][j] == self.bichar[j][i] for i in range(r) for j in range(r)
            ), "bicharacter must be symmetric"
            for i in range(r):
                for j in range(r):
                    assert self.bichar[i][j] in (1, -1)
                    # a -1 pairing needs even order on both generators
                    assert self.bichar[i][j] == 1 or (
                        self.orders[i] % 2 == 0 and self.orders[j] % 2 == 0
                    ), "sign bicharacter incompatible with odd-order generator"
        else:
            self.bichar = None

    # -- kinds
    @property
    def kind(self) -> str:
        if self.group is not None:
            return "rep"
        return "vec" if not self.orders else "graded"

    # -- degree arithmetic (graded kinds; vec uses the empty tuple degree)
    @property
    def zero_degree(self):
        return (0,) * len(self.orders)

    def deg_add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def deg_neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.orders))

    def beta(self, a, b) -> int:
        """Sign bicharacter value on a pair of degrees, as +-1."""
        s = 1
        for i, x in enumerate(a):
            if x % 2 == 0:
                continue
            for j, y in enumerate(b):
                if y % 2 and self.bichar[i][j] == -1:
                    s = -s
        return s

    def beta_scalar(self, a, b):
        return self.field(self.beta(a, b))

    def __eq__(self, other):
        if not isinstance(other, CategorySpec):
            return NotImplemented
        if self.field != other.field or self.orders != other.orders:
            return False
        if self.kind == "rep" or other.kind == "rep":
            return self.group is other.group
        return self.bichar == other.bichar

    def __repr__(self):
        if self.kind == "rep":
            return f"Rep(|G|={self.group.order})"
        if self.kind == "vec":
            return "Vec"
        return f"GradedVec{self.orders}"


def vec(field) -> CategorySpec:
    return CategorySpec(field)

def super_vec(field) -> CategorySpec:
    return CategorySpec(field, orders=(2,), bichar=((-1,),))

def graded_vec(field, orders, bichar) -> CategorySpec:
    return CategorySpec(field, orders=orders, bichar=bichar)

def rep_cat(field, group: FiniteGroup, group_field=None) -> CategorySpec:
    assert group.order <= 10000
    return CategorySpec(field, group=group, group_field=group_field)


class Obj:
    """Object of a category instance: dimension, slot degrees, group action."""

    __slots__ = ("spec", "dim", "degrees", "gens")

    def __init__(self, spec: CategorySpec, dim: int, degrees=None, gens=None):
        self.spec = spec
        self.dim = dim
        if spec.kind == "rep":
            assert gens is not None and len(gens) == len(spec.group.generators)
            self.gens = tuple(gens)
            self.degrees = None
        else:
            if degrees is None:
                degrees = tuple(spec.zero_degree for _ in range(dim))
            self.degrees = tuple(tuple(d) for d in degrees)
            assert len(self.degrees) == dim
            self.gens = None

    def __repr__(self):
        if self.spec.kind == "graded":
            return f"Obj(dim {self.dim}, degrees {self.degrees})"
        return f"Obj(dim {self.dim})"


def line(spec: CategorySpec, degree=None) -> Obj:
    if spec.kind == "rep":
        ident = Mor.identity(spec.field, 1)
        return Obj(spec, 1, gens=[ident] * len(spec.group.generators))
    degree = tuple(degree) if degree is not None else spec.zero_degree
    return Obj(spec, 1, degrees=(degree,))


def unit_obj(spec: CategorySpec) -> Obj:
    return line(spec)


def plain_obj(spec: CategorySpec, dim: int) -> Obj:
    """dim copies of the unit line (trivial degrees / trivial action)."""
    if spec.kind == "rep":
        ident = Mor.identity(spec.field, dim)
        return Obj(spec, dim, gens=[ident] * len(spec.group.generators))
    return Obj(spec, dim)


def rep_obj(spec: CategorySpec, gens) -> Obj:
    dim = gens[0].src_dim
    X = Obj(spec, dim, gens=gens)
    return X


def tensor_obj(X: Obj, Y: Obj) -> Obj:
    assert X.spec == Y.spec, "mismatched category specs"
    spec = X.spec
    if spec.kind == "rep":
        gens = [gx.tensor(gy) for gx, gy in zip(X.gens, Y.gens)]
        return Obj(spec, X.dim * Y.dim, gens=gens)
    degrees = tuple(
        spec.deg_add(dx, dy) for dx in X.degrees for dy in Y.degrees
    )
    return Obj(spec, X.dim * Y.dim, degrees=degrees)


def direct_sum_obj(X: Obj, Y: Obj) -> Obj:
    assert X.spec == Y.spec
    spec = X.spec
    if spec.kind == "rep":
        gens = []
        for gx, gy in zip(X.gens, Y.gens):
            g = Mor.zero(spec.field, X.dim + Y.dim, X.dim + Y.dim)
            for j, col in gx.cols.items():
                g.set_col(j, dict(col))
            for j, col in gy.cols.items():
                g.set_col(X.dim + j, {X.dim + i: c for i, c in col.items()})
            gens.append(g)
        return Obj(spec, X.dim + Y.dim, gens=gens)
    return Obj(spec, X.dim + Y.dim, degrees=X.degrees + Y.degrees)


def dual_obj(X: Obj) -> Obj:
    """Dual object; in the rep case the action is the inverse transpose."""
    spec = X.spec
    if spec.kind == "rep":
        gens = [g.inverse().transpose() for g in X.gens]
        return Obj(spec, X.dim, gens=gens)
    return Obj(spec, X.dim, degrees=tuple(spec.deg_neg(d) for d in X.degrees))


def symmetry(X: Obj, Y: Obj) -> Mor:
    """The symmetry X (x) Y -> Y (x) X in the instance at hand."""
    assert X.spec == Y.spec
    spec = X.spec
    F = spec.field
    cols = {}
    for i in range(X.dim):
        for j in range(Y.dim):
            src = i * Y.dim + j
            tgt = j * X.dim + i
            if spec.kind == "rep":
                c = F.one
            else:
                c = spec.beta_scalar(X.degrees[i], Y.degrees[j])
            cols[src] = {tgt: c}
    return Mor(F, X.dim * Y.dim, Y.dim * X.dim, cols)


def hom_space(X: Obj, Y: Obj) -> list:
    """Basis of the degree-zero / equivariant maps X -> Y."""
    assert X.spec == Y.spec
    spec = X.spec
    F = spec.field
    if spec.kind == "rep":
        return intertwiner_space(F, list(X.gens), list(Y.gens), X.dim, Y.dim)
    out = []
    for i in range(Y.dim):
        for j in range(X.dim):
            if Y.degrees[i] == X.degrees[j]:
                out.append(Mor(F, X.dim, Y.dim, {j: {i: F.one}}))
    return out


def invariants(X: Obj) -> list:
    """Basis of Hom(1, X) as sparse vectors in X."""
    spec = X.spec
    F = spec.field
    if spec.kind == "rep":
        ech = RowEchelon(F, X.dim)
        rows = []
        for g in X.gens:
            gm = g - Mor.identity(F, X.dim)
            # rows of (g - 1)
            rdict: dict = {}
            for j, col in gm.cols.items():
                for i, c in col.items():
                    rdict.setdefault(i, {})[j] = c
            rows.extend(rdict.values())
        for r in rows:
            ech.add(r)
        return ech.nullspace()
    one = F.one
    return [
        {i: one} for i in range(X.dim) if X.degrees[i] == spec.zero_degree
    ]


def categorical_dimension(X: Obj):
    """Trace of the symmetry-twisted evaluation; an exact scalar."""
    spec = X.spec
    if spec.kind == "rep":
        return spec.field(X.dim)
    out = spec.field.zero
    for d in X.degrees:
        out = out + spec.beta_scalar(d, d)
    return out


def invertible_sign(L: Obj) -> int:
    """Scalar by which the symmetry acts on L (x) L, for a line L."""
    if L.dim != 1:
        raise ValueError("object is not invertible (dimension != 1)")
    spec = L.spec
    if spec.kind == "rep":
        return 1
    return spec.beta(L.degrees[0], L.degrees[0])


def pic_lines(spec: CategorySpec) -> list:
    """One invertible line per grading degree (graded instances only)."""
    assert spec.kind in ("vec", "graded")
    degs = sorted(itertools.product(*(range(n) for n in spec.orders)))
    return [line(spec, d) for d in degs]


def hexagon_holds(X: Obj, Y: Obj, Z: Obj) -> bool:
    """tau_{X, Y(x)Z} == (id_Y (x) tau_{X,Z}) . (tau_{X,Y} (x) id_Z)."""
    YZ = tensor_obj(Y, Z)
    lhs = symmetry(X, YZ)
    idY = Mor.identity(X.spec.field, Y.dim)
    idZ = Mor.identity(X.spec.field, Z.dim)
    rhs = idY.tensor(symmetry(X, Z)).compose(symmetry(X, Y).tensor(idZ))
    return lhs == rhs


def symmetry_involutive(X: Obj, Y: Obj) -> bool:
    return symmetry(Y, X).compose(symmetry(X, Y)).is_identity()


def rep_matrix(X: Obj, g) -> Mor:
    """Action of an arbitrary group element on a rep object, via its word."""
    spec = X.spec
    out = Mor.identity(spec.field, X.dim)
    for k in spec.group.word(g):
        out = out.compose(X.gens[k])
    return out


def rep_obj_valid(X: Obj, samples=20, seed=0) -> bool:
    """Generators invertible and consistent on sampled relation words."""
    import random

    spec = X.spec
    if spec.kind != "rep":
        return True
    for g in X.gens:
        if not g.is_invertible():
            return False
    rng = random.Random(seed)
    G = spec.group
    for _ in range(samples):
        a = G.elements[rng.randrange(G.order)]
        b = G.elements[rng.randrange(G.order)]
        if rep_matrix(X, G.mul(a, b)) != rep_matrix(X, a).compose(rep_matrix(X, b)):
            return False
    return True
