"""Algebras in a category instance via sparse structure constants.

The multiplication is a map (i, j) -> sparse vector; tables are computed
lazily and cached, which keeps 729-dimensional iterated tensor powers
affordable.  Products of graded algebras apply Koszul signs at construction
time, so a materialized table is always self-contained.
"""

from __future__ import annotations

import itertools
import random

from .linalg import Mor, RowEchelon, vec_add, vec_addmul, vec_eq, vec_scale
from .tencat import (
    CategorySpec,
    Obj,
    dual_obj,
    plain_obj,
    rep_matrix,
    symmetry,
    tensor_obj,
    unit_obj,
)


class Algebra:
    """Associative unital algebra on a pointed carrier object."""

    def __init__(self, carrier: Obj, mult_fn, unit: dict, labels=None,
                 generators=None, factor_dims=None, name=""):
        self.spec = carrier.spec
        self.carrier = carrier
        self.dim = carrier.dim
        self._mult_fn = mult_fn
        self._table: dict = {}
        self.unit = {i: c for i, c in unit.items() if c}
        self.labels = labels
        self.generators = generators  # basis indices generating as an algebra
        self.factor_dims = tuple(factor_dims) if factor_dims else (carrier.dim,)
        self.name = name
        self._lmul: dict = {}
        self._rmul: dict = {}
        self._mu = None

    # -- multiplication
    def mult(self, i: int, j: int) -> dict:
        key = (i, j)
        v = self._table.get(key)
        if v is None:
            v = {k: c for k, c in self._mult_fn(i, j).items() if c}
            self._table[key] = v
        return v

    def mul_vec(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, ca in a.items():
            for j, cb in b.items():
                c = ca * cb
                if c:
                    vec_addmul(out, self.mult(i, j), c)
        return out

    def lmul(self, i: int) -> Mor:
        m = self._lmul.get(i)
        if m is None:
            cols = {}
            for j in range(self.dim):
                v = self.mult(i, j)
                if v:
                    cols[j] = dict(v)
            m = Mor(self.spec.field, self.dim, self.dim, cols)
            self._lmul[i] = m
        return m

    def rmul(self, j: int) -> Mor:
        m = self._rmul.get(j)
        if m is None:
            cols = {}
            for i in range(self.dim):
                v = self.mult(i, j)
                if v:
                    cols[i] = dict(v)
            m = Mor(self.spec.field, self.dim, self.dim, cols)
            self._rmul[j] = m
        return m

    def lmul_elem(self, a: dict) -> Mor:
        out = Mor.zero(self.spec.field, self.dim, self.dim)
        for i, c in a.items():
            out = out + self.lmul(i).scale(c)
        return out

    def rmul_elem(self, a: dict) -> Mor:
        out = Mor.zero(self.spec.field, self.dim, self.dim)
        for i, c in a.items():
            out = out + self.rmul(i).scale(c)
        return out

    def mu(self) -> Mor:
        """Multiplication as a morphism A (x) A -> A."""
        if self._mu is None:
            cols = {}
            for i in range(self.dim):
                for j in range(self.dim):
                    v = self.mult(i, j)
                    if v:
                        cols[i * self.dim + j] = dict(v)
            self._mu = Mor(self.spec.field, self.dim * self.dim, self.dim, cols)
        return self._mu

    def gen_indices(self) -> list:
        return list(self.generators) if self.generators is not None else list(range(self.dim))

    # -- invariance of an element of the carrier
    def is_invariant(self, a: dict) -> bool:
        spec = self.spec
        if spec.kind == "rep":
            for g in self.carrier.gens:
                if not vec_eq(g.apply(a), a):
                    return False
            return True
        z = spec.zero_degree
        return all(self.carrier.degrees[i] == z for i in a)

    # -- verification
    def validate(self, full_assoc=None, samples=400, seed=0):
        """Unit laws, associativity, and the morphism property of mult."""
        F = self.spec.field
        n = self.dim
        for j in range(n):
            assert vec_eq(self.mul_vec(self.unit, {j: F.one}), {j: F.one}), "left unit fails"
            assert vec_eq(self.mul_vec({j: F.one}, self.unit), {j: F.one}), "right unit fails"
        if full_assoc is None:
            full_assoc = n <= 20
        one = F.one
        if full_assoc:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(samples)
            )
        for i, j, k in triples:
            ab_c = self.mul_vec(self.mult(i, j), {k: one})
            a_bc = self.mul_vec({i: one}, self.mult(j, k))
            assert vec_eq(ab_c, a_bc), f"associativity fails at basis triple {(i, j, k)}"
        self._validate_morphism()

    def _validate_morphism(self):
        spec = self.spec
        if spec.kind == "rep":
            mu = self.mu()
            for g in self.carrier.gens:
                assert g.compose(mu) == mu.compose(g.tensor(g)), "mult not equivariant"
            assert self.is_invariant(self.unit), "unit not invariant"
        elif spec.kind == "graded":
            degs = self.carrier.degrees
            z = spec.zero_degree
            for i in self.unit:
                assert degs[i] == z, "unit not in degree zero"
            for (i, j), v in list(self._table.items()):
                d = spec.deg_add(degs[i], degs[j])
                for k in v:
                    assert degs[k] == d, "product not degree additive"
            # make sure the whole table was exercised at least once
            for i in range(self.dim):
                for j in range(self.dim):
                    d = spec.deg_add(degs[i], degs[j])
                    for k in self.mult(i, j):
                        assert degs[k] == d, "product not degree additive"

    def materialize(self) -> dict:
        for i in range(self.dim):
            for j in range(self.dim):
                self.mult(i, j)
        return self._table

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"Algebra(dim {self.dim}{nm})"


# ---------------------------------------------------------------------------
# constructions


def from_table(carrier: Obj, table: dict, unit: dict, labels=None,
               generators=None, name="") -> Algebra:
    def mult_fn(i, j):
        return table.get((i, j), {})

    return Algebra(carrier, mult_fn, unit, labels=labels, generators=generators,
                   name=name)


def opposite(A: Algebra) -> Algebra:
    """Opposite algebra; the product is reversed through the symmetry."""
    spec = A.spec

    if spec.kind == "graded":
        degs = A.carrier.degrees

        def mult_fn(i, j):
            s = spec.beta_scalar(degs[i], degs[j])
            return vec_scale(A.mult(j, i), s)
    else:
        def mult_fn(i, j):
            return A.mult(j, i)

    return Algebra(A.carrier, mult_fn, dict(A.unit), labels=A.labels,
                   generators=A.generators, factor_dims=A.factor_dims,
                   name=f"{A.name}^op" if A.name else "")


def tensor_algebras(A: Algebra, B: Algebra) -> Algebra:
    """Componentwise product on A (x) B with the Koszul sign convention."""
    assert A.spec == B.spec, "mismatched category specs"
    spec = A.spec
    carrier = tensor_obj(A.carrier, B.carrier)
    db = B.dim

    if spec.kind == "graded":
        adegs, bdegs = A.carrier.degrees, B.carrier.degrees

        def mult_fn(i, j):
            ia, ib = divmod(i, db)
            ja, jb = divmod(j, db)
            sign = spec.beta_scalar(bdegs[ib], adegs[ja])
            out = {}
            for ka, ca in A.mult(ia, ja).items():
                for kb, cb in B.mult(ib, jb).items():
                    out[ka * db + kb] = ca * cb * sign
            return out
    else:
        def mult_fn(i, j):
            ia, ib = divmod(i, db)
            ja, jb = divmod(j, db)
            out = {}
            for ka, ca in A.mult(ia, ja).items():
                for kb, cb in B.mult(ib, jb).items():
                    out[ka * db + kb] = ca * cb
            return out

    unit: dict = {}
    for ia, ca in A.unit.items():
        for ib, cb in B.unit.items():
            unit[ia * db + ib] = ca * cb
    gens = None
    if A.generators is not None and B.generators is not None:
        ua = next(iter(A.unit)) if len(A.unit) == 1 else None
        ub = next(iter(B.unit)) if len(B.unit) == 1 else None
        if ua is not None and ub is not None:
            gens = [g * db + ub for g in A.generators] + [ua * db + g for g in B.generators]
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = [(la, lb) for la in A.labels for lb in B.labels]
    return Algebra(carrier, mult_fn, unit, labels=labels, generators=gens,
                   factor_dims=A.factor_dims + B.factor_dims,
                   name=f"({A.name})x({B.name})" if A.name or B.name else "")


def tensor_many(algebras) -> Algebra:
    out = algebras[0]
    for nxt in algebras[1:]:
        out = tensor_algebras(out, nxt)
    return out


def end_algebra(V: Obj):
    """Internal endomorphism algebra of V, with its tautological module.

    Basis e_{ij} at index i*dim+j (row major); e_{ij} e_{kl} = [j==k] e_{il}.
    """
    spec = V.spec
    F = spec.field
    n = V.dim
    if spec.kind == "rep":
        gens = [g.tensor(g.inverse().transpose()) for g in V.gens]
        carrier = Obj(spec, n * n, gens=gens)
    else:
        degs = tuple(
            spec.deg_add(V.degrees[i], spec.deg_neg(V.degrees[j]))
            for i in range(n)
            for j in range(n)
        )
        carrier = Obj(spec, n * n, degrees=degs)

    def mult_fn(p, q):
        i, j = divmod(p, n)
        k, l = divmod(q, n)
        if j != k:
            return {}
        return {i * n + l: F.one}

    unit = {i * n + i: F.one for i in range(n)}
    gens = None
    if n >= 2:
        gens = []
        for i in range(n - 1):
            gens.append(i * n + (i + 1))
            gens.append((i + 1) * n + i)
    A = Algebra(carrier, mult_fn, unit, generators=gens, name=f"End(dim {n})")

    def act_fn(p):
        i, j = divmod(p, n)
        return Mor(F, n, n, {j: {i: F.one}})

    M = Module(A, V, act_fn)
    return A, M


class Module:
    """Left module over an algebra, with per-basis action morphisms."""

    def __init__(self, alg: Algebra, carrier: Obj, act_fn):
        self.alg = alg
        self.carrier = carrier
        self.dim = carrier.dim
        self._act_fn = act_fn
        self._acts: dict = {}

    def act(self, i: int) -> Mor:
        m = self._acts.get(i)
        if m is None:
            m = self._act_fn(i)
            self._acts[i] = m
        return m

    def act_elem(self, a: dict) -> Mor:
        out = Mor.zero(self.alg.spec.field, self.dim, self.dim)
        for i, c in a.items():
            out = out + self.act(i).scale(c)
        return out

    def apply(self, a: dict, v: dict) -> dict:
        out: dict = {}
        for i, c in a.items():
            vec_addmul(out, self.act(i).apply(v), c)
        return out

    def validate(self, on_generators=True, seed=0, samples=200):
        A = self.alg
        F = A.spec.field
        ident = self.act_elem(A.unit)
        assert ident.is_identity(), "unit does not act as identity"
        idxs = A.gen_indices() if on_generators else range(A.dim)
        for i in idxs:
            ai = self.act(i)
            for j in range(A.dim):
                lhs = ai.compose(self.act(j))
                rhs = self.act_elem(A.mult(i, j))
                assert lhs == rhs, f"module associativity fails at ({i},{j})"
        if A.spec.kind == "graded":
            adeg = A.carrier.degrees
            mdeg = self.carrier.degrees
            for i in range(A.dim):
                for j, col in self.act(i).cols.items():
                    d = A.spec.deg_add(adeg[i], mdeg[j])
                    for k in col:
                        assert mdeg[k] == d, "action not degree additive"
        elif A.spec.kind == "rep":
            for galg, gmod in zip(A.carrier.gens, self.carrier.gens):
                for i in range(A.dim):
                    lhs = gmod.compose(self.act(i))
                    img = galg.apply({i: F.one})
                    rhs = self.act_elem(img).compose(gmod)
                    assert lhs == rhs, "action not equivariant"

    def __repr__(self):
        return f"Module(dim {self.dim} over dim {self.alg.dim})"


def free_module(A: Algebra, X: Obj = None) -> Module:
    """The relatively free module A (x) X (X defaults to the unit object)."""
    if X is None:
        X = unit_obj(A.spec)
    carrier = tensor_obj(A.carrier, X)
    dx = X.dim
    idX = Mor.identity(A.spec.field, dx)

    def act_fn(i):
        return A.lmul(i).tensor(idX)

    return Module(A, carrier, act_fn)


def regular_module(A: Algebra) -> Module:
    return Module(A, A.carrier, lambda i: A.lmul(i))


class Bimodule:
    """Carrier with commuting left and right actions of two algebras."""

    def __init__(self, left: Algebra, right: Algebra, carrier: Obj,
                 lact_fn, ract_fn):
        self.left = left
        self.right = right
        self.carrier = carrier
        self.dim = carrier.dim
        self._l: dict = {}
        self._r: dict = {}
        self._lact_fn = lact_fn
        self._ract_fn = ract_fn

    def lact(self, i):
        if i not in self._l:
            self._l[i] = self._lact_fn(i)
        return self._l[i]

    def ract(self, i):
        if i not in self._r:
            self._r[i] = self._ract_fn(i)
        return self._r[i]

    def validate(self):
        for i in self.left.gen_indices():
            for j in self.right.gen_indices():
                assert self.lact(i).compose(self.ract(j)) == self.ract(j).compose(
                    self.lact(i)
                ), "left and right actions do not commute"


# ---------------------------------------------------------------------------
# operations


def lambda_rho(A: Algebra, a: dict):
    """Left and right multiplication morphisms by an invariant element."""
    assert A.is_invariant(a), "element is not invariant"
    return A.lmul_elem(a), A.rmul_elem(a)


class SectionResult:
    def __init__(self, ok, witness=None, section=None):
        self.ok = ok
        self.witness = witness
        self.section = section

    def __bool__(self):
        return self.ok


def separability_section(A: Algebra, u: dict, pi: dict, A2: Algebra = None) -> SectionResult:
    """sigma(x) = (x (x) u) . pi, verified as a bimodule splitting of mult.

    pi lives in A (x) A (the algebra A2, built here when not supplied).
    Returns the verified section or the offending basis element.
    """
    if not A.unit or not u:
        return SectionResult(False, witness="degenerate input")
    if A2 is None:
        A2 = tensor_algebras(A, A)
    F = A.spec.field
    n = A.dim
    one = F.one

    def sigma_basis(x):
        xu = {x * n + k: c for k, c in u.items()}
        return A2.mul_vec(xu, pi)

    sig = [sigma_basis(x) for x in range(n)]
    # mu . sigma = id
    for x in range(n):
        out: dict = {}
        for key, c in sig[x].items():
            i, j = divmod(key, n)
            vec_addmul(out, A.mult(i, j), c)
        if not vec_eq(out, {x: one}):
            return SectionResult(False, witness=("mu.sigma != id", x, out))

    def embed_left(a):
        return {a * n + k: c for k, c in A.unit.items()}

    def embed_right(b):
        return {k * n + b: c for k, c in A.unit.items()}

    def sigma_vec(v):
        out: dict = {}
        for y, c in v.items():
            vec_addmul(out, sig[y], c)
        return out

    # one-sided identities on all pairs; together they give the two-sided
    # bimodule identity on every basis triple
    for a in range(n):
        ea = embed_left(a)
        for x in range(n):
            lhs = A2.mul_vec(ea, sig[x])
            if not vec_eq(lhs, sigma_vec(A.mult(a, x))):
                return SectionResult(False, witness=("left module", (a, x)))
    for x in range(n):
        for b in range(n):
            lhs = A2.mul_vec(sig[x], embed_right(b))
            if not vec_eq(lhs, sigma_vec(A.mult(x, b))):
                return SectionResult(False, witness=("right module", (x, b)))
    # spot check the three-factor form as stated
    rng = random.Random(0)
    for _ in range(min(60, n * n)):
        a, x, b = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        lhs = A2.mul_vec(A2.mul_vec(embed_left(a), sig[x]), embed_right(b))
        axb = A.mul_vec(A.mult(a, x), {b: one})
        if not vec_eq(lhs, sigma_vec(axb)):
            return SectionResult(False, witness=("bimodule", (a, x, b)))
    sigma = Mor(F, n, n * n, {x: sig[x] for x in range(n) if sig[x]})
    return SectionResult(True, section=sigma)


def action_map(A: Algebra, M: Module) -> Mor:
    """A -> End(M carrier) as a matrix, columns = flattened actions."""
    F = A.spec.field
    n = A.dim
    m = M.dim
    cols = {}
    for i in range(n):
        col = {}
        for j, c in self_items(M.act(i)):
            col[j] = c
        if col:
            cols[i] = col
    return Mor(F, n, m * m, cols)


def self_items(mor: Mor):
    """Flatten a morphism into End-space coordinates (row*dim + col)."""
    m = mor.src_dim
    for j, col in mor.cols.items():
        for i, c in col.items():
            yield i * m + j, c


def action_iso_check(A: Algebra, M: Module):
    """Exact rank test of A -> End(M): 'iso', 'not-injective', 'not-surjective'."""
    amap = action_map(A, M)
    r = amap.rank()
    n, m2 = A.dim, M.dim * M.dim
    if r == n == m2:
        return "iso", amap
    if r < n:
        ech = RowEchelon(A.spec.field, m2)
        for col in amap.cols.values():
            ech.add(col)
        # a kernel element as witness: combine columns into a dependency
        return "not-injective", (r, n)
    return "not-surjective", (r, m2)


def noether_skolem_descent(Vobj: Obj, Wobj: Obj, phi):
    """Split an equivariant algebra iso End(V) -> End(W) as a twist by a line.

    phi: callable on morphisms V -> V returning morphisms W -> W.  Solves
    phi(alpha) psi = psi alpha for psi, asserts a one-dimensional solution
    space, then reads off the character g -> scalar of psi^-1 sigma(g)^-1 psi
    rho(g) and verifies it is a homomorphism with V == L (x) W exactly.
    """
    spec = Vobj.spec
    assert spec.kind == "rep"
    F = spec.field
    G = spec.group
    nV, nW = Vobj.dim, Wobj.dim
    basis = [Mor(F, nV, nV, {j: {i: F.one}}) for i in range(nV) for j in range(nV)]
    src = basis
    tgt = [phi(alpha) for alpha in basis]
    from .linalg import intertwiner_space

    # psi with phi(alpha) psi = psi alpha for all alpha
    sols = intertwiner_space(F, src, tgt, nV, nW)
    if len(sols) != 1:
        raise ValueError(
            f"intertwiner space has dimension {len(sols)}, expected 1: "
            "phi is not induced by a map of the expected form"
        )
    psi = sols[0]
    assert psi.is_invertible(), "intertwiner not invertible"
    psi_inv = psi.inverse()
    rho = {g: rep_matrix(Vobj, g) for g in G.elements}
    sig = {g: rep_matrix(Wobj, g) for g in G.elements}
    lam = {}
    for g in G.elements:
        m = psi_inv.compose(sig[g].inverse()).compose(psi).compose(rho[g])
        c = m.entry(0, 0)
        if m != Mor.identity(F, nV).scale(c):
            raise ValueError(f"descent matrix not scalar at group element {g}")
        lam[g] = c
    for g in G.elements:
        for h in G.elements:
            if lam[G.mul(g, h)] != lam[g] * lam[h]:
                raise ValueError("character fails homomorphism test")
    # the iso V = L (x) W: psi intertwines rho(g) with lam(g) sigma(g)
    for g in G.elements:
        if psi.compose(rho[g]) != sig[g].compose(psi).scale(lam[g]):
            raise ValueError("twisted intertwining fails")
    return lam, psi
