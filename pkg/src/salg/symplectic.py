"""Finite symplectic spaces, twisted group algebras, and the oscillator
splitting at fixed finite rank.

The twisted group algebra of (V, psi) has basis [x] for x in V and the
single-term product [x][y] = psi(<x,y>)[x+y].  Its distinguished structure
    eps(sum c_x [x]) = t^(1/2) c_0,    pi = t^(-1/2) sum_x [x] (x) [-x]
with t = q^d is verified exactly, never assumed.  The oscillator module is
cut out by the Lagrangian idempotent e = |L|^(-1) sum_{b in L} [b]; every
property of the splitting (e idempotent, dim W = q^(d/2), A = End(W)) is
asserted from scratch.
"""

from __future__ import annotations

import itertools

from .scalars import FiniteField, NumberField, cyclotomic, nth_roots, trace_int
from .linalg import Mor, SpanSolver, intertwiner_space, vec_addmul, vec_eq, vec_scale
from .tencat import FiniteGroup, plain_obj, sl2, vec
from .algebra import Algebra, Module, tensor_algebras
from .azumaya import (
    FailureWitness,
    SStructure,
    canonical_end_s,
    check_anti_involution,
    eps_functional,
    verify_s_structure,
    _acts_as,
    _scalar_of,
)


class SymplecticSpace:
    """F_q^d with the standard hyperbolic form <e_i, f_i> = 1, d even."""

    def __init__(self, q: int, d: int, bound: int = 10**4):
        self.q = q
        self.d = d
        assert d % 2 == 0 and d > 0, "dimension must be even and positive"
        if q % 2 == 0:
            raise ValueError("even characteristic is excluded (odd q required)")
        p, e = _prime_power(q)
        self.ff = FiniteField(p, e)
        if q**d > bound:
            raise ValueError(f"q^d = {q**d} exceeds bound {bound}")
        self.points = [
            tuple(v) for v in itertools.product(list(self.ff.elements()), repeat=d)
        ]
        self.index = {v: i for i, v in enumerate(self.points)}
        self.n = len(self.points)
        half = d // 2
        self._half = half
        # add/neg tables over point indices
        self.neg_idx = [self.index[tuple(-c for c in v)] for v in self.points]
        self.add_idx = None
        if self.n <= 512:
            self.add_idx = [
                [self.index[tuple(a + b for a, b in zip(u, v))] for v in self.points]
                for u in self.points
            ]
        self.zero_idx = self.index[tuple(self.ff.zero for _ in range(d))]
        for v in self.points:
            assert not self.pair(v, v), "form is not alternating"

    def pair(self, u, v):
        """The symplectic form; values in F_q."""
        h = self._half
        out = self.ff.zero
        for i in range(h):
            out = out + u[i] * v[h + i] - u[h + i] * v[i]
        return out

    def add(self, i: int, j: int) -> int:
        if self.add_idx is not None:
            return self.add_idx[i][j]
        u, v = self.points[i], self.points[j]
        return self.index[tuple(a + b for a, b in zip(u, v))]

    def scalar_mul(self, c, i: int) -> int:
        return self.index[tuple(c * a for a in self.points[i])]

    def __repr__(self):
        return f"SymplecticSpace(q={self.q}, d={self.d})"


def _prime_power(q: int):
    for p in range(3, q + 1, 2):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            assert m == 1, f"q = {q} is not a prime power"
            return p, e
    raise ValueError(f"q = {q} has no odd prime divisor")


class AdditiveCharacter:
    """psi(a) = zeta_p ** (power * Tr(a)), valued in the scalar field."""

    def __init__(self, ff: FiniteField, field: NumberField, power: int = 1):
        self.ff = ff
        self.field = field
        self.power = power % ff.p
        assert self.power != 0, "character power must be nonzero mod p"
        conductor = field.tags.get("cyclotomic")
        if conductor is None or conductor % ff.p != 0:
            raise ValueError(
                f"scalar field has no designated root of unity of order {ff.p}"
            )
        self.zeta_p = field.gen ** (conductor // ff.p)
        assert self.zeta_p**ff.p == field.one and self.zeta_p != field.one
        self._cache = [self.zeta_p**k for k in range(ff.p)]
        # nontriviality and additivity on all pairs
        assert any(self(a) != field.one for a in ff.elements())
        els = list(ff.elements())
        for a in els:
            for b in els:
                assert self(a + b) == self(a) * self(b), "character not additive"

    def __call__(self, a):
        t = (trace_int(self.ff, a) * self.power) % self.ff.p
        return self._cache[t]

    def conjugate(self) -> "AdditiveCharacter":
        return AdditiveCharacter(self.ff, self.field, power=-self.power)

    def __repr__(self):
        return f"psi(p={self.ff.p}, power={self.power})"


class TwistedGroupAlgebra:
    """k[V] with [x][y] = psi(<x,y>)[x+y], plus derived metadata."""

    def __init__(self, V: SymplecticSpace, psi: AdditiveCharacter,
                 check_level: str = "auto"):
        assert psi.ff is V.ff or psi.ff.q == V.q
        self.V = V
        self.psi = psi
        F = psi.field
        self.field = F
        n = V.n
        self.t = F(V.q) ** V.d
        self.t_half = F(V.q) ** (V.d // 2)
        pair_table = {}

        def mult_fn(i, j):
            c = pair_table.get((i, j))
            if c is None:
                c = psi(V.pair(V.points[i], V.points[j]))
                pair_table[(i, j)] = c
            return {V.add(i, j): c}

        carrier = plain_obj(vec(F), n)
        self.alg = Algebra(
            carrier,
            mult_fn,
            {V.zero_idx: F.one},
            labels=[_point_label(p) for p in V.points],
            generators=_tga_generators(V),
            name=f"TGA(q={V.q},d={V.d})",
        )
        full = n <= 16 if check_level == "auto" else (check_level == "full")
        self.alg.validate(full_assoc=full or n <= 81)
        self._S = None
        self._A2 = None

    @property
    def A2(self) -> Algebra:
        if self._A2 is None:
            self._A2 = tensor_algebras(self.alg, self.alg)
        return self._A2

    def s_structure(self) -> SStructure:
        """The (pi, eps) structure of the displayed formulas, verified."""
        if self._S is None:
            V = self.V
            F = self.field
            n = V.n
            eps_vals = [self.t_half if i == V.zero_idx else F.zero for i in range(n)]
            eps = eps_functional(self.alg, eps_vals)
            inv_half = self.t_half.inverse()
            pi = {x * n + V.neg_idx[x]: inv_half for x in range(n)}
            S = verify_s_structure(self.alg, pi, eps, self.A2)
            if isinstance(S, FailureWitness):
                raise AssertionError(f"twisted S-structure failed verification: {S!r}")
            assert S.degree == self.t_half
            self._S = S
        return self._S

    def sp_action_maps(self) -> list:
        """Permutation action [x] -> [gx] for the standard Sp generators."""
        assert self.V.d == 2, "Sp generators implemented for d = 2"
        G = sl2(self.V.ff)
        out = []
        for g in G.generators:
            out.append(self.element_permutation(g))
        return out

    def element_permutation(self, gmat) -> Mor:
        """The algebra automorphism [x] -> [g x] for g in Sp(V)."""
        V = self.V
        perm = []
        for pt in V.points:
            img = tuple(
                sum((gmat[r][c] * pt[c] for c in range(V.d)), start=V.ff.zero)
                for r in range(V.d)
            )
            perm.append(V.index[img])
        return Mor.from_permutation(self.field, perm)


def _point_label(pt):
    return tuple(c.coeffs[0] if len(c.coeffs) == 1 else c.coeffs for c in pt)


def _tga_generators(V: SymplecticSpace):
    """[b] for b an F_p-basis of V; these generate the algebra."""
    gens = []
    p, e = V.ff.p, V.ff.e
    basis_elems = []
    for k in range(e):
        coeffs = [0] * e
        coeffs[k] = 1
        basis_elems.append(V.ff.coerce(tuple(coeffs)))
    for slot in range(V.d):
        for b in basis_elems:
            v = tuple(b if i == slot else V.ff.zero for i in range(V.d))
            gens.append(V.index[v])
    return gens


def standard_symplectic(q: int, d: int, bound: int = 10**4) -> SymplecticSpace:
    return SymplecticSpace(q, d, bound=bound)


def twisted_group_algebra(q: int, d: int, field: NumberField = None,
                          psi_power: int = 1) -> TwistedGroupAlgebra:
    """Build the twisted group algebra over Q(zeta_p) (or a given field)."""
    V = standard_symplectic(q, d)
    if field is None:
        field = cyclotomic(V.ff.p)
    psi = AdditiveCharacter(V.ff, field, power=psi_power)
    return TwistedGroupAlgebra(V, psi)


def sp_invariance_report(tga: TwistedGroupAlgebra) -> dict:
    """eps and pi are invariant under [x] -> [gx] for Sp generators."""
    S = tga.s_structure()
    out = {"eps": True, "pi": True}
    for m in tga.sp_action_maps():
        if S.eps.compose(m) != S.eps:
            out["eps"] = False
        if not vec_eq(m.tensor(m).apply(S.pi), S.pi):
            out["pi"] = False
    return out


# ---------------------------------------------------------------------------
# anti-involutions


def sqrt_minus_one_involution(tga: TwistedGroupAlgebra):
    """sigma([x]) = [ix] for i^2 = -1 in F_q; refuses when -1 is non-square."""
    V = tga.V
    ff = V.ff
    root = None
    for a in ff.elements():
        if a * a == -ff.one:
            root = a
            break
    if root is None:
        raise ValueError(
            f"-1 is not a square in F_{V.q} (q = 3 mod 4): no such involution"
        )
    perm = [V.scalar_mul(root, i) for i in range(V.n)]
    sigma = Mor.from_permutation(tga.field, perm)
    S = tga.s_structure()
    report = check_anti_involution(tga.alg, sigma, S.eps)
    if isinstance(report, FailureWitness):
        raise AssertionError(f"sigma = [ix] failed verification: {report!r}")
    return sigma, root, report


def find_uv(q: int):
    """Lexicographically first (u, v) in (F_q^2)^2 with u.u = v.v = -1, u.v = 0."""
    ff = FiniteField(*_prime_power(q))
    els = list(ff.elements())

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1]

    for u in itertools.product(els, repeat=2):
        if dot(u, u) != -ff.one:
            continue
        for v in itertools.product(els, repeat=2):
            if dot(u, v) == ff.zero and dot(v, v) == -ff.one:
                return u, v, ff
    raise AssertionError("no (u, v) pair found; impossible for odd q")


def t_involution(tga: TwistedGroupAlgebra, exhaustive_bound: int = 10**4):
    """The form-negating map T(x,y) = (u1 x + v1 y, u2 x + v2 y) on V + V,
    inducing an admissible anti-involution of A (x) A."""
    V = tga.V
    ff = V.ff
    u, v, _ = find_uv(V.q)
    d = V.d

    def T(x, y):
        nx = tuple(u[0] * a + v[0] * b for a, b in zip(x, y))
        ny = tuple(u[1] * a + v[1] * b for a, b in zip(x, y))
        return nx, ny

    # T invertible: determinant of the 2x2 coefficient matrix
    det = u[0] * v[1] - v[0] * u[1]
    assert det, "T is not invertible"

    def form2(xy, xy2):
        return V.pair(xy[0], xy2[0]) + V.pair(xy[1], xy2[1])

    pts = V.points
    n2 = V.n * V.n
    if n2 * n2 <= exhaustive_bound**2:
        # negation identity on every pair of V + V points
        doubles = list(itertools.product(pts, repeat=2))
        timgs = [T(x, y) for x, y in doubles]
        for a, ta in zip(doubles, timgs):
            for b, tb in zip(doubles, timgs):
                if form2(ta, tb) != -form2(a, b):
                    raise AssertionError(f"form negation fails at {(a, b)}")
    else:
        import random

        rng = random.Random(0)
        for _ in range(20000):
            a = (pts[rng.randrange(V.n)], pts[rng.randrange(V.n)])
            b = (pts[rng.randrange(V.n)], pts[rng.randrange(V.n)])
            if form2(T(*a), T(*b)) != -form2(a, b):
                raise AssertionError(f"form negation fails at {(a, b)}")

    A2 = tga.A2
    n = V.n
    perm = []
    for k in range(n * n):
        i, j = divmod(k, n)
        nx, ny = T(pts[i], pts[j])
        perm.append(V.index[nx] * n + V.index[ny])
    sigma = Mor.from_permutation(tga.field, perm)
    # admissibility: (eps x eps) . sigma = eps x eps; T fixes the origin
    return sigma, (u, v)


# ---------------------------------------------------------------------------
# the oscillator module


class WeilData:
    def __init__(self, tga, idempotent, wmod, span, action_iso):
        self.tga = tga
        self.idempotent = idempotent
        self.module = wmod
        self.span = span
        self.action_iso = action_iso

    @property
    def dim(self):
        return self.module.dim


def schrodinger_module(tga: TwistedGroupAlgebra) -> WeilData:
    """W = A e for the Lagrangian idempotent e; all properties asserted."""
    V = tga.V
    A = tga.alg
    F = tga.field
    half = V.d // 2
    lagr = [
        V.index[pt + tuple(V.ff.zero for _ in range(half))]
        for pt in itertools.product(list(V.ff.elements()), repeat=half)
    ]
    size = F(len(lagr))
    e = {b: size.inverse() for b in lagr}
    assert vec_eq(A.mul_vec(e, e), e), "Lagrangian average is not idempotent"
    span = SpanSolver(F, A.dim)
    for x in range(A.dim):
        span.add(A.mul_vec({x: F.one}, e))
    wdim = span.dim
    expected = V.q ** (V.d // 2)
    assert wdim == expected, f"dim W = {wdim}, expected q^(d/2) = {expected}"
    basis = span.basis()

    def act_fn(i):
        cols = {}
        for j, w in enumerate(basis):
            img = A.mul_vec({i: F.one}, w)
            coords = span.coordinates(img)
            assert coords is not None, "action leaves the module"
            col = {t: c for t, c in enumerate(coords) if c}
            if col:
                cols[j] = col
        return Mor(F, wdim, wdim, cols)

    wmod = Module(A, plain_obj(vec(F), wdim), act_fn)
    wmod.validate(on_generators=True)
    from .algebra import action_iso_check

    verdict, amap = action_iso_check(A, wmod)
    assert verdict == "iso", f"A -> End(W) is {verdict}"
    return WeilData(tga, e, wmod, span, amap)


def oscillator_sign(tga: TwistedGroupAlgebra, weil: WeilData = None) -> int:
    """Compare the structure transported from End(W) with the twisted one.

    Returns +1 on the nose, -1 for the negation; anything else is impossible
    for a verified structure and raises.
    """
    if weil is None:
        weil = schrodinger_module(tga)
    S = tga.s_structure()
    F = tga.field
    W = weil.module
    n = tga.alg.dim
    # eps side: trace of act(a) vs eps(a)
    sign = None
    traces = [W.act(a).trace() for a in range(n)]
    eps_vals = [S.eps_of({a: F.one}) for a in range(n)]
    if traces == eps_vals:
        sign = 1
    elif traces == [-v for v in eps_vals]:
        sign = -1
    assert sign is not None, "transported eps is not +-eps"
    # pi side: pi acts on W (x) W as sign * swap
    from .tencat import symmetry as cat_symmetry

    swap = cat_symmetry(W.carrier, W.carrier).scale(F(sign))
    assert _acts_as(W, W, S.pi, swap, F), "pi does not act as the matching swap"
    return sign


def rebased_module(weil: WeilData, seed: int = 1) -> Module:
    """Conjugate the oscillator action by a random invertible matrix."""
    import random

    rng = random.Random(seed)
    F = weil.tga.field
    k = weil.dim
    while True:
        entries = [
            (i, j, F(rng.randrange(-3, 4))) for i in range(k) for j in range(k)
        ]
        P = Mor.from_entries(F, k, k, entries)
        if P.is_invertible():
            break
    Pinv = P.inverse()
    base = weil.module

    def act_fn(i):
        return P.compose(base.act(i)).compose(Pinv)

    return Module(weil.tga.alg, plain_obj(vec(F), k), act_fn)


# ---------------------------------------------------------------------------
# the Weil representation of SL_2(F_q) at d = 2


class WeilLift:
    def __init__(self, group, projective, genuine, scalars, normalized):
        self.group = group
        self.projective = projective  # element -> normalized intertwiner
        self.genuine = genuine  # element -> matrix, or None
        self.scalars = scalars
        self.normalized = normalized


def weil_lift(tga: TwistedGroupAlgebra, weil: WeilData = None) -> WeilLift:
    """Per-element intertwiners rho(g), plus an exact scalar normalization
    of the two generators when one exists in the scalar field."""
    assert tga.V.d == 2, "the lift targets SL_2 = Sp_2"
    if weil is None:
        weil = schrodinger_module(tga)
    V = tga.V
    F = tga.field
    G = sl2(V.ff)
    W = weil.module
    k = W.dim
    gens = tga.alg.gen_indices()

    def solve_rho(g):
        src = [W.act(i) for i in gens]
        perm = tga.element_permutation(g)
        tgt = [W.act_elem(perm.apply({i: F.one})) for i in gens]
        sols = intertwiner_space(F, src, tgt, k, k)
        if len(sols) != 1:
            raise AssertionError(
                f"intertwiner space for g has dimension {len(sols)}, expected 1"
            )
        rho = sols[0]
        # deterministic normalization: first nonzero entry equals 1
        c = None
        for j in range(k):
            col = rho.cols.get(j)
            if col:
                i = min(col)
                c = col[i]
                break
        rho = rho.scale(c.inverse())
        assert rho.is_invertible()
        return rho

    projective = {g: solve_rho(g) for g in G.elements}
    # defect scalars on generator multiplication, via BFS words
    genuine = None
    scalars = None
    normalized = False
    sol = _normalize_lift(G, projective, F)
    if sol is not None:
        zS, zT = sol
        gen_mats = [projective[G.generators[0]].scale(zS),
                    projective[G.generators[1]].scale(zT)]
        genuine = {}
        ok = True
        for g in G.elements:
            m = Mor.identity(F, k)
            for pos in G.word(g):
                m = m.compose(gen_mats[pos])
            genuine[g] = m
        for g in G.elements:
            for h in G.elements:
                if genuine[G.mul(g, h)] != genuine[g].compose(genuine[h]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            normalized = True
            scalars = (zS, zT)
        else:
            genuine = None
    return WeilLift(G, projective, genuine, scalars, normalized)


def _normalize_lift(G: FiniteGroup, projective, F):
    """Find generator scalars making the projective lift genuine.

    Propagates formal scalars z_S, z_T along the BFS tree and reduces the
    resulting multiplicative constraints by integer elimination; the final
    root extractions run in the scalar field and may legitimately fail.
    """
    ngen = len(G.generators)
    assert ngen == 2
    # lift(g) = kappa_g * zS^a * zT^b * rho_word(g); on the tree kappa = 1
    expo = {G.identity: (0, 0)}
    kappa = {G.identity: F.one}
    mats = {G.identity: Mor.identity(F, projective[G.identity].src_dim)}
    order = sorted(G.elements, key=lambda g: len(G.word(g)))
    for g in order:
        if g == G.identity:
            continue
        w = G.word(g)
        head, last = w[:-1], w[-1]
        prev = G.identity
        for pos in head:
            prev = G.mul(prev, G.generators[pos])
        ea, eb = expo[prev]
        expo[g] = (ea + (1 if last == 0 else 0), eb + (1 if last == 1 else 0))
        kappa[g] = kappa[prev]
        mats[g] = mats[prev].compose(projective[G.generators[last]])
    # constraints: for each (g, s): lift(g) lift(s) = lift(gs)
    eqs = []
    for g in G.elements:
        for pos in range(ngen):
            s = G.generators[pos]
            gs = G.mul(g, s)
            lhs = mats[g].compose(projective[s])
            rhs = mats[gs]
            c = _matrix_ratio(lhs, rhs)
            if c is None:
                return None
            ea = expo[g][0] + (1 if pos == 0 else 0) - expo[gs][0]
            eb = expo[g][1] + (1 if pos == 1 else 0) - expo[gs][1]
            # constraint: zS^ea zT^eb = kappa_gs / (kappa_g c)
            val = kappa[gs] / (kappa[g] * c)
            if ea == 0 and eb == 0:
                if val != F.one:
                    return None
                continue
            eqs.append((ea, eb, val))
    return _solve_two_unknown_power_system(eqs, F)


def _matrix_ratio(a: Mor, b: Mor):
    """c with a == c * b, or None."""
    for j, col in b.cols.items():
        for i, v in col.items():
            w = a.entry(i, j)
            c = w / v
            return c if a == b.scale(c) else None
    return None


def _solve_two_unknown_power_system(eqs, F):
    """Solve zS^a zT^b = v exactly; returns one solution or None."""
    eqs = [e for e in eqs if e[0] or e[1]]
    if not eqs:
        return F.one, F.one

    def combine(e1, e2):
        # Bezout on the first exponent
        a1, b1, v1 = e1
        a2, b2, v2 = e2
        g, x, y = _ext_gcd(a1, a2)
        comb = (g, x * b1 + y * b2, _powv(v1, x, F) * _powv(v2, y, F))
        l1 = a1 // g
        l2 = a2 // g
        resid = (0, b1 * l2 - b2 * l1, _powv(v1, l2, F) * _powv(v2, -l1, F))
        return comb, resid

    first = []
    rest = []
    for e in eqs:
        if e[0]:
            first.append(e)
        else:
            rest.append(e)
    while len(first) > 1:
        comb, resid = combine(first[0], first[1])
        first = [comb] + first[2:]
        if resid[1]:
            rest.append(resid)
        elif resid[2] != F.one:
            return None
    # reduce the zT-only equations to a single one
    while len(rest) > 1:
        a1, b1, v1 = rest[0]
        a2, b2, v2 = rest[1]
        g, x, y = _ext_gcd(b1, b2)
        comb = (0, g, _powv(v1, x, F) * _powv(v2, y, F))
        l1, l2 = b1 // g, b2 // g
        chk = _powv(v1, l2, F) * _powv(v2, -l1, F)
        if chk != F.one:
            return None
        rest = [comb] + rest[2:]
    zT_candidates = [F.one]
    if rest:
        _, b, v = rest[0]
        if b < 0:
            b, v = -b, v.inverse()
        zT_candidates = nth_roots(v, b)
        if not zT_candidates:
            return None
    for zT in zT_candidates:
        if first:
            a, b, v = first[0]
            tv = v * (zT ** (-b))
            if a < 0:
                a, tv = -a, tv.inverse()
            zs_roots = nth_roots(tv, a)
            for zS in zs_roots:
                if _check_power_system(eqs, zS, zT, F):
                    return zS, zT
        else:
            if _check_power_system(eqs, F.one, zT, F):
                return F.one, zT
    return None


def _check_power_system(eqs, zS, zT, F):
    for a, b, v in eqs:
        if _powv(zS, a, F) * _powv(zT, b, F) != v:
            return False
    return True


def _powv(v, n, F):
    return v**n if n >= 0 else v.inverse() ** (-n)


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------------------
# character identities


def fixed_space_dim(gmat, ff: FiniteField) -> int:
    """dim ker(g - 1) on F_q^2."""
    rows = [
        [gmat[0][0] - ff.one, gmat[0][1]],
        [gmat[1][0], gmat[1][1] - ff.one],
    ]
    rank = 0
    if any(rows[0]):
        rank += 1
        piv = 0 if rows[0][0] else 1
        f = rows[1][piv] * rows[0][piv].inverse()
        rows[1] = [a - f * b for a, b in zip(rows[1], rows[0])]
    if any(rows[1]):
        rank += 1
    return 2 - rank


def char_identity_checks(tga: TwistedGroupAlgebra, lift: WeilLift = None) -> dict:
    """Scalar-free product identity, and the fourth-power identity when a
    genuine lift exists.

    part 1: tr(rho_g) tr(rho_g^{-1}) = q^(dim Fix(g)) for every g, invariant
    under rescaling rho_g.  part 2 (genuine lift): tr(rho_g)^4 = q^(2 dim
    Fix(g)), the character shadow of W^(x4) = A^(x2).
    """
    if lift is None:
        lift = weil_lift(tga)
    F = tga.field
    q = F(tga.V.q)
    part1 = True
    part2 = None
    for g in lift.group.elements:
        rho = lift.projective[g]
        chi = rho.trace()
        chi_inv = rho.inverse().trace()
        fx = fixed_space_dim(g, tga.V.ff)
        if chi * chi_inv != q**fx:
            part1 = False
    if lift.normalized:
        part2 = True
        for g in lift.group.elements:
            chi = lift.genuine[g].trace()
            fx = fixed_space_dim(g, tga.V.ff)
            if chi**4 != q ** (2 * fx):
                part2 = False
    return {
        "part1_all_elements": part1,
        "normalized": lift.normalized,
        "part2_fourth_power": part2,
        "order": lift.group.order,
    }
