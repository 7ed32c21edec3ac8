"""Exact scalar arithmetic: rationals, number fields and small finite fields.

A number field is a quotient Q[x]/(f) with f monic irreducible; elements are
dense coefficient vectors of Fractions.  Everything is exact; floats are
banned from the whole package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import itertools

Q = Fraction

# ---------------------------------------------------------------------------
# dense polynomial helpers over Q (tuples of Fraction, index = power)


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    n = max(len(a), len(b))
    return _ptrim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pneg(a):
    return tuple(-x for x in a)


def _pscale(a, c):
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] += x * y
    return _ptrim(out)


def _pdivmod(a, b):
    """Euclidean division of polynomials over Q; b must be nonzero."""
    assert b, "division by zero polynomial"
    a = list(a)
    q = [Q(0)] * max(0, len(a) - len(b) + 1)
    inv = Q(1) / b[-1]
    while len(a) >= len(b):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        c = a[-1] * inv
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] -= c * y
        a.pop()
    return _ptrim(q), _ptrim(a)


def _pgcd_ext(a, b):
    """Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = (Q(1),), ()
    t0, t1 = (), (Q(1),)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1)))
        t0, t1 = t1, _padd(t0, _pneg(_pmul(q, t1)))
    if r0:
        lead = r0[-1]
        r0 = _pscale(r0, Q(1) / lead)
        s0 = _pscale(s0, Q(1) / lead)
        t0 = _pscale(t0, Q(1) / lead)
    return r0, s0, t0


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int):
    """Coefficients of the n-th cyclotomic polynomial (exact, recursive)."""
    assert n >= 1
    # x^n - 1 divided by the product of lower cyclotomic polynomials
    num = tuple(Q(-1) if i == 0 else (Q(1) if i == n else Q(0)) for i in range(n + 1))
    den = (Q(1),)
    for d in range(1, n):
        if n % d == 0:
            den = _pmul(den, cyclotomic_poly(d))
    q, r = _pdivmod(num, den)
    assert not r
    return q


# ---------------------------------------------------------------------------
# number fields


class NumberField:
    """Q[x]/(modulus) with modulus monic irreducible over Q."""

    _registry: dict = {}

    def __init__(self, modulus, tags=None):
        modulus = _ptrim(tuple(Q(c) for c in modulus))
        assert len(modulus) >= 2, "modulus must have positive degree"
        assert modulus[-1] == 1, "modulus must be monic"
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.tags = dict(tags or {})
        # reduction of x^k for degree <= k <= 2*degree-2
        n = self.degree
        red = []
        cur = tuple(-c for c in modulus[:-1])  # x^n
        red.append(cur)
        for _ in range(n - 2):
            nxt = [Q(0)] * n
            # multiply cur by x, reduce
            carry = cur[n - 1] if len(cur) == n else Q(0)
            for i in range(n - 1, 0, -1):
                nxt[i] = cur[i - 1] if i - 1 < len(cur) else Q(0)
            nxt[0] = Q(0)
            if carry != 0:
                for i in range(n):
                    nxt[i] += carry * red[0][i] if i < len(red[0]) else 0
            red.append(_ptrim(nxt) if any(nxt) else ())
            cur = tuple(nxt)
        self._xpow = red  # x^(n+k) for k = 0..n-2
        # integer rows (nums, den) of x^k mod f for all k <= 2n-2
        full = []
        for k in range(n):
            full.append((tuple(1 if i == k else 0 for i in range(n)), 1))
        for k in range(n - 1):
            row = tuple(red[k]) + (Q(0),) * (n - len(red[k]))
            den = 1
            for c in row:
                den = den * c.denominator // _gcd_int(den, c.denominator)
            full.append((tuple(int(c * den) for c in row), den))
        self._xpow_full = full
        self.zero = FieldElem(self, (0,) * n, 1)
        self.one = FieldElem(self, (1,) + (0,) * (n - 1), 1)

    # -- element constructors
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.field is self:
                return value
            if value.field.modulus == self.modulus:
                return FieldElem(self, value.coeffs)
            raise ValueError("cannot coerce element between distinct fields")
        if isinstance(value, (int, Fraction)):
            return FieldElem(self, (Q(value),) + (Q(0),) * (self.degree - 1))
        # coefficient sequence
        c = [Q(v) for v in value]
        assert len(c) <= self.degree
        c += [Q(0)] * (self.degree - len(c))
        return FieldElem(self, tuple(c))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        if self.degree == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def elements_are_rational(self):
        return self.degree == 1

    def _reduce(self, c):
        """Reduce a raw coefficient list (length <= 2n-1) mod the modulus."""
        n = self.degree
        if len(c) <= n:
            return tuple(c) + (Q(0),) * (n - len(c))
        out = list(c[:n]) + [Q(0)] * (n - len(c[:n]))
        for k in range(n, len(c)):
            ck = c[k]
            if ck == 0:
                continue
            row = self._xpow[k - n]
            for i, r in enumerate(row):
                if r != 0:
                    out[i] += ck * r
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        if "cyclotomic" in self.tags:
            return f"QQ(zeta_{self.tags['cyclotomic']})"
        return f"NumberField(deg {self.degree})"

    # -- scalar square / nth roots (certificate based, see roots module below)
    def sqrt(self, a: "FieldElem"):
        """Exact square root of a in this field, or None (proven absent)."""
        r = nth_roots(a, 2)
        return r[0] if r else None

    def is_square(self, a: "FieldElem") -> bool:
        return bool(nth_roots(a, 2)) if a != self.zero else True


class FieldElem:
    """Element of a NumberField: dense Fraction coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        o = _coerce(self.field, other)
        return FieldElem(
            self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = _coerce(self.field, other)
        return FieldElem(
            self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs))
        )

    def __rsub__(self, other):
        return _coerce(self.field, other) - self

    def __mul__(self, other):
        o = _coerce(self.field, other)
        a, b = self.coeffs, o.coeffs
        # monomial fast paths dominate the twisted-algebra workloads
        na = [i for i, c in enumerate(a) if c != 0]
        if not na:
            return self.field.zero
        nb = [i for i, c in enumerate(b) if c != 0]
        if not nb:
            return self.field.zero
        field = self.field
        if len(na) == 1 and len(nb) == 1:
            c = a[na[0]] * b[nb[0]]
            row = field._xpow_full[na[0] + nb[0]]
            return FieldElem(field, tuple(c * r if r else r for r in row))
        if len(na) == 1:
            i, ci = na[0], a[na[0]]
            raw = [Q(0)] * (i + nb[-1] + 1)
            for j in nb:
                raw[i + j] = ci * b[j]
            return FieldElem(field, field._reduce(raw))
        if len(nb) == 1:
            j, cj = nb[0], b[nb[0]]
            raw = [Q(0)] * (j + na[-1] + 1)
            for i in na:
                raw[i + j] = a[i] * cj
            return FieldElem(field, field._reduce(raw))
        raw = [Q(0)] * (na[-1] + nb[-1] + 1)
        for i in na:
            ci = a[i]
            for j in nb:
                raw[i + j] += ci * b[j]
        return FieldElem(field, field._reduce(raw))

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.coeffs):
            raise ZeroDivisionError("inverse of zero field element")
        g, s, _ = _pgcd_ext(_ptrim(self.coeffs), self.field.modulus)
        assert g == (Q(1),), "modulus not irreducible or element not invertible"
        return FieldElem(self.field, self.field._reduce(s))

    def __truediv__(self, other):
        return self * _coerce(self.field, other).inverse()

    def __rtruediv__(self, other):
        return _coerce(self.field, other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == _coerce(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.modulus, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        assert self.is_rational(), "element is not rational"
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z" if c != 1 else "z")
            else:
                terms.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        return " + ".join(terms) if terms else "0"


def _coerce(field: NumberField, v) -> FieldElem:
    if isinstance(v, FieldElem):
        if v.field == field:
            return v if v.field is field else FieldElem(field, v.coeffs)
        raise ValueError("field mismatch")
    if isinstance(v, (int, Fraction)):
        return field(v)
    raise TypeError(f"cannot coerce {type(v)} into field element")


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> NumberField:
    """The cyclotomic field Q(zeta_n), presented as Q[x]/(Phi_n)."""
    assert n >= 1
    return NumberField(cyclotomic_poly(n), tags={"cyclotomic": n})


QQ = cyclotomic(1)


def field_hom(src: NumberField, dst: NumberField, gen_image: FieldElem):
    """Q-algebra map src -> dst sending the generator to gen_image.

    The image must be a root of src.modulus; this is asserted.
    """
    val = dst.zero
    for c in reversed(src.modulus):
        val = val * gen_image + dst(c)
    assert val == dst.zero, "gen_image is not a root of the source modulus"

    def hom(x: FieldElem) -> FieldElem:
        assert x.field == src
        out = dst.zero
        for c in reversed(x.coeffs):
            out = out * gen_image + dst(c)
        return out

    return hom


# ---------------------------------------------------------------------------
# integer arithmetic helpers for the root certificates


def _primes():
    yield 2
    n = 3
    while True:
        p = 3
        isp = True
        while p * p <= n:
            if n % p == 0:
                isp = False
                break
            p += 2
        if isp:
            yield n
        n += 2


def _sqrt_mod_p(a: int, p: int):
    """One square root of a mod odd prime p, or None (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _nth_roots_mod_p(a: int, n: int, p: int):
    """All n-th roots of a mod prime p (brute scan; p stays small here)."""
    a %= p
    return [r for r in range(p) if pow(r, n, p) == a]


def _rational_reconstruct(c: int, m: int):
    """Find n/d == c mod m with |n|, d <= sqrt(m/2), or None."""
    c %= m
    r0, r1 = m, c
    s0, s1 = 0, 1
    bound = 1
    while bound * bound * 2 <= m:
        bound += 1
    bound -= 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    # may be a false positive; caller verifies exactly
    return Q(r1, s1) if s1 else None


def _poly_int_eval(coeffs, x, m):
    out = 0
    for c in reversed(coeffs):
        out = (out * x + c) % m
    return out


def _find_split_prime(field: NumberField, skip=(), start_after=2):
    """A prime p where the modulus has deg(f) distinct roots mod p."""
    f = field.modulus
    den = 1
    for c in f:
        den = den * c.denominator // _gcd(den, c.denominator) if c.denominator else den
    fint = [int(c * den) for c in f]
    n = field.degree
    for p in _primes():
        if p <= start_after or p in skip or den % p == 0:
            continue
        if fint[-1] % p == 0:
            continue
        roots = [r for r in range(p) if _poly_int_eval(fint, r, p) == 0]
        if len(set(roots)) == n:
            return p, roots
        if p > 100000:
            raise RuntimeError("no split prime found below bound")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _lift_root(fint, r, p, k):
    """Hensel-lift a simple root r of f mod p to mod p^k."""
    fd = [i * fint[i] for i in range(1, len(fint))]
    mod = p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        fr = _poly_int_eval(fint, r, mod)
        fdr = _poly_int_eval(fd, r, mod)
        r = (r - fr * pow(fdr, -1, mod)) % mod
    return r


def nth_roots(a: FieldElem, n: int, max_prec: int = 64):
    """All solutions r in the field of r**n == a, exactly.

    Certificates in both directions: any returned root is verified by exact
    arithmetic; an empty answer is backed by a nonresidue at a split prime,
    except in the (unobserved) inconclusive case, which raises.
    """
    F = a.field
    if not a:
        return [F.zero]
    if F.degree == 1 and n == 2:
        v = a.coeffs[0]
        if v.numerator > 0:
            nr, dr = _isqrt_exact(v.numerator), _isqrt_exact(v.denominator)
            if nr is not None and dr is not None:
                r = F(Q(nr, dr))
                return [r, -r] if r != -r else [r]
        return []

    # denominator-clearing: r^n = a  <=>  (d r)^n = d^n a for integer d
    den = 1
    for c in a.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    target = a * (Q(den) ** n)

    skip = set()
    inconclusive = True
    for _ in range(6):
        p, roots = _find_split_prime(F, skip=tuple(skip))
        skip.add(p)
        if n % p == 0 or any(
            _eval_elem_mod(target, r, p) == 0 for r in roots
        ):
            continue
        res = [_nth_roots_mod_p(_eval_elem_mod(target, r, p), n, p) for r in roots]
        if any(not rs for rs in res):
            return []  # nonresidue certificate
        inconclusive = False
        found = _roots_by_reconstruction(target, n, p, roots, res, max_prec)
        if found is not None:
            return [FieldElem(F, tuple(c / den for c in r.coeffs)) for r in found]
    if inconclusive:
        raise RuntimeError("root search inconclusive: no usable split prime")
    raise RuntimeError(f"root search undecided for n={n} at precision {max_prec}")


def _isqrt_exact(v: int):
    import math

    r = math.isqrt(v)
    return r if r * r == v else None


def _eval_elem_mod(a: FieldElem, r: int, m: int) -> int:
    out = 0
    for c in reversed(a.coeffs):
        num, dn = c.numerator, c.denominator
        out = (out * r + num * pow(dn, -1, m)) % m
    return out


def _roots_by_reconstruction(a, n, p, roots, residue_roots, max_prec):
    """Reconstruct all n-th roots from componentwise roots mod p^k."""
    F = a.field
    deg = F.degree
    fint = [int(c) for c in F.modulus]  # monic, integral for our fields
    if any(c.denominator != 1 for c in F.modulus):
        den = 1
        for c in F.modulus:
            den = den * c.denominator // _gcd(den, c.denominator)
        fint = [int(c * den) for c in F.modulus]
    for k in (8, 16, 32, max_prec):
        mod = p**k
        lifted = [_lift_root(fint, r, p, k) for r in roots]
        lifted_res = []
        for r, rs in zip(lifted, residue_roots):
            av = _eval_elem_mod(a, r, mod)
            cand = []
            for r0 in rs:
                # Newton-lift r0^n = av from p to p^k
                x = r0
                m2 = p
                while m2 < mod:
                    m2 = min(m2 * m2, mod)
                    fx = (pow(x, n, m2) - av) % m2
                    dfx = n * pow(x, n - 1, m2) % m2
                    x = (x - fx * pow(dfx, -1, m2)) % m2
                cand.append(x)
            lifted_res.append(cand)
        # Vandermonde solve: coefficients of r from its values at the roots
        out = []
        for combo in itertools.product(*lifted_res):
            coeffs = _interp_coeffs(lifted, combo, mod)
            if coeffs is None:
                continue
            rat = [_rational_reconstruct(c, mod) for c in coeffs]
            if any(v is None for v in rat):
                continue
            cand = FieldElem(F, tuple(rat) + (Q(0),) * (deg - len(rat)))
            if cand**n == a and not any(cand == o for o in out):
                out.append(cand)
        if out:
            return out
    return None


def _interp_coeffs(points, values, mod):
    """Solve sum_j c_j x^j = v at the given points, mod `mod`."""
    n = len(points)
    rows = [[pow(x, j, mod) for j in range(n)] + [v % mod] for x, v in zip(points, values)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if _gcd(rows[r][col], mod) == 1:
                piv = r
                break
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], -1, mod)
        rows[col] = [(x * inv) % mod for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % mod for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


# ---------------------------------------------------------------------------
# square-root adjunction


def adjoin_sqrt(field: NumberField, a) -> tuple:
    """Return (K, s, embed) with embed: field -> K a hom and s*s == embed(a).

    If a is already a square, K is the field itself and embed the identity.
    """
    a = field(a)
    assert a, "cannot adjoin a square root of zero"
    r = field.sqrt(a)
    if r is not None:
        return field, r, lambda x: x

    if field.degree == 1:
        v = a.rational_value()
        K = NumberField((-v, 0, 1), tags={"sqrt_of": str(v)})
        s = K.gen
        emb = lambda x: K(x.rational_value())
        return K, s, emb

    # primitive element theta = sqrt(a) + c * gen for the flattened tower
    n2 = 2 * field.degree
    for c in range(1, 32):
        minpoly = _minpoly_theta(field, a, c, n2)
        if minpoly is None:
            continue
        K = NumberField(minpoly, tags={"sqrt_of": "algebraic", "shift": c})
        gen_img, sqrt_img = _tower_images(field, a, c, K)
        if gen_img is None:
            continue
        emb = field_hom(field, K, gen_img)
        assert sqrt_img * sqrt_img == emb(a)
        return K, sqrt_img, emb
    raise RuntimeError("no primitive element found for the quadratic extension")


def _tower_mul(field, a, u, v):
    """Multiply u = (u0, u1), v meaning u0 + u1*sqrt(a) over the field."""
    return (u[0] * v[0] + u[1] * v[1] * a, u[0] * v[1] + u[1] * v[0])


def _minpoly_theta(field, a, c, n2):
    """Minimal polynomial over Q of theta = sqrt(a) + c*gen, if degree 2n."""
    g = field.gen
    theta = (field(c) * g, field.one)  # c*gen + 1*sqrt(a)
    # powers of theta in the 2n-dimensional Q-algebra field[sqrt(a)]
    pows = [(field.one, field.zero)]
    for _ in range(n2):
        pows.append(_tower_mul(field, a, pows[-1], theta))
    # row vectors over Q of length 2n
    def flat(p):
        return list(p[0].coeffs) + list(p[1].coeffs)

    rows = [flat(p) for p in pows]
    # find the monic dependency of degree n2 (must exist; lower degree => retry c)
    dep = _q_dependency(rows)
    if dep is None or len(dep) != n2 + 1 or dep[-1] == 0:
        return None
    lead = dep[-1]
    return tuple(d / lead for d in dep)


def _q_dependency(rows):
    """First linear dependency among the rows (coefficients, exact)."""
    m = len(rows[0])
    basis = []  # list of (row, combo)
    for idx, row in enumerate(rows):
        row = list(row)
        combo = [Q(0)] * len(rows)
        combo[idx] = Q(1)
        for brow, bcombo, piv in basis:
            if row[piv] != 0:
                f = row[piv]
                row = [x - f * y for x, y in zip(row, brow)]
                combo = [x - f * y for x, y in zip(combo, bcombo)]
        piv = next((i for i, x in enumerate(row) if x != 0), None)
        if piv is None:
            return combo[: idx + 1]
        inv = Q(1) / row[piv]
        row = [x * inv for x in row]
        combo = [x * inv for x in combo]
        basis.append((row, combo, piv))
    return None


def _tower_images(field, a, c, K):
    """Images of gen and sqrt(a) inside K = Q(theta), theta = sqrt(a)+c*gen."""
    # Solve for gen as a polynomial in theta by linear algebra over Q.
    n = field.degree
    n2 = 2 * n
    g = field.gen
    theta = (field(c) * g, field.one)
    pows = [(field.one, field.zero)]
    for _ in range(n2 - 1):
        pows.append(_tower_mul(field, a, pows[-1], theta))

    def flat(p):
        return list(p[0].coeffs) + list(p[1].coeffs)

    cols = [flat(p) for p in pows]
    target_gen = flat((g, field.zero))
    target_sq = flat((field.zero, field.one))
    sol_gen = _q_solve(cols, target_gen)
    sol_sq = _q_solve(cols, target_sq)
    if sol_gen is None or sol_sq is None:
        return None, None
    return K(sol_gen), K(sol_sq)


def _q_solve(cols, target):
    """Solve sum_j x_j cols[j] = target over Q; returns x or None."""
    m = len(target)
    n = len(cols)
    aug = [[cols[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    piv_cols = []
    r = 0
    for cidx in range(n):
        pr = next((i for i in range(r, m) if aug[i][cidx] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = Q(1) / aug[r][cidx]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][cidx] != 0:
                f = aug[i][cidx]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(cidx)
        r += 1
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Q(0)] * n
    for i, cidx in enumerate(piv_cols):
        x[cidx] = aug[i][n]
    return x


# ---------------------------------------------------------------------------
# small finite fields F_{p^e}, p odd


class FFElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        o = self.field.coerce(other)
        p = self.field.p
        return FFElem(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self.field.coerce(other))

    def __rsub__(self, other):
        return self.field.coerce(other) - self

    def __mul__(self, other):
        o = self.field.coerce(other)
        return self.field._mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        assert any(self.coeffs), "inverse of zero"
        return self ** (self.field.q - 2)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"FF{self.field.q}{self.coeffs}"


class FiniteField:
    """F_{p^e} for odd prime p, as F_p[y]/(modulus)."""

    def __init__(self, p: int, e: int = 1, modulus=None):
        assert p % 2 == 1 and p > 1, "p must be an odd prime"
        assert all(p % d for d in range(3, int(p**0.5) + 1, 2)), "p must be prime"
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = modulus or self._find_irreducible()
        assert len(self.modulus) == e + 1 and self.modulus[-1] == 1
        self._red = self._reduction_rows()
        self.zero = FFElem(self, (0,) * e)
        self.one = FFElem(self, (1,) + (0,) * (e - 1))
        self._verify_irreducible()

    def _find_irreducible(self):
        p, e = self.p, self.e
        for tail in itertools.product(range(p), repeat=e):
            cand = tuple(tail) + (1,)
            if self._is_irreducible(cand):
                return cand
        raise RuntimeError("no irreducible polynomial found")

    def _is_irreducible(self, poly):
        # brute trial division over F_p; fine for p^e <= a few thousand
        p = self.p
        e = len(poly) - 1

        def pmulmod(a, b):
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
            # reduce mod poly
            for k in range(len(out) - 1, e - 1, -1):
                c = out[k]
                if c:
                    for i in range(e + 1):
                        out[k - e + i] = (out[k - e + i] - c * poly[i]) % p
            return tuple(out[:e])

        # x^(p^e) == x and gcd-degree conditions via distinct-degree shortcut:
        # check x^(p^k) != x for k < e and == for k = e
        x = tuple([0, 1] + [0] * (e - 2)) if e >= 2 else (0,)
        cur = x
        for k in range(1, e + 1):
            nxt = cur
            for _ in range(p.bit_length()):
                pass
            # cur^(p) by repeated squaring on exponent p
            acc = tuple([1] + [0] * (e - 1))
            base, n = cur, p
            while n:
                if n & 1:
                    acc = pmulmod(acc, base)
                base = pmulmod(base, base)
                n >>= 1
            cur = acc
            if k < e and cur == x and e % k == 0:
                return False
            if k == e and cur != x:
                return False
        return True

    def _reduction_rows(self):
        p, e = self.p, self.e
        rows = []
        cur = tuple((-c) % p for c in self.modulus[:e])
        rows.append(cur)
        for _ in range(e - 2):
            nxt = [0] * e
            carry = cur[e - 1]
            for i in range(e - 1, 0, -1):
                nxt[i] = cur[i - 1]
            nxt[0] = 0
            if carry:
                for i in range(e):
                    nxt[i] = (nxt[i] + carry * rows[0][i]) % p
            rows.append(tuple(nxt))
            cur = tuple(nxt)
        return rows

    def _verify_irreducible(self):
        # spot check: the multiplicative group contains an element of full order
        if self.q <= 121:
            orders = set()
            for coeffs in itertools.product(range(self.p), repeat=self.e):
                el = FFElem(self, coeffs)
                if not el:
                    continue
                o, acc = 1, el
                while acc != self.one:
                    acc = acc * el
                    o += 1
                orders.add(o)
            assert max(orders) == self.q - 1, "multiplicative group not cyclic of order q-1"

    def _mul(self, a: FFElem, b: FFElem) -> FFElem:
        p, e = self.p, self.e
        if e == 1:
            return FFElem(self, ((a.coeffs[0] * b.coeffs[0]) % p,))
        raw = [0] * (2 * e - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    raw[i + j] = (raw[i + j] + x * y) % p
        out = list(raw[:e])
        for k in range(e, 2 * e - 1):
            c = raw[k]
            if c:
                row = self._red[k - e]
                for i in range(e):
                    out[i] = (out[i] + c * row[i]) % p
        return FFElem(self, tuple(out))

    def coerce(self, v) -> FFElem:
        if isinstance(v, FFElem):
            assert v.field is self
            return v
        if isinstance(v, int):
            return FFElem(self, (v % self.p,) + (0,) * (self.e - 1))
        c = tuple(int(x) % self.p for x in v)
        assert len(c) == self.e
        return FFElem(self, c)

    def __call__(self, v):
        return self.coerce(v)

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.e):
            yield FFElem(self, coeffs)

    def frobenius(self, a: FFElem) -> FFElem:
        return a**self.p

    def __repr__(self):
        return f"GF({self.q})"


def ff_trace(K: FiniteField, a: FFElem) -> FFElem:
    """Trace to the prime field: a + a^p + ... + a^(p^(e-1))."""
    a = K.coerce(a)
    out, cur = K.zero, a
    for _ in range(K.e):
        out = out + cur
        cur = K.frobenius(cur)
    assert not any(out.coeffs[1:]), "trace must land in the prime field"
    return out


def trace_int(K: FiniteField, a) -> int:
    """Trace as an integer in [0, p)."""
    return ff_trace(K, a).coeffs[0]
