"""Univariate polynomials over finite fields: arithmetic, factorization
utilities (squarefree / distinct-degree / equal-degree), and relative field
extensions F[y]/(h) used as splitting fields.

Hot paths (splitting degrees, arithmetic in large extensions) run on a
flattened numpy representation over the prime field; everything else is plain
Python over integer-encoded coefficients.
"""

from __future__ import annotations

import random
import re

import numpy as np

from .errors import (PolynomialError, FieldError, IncompatibleFieldsError,
                     CapExceededError, ParseError)
from .ff import FF, FFElement, embed, prime_factors, factorint

_ENGINE_MIN_DEGREE = 32  # below this, pure-Python polynomial arithmetic wins

DEFAULT_SEED = 0


class UniPoly:
    """Polynomial over one field, coefficients encoded constant-first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        vals = []
        for c in coeffs:
            if isinstance(c, FFElement):
                if c.field != field:
                    raise IncompatibleFieldsError("coefficient from a different field")
                vals.append(c.val)
            else:
                vals.append(c)
        while vals and not vals[-1]:
            vals.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, *a):
        raise AttributeError("UniPoly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, e, c=1):
        return cls(field, (0,) * e + (c,))

    # -- basics ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i <= self.degree else 0

    def leading(self) -> int:
        if not self.coeffs:
            raise PolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add(out[i], c)
        return UniPoly(f, out)

    def __sub__(self, other):
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = [f.sub(self.coeff(i), other.coeff(i)) for i in range(n)]
        return UniPoly(f, out)

    def __neg__(self):
        f = self.field
        return UniPoly(f, [f.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        f = self.field
        if isinstance(other, int):
            other = UniPoly(f, (f.const(other),))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(f)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = f.add(out[i + j], f.mul(ai, bj))
        return UniPoly(f, out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        f = self.field
        c = c.val if isinstance(c, FFElement) else c
        return UniPoly(f, [f.mul(c, a) for a in self.coeffs])

    def shift(self, e: int) -> "UniPoly":
        """Multiply by x^e."""
        if not self.coeffs:
            return self
        return UniPoly(self.field, (0,) * e + self.coeffs)

    def __divmod__(self, other):
        f = self.field
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        inv_lead = f.inv(other.leading())
        q = [0] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                c = f.mul(c, inv_lead)
                q[i - d] = c
                for j, oc in enumerate(other.coeffs):
                    if oc:
                        r[i - d + j] = f.sub(r[i - d + j], f.mul(c, oc))
        return UniPoly(f, q), UniPoly(f, r[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        if self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other) -> "UniPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def derivative(self) -> "UniPoly":
        f = self.field
        p = f.p
        out = []
        for i in range(1, len(self.coeffs)):
            mult = i % p
            out.append(f.mul(f.const(mult), self.coeffs[i]) if mult else 0)
        return UniPoly(f, out)

    def pow_mod(self, e: int, mod: "UniPoly") -> "UniPoly":
        out = UniPoly.one(self.field)
        base = self % mod
        while e:
            if e & 1:
                out = (out * base) % mod
            base = (base * base) % mod
            e >>= 1
        return out

    def __call__(self, z):
        """Evaluate at z (an FFElement of this field or an extension of it)."""
        if isinstance(z, FFElement) and z.field != self.field:
            target = z.field
            acc = target.zero
            for c in reversed(self.coeffs):
                ce = embed(FFElement(self.field, c), target)
                acc = acc * z + ce
            return acc
        zval = z.val if isinstance(z, FFElement) else z
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, zval), c)
        return FFElement(f, acc)

    def map_field(self, target) -> "UniPoly":
        """Coefficientwise embedding into a larger field."""
        if target == self.field:
            return self
        return UniPoly(target, [embed(FFElement(self.field, c), target).val
                                for c in self.coeffs])

    # -- rendering -------------------------------------------------------------

    def __repr__(self):
        return self.to_str()

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = f.element_str(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = var if i == 1 else f"{var}^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)

    _TERM_RE = re.compile(r"^(?:(?P<coef>[^*]+?)\s*\*)?\s*(?P<var>[a-zA-Z]+)"
                          r"(?:\^(?P<exp>\d+))?$")

    @classmethod
    def parse(cls, text: str, field, var: str = "x") -> "UniPoly":
        """Parse the grammar  c0 + c1*x + ... + ck*x^k  (terms in any order)."""
        s = text.replace("-", "+-").replace(" ", "")
        if s.startswith("+"):
            s = s[1:]
        if not s:
            raise ParseError("empty polynomial literal")
        coeffs: dict = {}
        for term in s.split("+"):
            if not term:
                raise ParseError(f"dangling sign in {text!r}")
            neg = term.startswith("-")
            if neg:
                term = term[1:]
            m = cls._TERM_RE.match(term)
            if m and m.group("var") == var:
                e = int(m.group("exp") or 1)
                ctext = m.group("coef") or "1"
            elif m and m.group("var") == "g" and m.group("coef") is None:
                # a bare generator power is a constant term
                e, ctext = 0, term
            else:
                e, ctext = 0, term
            try:
                c = field.element_parse(ctext)
            except FieldError as exc:
                raise ParseError(str(exc)) from exc
            if neg:
                c = field.neg(c)
            coeffs[e] = field.add(coeffs.get(e, 0), c)
        out = [0] * (max(coeffs) + 1)
        for e, c in coeffs.items():
            out[e] = c
        return cls(field, out)


# ---------------------------------------------------------------------------
# flattened numpy engine


class _FlatPolyEngine:
    """Vectorized arithmetic for polynomials over F = GF(p^e), elements
    flattened to GF(p) digit grids of shape (length, e)."""

    def __init__(self, base: FF):
        self.F = base
        self.p = base.p
        self.e = base.k
        self.W = 2 * self.e - 1
        rows = []
        cur = (1,)
        from .ff import _dp_mulmod

        for _ in range(self.W):
            rows.append(list(cur) + [0] * (self.e - len(cur)))
            cur = _dp_mulmod(cur, (0, 1), base.modulus, self.p)
        self.u_red = np.array(rows, dtype=np.int64)      # (W, e)

    def decode(self, coeffs) -> np.ndarray:
        p = self.p
        arr = np.zeros((len(coeffs), self.e), dtype=np.int64)
        for idx, v in enumerate(coeffs):
            i = 0
            while v:
                v, r = divmod(v, p)
                arr[idx, i] = r
                i += 1
        return arr

    def encode(self, arr) -> list:
        p = self.p
        out = []
        for row in arr.tolist():
            val = 0
            for c in reversed(row):
                val = val * p + c
            out.append(val)
        return out

    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Full product of two coefficient grids."""
        la, lb = A.shape[0], B.shape[0]
        if la == 0 or lb == 0:
            return np.zeros((0, self.e), dtype=np.int64)
        if self.e == 1:
            prod = np.convolve(A[:, 0], B[:, 0]) % self.p
            return prod[:, None]
        W = self.W
        a = np.zeros((la, W), dtype=np.int64)
        a[:, : self.e] = A
        b = np.zeros((lb, W), dtype=np.int64)
        b[:, : self.e] = B
        flat = np.convolve(a.ravel(), b.ravel())
        need = (la + lb - 1) * W
        if flat.size < need:
            flat = np.pad(flat, (0, need - flat.size))
        grid = flat[:need].reshape(la + lb - 1, W)
        return (grid @ self.u_red) % self.p


class _ModEngine:
    """Fixed-modulus arithmetic over F via one precomputed reduction matrix."""

    def __init__(self, engine: _FlatPolyEngine, mod_coeffs: tuple):
        self.engine = engine
        self.F = engine.F
        self.mod = tuple(mod_coeffs)            # monic, F-encodings
        self.deg = len(mod_coeffs) - 1
        if self.deg < 1 or self.mod[-1] != 1:
            raise PolynomialError("modulus must be monic of positive degree")
        self.dim = self.deg * engine.e          # GF(p)-dimension
        self._build_reduction()
        self._power_maps: dict = {}

    def _build_reduction(self):
        F, e, deg = self.F, self.engine.e, self.deg
        # x^j mod m for j < 2*deg-1, as F-encoding rows
        rows_f = []
        cur = [1] + [0] * (deg - 1)
        for j in range(2 * deg - 1):
            rows_f.append(list(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(deg):
                    cur[i] = F.sub(cur[i], F.mul(top, self.mod[i]))
        # expand each row by u^i and flatten to GF(p)
        blocks = np.zeros((2 * deg - 1, e, deg * e), dtype=np.int64)
        for j, row in enumerate(rows_f):
            base_digits = self.engine.decode(row)          # (deg, e)
            acc = row
            for i in range(e):
                digits = self.engine.decode(acc) if i else base_digits
                blocks[j, i] = digits.reshape(-1)
                if i + 1 < e:
                    acc = [F.mul(F.p if F.k > 1 else 1, c) for c in acc]  # * u
        self.red = blocks.reshape((2 * deg - 1) * e, deg * e)

    # -- conversions ----------------------------------------------------------

    def to_np(self, coeffs) -> np.ndarray:
        arr = self.engine.decode(list(coeffs) + [0] * (self.deg - len(coeffs)))
        return arr[: self.deg]

    def from_np(self, arr) -> list:
        return self.engine.encode(arr)

    def flatten(self, arr) -> np.ndarray:
        return arr.reshape(-1)

    def unflatten(self, vec) -> np.ndarray:
        return vec.reshape(self.deg, self.engine.e)

    # -- arithmetic ------------------------------------------------------------

    def mulmod(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        full = self.engine.mul(A, B)                       # (2*deg-1, e) at most
        rows = full.shape[0]
        if rows < 2 * self.deg - 1:
            full = np.vstack([full, np.zeros((2 * self.deg - 1 - rows,
                                              self.engine.e), dtype=np.int64)])
        flat = full.reshape(-1) @ self.red
        return self.unflatten(flat % self.p)

    @property
    def p(self):
        return self.engine.p

    def powmod(self, A: np.ndarray, exp: int) -> np.ndarray:
        out = self.to_np([1])
        base = A
        while exp:
            if exp & 1:
                out = self.mulmod(out, base)
            base = self.mulmod(base, base)
            exp >>= 1
        return out

    def power_map(self, t: int) -> np.ndarray:
        """GF(p)-matrix of  g -> g^(p^t) mod m  on F[x]/(m).  Semilinear in
        general; F-linear when p^t is a power of |F|."""
        cached = self._power_maps.get(t)
        if cached is not None:
            return cached
        F, e, deg = self.F, self.engine.e, self.deg
        w = self.powmod(self.to_np([0, 1]), F.p**t)        # x^(p^t) mod m
        cols = np.zeros((deg, e, self.dim), dtype=np.int64)
        wj = self.to_np([1])
        u_pt = F.frob(F.p if F.k > 1 else 1, t) if e > 1 else 1  # u^(p^t)
        for j in range(deg):
            # column for u^i x^j: (u^(p^t))^i * wj
            scaled = wj
            for i in range(e):
                cols[j, i] = self.flatten(scaled)
                if i + 1 < e:
                    enc = self.from_np(scaled)
                    enc = [F.mul(u_pt, c) for c in enc]
                    scaled = self.to_np(enc)
            if j + 1 < deg:
                wj = self.mulmod(wj, w)
        mat = cols.reshape(self.dim, self.dim).T
        self._power_maps[t] = mat
        return mat

    def apply(self, mat: np.ndarray, A: np.ndarray) -> np.ndarray:
        return self.unflatten((mat @ self.flatten(A)) % self.p)


def _mod_engine_for(poly: UniPoly) -> _ModEngine:
    eng = _FlatPolyEngine(poly.field)
    return _ModEngine(eng, poly.monic().coeffs)


# ---------------------------------------------------------------------------
# relative extensions


class FieldExtension:
    """E = F[y]/(h): the degree-s extension of an absolute field F.

    Elements are length-s tuples of F-encodings.  Implements the same
    arithmetic protocol as FF so FFElement wrappers work transparently.
    """

    def __init__(self, base: FF, h: UniPoly):
        if h.field != base:
            raise IncompatibleFieldsError("modulus not over the base field")
        if h.degree < 2:
            raise FieldError("relative extension needs degree >= 2 (use the base field)")
        hm = h.monic()
        self.base = base
        self.h = hm
        self.s = hm.degree
        self.p = base.p
        self.abs_degree = base.k * self.s
        self.size = base.size**self.s
        self._eng = _ModEngine(_FlatPolyEngine(base), hm.coeffs)

    # -- identity ----------------------------------------------------------

    @property
    def key(self):
        return ("ext", self.base.key, self.h.coeffs)

    def __eq__(self, other):
        return isinstance(other, FieldExtension) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.p}^{self.abs_degree}) = {self.base!r}[y]/({self.h.to_str('y')})"

    # -- elements ------------------------------------------------------------

    def const(self, n: int):
        return (n % self.p,) + (0,) * (self.s - 1)

    def element(self, val) -> FFElement:
        if isinstance(val, FFElement):
            if val.field == self:
                return val
            return self.embed_from(val)
        if isinstance(val, int):
            return FFElement(self, self.const(val))
        val = tuple(val)
        if len(val) != self.s:
            val = val + (0,) * (self.s - len(val))
        return FFElement(self, val)

    def __call__(self, val):
        return self.element(val)

    @property
    def zero(self):
        return FFElement(self, (0,) * self.s)

    @property
    def one(self):
        return FFElement(self, self.const(1))

    def gen_y(self) -> FFElement:
        """The class of y: a root of the defining modulus h."""
        return FFElement(self, (0, 1) + (0,) * (self.s - 2))

    def embed_from(self, x: FFElement) -> FFElement:
        src = x.field
        if src == self:
            return x
        if isinstance(src, FieldExtension):
            raise IncompatibleFieldsError("no embeddings between relative extensions")
        into_base = embed(x, self.base) if src != self.base else x
        return FFElement(self, (into_base.val,) + (0,) * (self.s - 1))

    def to_base(self, a) -> FFElement:
        """Inverse of embed_from on constants; error if a is not in F."""
        val = a.val if isinstance(a, FFElement) else a
        if any(val[1:]):
            raise FieldError("element does not lie in the base field")
        return FFElement(self.base, val[0])

    # -- arithmetic on raw tuples ---------------------------------------------

    def add(self, a, b):
        F = self.base
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.base
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.base
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        eng = self._eng
        out = eng.mulmod(eng.to_np(a), eng.to_np(b))
        return tuple(eng.from_np(out))

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        F = self.base
        # extended Euclid on y-polynomials over F
        r0, r1 = list(self.h.coeffs), list(a)
        while r1 and not r1[-1]:
            r1.pop()
        t0, t1 = [], [1]
        while True:
            if len(r1) == 1:
                c = F.inv(r1[0])
                out = [F.mul(c, v) for v in t1]
                return tuple(out + [0] * (self.s - len(out)))
            # divmod(r0, r1)
            d = len(r1) - 1
            inv_lead = F.inv(r1[-1])
            rem = list(r0)
            quo = [0] * max(1, len(rem) - d)
            for i in range(len(rem) - 1, d - 1, -1):
                c = rem[i]
                if c:
                    c = F.mul(c, inv_lead)
                    quo[i - d] = c
                    for j, oc in enumerate(r1):
                        if oc:
                            rem[i - d + j] = F.sub(rem[i - d + j], F.mul(c, oc))
            rem = rem[:d]
            while rem and not rem[-1]:
                rem.pop()
            if not rem:
                raise ZeroDivisionError("element not invertible (modulus reducible?)")
            # t update: t0 - quo*t1
            prod = [0] * (len(quo) + len(t1) - 1) if t1 else []
            for i, qc in enumerate(quo):
                if qc:
                    for j, tc in enumerate(t1):
                        if tc:
                            prod[i + j] = F.add(prod[i + j], F.mul(qc, tc))
            newt = [F.sub(t0[i] if i < len(t0) else 0,
                          prod[i] if i < len(prod) else 0)
                    for i in range(max(len(t0), len(prod)))]
            r0, r1, t0, t1 = r1, rem, t1, newt

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        eng = self._eng
        out = eng.powmod(eng.to_np(a), e)
        return tuple(eng.from_np(out))

    def frob_p(self, a, t: int):
        """a^(p^t) via the cached linear map."""
        t %= self.abs_degree
        if t == 0:
            return tuple(a)
        eng = self._eng
        mat = eng.power_map(t)
        return tuple(eng.from_np(eng.apply(mat, eng.to_np(a))))

    def fixed_by(self, a, t: int) -> bool:
        """Whether a^(p^t) == a, i.e. a lies in the subfield of size p^t."""
        return self.frob_p(a, t) == tuple(a)

    def order_of(self, a) -> int:
        if not any(a):
            raise FieldError("order of zero is undefined")
        n = self.size - 1
        order = n
        for ell in factorint(n):
            while order % ell == 0 and self.pow(a, order // ell) == self.const(1):
                order //= ell
        return order

    # -- rendering -------------------------------------------------------------

    def element_str(self, a) -> str:
        F = self.base
        parts = []
        for j, c in enumerate(a):
            if not c:
                continue
            cs = F.element_str(c)
            if j == 0:
                parts.append(cs)
            else:
                ys = "y" if j == 1 else f"y^{j}"
                parts.append(ys if cs == "1" else f"{cs}*{ys}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# factorization machinery


def _require_poly(f: UniPoly, min_degree: int = 1):
    if f.degree < min_degree:
        raise PolynomialError(f"need degree >= {min_degree}, got {f.to_str()!r}")


def _pth_root(f: UniPoly) -> UniPoly:
    """For f = g(x^p), recover g (coefficientwise p-th roots)."""
    F = f.field
    p = F.p
    root_exp = F.size // p  # c^(size/p) is the p-th root in GF(size)
    out = [F.pow(f.coeff(i), root_exp) for i in range(0, f.degree + 1, p)]
    return UniPoly(F, out)


def squarefree_decomposition(f: UniPoly) -> list:
    """[(g_i, m_i)] with f = lc * prod g_i^{m_i}, the g_i squarefree monic
    and pairwise coprime."""
    _require_poly(f)
    f = f.monic()
    p = f.field.p
    out = []

    def recurse(poly, mult):
        d = poly.derivative()
        if not d:
            recurse(_pth_root(poly), mult * p)
            return
        c = poly.gcd(d)
        w = poly // c
        m = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), m * mult))
            w = y
            c = c // y
            m += 1
        if c.degree > 0:
            recurse(_pth_root(c), mult * p)

    recurse(f, 1)
    out.sort(key=lambda t: (t[1], t[0].coeffs))
    return out


def _ddf(g: UniPoly) -> list:
    """Distinct-degree split of squarefree monic g: [(d, product_of_degree_d)]."""
    F = g.field
    out = []
    rem = g
    x = UniPoly.x(F)
    h = x
    d = 0
    while rem.degree > 0 and 2 * (d + 1) <= rem.degree:
        d += 1
        h = h.pow_mod(F.size, rem)
        part = rem.gcd(h - x)
        if part.degree > 0:
            out.append((d, part))
            rem = rem // part
            h = h % rem
    if rem.degree > 0:
        out.append((rem.degree, rem))
    return out


def _ddf_degrees_engine(g: UniPoly) -> list:
    """Degrees-with-multiplicity of squarefree g via the flattened engine."""
    F = g.field
    eng = _mod_engine_for(g)
    P = eng.power_map(F.k)
    x_np = eng.to_np([0, 1])
    x_flat = eng.flatten(x_np).copy()
    v = x_flat.copy()
    out = []
    rem = g.monic()
    d = 0
    while rem.degree > 0:
        d += 1
        v = (P @ v) % eng.p
        if 2 * d > rem.degree:
            out.append((rem.degree, rem))
            break
        h = UniPoly(F, eng.from_np(eng.unflatten(v)))
        part = rem.gcd(h - UniPoly.x(F))
        if part.degree > 0:
            out.append((d, part))
            rem = rem // part
    return out


def factor_degrees(f: UniPoly) -> list:
    """Sorted degrees (with multiplicity) of the irreducible factors of f."""
    _require_poly(f)
    degrees = []
    for g, mult in squarefree_decomposition(f):
        use_engine = (g.degree >= _ENGINE_MIN_DEGREE
                      and g.field.size <= (1 << 16))
        parts = _ddf_degrees_engine(g) if use_engine else _ddf(g)
        for d, prod in parts:
            degrees.extend([d] * ((prod.degree // d) * mult))
    degrees.sort()
    return degrees


def _edf(g: UniPoly, d: int, rng: random.Random) -> list:
    """Split squarefree monic g into its degree-d irreducible factors
    (Cantor-Zassenhaus, deterministic given rng)."""
    F = g.field
    out = []
    stack = [g]
    q_size = F.size
    while stack:
        f = stack.pop()
        if f.degree == d:
            out.append(f.monic())
            continue
        while True:
            v = UniPoly(F, [rng.randrange(q_size) for _ in range(f.degree)])
            if v.degree < 1:
                continue
            if F.p == 2:
                # absolute trace of v
                w = UniPoly.zero(F)
                acc = v % f
                bits = d * F.k
                for _ in range(bits):
                    w = w + acc
                    acc = acc.pow_mod(2, f)
            else:
                w = v.pow_mod((q_size**d - 1) // 2, f) - UniPoly.one(F)
            cand = f.gcd(w)
            if 0 < cand.degree < f.degree:
                stack.append(cand)
                stack.append(f // cand)
                break
    out.sort(key=lambda t: t.coeffs)
    return out


def factor(f: UniPoly, seed: int = DEFAULT_SEED) -> list:
    """Full factorization [(irreducible_monic, multiplicity)], deterministic."""
    _require_poly(f)
    rng = random.Random(seed)
    out = []
    for g, mult in squarefree_decomposition(f):
        for d, prod in _ddf(g):
            for irr in _edf(prod, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return out


def find_roots(f: UniPoly, target=None, seed: int = DEFAULT_SEED) -> list:
    """Roots of f in `target` (default: its own field), sorted by encoding."""
    K = target if target is not None else f.field
    g = f.map_field(K) if K != f.field else f
    _require_poly(g)
    x = UniPoly.x(K)
    xq = x.pow_mod(K.size, g)
    lin = g.gcd(xq - x)
    roots = []
    if lin.degree >= 1:
        rng = random.Random(seed)
        for fac in _edf(lin.monic(), 1, rng):
            roots.append(FFElement(K, K.neg(fac.coeff(0))))
    roots.sort(key=lambda r: r.val)
    return roots


def is_irreducible(f: UniPoly) -> bool:
    """Rabin test; uses the flattened engine on large tabled inputs."""
    _require_poly(f)
    n = f.degree
    if n == 1:
        return True
    F = f.field
    f = f.monic()
    if f.coeff(0) == 0:
        return False
    x = UniPoly.x(F)
    if f.degree >= _ENGINE_MIN_DEGREE and F.size <= (1 << 16):
        eng = _mod_engine_for(f)
        P = eng.power_map(F.k)
        x_flat = eng.flatten(eng.to_np([0, 1])).copy()
        checkpoints = {n // ell for ell in prime_factors(n)}
        v = x_flat.copy()
        for d in range(1, n + 1):
            v = (P @ v) % eng.p
            if d in checkpoints:
                h = UniPoly(F, eng.from_np(eng.unflatten(v)))
                if f.gcd(h - x).degree > 0:
                    return False
            if d < n and np.array_equal(v, x_flat):
                return False
        return np.array_equal(v, x_flat)
    h = x.pow_mod(F.size**n, f)
    if h != x % f:
        return False
    for ell in prime_factors(n):
        h = x.pow_mod(F.size ** (n // ell), f)
        if f.gcd(h - x).degree > 0:
            return False
    return True


def poly_order(f: UniPoly) -> int:
    """Least e with f | x^e - 1, for irreducible f with f(0) != 0."""
    _require_poly(f)
    if f.coeff(0) == 0:
        raise PolynomialError("order undefined: x divides f")
    if not is_irreducible(f):
        raise PolynomialError("order is defined here for irreducible f only")
    F = f.field
    n = F.size**f.degree - 1
    order = n
    x = UniPoly.x(F)
    one = UniPoly.one(F)
    for ell in factorint(n):
        while order % ell == 0 and x.pow_mod(order // ell, f) == one % f:
            order //= ell
    return order


# ---------------------------------------------------------------------------
# splitting degrees of separable polynomials (Frobenius iteration)


def splitting_degree(f: UniPoly, cap: int | None = None) -> int:
    """Degree over F of the splitting field of separable f: the least s with
    x^(|F|^s) = x mod f, equivalently lcm of the factor degrees."""
    _require_poly(f)
    F = f.field
    f = f.monic()
    if f.gcd(f.derivative()).degree != 0:
        raise PolynomialError("splitting_degree needs a squarefree input")
    limit = cap if cap is not None else f.degree
    if f.degree >= _ENGINE_MIN_DEGREE and F.size <= (1 << 16):
        eng = _mod_engine_for(f)
        P = eng.power_map(F.k)
        x_flat = eng.flatten(eng.to_np([0, 1])).copy()
        v = x_flat.copy()
        for s in range(1, limit + 1):
            v = (P @ v) % eng.p
            if np.array_equal(v, x_flat):
                return s
    else:
        x = UniPoly.x(F)
        h = x
        for s in range(1, limit + 1):
            h = h.pow_mod(F.size, f)
            if h == x % f:
                return s
    raise CapExceededError(f"splitting degree exceeds cap {limit}")


def _frobenius_iterates(f: UniPoly, count: int) -> list:
    """[x^(|F|^d) mod f for d = 1..count] as UniPoly values."""
    F = f.field
    out = []
    if f.degree >= _ENGINE_MIN_DEGREE and F.size <= (1 << 16):
        eng = _mod_engine_for(f)
        P = eng.power_map(F.k)
        v = eng.flatten(eng.to_np([0, 1])).copy()
        for _ in range(count):
            v = (P @ v) % eng.p
            out.append(UniPoly(F, eng.from_np(eng.unflatten(v))))
    else:
        h = UniPoly.x(F)
        for _ in range(count):
            h = h.pow_mod(F.size, f)
            out.append(h)
    return out


def degree_s_factor(f: UniPoly, s: int, seed: int = DEFAULT_SEED) -> UniPoly:
    """One monic irreducible factor of degree exactly s of separable f, all of
    whose factor degrees divide s (true for kernels of q-polynomials)."""
    F = f.field
    f = f.monic()
    if f.degree == s:
        return f
    iterates = _frobenius_iterates(f, s)
    x = UniPoly.x(F)
    rem = f
    for ell in prime_factors(s):
        h = iterates[s // ell - 1] % rem
        low = rem.gcd(h - x)
        if low.degree > 0:
            rem = rem // low
    if rem.degree == 0 or rem.degree % s:
        raise PolynomialError("input has no factor of the requested degree")
    if rem.degree == s:
        return rem.monic()
    # several degree-s factors: split by Frobenius traces, deterministically
    rng = random.Random(seed)
    eng = None
    if f.degree >= _ENGINE_MIN_DEGREE and F.size <= (1 << 16):
        eng = _mod_engine_for(f)
        P = eng.power_map(F.k)
    while True:
        v = UniPoly(F, [rng.randrange(F.size) for _ in range(f.degree)])
        if v.degree < 1:
            continue
        if eng is not None:
            vec = eng.flatten(eng.to_np(list(v.coeffs))).copy()
            acc = vec.copy()
            for _ in range(s - 1):
                vec = (P @ vec) % eng.p
                acc = (acc + vec) % eng.p
            w = UniPoly(F, eng.from_np(eng.unflatten(acc)))
        else:
            w = v % f
            term = w
            for _ in range(s - 1):
                term = term.pow_mod(F.size, f)
                w = w + term
        w = w % rem
        for c in range(F.size):
            g = rem.gcd(w - UniPoly(F, (c,)))
            if 0 < g.degree < rem.degree:
                other = rem // g
                rem = g if g.degree <= other.degree else other  # degrees stay multiples of s
                if rem.degree == s:
                    return rem.monic()
                break
