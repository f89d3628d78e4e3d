"""q-polynomials: construction, evaluation, composition, q-associates,
projective polynomials, root spaces, and irreducibility of L(x)/x."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import _linalg
from .errors import (FieldError, IncompatibleFieldsError, InseparableError,
                     PolynomialError, ParseError)
from .ff import FF, FFElement, field_create, embed, subfield_degree_of_q
from .polys import (UniPoly, FieldExtension, splitting_degree, degree_s_factor,
                    is_irreducible)


class LinearizedPoly:
    """a_0*x + a_1*x^q + ... + a_n*x^(q^n) with coefficients in one field
    containing GF(q).  The zero polynomial is allowed as a degenerate value."""

    __slots__ = ("q", "field", "coeffs")

    def __init__(self, q: int, field, coeffs):
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
        subfield_degree_of_q(field, q)  # GF(q) must sit inside the coefficient field
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, *a):
        raise AttributeError("LinearizedPoly is immutable")

    # -- basics ---------------------------------------------------------------

    @property
    def qdeg(self) -> int:
        """The q-degree n (-1 for the zero polynomial)."""
        return len(self.coeffs) - 1

    @property
    def a0(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if i <= self.qdeg else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, LinearizedPoly) and self.q == other.q
                and self.field == other.field and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.q, self.field.key, self.coeffs))

    def __add__(self, other):
        self._check_compat(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return LinearizedPoly(self.q, f,
                              [f.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other):
        self._check_compat(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return LinearizedPoly(self.q, f,
                              [f.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def scale(self, c) -> "LinearizedPoly":
        f = self.field
        c = c.val if isinstance(c, FFElement) else c
        return LinearizedPoly(self.q, f, [f.mul(c, a) for a in self.coeffs])

    def _check_compat(self, other):
        if not isinstance(other, LinearizedPoly) or other.q != self.q:
            raise IncompatibleFieldsError("q-polynomials with different q")
        if other.field != self.field:
            raise IncompatibleFieldsError("q-polynomials over different fields")

    # -- conversions ------------------------------------------------------------

    def to_unipoly(self) -> UniPoly:
        """The underlying ordinary polynomial of degree q^n."""
        if not self.coeffs:
            return UniPoly.zero(self.field)
        out = [0] * (self.q**self.qdeg + 1)
        for i, c in enumerate(self.coeffs):
            out[self.q**i] = c
        return UniPoly(self.field, out)

    def lx(self) -> UniPoly:
        """L(x)/x, of degree q^n - 1."""
        if not self.coeffs:
            raise PolynomialError("zero polynomial")
        out = [0] * (self.q**self.qdeg)
        for i, c in enumerate(self.coeffs):
            out[self.q**i - 1] = c
        return UniPoly(self.field, out)

    def embedded_into(self, F) -> "LinearizedPoly":
        if F == self.field:
            return self
        coeffs = [embed(FFElement(self.field, c), F).val for c in self.coeffs]
        return LinearizedPoly(self.q, F, coeffs)

    # -- evaluation ---------------------------------------------------------------

    def __call__(self, z):
        return lin_eval(self, z)

    # -- rendering ------------------------------------------------------------------

    def __repr__(self):
        return self.to_str()

    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        f = self.field
        parts = []
        for i in range(self.qdeg, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            cs = f.element_str(c)
            e = self.q**i
            xs = var if e == 1 else f"{var}^{e}"
            parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(parts)

    def compact_str(self) -> str:
        f = self.field
        inner = ", ".join(f.element_str(c) for c in self.coeffs)
        return f"lin({self.q}; {inner})"

    _LIN_RE = re.compile(r"^lin\(\s*(\d+)\s*;(.*)\)$")

    @classmethod
    def parse(cls, text: str, field, q: int | None = None) -> "LinearizedPoly":
        """Parse 'a_n*x^q^n + ... + a_0*x' (numeric exponents) or
        'lin(q; a_0, ..., a_n)'."""
        s = text.strip()
        m = cls._LIN_RE.match(s)
        if m:
            q_in = int(m.group(1))
            if q is not None and q != q_in:
                raise ParseError(f"conflicting q: {q} vs {q_in}")
            coeffs = [field.element_parse(tok) for tok in m.group(2).split(",")]
            return cls(q_in, field, coeffs)
        poly = UniPoly.parse(s, field)
        return cls.from_unipoly(poly, q)

    @classmethod
    def from_unipoly(cls, poly: UniPoly, q: int | None = None) -> "LinearizedPoly":
        exps = [i for i in range(poly.degree + 1) if poly.coeff(i)]
        if not exps:
            raise PolynomialError("zero polynomial has no q-degree")
        if q is None:
            choices = infer_q(exps, poly.field.p)
            if len(choices) != 1:
                raise ParseError(
                    f"ambiguous q for exponents {exps}: candidates {choices}; pass q")
            q = choices[0]
        coeffs = {}
        for e in exps:
            i = _q_log(e, q)
            if i is None:
                raise ParseError(f"exponent {e} is not a power of q = {q}")
            coeffs[i] = poly.coeff(e)
        out = [0] * (max(coeffs) + 1)
        for i, c in coeffs.items():
            out[i] = c
        return cls(q, poly.field, out)


def _q_log(e: int, q: int):
    i = 0
    while e > 1:
        if e % q:
            return None
        e //= q
        i += 1
    return i


def infer_q(exponents, p: int) -> list:
    """Prime powers q of p for which every exponent is a power of q."""
    out = []
    biggest = max(exponents)
    q = p
    while q <= max(biggest, p):
        if all(_q_log(e, q) is not None for e in exponents):
            out.append(q)
        q *= p
    return out


# ---------------------------------------------------------------------------


def lin_eval(L: LinearizedPoly, z) -> FFElement:
    """Sum of a_i * z^(q^i); z may live in any extension of L's field."""
    if isinstance(z, FFElement):
        target = z.field
    else:
        target = L.field
        z = FFElement(target, z)
    acc = target.zero
    if not L.coeffs:
        return acc
    qpow = z
    for i, c in enumerate(L.coeffs):
        if i:
            qpow = qpow**L.q
        if c:
            ce = embed(FFElement(L.field, c), target) if target != L.field \
                else FFElement(target, c)
            acc = acc + ce * qpow
    return acc


def compose(L1: LinearizedPoly, L2: LinearizedPoly) -> LinearizedPoly:
    """Symbolic substitution L1(L2(x)); q-degrees add."""
    if L1.q != L2.q:
        raise IncompatibleFieldsError("composition needs matching q")
    if L1.field != L2.field:
        raise IncompatibleFieldsError("composition needs one coefficient field")
    f = L1.field
    q = L1.q
    if not L1.coeffs or not L2.coeffs:
        return LinearizedPoly(q, f, ())
    out = [0] * (L1.qdeg + L2.qdeg + 1)
    for i, a in enumerate(L1.coeffs):
        if not a:
            continue
        for j, b in enumerate(L2.coeffs):
            if not b:
                continue
            out[i + j] = f.add(out[i + j], f.mul(a, f.pow(b, q**i)))
    return LinearizedPoly(q, f, out)


def lin_from_associate(a: UniPoly, q: int) -> LinearizedPoly:
    """sum a_i x^i  ->  sum a_i x^(q^i) over GF(q)."""
    if not a:
        raise PolynomialError("zero polynomial has no linearized associate")
    if a.field.size != q:
        raise FieldError(f"associate must have coefficients in GF({q})")
    return LinearizedPoly(q, a.field, a.coeffs)


def associate_from_lin(L: LinearizedPoly) -> UniPoly:
    """Inverse of lin_from_associate; requires every coefficient in GF(q)."""
    if not L.coeffs:
        raise PolynomialError("zero polynomial")
    F = L.field
    if F.size == L.q:
        return UniPoly(F, L.coeffs)
    gq = field_create(F.p, subfield_degree_of_q(F, L.q))
    lookup = {embed(FFElement(gq, v), F).val: v for v in range(L.q)}
    out = []
    for c in L.coeffs:
        if c not in lookup:
            raise FieldError(
                f"coefficient {F.element_str(c)} lies outside GF({L.q})")
        out.append(lookup[c])
    return UniPoly(gq, out)


@dataclass(frozen=True)
class ProjectivePoly:
    """P with P(x^(q-1)) * x = L(x); degree (q^n - 1)/(q - 1)."""

    poly: UniPoly
    source: LinearizedPoly

    def __repr__(self):
        return f"projective({self.poly.to_str('y')})"


def projective_poly(L: LinearizedPoly) -> ProjectivePoly:
    if not L.is_monic():
        raise PolynomialError("projective polynomial needs a monic input")
    q = L.q
    n = L.qdeg
    out = [0] * ((q**n - 1) // (q - 1) + 1)
    for i, c in enumerate(L.coeffs):
        out[(q**i - 1) // (q - 1)] = c
    return ProjectivePoly(UniPoly(L.field, out), L)


# ---------------------------------------------------------------------------
# root spaces


@dataclass(frozen=True)
class RootSpace:
    """Splitting data of a separable q-polynomial over a finite ground field:
    E = the splitting field (degree s over F), and a GF(q)-basis of the
    kernel of z -> L(z) on E."""

    L: LinearizedPoly
    ground: FF
    field: object            # FF or FieldExtension
    s: int
    basis: tuple             # FFElements of `field`
    q: int

    def all_roots(self) -> list:
        """The q^n elements of the root space, lex-sorted by encoding."""
        E = self.field
        scalars = _gq_scalars(self.q, self.ground, E)
        span = {E.zero.val}
        for b in self.basis:
            span = {E.add(sv, E.mul(c, b.val)) for sv in span for c in scalars}
        return [FFElement(E, v) for v in sorted(span)]


def _gq_scalars(q: int, F: FF, E) -> list:
    """Encodings in E of the elements of GF(q), via GF(q) -> F -> E."""
    eq = subfield_degree_of_q(F, q)
    gq = field_create(F.p, eq)
    out = []
    for v in range(q):
        in_f = embed(FFElement(gq, v), F)
        out.append(in_f.val if E == F else E.embed_from(in_f).val)
    return out


def _const_mult_matrix(F: FF, c: int) -> np.ndarray:
    """k x k GF(p)-matrix of multiplication by c on F."""
    cols = []
    u_i = 1
    u = F.p if F.k > 1 else 1
    for _ in range(F.k):
        cols.append(F.coords(F.mul(c, u_i)))
        u_i = F.mul(u_i, u)
    return np.array(cols, dtype=np.int64).T


def _linear_operator_of_L(L: LinearizedPoly, E) -> np.ndarray:
    """GF(p)-matrix of z -> L(z) on E (an FF or a FieldExtension over L.field)."""
    F = L.field
    p = F.p
    eq = subfield_degree_of_q(F, L.q)
    if isinstance(E, FieldExtension):
        eng = E._eng
        dim = E.abs_degree
        phi = eng.power_map(eq)
        out = np.zeros((dim, dim), dtype=np.int64)
        cur = np.eye(dim, dtype=np.int64)
        for i, c in enumerate(L.coeffs):
            if i:
                cur = (phi @ cur) % p
            if c:
                scal = np.kron(np.eye(E.s, dtype=np.int64), _const_mult_matrix(F, c))
                out = (out + scal @ cur) % p
        return out
    # E is the ground field itself
    dim = E.k
    cols = []
    u_j = 1
    u = E.p if E.k > 1 else 1
    for _ in range(dim):
        cols.append(E.coords(lin_eval(L, FFElement(E, u_j)).val))
        u_j = E.mul(u_j, u)
    return np.array(cols, dtype=np.int64).T


def root_space(L: LinearizedPoly, F: FF, cap: int | None = None) -> RootSpace:
    """Least s with the kernel of z -> L(z) on the degree-s extension of F
    having GF(q)-dimension n, plus a kernel basis (Moore-independent)."""
    if not isinstance(F, FF):
        raise FieldError("ground field must be an absolute finite field")
    Lf = L.embedded_into(F)
    n = Lf.qdeg
    if n < 0:
        raise PolynomialError("zero polynomial has no root space")
    if Lf.a0 == 0:
        raise InseparableError("coefficient of x vanishes: repeated roots")
    q = Lf.q
    limit = cap if cap is not None else q**n - 1
    if n == 0:
        return RootSpace(Lf, F, F, 1, (), q)
    lx = Lf.lx()
    s = splitting_degree(lx, cap=limit)
    if s == 1:
        E = F
    else:
        E = FieldExtension(F, degree_s_factor(lx, s))
    op = _linear_operator_of_L(Lf, E)
    kern = _linalg.kernel(op, F.p)
    eq = subfield_degree_of_q(F, q)
    if kern.shape[0] != n * eq:
        raise PolynomialError(
            f"kernel dimension {kern.shape[0]} != n*[GF(q):GF(p)] = {n * eq}")
    # greedy GF(q)-basis from the GF(p)-kernel rows
    if isinstance(E, FieldExtension):
        def decode(row):
            return tuple(E._eng.from_np(row.reshape(E.s, F.k)))
    else:
        def decode(row):
            out = 0
            for c in reversed(row.tolist()):
                out = out * F.p + int(c)
            return out
    scalars = _gq_scalars(q, F, E)
    basis = []
    span = {E.zero.val}
    for row in kern:
        v = decode(row)
        if v in span:
            continue
        basis.append(FFElement(E, v))
        span = {E.add(sv, E.mul(c, v)) for sv in span for c in scalars}
        if len(basis) == n:
            break
    if len(basis) != n:
        raise PolynomialError("kernel failed to span an n-dimensional GF(q)-space")
    return RootSpace(Lf, F, E, s, tuple(basis), q)


def lx_irreducible(L: LinearizedPoly, F: FF) -> bool:
    """Whether L(x)/x is irreducible over F."""
    Lf = L.embedded_into(F)
    if Lf.a0 == 0:
        raise InseparableError("coefficient of x vanishes")
    return is_irreducible(Lf.lx())


# ---------------------------------------------------------------------------
# the one-parameter family hypothesis checker


@dataclass(frozen=True)
class FamilyCheck:
    """Outcome of the f + t*g hypothesis check over a finite field E."""

    ok: bool
    violations: tuple
    certificate: dict | None

    def __bool__(self):
        return self.ok


def verify_family(f: LinearizedPoly, g: LinearizedPoly) -> FamilyCheck:
    """Check the hypotheses making (f + t*g)/x irreducible over E(t):
    f monic of odd prime q-degree r with coefficient of x equal to -1,
    g nonzero of q-degree < r with coefficient of x equal to 0, and
    gcd(f/x, g/x) = 1.  On success, certify irreducibility via the
    degree-one-in-t + coprimality + monic-content argument."""
    if g.coeffs and (g.field != f.field or g.q != f.q):
        raise IncompatibleFieldsError("f and g must share one field and one q")
    E = f.field
    r = f.qdeg
    violations = []
    if not f.is_monic():
        violations.append("f is not monic")
    from .ff import is_prime

    if r < 3 or not is_prime(r):
        violations.append(f"q-degree of f is {r}, not an odd prime")
    if f.a0 != E.neg(1):
        violations.append("coefficient of x in f is not -1")
    if not g.coeffs:
        violations.append("g must be nonzero")
    else:
        if g.qdeg >= max(r, 0):
            violations.append(f"q-degree of g is {g.qdeg}, not less than {r}")
        if g.a0 != 0:
            violations.append("coefficient of x in g is not 0")
    if not violations and f.coeffs and g.coeffs:
        d = f.lx().gcd(g.lx())
        if d.degree != 0:
            violations.append(f"gcd(f/x, g/x) = {d.to_str()} is not 1")
    if violations:
        return FamilyCheck(False, tuple(violations), None)
    cert = {
        "gcd_fx_gx": "1",
        "t_degree": 1,
        "content_in_t": "1 (f/x is monic in x)",
        "conclusion": ("f/x + t*(g/x) is irreducible in E[x, t] (degree one in t "
                       "with coprime coefficients), hence (f + t*g)/x is "
                       "irreducible over E(t) by Gauss's lemma"),
    }
    return FamilyCheck(True, (), cert)
