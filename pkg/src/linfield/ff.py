"""Finite fields GF(p^k) with deterministic moduli and compatible tower embeddings.

Elements are carried as integers: the element with coordinate vector
(c_0, ..., c_{k-1}) over GF(p) is encoded as sum(c_i * p**i).  The modulus of
GF(p^k) is, by default, the lexicographically least monic irreducible of
degree k, i.e. the irreducible x^k + r(x) whose low part r has the least
integer encoding.  Same inputs therefore always produce bit-identical fields.
"""

from __future__ import annotations

from typing import Iterator

from .errors import FieldError, IncompatibleFieldsError, CapExceededError

ENUM_CAP = 1 << 20    # size bound for enumeration-based routines
TABLE_CAP = 1 << 16   # size bound for exp/log multiplication tables

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorint(n: int) -> dict:
    """Prime factorization as {prime: exponent}; delegates to sympy."""
    from sympy import factorint as _fi

    return {int(q): int(e) for q, e in _fi(n).items()}


def prime_factors(n: int) -> list:
    return sorted(factorint(n))


# ---------------------------------------------------------------------------
# digit-tuple polynomial arithmetic over GF(p), used before any FF exists
# (modulus scanning and table-free element arithmetic)

def _digits(val: int, p: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        val, r = divmod(val, p)
        out.append(r)
    return tuple(out)


def _undigits(coords, p: int) -> int:
    val = 0
    for c in reversed(coords):
        val = val * p + c
    return val


def _dp_trim(a):
    i = len(a)
    while i and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _dp_mulmod(a, b, mod, p):
    """Product of digit polys a*b reduced mod the monic digit poly `mod`."""
    if not a or not b:
        return ()
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    deg_m = len(mod) - 1
    for i in range(len(prod) - 1, deg_m - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(deg_m):
                prod[i - deg_m + j] = (prod[i - deg_m + j] - c * mod[j]) % p
    return _dp_trim(tuple(prod[:deg_m]))


def _dp_powmod(a, e, mod, p):
    out = (1,)
    base = a
    while e:
        if e & 1:
            out = _dp_mulmod(out, base, mod, p)
        base = _dp_mulmod(base, base, mod, p)
        e >>= 1
    return out


def _dp_gcd(a, b, p):
    a, b = _dp_trim(a), _dp_trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        db, da = len(b) - 1, len(r) - 1
        while da >= db and r:
            c = r[da] * inv % p
            if c:
                for j in range(db + 1):
                    r[da - db + j] = (r[da - db + j] - c * b[j]) % p
            da -= 1
            while da >= 0 and r[da] == 0:
                da -= 1
            r = r[: da + 1]
        a, b = b, _dp_trim(tuple(r))
    return a


def _dp_irreducible(mod, p):
    """Irreducibility of a monic digit poly over GF(p)."""
    k = len(mod) - 1
    if k == 1:
        return True
    x = (0, 1)
    if _dp_powmod(x, p**k, mod, p) != x:
        return False
    for ell in prime_factors(k):
        h = _dp_powmod(x, p ** (k // ell), mod, p)
        diff = tuple((a - b) % p for a, b in
                     zip(h + (0,) * (k - len(h)), x + (0,) * (k - len(x))))
        if len(_dp_gcd(diff, mod, p)) > 1:
            return False
    return True


def least_irreducible(p: int, k: int) -> tuple:
    """Lexicographically least monic irreducible of degree k over GF(p)."""
    if k == 1:
        return (0, 1)
    for low in range(p**k):
        mod = _digits(low, p, k) + (1,)
        if mod[0] == 0:
            continue  # divisible by x
        if _dp_irreducible(mod, p):
            return mod
    raise FieldError(f"no irreducible of degree {k} over GF({p})")  # unreachable


# ---------------------------------------------------------------------------

class FF:
    """The finite field GF(p^k) with a fixed monic irreducible modulus.

    Instances are immutable and cached; use :func:`field_create`.
    """

    def __init__(self, p: int, k: int, modulus: tuple):
        self.p = p
        self.k = k
        self.modulus = tuple(int(c) % p for c in modulus)
        self.size = p**k
        if len(self.modulus) != k + 1 or self.modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not _dp_irreducible(self.modulus, p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({p})")
        self._exp = None
        self._log = None
        self._gen = None
        self._embed_images: dict = {}

    # -- identity ----------------------------------------------------------

    @property
    def key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FF) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"GF({self.p}^{self.k}; {self.modulus_str()})"

    def modulus_str(self) -> str:
        prime = field_create(self.p, 1) if self.k > 1 else self
        from .polys import UniPoly

        return str(UniPoly(prime if self.k > 1 else self, self.modulus))

    # -- element plumbing ---------------------------------------------------

    def element(self, val) -> "FFElement":
        if isinstance(val, FFElement):
            if val.field is not self:
                raise IncompatibleFieldsError("element of a different field")
            return val
        val = int(val)
        if self.k == 1:
            val %= self.p
        if not 0 <= val < self.size:
            raise FieldError(f"encoding {val} outside GF({self.p}^{self.k})")
        return FFElement(self, val)

    def __call__(self, val) -> "FFElement":
        return self.element(val)

    def from_coords(self, coords) -> "FFElement":
        if len(coords) > self.k:
            raise FieldError("too many coordinates")
        return FFElement(self, _undigits([c % self.p for c in coords], self.p))

    def coords(self, val: int) -> tuple:
        return _digits(val, self.p, self.k)

    @property
    def zero(self):
        return FFElement(self, 0)

    @property
    def one(self):
        return FFElement(self, 1)

    def const(self, n: int) -> int:
        """Encoding of the prime-subfield constant n (image of the integer n)."""
        return n % self.p

    def elements(self, cap: int = ENUM_CAP) -> Iterator["FFElement"]:
        if self.size > cap:
            raise CapExceededError(f"|F| = {self.size} exceeds enumeration cap {cap}")
        return (FFElement(self, v) for v in range(self.size))

    # -- arithmetic on integer encodings ------------------------------------

    def _ensure_tables(self):
        if self._exp is not None or self.size > TABLE_CAP:
            return
        g = self.generator_value()
        exp = [1] * (self.size - 1)
        log = [0] * self.size
        acc = 1
        for i in range(self.size - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_raw(acc, g)
        self._exp, self._log = exp, log

    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % p
        out = 0
        mult = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.k == 1:
            return (-a) % p
        out = 0
        mult = 1
        while a:
            a, ra = divmod(a, p)
            out += (-ra % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        prod = _dp_mulmod(_digits(a, self.p, self.k), _digits(b, self.p, self.k),
                          self.modulus, self.p)
        return _undigits(prod, self.p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return a * b % self.p
        self._ensure_tables()
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]
        return self._mul_raw(a, b)

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        n = self.size - 1
        e %= n
        if e == 0:
            return 1
        if self.k == 1:
            return pow(a, e, self.p)
        self._ensure_tables()
        if self._exp is not None:
            return self._exp[self._log[a] * e % n]
        out = 1
        base = a
        while e:
            if e & 1:
                out = self._mul_raw(out, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.size - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, j: int = 1) -> int:
        """The j-fold p-power Frobenius a^(p^j)."""
        return self.pow(a, self.p ** (j % self.k if self.k > 1 else 1))

    # -- generators and orders ----------------------------------------------

    def generator_value(self) -> int:
        """Integer encoding of the lex-least generator of the unit group."""
        if self._gen is not None:
            return self._gen
        n = self.size - 1
        if n == 1:
            self._gen = 1
            return 1
        primes = prime_factors(n)
        for cand in range(2, self.size):
            if self.k == 1:
                ok = all(pow(cand, n // ell, self.p) != 1 for ell in primes)
            else:
                ok = all(_undigits(_dp_powmod(_digits(cand, self.p, self.k), n // ell,
                                              self.modulus, self.p), self.p) != 1
                         for ell in primes)
            if ok:
                self._gen = cand
                return cand
        raise FieldError("no generator found")  # unreachable

    def generator(self) -> "FFElement":
        return FFElement(self, self.generator_value())

    def order_of(self, a: int) -> int:
        if a == 0:
            raise FieldError("order of zero is undefined")
        n = self.size - 1
        order = n
        for ell in factorint(n):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def in_subfield(self, a: int, d: int) -> bool:
        """Whether a lies in the subfield of size p^d (d must divide k)."""
        if self.k % d:
            raise FieldError(f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.k})")
        return self.pow(a, self.p**d) == a

    # -- element rendering ---------------------------------------------------

    def element_str(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        if a == 0:
            return "0"
        if a == 1:
            return "1"
        self._ensure_tables()
        if self._log is None:
            raise CapExceededError("generator-power rendering needs a tabled field")
        j = self._log[a]
        return "g" if j == 1 else f"g^{j}"

    def element_parse(self, text: str) -> int:
        text = text.strip()
        if self.k == 1:
            try:
                return int(text) % self.p
            except ValueError as exc:
                raise FieldError(f"bad prime-field coefficient {text!r}") from exc
        if text in ("0", "1"):
            return int(text)
        neg = text.startswith("-")
        if neg:
            text = text[1:].strip()
        if text == "g":
            val = self.generator_value()
        elif text.startswith("g^"):
            self._ensure_tables()
            val = self._exp[int(text[2:]) % (self.size - 1)]
        elif text.isdigit() and int(text) < self.p:
            val = int(text) % self.p  # prime-subfield constant
        else:
            raise FieldError(f"bad coefficient {text!r} for {self!r} (use g^j)")
        return self.neg(val) if neg else val


class FFElement:
    """An element of an FF (or of a relative extension implementing the
    same arithmetic protocol).  Immutable."""

    __slots__ = ("field", "val")

    def __init__(self, field, val):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "val", val)

    def __setattr__(self, *a):
        raise AttributeError("FFElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.field == self.field:
                return other.val
            raise IncompatibleFieldsError(
                f"mixing elements of {self.field!r} and {other.field!r}")
        if isinstance(other, int):
            return self.field.const(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.sub(v, self.val))

    def __neg__(self):
        return FFElement(self.field, self.field.neg(self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.div(self.val, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FFElement(self.field, self.field.div(v, self.val))

    def __pow__(self, e: int):
        return FFElement(self.field, self.field.pow(self.val, e))

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.val == other.val
        if isinstance(other, int) and other in (0, 1):
            return self.val == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field.__class__), self.field.key, self.val))

    def __bool__(self):
        return self.val != 0 if isinstance(self.val, int) else any(self.val)

    def __repr__(self):
        return self.field.element_str(self.val)

    def order(self) -> int:
        return element_order(self)


# ---------------------------------------------------------------------------
# public operations

_FIELD_CACHE: dict = {}


def field_create(p: int, k: int, modulus=None) -> FF:
    """GF(p^k) with the deterministic lex-least modulus (or an explicit one)."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if modulus is None:
        key0 = (p, k, None)
        if key0 in _FIELD_CACHE:
            return _FIELD_CACHE[key0]
        field = FF(p, k, least_irreducible(p, k))
        _FIELD_CACHE[key0] = field
        _FIELD_CACHE[field.key] = field
        return field
    field = FF(p, k, tuple(modulus))
    return _FIELD_CACHE.setdefault(field.key, field)


def _embedding_images(sub: FF, sup: FF) -> tuple:
    """Images in sup of the power basis u^i of sub, for the canonical embedding.

    Prime-index steps pick the root of sub's modulus with least encoding;
    composite steps factor through the canonical divisor chain (smallest
    prime first), which makes towers of prime-power degrees commute.
    """
    cached = sup._embed_images.get(sub.key)
    if cached is not None:
        return cached
    if sub.p != sup.p or sup.k % sub.k:
        raise IncompatibleFieldsError(
            f"no embedding {sub!r} -> {sup!r} (degree or characteristic mismatch)")
    quot = sup.k // sub.k
    if quot == 1:
        # same degree: only the identical representation is supported
        if sub.modulus != sup.modulus:
            raise IncompatibleFieldsError(
                "same-degree fields with different moduli are distinct representations")
        images = tuple(_undigits((0,) * i + (1,), sub.p) for i in range(sub.k))
    elif is_prime(quot):  # elementary step
        from .polys import UniPoly, find_roots

        prime = field_create(sub.p, 1)
        modulus_poly = UniPoly(prime, sub.modulus)
        roots = find_roots(modulus_poly, sup)
        if not roots:
            raise FieldError("sub-modulus has no root in super-field")  # unreachable
        root = min(r.val for r in roots)
        images = []
        acc = 1
        for _ in range(sub.k):
            images.append(acc)
            acc = sup.mul(acc, root)
        images = tuple(images)
    else:
        mid = field_create(sub.p, sub.k * prime_factors(quot)[0])
        lo = _embedding_images(sub, mid)
        hi = _embedding_images(mid, sup)

        def lift(val):
            out = 0
            for i, c in enumerate(mid.coords(val)):
                if c:
                    out = sup.add(out, sup.mul(c % sup.p, hi[i]))
            return out

        images = tuple(lift(v) for v in lo)
    sup._embed_images[sub.key] = images
    return images


def embed(x: FFElement, target) -> FFElement:
    """Ring-homomorphic image of x under the canonical embedding into target."""
    src = x.field
    if not isinstance(src, FF):
        raise IncompatibleFieldsError("embed() starts from an absolute field")
    if not isinstance(target, FF):
        return target.embed_from(x)  # relative extensions implement their own
    if src.key == target.key:
        return target.element(x.val)
    if src.k == 1:
        if src.p != target.p:
            raise IncompatibleFieldsError("characteristic mismatch")
        return target.element(x.val % target.p)
    images = _embedding_images(src, target)
    out = 0
    for i, c in enumerate(src.coords(x.val)):
        if c:
            out = target.add(out, target.mul(c % target.p, images[i]))
    return target.element(out)


def frobenius(x: FFElement, q: int) -> FFElement:
    """x^q for q a power of the characteristic."""
    p = x.field.p
    if q < p:
        raise FieldError(f"{q} is not a positive power of the characteristic {p}")
    qq = q
    while qq % p == 0:
        qq //= p
    if qq != 1:
        raise FieldError(f"{q} is not a power of the characteristic {p}")
    return x**q


def element_order(x: FFElement) -> int:
    """Least e >= 1 with x^e = 1; divides |F| - 1."""
    if not x:
        raise FieldError("order of zero is undefined")
    return x.field.order_of(x.val)


def subfield_degree_of_q(field: FF, q: int) -> int:
    """Check GF(q) embeds in `field` and return its degree over the prime field."""
    p = field.p
    e = 0
    qq = q
    while qq > 1 and qq % p == 0:
        qq //= p
        e += 1
    if qq != 1 or e == 0 or field.k % e:
        raise FieldError(f"GF({q}) is not a subfield of {field!r}")
    return e


def parse_field(text: str) -> FF:
    """Parse 'GF(p)', 'GF(p^k)' or 'GF(p^k; modulus)'."""
    from .polys import UniPoly
    from .errors import ParseError

    s = text.strip()
    if not (s.startswith("GF(") and s.endswith(")")):
        raise ParseError(f"bad field literal {text!r}")
    body = s[3:-1]
    mod_text = None
    if ";" in body:
        body, mod_text = body.split(";", 1)
    body = body.strip()
    if "^" in body:
        p_s, k_s = body.split("^", 1)
        p, k = int(p_s), int(k_s)
    else:
        p, k = int(body), 1
    if mod_text is None:
        return field_create(p, k)
    prime = field_create(p, 1)
    mod = UniPoly.parse(mod_text.strip(), prime)
    return field_create(p, k, mod.coeffs)
