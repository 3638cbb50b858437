"""Exact arithmetic for a fixed catalog of finite commutative rings.

The catalog consists of prime fields GF(p), Galois fields GF(p^k) with an
explicit irreducible modulus, integers modulo n, dual numbers
D(p) = GF(p)[x]/<x^2>, and finite direct products of these.  Every value is
immutable and every operation is a pure function, so everything here is safe
to share across threads.

Elements are canonically encoded (residues reduced, coefficient vectors in
little-endian order, i.e. constant term first) and enumerate in lexicographic
payload order; all iteration orders elsewhere in the package derive from that
order, which keeps outputs reproducible byte for byte.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from math import lcm
from types import MappingProxyType
from typing import Iterator, Union

from .errors import GuardExceeded, ParseError

ENUMERATION_GUARD = 2**20

# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 2 as (prime, exponent) pairs, primes ascending."""
    if n < 2:
        raise ValueError(f"cannot factor {n}")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k if q is a prime power, else None."""
    fac = factorize(q) if q >= 2 else []
    if len(fac) == 1:
        return fac[0]
    return None


# ---------------------------------------------------------------------------
# polynomials over GF(p): tuples of ints, constant term first
# ---------------------------------------------------------------------------


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(tuple(a))


def _poly_eval(f: tuple[int, ...], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    for low in itertools.product(range(p), repeat=degree):
        yield low + (1,)


def poly_is_irreducible(f: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p) by trial division."""
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for x in range(p):
        if _poly_eval(f, x, p) == 0:
            return False
    if deg <= 3:
        return True  # a factorization would include a linear factor
    for d in range(2, deg // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


@functools.cache
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Coefficients are ordered constant term first; the result is returned as a
    full coefficient tuple of length k + 1 (leading coefficient 1).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be positive")
    if p**k > ENUMERATION_GUARD:
        raise GuardExceeded(f"p^k = {p**k} exceeds {ENUMERATION_GUARD}")
    if k == 1:
        return (0, 1)
    # the constant term of an irreducible of degree >= 2 is nonzero, so skip
    # the whole c0 = 0 block of the lexicographic scan
    for idx in range(p ** (k - 1), p**k):
        digits = []
        v = idx
        for _ in range(k):
            digits.append(v % p)
            v //= p
        coeffs = tuple(reversed(digits)) + (1,)
        if poly_is_irreducible(coeffs, p):
            return coeffs
    raise RuntimeError("unreachable: irreducibles of every degree exist")


# ---------------------------------------------------------------------------
# ring specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"GF({self.p}): {self.p} is not prime")


@dataclass(frozen=True, slots=True)
class GaloisField:
    p: int
    k: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"GF({self.p}^{self.k}): {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be positive")
        if not self.modulus:
            object.__setattr__(self, "modulus", find_irreducible(self.p, self.k))
        m = self.modulus
        if len(m) != self.k + 1 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(not 0 <= c < self.p for c in m):
            raise ValueError("modulus coefficients out of range")
        if not poly_is_irreducible(m, self.p):
            raise ValueError("modulus is reducible")


@dataclass(frozen=True, slots=True)
class IntegersMod:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")


@dataclass(frozen=True, slots=True)
class DualNumbers:
    """GF(p)[x]/<x^2>: pairs a + bx with x*x = 0."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"D({self.p}): {self.p} is not prime")


@dataclass(frozen=True, slots=True)
class Product:
    factors: tuple["RingSpec", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("product needs at least one factor")


RingSpec = Union[PrimeField, GaloisField, IntegersMod, DualNumbers, Product]

Payload = Union[int, tuple]


def galois_field(p: int, k: int) -> PrimeField | GaloisField:
    """GF(p^k) with the canonical (lex-smallest) modulus; GF(p) for k = 1."""
    if k == 1:
        return PrimeField(p)
    return GaloisField(p, k)


def field_of_size(q: int) -> PrimeField | GaloisField:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return galois_field(*pk)


def ring_size(spec: RingSpec) -> int:
    if isinstance(spec, PrimeField):
        return spec.p
    if isinstance(spec, GaloisField):
        return spec.p**spec.k
    if isinstance(spec, IntegersMod):
        return spec.n
    if isinstance(spec, DualNumbers):
        return spec.p**2
    return _prod(ring_size(f) for f in spec.factors)


def _prod(it) -> int:
    out = 1
    for v in it:
        out *= v
    return out


def characteristic(spec: RingSpec) -> int:
    """Smallest c >= 1 with c * 1 = 0."""
    if isinstance(spec, (PrimeField, DualNumbers)):
        return spec.p
    if isinstance(spec, GaloisField):
        return spec.p
    if isinstance(spec, IntegersMod):
        return spec.n
    return lcm(*(characteristic(f) for f in spec.factors))


def canonicalize(spec: RingSpec) -> RingSpec:
    """Flatten nested products and sort field factors by (prime, exponent desc).

    Non-field factors keep their input order after the field factors.
    Idempotent; non-product specs are returned unchanged.
    """
    if not isinstance(spec, Product):
        return spec
    flat: list[RingSpec] = []

    def walk(s: RingSpec):
        if isinstance(s, Product):
            for f in s.factors:
                walk(f)
        else:
            flat.append(s)

    walk(spec)
    fields = [f for f in flat if isinstance(f, (PrimeField, GaloisField))]
    rest = [f for f in flat if not isinstance(f, (PrimeField, GaloisField))]
    fields.sort(key=lambda f: (f.p, -(f.k if isinstance(f, GaloisField) else 1)))
    return Product(tuple(fields + rest))


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class RingElement:
    ring: RingSpec
    payload: Payload

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __sub__(self, other):
        return add(self, neg(other))

    def __str__(self):
        return format_element(self)


def element(spec: RingSpec, payload: Payload) -> RingElement:
    """Validating constructor; arithmetic builds elements directly."""
    if isinstance(spec, (PrimeField, IntegersMod)):
        n = spec.p if isinstance(spec, PrimeField) else spec.n
        if not isinstance(payload, int) or not 0 <= payload < n:
            raise ValueError(f"residue {payload!r} out of range for modulus {n}")
    elif isinstance(spec, GaloisField):
        if not isinstance(payload, tuple) or len(payload) != spec.k:
            raise ValueError(f"payload must be a coefficient tuple of length {spec.k}")
        if any(not 0 <= c < spec.p for c in payload):
            raise ValueError("coefficient out of range")
    elif isinstance(spec, DualNumbers):
        if not isinstance(payload, tuple) or len(payload) != 2:
            raise ValueError("payload must be a pair (a, b) meaning a + bx")
        if any(not 0 <= c < spec.p for c in payload):
            raise ValueError("coefficient out of range")
    else:
        if not isinstance(payload, tuple) or len(payload) != len(spec.factors):
            raise ValueError("payload must be one element per factor")
        comps = []
        for f, c in zip(spec.factors, payload):
            if isinstance(c, RingElement):
                if c.ring != f:
                    raise ValueError("component owned by the wrong factor")
                element(f, c.payload)
                comps.append(c)
            else:
                comps.append(element(f, c))
        payload = tuple(comps)
    return RingElement(spec, payload)


def zero(spec: RingSpec) -> RingElement:
    if isinstance(spec, (PrimeField, IntegersMod)):
        return RingElement(spec, 0)
    if isinstance(spec, GaloisField):
        return RingElement(spec, (0,) * spec.k)
    if isinstance(spec, DualNumbers):
        return RingElement(spec, (0, 0))
    return RingElement(spec, tuple(zero(f) for f in spec.factors))


def one(spec: RingSpec) -> RingElement:
    if isinstance(spec, (PrimeField, IntegersMod)):
        return RingElement(spec, 1)
    if isinstance(spec, GaloisField):
        return RingElement(spec, (1,) + (0,) * (spec.k - 1))
    if isinstance(spec, DualNumbers):
        return RingElement(spec, (1, 0))
    return RingElement(spec, tuple(one(f) for f in spec.factors))


def elements(spec: RingSpec) -> list[RingElement]:
    """All elements exactly once, in lexicographic payload order."""
    size = ring_size(spec)
    if size > ENUMERATION_GUARD:
        raise GuardExceeded(f"ring size {size} exceeds {ENUMERATION_GUARD}")
    return list(_iter_elements(spec))


def _iter_elements(spec: RingSpec) -> Iterator[RingElement]:
    if isinstance(spec, (PrimeField, IntegersMod)):
        n = spec.p if isinstance(spec, PrimeField) else spec.n
        for v in range(n):
            yield RingElement(spec, v)
    elif isinstance(spec, GaloisField):
        for t in itertools.product(range(spec.p), repeat=spec.k):
            yield RingElement(spec, t)
    elif isinstance(spec, DualNumbers):
        for t in itertools.product(range(spec.p), repeat=2):
            yield RingElement(spec, t)
    else:
        for combo in itertools.product(*(_iter_elements(f) for f in spec.factors)):
            yield RingElement(spec, combo)


def payload_key(a: RingElement) -> tuple[int, ...]:
    """Flat integer tuple realizing the lexicographic element order."""
    p = a.payload
    if isinstance(p, int):
        return (p,)
    key: list[int] = []
    for c in p:
        if isinstance(c, RingElement):
            key.extend(payload_key(c))
        else:
            key.append(c)
    return tuple(key)


def _check_owner(a: RingElement, b: RingElement):
    if a.ring != b.ring:
        raise ValueError("elements belong to different rings")


def add(a: RingElement, b: RingElement) -> RingElement:
    _check_owner(a, b)
    spec = a.ring
    if isinstance(spec, PrimeField):
        return RingElement(spec, (a.payload + b.payload) % spec.p)
    if isinstance(spec, IntegersMod):
        return RingElement(spec, (a.payload + b.payload) % spec.n)
    if isinstance(spec, (GaloisField, DualNumbers)):
        p = spec.p
        return RingElement(spec, tuple((x + y) % p for x, y in zip(a.payload, b.payload)))
    return RingElement(spec, tuple(add(x, y) for x, y in zip(a.payload, b.payload)))


def neg(a: RingElement) -> RingElement:
    spec = a.ring
    if isinstance(spec, PrimeField):
        return RingElement(spec, (-a.payload) % spec.p)
    if isinstance(spec, IntegersMod):
        return RingElement(spec, (-a.payload) % spec.n)
    if isinstance(spec, (GaloisField, DualNumbers)):
        p = spec.p
        return RingElement(spec, tuple((-x) % p for x in a.payload))
    return RingElement(spec, tuple(neg(x) for x in a.payload))


def mul(a: RingElement, b: RingElement) -> RingElement:
    _check_owner(a, b)
    spec = a.ring
    if isinstance(spec, PrimeField):
        return RingElement(spec, (a.payload * b.payload) % spec.p)
    if isinstance(spec, IntegersMod):
        return RingElement(spec, (a.payload * b.payload) % spec.n)
    if isinstance(spec, GaloisField):
        prod = _poly_mul(a.payload, b.payload, spec.p)
        red = _poly_mod(prod, spec.modulus, spec.p)
        return RingElement(spec, red + (0,) * (spec.k - len(red)))
    if isinstance(spec, DualNumbers):
        p = spec.p
        a0, a1 = a.payload
        b0, b1 = b.payload
        return RingElement(spec, ((a0 * b0) % p, (a0 * b1 + a1 * b0) % p))
    return RingElement(spec, tuple(mul(x, y) for x, y in zip(a.payload, b.payload)))


def is_zero(a: RingElement) -> bool:
    return a == zero(a.ring)


def inverse(a: RingElement) -> RingElement | None:
    """Multiplicative inverse if a is a unit, else None."""
    spec = a.ring
    if isinstance(spec, (PrimeField, IntegersMod)):
        n = spec.p if isinstance(spec, PrimeField) else spec.n
        try:
            return RingElement(spec, pow(a.payload, -1, n))
        except ValueError:
            return None
    if isinstance(spec, GaloisField):
        if all(c == 0 for c in a.payload):
            return None
        return _pow(a, ring_size(spec) - 2)
    if isinstance(spec, DualNumbers):
        a0, a1 = a.payload
        if a0 == 0:
            return None
        i0 = pow(a0, -1, spec.p)
        return RingElement(spec, (i0, (-a1 * i0 * i0) % spec.p))
    comps = []
    for x in a.payload:
        ix = inverse(x)
        if ix is None:
            return None
        comps.append(ix)
    return RingElement(spec, tuple(comps))


def _pow(a: RingElement, e: int) -> RingElement:
    out = one(a.ring)
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------

MOD_REDUCTION = "mod_reduction"
DUAL_AUGMENTATION = "dual_augmentation"
PROJECTION = "projection"
SUBRING_INCLUSION = "subring_inclusion"

SURJECTIVE_KINDS = frozenset({MOD_REDUCTION, DUAL_AUGMENTATION, PROJECTION})


@dataclass(frozen=True, eq=False)
class RingHom:
    """A structure map from one catalog ring to another.

    ``mod_reduction`` and ``dual_augmentation`` and ``projection`` are
    surjective; ``subring_inclusion`` is injective and carries an explicit
    payload table built (and exhaustively verified) at construction.
    """

    kind: str
    source: RingSpec
    target: RingSpec
    index: int | None = None
    table: MappingProxyType | None = None

    def __call__(self, a: RingElement) -> RingElement:
        return apply_hom(self, a)


def _modulus_of(spec: RingSpec) -> int | None:
    if isinstance(spec, PrimeField):
        return spec.p
    if isinstance(spec, IntegersMod):
        return spec.n
    return None


def mod_reduction(source: RingSpec, target: RingSpec) -> RingHom:
    """Residue reduction Z_n -> Z_m for m | n (prime fields count as Z_p)."""
    n = _modulus_of(source)
    m = _modulus_of(target)
    if n is None or m is None:
        raise ValueError("mod_reduction needs integers-mod-n style rings")
    if n % m != 0:
        raise ValueError(f"{m} does not divide {n}")
    return RingHom(MOD_REDUCTION, source, target)


def dual_augmentation(p: int) -> RingHom:
    """D(p) -> GF(p), a + bx -> a."""
    return RingHom(DUAL_AUGMENTATION, DualNumbers(p), PrimeField(p))


def projection(product: Product, index: int) -> RingHom:
    """Component projection of a product ring; index is 0-based."""
    if not isinstance(product, Product):
        raise ValueError("projection source must be a product")
    if not 0 <= index < len(product.factors):
        raise ValueError("factor index out of range")
    return RingHom(PROJECTION, product, product.factors[index], index=index)


def _multiplicative_order_checks(q: int) -> list[int]:
    return [(q - 1) // ell for ell, _ in factorize(q - 1)] if q > 2 else []


def smallest_generator(spec: PrimeField | GaloisField) -> RingElement:
    """Lexicographically smallest generator of the multiplicative group."""
    q = ring_size(spec)
    checks = _multiplicative_order_checks(q)
    uno = one(spec)
    for cand in _iter_elements(spec):
        if is_zero(cand) or (cand == uno and q > 2):
            continue
        if all(_pow(cand, e) != uno for e in checks):
            return cand
    raise RuntimeError("unreachable: finite field groups are cyclic")


def _verify_hom_table(source: RingSpec, target: RingSpec, table: dict):
    src = elements(source)
    if table[zero(source).payload] != zero(target).payload:
        raise ValueError("inclusion does not preserve zero")
    if table[one(source).payload] != one(target).payload:
        raise ValueError("inclusion does not preserve one")
    imgs = {a.payload: RingElement(target, table[a.payload]) for a in src}
    for a in src:
        fa = imgs[a.payload]
        for b in src:
            if table[add(a, b).payload] != add(fa, imgs[b.payload]).payload:
                raise ValueError("inclusion is not additive")
            if table[mul(a, b).payload] != mul(fa, imgs[b.payload]).payload:
                raise ValueError("inclusion is not multiplicative")
    if len(set(table.values())) != len(table):
        raise ValueError("inclusion is not injective")


def subring_inclusion(source: RingSpec, target: RingSpec) -> RingHom:
    """Embedding GF(p^m) -> GF(p^k) for m | k, or GF(p) -> D(p).

    The field embedding evaluates source coefficient vectors at the
    lexicographically smallest root of the source modulus inside the unique
    subfield of the target of the right size (the subgroup generated by
    g^((p^k-1)/(p^m-1)) for g the smallest generator of the target).  The map
    sends a generator of the source onto that subgroup generator, and the
    whole table is verified to satisfy the homomorphism laws before use.
    """
    table: dict = {}
    if isinstance(source, PrimeField) and isinstance(target, DualNumbers):
        if source.p != target.p:
            raise ValueError("characteristic mismatch")
        for v in range(source.p):
            table[v] = (v, 0)
    else:
        if not isinstance(source, (PrimeField, GaloisField)) or not isinstance(
            target, GaloisField
        ):
            raise ValueError("unsupported inclusion pair")
        p = source.p
        m = 1 if isinstance(source, PrimeField) else source.k
        if target.p != p or target.k % m != 0:
            raise ValueError("source degree must divide target degree")
        if m == 1:
            # prime subfield: a -> a * 1
            uno = one(target)
            acc = zero(target)
            for v in range(p):
                table[v] = acc.payload
                acc = add(acc, uno)
        else:
            g = smallest_generator(target)
            t = _pow(g, (ring_size(target) - 1) // (p**m - 1))
            root = None
            cur = one(target)
            for _ in range(p**m - 1):
                if _eval_source_modulus(source, cur) and (
                    root is None or payload_key(cur) < payload_key(root)
                ):
                    root = cur
                cur = mul(cur, t)
            if root is None:
                raise RuntimeError("unreachable: subfield contains the roots")
            powers = [one(target)]
            for _ in range(m - 1):
                powers.append(mul(powers[-1], root))
            for a in _iter_elements(source):
                img = zero(target)
                for c, rp in zip(a.payload, powers):
                    img = add(img, _scale_int(rp, c))
                table[a.payload] = img.payload
    _verify_hom_table(source, target, table)
    return RingHom(SUBRING_INCLUSION, source, target, table=MappingProxyType(table))


def _eval_source_modulus(source: GaloisField, at: RingElement) -> bool:
    acc = zero(at.ring)
    for c in reversed(source.modulus):
        acc = add(mul(acc, at), _scale_int(one(at.ring), c))
    return is_zero(acc)


def _scale_int(a: RingElement, c: int) -> RingElement:
    out = zero(a.ring)
    for _ in range(c):
        out = add(out, a)
    return out


def apply_hom(h: RingHom, a: RingElement) -> RingElement:
    if a.ring != h.source:
        raise ValueError("element is not owned by the hom's source ring")
    if h.kind == MOD_REDUCTION:
        return RingElement(h.target, a.payload % _modulus_of(h.target))
    if h.kind == DUAL_AUGMENTATION:
        return RingElement(h.target, a.payload[0])
    if h.kind == PROJECTION:
        return a.payload[h.index]
    return RingElement(h.target, h.table[a.payload])


# ---------------------------------------------------------------------------
# ring expression grammar: GF(q) | GF(p^k) | Z(n) | D(p), product via infix x
# ---------------------------------------------------------------------------


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, offset: int | None = None):
        raise ParseError(message, self.pos if offset is None else offset)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def atom(self) -> RingSpec:
        self.skip_ws()
        start = self.pos
        head = self.peek().upper()
        if head == "G":
            if self.text[self.pos : self.pos + 2].upper() != "GF":
                self.error("expected GF")
            self.pos += 2
            self.skip_ws()
            self.expect("(")
            base = self.integer()
            self.skip_ws()
            if self.peek() == "^":
                self.pos += 1
                exp = self.integer()
                if not is_prime(base):
                    self.error(f"{base} is not prime", start)
                if base**exp > ENUMERATION_GUARD:
                    self.error(f"GF({base}^{exp}) exceeds the size guard", start)
                spec: RingSpec = galois_field(base, exp)
            else:
                pk = prime_power(base)
                if pk is None:
                    self.error(f"{base} is not a prime power", start)
                if base > ENUMERATION_GUARD:
                    self.error(f"GF({base}) exceeds the size guard", start)
                spec = galois_field(*pk)
            self.skip_ws()
            self.expect(")")
            return spec
        if head == "Z":
            self.pos += 1
            self.skip_ws()
            self.expect("(")
            n = self.integer()
            if n < 2:
                self.error("Z(n) needs n >= 2", start)
            self.skip_ws()
            self.expect(")")
            return IntegersMod(n)
        if head == "D":
            self.pos += 1
            self.skip_ws()
            self.expect("(")
            p = self.integer()
            if not is_prime(p):
                self.error(f"{p} is not prime", start)
            self.skip_ws()
            self.expect(")")
            return DualNumbers(p)
        self.error("expected GF(, Z( or D(")

    def parse(self) -> RingSpec:
        factors = [self.atom()]
        while True:
            self.skip_ws()
            if self.peek().lower() == "x":
                self.pos += 1
                factors.append(self.atom())
            else:
                break
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("trailing input")
        return factors[0] if len(factors) == 1 else Product(tuple(factors))


def parse_ring(text: str) -> RingSpec:
    """Parse a ring expression; whitespace-insensitive, errors carry offsets."""
    return _ExprParser(text).parse()


def format_ring(spec: RingSpec) -> str:
    if isinstance(spec, PrimeField):
        return f"GF({spec.p})"
    if isinstance(spec, GaloisField):
        return f"GF({spec.p})" if spec.k == 1 else f"GF({spec.p}^{spec.k})"
    if isinstance(spec, IntegersMod):
        return f"Z({spec.n})"
    if isinstance(spec, DualNumbers):
        return f"D({spec.p})"
    return "x".join(
        f"({format_ring(f)})" if isinstance(f, Product) else format_ring(f)
        for f in spec.factors
    )


# ---------------------------------------------------------------------------
# element text syntax
# ---------------------------------------------------------------------------
#
# Residues print as plain integers.  Polynomial payloads (GF(p^k) and D(p))
# print little-endian, lowest degree first: "0", "2", "x", "2x", "1+x",
# "1+2x+x^2".  Product elements wrap their components in parentheses:
# "(1+x,2)".  The parser also accepts terms in any order and an optional '*'
# between coefficient and x.


def format_element(a: RingElement) -> str:
    spec = a.ring
    if isinstance(spec, (PrimeField, IntegersMod)):
        return str(a.payload)
    if isinstance(spec, (GaloisField, DualNumbers)):
        terms = []
        for deg, c in enumerate(a.payload):
            if c == 0:
                continue
            if deg == 0:
                terms.append(str(c))
            else:
                xpart = "x" if deg == 1 else f"x^{deg}"
                terms.append(xpart if c == 1 else f"{c}{xpart}")
        return "+".join(terms) if terms else "0"
    return "(" + ",".join(format_element(c) for c in a.payload) + ")"


def parse_element(text: str, spec: RingSpec) -> RingElement:
    text = text.strip()
    if isinstance(spec, (PrimeField, IntegersMod)):
        n = spec.p if isinstance(spec, PrimeField) else spec.n
        try:
            v = int(text)
        except ValueError:
            raise ValueError(f"expected an integer residue, got {text!r}") from None
        if not 0 <= v < n:
            raise ValueError(f"residue {v} out of range for modulus {n}")
        return RingElement(spec, v)
    if isinstance(spec, (GaloisField, DualNumbers)):
        k = spec.k if isinstance(spec, GaloisField) else 2
        coeffs = [0] * k
        for term in text.replace(" ", "").split("+"):
            if not term:
                raise ValueError(f"empty term in {text!r}")
            c, deg = _parse_term(term)
            if deg >= k:
                raise ValueError(f"degree {deg} too large in {text!r}")
            coeffs[deg] = (coeffs[deg] + c) % spec.p
        return RingElement(spec, tuple(coeffs))
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"expected a parenthesized tuple, got {text!r}")
    parts = _split_components(text[1:-1])
    if len(parts) != len(spec.factors):
        raise ValueError(
            f"expected {len(spec.factors)} components, got {len(parts)}"
        )
    return RingElement(
        spec, tuple(parse_element(t, f) for t, f in zip(parts, spec.factors))
    )


def _parse_term(term: str) -> tuple[int, int]:
    if "x" not in term:
        return int(term), 0
    head, _, tail = term.partition("x")
    head = head.rstrip("*")
    c = int(head) if head else 1
    if not tail:
        return c, 1
    if not tail.startswith("^"):
        raise ValueError(f"malformed term {term!r}")
    return c, int(tail[1:])


def _split_components(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts
