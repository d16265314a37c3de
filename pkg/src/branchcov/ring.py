"""Graded-commutative cohomology rings with nilpotent generators.

A :class:`RingPresentation` is a polynomial ring on even-degree generators
modulo rewrite rules ``gen**p -> lower-order polynomial``.  Degrees are
complex degrees, so a (p, p)-form has degree p.  Classes of degree above
``top_degree`` are dropped at multiplication time since they vanish.

Two helpers build the bases used throughout the package (``CP^n`` and a
smooth curve of genus g); :func:`make_total_space` adjoins the tautological
class ``h = c1(O_V(1))`` of the projective bundle ``V = P(L + 1)`` with the
relation ``h**2 = -h * c1(L)``.

Scalars are generic: anything closed under ``+``, ``*`` with ints works, which
lets the equivariant code reuse the ring with cyclotomic coefficients.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class RingError(ValueError):
    pass


def _is_zero(c) -> bool:
    return c == 0


class RingPresentation:
    """Generators, rewrite rules and the integration functional.

    ``relations`` maps a generator index ``i`` to ``(power, replacement)``,
    meaning ``gen_i**power`` rewrites to ``replacement`` (a dict from
    monomials to scalars).  Every replacement monomial must carry strictly
    smaller exponent of ``gen_i``; rules touching other generators must only
    involve generators of lower index, so rewriting terminates.
    """

    def __init__(
        self,
        generators: Sequence[Tuple[str, int]],
        relations: Dict[int, Tuple[int, Dict[Monomial, object]]],
        top_degree: int,
        integration_table: Dict[Monomial, object],
        *,
        base: Optional["RingPresentation"] = None,
        fiber_index: Optional[int] = None,
        name: str = "",
    ):
        self.generators = tuple((str(n), int(deg)) for n, deg in generators)
        if any(deg <= 0 for _, deg in self.generators):
            raise RingError("generator degrees must be positive")
        self.relations = {
            int(i): (int(p), {tuple(m): c for m, c in rep.items() if not _is_zero(c)})
            for i, (p, rep) in relations.items()
        }
        self.top_degree = int(top_degree)
        self.base = base
        self.fiber_index = fiber_index
        self.name = name
        self._check_relations()
        self._basis = self._enumerate_basis()
        top = {m for m in self._basis if self.degree(m) == self.top_degree}
        table = {tuple(m): c for m, c in integration_table.items()}
        if set(table) != top:
            raise RingError(
                f"integration table keys {sorted(table)} differ from top-degree basis {sorted(top)}"
            )
        self.integration_table = table
        self._cache: Dict[Monomial, Dict[Monomial, object]] = {}

    # -- structure ---------------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise KeyError(name)

    def degree(self, mono: Monomial) -> int:
        return sum(e * deg for e, (_, deg) in zip(mono, self.generators))

    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def _check_relations(self):
        for i, (p, rep) in self.relations.items():
            if p < 1:
                raise RingError("relation power must be >= 1")
            lhs_deg = p * self.generators[i][1]
            for m in rep:
                if len(m) != self.ngens:
                    raise RingError("relation monomial has wrong length")
                if m[i] >= p:
                    raise RingError(f"relation for {self.generators[i][0]} does not lower its exponent")
                if any(m[j] for j in range(i + 1, self.ngens)):
                    raise RingError("relation may only involve generators of lower index")
                if self.degree(m) != lhs_deg:
                    raise RingError("relation is not homogeneous")

    def _enumerate_basis(self) -> List[Monomial]:
        ranges = []
        for i, (_, deg) in enumerate(self.generators):
            cap = self.top_degree // deg
            if i in self.relations:
                cap = min(cap, self.relations[i][0] - 1)
            ranges.append(range(cap + 1))
        out = [m for m in itertools.product(*ranges) if self.degree(m) <= self.top_degree]
        out.sort(key=lambda m: (self.degree(m), tuple(-e for e in m)))
        return out

    @property
    def basis(self) -> List[Monomial]:
        """Reduced monomials of degree <= top_degree."""
        return list(self._basis)

    def is_reduced(self, mono: Monomial) -> bool:
        return all(mono[i] < p for i, (p, _) in self.relations.items())

    # -- rewriting ---------------------------------------------------------

    def reduce_monomial(self, mono: Monomial, order: Optional[Sequence[int]] = None) -> Dict[Monomial, object]:
        """Fully reduce ``mono``.  ``order`` fixes which generator is rewritten
        first; the result does not depend on it (confluence is tested)."""
        mono = tuple(mono)
        if self.degree(mono) > self.top_degree:
            return {}
        if order is None and mono in self._cache:
            return self._cache[mono]
        pick = order if order is not None else range(self.ngens)
        target = None
        for i in pick:
            if i in self.relations and mono[i] >= self.relations[i][0]:
                target = i
                break
        if target is None:
            result = {mono: 1}
        else:
            p, rep = self.relations[target]
            rest = list(mono)
            rest[target] -= p
            result: Dict[Monomial, object] = {}
            for m, c in rep.items():
                prod = tuple(a + b for a, b in zip(m, rest))
                for m2, c2 in self.reduce_monomial(prod, order).items():
                    result[m2] = result.get(m2, 0) + c * c2
            result = {m: c for m, c in result.items() if not _is_zero(c)}
        if order is None:
            self._cache[mono] = result
        return result

    # -- constructors for classes -------------------------------------------

    def gen(self, name: str) -> "GradedClass":
        i = self.index(name)
        mono = [0] * self.ngens
        mono[i] = 1
        return GradedClass.from_terms(self, {tuple(mono): Fraction(1)})

    def one(self) -> "GradedClass":
        return GradedClass.from_terms(self, {self.unit_monomial(): Fraction(1)})

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def scalar(self, c) -> "GradedClass":
        return GradedClass.from_terms(self, {self.unit_monomial(): c})

    def pullback(self, x: "GradedClass") -> "GradedClass":
        """Pull a base class back along ``V -> S``."""
        if self.base is None or x.ring is not self.base:
            raise RingError("pullback needs a class on the base of this total space")
        pad = (0,) * (self.ngens - self.base.ngens)
        return GradedClass(self, {m + pad: c for m, c in x.coeffs.items()})

    def __repr__(self):
        gens = ", ".join(n for n, _ in self.generators)
        return f"RingPresentation({self.name or gens}, top={self.top_degree})"


class GradedClass:
    """An element of a :class:`RingPresentation`, stored fully reduced."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: RingPresentation, coeffs: Dict[Monomial, object]):
        self.ring = ring
        self.coeffs = {m: c for m, c in coeffs.items() if not _is_zero(c)}

    @classmethod
    def from_terms(cls, ring: RingPresentation, terms: Dict[Monomial, object]) -> "GradedClass":
        out: Dict[Monomial, object] = {}
        for m, c in terms.items():
            if _is_zero(c):
                continue
            for m2, c2 in ring.reduce_monomial(tuple(m)).items():
                out[m2] = out.get(m2, 0) + c * c2
        return cls(ring, out)

    def _check(self, other: "GradedClass"):
        if other.ring is not self.ring:
            raise RingError("classes live in different presentations")

    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            self._check(other)
            return other
        return self.ring.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return GradedClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GradedClass):
            return GradedClass(self.ring, {m: c * other for m, c in self.coeffs.items()})
        self._check(other)
        ring = self.ring
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if ring.degree(m) > ring.top_degree:
                    continue
                terms[m] = terms.get(m, 0) + c1 * c2
        return GradedClass.from_terms(ring, terms)

    def __rmul__(self, other):
        return GradedClass(self.ring, {m: other * c for m, c in self.coeffs.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative powers are not defined")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return other.ring is self.ring and (self - other).is_zero()
        return (self - self.ring.scalar(other)).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_part(self, p: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self.coeffs.items() if self.ring.degree(m) == p})

    def degrees(self) -> List[int]:
        return sorted({self.ring.degree(m) for m in self.coeffs})

    def is_pure_degree(self, p: int) -> bool:
        return all(self.ring.degree(m) == p for m in self.coeffs)

    def constant(self):
        return self.coeffs.get(self.ring.unit_monomial(), 0)

    def map_coeffs(self, f) -> "GradedClass":
        return GradedClass(self.ring, {m: f(c) for m, c in self.coeffs.items()})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=lambda m: (self.ring.degree(m), m)):
            name = "*".join(
                (g if e == 1 else f"{g}^{e}") for (g, _), e in zip(self.ring.generators, m) if e
            )
            parts.append(f"({self.coeffs[m]})" + (f"*{name}" if name else ""))
        return " + ".join(parts)


# -- builders ---------------------------------------------------------------


def make_projective_space(n: int) -> RingPresentation:
    """``Q[a]/(a^(n+1))`` with ``integral(a^n) = 1``."""
    if n < 0:
        raise RingError("n must be >= 0")
    if n == 0:
        return RingPresentation([], {}, 0, {(): Fraction(1)}, name="CP0")
    return RingPresentation(
        [("a", 1)], {0: (n + 1, {})}, n, {(n,): Fraction(1)}, name=f"CP{n}"
    )


def make_curve(genus: int) -> RingPresentation:
    """Cohomology of a smooth curve: ``Q + Q*p`` with p the point class."""
    if genus < 0:
        raise RingError("genus must be >= 0")
    return RingPresentation([("p", 1)], {0: (2, {})}, 1, {(1,): Fraction(1)}, name=f"curve(g={genus})")


def make_total_space(base: RingPresentation, c1L: GradedClass, fiber_name: str = "h") -> RingPresentation:
    """Cohomology of ``V = P(L + 1)`` over ``base``: adjoin h with ``h^2 = -h*c1(L)``."""
    if c1L.ring is not base:
        raise RingError("c1(L) must live in the base ring")
    if not c1L.is_pure_degree(1) and not c1L.is_zero():
        raise RingError("c1(L) must have pure degree 1")
    gens = list(base.generators) + [(fiber_name, 1)]
    n = base.ngens
    relations = {i: (p, {m + (0,): c for m, c in rep.items()}) for i, (p, rep) in base.relations.items()}
    # h^2 = -h * c1(L)
    relations[n] = (2, {m + (1,): -c for m, c in c1L.coeffs.items()})
    table = {m + (1,): c for m, c in base.integration_table.items()}
    return RingPresentation(
        gens,
        relations,
        base.top_degree + 1,
        table,
        base=base,
        fiber_index=n,
        name=f"P(L+1) over {base.name}",
    )


# -- module-level operations ------------------------------------------------


def mul(x: GradedClass, y: GradedClass) -> GradedClass:
    return x * y


def integrate(x: GradedClass):
    """Evaluate the top-degree part against the integration table."""
    table = x.ring.integration_table
    total = 0
    for m, c in x.coeffs.items():
        if m in table:
            total = total + c * table[m]
    return total


def pushforward_fiber(x: GradedClass) -> GradedClass:
    """Integration along the P^1 fibre: the coefficient of h (already reduced)."""
    ring = x.ring
    if ring.base is None or ring.fiber_index is None:
        raise RingError("pushforward needs a total-space ring")
    k = ring.fiber_index
    out = {}
    for m, c in x.coeffs.items():
        if m[k] == 1:
            out[m[:k] + m[k + 1:]] = c
    return GradedClass(ring.base, out)


def restrict_integrate(x: GradedClass, divisor_class: GradedClass):
    """``integral_D x|_D`` computed as ``integral_V x * [D]``."""
    if not divisor_class.is_pure_degree(1) and not divisor_class.is_zero():
        raise RingError("divisor class must have degree 1")
    return integrate(x * divisor_class)


def monomials_up_to(ring: RingPresentation, degree: int) -> Iterable[Monomial]:
    """All (not necessarily reduced) monomials of degree <= ``degree``."""
    caps = [degree // deg for _, deg in ring.generators]
    for m in itertools.product(*(range(c + 1) for c in caps)):
        if ring.degree(m) <= degree:
            yield m
