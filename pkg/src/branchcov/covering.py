"""Branched coverings W in P(L + 1) and their Euler-characteristic bookkeeping.

W is cut out of the total space of L by ``t^d + sum_i alpha_i t^(d-i) = 0``.
It is never represented as a variety.  Its characteristic classes come from
``TW = (TV - [W])|_W`` and integrals over W are computed on V against
``c1([W])``.  Every Euler characteristic is checked to be an integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .ring import (
    GradedClass,
    RingPresentation,
    integrate,
    make_curve,
    make_projective_space,
    make_total_space,
)
from .series import ch_of_sum, todd_inverse_series, apply_genus_line, todd_of_sum


class CoveringError(ValueError):
    pass


Poly = Tuple[Fraction, ...]  # ascending coefficients in the affine base coordinate z


@dataclass(frozen=True, eq=False)
class CoveringSpec:
    """Base, line bundle L, degree d, optional explicit sections, twist xi.

    ``tangent_lines`` are virtual Chern roots of TS (``CP^n``: n+1 copies of
    the hyperplane class; curve: one class ``(2-2g) p``).  ``sections`` holds
    ``alpha_1..alpha_d`` as polynomials in z (base ``cp1`` only).
    """

    base: RingPresentation
    base_kind: str
    base_param: int
    tangent_lines: Tuple[GradedClass, ...]
    line_class: GradedClass
    degree: int
    sections: Optional[Tuple[Poly, ...]] = None
    twist: Tuple[GradedClass, ...] = ()

    def __post_init__(self):
        if self.degree < 2:
            raise CoveringError("covering degree d must be >= 2")
        if self.line_class.ring is not self.base:
            raise CoveringError("c1(L) must be a base class")
        if not self.twist:
            object.__setattr__(self, "twist", (self.base.zero(),))
        if self.sections is not None:
            if self.base_kind != "cp1":
                raise CoveringError("explicit sections are only supported over CP^1")
            if len(self.sections) != self.degree:
                raise CoveringError("need exactly d sections alpha_1..alpha_d")
            k = self.k
            for i, a in enumerate(self.sections, start=1):
                if _poly_degree(a) > i * k:
                    raise CoveringError(f"alpha_{i} has degree {_poly_degree(a)} > {i}*{k}")

    @property
    def k(self) -> int:
        """Degree of L on a curve base (integral of c1(L))."""
        if self.base.top_degree != 1:
            raise CoveringError("k is only defined for curve bases")
        v = integrate(self.line_class)
        return int(v)

    @property
    def is_cyclic(self) -> bool:
        return self.sections is not None and all(_poly_degree(a) < 0 for a in self.sections[:-1])

    @property
    def rank_xi(self) -> int:
        return len(self.twist)

    @cached_property
    def total(self) -> RingPresentation:
        return make_total_space(self.base, self.line_class)

    @cached_property
    def h(self) -> GradedClass:
        return self.total.gen("h")

    def up(self, x: GradedClass) -> GradedClass:
        return self.total.pullback(x)

    @cached_property
    def tv_lines(self) -> Tuple[GradedClass, ...]:
        """Chern roots of TV: pullback of TS plus TY = (L + C)(1) - C."""
        L = self.up(self.line_class)
        return tuple(self.up(c) for c in self.tangent_lines) + (L + self.h, self.h)


def _poly_degree(p: Sequence) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1


# -- builders ---------------------------------------------------------------


def _as_poly(p) -> Poly:
    return tuple(Fraction(c) for c in p)


def covering_on_p1(k: int, d: int, alpha=None, xi: Sequence[int] = (0,)) -> CoveringSpec:
    """Covering over CP^1 with ``L = O(k)`` and ``xi = sum O(x)``."""
    base = make_projective_space(1)
    a = base.gen("a")
    sections = None
    if alpha is not None:
        sections = tuple(_as_poly(p) for p in alpha)
    return CoveringSpec(
        base, "cp1", 1, (a, a), a * k, d, sections, tuple(a * x for x in xi)
    )


def cyclic_on_p1(k: int, d: int, alpha_d, xi: Sequence[int] = (0,)) -> CoveringSpec:
    alpha = [()] * (d - 1) + [alpha_d]
    return covering_on_p1(k, d, alpha, xi)


def covering_on_curve(genus: int, k: int, d: int, xi: Sequence[int] = (0,)) -> CoveringSpec:
    base = make_curve(genus)
    p = base.gen("p")
    return CoveringSpec(
        base, "curve", genus, (p * (2 - 2 * genus),), p * k, d, None, tuple(p * x for x in xi)
    )


def covering_on_cpn(n: int, k: int, d: int, xi: Sequence[int] = (0,)) -> CoveringSpec:
    base = make_projective_space(n)
    if n == 0:
        return CoveringSpec(base, "cpn", 0, (), base.zero(), d, None, tuple(base.zero() for _ in xi))
    a = base.gen("a")
    return CoveringSpec(
        base, "cpn", n, tuple(a for _ in range(n + 1)), a * k, d, None, tuple(a * x for x in xi)
    )


# -- classes ----------------------------------------------------------------


def class_of_S(spec: CoveringSpec) -> GradedClass:
    """``c1([S]) = c1(L) + h``."""
    return spec.up(spec.line_class) + spec.h


def class_of_W(spec: CoveringSpec) -> GradedClass:
    """``c1([W]) = d * c1([S])``."""
    return class_of_S(spec) * spec.degree


def restrict_to_S(spec: CoveringSpec, x: GradedClass) -> GradedClass:
    """Restriction along the zero section; ``O_V(1)`` is trivial there, so h -> 0."""
    k = spec.total.fiber_index
    return GradedClass(spec.base, {m[:k]: c for m, c in x.coeffs.items() if m[k] == 0})


# -- direct images -----------------------------------------------------------


@dataclass(frozen=True)
class DirectImageDecomp:
    """Summands ``L^{-j} (x) xi_s`` as (j, first Chern class) pairs."""

    summands: Tuple[Tuple[int, GradedClass], ...]

    @property
    def rank(self) -> int:
        return len(self.summands)

    def classes(self) -> List[GradedClass]:
        return [c for _, c in self.summands]


def direct_image(spec: CoveringSpec) -> DirectImageDecomp:
    """``R^0 pi_W* xi' = sum_{j<d} L^{-j} (x) xi``: fibrewise polynomials of degree < d."""
    out = []
    for j in range(spec.degree):
        for x in spec.twist:
            out.append((j, x - spec.line_class * j))
    return DirectImageDecomp(tuple(out))


@dataclass(frozen=True)
class DirectImages:
    """Higher direct images along ``V -> S`` as lists of L-exponents."""

    r0: Tuple[int, ...] = ()
    r1: Tuple[int, ...] = ()


def higher_direct_images_O(k: int) -> DirectImages:
    """``R pi_* O_V(-(k+1))``: zero R^0, ``R^1 = sum_{i=1}^k L^i``."""
    if k < 0:
        raise CoveringError("k must be >= 0")
    return DirectImages((), tuple(range(1, k + 1)))


def higher_direct_images_tautological(m: int) -> DirectImages:
    """``R pi_* O_V(m)`` for any integer m (fibre cohomology of O(m) on P^1).

    ``m >= 0``: ``R^0 = Sym^m((L + 1)^*) = sum_{i=0}^m L^{-i}``;
    ``m <= -2``: ``R^1 = sum_{i=1}^{-m-1} L^i``.
    """
    if m >= 0:
        return DirectImages(tuple(-i for i in range(m + 1)), ())
    return DirectImages((), tuple(range(1, -m)))


def higher_direct_images_S(m: int) -> DirectImages:
    """``R pi_* O_V([-mS])``: ``O`` for m = 0, zero for m = 1,
    ``R^1 = sum_{j=1}^{m-1} L^{-j}`` for m >= 2."""
    if m < 0:
        raise CoveringError("m must be >= 0")
    if m == 0:
        return DirectImages((0,), ())
    return DirectImages((), tuple(-j for j in range(1, m)))


def higher_direct_images_W(spec: CoveringSpec) -> DirectImages:
    """``[-W]`` is identified with ``[-dS]``."""
    return higher_direct_images_S(spec.degree)


# -- Euler characteristics --------------------------------------------------


def _integral_value(v, what: str) -> int:
    v = Fraction(v)
    if v.denominator != 1:
        raise CoveringError(f"non-integral Euler characteristic {v} for {what}")
    return int(v)


def euler_char(ring: RingPresentation, tangent_lines: Sequence[GradedClass], bundle: Sequence[GradedClass]) -> int:
    """Hirzebruch-Riemann-Roch: ``integral Td(T) ch(E)`` for a sum of lines."""
    if not bundle:
        return 0
    td = todd_of_sum(list(tangent_lines), ring)
    return _integral_value(integrate(td * ch_of_sum(list(bundle), ring)), "HRR")


def euler_char_S(spec: CoveringSpec, bundle: Sequence[GradedClass]) -> int:
    return euler_char(spec.base, spec.tangent_lines, bundle)


def euler_char_V(spec: CoveringSpec, bundle: Sequence[GradedClass]) -> int:
    return euler_char(spec.total, spec.tv_lines, bundle)


def _twisted(spec: CoveringSpec, line_on_V: GradedClass) -> List[GradedClass]:
    return [line_on_V + spec.up(x) for x in spec.twist]


def euler_char_W(spec: CoveringSpec, twist: Optional[Sequence[GradedClass]] = None) -> int:
    """``chi(W, xi')`` by HRR on W: ``integral_V Td(TV) Td^{-1}([W]) ch(pi^* xi) c1([W])``."""
    V = spec.total
    W = class_of_W(spec)
    twist = spec.twist if twist is None else twist
    td_tv = todd_of_sum(list(spec.tv_lines), V)
    td_inv_w = apply_genus_line(todd_inverse_series(V.top_degree), W)
    ch_xi = ch_of_sum([spec.up(x) for x in twist], V)
    return _integral_value(integrate(td_tv * td_inv_w * ch_xi * W), "W")


def riemann_hurwitz_genus(spec: CoveringSpec) -> int:
    """Genus of W for a cyclic cover of a curve with ``|Sigma| = d k`` simple branch points."""
    if spec.base.top_degree != 1:
        raise CoveringError("Riemann-Hurwitz needs a curve base")
    if spec.sections is not None and not spec.is_cyclic:
        raise CoveringError("Riemann-Hurwitz oracle is for cyclic covers")
    d, k = spec.degree, spec.k
    gS = spec.base_param if spec.base_kind == "curve" else 0
    chi2 = d * (2 * gS - 2) + d * k * (d - 1)  # 2 g_W - 2
    if chi2 % 2:
        raise CoveringError("Riemann-Hurwitz gives a non-integral genus")
    return chi2 // 2 + 1


# -- additivity report ------------------------------------------------------


@dataclass
class EulerReport:
    chi: Dict[str, int] = field(default_factory=dict)
    residuals: Dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r == 0 for r in self.residuals.values())

    def failed(self) -> List[str]:
        return [k for k, r in self.residuals.items() if r != 0]


def _chi_S_images(spec: CoveringSpec, images: DirectImages) -> int:
    """``sum_q (-1)^q chi(S, R^q pi_* eta (x) xi)``."""
    L = spec.line_class
    tot = 0
    for q, exps in ((0, images.r0), (1, images.r1)):
        for e in exps:
            tot += (-1) ** q * euler_char_S(spec, [L * e + x for x in spec.twist])
    return tot


def check_sequence_additivity(spec: CoveringSpec) -> EulerReport:
    """Euler characteristics of every sheaf in the short exact sequences of
    the construction, each evaluated by its own route, and the residuals
    ``chi(middle) - chi(left) - chi(right)`` plus Leray comparisons."""
    rep = EulerReport()
    d = spec.degree
    L = spec.line_class
    Sc = class_of_S(spec)
    Wc = class_of_W(spec)

    chi_V_xi = euler_char_V(spec, _twisted(spec, spec.total.zero()))
    chi_V_mW = euler_char_V(spec, _twisted(spec, -Wc))
    chi_W = euler_char_W(spec)
    chi_S_dirimg = sum(euler_char_S(spec, [c]) for c in direct_image(spec).classes())
    rep.chi.update({"V:xi": chi_V_xi, "V:[-W]xi": chi_V_mW, "W:xi'": chi_W, "S:R0piW*xi'": chi_S_dirimg})

    # 0 -> [-W] -> O_V -> j_* O_W -> 0
    rep.residuals["seq:ideal_W"] = chi_V_xi - chi_V_mW - chi_W
    # chi(W, xi') = chi(S, R^0 pi_W* xi')
    rep.residuals["direct_image"] = chi_W - chi_S_dirimg

    # 0 -> [-dS] -> O_V -> i_* O_S(sum L^{-i}) -> 0
    chi_V_mdS = euler_char_V(spec, _twisted(spec, -Sc * d))
    rep.chi["V:[-dS]xi"] = chi_V_mdS
    rep.residuals["seq:thickened_S"] = chi_V_xi - chi_V_mdS - chi_S_dirimg

    # 0 -> [-(i+1)S] -> [-iS] -> i_* L^{-i} -> 0, and their sum
    left_sum = mid_sum = right_sum = 0
    for i in range(d):
        mid = euler_char_V(spec, _twisted(spec, -Sc * i))
        left = euler_char_V(spec, _twisted(spec, -Sc * (i + 1)))
        right = euler_char_S(spec, [x - L * i for x in spec.twist])
        rep.chi[f"V:[-{i}S]xi"] = mid
        rep.residuals[f"seq:S_step_{i}"] = mid - left - right
        left_sum += left
        mid_sum += mid
        right_sum += right
    rep.residuals["seq:S_steps_summed"] = mid_sum - left_sum - right_sum

    # 0 -> R^0 pi_* O_V -> R^0 pi_W* O_W -> R^1 pi_* [-W] -> 0 on S
    rep.residuals["seq:S_split"] = chi_S_dirimg - euler_char_S(spec, list(spec.twist)) - (
        -_chi_S_images(spec, higher_direct_images_W(spec))
    )

    # Leray: chi(V, eta) = sum_q (-1)^q chi(S, R^q pi_* eta)
    for m in range(0, d + 2):
        lhs = euler_char_V(spec, _twisted(spec, -Sc * m))
        rhs = _chi_S_images(spec, higher_direct_images_S(m))
        rep.residuals[f"leray:[-{m}S]"] = lhs - rhs
    rep.residuals["leray:[-W]"] = chi_V_mW - _chi_S_images(spec, higher_direct_images_W(spec))
    for kk in range(0, d + 1):
        lhs = euler_char_V(spec, _twisted(spec, -spec.h * (kk + 1)))
        rhs = _chi_S_images(spec, higher_direct_images_O(kk))
        rep.residuals[f"leray:O(-{kk + 1})"] = lhs - rhs
    return rep


# -- smoothness over P^1 -----------------------------------------------------


@dataclass(frozen=True)
class SmoothnessResult:
    smooth: bool
    witness: Optional[Tuple[str, object, object]] = None  # (chart, base coord, fibre coord)


def check_smoothness(spec: CoveringSpec) -> SmoothnessResult:
    """Exact smoothness test of W over CP^1 in both affine charts.

    W is singular iff ``F = dF/dt = dF/dz = 0`` has a solution; the ideal of
    those three polynomials is the unit ideal exactly when it does not.
    """
    import sympy

    if spec.sections is None:
        raise CoveringError("smoothness check needs explicit sections over CP^1")
    z, t = sympy.symbols("z t")
    d, k = spec.degree, spec.k

    def poly(coeffs, var):
        return sum(sympy.Rational(c.numerator, c.denominator) * var**e for e, c in enumerate(coeffs))

    charts = []
    F0 = t**d + sum(poly(a, z) * t ** (d - i) for i, a in enumerate(spec.sections, start=1))
    charts.append(("z", F0))
    # w = 1/z, fibre coordinate rescaled by w^k
    w = z
    Finf = t**d
    for i, a in enumerate(spec.sections, start=1):
        ai = sympy.expand(w ** (i * k) * poly(a, 1 / w))
        Finf += ai * t ** (d - i)
    charts.append(("w", sympy.expand(Finf)))

    for name, F in charts:
        system = [F, sympy.diff(F, t), sympy.diff(F, z)]
        G = sympy.groebner(system, z, t, order="lex")
        if list(G.exprs) == [1]:
            continue
        sols = sympy.solve(list(G.exprs), [z, t], dict=True)
        if sols:
            s = sols[0]
            return SmoothnessResult(False, (name, s.get(z, 0), s.get(t, 0)))
        return SmoothnessResult(False, (name, None, None))
    return SmoothnessResult(True, None)
