"""The cyclic group Z/dZ acting on a cyclic cover ``t^d + alpha_d = 0``.

g = j acts on the fibre coordinate by ``t -> zeta^j t`` and on functions by
pullback, ``(g.f)(t) = f(g^{-1} t)``, so the monomial ``t^j`` (the summand
``L^{-j}`` of the direct image) carries the character ``zeta^{-jg}``.  The
fixed locus of g != 0 in W is the branch locus ``Sigma = {alpha_d = 0}``,
where the tangent line of W is the fibre direction with weight ``zeta^g``.

Everything equivariant is exact in Q(zeta_d).  The R-genus enters as
high-precision floats multiplied by exact weights, so each R-term carries an
error bound inherited from the coefficient table.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Protocol, Sequence, Tuple

import mpmath
from mpmath import mpf

from . import terms
from .covering import (
    CoveringSpec,
    class_of_S,
    class_of_W,
    euler_char_S,
    riemann_hurwitz_genus,
)
from .cyclotomic import Cyclotomic
from .ring import GradedClass, integrate
from .series import (
    apply_genus_line,
    ch_line,
    ch_of_sum,
    equivariant_todd_line,
    power_sum,
    todd_inverse_series,
    todd_of_sum,
)
from .zeta import WORKING_DPS, Bounded, r_coefficient, r_coefficient_table


class EquivariantError(ValueError):
    pass


def _check_element(g: int, d: int):
    if not 0 <= g < d:
        raise EquivariantError(f"group element {g} outside Z/{d}")


def _require_cyclic(spec: CoveringSpec):
    if spec.sections is not None and not spec.is_cyclic:
        raise EquivariantError("the group action needs a cyclic cover (alpha_1 = ... = alpha_{d-1} = 0)")


def character_on_Lj(g: int, j: int, d: int) -> Cyclotomic:
    """Trace of g on the fibre monomial ``t^j``: ``zeta^{-jg}``."""
    _check_element(g, d)
    return Cyclotomic.zeta_power(d, -j * g)


def tangent_weight(g: int, d: int) -> Cyclotomic:
    """Eigenvalue of g on the fibre direction (also on ``N_{S/V}``)."""
    return Cyclotomic.zeta_power(d, g)


# -- fixed loci ---------------------------------------------------------------


@dataclass(frozen=True)
class FixedComponent:
    name: str
    dimension: int
    normal_weight: Optional[Cyclotomic]  # None: no normal direction inside the ambient space
    note: str = ""


@dataclass(frozen=True)
class FixedLocusData:
    """Fixed loci of g != 0: ``V^g = S + P(L)`` and ``W^g = Sigma``."""

    g: int
    d: int
    in_V: Tuple[FixedComponent, ...]
    in_W: Tuple[FixedComponent, ...]
    sigma_degree: Optional[int]


def fixed_locus(g: int, spec: CoveringSpec) -> FixedLocusData:
    d = spec.degree
    _check_element(g, d)
    if g == 0:
        raise EquivariantError("the identity fixes everything")
    _require_cyclic(spec)
    n = spec.base.top_degree
    zeta_g = tangent_weight(g, d)
    in_V = (
        FixedComponent("S", n, zeta_g, "zero section; normal bundle L"),
        FixedComponent("P(L)", n, zeta_g.inverse(), "section at infinity; normal bundle L^-1"),
    )
    in_W = (
        FixedComponent(
            "Sigma",
            n - 1,
            zeta_g,
            "normal in W = normal of S in V; normal in S = normal of W in V (trivial action)",
        ),
    )
    sigma = spec.degree * spec.k if n == 1 else None
    return FixedLocusData(g, d, in_V, in_W, sigma)


# -- Lefschetz numbers --------------------------------------------------------


def equivariant_euler_direct(g: int, spec: CoveringSpec) -> Cyclotomic:
    """``sum_j zeta^{-jg} chi(S, L^{-j} (x) xi)``."""
    d = spec.degree
    _check_element(g, d)
    _require_cyclic(spec)
    L = spec.line_class
    out = Cyclotomic(d, [0])
    for j in range(d):
        chi = euler_char_S(spec, [x - L * j for x in spec.twist])
        out = out + character_on_Lj(g, j, d) * chi
    return out


def atiyah_bott_fixed_point(g: int, spec: CoveringSpec) -> Cyclotomic:
    """Fixed-point side over a curve base: ``|Sigma|`` points, each contributing
    ``rank(xi) / (1 - zeta^{-g})``."""
    d = spec.degree
    _check_element(g, d)
    if g == 0:
        raise EquivariantError("the fixed-point formula needs g != 0")
    _require_cyclic(spec)
    if spec.base.top_degree != 1:
        raise EquivariantError("the fixed-point route is implemented for curve bases")
    points = fixed_locus(g, spec).sigma_degree
    local = Cyclotomic(d, [1]) / (1 - tangent_weight(g, d).inverse())
    return local * (points * spec.rank_xi)


def ch_g_direct_image(g: int, spec: CoveringSpec) -> GradedClass:
    """``sum_j zeta^{-jg} ch(L^{-j})`` on S, with Q(zeta_d) coefficients."""
    d = spec.degree
    _check_element(g, d)
    out = spec.base.zero()
    for j in range(d):
        out = out + ch_line(spec.line_class * (-j)) * character_on_Lj(g, j, d)
    return out


def todd_g_normal(g: int, spec: CoveringSpec) -> GradedClass:
    """Equivariant Todd class of ``N_{S/V} = L`` (weight ``zeta^g``) on S."""
    series = equivariant_todd_line(g, spec.degree, spec.base.top_degree)
    return apply_genus_line(series, spec.line_class)


def telescoping_on_infinity_section(spec: CoveringSpec) -> dict:
    """The P(L) pieces of the localized formula cancel.

    P(L) is the section at infinity, of class h, disjoint from S, so
    ``[S]`` and ``[W]`` restrict to zero on it.  Returns the residual of each
    identity; all must vanish.
    """
    V = spec.total
    h = spec.h
    S = class_of_S(spec)
    d = spec.degree
    out = {"S.P(L)": h * S}
    tele = V.zero()
    for i in range(1, d + 1):
        tele = tele + (ch_line(S * (-i)) - ch_line(S * (-(i - 1)))) * h
    out["telescoping"] = tele
    out["[-W]|P(L)=O"] = ch_line(class_of_W(spec) * -1) * h - h
    return {k: v.is_zero() for k, v in out.items()}


# -- R-terms -------------------------------------------------------------------


def _odd_orders(n: int) -> List[int]:
    return list(range(1, n + 1, 2))


def _combine(weights: Sequence[Tuple[int, object]], dps: int, complex_weights: bool = False):
    """``sum_n w_n r_n`` with ``sum |w_n| bound_n`` (plus a rounding allowance)."""
    with mpmath.workdps(dps):
        val = mpmath.mpc(0) if complex_weights else mpf(0)
        bound = mpf(0)
        for n, w in weights:
            r = r_coefficient(n, dps)
            wv = w.to_mpc() if isinstance(w, Cyclotomic) else mpf(w.numerator) / w.denominator
            val += wv * r.value
            bound += abs(wv) * r.bound
        bound += abs(val) * mpf(10) ** (-dps + 5)
        return +val, +bound


@dataclass(frozen=True)
class RTermResult:
    base_term: terms.Term   # integral over S
    cover_term: terms.Term  # integral over W
    combined: terms.Term    # base_term - cover_term
    base_weights: Tuple[Tuple[int, Fraction], ...]
    cover_weights: Tuple[Tuple[int, Fraction], ...]

    @property
    def value(self):
        return self.combined.value


def _base_weights(spec: CoveringSpec, character: Optional[int] = None) -> List[Tuple[int, object]]:
    S = spec.base
    td = todd_of_sum(list(spec.tangent_lines), S)
    if character is None:
        chR = ch_of_sum([spec.line_class * (-j) for j in range(spec.degree)], S)
    else:
        chR = ch_g_direct_image(character, spec)
    chxi = ch_of_sum(list(spec.twist), S)
    common = td * chR * chxi
    return [(n, integrate(common * power_sum(list(spec.tangent_lines), n, S))) for n in _odd_orders(S.top_degree)]


def _cover_weights(spec: CoveringSpec) -> List[Tuple[int, Fraction]]:
    V = spec.total
    W = class_of_W(spec)
    td_tw = todd_of_sum(list(spec.tv_lines), V) * apply_genus_line(todd_inverse_series(V.top_degree), W)
    chxi = ch_of_sum([spec.up(x) for x in spec.twist], V)
    common = td_tw * chxi * W
    out = []
    for n in _odd_orders(spec.base.top_degree):
        pn = power_sum(list(spec.tv_lines), n, V) - W**n  # p_n(TW) = p_n(TV) - p_n(N_W)
        out.append((n, Fraction(integrate(common * pn))))
    return out


def theorem32_R_terms(spec: CoveringSpec, dps: int = WORKING_DPS) -> RTermResult:
    """``int_S Td R(TS) ch(R pi_W* O_W) ch(xi) - int_W Td R(TW) ch(xi')``.

    Each integral is ``sum_n w_n r_n`` with exact weights ``w_n`` (odd n) and
    R-coefficients ``r_n`` carrying error bounds.
    """
    bw = [(n, Fraction(w)) for n, w in _base_weights(spec)]
    cw = _cover_weights(spec)
    bv, bb = _combine(bw, dps)
    cv, cb = _combine(cw, dps)
    base = terms.numeric("R_base", bv, bb, "integral over S of Td R(TS) ch(direct image) ch(xi)")
    cover = terms.numeric("R_cover", cv, cb, "integral over W of Td R(TW) ch(xi')")
    comb = terms.numeric("R_difference", bv - cv, bb + cb, "R_base - R_cover")
    return RTermResult(base, cover, comb, tuple(bw), tuple(cw))


def theorem32_R_terms_curve_dual(spec: CoveringSpec, dps: int = WORKING_DPS) -> Tuple[mpf, mpf]:
    """Independent route on a curve base: only ``r_1`` contributes, against
    the degrees of the tangent bundles, and the genus of W comes from
    Riemann-Hurwitz rather than from classes on V."""
    if spec.base.top_degree != 1:
        raise EquivariantError("the dual route is for curve bases")
    gS = spec.base_param if spec.base_kind == "curve" else 0
    gW = riemann_hurwitz_genus(spec)
    r1 = r_coefficient(1, dps).value
    rank = spec.rank_xi
    # only the degree-0 parts of Td and ch multiply the degree-1 class r_1 c_1
    base = r1 * (2 - 2 * gS) * spec.degree * rank
    cover = r1 * (2 - 2 * gW) * rank
    return base, cover


# -- equivariant R-genus provider ----------------------------------------------


class EquivariantRProvider(Protocol):
    """Coefficients of ``R(theta, x)`` in x for a rotation angle ``theta`` in [0, 1).

    Contract: ``coefficients(0, N)`` equals the ordinary R-genus.
    """

    name: str
    placeholder: bool

    def coefficients(self, theta: Fraction, order: int) -> Optional[List[Bounded]]:
        ...


class TrivialAngleProvider:
    """Knows ``R(0, x) = R(x)`` and nothing else."""

    name = "trivial-angle"
    placeholder = False

    def __init__(self, dps: int = WORKING_DPS):
        self.dps = dps

    def coefficients(self, theta: Fraction, order: int) -> Optional[List[Bounded]]:
        if theta != 0:
            return None
        table = r_coefficient_table(order, self.dps)
        return [table.coefficient(n) for n in range(order + 1)]


class ZeroRProvider:
    """Placeholder returning zeros; anything computed from it stays pending."""

    name = "zero-placeholder"
    placeholder = True

    def coefficients(self, theta: Fraction, order: int) -> Optional[List[Bounded]]:
        return [Bounded(mpf(0), mpf(0)) for _ in range(order + 1)]


def check_provider_contract(provider: EquivariantRProvider, order: int = 5, tol: float = 1e-12) -> bool:
    got = provider.coefficients(Fraction(0), order)
    if got is None:
        return False
    for n in range(order + 1):
        ref = r_coefficient(n)
        if abs(got[n].value - ref.value) > tol * max(1, abs(ref.value)):
            return False
    return True


def character_R_term(g: int, spec: CoveringSpec, dps: int = WORKING_DPS) -> terms.Term:
    """``int_S Td(TS) R(TS) ch(xi) ch_g(R pi_W* O_W)``; any g, including 0."""
    d = spec.degree
    _check_element(g, d)
    w = _base_weights(spec, character=g)
    w = [(n, c if isinstance(c, Cyclotomic) else Cyclotomic(d, [c])) for n, c in w]
    if all(c == 0 for _, c in w):
        return terms.exact(
            "R_character",
            Fraction(0),
            "every weight vanishes exactly in Q(zeta_d) (full character sum against degree-0 data)",
            weights=[(n, c) for n, c in w],
        )
    val, bound = _combine(w, dps, complex_weights=True)
    return terms.numeric(
        "R_character",
        val,
        bound,
        "integral over S of Td R(TS) ch(xi) ch_g(direct image)",
        weights=[(n, c) for n, c in w],
    )


def fixed_point_R_term(
    g: int, spec: CoveringSpec, provider: Optional[EquivariantRProvider] = None, dps: int = WORKING_DPS
) -> terms.Term:
    """``-int_Sigma Td_g(TW) R_g(TW) ch(xi)``.

    On a curve base Sigma is ``d k`` points; at each the tangent line of W
    has weight ``zeta^g`` and zero Chern class, so the integrand is
    ``rank(xi) R(g/d, 0) / (1 - zeta^{-g})``.
    """
    d = spec.degree
    theta = Fraction(g, d)
    if spec.base.top_degree != 1:
        return terms.pending("R_fixed_point", "fixed-point R-term implemented for curve bases only")
    if provider is None:
        return terms.pending("R_fixed_point", "no provider for the equivariant R-series", theta=theta)
    coeffs = provider.coefficients(theta, spec.base.top_degree)
    if coeffs is None:
        return terms.pending(
            "R_fixed_point", f"provider {provider.name} has no series at this angle", theta=theta
        )
    local = (Cyclotomic(d, [1]) / (1 - tangent_weight(g, d).inverse())) * (-(spec.degree * spec.k * spec.rank_xi))
    with mpmath.workdps(dps):
        val = local.to_mpc() * coeffs[0].value
        bound = abs(local.to_mpc()) * coeffs[0].bound
    if provider.placeholder:
        return terms.pending(
            "R_fixed_point",
            f"provider {provider.name} is a placeholder",
            theta=theta,
            placeholder_value=val,
        )
    return terms.numeric("R_fixed_point", val, bound, "sum over Sigma of degree-0 data", theta=theta)


def theorem41_topological_terms(
    g: int, spec: CoveringSpec, provider: Optional[EquivariantRProvider] = None, dps: int = WORKING_DPS
) -> List[terms.Term]:
    d = spec.degree
    _check_element(g, d)
    if g == 0:
        raise EquivariantError("the equivariant formula is stated for g != 0")
    _require_cyclic(spec)
    return [character_R_term(g, spec, dps), fixed_point_R_term(g, spec, provider, dps)]


def lefschetz_table(spec: CoveringSpec) -> List[Tuple[int, Cyclotomic, Optional[Cyclotomic]]]:
    """``(g, direct, fixed-point)`` for every g; the fixed-point column is None at g = 0."""
    out = []
    for g in range(spec.degree):
        direct = equivariant_euler_direct(g, spec)
        fp = atiyah_bott_fixed_point(g, spec) if g else None
        out.append((g, direct, fp))
    return out


def invariant_part(spec: CoveringSpec) -> Cyclotomic:
    """``(1/d) sum_g chi_g``: the dimension count of the invariant part."""
    d = spec.degree
    tot = Cyclotomic(d, [0])
    for g in range(d):
        tot = tot + equivariant_euler_direct(g, spec)
    return tot / d
