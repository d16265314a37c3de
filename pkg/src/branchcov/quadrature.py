"""Log-norm integrals of sections of O(m) over P^1 with Fubini-Study metrics.

``||s||^2(z) = c |p(z)|^2 / (1 + |z|^2)^m`` and ``omega = dA / (pi (1 + |z|^2)^2)``
(total mass 1).  The sphere is split into the discs ``|z| <= 1`` and
``|w| <= 1`` with ``w = 1/z``; in the second chart the section is
``q(w) = w^m p(1/w)`` and both the norm and the form keep the same shape.
Each disc is integrated in polar coordinates by an adaptive tensor
Gauss-Legendre rule: a cell's error estimate is the difference between its
own rule and the sum over its four children, and the worst cell is split
first.  Zeros of the section are integrable logarithmic singularities; the
adaptivity concentrates cells around them.

The cell tree depends only on the section and the tolerances, and the final
sum is an exactly rounded ``math.fsum`` over the leaves in a canonical
order, so results are reproducible bit for bit.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from . import terms
from .covering import CoveringSpec
from .cyclotomic import Cyclotomic
from .equivariant import EquivariantError, tangent_weight, todd_g_normal
from .ring import integrate
from .series import apply_genus_line, ch_of_sum, todd_inverse_series, todd_of_sum


class QuadratureError(ArithmeticError):
    def __init__(self, message: str, partial: "QuadratureResult" = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class FSSection:
    """Section of O(m) given by ascending affine coefficients; ``scale``
    multiplies the metric."""

    m: int
    coeffs: Tuple[complex, ...]
    scale: float = 1.0

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        if not c:
            raise ValueError("the zero section has no log-norm")
        if len(c) - 1 > self.m:
            raise ValueError(f"degree {len(c) - 1} exceeds the twist {self.m}")
        if not self.scale > 0:
            raise ValueError("metric scale must be positive")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, m: int, power: Optional[int] = None, scale: float = 1.0) -> "FSSection":
        power = m if power is None else power
        return cls(m, (0,) * power + (1,), scale)

    def chart(self, which: int) -> np.ndarray:
        """Descending coefficients (numpy order) of the section in a chart."""
        asc = list(self.coeffs) + [0j] * (self.m + 1 - len(self.coeffs))
        if which == 0:
            return np.array(asc[::-1], dtype=complex)
        return np.array(asc, dtype=complex)  # q(w) = w^m p(1/w) reverses the list

    def times(self, other: "FSSection") -> "FSSection":
        prod = np.convolve(np.array(self.coeffs), np.array(other.coeffs))
        return FSSection(self.m + other.m, tuple(prod), self.scale * other.scale)

    def rotated(self, phi: float) -> "FSSection":
        """``s(e^{i phi} z)``."""
        return FSSection(self.m, tuple(c * complex(math.cos(n * phi), math.sin(n * phi)) for n, c in enumerate(self.coeffs)), self.scale)

    def log_norm2(self, z: complex) -> float:
        p = np.polyval(self.chart(0), z)
        return math.log(self.scale) + math.log(abs(p) ** 2) - self.m * math.log1p(abs(z) ** 2)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    refinement_levels: int
    history: Tuple[Tuple[float, float, int], ...] = field(default=())  # (value, estimate, cells) per level

    @property
    def estimates(self) -> List[float]:
        return [e for _, e, _ in self.history]


def analytic_log_norm_integral(s: FSSection) -> float:
    """Closed form: ``log c + log|lead|^2 + sum_roots log(1 + |z_i|^2) - m``.

    Each finite zero a contributes ``log(1 + |a|^2) - 1``, each zero at
    infinity ``-1``.  Independent of the quadrature; used as its oracle.
    """
    coeffs = np.array(s.coeffs[::-1])
    roots = np.roots(coeffs) if len(coeffs) > 1 else []
    val = math.log(s.scale) + math.log(abs(coeffs[0]) ** 2) - s.m
    for a in roots:
        val += math.log1p(abs(a) ** 2)
    return val


# -- the adaptive rule ----------------------------------------------------------

_NODES = 8


def _gl(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1) / 2, w / 2


_X, _W = _gl(_NODES)
_WW = np.outer(_W, _W)


def _rule(poly: np.ndarray, m: int, log_scale: float, cells: np.ndarray) -> np.ndarray:
    """Tensor GL rule on cells ``(r0, r1, t0, t1)`` (shape K x 4)."""
    r0, r1, t0, t1 = cells.T
    dr, dt = r1 - r0, t1 - t0
    r = r0[:, None] + dr[:, None] * _X[None, :]
    t = t0[:, None] + dt[:, None] * _X[None, :]
    R = r[:, :, None]
    z = R * np.exp(1j * t[:, None, :])
    p = np.polyval(poly, z)
    r2 = R * R
    f = log_scale + np.log(np.abs(p) ** 2) - m * np.log1p(r2)
    f = f * R / (np.pi * (1 + r2) ** 2)
    if not np.all(np.isfinite(f)):
        raise QuadratureError("section vanishes at a quadrature node")
    return (f * _WW[None]).sum(axis=(1, 2)) * dr * dt


def _children(cells: np.ndarray) -> np.ndarray:
    r0, r1, t0, t1 = cells.T
    rm, tm = (r0 + r1) / 2, (t0 + t1) / 2
    kids = np.stack(
        [
            np.stack([r0, rm, t0, tm], 1),
            np.stack([r0, rm, tm, t1], 1),
            np.stack([rm, r1, t0, tm], 1),
            np.stack([rm, r1, tm, t1], 1),
        ],
        1,
    )
    return kids.reshape(-1, 4)


class _Chart:
    def __init__(self, s: FSSection, which: int):
        self.poly = s.chart(which)
        self.m = s.m
        self.log_scale = math.log(s.scale)
        self.which = which

    def evaluate(self, cells: np.ndarray):
        """For each cell: (coarse value, fine value)."""
        coarse = _rule(self.poly, self.m, self.log_scale, cells)
        fine = _rule(self.poly, self.m, self.log_scale, _children(cells)).reshape(-1, 4).sum(axis=1)
        return coarse, fine


def fs_log_norm_integral(
    s: FSSection,
    tol: float = 1e-8,
    max_cells: int = 200_000,
    min_levels: int = 3,
    max_levels: int = 40,
) -> QuadratureResult:
    """``int_{P^1} log ||s||^2 omega_FS``.

    Refinement proceeds in levels; level l refines until the summed error
    estimate drops below a tenth of level l-1's (but not below ``tol``
    once ``min_levels`` have been recorded).
    """
    charts = [_Chart(s, 0), _Chart(s, 1)]
    leaves = {}  # key -> (fine value, estimate)
    heap: List[Tuple[float, tuple]] = []

    def add(chart: _Chart, cells: np.ndarray):
        coarse, fine = chart.evaluate(cells)
        added = 0.0
        for c, v0, v1 in zip(cells, coarse, fine):
            key = (chart.which, float(c[0]), float(c[2]), float(c[1]), float(c[3]))
            est = float(abs(v1 - v0))
            leaves[key] = (float(v1), est)
            heapq.heappush(heap, (-est, key))
            added += est
        return added

    r_edges = np.linspace(0, 1, 3)
    t_edges = np.linspace(0, 2 * np.pi, 9)
    init = np.array(
        [[r_edges[i], r_edges[i + 1], t_edges[j], t_edges[j + 1]] for i in range(2) for j in range(8)]
    )
    for ch in charts:
        add(ch, init)

    def totals():
        keys = sorted(leaves)
        return math.fsum(leaves[k][0] for k in keys), math.fsum(leaves[k][1] for k in keys)

    history: List[Tuple[float, float, int]] = []
    value, est = totals()
    history.append((value, est, len(leaves)))
    while est > tol or len(history) < min_levels:
        if len(history) >= max_levels:
            break
        target = est / 10
        if len(history) >= min_levels:
            target = max(target, tol)
        running = est
        while running > target:
            if len(leaves) > max_cells:
                part = QuadratureResult(value, est, len(history), tuple(history))
                raise QuadratureError(f"no convergence within {max_cells} cells (estimate {running:.3e})", part)
            neg, key = heapq.heappop(heap)
            if key not in leaves or leaves[key][1] != -neg:
                continue
            old = leaves.pop(key)
            chart = charts[key[0]]
            cell = np.array([[key[1], key[3], key[2], key[4]]])
            running += add(chart, _children(cell)) - old[1]
        value, est = totals()
        history.append((value, est, len(leaves)))
    if est > tol:
        raise QuadratureError(
            f"estimate {est:.3e} above tolerance after {max_levels} levels",
            QuadratureResult(value, est, len(history), tuple(history)),
        )
    return QuadratureResult(value, est, len(history), tuple(history))


def monotone_tail(res: QuadratureResult, count: int = 3) -> bool:
    e = res.estimates[-count:]
    return len(e) == count and all(b < a for a, b in zip(e, e[1:]))


def successive_agreement(res: QuadratureResult) -> bool:
    h = res.history
    return all(abs(h[i][0] - h[i - 1][0]) <= h[i - 1][1] for i in range(1, len(h)))


# -- the log-norm term of the equivariant formula -------------------------------


def _require_p1_cyclic(g: int, spec: CoveringSpec):
    if spec.base_kind != "cp1":
        raise EquivariantError("metric terms are implemented over P^1 only")
    if spec.sections is None or not spec.is_cyclic:
        raise EquivariantError("metric terms need an explicit cyclic cover")
    if not 0 < g < spec.degree:
        raise EquivariantError("metric terms of the equivariant formula need g != 0")


def section_of_branch_locus(spec: CoveringSpec, scale: float = 1.0) -> FSSection:
    """``alpha_d`` as a section of ``O(d k)``."""
    return FSSection(spec.degree * spec.k, tuple(complex(c) for c in spec.sections[-1]), scale)


def log_term_prefactor(g: int, spec: CoveringSpec) -> Tuple[Cyclotomic, Cyclotomic]:
    """Degree-0 and degree-2 parts of ``Td(TS) Td_g(N_{S/V}) Td^{-1}([W]) ch(xi)`` on S.

    With Fubini-Study representatives every class on P^1 is a multiple of
    the unit-mass form, so against a function only the degree-2 part
    survives: the term is ``(degree-2 mass) * int log||alpha_d||^2 omega``.
    The degree-0 part is returned for the report.
    """
    S = spec.base
    d = spec.degree
    td = todd_of_sum(list(spec.tangent_lines), S)
    tdg = todd_g_normal(g, spec)
    w_on_s = spec.line_class * d  # [W] restricted to S is L^d
    tdinv = apply_genus_line(todd_inverse_series(S.top_degree), w_on_s)
    form = td * tdg * tdinv * ch_of_sum(list(spec.twist), S)
    lift = lambda c: c if isinstance(c, Cyclotomic) else Cyclotomic(d, [c])
    return lift(form.constant()), lift(integrate(form))


def _branch_points(s: FSSection) -> List[Tuple[int, complex]]:
    """Zeros as (chart, coordinate); a zero at infinity is w = 0 in chart 1."""
    pts = [(0, complex(a)) for a in np.roots(np.array(s.coeffs[::-1]))] if len(s.coeffs) > 1 else []
    pts += [(1, 0j)] * (s.m - (len(s.coeffs) - 1))
    return pts


def differential_norms(s: FSSection) -> List[float]:
    """``||d alpha(p)||^2`` at each zero, with ``||d/dz||^2 = (1+|z|^2)^{-2}`` on TP^1.

    In either chart this is ``|p'(z)|^2 (1 + |z|^2)^{2 - m}`` times the metric scale.
    """
    out = []
    for which, z in _branch_points(s):
        poly = s.chart(which)
        dp = np.polyval(np.polyder(poly), z)
        out.append(s.scale * abs(dp) ** 2 * (1 + abs(z) ** 2) ** (2 - s.m))
    return out


def theorem41_log_term(g: int, spec: CoveringSpec, s: Optional[FSSection] = None, tol: float = 1e-8) -> terms.Term:
    """``int_S Td(TS) Td_g(N) Td^{-1}([W]) ch(xi) log||alpha_d||^2``."""
    _require_p1_cyclic(g, spec)
    s = section_of_branch_locus(spec) if s is None else s
    p0, p2 = log_term_prefactor(g, spec)
    q = fs_log_norm_integral(s, tol=tol)
    with mpmath.workdps(30):
        c = p2.to_mpc()
        val = c * q.value
        bound = abs(c) * q.error_estimate
    return terms.numeric(
        "log_norm",
        val,
        bound,
        "degree-2 prefactor mass times the Fubini-Study log-norm integral",
        prefactor_degree0=p0,
        prefactor_mass=p2,
        integral=q.value,
        integral_error=q.error_estimate,
        levels=q.refinement_levels,
    )


def normal_metric_term(g: int, spec: CoveringSpec, s: Optional[FSSection] = None) -> terms.Term:
    """``int_Sigma Td(TS) Td_g(N_{S/V}) tilde-Td^{-1}(N_{W/V}, h^{[dS]}, h^N) ch(xi)``.

    At a branch point p the normal line of W is identified with ``[dS]`` by
    ``d alpha_d``, so ``h^N / h^{[dS]} = 1 / ||d alpha_d(p)||^2`` and the
    degree-0 Bott-Chern class of ``Td^{-1}`` is ``-1/2 log`` of that ratio.
    The per-point logs are reported; their spread is how far a single
    constant rescaling of ``h^{[dS]}`` is from making the identification
    isometric on Sigma.
    """
    _require_p1_cyclic(g, spec)
    s = section_of_branch_locus(spec) if s is None else s
    d = spec.degree
    local = Cyclotomic(d, [1]) / (1 - tangent_weight(g, d).inverse()) * spec.rank_xi
    logs = [math.log(v) for v in differential_norms(s)]
    fit = math.fsum(logs) / len(logs)
    spread = max(abs(x - fit) for x in logs)
    with mpmath.workdps(30):
        val = local.to_mpc() * mpmath.mpf(math.fsum(logs)) / 2
        bound = abs(val) * mpmath.mpf(2) ** -50 * len(logs)
    return terms.numeric(
        "normal_metric",
        val,
        bound,
        "branch-point sum of the degree-0 Bott-Chern class",
        local_factor=local,
        point_logs=logs,
        constant_fit=fit,
        constant_fit_discrepancy=spread,
    )


@dataclass(frozen=True)
class ScaleProbe:
    scale: float
    measured: float
    predicted: float
    residual: float
    bound: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.bound


def lemma34_consistency_probe(
    spec: CoveringSpec, scales: Sequence[float] = (2.0, 0.25), g: int = 1, tol: float = 1e-8
) -> List[ScaleProbe]:
    """Rescale ``h^{[dS]}`` by constants and compare the change of the log-norm
    term with the transgression ``log c * (prefactor mass)``."""
    _require_p1_cyclic(g, spec)
    _, p2 = log_term_prefactor(g, spec)
    mass = complex(p2.to_complex())
    ref = fs_log_norm_integral(section_of_branch_locus(spec), tol=tol)
    out = []
    for c in scales:
        q = fs_log_norm_integral(section_of_branch_locus(spec, c), tol=tol)
        measured = mass * (q.value - ref.value)
        predicted = mass * math.log(c)
        bound = abs(mass) * (q.error_estimate + ref.error_estimate) + 1e-14 * abs(predicted)
        out.append(ScaleProbe(c, measured.real, predicted.real, abs(measured - predicted), bound))
    return out
