"""Torsion of exact sequences of finite-dimensional based vector spaces.

For ``0 -> V_0 -> V_1 -> ... -> V_n -> 0`` with maps ``f_i: V_i -> V_{i+1}``
pick vectors ``b_i`` in ``V_i`` whose images span ``im f_i``.  Then
``[f_{i-1}(b_{i-1}), b_i]`` is a basis of ``V_i`` and

    torsion = prod_i det[f_{i-1}(b_{i-1}), b_i / c_i] ** ((-1) ** (i + 1))

where ``c_i`` is the given basis.  For ``0 -> A --M--> A -> 0`` this is
``det M``.  The value does not depend on the choice of the ``b_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import linalg
from .linalg import Matrix


class NotExactError(ValueError):
    pass


@dataclass(frozen=True)
class BasedExactSequence:
    """``dims[i]`` is the dimension of the i-th space, ``maps[i]`` the matrix
    of ``V_i -> V_{i+1}`` (``dims[i+1]`` rows, ``dims[i]`` columns)."""

    dims: Tuple[int, ...]
    maps: Tuple[Matrix, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ValueError("need one map between each pair of consecutive spaces")
        for i, m in enumerate(self.maps):
            r, c = len(m), (len(m[0]) if m else 0)
            if r != self.dims[i + 1] or (r and c != self.dims[i]):
                raise ValueError(f"map {i} has shape {r}x{c}, expected {self.dims[i + 1]}x{self.dims[i]}")

    def map(self, i: int) -> Matrix:
        """``f_i``, with the zero maps at both ends."""
        if 0 <= i < len(self.maps):
            return self.maps[i]
        rows = self.dims[i + 1] if 0 <= i + 1 < len(self.dims) else 0
        cols = self.dims[i] if 0 <= i < len(self.dims) else 0
        return linalg.zeros(rows, cols)

    def ranks(self) -> List[int]:
        return [linalg.rank(m) for m in self.maps]

    def exactness_certificate(self) -> List[Tuple[int, int, int]]:
        """``(dim V_i, rank f_{i-1}, rank f_i)`` for every i; raises if not exact."""
        ranks = [0] + self.ranks() + [0]
        cert = []
        for i, n in enumerate(self.dims):
            if i >= 1 and i < len(self.maps):
                comp = linalg.matmul(self.maps[i], self.maps[i - 1], inner=n)
                if not linalg.is_zero(comp):
                    raise NotExactError(f"f_{i} o f_{i - 1} != 0")
            if ranks[i] + ranks[i + 1] != n:
                raise NotExactError(
                    f"not exact at position {i} ({self.labels[i] if self.labels else ''}): "
                    f"dim {n}, rank in {ranks[i]}, rank out {ranks[i + 1]}"
                )
            cert.append((n, ranks[i], ranks[i + 1]))
        return cert

    def is_exact(self) -> bool:
        try:
            self.exactness_certificate()
        except NotExactError:
            return False
        return True


def torsion_of_based_sequence(seq: BasedExactSequence) -> Fraction:
    seq.exactness_certificate()
    out = Fraction(1)
    images: List[List[Fraction]] = []
    for i, n in enumerate(seq.dims):
        f = seq.map(i)
        _, pivots = linalg.rref(f) if f else (None, [])
        lifts = []
        for p in pivots:
            e = [Fraction(0)] * n
            e[p] = Fraction(1)
            lifts.append(e)
        cols = images + lifts
        if len(cols) != n:
            raise NotExactError(f"basis defect at position {i}")
        D = linalg.det(linalg.hstack(cols, n)) if n else Fraction(1)
        if D == 0:
            raise NotExactError(f"degenerate basis at position {i}")
        out *= D if i % 2 == 1 else 1 / D
        images = [linalg.column(f, p) for p in pivots]
    return out


def direct_sum(a: BasedExactSequence, b: BasedExactSequence) -> BasedExactSequence:
    """Termwise sum; the basis of each term lists ``a``'s vectors first."""
    if len(a.dims) != len(b.dims):
        raise ValueError("sequences of different length")
    maps = []
    for i in range(len(a.maps)):
        maps.append(
            linalg.block_diag(
                a.maps[i], (a.dims[i + 1], a.dims[i]), b.maps[i], (b.dims[i + 1], b.dims[i])
            )
        )
    return BasedExactSequence(tuple(x + y for x, y in zip(a.dims, b.dims)), tuple(maps), a.labels)


def direct_sum_sign(a: BasedExactSequence, b: BasedExactSequence) -> int:
    """``torsion(a + b) = sign * torsion(a) * torsion(b)``.

    Reordering ``[f(b^a), f(b^b), b^a_i, b^b_i]`` into blocks moves ``b^a_i``
    past ``f(b^b_{i-1})``.
    """
    ra, rb = [0] + a.ranks(), [0] + b.ranks()
    ra.append(0)
    rb.append(0)
    e = sum(ra[i + 1] * rb[i] for i in range(len(a.dims)))
    return -1 if e % 2 else 1


def change_basis(seq: BasedExactSequence, position: int, P: Matrix) -> BasedExactSequence:
    """Replace the basis ``c`` of ``V_position`` by ``c P`` (columns of P are
    the new vectors in old coordinates)."""
    Pinv = linalg.inverse(P)
    maps = list(seq.maps)
    n = seq.dims[position]
    if position < len(maps):
        maps[position] = linalg.matmul(maps[position], P, inner=n)
    if position >= 1:
        maps[position - 1] = linalg.matmul(Pinv, maps[position - 1])
    return BasedExactSequence(seq.dims, tuple(maps), seq.labels)


def splice_two_term(dim: int, M: Matrix) -> BasedExactSequence:
    """``0 -> A --M--> A -> 0``."""
    return BasedExactSequence((dim, dim), (M,))


def concatenate(parts: Sequence[BasedExactSequence], joins: Optional[Sequence[Matrix]] = None) -> BasedExactSequence:
    """Join sequences end to start with zero maps (or the given connecting maps)."""
    dims: List[int] = []
    maps: List[Matrix] = []
    labels: List[str] = []
    for k, p in enumerate(parts):
        if k:
            J = joins[k - 1] if joins else linalg.zeros(p.dims[0], dims[-1])
            maps.append(J)
        dims.extend(p.dims)
        maps.extend(p.maps)
        labels.extend(p.labels or [""] * len(p.dims))
    return BasedExactSequence(tuple(dims), tuple(maps), tuple(labels))
