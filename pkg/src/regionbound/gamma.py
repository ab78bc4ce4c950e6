"""Tables of per-layer region histograms for the two bound variants.

``gamma(variant, n, nprime)`` bounds the activation histogram of an
n-dimensional space cut by nprime hyperplanes.  The "ours" variant is
grown column by column from its first-layer seed via the shared
recursion; the "serra" variant has a binomial closed form.
"""
from __future__ import annotations

import threading
from enum import Enum

from .histogram import Histogram

DEFAULT_COLUMN_CAP = 4096


class GammaVariant(str, Enum):
    OURS = "ours"
    SERRA = "serra"


class ColumnCapExceeded(Exception):
    """Requested table column is larger than the configured memory cap."""

    def __init__(self, nprime: int, cap: int):
        super().__init__(
            f"gamma column too large: n'={nprime} exceeds cap {cap}")
        self.nprime = nprime
        self.cap = cap


# -- binomials (additive Pascal recurrence, exact) ----------------------------

_pascal_rows: list[tuple[int, ...]] = [(1,)]
_pascal_lock = threading.Lock()


def binomial_row(n: int) -> tuple[int, ...]:
    """Row n of Pascal's triangle: (C(n,0), ..., C(n,n))."""
    if n < 0:
        raise ValueError("negative row")
    if n < len(_pascal_rows):
        return _pascal_rows[n]
    with _pascal_lock:
        while len(_pascal_rows) <= n:
            prev = _pascal_rows[-1]
            row = (1,) + tuple(prev[i] + prev[i + 1]
                               for i in range(len(prev) - 1)) + (1,)
            _pascal_rows.append(row)
    return _pascal_rows[n]


def gamma_norm(n: int, nprime: int) -> int:
    """Total mass of gamma(n, nprime): sum_{s<=min(n,nprime)} C(nprime, s)."""
    if n < 0 or nprime < 0:
        raise ValueError("negative arguments")
    row = binomial_row(nprime)
    return sum(row[: min(n, nprime) + 1])


# -- seeds and closed forms ----------------------------------------------------

def first_layer_gamma(n: int) -> Histogram:
    """Tightest one-dimensional-input seed for n hyperplanes ("ours")."""
    if n < 1:
        raise ValueError("need at least one hyperplane")
    zeros = (n + 1) // 2 - 1
    return Histogram((0,) * zeros + (n % 2,) + (2,) * (n // 2) + (1,))


def serra_first_layer_gamma(n: int) -> Histogram:
    """Serra seed for one input dimension: (0,...,0,n,1)."""
    if n < 1:
        raise ValueError("need at least one hyperplane")
    return Histogram((0,) * (n - 1) + (n, 1))


def serra_gamma(n: int, nprime: int) -> Histogram:
    """Serra closed form: entry i is C(nprime, i) for i >= nprime - n."""
    if nprime < 1:
        raise ValueError("no hyperplanes")
    n = min(n, nprime)
    row = binomial_row(nprime)
    return Histogram((0,) * (nprime - n) + row[nprime - n:])


# -- shared column recursion ---------------------------------------------------

def column_by_recursion(variant: GammaVariant, nprime: int) -> tuple[Histogram, ...]:
    """Build the column (gamma(0,nprime), ..., gamma(nprime,nprime)) by the
    shared recursion gamma(n,m) = gamma(n-1,m-1) + dm(gamma(n,m-1)), keeping
    only two adjacent columns in memory.

    The variant only selects the n=1 seed.
    """
    if nprime < 1:
        raise ValueError("no hyperplanes")
    seed1 = (first_layer_gamma if variant is GammaVariant.OURS
             else serra_first_layer_gamma)
    col = [Histogram.unit(1), Histogram((1, 1))]
    for m in range(2, nprime + 1):
        nxt = [Histogram.unit(m), seed1(m)]
        for n in range(2, m):
            nxt.append(col[n - 1] + col[n].down_move())
        # gamma(m, m-1) equals gamma(m-1, m-1) by the n > n' rule
        nxt.append(col[m - 1] + col[m - 1].down_move())
        col = nxt
    return tuple(col)


class GammaProvider:
    """Caches completed gamma columns for one variant, under a memory cap.

    Completed columns are immutable and may be read concurrently; column
    construction is serialized.
    """

    def __init__(self, variant: GammaVariant | str = GammaVariant.OURS,
                 cap: int = DEFAULT_COLUMN_CAP):
        self.variant = GammaVariant(variant)
        if cap < 1:
            raise ValueError("cap must be positive")
        self.cap = cap
        self._columns: dict[int, tuple[Histogram, ...]] = {}
        self._lock = threading.Lock()

    def column(self, nprime: int) -> tuple[Histogram, ...]:
        """All gamma(n, nprime) for n = 0..nprime."""
        if nprime < 1:
            raise ValueError("no hyperplanes")
        if nprime > self.cap:
            raise ColumnCapExceeded(nprime, self.cap)
        col = self._columns.get(nprime)
        if col is not None:
            return col
        with self._lock:
            col = self._columns.get(nprime)
            if col is None:
                if self.variant is GammaVariant.SERRA:
                    col = tuple(serra_gamma(n, nprime)
                                for n in range(nprime + 1))
                else:
                    col = column_by_recursion(self.variant, nprime)
                self._columns[nprime] = col
        return col

    def gamma(self, n: int, nprime: int) -> Histogram:
        """gamma(n, nprime); for n > nprime this equals gamma(nprime, nprime)."""
        if n < 0:
            raise ValueError("negative dimension")
        return self.column(nprime)[min(n, nprime)]
