"""Bound evaluation over resolved stage sequences.

Runs the histogram through one transform per stage, handling nested
skip/residual segments by composing the segment's matrix and taking its
column-norm diagonal.  All arithmetic is exact.
"""
from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import transfer
from .archspec import ResolvedStage, mlp, resolve
from .gamma import DEFAULT_COLUMN_CAP, GammaProvider, GammaVariant
from .histogram import Histogram


@dataclass(frozen=True)
class BoundReport:
    bound: int
    variant: GammaVariant
    per_stage: tuple[tuple[str, Histogram], ...]
    scientific: str


def scientific(n: int, digits: int = 4) -> str:
    """Render an exact integer as "m.mmm x 10^e" with the given mantissa digits."""
    if digits < 1:
        raise ValueError("need at least one mantissa digit")
    if n < 0:
        raise ValueError("bounds are non-negative")
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        d = +decimal.Decimal(n)
    sign, mantissa_digits, exponent = d.as_tuple()
    exp = exponent + len(mantissa_digits) - 1
    ds = "".join(str(x) for x in mantissa_digits).ljust(digits, "0")
    if digits == 1:
        return f"{ds}×10^{exp}"
    return f"{ds[0]}.{ds[1:]}×10^{exp}"


def format_ratio(ratio: Fraction, digits: int = 4) -> str:
    """Decimal rendering of an exact rational, scientific when large."""
    with decimal.localcontext() as ctx:
        ctx.prec = max(digits, 1)
        d = decimal.Decimal(ratio.numerator) / decimal.Decimal(ratio.denominator)
    exp = d.adjusted()
    if 0 <= exp < digits + 3:
        with decimal.localcontext() as ctx:
            ctx.prec = max(digits, exp + 1)
            d = decimal.Decimal(ratio.numerator) / decimal.Decimal(
                ratio.denominator)
        return str(d)
    sign, mantissa_digits, exponent = d.as_tuple()
    ds = "".join(str(x) for x in mantissa_digits).ljust(digits, "0")
    if digits == 1:
        return f"{ds}×10^{exp}"
    return f"{ds[0]}.{ds[1:]}×10^{exp}"


def _stage_factors(stage: ResolvedStage, d: int, provider: GammaProvider,
                   halved_c: bool) -> tuple[list[transfer.StageTransform], int]:
    """Transforms to apply (in order) for one stage at ambient dimension d,
    plus the ambient dimension afterwards."""
    if stage.kind == "dense":
        if not stage.relu:
            return [], d  # linear output layer contributes no cuts
        return [transfer.m_matrix(d, stage.n_out),
                transfer.b_matrix(provider, stage.n_out)], stage.n_out
    if stage.kind == "linear":
        k = min(d, stage.rank, stage.n_out)
        return [transfer.m_matrix(d, k),
                transfer.m_matrix(k, stage.n_out)], stage.n_out
    if stage.kind == "maxpool":
        return [transfer.maxpool_diag(d, stage.n_out, stage.k,
                                      halved_c=halved_c),
                transfer.m_matrix(d, stage.n_out)], stage.n_out
    if stage.kind in ("skip", "residual"):
        seg, body_out = _segment_matrix(stage.body, d, provider, halved_c)
        diag = transfer.skip_diag(seg)
        d_after = d + body_out if stage.kind == "skip" else d
        return [diag], d_after
    raise ValueError(f"unknown stage kind '{stage.kind}'")


def _segment_matrix(stages: Sequence[ResolvedStage], d: int,
                    provider: GammaProvider,
                    halved_c: bool) -> tuple[transfer.StageTransform, int]:
    t = transfer.identity(d + 1)
    for stage in stages:
        factors, d_next = _stage_factors(stage, d, provider, halved_c)
        for f in factors:
            if f.cols > t.rows:
                # ambient grew (skip concatenation): zero-pad first
                t = transfer.compose(transfer.m_matrix(t.rows - 1, f.cols - 1),
                                     t)
            t = transfer.compose(f, t)
        d = d_next
    return t, d


def evaluate(stages: Sequence[ResolvedStage], variant: GammaVariant | str,
             n0: int, *, provider: GammaProvider | None = None,
             gamma_cap: int = DEFAULT_COLUMN_CAP, halved_c: bool = False,
             digits: int = 4) -> BoundReport:
    """Exact upper bound on the number of linear regions of the network."""
    variant = GammaVariant(variant)
    if provider is None:
        provider = GammaProvider(variant, cap=gamma_cap)
    elif provider.variant is not variant:
        raise ValueError("provider variant does not match requested variant")
    h = Histogram.unit(n0)
    d = n0
    per_stage: list[tuple[str, Histogram]] = []
    for stage in stages:
        factors, d = _stage_factors(stage, d, provider, halved_c)
        for f in factors:
            h = transfer.apply(f, h)
        per_stage.append((stage.label or stage.kind, h))
    bound = h.l1()
    return BoundReport(bound, variant, tuple(per_stage),
                       scientific(bound, digits))


def compare(stages: Sequence[ResolvedStage], n0: int, *,
            gamma_cap: int = DEFAULT_COLUMN_CAP, halved_c: bool = False,
            digits: int = 4) -> tuple[BoundReport, BoundReport, str]:
    """Bounds for both variants plus the exact serra/ours ratio."""
    ours = evaluate(stages, GammaVariant.OURS, n0, gamma_cap=gamma_cap,
                    halved_c=halved_c, digits=digits)
    serra = evaluate(stages, GammaVariant.SERRA, n0, gamma_cap=gamma_cap,
                     halved_c=halved_c, digits=digits)
    ratio = Fraction(serra.bound, ours.bound)
    return ours, serra, format_ratio(ratio, digits)


def sweep(n0: int, widths: Iterable[int], depths: Iterable[int], *,
          gamma_cap: int = DEFAULT_COLUMN_CAP,
          digits: int = 4) -> list[tuple[int, int, int, int, int, str]]:
    """Rows (n0, ni, k, bound_ours, bound_serra, ratio), width-major then depth."""
    rows = []
    ours_provider = GammaProvider(GammaVariant.OURS, cap=gamma_cap)
    serra_provider = GammaProvider(GammaVariant.SERRA, cap=gamma_cap)
    for ni in widths:
        for k in depths:
            stages = resolve(mlp(n0, ni, k))
            bo = evaluate(stages, GammaVariant.OURS, n0,
                          provider=ours_provider).bound
            bs = evaluate(stages, GammaVariant.SERRA, n0,
                          provider=serra_provider).bound
            rows.append((n0, ni, k, bo, bs,
                         format_ratio(Fraction(bs, bo), digits)))
    return rows


SWEEP_HEADER = "n0,ni,k,bound_ours,bound_serra,ratio"


def sweep_csv(rows) -> str:
    lines = [SWEEP_HEADER]
    lines.extend(f"{n0},{ni},{k},{bo},{bs},{ratio}"
                 for n0, ni, k, bo, bs, ratio in rows)
    return "\n".join(lines) + "\n"
