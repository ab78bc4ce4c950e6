"""Command-line surface.

Exit codes: 0 success, 1 user/input error, 2 resource cap exceeded.
"""
from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import click

from . import archspec, engine, oracle, transfer
from .gamma import (DEFAULT_COLUMN_CAP, ColumnCapExceeded, GammaProvider,
                    GammaVariant)


@dataclass
class CliConfig:
    gamma_cap: int = DEFAULT_COLUMN_CAP
    mantissa_digits: int = 4
    halved_c: bool = False


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ColumnCapExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except (archspec.ArchSpecError, oracle.OracleError,
                transfer.DimensionMismatch, ValueError, OSError,
                json.JSONDecodeError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
    return wrapper


@click.group()
@click.option("--gamma-cap", type=int, default=DEFAULT_COLUMN_CAP,
              show_default=True, help="Largest gamma column kept in memory.")
@click.option("--mantissa-digits", type=int, default=4, show_default=True,
              help="Significant digits in scientific renderings.")
@click.option("--maxout-c-halved", is_flag=True,
              help="Use the halved max-pooling hyperplane count.")
@click.pass_context
def main(ctx, gamma_cap, mantissa_digits, maxout_c_halved):
    """Exact upper bounds on ReLU-network linear region counts."""
    if gamma_cap < 1 or mantissa_digits < 1:
        click.echo("error: caps and digit counts must be positive", err=True)
        sys.exit(1)
    ctx.obj = CliConfig(gamma_cap, mantissa_digits, maxout_c_halved)


_variant_opt = click.option(
    "--variant", type=click.Choice(["ours", "serra", "both"]),
    default="both", show_default=True)


def _gamma_lines(provider: GammaProvider, nprime: int) -> str:
    col = provider.column(nprime)
    return "\n".join(h.render(pad_to=nprime + 1) for h in col) + "\n"


@main.command("gamma")
@_variant_opt
@click.option("--nprime", type=int, required=True)
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_gamma(cfg: CliConfig, variant, nprime, output):
    """Dump the gamma table column(s) for n' hyperplanes, one histogram per line."""
    parts = []
    variants = ["ours", "serra"] if variant == "both" else [variant]
    for v in variants:
        provider = GammaProvider(GammaVariant(v), cap=cfg.gamma_cap)
        if variant == "both":
            parts.append(f"# gamma[{v}][n][{nprime}]\n")
        parts.append(_gamma_lines(provider, nprime))
    _emit("".join(parts), output)


@main.command("bmatrix")
@_variant_opt
@click.option("--nprime", type=int, required=True)
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_bmatrix(cfg: CliConfig, variant, nprime, output):
    """Dump the ReLU-layer B matrix for n' hyperplanes (appendix row layout)."""
    parts = []
    variants = ["ours", "serra"] if variant == "both" else [variant]
    for v in variants:
        provider = GammaProvider(GammaVariant(v), cap=cfg.gamma_cap)
        if variant == "both":
            parts.append(f"# B[{v}][{nprime}]\n")
        parts.append(transfer.b_matrix(provider, nprime).render() + "\n")
    _emit("".join(parts), output)


def _load_arch(path: str):
    with open(path, encoding="utf-8") as fh:
        spec = archspec.parse(fh.read())
    return spec, archspec.resolve(spec)


@main.command("bound")
@click.argument("arch_file", type=click.Path(exists=True))
@click.option("--variant", type=click.Choice(["ours", "serra"]),
              default="ours", show_default=True)
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_bound(cfg: CliConfig, arch_file, variant, output):
    """Exact region bound for an architecture file."""
    spec, stages = _load_arch(arch_file)
    report = engine.evaluate(stages, variant, spec.input_nodes,
                             gamma_cap=cfg.gamma_cap, halved_c=cfg.halved_c,
                             digits=cfg.mantissa_digits)
    _emit(f"{report.bound}\n{report.scientific}\n", output)


@main.command("compare")
@click.argument("arch_file", type=click.Path(exists=True))
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_compare(cfg: CliConfig, arch_file, output):
    """Bounds for both variants and their exact ratio."""
    spec, stages = _load_arch(arch_file)
    ours, serra, ratio = engine.compare(stages, spec.input_nodes,
                                        gamma_cap=cfg.gamma_cap,
                                        halved_c=cfg.halved_c,
                                        digits=cfg.mantissa_digits)
    _emit(f"ours={ours.bound} ({ours.scientific})\n"
          f"serra={serra.bound} ({serra.scientific})\n"
          f"ratio={ratio}\n", output)


def _parse_int_list(text: str) -> list[int]:
    """Comma list and/or "a..b" ranges, e.g. "6,8,10" or "1..10"."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


@main.command("sweep")
@click.option("--n0", type=int, required=True)
@click.option("--widths", required=True, help='e.g. "6,8,10,15,20,25"')
@click.option("--depths", required=True, help='e.g. "1..10"')
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_sweep(cfg: CliConfig, n0, widths, depths, output):
    """CSV grid of both bounds over MLP widths and depths."""
    rows = engine.sweep(n0, _parse_int_list(widths), _parse_int_list(depths),
                        gamma_cap=cfg.gamma_cap, digits=cfg.mantissa_digits)
    _emit(engine.sweep_csv(rows), output)


@main.command("oracle")
@click.argument("net_file", type=click.Path(exists=True))
@click.option("--method", type=click.Choice(["sweep1d", "pattern"]),
              default="sweep1d", show_default=True)
@click.option("--samples", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_oracle(cfg: CliConfig, net_file, method, samples, seed, output):
    """Ground-truth region count of a concrete net, checked against the bound."""
    with open(net_file, encoding="utf-8") as fh:
        net = oracle.net_from_json(fh.read())
    if method == "sweep1d":
        result = oracle.count_regions_1d(net)
    else:
        result = oracle.pattern_lower_bound(net, samples, seed)
    blocks = tuple(archspec.Dense(layer.n_out, layer.relu)
                   for layer in net.layers)
    stages = archspec.resolve(archspec.NetworkSpec(net.n0, blocks))
    bound = engine.evaluate(stages, GammaVariant.OURS, net.n0,
                            gamma_cap=cfg.gamma_cap).bound
    verdict = "OK" if result.count <= bound else "VIOLATION"
    _emit(f"count={result.count} bound={bound} {verdict}\n", output)
    if verdict != "OK":
        sys.exit(1)


_DEMO_PAIRS = {
    "unet_small": ("unet_small", "ae_small"),
    "resnet_small": ("resnet_small", "resnet_small (no residual)"),
}


@main.command("demo")
@click.argument("name")
@click.option("-o", "--output", type=click.Path(), default=None)
@click.pass_obj
@_guarded
def cmd_demo(cfg: CliConfig, name, output):
    """Bound of a builtin architecture with vs without its special structure."""
    if name not in _DEMO_PAIRS:
        raise archspec.ArchSpecError(f"unknown demo name '{name}'")
    spec = archspec.builtin(name)
    plain = archspec.strip_wrappers(spec)
    label_with, label_without = _DEMO_PAIRS[name]
    lines = []
    bounds = []
    for label, s in ((label_with, spec), (label_without, plain)):
        stages = archspec.resolve(s)
        report = engine.evaluate(stages, GammaVariant.OURS, s.input_nodes,
                                 gamma_cap=cfg.gamma_cap,
                                 halved_c=cfg.halved_c,
                                 digits=cfg.mantissa_digits)
        bounds.append(report.bound)
        lines.append(f"{label}: {report.bound} ({report.scientific})")
    ratio = engine.format_ratio(Fraction(bounds[0], bounds[1]),
                                cfg.mantissa_digits)
    lines.append(f"ratio={ratio}")
    _emit("\n".join(lines) + "\n", output)


if __name__ == "__main__":
    main()
