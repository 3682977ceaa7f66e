"""Command line front end: ``slicetower chart|verify|pi``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
Set SLICETOWER_CACHE_DIR to reuse rendered charts across invocations.
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from xml.sax.saxutils import escape

import click

from . import __version__
from .euler_quotients import QuotientError, hz_quotient_pi
from .mackey import CATALOGUE_NAMES, _SIGN_ENTRIES, catalogue, fingerprint, isomorphic
from .rep_ring import RepError, format_rep, parse_rep
from .slice_e2 import CONVENTIONS, E2Chart, Target, e2_chart, sigma_window
from .ss_engine import SSError, e_infinity_pi_j0, irreducible_orientable, known_differential, survival_status
from .suites import SUITES, run_suite
from .transfer_systems import QUANTIFIERS

CACHE_ENV = "SLICETOWER_CACHE_DIR"
FORMATS = ("svg", "tsv", "json")


@dataclass(frozen=True)
class JobConfig:
    n: int
    quotient: int | None = None       # d for MU^((G))/a_lambda(d); None for X = point
    window: int = 6
    fmt: str = "svg"
    convention: str = "i_rho2"
    quantifier: str = "H"

    def validate(self):
        if self.n < 2 or self.n & (self.n - 1):
            raise click.UsageError(f"slice charts need n a power of 2, got {self.n}")
        if self.quotient is not None and (self.quotient < 1 or self.n % self.quotient):
            raise click.UsageError(f"--quotient must divide n, got {self.quotient}")
        if self.window < 0:
            raise click.UsageError("--window must be nonnegative")
        if self.convention not in CONVENTIONS:
            raise click.UsageError(f"unknown convention {self.convention!r}")
        if self.quantifier not in QUANTIFIERS:
            raise click.UsageError(f"unknown quantifier {self.quantifier!r}")

    def key(self) -> str:
        blob = json.dumps({**asdict(self), "version": __version__}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# chart construction


def chart_differentials(n: int, quotient: int | None) -> list:
    """Known differentials on u_V that the survival analysis says fire."""
    if quotient is None:
        return []
    j = quotient.bit_length() - 1
    out, seen = [], set()
    for V in irreducible_orientable(n):
        cert = survival_status(V, j)
        if cert.status != "Dies":
            continue
        _, r, b = cert.decomposition
        rec = known_differential(r, cert.H.bit_length() - 1, b)
        rec = replace(rec, note=f"kills u_{format_rep(V)} restricted to C_{cert.H}")
        if str(rec) not in seen:
            seen.add(str(rec))
            out.append(rec)
    return out


def build_chart(cfg: JobConfig) -> E2Chart:
    window = sigma_window(cfg.n, cfg.window) if cfg.window > 0 else []
    target = Target(cfg.quotient)
    chart = e2_chart(window, cfg.n, target, cfg.convention)
    chart.differentials = chart_differentials(cfg.n, cfg.quotient)
    return chart


_GLYPHS: dict[tuple, str] = {}


def glyph(M) -> str:
    """Catalogue name when M is one of the standard functors, else its level symbol."""
    if M.is_zero():
        return "0"
    fp = fingerprint(M)
    if fp in _GLYPHS:
        return _GLYPHS[fp]
    name = M.symbol()
    for cand in CATALOGUE_NAMES:
        if cand in _SIGN_ENTRIES and M.n % 2:
            continue
        C = catalogue(cand, M.n)
        if fingerprint(C) == fp and isomorphic(C, M):
            name = cand
            break
    _GLYPHS[fp] = name
    return name


CELL = 48
MARGIN = 40


def render_svg(chart: E2Chart) -> str:
    """Filtration up, stem dimension across; each cell lists its glyphs."""
    cells: dict[tuple[int, int], list[str]] = {}
    for e in chart.nonzero():
        cells.setdefault((e.stem.dim, e.s), []).append(f"{glyph(e.mackey)} [{format_rep(e.stem)}]")
    arrows = [(d.source.stem.dim, d.source.filtration, d.target.stem.dim, d.target.filtration, d.page)
              for d in chart.differentials]
    xs = [x for x, _ in cells] + [a[0] for a in arrows] + [a[2] for a in arrows] or [0]
    ys = [y for _, y in cells] + [a[1] for a in arrows] + [a[3] for a in arrows] or [0]
    x0, x1, y0, y1 = min(xs), max(xs), min(0, min(ys)), max(ys)
    width = (x1 - x0 + 1) * CELL + 2 * MARGIN
    height = (y1 - y0 + 1) * CELL + 2 * MARGIN

    def px(x: int) -> int:
        return MARGIN + (x - x0) * CELL + CELL // 2

    def py(y: int) -> int:
        return MARGIN + (y1 - y) * CELL + CELL // 2

    title = f"C_{chart.n} {chart.target.label()} {chart.convention}"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="7">',
        f'<title>{escape(title)}</title>',
        '<defs><marker id="h" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z"/></marker></defs>',
    ]
    for x in range(x0, x1 + 1):
        out.append(f'<text x="{px(x)}" y="{height - 8}" text-anchor="middle">{x}</text>')
    for y in range(y0, y1 + 1):
        out.append(f'<text x="8" y="{py(y) + 3}">{y}</text>')
    for (x, y), labels in sorted(cells.items()):
        out.append(f'<rect x="{px(x) - CELL // 2 + 2}" y="{py(y) - CELL // 2 + 2}" width="{CELL - 4}" '
                   f'height="{CELL - 4}" fill="none" stroke="#888"/>')
        for i, lab in enumerate(labels):
            out.append(f'<text x="{px(x)}" y="{py(y) - CELL // 2 + 12 + 9 * i}" text-anchor="middle">{escape(lab)}</text>')
    for sx, sy, tx, ty, page in arrows:
        out.append(f'<line x1="{px(sx)}" y1="{py(sy)}" x2="{px(tx)}" y2="{py(ty)}" stroke="red" marker-end="url(#h)"/>')
        out.append(f'<text x="{(px(sx) + px(tx)) // 2}" y="{(py(sy) + py(ty)) // 2}" fill="red">d{page}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(chart: E2Chart, fmt: str) -> str:
    if fmt == "json":
        return chart.to_json() + "\n"
    if fmt == "tsv":
        body = chart.to_tsv()
        lines = body.rstrip("\n").split("\n")
        lines[0] += "\tglyph"
        nonzero = chart.nonzero()
        lines[1:] = [f"{ln}\t{glyph(e.mackey)}" for ln, e in zip(lines[1:], nonzero)]
        for d in chart.differentials:
            lines.append(f"# {d}")
        return "\n".join(lines) + "\n"
    return render_svg(chart)


def cmd_chart(cfg: JobConfig) -> str:
    cfg.validate()
    cache = os.environ.get(CACHE_ENV)
    path = Path(cache) / f"chart-{cfg.key()}.{cfg.fmt}" if cache else None
    if path is not None and path.exists():
        return path.read_text()
    text = render(build_chart(cfg), cfg.fmt)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return text


# ---------------------------------------------------------------------------
# click commands


@click.group()
@click.version_option(__version__)
def main():
    """Slice spectral sequence charts and checks for MU^((C_n)) and its quotients."""


@main.command()
@click.option("--n", "n", type=int, required=True, help="group order, a power of 2")
@click.option("--quotient", type=int, default=None, help="d for the quotient by a_lambda(d)")
@click.option("--window", type=int, default=6, show_default=True, help="stem half width; 0 gives an empty chart")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="svg", show_default=True)
@click.option("--convention", type=click.Choice(CONVENTIONS), default="i_rho2", show_default=True)
@click.option("--quantifier", type=click.Choice(QUANTIFIERS), default="H", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def chart(n, quotient, window, fmt, convention, quantifier, out):
    """E_2 chart with known differentials."""
    text = cmd_chart(JobConfig(n, quotient, window, fmt, convention, quantifier))
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("suite", type=click.Choice(SUITES))
@click.option("--n", "n", type=int, default=4, show_default=True)
@click.option("--k", "k", type=int, default=1, show_default=True)
@click.option("--max-n", "max_n", type=int, default=8, show_default=True)
@click.option("--quiet", is_flag=True)
def verify(suite, n, k, max_n, quiet):
    """Run a property suite; exit 1 on any failure."""
    if n < 1 or k < 1 or max_n < 1:
        raise click.UsageError("--n, --k and --max-n must be positive")
    try:
        res = run_suite(suite, n=n, k=k, max_n=max_n)
    except (RepError, QuotientError, SSError, ValueError) as exc:
        raise click.UsageError(str(exc))
    if not quiet:
        for line in res.lines:
            click.echo(line)
    click.echo(f"{suite}: {'pass' if res.ok else 'FAIL'}")
    sys.exit(0 if res.ok else 1)


@main.command()
@click.option("--n", "n", type=int, required=True)
@click.option("--j", "j", type=int, default=0, show_default=True, help="quotient by a_lambda(2^j)")
@click.option("--deg", "deg", required=True, help='degree, e.g. "2 - 1*L(1)"')
@click.option("--e-infinity", "einf", is_flag=True, help="assemble from the collapsed j=0 chart instead")
def pi(n, j, deg, einf):
    """Print pi_alpha of HZ / a_lambda(2^j) as a level table."""
    try:
        alpha = parse_rep(deg, n)
        if einf:
            if j != 0:
                raise click.UsageError("--e-infinity only applies to j = 0")
            val = e_infinity_pi_j0(alpha)
            M = val.mackey
            click.echo(f"# pieces: {', '.join(val.names) if val.names else '-'}")
        else:
            M = hz_quotient_pi(j, alpha, n)
    except (RepError, QuotientError, SSError, ValueError) as exc:
        raise click.UsageError(str(exc))
    click.echo(f"pi_{{{format_rep(alpha)}}} = {glyph(M)}")
    click.echo(M.table())


if __name__ == "__main__":
    main()
