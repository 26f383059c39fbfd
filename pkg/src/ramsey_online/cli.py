"""Command-line front end.

Exit codes: 0 for the expected verdict, 1 when a counterexample turns up,
2 for usage errors.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .builder import BUILDER_NAMES, make_builder
from .engine import ConstraintSpecError, GameTrace, parse_constraint, replay, run_game, to_dot
from .painter import PAINTERS, get_painter
from .patterns import IsolatedVertexError, UnknownPatternError, classify, get_pattern


def _constraint(spec):
    try:
        return parse_constraint(spec)
    except ConstraintSpecError as exc:
        raise click.BadParameter(str(exc), param_hint="--constraint") from None


def _builder(name):
    try:
        return make_builder(name)
    except KeyError as exc:
        raise click.BadParameter(exc.args[0], param_hint="--builder") from None


def _painter(name):
    try:
        return get_painter(name)
    except KeyError as exc:
        raise click.BadParameter(exc.args[0], param_hint="--painter") from None


def _write_outputs(trace, trace_path, dot_path):
    if trace_path:
        trace.save(trace_path)
        click.echo(f"trace written to {trace_path}")
    if dot_path:
        Path(dot_path).write_text(to_dot(trace))
        click.echo(f"dot written to {dot_path}")


@click.group()
@click.version_option(package_name="ramsey-online")
def main():
    """Online Ramsey game for the triangle on restricted host classes."""


@main.command()
@click.option("--builder", "builder_name", help=f"one of {', '.join(BUILDER_NAMES)}")
@click.option("--painter", "painter_name", help=f"one of {', '.join(PAINTERS)}")
@click.option("--constraint", "spec", default=None, help="none | subgraph-free:<pattern> | minor-free:K4|K23")
@click.option("--max-edges", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="write a JSON Lines trace")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), help="write a Graphviz file")
@click.option("--replay", "replay_path", type=click.Path(exists=True, dir_okay=False), help="re-referee a trace")
def play(builder_name, painter_name, spec, max_edges, trace_path, dot_path, replay_path):
    """Play one game, or replay a recorded one."""
    if replay_path:
        try:
            rec = GameTrace.load(replay_path)
            again = replay(rec)
        except (ValueError, KeyError) as exc:
            click.echo(f"replay failed: {exc}", err=True)
            sys.exit(1)
        click.echo(again.summary())
        same = again.outcome == rec.outcome and again.moves == rec.moves and again.witness == rec.witness
        _write_outputs(again, trace_path, dot_path)
        if not same:
            click.echo("replay does not match the recorded outcome", err=True)
            sys.exit(1)
        return
    if not builder_name or not painter_name:
        raise click.UsageError("play needs --builder and --painter (or --replay FILE)")
    b = _builder(builder_name)
    p = _painter(painter_name)
    c = _constraint(spec or b.declared)
    t = run_game(b, p, c, max_edges)
    click.echo(t.summary())
    _write_outputs(t, trace_path, dot_path)


@main.command()
@click.option("--painter", "painter_name")
@click.option("--builder", "builder_name")
@click.option("--constraint", "spec", default=None)
@click.option("--max-vertices", type=int, default=8, show_default=True)
@click.option("--max-edges", type=int, default=None,
              help="search depth for a painter (default 10); move cap for a builder (default: its own)")
@click.option("--trace", "trace_path", default="counterexample.jsonl", show_default=True,
              help="where a counterexample trace goes")
@click.option("--no-invariant", is_flag=True, help="skip the painter's structural invariant")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
def verify(painter_name, builder_name, spec, max_vertices, max_edges, trace_path, no_invariant, jobs):
    """Exhaustively check a painter against all builders, or a builder against all painters."""
    from .solver import LimitError, verify_builder, verify_painter

    if bool(painter_name) == bool(builder_name):
        raise click.UsageError("give exactly one of --painter or --builder")
    if painter_name:
        p = _painter(painter_name)
        c = _constraint(spec or "none")
        try:
            rep = verify_painter(p, c, max_vertices, max_edges or 10, check_invariant=not no_invariant, jobs=jobs)
        except LimitError as exc:
            raise click.UsageError(str(exc)) from None
        if rep.survives:
            click.echo(f"SURVIVES: {p.name} on {c.spec} up to {max_vertices} vertices, {max_edges or 10} edges "
                       f"({rep.positions} positions; {rep.stats})")
            return
        t = rep.counterexample
        click.echo(f"COUNTEREXAMPLE: {t.reason} after {len(t.moves)} moves")
        t.save(trace_path)
        click.echo(f"trace written to {trace_path}")
        sys.exit(1)
    b = _builder(builder_name)
    c = _constraint(spec or b.declared)
    rep = verify_builder(b, c, max_edges=max_edges)
    if rep.wins:
        click.echo(f"{b.name} wins all branches on {c.spec}, worst case {rep.worst_case} edges "
                   f"({rep.leaves} leaves, {rep.seconds:.2f}s)")
        return
    t = rep.counterexample
    click.echo(f"COUNTEREXAMPLE: {t.reason} after {len(t.moves)} moves")
    t.save(trace_path)
    click.echo(f"trace written to {trace_path}")
    sys.exit(1)


def _solve_cmd(spec, max_vertices, max_edges, store, cert_path):
    from .solver import LimitError, solve

    c = _constraint(spec)
    try:
        res = solve(c, max_vertices, max_edges, store=store)
    except LimitError as exc:
        raise click.UsageError(str(exc)) from None
    click.echo(res.summary())
    click.echo(f"search: {res.stats}")
    if res.principal is not None:
        line = ", ".join(f"{u}-{v}:{col}" for u, v, col in res.principal.moves)
        click.echo(f"principal line: {line}")
    if cert_path and res.certificate is not None:
        Path(cert_path).write_text(json.dumps(res.certificate))
        click.echo(f"certificate written to {cert_path}")


@main.command()
@click.option("--constraint", "spec", default="none", show_default=True)
@click.option("--max-vertices", type=int, default=6, show_default=True)
@click.option("--max-edges", type=int, default=8, show_default=True)
@click.option("--store", type=click.Path(dir_okay=False), help="transposition store to resume from and update")
@click.option("--certificate", "cert_path", type=click.Path(dir_okay=False), help="write the strategy tree as JSON")
def solve(spec, max_vertices, max_edges, store, cert_path):
    """Exact minimax on the bounded game."""
    _solve_cmd(spec, max_vertices, max_edges, store, cert_path)


@main.command()
@click.option("--max-vertices", type=int, default=6, show_default=True)
@click.option("--max-edges", type=int, default=6, show_default=True)
@click.option("--store", type=click.Path(dir_okay=False))
def probe(max_vertices, max_edges, store):
    """Bounded game on X5-free boards (evidence only)."""
    _solve_cmd("subgraph-free:X5", max_vertices, max_edges, store, None)


@main.command("classify")
@click.option("--pattern", "name", required=True, help="catalog name or edge-list file")
def classify_cmd(name):
    """Who wins on boards that avoid the pattern."""
    try:
        F = get_pattern(name)
        res = classify(F)
    except UnknownPatternError as exc:
        raise click.BadParameter(exc.args[0], param_hint="--pattern") from None
    except IsolatedVertexError as exc:
        raise click.UsageError(f"{exc}") from None
    click.echo(str(res.verdict))
    line = f"  {res.reason}"
    if res.embedding:
        line += ": " + ", ".join(f"{a}->{x}" for a, x in sorted(res.embedding.items()))
    click.echo(line)


@main.command()
@click.option("--painter", "painter_name", help="automate Painter; you draw edges")
@click.option("--builder", "builder_name", help="automate Builder; you color edges")
@click.option("--constraint", "spec", default=None)
@click.option("--max-edges", type=click.IntRange(min=1), default=64, show_default=True)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False))
def repl(painter_name, builder_name, spec, max_edges, trace_path):
    """Manual play: draw u v | color red|blue | show | quit."""
    from .repl import Session

    if bool(painter_name) == bool(builder_name):
        raise click.UsageError("give exactly one of --painter or --builder")
    if builder_name:
        b = _builder(builder_name)
        s = Session(_constraint(spec or b.declared), builder=b, max_edges=max_edges)
    else:
        s = Session(_constraint(spec or "none"), painter=_painter(painter_name), max_edges=max_edges)
    s.run(click.get_text_stream("stdin"), click.echo)
    if trace_path:
        s.trace.save(trace_path)
        click.echo(f"trace written to {trace_path}")


@main.command()
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default="report", show_default=True)
@click.option("--max-edges", type=click.IntRange(min=4, max=10), default=8, show_default=True,
              help="largest budget for the painter growth table")
def report(out_dir, max_edges):
    """Tables (TSV) and figures (PNG) summarizing strategies and searches."""
    from .report import build_report

    for path in build_report(Path(out_dir), max_edges):
        click.echo(str(path))


if __name__ == "__main__":
    main()
