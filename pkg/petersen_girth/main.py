#!/usr/bin/env python3
import sys
from contextlib import contextmanager

import click
from click_option_group import optgroup

from .bounds import bound_report
from .errors import PetersenError, SearchBudgetExhausted, VerificationError
from .formatter import (
    FORMATS,
    VALIDATION_COLUMNS,
    bound_result,
    format_output,
    format_tsv_row,
    rational_json,
    record_result,
    validation_cells,
    validation_result,
)
from .graph_core import girth_bfs, make_circular_complete, make_cycle, odd_girth_bfs, walk_power, write_edge_list
from .homomorphisms import (
    DEFAULT_BUDGET,
    SearchOutcome,
    c5_coloring,
    clique_embedding,
    collapse_pet_to_pb,
    cycle_noncolorability_certificate,
    eta_cycle_power_coloring,
    interleave_embedding,
    pb_circular_coloring,
    pet_to_cycle_power,
    search_hom,
)
from .odd_girth import formula_trace, iter_cross_validate, odd_girth_formula, odd_girth_from_ip, validation_pairs
from .petersen import NAMED_GRAPHS, GPParams, build_cycle_power_k, build_pb, build_petersen, named_graph, property_flags

CONSTRUCTIONS = ('pet-pb', 'pet-cnk', 'pb-circ', 'eta', 'clique', 'interleave', 'c5', 'cycle-cert')
SOURCE_BUILDERS = {'pet': build_petersen, 'pb': build_pb, 'cnk': build_cycle_power_k}


class PetersenCli(click.Group):
    """Click group whose usage errors exit with status 1 instead of 2."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = 1
            raise


class TargetGraph(click.ParamType):
    """c5, c7, cycle:L or circ:p/q."""

    name = 'target'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        text = value.strip().lower()
        try:
            if text in ('c5', 'c7'):
                return f"C_{text[1:]}", make_cycle(int(text[1:]))
            if text.startswith('cycle:'):
                length = int(text.split(':', 1)[1])
                return f"C_{length}", make_cycle(length)
            if text.startswith('circ:'):
                p, q = (int(part) for part in text.split(':', 1)[1].split('/'))
                return f"K_{{{p}/{q}}}", make_circular_complete(p, q)
        except (ValueError, PetersenError) as e:
            self.fail(f"{value!r}: {e}", param, ctx)
        self.fail(f"{value!r} is not one of c5, c7, cycle:L, circ:p/q", param, ctx)


def graph_options(func):
    """Attach the --n/--k/--name group shared by the per-instance commands."""
    decorators = [
        optgroup.group('Graph Options', help='Pick Pet(n,k) by parameters or by name'),
        optgroup.option('--n', '-n', type=int, help='Number of outer vertices n'),
        optgroup.option('--k', '-k', type=int, help='Inner step k, with 2 < 2k <= n'),
        optgroup.option('--name', type=click.Choice(sorted(NAMED_GRAPHS)), help='A named generalized Petersen graph'),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def output_options(func):
    decorators = [
        optgroup.group('Output Options'),
        optgroup.option('--format', '-f', 'output_format', type=click.Choice(FORMATS), default='table',
                        envvar='PETERSEN_GIRTH_FORMAT', show_default=True,
                        help='Output format (env: PETERSEN_GIRTH_FORMAT)'),
    ]
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def resolve_params(n, k, name):
    if name:
        return named_graph(name)
    if n is None or k is None:
        raise click.UsageError("Give both --n and --k, or --name.")
    return GPParams(n, k)


@contextmanager
def reported_errors():
    """Echo library errors the usual way and exit with the matching status."""
    ctx = click.get_current_context()
    try:
        yield
    except VerificationError as e:
        click.echo(f"> Error: {e}", err=True)
        ctx.exit(2)
    except SearchBudgetExhausted as e:
        click.echo(f"> Error: {e}", err=True)
        ctx.exit(4)
    except PetersenError as e:
        click.echo(f"> Error: {e}", err=True)
        raise click.Abort()


def emit_json(data):
    click.echo(format_output({'data': data}, 'json'))


@click.group(cls=PetersenCli)
def main():
    """
    Odd girth and circular chromatic bounds of generalized Petersen graphs.

    \b
    Exit codes:
      0  success / homomorphism found
      1  usage error or unmet precondition
      2  mismatch or failed verification
      3  proven non-existence
      4  search budget exhausted
    """


@main.command()
@graph_options
@optgroup.group('Method Options')
@optgroup.option('--method', '-m', type=click.Choice(['formula', 'ip', 'bfs', 'all']), default='formula',
                 show_default=True, help='How to compute the odd girth; "all" cross-checks the three')
@optgroup.option('--trace', is_flag=True, help='Also print the closed-form trace as JSON')
@click.pass_context
def oddgirth(ctx, n, k, name, method, trace):
    """Print the odd girth of Pet(n,k), or "bipartite"; --method all prints inf for each method instead."""
    with reported_errors():
        params = resolve_params(n, k, name)
        methods = {
            'formula': odd_girth_formula,
            'ip': odd_girth_from_ip,
            'bfs': lambda p: odd_girth_bfs(build_petersen(p), roots=p.orbit_roots()),
        }
        chosen = ['formula', 'ip', 'bfs'] if method == 'all' else [method]
        values = [methods[m](params) for m in chosen]
        match = len(set(values)) == 1
        if method == 'all':
            click.echo(" ".join("inf" if v is None else str(v) for v in values) + (" match" if match else " mismatch"))
        else:
            click.echo("bipartite" if values[0] is None else str(values[0]))
        if trace:
            steps = formula_trace(params)
            emit_json(steps.to_dict() if steps is not None else None)
        if not match:
            ctx.exit(2)


@main.command()
@optgroup.group('Scan Options')
@optgroup.option('--n-max', type=click.IntRange(min=0), required=True, help='Scan every valid (n,k) with n <= N-MAX')
@optgroup.option('--jobs', '-j', type=click.IntRange(min=1), default=1, envvar='PETERSEN_GIRTH_JOBS',
                 show_default=True, help='Worker processes (env: PETERSEN_GIRTH_JOBS)')
@optgroup.option('--progress/--no-progress', default=None,
                 help='Show a progress bar on stderr (default: only when stderr is a terminal)')
@output_options
@click.pass_context
def scan(ctx, n_max, jobs, progress, output_format):
    """
    Cross-validate formula, integer program and BFS over a grid of (n,k).

    With --format tsv, rows are printed as they are computed.
    """
    with reported_errors():
        total = len(validation_pairs(n_max))
        rows = iter_cross_validate(n_max, jobs)
        show = sys.stderr.isatty() if progress is None else progress
        streaming = output_format == 'tsv'
        collected = []

        def consume(iterable):
            for row in iterable:
                collected.append(row)
                if streaming:
                    click.echo(format_tsv_row(validation_cells(row)))

        if streaming:
            click.echo("\t".join(VALIDATION_COLUMNS))
        if show and total:
            with click.progressbar(rows, length=total, label='> Cross-validating',
                                   file=click.get_text_stream('stderr')) as bar:
                consume(bar)
        else:
            consume(rows)
        if not streaming:
            click.echo(format_output(validation_result(collected), output_format))
        mismatches = [row for row in collected if not row.match]
        click.echo(f"> {len(mismatches)} mismatches in {len(collected)} instances", err=True)
        if mismatches:
            ctx.exit(2)


@main.command()
@graph_options
@output_options
@optgroup.option('--decimal', is_flag=True, help='Add a float rendering next to every rational')
@click.pass_context
def bounds(ctx, n, k, name, output_format, decimal):
    """Lower and upper bounds on the circular chromatic number of Pet(n,k)."""
    with reported_errors():
        report = bound_report(resolve_params(n, k, name))
        click.echo(format_output(bound_result(report, decimal), output_format))
        if not report.consistent:
            click.echo("> Error: best lower bound exceeds best upper bound", err=True)
            ctx.exit(2)


def build_witness(construction, params, q):
    """Run one construction; returns its JSON payload and whether it checked out."""
    if construction == 'pet-pb':
        return collapse_pet_to_pb(params).to_dict(), True
    if construction == 'pet-cnk':
        return pet_to_cycle_power(params).to_dict(), True
    if construction in ('pb-circ', 'eta'):
        coloring = pb_circular_coloring(params) if construction == 'pb-circ' else eta_cycle_power_coloring(params)
        data = coloring.to_dict()
        data.update(verified=True, ratio=rational_json(coloring.ratio))
        return data, True
    if construction == 'clique':
        return clique_embedding(params).to_dict(), True
    if construction == 'interleave':
        report = interleave_embedding(params, q)
        return report.to_dict(), report.holds
    if construction == 'c5':
        return c5_coloring(params).to_dict(), True
    certificate = cycle_noncolorability_certificate(params)
    return certificate.to_dict(), certificate.valid


@main.command()
@click.argument('construction', type=click.Choice(CONSTRUCTIONS))
@graph_options
@optgroup.group('Construction Options')
@optgroup.option('--q', '-q', type=int, default=None, help='interleave: check offsets up to q-1 (default 2k+2)')
@click.pass_context
def hom(ctx, construction, n, k, name, q):
    """
    Build and verify an explicit homomorphism or witness, printed as JSON.

    \b
    Constructions:
      pet-pb      Pet(n,k) -> Pb(n,k)
      pet-cnk     Pet(n,k) -> C_n^k            (n, k odd, n > 2k+1)
      pb-circ     circular coloring of Pb(n,k) (n odd, k even, n ≡ ±2 mod k−1)
      eta         circular coloring of C_n^k   (n, k odd, n > 2k+1)
      clique      clique in Pet(n,k)^(2r+1)    (no trivial optimal solution)
      interleave  offsets in Pet(n,k)^(k+1)    (k even)
      c5          Pet(n,k) -> C_5
      cycle-cert  certificate that Pet(n,k) does not map to C_(2r+3)
    """
    with reported_errors():
        data, ok = build_witness(construction, resolve_params(n, k, name), q)
        emit_json(data)
        if not ok:
            click.echo(f"> Error: {construction} witness did not verify", err=True)
            ctx.exit(2)


@main.command()
@graph_options
@optgroup.group('Search Options')
@optgroup.option('--target', '-t', type=TargetGraph(), default='c5', show_default=True,
                 help='Target graph: c5, c7, cycle:L or circ:p/q')
@optgroup.option('--graph', '-g', 'source', type=click.Choice(sorted(SOURCE_BUILDERS)), default='pet',
                 show_default=True, help='Source graph built from (n,k)')
@optgroup.option('--budget', '-b', type=click.IntRange(min=1), default=DEFAULT_BUDGET, envvar='PETERSEN_GIRTH_BUDGET',
                 show_default=True, help='Search node budget (env: PETERSEN_GIRTH_BUDGET)')
@click.pass_context
def search(ctx, n, k, name, target, source, budget):
    """Decide by exhaustive search whether the graph maps to the target."""
    with reported_errors():
        params = resolve_params(n, k, name)
        label, target_graph = target
        result = search_hom(SOURCE_BUILDERS[source](params), target_graph, budget, target_transitive=True)
        click.echo(f"> Searched {result.nodes} nodes", err=True)
        if result.outcome is SearchOutcome.FOUND:
            click.echo("found")
            data = result.mapping.to_dict()
            data.update(source=f"{source}({params.n},{params.k})", target=label)
            emit_json(data)
        elif result.outcome is SearchOutcome.NONE:
            click.echo("none")
            ctx.exit(3)
        else:
            click.echo("budget")
            ctx.exit(4)


def export_graph(what, params):
    if what in SOURCE_BUILDERS:
        return SOURCE_BUILDERS[what](params)
    if what.startswith('power:'):
        try:
            r = int(what.split(':', 1)[1])
        except ValueError:
            raise click.BadParameter(f"{what!r}: power needs an integer, e.g. power:3")
        return walk_power(build_petersen(params), r)
    raise click.BadParameter(f"{what!r} is not one of pet, pb, cnk, power:r")


@main.command()
@click.argument('what')
@graph_options
@optgroup.group('Output Options')
@optgroup.option('--output', '-o', default='-', type=click.Path(dir_okay=False, allow_dash=True),
                 help='Output file path (default: stdout)')
def export(what, n, k, name, output):
    """
    Write a graph as an edge list.

    WHAT is pet, pb, cnk or power:r (the r-th walk power of Pet(n,k)).
    """
    with reported_errors():
        text = write_edge_list(export_graph(what, resolve_params(n, k, name)))
        try:
            with click.open_file(output, 'w', encoding='utf-8') as f:
                f.write(text)
        except OSError as e:
            click.echo(f"> Error: cannot write {output}: {e}", err=True)
            raise click.Abort()
        if output != '-':
            click.echo(f"> Edge list saved to: {output}", err=True)


@main.command()
@graph_options
@output_options
def info(n, k, name, output_format):
    """Structural properties, odd girth and girth of Pet(n,k)."""
    with reported_errors():
        params = resolve_params(n, k, name)
        flags = property_flags(params.n, params.k)
        graph = build_petersen(params)
        record = {
            'graph': str(params),
            'vertices': graph.vertex_count,
            'edges': graph.edge_count,
            'bipartite': flags.bipartite,
            'vertex_transitive': flags.vertex_transitive,
            'cayley': flags.cayley,
            'edge_transitive': flags.edge_transitive,
            'three_regular': flags.three_regular,
            'odd_girth': odd_girth_formula(params),
            'girth': girth_bfs(graph, roots=params.orbit_roots()),
        }
        for warning in flags.warnings:
            click.echo(f"> Warning: {warning}", err=True)
        click.echo(format_output(record_result(record), output_format))


if __name__ == '__main__':
    main()
