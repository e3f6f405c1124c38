import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

FORMATS = ('table', 'tsv', 'json')


def format_output(result, output_format):
    """Format a command result into the specified output format."""
    if output_format == 'table':
        return format_table(result)
    elif output_format == 'tsv':
        return format_tsv(result)
    elif output_format == 'json':
        return format_json(result)
    else:
        raise ValueError(f"Unsupported output format: {output_format}")


def format_table(result):
    """Format as aligned columns, followed by any footer lines."""
    rows = [result['columns']] + [[_cell(value) for value in row] for row in result['rows']]
    widths = [max(len(row[i]) for row in rows) for i in range(len(result['columns']))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    lines.extend(result.get('footer', []))
    return "\n".join(lines)


def format_tsv(result):
    """Format as tab-separated values with a header line."""
    lines = ["\t".join(result['columns'])]
    lines.extend(format_tsv_row(row) for row in result['rows'])
    return "\n".join(lines)


def format_tsv_row(values):
    return "\t".join(_cell(value) for value in values)


def format_json(result):
    """Format the result's JSON payload; keys are sorted so output is byte-stable."""
    return json.dumps(result['data'], indent=2, sort_keys=True, ensure_ascii=False)


def _cell(value):
    if value is None:
        return "inf"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def format_fraction(value: Fraction) -> str:
    """p/q, or p when the denominator is 1."""
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def format_mixed(value: Fraction) -> str:
    """a+b/c with 0 <= b < c."""
    whole, rest = divmod(value.numerator, value.denominator)
    return str(whole) if rest == 0 else f"{whole}+{rest}/{value.denominator}"


def format_rational(value: Fraction, decimal: bool = False) -> str:
    """Render as "p/q (a+b/c)" when fractional and above 1, optionally with a float."""
    text = format_fraction(value)
    if value.denominator != 1 and value > 1:
        text += f" ({format_mixed(value)})"
    if decimal:
        text += f" ≈ {float(value):.6f}"
    return text


def rational_json(value: Optional[Fraction]) -> Optional[Dict[str, int]]:
    if value is None:
        return None
    return dict(num=value.numerator, den=value.denominator)


VALIDATION_COLUMNS = ['n', 'k', 'formula', 'ip', 'bfs', 'match']


def validation_cells(row) -> List[Any]:
    return [row.n, row.k, row.formula, row.ip, row.bfs, row.match]


def validation_result(rows: Iterable) -> Dict[str, Any]:
    """Odd-girth cross-validation rows as a formatter result."""
    rows = list(rows)
    return dict(
        columns=VALIDATION_COLUMNS,
        rows=[validation_cells(row) for row in rows],
        data=[row.to_dict() for row in rows],
    )


def bound_result(report, decimal: bool = False) -> Dict[str, Any]:
    """A BoundReport as a formatter result."""
    def render(value):
        return format_rational(value, decimal) if value is not None else "-"

    table_rows: List[List[Any]] = [
        [entry.name, entry.kind, render(entry.value), entry.applicable, entry.reason or ""]
        for entry in report.entries
    ]
    footer = [
        "",
        f"odd girth: {report.odd_girth}",
        f"best lower: {render(report.best_lower)}",
        f"best upper: {render(report.best_upper)}",
        f"C5-colorable: {'yes' if report.c5_colorable else 'no'}",
    ]
    data = dict(
        n=report.params.n,
        k=report.params.k,
        odd_girth=report.odd_girth,
        bounds=[dict(name=e.name, kind=e.kind, value=rational_json(e.value), applicable=e.applicable,
                     reason=e.reason) for e in report.entries],
        best_lower=rational_json(report.best_lower),
        best_upper=rational_json(report.best_upper),
        c5_colorable=report.c5_colorable,
    )
    return dict(columns=['bound', 'kind', 'value', 'applicable', 'reason'], rows=table_rows,
                footer=footer, data=data)


def record_result(record: Dict[str, Any]) -> Dict[str, Any]:
    """A flat key/value record (e.g. `info`) as a two-column result."""
    return dict(columns=['property', 'value'], rows=[[key, value] for key, value in record.items()],
                data={key: rational_json(v) if isinstance(v, Fraction) else v for key, v in record.items()})
