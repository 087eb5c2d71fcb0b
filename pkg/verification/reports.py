"""
Lignes de rapport et leur écriture (CSV ou texte aligné).

Le drapeau `passed` n'est jamais stocké : il se recalcule à partir de value, relation, bound
et tol. Une relation stricte exige une marge de tol, une relation large l'accorde.
"""
import csv
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

FIELDS = ('experiment', 'n', 'k', 'sample', 'quantity', 'value', 'relation', 'bound', 'tol', 'passed', 'note')


class Relation:
    LT = '<'
    LE = '<='
    GT = '>'
    GE = '>='
    EQ = '=='
    INFO = 'info'
    EXCLUDED = 'regime-excluded'


def evaluate(value, relation, bound, tol=0.0):
    if relation in (Relation.INFO, Relation.EXCLUDED):
        return True
    if relation == Relation.LT:
        return value < bound - tol
    if relation == Relation.LE:
        return value <= bound + tol
    if relation == Relation.GT:
        return value > bound + tol
    if relation == Relation.GE:
        return value >= bound - tol
    if relation == Relation.EQ:
        if tol:
            return abs(value - bound) <= tol
        return value == bound
    raise ValueError(f"Unknown relation {relation!r}")


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    n: Optional[int]
    k: Optional[int]
    quantity: str
    value: object = None
    relation: str = Relation.INFO
    bound: object = None
    tol: float = 0.0
    sample: Optional[int] = None
    note: str = ''

    @property
    def passed(self):
        return evaluate(self.value, self.relation, self.bound, self.tol)

    @property
    def excluded(self):
        return self.relation == Relation.EXCLUDED

    def record(self):
        record = {name: format_value(getattr(self, name)) for name in FIELDS if name != 'passed'}
        record['passed'] = 'pass' if self.passed else 'FAIL'
        return record


def excluded_row(experiment, n, k, quantity, reason):
    return ReportRow(experiment, n, k, quantity, relation=Relation.EXCLUDED, note=reason)


def format_value(value):
    """Flottants à 12 chiffres significatifs, rationnels exacts en p/q."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return format(float(value), '.12g')
    return str(value)


def write_csv(records, stream, fields=FIELDS):
    writer = csv.DictWriter(stream, fieldnames=list(fields), extrasaction='ignore', lineterminator='\n')
    writer.writeheader()
    for record in records:
        writer.writerow({name: record.get(name, '') for name in fields})


def render_text(records, fields=FIELDS):
    records = list(records)
    widths = {name: len(name) for name in fields}
    for record in records:
        for name in fields:
            widths[name] = max(widths[name], len(record.get(name, '')))
    lines = ['  '.join(name.ljust(widths[name]) for name in fields).rstrip()]
    lines.append('  '.join('-' * widths[name] for name in fields))
    for record in records:
        lines.append('  '.join(record.get(name, '').ljust(widths[name]) for name in fields).rstrip())
    return '\n'.join(lines) + '\n'


def summarize(rows):
    failed = sum(1 for row in rows if not row.passed)
    excluded = sum(1 for row in rows if row.excluded)
    return f"{len(rows)} checks, {failed} failed, {excluded} regime-excluded"
