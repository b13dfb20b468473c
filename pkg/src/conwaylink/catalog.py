"""Named link fixtures: PD codes, orientations, and expected values.

Catalog files are line-oriented text.  A record starts with ``link
<name>`` and ends with ``end``; between them each line is a field:

    link trefoil
    pd X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
    freeLoops 0
    orientationNote as-given
    source derived:skein-recursion
    expected.generic 2*p - p^2 + q*r
    end

``pd`` may be empty when the diagram is built from free loops alone.
``orientationNote`` is either ``as-given`` or ``search``; the latter
asks the verifier to try every combination of component reversals.
``source`` must carry a provenance tag (``paper:<location>`` or
``derived:<oracle>``); records without one are rejected.  Each
``expected.<algebra>`` value is polynomial text in that algebra's
carrier ring.  ``#`` lines and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .algebra import AlgebraInstance, make_instance
from .diagram import Diagram, DiagramError, from_pd, mirror, parse_pd_text, reverse_component
from .laurent import LaurentError, parse, render

__all__ = [
    "CatalogError",
    "LinkRecord",
    "VerifyRow",
    "VerifyReport",
    "load_catalog",
    "bundled_catalog_path",
    "load_bundled",
    "verify_catalog",
]

REQUIRED_FIELDS = ("pd", "freeLoops", "orientationNote", "source")
ORIENTATION_NOTES = ("as-given", "search")
PROVENANCE_TAGS = ("paper:", "derived:")


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class LinkRecord:
    """One named link with its expected invariant values."""

    name: str
    pd_text: str
    free_loops: int
    orientation_note: str
    source: str
    expected: dict = field(default_factory=dict)

    def diagram(self) -> Diagram:
        entries, loops = parse_pd_text(self.pd_text)
        return from_pd(entries, free_loops=loops + self.free_loops)


def _fail(name: str, fieldname: str, message: str) -> CatalogError:
    return CatalogError(f"record {name!r} field {fieldname!r}: {message}")


def _validate(record: LinkRecord) -> None:
    if record.orientation_note not in ORIENTATION_NOTES:
        raise _fail(
            record.name,
            "orientationNote",
            f"must be one of {ORIENTATION_NOTES}, got {record.orientation_note!r}",
        )
    if not record.source.startswith(PROVENANCE_TAGS):
        raise _fail(
            record.name,
            "source",
            "missing provenance tag ('paper:<location>' or 'derived:<oracle>')",
        )
    try:
        record.diagram()
    except DiagramError as e:
        raise _fail(record.name, "pd", str(e)) from e
    for algebra, text in record.expected.items():
        try:
            inst = make_instance(algebra)
        except Exception as e:
            raise _fail(record.name, f"expected.{algebra}", str(e)) from e
        try:
            parse(text, inst.carrier)
        except LaurentError as e:
            raise _fail(record.name, f"expected.{algebra}", str(e)) from e


def _parse_records(lines: list[str], origin: str) -> list[LinkRecord]:
    records: list[LinkRecord] = []
    seen: set[str] = set()
    name = None
    fields: dict[str, str] = {}
    expected: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, _, rest = stripped.partition(" ")
        value = rest.strip()
        if key == "link":
            if name is not None:
                raise CatalogError(
                    f"{origin}:{lineno}: record {name!r} not closed before new record"
                )
            if not value:
                raise CatalogError(f"{origin}:{lineno}: 'link' needs a name")
            name = value
            fields = {}
            expected = {}
            continue
        if name is None:
            raise CatalogError(
                f"{origin}:{lineno}: field outside of a link record"
            )
        if key == "end":
            missing = [f for f in REQUIRED_FIELDS if f not in fields]
            if missing:
                raise _fail(name, missing[0], "field is missing")
            try:
                loops = int(fields["freeLoops"])
            except ValueError:
                raise _fail(name, "freeLoops", f"not an integer: {fields['freeLoops']!r}")
            if loops < 0:
                raise _fail(name, "freeLoops", "must be nonnegative")
            record = LinkRecord(
                name=name,
                pd_text=fields["pd"],
                free_loops=loops,
                orientation_note=fields["orientationNote"],
                source=fields["source"],
                expected=dict(expected),
            )
            _validate(record)
            if record.name in seen:
                raise CatalogError(f"duplicate record name {record.name!r}")
            seen.add(record.name)
            records.append(record)
            name = None
            continue
        if key.startswith("expected."):
            algebra = key[len("expected."):]
            if not algebra:
                raise _fail(name, key, "missing algebra name")
            if algebra in expected:
                raise _fail(name, key, "duplicate expected entry")
            expected[algebra] = value
            continue
        if key in REQUIRED_FIELDS:
            if key in fields:
                raise _fail(name, key, "duplicate field")
            fields[key] = value
            continue
        raise _fail(name, key, "unknown field")
    if name is not None:
        raise CatalogError(f"{origin}: record {name!r} has no 'end' line")
    return records


def load_catalog(path) -> list[LinkRecord]:
    p = Path(path)
    if not p.is_file():
        raise CatalogError(f"catalog file not found: {p}")
    return _parse_records(p.read_text().splitlines(), str(p))


def bundled_catalog_path() -> Path:
    return Path(resources.files("conwaylink") / "fixtures" / "links.catalog")


def load_bundled() -> list[LinkRecord]:
    return load_catalog(bundled_catalog_path())


@dataclass(frozen=True)
class VerifyRow:
    """Outcome of checking one record against one algebra."""

    name: str
    algebra: str
    expected_text: str
    computed_text: str
    match: bool
    reversed_components: tuple[int, ...] | None
    mirrored: bool
    note: str

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "algebra": self.algebra,
            "expected": self.expected_text,
            "computed": self.computed_text,
            "match": self.match,
            "reversedComponents": (
                None
                if self.reversed_components is None
                else list(self.reversed_components)
            ),
            "mirrored": self.mirrored,
            "note": self.note,
        }


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...]

    @property
    def all_match(self) -> bool:
        return all(row.match for row in self.rows)

    def to_record(self) -> dict:
        return {
            "rows": [row.to_record() for row in self.rows],
            "allMatch": self.all_match,
        }

    def summary_lines(self) -> list[str]:
        lines = []
        for row in self.rows:
            status = "ok" if row.match else "MISMATCH"
            extra = ""
            if row.reversed_components:
                extra += f" reversed={list(row.reversed_components)}"
            if row.mirrored:
                extra += " mirrored"
            if row.note:
                extra += f" ({row.note})"
            lines.append(f"{status:8s} {row.name} [{row.algebra}]{extra}")
        return lines


def _orientation_candidates(d: Diagram, search: bool):
    if not search:
        yield (), d
        return
    k = len(d.components)
    for mask in range(1 << k):
        chosen = tuple(i for i in range(k) if mask >> i & 1)
        variant = d
        for i in chosen:
            variant = reverse_component(variant, i)
        yield chosen, variant


def verify_catalog(
    records: list[LinkRecord],
    inst: AlgebraInstance,
    *,
    mirror_retry: bool = False,
) -> VerifyReport:
    """Compare computed invariants against every matching expected entry.

    Records whose orientationNote is "search" are tried under all
    component-orientation combinations; the first matching combination
    is reported.  With mirror_retry, a failed search is repeated on the
    mirror image so convention mismatches surface loudly instead of as
    a bare mismatch.
    """
    from .skein import invariant

    rows = []
    for record in records:
        if inst.kind not in record.expected:
            continue
        expected_text = record.expected[inst.kind]
        expected_poly = parse(expected_text, inst.carrier)
        base = record.diagram()
        search = record.orientation_note == "search"
        found = None
        first_computed = None
        for mirrored, start in ((False, base), (True, mirror(base))):
            for chosen, variant in _orientation_candidates(start, search):
                value = invariant(variant, inst).value
                if first_computed is None:
                    first_computed = value
                if value == expected_poly:
                    found = (chosen, mirrored, value)
                    break
            if found or not mirror_retry:
                break
        if found:
            chosen, mirrored, value = found
            note = ""
            if mirrored:
                note = "matched only after mirroring; fixture orientation convention is reversed"
            rows.append(
                VerifyRow(
                    record.name,
                    inst.kind,
                    expected_text,
                    render(value),
                    True,
                    chosen if search else None,
                    mirrored,
                    note,
                )
            )
        else:
            tried = "all orientation combinations" if search else "the given orientation"
            note = f"no match under {tried}"
            if mirror_retry:
                note += "; mirror retry also failed"
            elif search:
                note += "; consider --mirror-retry"
            rows.append(
                VerifyRow(
                    record.name,
                    inst.kind,
                    expected_text,
                    render(first_computed),
                    False,
                    None,
                    False,
                    note,
                )
            )
    return VerifyReport(tuple(rows))
