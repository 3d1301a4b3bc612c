"""Street descriptions and the flat segment soup fed into map extraction.

A street is a named polyline tagged with the three attributes that drive
delivery density: the region of the city it runs through, its type, and
its zoning. The tab-separated street file format lets small hand-made
maps and converted open data share one entry point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import ParseError

REGIONS = ("central", "peripheral", "distant", "isolated")
STREET_TYPES = ("avenue", "street", "alameda", "highway")
ZONES = ("commercial_industrial", "mixed", "residential")


@dataclass(frozen=True)
class StreetInfo:
    """Attribute record for one street, without geometry."""

    street_id: int
    name: str
    region: str
    stype: str
    zone: str

    def validate(self):
        if self.street_id < 0:
            raise ValueError(f"street id must be non-negative, got {self.street_id}")
        if not self.name:
            raise ValueError(f"street {self.street_id} has an empty name")
        if self.region not in REGIONS:
            raise ValueError(f"unknown region level {self.region!r}")
        if self.stype not in STREET_TYPES:
            raise ValueError(f"unknown type level {self.stype!r}")
        if self.zone not in ZONES:
            raise ValueError(f"unknown zone level {self.zone!r}")


@dataclass
class StreetPolyline:
    """A street as drawn on the map: attributes plus an open polyline.

    Coordinates are meters in a local planar frame. Consecutive points
    must be distinct; a polyline needs at least two points.
    """

    street_id: int
    name: str
    region: str
    stype: str
    zone: str
    points: list[tuple[float, float]]

    def info(self) -> StreetInfo:
        return StreetInfo(self.street_id, self.name, self.region, self.stype, self.zone)

    def length(self) -> float:
        return sum(
            math.hypot(bx - ax, by - ay)
            for (ax, ay), (bx, by) in zip(self.points, self.points[1:])
        )

    def validate(self):
        self.info().validate()
        if len(self.points) < 2:
            raise ValueError(f"street {self.street_id} needs at least two points")
        for (ax, ay), (bx, by) in zip(self.points, self.points[1:]):
            if ax == bx and ay == by:
                raise ValueError(f"street {self.street_id} repeats point ({ax}, {ay})")


class Segment(NamedTuple):
    """One straight piece of a street, as flat floats for cheap exact compares."""

    street_id: int
    ax: float
    ay: float
    bx: float
    by: float

    def length(self) -> float:
        return math.hypot(self.bx - self.ax, self.by - self.ay)


@dataclass
class SegmentSoup:
    """An unstructured bag of segments, each remembering its street."""

    segments: list[Segment]

    def total_length(self) -> float:
        return sum(s.length() for s in self.segments)


def soup_from_streets(streets) -> SegmentSoup:
    """Explode street polylines into a segment soup.

    Raises ValueError when two streets share an id or a polyline is
    malformed; intersection handling comes later and is not checked here.
    """
    seen = set()
    segments = []
    for street in streets:
        street.validate()
        if street.street_id in seen:
            raise ValueError(f"duplicate street id {street.street_id}")
        seen.add(street.street_id)
        for (ax, ay), (bx, by) in zip(street.points, street.points[1:]):
            segments.append(Segment(street.street_id, ax, ay, bx, by))
    return SegmentSoup(segments)


def _parse_points(text, lineno):
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ParseError(f"bad coordinate pair {chunk!r}", lineno)
        try:
            points.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ParseError(f"bad coordinate pair {chunk!r}", lineno) from None
    return points


def read_street_file(path) -> list[StreetPolyline]:
    """Read a tab-separated street file.

    Each line: street_id, name, region, type, zone and a semicolon-joined
    polyline of x,y pairs. Lines starting with '#' and blank lines are
    skipped.
    """
    streets = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 6:
                raise ParseError(
                    f"expected 6 tab-separated fields, got {len(fields)}", lineno
                )
            sid_text, name, region, stype, zone, coords = fields
            try:
                sid = int(sid_text)
            except ValueError:
                raise ParseError(f"bad street id {sid_text!r}", lineno) from None
            if sid in seen:
                raise ParseError(f"duplicate street id {sid}", lineno)
            seen.add(sid)
            street = StreetPolyline(sid, name, region, stype, zone, _parse_points(coords, lineno))
            try:
                street.validate()
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            streets.append(street)
    return streets


def write_street_file(streets, path):
    """Write streets in the format read_street_file understands."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for s in streets:
            coords = ";".join(f"{x:.9g},{y:.9g}" for x, y in s.points)
            fh.write(f"{s.street_id}\t{s.name}\t{s.region}\t{s.stype}\t{s.zone}\t{coords}\n")
