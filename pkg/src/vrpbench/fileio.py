"""The sectioned instance file format and batch generation.

Files are plain text, LF line endings, numbers at 9 significant digits.
A header block of `KEY: value` lines is followed by fixed-order sections
(VERTICES, EDGES, STREETS, DELIVERIES, then optional TIME_WINDOWS) and a
terminal EOF line. The terminator plus the strict section order mean any
truncated file fails to parse instead of silently loading half a map.
"""

from __future__ import annotations

from pathlib import Path

from .density import PenaltyTable
from .errors import ParseError
from .instances import GenerationSpec, Instance, generate
from .network import StreetNetwork
from .streets import REGIONS, STREET_TYPES, ZONES, StreetInfo

FILE_TYPE = "VRPBENCH"
FILE_UNIT = "meters"

_REQUIRED_HEADERS = ("NAME", "TYPE", "UNIT", "VEHICLES", "DEPOT")
_OPTIONAL_HEADERS = ("MAX_ROUTE_LENGTH", "SEED", "GENERATOR_VERSION")
_SECTIONS = ("VERTICES", "EDGES", "STREETS", "DELIVERIES", "TIME_WINDOWS", "EOF")


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def serialize_instance(instance: Instance) -> str:
    """Render an instance to the text format. Deterministic for equal inputs."""
    if instance.vehicle_capacities is not None:
        raise ValueError("the file format does not carry vehicle capacities")
    net = instance.network
    out = [
        f"NAME: {instance.name or 'unnamed'}",
        f"TYPE: {FILE_TYPE}",
        f"UNIT: {FILE_UNIT}",
        f"VEHICLES: {instance.fleet_size}",
        f"DEPOT: {instance.depot}",
    ]
    if instance.max_route_length is not None:
        out.append(f"MAX_ROUTE_LENGTH: {_fmt(instance.max_route_length)}")
    if instance.seed is not None:
        out.append(f"SEED: {instance.seed}")
    if instance.generator_version is not None:
        out.append(f"GENERATOR_VERSION: {instance.generator_version}")
    out.append("VERTICES")
    for v in net.vertices:
        out.append(f"{v.vid} {_fmt(v.x)} {_fmt(v.y)} {v.kind}")
    out.append("EDGES")
    for e in net.edges:
        out.append(f"{e.u} {e.v} {_fmt(e.weight)} {e.street_id}")
    out.append("STREETS")
    for sid in sorted(net.streets):
        s = net.streets[sid]
        out.append(f"{sid} {s.region} {s.stype} {s.zone} {s.name}")
    out.append("DELIVERIES")
    for vid, demand in instance.customers:
        out.append(f"{vid} {_fmt(demand)}")
    if instance.time_windows:
        out.append("TIME_WINDOWS")
        for vid in sorted(instance.time_windows):
            earliest, latest = instance.time_windows[vid]
            out.append(f"{vid} {_fmt(earliest)} {_fmt(latest)}")
    out.append("EOF")
    return "\n".join(out) + "\n"


class _Reader:
    def __init__(self, lines):
        self.lines = lines
        self.pos = 0

    @property
    def lineno(self):
        return self.pos + 1

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def take(self):
        line = self.peek()
        if line is not None:
            self.pos += 1
        return line


def _parse_int(text, what, lineno):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"bad {what} {text!r}", lineno) from None


def _parse_float(text, what, lineno):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"bad {what} {text!r}", lineno) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(f"bad {what} {text!r}", lineno)
    return value


def parse_instance(text) -> Instance:
    """Parse the instance format, raising ParseError on any defect.

    The parser is strict: headers and sections must appear in order, ids
    must be dense and cross-references resolvable, and the file must end
    with the EOF line. Errors carry the offending line number.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    if not text.endswith("\n"):
        raise ParseError("file does not end with a newline (truncated?)")
    reader = _Reader(text.split("\n")[:-1])

    headers = {}
    while True:
        line = reader.peek()
        if line is None:
            raise ParseError("missing VERTICES section", reader.lineno)
        if line in _SECTIONS:
            break
        lineno = reader.lineno
        reader.take()
        key, sep, value = line.partition(": ")
        if not sep or not value:
            raise ParseError(f"expected 'KEY: value' header, got {line!r}", lineno)
        if key not in _REQUIRED_HEADERS and key not in _OPTIONAL_HEADERS:
            raise ParseError(f"unknown header {key!r}", lineno)
        if key in headers:
            raise ParseError(f"duplicate header {key!r}", lineno)
        headers[key] = (value, lineno)

    for key in _REQUIRED_HEADERS:
        if key not in headers:
            raise ParseError(f"missing required header {key!r}")
    if headers["TYPE"][0] != FILE_TYPE:
        raise ParseError(f"TYPE must be {FILE_TYPE}", headers["TYPE"][1])
    if headers["UNIT"][0] != FILE_UNIT:
        raise ParseError(f"UNIT must be {FILE_UNIT}", headers["UNIT"][1])
    name = headers["NAME"][0]
    fleet = _parse_int(headers["VEHICLES"][0], "vehicle count", headers["VEHICLES"][1])
    if fleet < 1:
        raise ParseError("VEHICLES must be at least 1", headers["VEHICLES"][1])
    depot = _parse_int(headers["DEPOT"][0], "depot id", headers["DEPOT"][1])
    max_len = None
    if "MAX_ROUTE_LENGTH" in headers:
        value, lineno = headers["MAX_ROUTE_LENGTH"]
        max_len = _parse_float(value, "max route length", lineno)
        if max_len <= 0:
            raise ParseError("MAX_ROUTE_LENGTH must be positive", lineno)
    seed = None
    if "SEED" in headers:
        seed = _parse_int(headers["SEED"][0], "seed", headers["SEED"][1])
    version = headers["GENERATOR_VERSION"][0] if "GENERATOR_VERSION" in headers else None

    def expect_section(wanted):
        line = reader.peek()
        if line != wanted:
            raise ParseError(f"expected {wanted} section, got {line!r}", reader.lineno)
        reader.take()

    def section_rows(stop_names):
        while True:
            line = reader.peek()
            if line is None:
                raise ParseError("file ends inside a section", reader.lineno)
            if line in _SECTIONS:
                if line not in stop_names:
                    raise ParseError(f"unexpected section {line}", reader.lineno)
                return
            lineno = reader.lineno
            reader.take()
            yield line, lineno

    net = StreetNetwork()
    expect_section("VERTICES")
    depot_kind_ids = []
    for line, lineno in section_rows(("EDGES",)):
        parts = line.split(" ")
        if len(parts) != 4:
            raise ParseError(f"expected 'id x y kind', got {line!r}", lineno)
        vid = _parse_int(parts[0], "vertex id", lineno)
        if vid != len(net.vertices):
            raise ParseError(
                f"vertex id {vid} out of order (expected {len(net.vertices)})", lineno
            )
        x = _parse_float(parts[1], "x coordinate", lineno)
        y = _parse_float(parts[2], "y coordinate", lineno)
        kind = parts[3]
        if kind not in ("corner", "delivery", "depot"):
            raise ParseError(f"unknown vertex kind {kind!r}", lineno)
        net.add_vertex(x, y, kind)
        if kind == "depot":
            depot_kind_ids.append(vid)
    if not net.vertices:
        raise ParseError("VERTICES section is empty", reader.lineno)

    expect_section("EDGES")
    pending_edges = []
    for line, lineno in section_rows(("STREETS",)):
        parts = line.split(" ")
        if len(parts) != 4:
            raise ParseError(f"expected 'u v weight street_id', got {line!r}", lineno)
        u = _parse_int(parts[0], "vertex id", lineno)
        v = _parse_int(parts[1], "vertex id", lineno)
        w = _parse_float(parts[2], "edge weight", lineno)
        sid = _parse_int(parts[3], "street id", lineno)
        if not (0 <= u < len(net.vertices) and 0 <= v < len(net.vertices)):
            raise ParseError(f"edge ({u}, {v}) references an unknown vertex", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        if w <= 0:
            raise ParseError(f"edge weight must be positive, got {parts[2]}", lineno)
        pending_edges.append((u, v, w, sid, lineno))

    expect_section("STREETS")
    for line, lineno in section_rows(("DELIVERIES",)):
        parts = line.split(" ", 4)
        if len(parts) != 5:
            raise ParseError(f"expected 'id region type zone name', got {line!r}", lineno)
        sid = _parse_int(parts[0], "street id", lineno)
        if sid in net.streets:
            raise ParseError(f"duplicate street id {sid}", lineno)
        region, stype, zone, sname = parts[1], parts[2], parts[3], parts[4]
        if region not in REGIONS:
            raise ParseError(f"unknown region level {region!r}", lineno)
        if stype not in STREET_TYPES:
            raise ParseError(f"unknown type level {stype!r}", lineno)
        if zone not in ZONES:
            raise ParseError(f"unknown zone level {zone!r}", lineno)
        if not sname:
            raise ParseError("empty street name", lineno)
        net.streets[sid] = StreetInfo(sid, sname, region, stype, zone)

    for u, v, w, sid, lineno in pending_edges:
        if sid not in net.streets:
            raise ParseError(f"edge references undeclared street {sid}", lineno)
        net.add_edge(u, v, w, sid)

    expect_section("DELIVERIES")
    customers = []
    seen_customers = set()
    for line, lineno in section_rows(("TIME_WINDOWS", "EOF")):
        parts = line.split(" ")
        if len(parts) != 2:
            raise ParseError(f"expected 'vertex_id demand', got {line!r}", lineno)
        vid = _parse_int(parts[0], "vertex id", lineno)
        demand = _parse_float(parts[1], "demand", lineno)
        if not 0 <= vid < len(net.vertices):
            raise ParseError(f"delivery references unknown vertex {vid}", lineno)
        if net.vertices[vid].kind != "delivery":
            raise ParseError(f"vertex {vid} is not a delivery vertex", lineno)
        if vid in seen_customers:
            raise ParseError(f"duplicate delivery vertex {vid}", lineno)
        if demand < 0:
            raise ParseError(f"negative demand {demand}", lineno)
        seen_customers.add(vid)
        customers.append((vid, demand))

    windows = {}
    if reader.peek() == "TIME_WINDOWS":
        reader.take()
        for line, lineno in section_rows(("EOF",)):
            parts = line.split(" ")
            if len(parts) != 3:
                raise ParseError(f"expected 'vertex_id earliest latest', got {line!r}", lineno)
            vid = _parse_int(parts[0], "vertex id", lineno)
            earliest = _parse_float(parts[1], "window start", lineno)
            latest = _parse_float(parts[2], "window end", lineno)
            if vid not in seen_customers:
                raise ParseError(f"time window for non-delivery vertex {vid}", lineno)
            if vid in windows:
                raise ParseError(f"duplicate time window for vertex {vid}", lineno)
            if earliest > latest:
                raise ParseError(f"window start {parts[1]} after end {parts[2]}", lineno)
            windows[vid] = (earliest, latest)

    if reader.take() != "EOF":
        raise ParseError("missing EOF terminator", reader.lineno)
    if reader.peek() is not None:
        raise ParseError("content after EOF terminator", reader.lineno)

    if not 0 <= depot < len(net.vertices):
        raise ParseError(f"DEPOT references unknown vertex {depot}", headers["DEPOT"][1])
    if net.vertices[depot].kind != "depot":
        raise ParseError(f"DEPOT vertex {depot} does not have kind depot", headers["DEPOT"][1])
    if depot_kind_ids != [depot]:
        raise ParseError(
            f"depot-kind vertices {depot_kind_ids} must be exactly the DEPOT header",
            headers["DEPOT"][1],
        )
    net.depot = depot

    return Instance(
        network=net,
        depot=depot,
        customers=customers,
        fleet_size=fleet,
        name=name,
        max_route_length=max_len,
        time_windows=windows or None,
        seed=seed,
        generator_version=version,
    )


def read_instance(path) -> Instance:
    return parse_instance(Path(path).read_bytes())


def write_instance(instance: Instance, path):
    Path(path).write_bytes(serialize_instance(instance).encode("utf-8"))


PAPER_SIZES = tuple(range(1000, 10001, 1000))
PAPER_PER_SIZE = 10


def batch_generate(network, table: PenaltyTable, out_dir, preset: str = "paper",
                   base_seed: int = 0, fleet_size: int = 20, sizes=None,
                   per_size: int | None = None, prefix: str = "an") -> list[Path]:
    """Emit a whole benchmark set as .vrpb files.

    The "paper" preset produces ten instances at each size from 1000 to
    10000 deliveries. Seeds derive from base_seed + 100 * size_index +
    instance_index, so one base seed pins every file byte for byte.
    Returns the written paths in generation order.
    """
    if preset == "paper":
        sizes = PAPER_SIZES
        per_size = PAPER_PER_SIZE
    elif preset == "custom":
        if not sizes or not per_size:
            raise ValueError("custom preset needs sizes and per_size")
    else:
        raise ValueError(f"unknown preset {preset!r}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for set_index, size in enumerate(sizes):
        for index in range(1, per_size + 1):
            seed = base_seed + set_index * 100 + index
            spec = GenerationSpec(deliveries=size, seed=seed, fleet_size=fleet_size)
            instance = generate(network, table, spec)
            instance.name = f"{prefix}-{size}-{index:02d}"
            path = out_dir / f"{instance.name}.vrpb"
            write_instance(instance, path)
            written.append(path)
    return written
