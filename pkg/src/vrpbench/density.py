"""Delivery density model.

Each street gets a density in [0, 1], the product of three penalty
multipliers chosen by its region, type and zone. The density scales the
street's length into a sampling weight, so a downtown avenue through a
commercial block soaks up mail while a highway gets none at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import ParseError
from .streets import REGIONS, STREET_TYPES, ZONES

DEFAULT_REGION_PENALTY = MappingProxyType({
    "central": 1.0,
    "peripheral": 0.75,
    "distant": 0.4,
    "isolated": 0.2,
})

DEFAULT_TYPE_PENALTY = MappingProxyType({
    "avenue": 1.0,
    "street": 0.75,
    "alameda": 0.4,
    "highway": 0.0,
})

DEFAULT_ZONE_PENALTY = MappingProxyType({
    "commercial_industrial": 1.0,
    "mixed": 0.7,
    "residential": 0.4,
})

_AXES = {
    "region": REGIONS,
    "type": STREET_TYPES,
    "zone": ZONES,
}


@dataclass(frozen=True)
class PenaltyTable:
    """Multipliers per attribute level, each within [0, 1]."""

    region_penalty: Mapping[str, float] = field(default=DEFAULT_REGION_PENALTY)
    type_penalty: Mapping[str, float] = field(default=DEFAULT_TYPE_PENALTY)
    zone_penalty: Mapping[str, float] = field(default=DEFAULT_ZONE_PENALTY)

    def __post_init__(self):
        for axis, levels, mapping in (
            ("region", REGIONS, self.region_penalty),
            ("type", STREET_TYPES, self.type_penalty),
            ("zone", ZONES, self.zone_penalty),
        ):
            for level in levels:
                if level not in mapping:
                    raise ValueError(f"{axis} table is missing level {level!r}")
            for level, value in mapping.items():
                if level not in levels:
                    raise ValueError(f"unknown {axis} level {level!r}")
                if not 0.0 <= value <= 1.0:
                    raise ValueError(
                        f"{axis} penalty for {level!r} must be in [0, 1], got {value}"
                    )


def density(table: PenaltyTable, street) -> float:
    """Density of one street: region penalty * type penalty * zone penalty.

    `street` is anything carrying region/stype/zone attributes. Unknown
    levels raise ValueError naming the offending axis.
    """
    try:
        r = table.region_penalty[street.region]
    except KeyError:
        raise ValueError(f"unknown region level {street.region!r}") from None
    try:
        t = table.type_penalty[street.stype]
    except KeyError:
        raise ValueError(f"unknown type level {street.stype!r}") from None
    try:
        z = table.zone_penalty[street.zone]
    except KeyError:
        raise ValueError(f"unknown zone level {street.zone!r}") from None
    return r * t * z


def street_weight(street, density_value: float) -> float:
    """Sampling weight of a street: its density times its polyline length."""
    if density_value < 0.0:
        raise ValueError(f"density must be non-negative, got {density_value}")
    return density_value * street.length()


def load_penalty_overrides(path, base: PenaltyTable | None = None) -> PenaltyTable:
    """Penalty table from an override file applied on top of `base`.

    Lines look like `region isolated 0.1`; the axis is one of region,
    type or zone. '#' comments and blank lines are ignored.
    """
    if base is None:
        base = PenaltyTable()
    tables = {
        "region": dict(base.region_penalty),
        "type": dict(base.type_penalty),
        "zone": dict(base.zone_penalty),
    }
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"expected 'axis level multiplier', got {line!r}", lineno)
            axis, level, text = parts
            if axis not in tables:
                raise ParseError(f"unknown axis {axis!r}", lineno)
            if level not in _AXES[axis]:
                raise ParseError(f"unknown {axis} level {level!r}", lineno)
            try:
                value = float(text)
            except ValueError:
                raise ParseError(f"bad multiplier {text!r}", lineno) from None
            if not 0.0 <= value <= 1.0:
                raise ParseError(f"multiplier must be in [0, 1], got {value}", lineno)
            tables[axis][level] = value
    return PenaltyTable(tables["region"], tables["type"], tables["zone"])
