# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Scenario configuration.

Config files hold one ``key = value`` per line, keys are ScenarioConfig
field names, ``#`` starts a comment. Lists are comma separated, the map
size is written as ``map_size = WxH``::

    map_size = 40x40
    density = 0.3
    n_agents = 32
    regime = shared
    seeds = 1, 2, 3
"""

import enum
import warnings
import dataclasses
from collections import namedtuple

from .. import const
from ..error import ConfigError
from ..util import derive_seeds, PomapfWarning
from ..hybrid import LOOP_VARIANTS


class Regime(enum.Enum):
    """How much of the map an agent knows"""

    FULL = "full"
    SHARED = "shared"
    LOCAL = "local"


@dataclasses.dataclass(frozen=True)
class ScenarioConfig(object):

    width: int = 40
    height: int = 40
    density: float = 0.0
    n_agents: int = 8
    max_steps: int = 320
    n_instances: int = 100
    seed: int = 0
    seeds: tuple = ()
    regime: Regime = Regime.SHARED
    loop_detection: bool = True
    loop_variant: str = "both"
    switch_threshold: int = const.SWITCH_THRESHOLD
    obs_radius: int = const.OBS_RADIUS
    history_len: int = const.HISTORY_LEN
    latency: int = 0
    drop_rate: float = 0.0
    broadcast_period: int = 1
    policy: str = "greedy"
    epsilon: float = const.GREEDY_EPSILON
    density_range: tuple = None
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.regime, Regime):
            object.__setattr__(self, "regime", _parse_regime(self.regime))
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        if self.density_range is not None:
            object.__setattr__(self, "density_range",
                               tuple(float(d) for d in self.density_range))
        self.validate()

    def validate(self):
        from ..policy import list_policies

        def check(ok, field, message):
            if not ok:
                raise ConfigError("%s: %s (got %r)" % (
                    field, message, getattr(self, field)))

        check(self.width >= 1, "width", "must be at least 1")
        check(self.height >= 1, "height", "must be at least 1")
        check(0.0 <= self.density < 1.0, "density", "must be in [0, 1)")
        check(self.n_agents >= 1, "n_agents", "must be at least 1")
        check(self.max_steps >= 1, "max_steps", "must be at least 1")
        check(self.n_instances >= 1, "n_instances", "must be at least 1")
        check(not self.seeds or len(self.seeds) == self.n_instances, "seeds",
              "needs one seed per instance")
        check(self.loop_variant in LOOP_VARIANTS, "loop_variant",
              "must be one of %s" % ", ".join(LOOP_VARIANTS))
        check(self.switch_threshold >= 0, "switch_threshold",
              "must not be negative")
        check(self.obs_radius >= 1, "obs_radius", "must be at least 1")
        check(self.history_len >= 3, "history_len", "must be at least 3")
        check(self.latency >= 0, "latency", "must not be negative")
        check(0.0 <= self.drop_rate <= 1.0, "drop_rate", "must be in [0, 1]")
        check(self.broadcast_period >= 1, "broadcast_period",
              "must be at least 1")
        check(self.policy in list_policies(), "policy",
              "must be one of %s" % ", ".join(list_policies()))
        check(0.0 <= self.epsilon <= 1.0, "epsilon", "must be in [0, 1]")
        if self.density_range is not None:
            lo_hi = self.density_range
            check(len(lo_hi) == 2 and 0.0 <= lo_hi[0] <= lo_hi[1] < 1.0,
                  "density_range", "must be two densities lo <= hi in [0, 1)")
        check(self.workers >= 1, "workers", "must be at least 1")

    @property
    def map_size(self):
        return (self.width, self.height)

    def replace(self, **changes):
        """A copy with some fields changed, raises ConfigError"""

        try:
            return dataclasses.replace(self, **changes)
        except TypeError as e:
            raise ConfigError(str(e))

    def instance_seeds(self):
        """One seed per instance; explicit `seeds` win over derived ones"""

        if self.seeds:
            return list(self.seeds)
        return derive_seeds(self.seed, self.n_instances)

    def label(self):
        return "%dx%d/%d%%/%s/loop-%s/n=%d" % (
            self.width, self.height, int(round(self.density * 100)),
            self.regime.value, "on" if self.loop_detection else "off",
            self.n_agents)


def warn_unused_knobs(config):
    """Warns about communication settings the regime never uses"""

    if config.regime is Regime.SHARED:
        return
    unused = [name for name, default in (
        ("latency", 0), ("drop_rate", 0.0), ("broadcast_period", 1))
        if getattr(config, name) != default]
    if unused:
        warnings.warn("%s ignored under the %r regime" % (
            ", ".join(unused), config.regime.value), PomapfWarning)


def _parse_regime(value):
    try:
        return Regime(value)
    except ValueError:
        raise ConfigError("regime: must be one of %s (got %r)" % (
            ", ".join(r.value for r in Regime), value))


def _parse_bool(value):
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError("not a boolean: %r" % value)


def _parse_list(convert):
    def parse(value):
        return tuple(convert(v.strip()) for v in value.split(",")
                     if v.strip())
    return parse


def _parse_optional_list(convert):
    parse = _parse_list(convert)

    def optional(value):
        if value.strip().lower() in ("", "none"):
            return None
        return parse(value)
    return optional


def parse_map_size(value):
    """'WxH' -> (W, H), raises ValueError"""

    try:
        width, height = [int(v) for v in value.lower().split("x")]
    except ValueError:
        raise ValueError("map size must look like WxH, got %r" % value)
    return width, height


_PARSERS = {
    "width": int,
    "height": int,
    "density": float,
    "n_agents": int,
    "max_steps": int,
    "n_instances": int,
    "seed": int,
    "seeds": _parse_list(int),
    "regime": _parse_regime,
    "loop_detection": _parse_bool,
    "loop_variant": str,
    "switch_threshold": int,
    "obs_radius": int,
    "history_len": int,
    "latency": int,
    "drop_rate": float,
    "broadcast_period": int,
    "policy": str,
    "epsilon": float,
    "density_range": _parse_optional_list(float),
    "workers": int,
}


def parse_config(text, base=None):
    """Returns `base` (default: ScenarioConfig()) updated with the values
    in `text`. Raises ConfigError.
    """

    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ConfigError("line %d: expected 'key = value'" % lineno)
        try:
            if key == "map_size":
                values["width"], values["height"] = parse_map_size(value)
                continue
            if key not in _PARSERS:
                raise ConfigError("line %d: unknown key %r" % (lineno, key))
            values[key] = _PARSERS[key](value)
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError("line %d: %s: %s" % (lineno, key, e))

    if base is None:
        base = ScenarioConfig()
    return base.replace(**values)


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, enum.Enum):
        return value.value
    if value is None:
        return "none"
    if isinstance(value, tuple):
        return ", ".join(_format(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def dump_config(config):
    lines = ["map_size = %dx%d" % (config.width, config.height)]
    for field in dataclasses.fields(config):
        if field.name in ("width", "height"):
            continue
        lines.append("%s = %s" % (field.name,
                                  _format(getattr(config, field.name))))
    return "\n".join(lines) + "\n"


def load_config(path, base=None):
    try:
        with open(path, "r") as h:
            text = h.read()
    except (IOError, OSError) as e:
        raise ConfigError("can't read config %r: %s" % (path, e))
    return parse_config(text, base)


Preset = namedtuple("Preset", ["config", "agent_counts", "description"])

_TABLE_AGENTS = (8, 16, 32, 64, 128)


def _table(density, seed):
    return Preset(
        ScenarioConfig(width=40, height=40, density=density,
                       max_steps=const.STEP_CAPS[(40, 40)], seed=seed),
        _TABLE_AGENTS,
        "40x40 at %d%% obstacles, 8 to 128 agents" % round(density * 100))


PRESETS = {
    "table-40-0": _table(0.0, 4000),
    "table-40-15": _table(0.15, 4015),
    "table-40-30": _table(0.3, 4030),
    "sweep-20": Preset(
        ScenarioConfig(width=20, height=20, density=0.3,
                       max_steps=const.STEP_CAPS[(20, 20)], seed=2030),
        (4, 8, 16, 32, 64),
        "20x20 at 30% obstacles, 4 to 64 agents"),
    "ablate-shared-80": Preset(
        ScenarioConfig(width=80, height=80, density=0.3,
                       max_steps=const.STEP_CAPS[(80, 80)], seed=8030),
        (8, 16, 32, 64, 128),
        "80x80 at 30% obstacles, information regimes"),
    "ablate-loop-40": Preset(
        ScenarioConfig(width=40, height=40, density=0.3, n_agents=32,
                       max_steps=const.STEP_CAPS[(40, 40)], seed=4031),
        (8, 16, 32, 64),
        "40x40 at 30% obstacles, loop detection on and off"),
    "perf-64": Preset(
        ScenarioConfig(width=64, height=64, density=0.3, n_agents=64,
                       max_steps=const.STEP_CAPS[(64, 64)], seed=6430),
        (64,),
        "64x64 at 30% obstacles, 64 agents"),
    "train-64": Preset(
        ScenarioConfig(width=64, height=64, density=0.15, n_agents=64,
                       max_steps=const.STEP_CAPS[(64, 64)], seed=6415,
                       density_range=(0.15, 0.45)),
        (64,),
        "64x64, density drawn from 15% to 45% per instance, 64 agents"),
}


def get_preset(name):
    """Returns the Preset or raises ConfigError"""

    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError("unknown preset %r (one of %s)" % (
            name, ", ".join(sorted(PRESETS))))
