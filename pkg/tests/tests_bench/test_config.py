# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import os
import shutil
import tempfile
import unittest
import warnings

from pomapf.error import ConfigError
from pomapf.util import PomapfWarning
from pomapf.bench.config import Regime, ScenarioConfig, PRESETS, \
    get_preset, parse_config, dump_config, load_config, parse_map_size, \
    warn_unused_knobs


class TScenarioConfig(unittest.TestCase):

    def test_defaults(self):
        config = ScenarioConfig()
        self.assertEqual(config.map_size, (40, 40))
        self.assertEqual(config.regime, Regime.SHARED)
        self.assertTrue(config.loop_detection)
        self.assertEqual(config.switch_threshold, 4)
        self.assertEqual(config.obs_radius, 4)
        self.assertEqual(config.epsilon, 0.15)
        self.assertEqual(config.label(), "40x40/0%/shared/loop-on/n=8")

    def test_regime_from_string(self):
        config = ScenarioConfig(regime="local")
        self.assertTrue(config.regime is Regime.LOCAL)
        self.assertRaises(ConfigError, ScenarioConfig, regime="central")

    def test_invalid(self):
        for changes in [dict(density=1.0), dict(max_steps=0),
                        dict(n_instances=0), dict(n_agents=0),
                        dict(drop_rate=1.5), dict(latency=-1),
                        dict(loop_variant="euclid"), dict(policy="rl"),
                        dict(epsilon=-0.1), dict(history_len=2),
                        dict(broadcast_period=0), dict(workers=0),
                        dict(density_range=(0.5, 0.1))]:
            self.assertRaises(ConfigError, ScenarioConfig, **changes)

    def test_message(self):
        with self.assertRaises(ConfigError) as ctx:
            ScenarioConfig(max_steps=0)
        self.assertEqual(str(ctx.exception),
                         "max_steps: must be at least 1 (got 0)")

    def test_seeds(self):
        config = ScenarioConfig(n_instances=3, seeds=[7, 8, 9])
        self.assertEqual(config.seeds, (7, 8, 9))
        self.assertEqual(config.instance_seeds(), [7, 8, 9])
        self.assertRaises(ConfigError, ScenarioConfig, n_instances=2,
                          seeds=[1, 2, 3])

        derived = ScenarioConfig(n_instances=5, seed=11).instance_seeds()
        self.assertEqual(len(set(derived)), 5)
        self.assertEqual(derived,
                         ScenarioConfig(n_instances=5, seed=11)
                         .instance_seeds())

    def test_replace(self):
        config = ScenarioConfig().replace(n_agents=16, regime=Regime.FULL)
        self.assertEqual(config.n_agents, 16)
        self.assertRaises(ConfigError, config.replace, n_agent=16)
        self.assertRaises(ConfigError, config.replace, n_agents=-1)

    def test_hashable(self):
        self.assertEqual(ScenarioConfig(), ScenarioConfig())
        self.assertEqual(len(set([ScenarioConfig(), ScenarioConfig()])), 1)

    def test_unused_knobs(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            warn_unused_knobs(ScenarioConfig(regime=Regime.SHARED, latency=3))
            self.assertEqual(len(caught), 0)
            warn_unused_knobs(ScenarioConfig(regime=Regime.LOCAL, latency=3))
            self.assertEqual(len(caught), 1)
            self.assertTrue(issubclass(caught[0].category, PomapfWarning))
            self.assertTrue("latency" in str(caught[0].message))


class TConfigText(unittest.TestCase):

    def test_parse(self):
        config = parse_config("""
            # a comment
            map_size = 20x20
            density = 0.3   # inline
            n_agents = 4
            regime = local
            loop_detection = off
            n_instances = 2
            seeds = 5, 6
        """)
        self.assertEqual(config.map_size, (20, 20))
        self.assertEqual(config.density, 0.3)
        self.assertEqual(config.regime, Regime.LOCAL)
        self.assertFalse(config.loop_detection)
        self.assertEqual(config.seeds, (5, 6))

    def test_base(self):
        base = ScenarioConfig(n_agents=32, latency=2)
        config = parse_config("n_agents = 8\n", base)
        self.assertEqual((config.n_agents, config.latency), (8, 2))

    def test_roundtrip(self):
        for preset in PRESETS.values():
            config = preset.config
            self.assertEqual(parse_config(dump_config(config)), config)
        config = ScenarioConfig(n_instances=2, seeds=(3, 4), drop_rate=0.25,
                                regime=Regime.FULL, loop_detection=False)
        self.assertEqual(parse_config(dump_config(config)), config)

    def test_dump(self):
        text = dump_config(ScenarioConfig())
        self.assertTrue(text.startswith("map_size = 40x40\n"))
        self.assertTrue("\nregime = shared\n" in text)
        self.assertTrue("\ndensity_range = none\n" in text)

    def test_errors(self):
        with self.assertRaises(ConfigError) as ctx:
            parse_config("n_agents = 4\nn_agent = 4\n")
        self.assertTrue(str(ctx.exception).startswith("line 2: "))
        self.assertRaises(ConfigError, parse_config, "density 0.3\n")
        self.assertRaises(ConfigError, parse_config, "density = lots\n")
        self.assertRaises(ConfigError, parse_config, "map_size = 40\n")
        self.assertRaises(ConfigError, parse_config, "regime = oracle\n")
        self.assertRaises(ConfigError, parse_config,
                          "loop_detection = maybe\n")
        self.assertRaises(ConfigError, parse_config, "density = 1.5\n")

    def test_map_size(self):
        self.assertEqual(parse_map_size("64x32"), (64, 32))
        self.assertEqual(parse_map_size("8X8"), (8, 8))
        self.assertRaises(ValueError, parse_map_size, "8x")

    def test_file(self):
        tmp = tempfile.mkdtemp()
        try:
            path = os.path.join(tmp, "scenario.cfg")
            with open(path, "w") as h:
                h.write("n_agents = 12\n")
            self.assertEqual(load_config(path).n_agents, 12)
            self.assertRaises(ConfigError, load_config,
                              os.path.join(tmp, "missing.cfg"))
        finally:
            shutil.rmtree(tmp)


class TPresets(unittest.TestCase):

    def test_step_caps(self):
        self.assertEqual(get_preset("sweep-20").config.max_steps, 256)
        self.assertEqual(get_preset("table-40-30").config.max_steps, 320)
        self.assertEqual(get_preset("ablate-shared-80").config.map_size,
                         (80, 80))

    def test_table_densities(self):
        densities = [get_preset(name).config.density for name in
                     ("table-40-0", "table-40-15", "table-40-30")]
        self.assertEqual(densities, [0.0, 0.15, 0.3])
        self.assertEqual(get_preset("table-40-0").agent_counts,
                         (8, 16, 32, 64, 128))

    def test_fixed_seeds(self):
        seeds = [p.config.instance_seeds() for p in PRESETS.values()]
        self.assertEqual(seeds, [p.config.instance_seeds()
                                 for p in PRESETS.values()])
        self.assertEqual(len(set(s[0] for s in seeds)), len(PRESETS))

    def test_unknown(self):
        with self.assertRaises(ConfigError) as ctx:
            get_preset("table-99")
        self.assertTrue("sweep-20" in str(ctx.exception))
