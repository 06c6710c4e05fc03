import os
import unittest

from unittest.mock import patch

from pyq2x.configloader import ConfigLoader, config, reset_config
from pyq2x.exceptions import NotInitializedError, ValidationError

def _reload():
    ConfigLoader(envvar="Q2X_ENV", overwrite_prefix="Q2X_").load()

class TestConfigLoader(unittest.TestCase):
    def setUp(self):
        self.addCleanup(_reload)

    def test_environment_merged_over_default(self):
        ConfigLoader(env="test").load()

        self.assertEqual(config.loglevel, "error")
        self.assertEqual(config.check_count, 10)
        self.assertEqual(config.rt, 0.1)
        self.assertEqual(config.double_layer_margin, 20.0)

    def test_default_only(self):
        loader = ConfigLoader()
        loader.load()

        self.assertIsNone(loader.env)
        self.assertEqual(config.check_count, 100)

    def test_os_environment_override(self):
        with patch.dict(os.environ, {"Q2X_WORKERS": "4", "Q2X_BOUND_CONSTANT": "0.25"}):
            ConfigLoader(env="test", overwrite_prefix="Q2X_").load()

        self.assertEqual(config.workers, 4)
        self.assertEqual(config.bound_constant, 0.25)

    def test_keyword_overrides_win(self):
        with patch.dict(os.environ, {"Q2X_WORKERS": "4"}):
            ConfigLoader(env="test", overwrite_prefix="Q2X_").load(workers=2)

        self.assertEqual(config.workers, 2)

    def test_invalid_values(self):
        with patch.dict(os.environ, {"Q2X_WORKERS": "0"}):
            with self.assertRaises(ValidationError) as ctx:
                ConfigLoader(env="test", overwrite_prefix="Q2X_").load()

        self.assertIn("workers", ctx.exception.errors)

        with self.assertRaises(ValidationError):
            ConfigLoader(env="test").load(rt=0.5)
        with self.assertRaises(ValidationError):
            ConfigLoader(env="test").load(loglevel="loud")

    def test_unknown_keys(self):
        with self.assertRaises(ValidationError):
            ConfigLoader(env="test").load(colour="blue")

    def test_access(self):
        ConfigLoader(env="test").load()

        self.assertIn("workers", config)
        self.assertNotIn("colour", config)
        self.assertEqual(config["csv_digits"], 17)
        self.assertEqual(config.get("colour", "none"), "none")

        with self.assertRaises(KeyError):
            config["colour"]

    def test_as_dict(self):
        ConfigLoader(env="test").load(workers=3)

        settings = config.as_dict()

        self.assertEqual(settings["workers"], 3)
        self.assertEqual(settings["check_count"], 10)
        self.assertNotIn("colour", settings)

    def test_uninitialized(self):
        reset_config()

        with self.assertRaises(NotInitializedError):
            config.workers
        with self.assertRaises(NotInitializedError):
            "workers" in config

if __name__ == "__main__":
    unittest.main()
