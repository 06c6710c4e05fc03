import collections
import importlib
import os
import re

from deepmerge import always_merger
from marshmallow import ValidationError as MarshmallowValidationError

from pyq2x.exceptions import NotInitializedError, ValidationError
from pyq2x.schemas import ConfigSchema

class ConfigLoader:

    """ Loads `pyq2x.config.default` and merges over it the environment
    module named by the `envvar` environment variable, or `env` when that is
    unset.

    With an `overwrite_prefix`, every key can also be set from the process
    environment: with the prefix "Q2X_", `Q2X_WORKERS=4` sets `workers`.
    `load` validates and coerces the result with `ConfigSchema` and
    publishes it behind the module-level `config`.
    """

    CONFIG_PKG = "pyq2x.config"

    def __init__(self, envvar=None, env=None, overwrite_prefix=None):
        self.env = (envvar and os.environ.get(envvar)) or env
        self.config = self._load_env("default")
        self.overwrite_prefix = overwrite_prefix

        if self.env:
            self.config = always_merger.merge(self.config, self._load_env(self.env))

    def load(self, **overrides):

        """ Publish the configuration. Keyword arguments take precedence over
        the process environment, which takes precedence over the modules.
        """

        global _config

        merged = dict(self.config) | self._os_env_overrides() | overrides

        try:
            loaded = ConfigSchema().load(merged)
        except MarshmallowValidationError as e:
            raise ValidationError(e.messages) from e

        _config = collections.namedtuple("Config", loaded)(**loaded)

        return config

    def _load_env(self, env):
        return dict(importlib.import_module(f"{self.CONFIG_PKG}.{env}").config)

    def _os_env_overrides(self):
        if self.overwrite_prefix is None:
            return {}

        pattern = re.compile(fr"{re.escape(self.overwrite_prefix)}(\w+)$")

        return {
            m[1].lower(): value
            for name, value in os.environ.items()
            if (m := pattern.match(name)) and m[1] != "ENV"
        }

def reset_config():

    """ Forget the published configuration. """

    global _config

    _config = None

class _Config:

    """ Read-only view of the published configuration by attribute,
    subscript, `in` and `get`. Any read before `ConfigLoader.load` raises
    NotInitializedError.
    """

    @staticmethod
    def _published():
        if _config is None:
            raise NotInitializedError("Configuration has not been initialized")

        return _config

    def __contains__(self, key):
        return key in self._published()._fields

    def __getattr__(self, name):
        return getattr(self._published(), name)

    def __getitem__(self, key):
        if key not in self:
            raise KeyError(key)

        return getattr(_config, key)

    def get(self, key, default=None):
        return self[key] if key in self else default

    def as_dict(self):
        return self._published()._asdict()

_config = None
config = _Config()
