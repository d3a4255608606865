import os
from .fp_errors import DomainError


class Settings:
    """Runtime limits for the computation modules."""

    env_variable = "FSING_GB_PAIR_CAP"
    settings = {
        "gb_pair_cap": 200000,
        "nu_power_cap": 64,
        "test_ideal_e_cap": 8,
        "log_level": "WARNING",
    }

    @classmethod
    def get(cls, field):
        if field not in cls.settings:
            raise KeyError(f"Field '{field}' does not exist in settings.")
        return cls.settings[field]

    @classmethod
    def update_setting(cls, field, value):
        if field not in cls.settings:
            raise KeyError(f"Field '{field}' does not exist in settings.")

        cls.settings[field] = value

    # the Groebner pair cap is the only setting read from the environment
    @classmethod
    def load_env(cls):
        raw = os.environ.get(cls.env_variable)
        if raw is None or raw.strip() == "":
            return
        try:
            cap = int(raw)
        except ValueError:
            raise DomainError(f"{cls.env_variable} must be a positive integer, got '{raw}'.")
        if cap <= 0:
            raise DomainError(f"{cls.env_variable} must be a positive integer, got '{raw}'.")
        cls.update_setting("gb_pair_cap", cap)
