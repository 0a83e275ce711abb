"""
File: utils/settings_manager.py

This module provides the SettingsManager class for loading the toolkit's settings.
Settings are persisted in a YAML file and loaded automatically on startup. Default settings are used if the configuration file is missing or corrupted.
The file location can be overridden with the ECBIN_CONFIG environment variable.
"""

import logging
import os

import yaml

logger = logging.getLogger(__name__)

# Define the base directory and configuration file path
BASE_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
CONFIG_PATH = os.path.join(BASE_DIR, 'config', 'user_config.yaml')
CONFIG_ENV_VAR = "ECBIN_CONFIG"

# Default settings used when the config file does not exist or is corrupted
DEFAULT_SETTINGS = {
    "order_policy": "freq",  # freq | first-seen | explicit:<syms>
    "report_format": "json",
    "threads": 0,  # 0 = available parallelism
    "seed": 0,
    "conservation_tolerance": 1e-9,
    "log_level": "INFO",
    "bench_sizes": [1048576, 2097152, 4194304],
    "bench_distributions": ["uniform:5", "dyadic:16", "geometric:0.3", "zipf:1.2", "twospike:0.9", "uniform:16"],
    "bench_repetitions": 3,
}


class SettingsManager:
    """
    Provides centralized loading, access and saving of settings.
    Settings are stored in a YAML file and persist across runs.
    If the configuration file is missing or corrupted, default settings are used.

    Attributes:
        path (str): Location of the YAML file.
        settings (dict): The current settings, merged over DEFAULT_SETTINGS.
    """

    def __init__(self, path: str = None):
        """
        Initialize the SettingsManager instance.

        Loads settings from the YAML configuration file. If the configuration file does not exist,
        default settings are used and saved to a new file.

        Args:
            path (str, optional): Configuration file. Defaults to $ECBIN_CONFIG, then CONFIG_PATH.
        """
        self.path = path or os.environ.get(CONFIG_ENV_VAR) or CONFIG_PATH
        if not os.path.exists(self.path):
            # If the config file doesn't exist, use default settings and save them
            self.settings = DEFAULT_SETTINGS.copy()
            self.save()
        else:
            try:
                with open(self.path, 'r') as f:
                    loaded_settings = yaml.safe_load(f)
            except (OSError, yaml.YAMLError) as e:
                logger.warning(f"Could not read settings from {self.path}: {e}; using defaults")
                loaded_settings = None
            # Use default settings if the file is empty or corrupted
            if not isinstance(loaded_settings, dict):
                loaded_settings = {}
            self.settings = {**DEFAULT_SETTINGS, **loaded_settings}

    def save(self):
        """
        Save the current settings to the YAML configuration file.

        A failed write is logged and otherwise ignored; the settings stay usable in memory.
        """
        try:
            with open(self.path, 'w') as f:
                yaml.safe_dump(self.settings, f, sort_keys=True)
        except OSError as e:
            logger.warning(f"Could not save settings to {self.path}: {e}")

    def get(self, key, default=None):
        """
        Retrieve a setting value by key.

        If the key is not found in the current settings, returns the provided default value,
        or the value from DEFAULT_SETTINGS if the default is not specified.

        Example:
            >>> settings = SettingsManager()
            >>> settings.get("order_policy")
            'freq'
            >>> settings.get("non_existent_key", "Fallback Value")
            'Fallback Value'
        """
        return self.settings.get(
            key,
            default if default is not None else DEFAULT_SETTINGS.get(key)
        )

    def all(self):
        """
        Return all current settings as a dictionary.
        """
        return self.settings
