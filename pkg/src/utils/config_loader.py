"""
Utility module for loading and validating configuration.
"""
import os
from typing import Dict

import yaml
from loguru import logger

from ..models.structure import CompositionOperator


class ConfigLoader:
    """
    Class for loading and validating configuration files.

    Attributes:
        config_dir (str): Directory containing configuration files
    """

    def __init__(self, config_dir: str):
        self.config_dir = config_dir

    def load_config(self, config_name: str) -> Dict:
        """
        Load a named configuration file from the configuration directory.

        Args:
            config_name: Name of the configuration file (without extension)

        Returns:
            Configuration dictionary

        Raises:
            FileNotFoundError: If the configuration file does not exist
            ValueError: If the configuration file is invalid
        """
        return self.load_file(os.path.join(self.config_dir, f"{config_name}.yaml"))

    def load_file(self, path: str) -> Dict:
        """
        Load a YAML or JSON file.

        Raises:
            FileNotFoundError: If the file does not exist
            ValueError: If the file cannot be parsed or is not a mapping
        """
        if not os.path.exists(path):
            raise FileNotFoundError(f"Configuration file not found: {path}")

        try:
            with open(path, 'r', encoding='utf-8') as file:
                config = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise ValueError(f"Error loading configuration file {path}: {e}")

        if config is None:
            return {}
        if not isinstance(config, dict):
            raise ValueError(f"Configuration file {path} must contain a mapping")
        return config

    def validate_prover_config(self, config: Dict) -> bool:
        """
        Validate the prover configuration.

        Args:
            config: Prover configuration dictionary

        Returns:
            True if configuration is valid, False otherwise
        """
        required_sections = ['logging', 'search', 'oracle']
        for section in required_sections:
            if section not in config:
                logger.error(f"Missing required section in prover config: {section}")
                return False

        search = config['search'] or {}
        oracle = config['oracle'] or {}
        for section, values in (('search', search), ('oracle', oracle)):
            if not isinstance(values, dict):
                logger.error(f"{section} section must be a mapping")
                return False
        if 'max_nodes' not in search:
            logger.error("Missing required field in search config: max_nodes")
            return False

        limits = [('search', 'max_nodes', search['max_nodes'])]
        if search.get('max_millis') is not None:
            limits.append(('search', 'max_millis', search['max_millis']))
        for field in ['max_function_space', 'max_models', 'max_label_assignments']:
            if field in oracle:
                limits.append(('oracle', field, oracle[field]))
        for section, field, value in limits:
            try:
                number = int(value)
            except (TypeError, ValueError):
                logger.error(f"{section}.{field} must be an integer, got {value!r}")
                return False
            if number <= 0:
                logger.error(f"{section}.{field} must be positive")
                return False

        return True

    def validate_structure_config(self, config: Dict) -> bool:
        """
        Validate the shape of an observation structure file.
        Semantic conditions (partition, composition closure) are checked by the structure itself.

        Args:
            config: Structure dictionary

        Returns:
            True if the required keys are present and well typed, False otherwise
        """
        for field in ['agents', 'observations', 'results', 'compose']:
            if field not in config:
                logger.error(f"Missing required field in structure config: {field}")
                return False

        if not isinstance(config['agents'], list) or not config['agents']:
            logger.error("agents must be a nonempty list")
            return False
        if not isinstance(config['observations'], dict):
            logger.error("observations must map each agent to a list of observations")
            return False
        if not isinstance(config['results'], list) or not config['results']:
            logger.error("results must be a nonempty list")
            return False

        compose = config['compose']
        if compose not in [op.value for op in CompositionOperator]:
            logger.error(f"Unknown composition operator: {compose}")
            return False

        return True
