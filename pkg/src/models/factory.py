"""
Factory module for creating observation structures from configuration files.
"""
from typing import Dict

import yaml
from loguru import logger

from .errors import StructureError
from .structure import ObservationStructure


class StructureFactory:
    """
    Factory class for creating an observation structure from a JSON or YAML file.

    Attributes:
        config_path (str): Path to the structure file
        config (Dict): Parsed structure dictionary
    """

    def __init__(self, config_path: str):
        """
        Initialize the factory with configuration.

        Args:
            config_path: Path to the structure file

        Raises:
            FileNotFoundError: If the file does not exist
            StructureError: If the file is not a structure mapping
        """
        self.config_path = config_path
        self.config = self._load_config(config_path)

    def _load_config(self, config_path: str) -> Dict:
        """JSON is a subset of YAML, so both formats go through ``yaml.safe_load``."""
        with open(config_path, 'r', encoding='utf-8') as file:
            try:
                data = yaml.safe_load(file)
            except yaml.YAMLError as e:
                raise StructureError(f"Cannot parse structure file {config_path}: {e}", [str(e)])
        if not isinstance(data, dict):
            raise StructureError(f"Structure file {config_path} must contain an object", ["not an object"])
        return data

    def create_structure(self) -> ObservationStructure:
        """
        Create and validate the structure.

        Returns:
            ObservationStructure

        Raises:
            StructureError: Carrying every violated condition
        """
        try:
            structure = ObservationStructure.from_dict(self.config)
        except StructureError as e:
            logger.error(f"Invalid structure in {self.config_path}: {e}")
            raise
        logger.info(
            f"Loaded structure {self.config_path}: {len(structure.agents)} agents, "
            f"{len(structure.joint_observations(structure.full_group))} full observations, "
            f"{len(structure.results)} results, compose={structure.compose.value}"
        )
        return structure
