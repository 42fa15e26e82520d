"""Command-line front end and map-definition files."""
from .main import main
from .mapfile import MapDefinition, definition_from_dict, load_mapfile
from .pipeline import Report, run_pipeline

__all__ = ["MapDefinition", "Report", "definition_from_dict", "load_mapfile", "main", "run_pipeline"]
