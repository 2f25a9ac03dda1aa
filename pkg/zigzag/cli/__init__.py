"""Command-line front end (python -m zigzag.cli)."""
from .app import build_parser, main
from .config import EigenSpec, ExperimentConfig, SamplerSpec, load_config

__all__ = ["EigenSpec", "ExperimentConfig", "SamplerSpec", "build_parser", "load_config", "main"]
