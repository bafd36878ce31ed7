"""Hidden-variable qubit models, samplers and numerical verification suites."""

__version__ = "0.1.0"
