"""recmon: monitor synthesis and verification for recHML."""

__version__ = "0.1.0"
