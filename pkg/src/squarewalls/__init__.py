"""Random groups in the square model: sampling, complexes, walls, fulfillability."""

__version__ = "0.1.0"
