"""Two-variable link polynomials from type-I quantum superalgebras."""

__version__ = "0.1.0"
