"""Squeezed coherent states of the Morse oscillator."""
__version__ = "0.1.0"
