"""Design and simulation of 2D nonlinear photonic crystal photon-pair sources."""
__version__ = "0.1.0"
