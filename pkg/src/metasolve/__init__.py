"""Hybrid routing toolbox: decomposition-based meta-solving for VRP/TSP with
classical solvers, QUBO transformation and simulated quantum backends."""

__version__ = "0.1.0"
