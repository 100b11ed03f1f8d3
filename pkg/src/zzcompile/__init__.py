"""Compile graph-shaped ZZ coupling targets into global MS layers and bit flips.

A target graph on n qubits is realised by k sign rows and k weights; the
package builds such row sets (constructions), bounds and computes the minimum
k (bounds, oracle, milp) and turns the rows into pulse programs (circuits).
"""

__version__ = "0.1.0"

from .bounds import BoundReport, spectral_lower_bound
from .decomposition import Decomposition, VerifyReport, simplify, verify
from .graph import Graph

__all__ = ["BoundReport", "Decomposition", "Graph", "VerifyReport", "simplify", "spectral_lower_bound", "verify", "__version__"]
