"""Certified spectral radii of graphs and checks of spectral-gap bounds.

The main entry points::

    from spectral_lab import families, spectral, bounds

    g = families.section4_family(3)
    est = spectral.principal_pair(g)          # [lambda1_lo, lambda1_hi] + eigenvector
    report = bounds.verify_main_theorem(g)    # Delta - lambda1 > 1/(nD), certified
"""

from . import bounds, families, graph, harness, spectral
from .errors import SpectralLabError
from .families import FamilySpec, parse_family_spec, parse_family_specs
from .graph import Graph, build_graph, read_graph, write_graph
from .spectral import SpectralEstimate, dense_spectrum_oracle, lambda2, principal_pair

__all__ = [
    "Graph", "FamilySpec", "SpectralEstimate", "SpectralLabError",
    "bounds", "families", "graph", "harness", "spectral",
    "build_graph", "read_graph", "write_graph", "parse_family_spec", "parse_family_specs",
    "principal_pair", "dense_spectrum_oracle", "lambda2",
]
__version__ = "0.1.0"
