"""Exact finite-scale toolkit for the ordered Kantorovich monad.

Finite ordered metric spaces, finitely supported measures, Wasserstein
distance with dual certificates, the stochastic order (three deciders), the
L-distance, splitting and density constructions, and cone-ordered
barycentric algebras.
"""
from .measure import DiscreteMeasure, dirac, empirical, expectation, marginals, product, pushforward
from .ometric import FiniteOrderedMetricSpace, UniformFiberMap, power, tensor, validate
from .lawvere import LawvereSpace, l_distance, symmetrize
from .transport import assignment_distance, min_cost_coupling, wasserstein
from .storder import order_by_coupling, order_by_duality, order_by_upper_sets

__all__ = [
    "DiscreteMeasure",
    "FiniteOrderedMetricSpace",
    "LawvereSpace",
    "UniformFiberMap",
    "assignment_distance",
    "dirac",
    "empirical",
    "expectation",
    "l_distance",
    "marginals",
    "min_cost_coupling",
    "order_by_coupling",
    "order_by_duality",
    "order_by_upper_sets",
    "power",
    "product",
    "pushforward",
    "symmetrize",
    "tensor",
    "validate",
    "wasserstein",
]
