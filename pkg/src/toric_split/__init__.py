"""Toric ideals of graphs: Gröbner bases, Betti numbers and splittings."""
from .binomials import Binomial, MonomialOrder, ReducedGB, buchberger, ideal_equal, ideal_membership, saturate
from .exactlin import IntMatrix, hermite_normal_form, kernel_basis, smith_normal_form
from .graphcore import Graph, GlueSpec, cycle_graph, glue, path_graph
from .kernels import BACKEND as KERNEL_BACKEND
from .resolve import BettiTable, betti_graded, betti_multigraded, hilbert_data
from .toricgen import ToricIdeal, toric_ideal_of_graph, toric_ideal_of_matrix

__version__ = "0.1.0"
