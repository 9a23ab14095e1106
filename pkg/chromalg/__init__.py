"""
chromalg - chromatic symmetric functions in the star basis
"""

from chromalg.dnc_engine import StarExpansion, dnc_expand, dnc_expand_memo
from chromalg.graph_core import Graph, parse_graph
from chromalg.symfunc import Basis, SymFunc, convert

__version__ = "0.1.0"
