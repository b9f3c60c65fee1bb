"""Normal o-graphs: circuits, moves, cochains and derivations."""

from .core import (
    Edge, Endpoint, Mapping, OGraph, OGraphError, ParseError, canonicalize, involution, isomorphic, parse,
    serialize, validate,
)

__version__ = "0.1.0"
