"""finequip: finite-enumeration toolkit for equipments of profunctors.

Profunctor composition by quotients, companions and conjoints, closed homs,
weighted colimits and pointwise Kan extensions, double comma objects, bounded
free-(symmetric-)monoidal monads, and the lifting of weighted colimits to
colax monoidal structure, with every universal property checked exhaustively.
"""
from __future__ import annotations

__version__ = "0.1.0"
