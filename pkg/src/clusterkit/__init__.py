"""clusterkit: exact-arithmetic toolkit for rooted cluster algebras.

Library layers:

- ``laurent``  -- exact multivariate Laurent polynomials over Z
- ``seed``     -- seeds, mutation, mutation-class enumeration, canonical forms
- ``quiver``   -- ice valued quivers and the matrix bijection
- ``morphism`` -- rooted cluster morphism checking, image seeds, ideal verdicts
- ``pairs``    -- complete pairs / cotorsion-pair classification
- ``cli``      -- command-line front end (``clusterkit``)
- ``server``   -- embedded HTTP/JSON service for the browser explorer
"""

from .errors import (
    ClusterKitError,
    MissingImage,
    NameClash,
    NonUnitNegativePower,
    NotAdmissible,
    NotComponentEmbedding,
    NotContained,
    NotDivisible,
    NotExchangeable,
    NotFrozen,
    NotIdeal,
    NotInjective,
    NotSkewSymmetrizable,
    ParseError,
    SubsetBudgetExceeded,
    ZeroIntoNegativePower,
)
from .laurent import LaurentPoly, Ring, VarId, div_exact, parse, substitute, transport

__all__ = [
    "ClusterKitError",
    "MissingImage",
    "NameClash",
    "NonUnitNegativePower",
    "NotAdmissible",
    "NotComponentEmbedding",
    "NotContained",
    "NotDivisible",
    "NotExchangeable",
    "NotFrozen",
    "NotIdeal",
    "NotInjective",
    "NotSkewSymmetrizable",
    "ParseError",
    "SubsetBudgetExceeded",
    "ZeroIntoNegativePower",
    "LaurentPoly",
    "Ring",
    "VarId",
    "div_exact",
    "parse",
    "substitute",
    "transport",
]

__version__ = "0.1.0"
