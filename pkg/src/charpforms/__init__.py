"""Exact rewriting of decomposable differential forms over characteristic-p
function fields, with machine-checkable certificates, and the companion
degree-p polynomial form toolkit."""

from .fields import FieldCtx, FieldElement, Poly, UniPoly

__version__ = "0.1.0"

__all__ = ["FieldCtx", "FieldElement", "Poly", "UniPoly", "__version__"]
