"""Polynomial Lie algebras of vector fields tied to hyperelliptic sigma functions."""

from .curvegeom import (discriminant, divisibility_tangency, lambda_fields,
                        sample_singular_tangency)
from .freekdv import embed_to_x, free_derive, free_integrate, kdv_phi, kdv_step
from .liegen import FieldSet, StructureTable, build_fieldset, structure_table
from .pmap import PMapResult, eliminate_pmap

__all__ = [
    "FieldSet", "PMapResult", "StructureTable", "build_fieldset", "discriminant",
    "divisibility_tangency", "eliminate_pmap", "embed_to_x", "free_derive", "free_integrate",
    "kdv_phi", "kdv_step", "lambda_fields", "sample_singular_tangency", "structure_table",
]
