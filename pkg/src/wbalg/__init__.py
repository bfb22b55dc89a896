"""Exact and high-precision computations for walled Brauer algebras."""

from .center import MultiPoly, center_dimension, central_element, q_cancellation_check, reproduce_counterexample, verify_central
from .diagrams import DOWN, UP, OrientedDiagram, compose, enumerate_diagrams, from_text, generator, identity
from .params import AssumptionViolation, Params
from .scalars import BigFloat, DeltaPoly, Scalar, rational
from .walled_brauer import AlgebraElement, BrauerAlgebra, verify_presentation

__all__ = [
    "UP",
    "DOWN",
    "OrientedDiagram",
    "compose",
    "enumerate_diagrams",
    "from_text",
    "generator",
    "identity",
    "Params",
    "AssumptionViolation",
    "BigFloat",
    "DeltaPoly",
    "Scalar",
    "rational",
    "AlgebraElement",
    "BrauerAlgebra",
    "verify_presentation",
    "MultiPoly",
    "q_cancellation_check",
    "central_element",
    "verify_central",
    "reproduce_counterexample",
    "center_dimension",
]
