from dataclasses import dataclass

import numpy as np

from community_gsp.src.errors import InvalidParameterError
from community_gsp.src.graph.graph import GraphSignal, check_signal_on_graph
from community_gsp.src.graph.shift_operator import ShiftOperator


@dataclass(frozen=True, eq=False)
class PolynomialFilter:
    """p(S) = sum_k h_k S^k, evaluated in the vertex domain."""
    coefficients: tuple
    operator: ShiftOperator

    def __post_init__(self):
        coefficients = tuple(float(h) for h in self.coefficients)
        if len(coefficients) == 0:
            raise InvalidParameterError("a polynomial filter needs at least h_0")
        if not np.all(np.isfinite(coefficients)):
            raise InvalidParameterError("polynomial coefficients must be finite")
        if len(coefficients) - 1 > self.operator.n - 1:
            raise InvalidParameterError("polynomial order {order} exceeds n - 1 = {limit}".format(
                order=len(coefficients) - 1, limit=self.operator.n - 1))
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def order(self):
        return len(self.coefficients) - 1


def apply_polynomial(pf, x):
    """Horner evaluation of p(S) x with K applications of the shift operator."""
    check_signal_on_graph(x, pf.operator.graph)
    values = x.values
    y = pf.coefficients[-1] * values
    for h in reversed(pf.coefficients[:-1]):
        y = pf.operator.matvec(y) + h * values
    return GraphSignal(y, pf.operator.graph)


def spectral_response(pf, eigenvalues):
    """p(lambda_i) for each eigenvalue, the equivalent spectral window."""
    return np.polynomial.polynomial.polyval(np.asarray(eigenvalues, dtype=float), pf.coefficients)
