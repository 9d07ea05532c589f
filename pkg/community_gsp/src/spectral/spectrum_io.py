import struct

import numpy as np
import pandas as pd

from config import LOGGING_LEVEL
from community_gsp.src.errors import DataError
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator
from community_gsp.src.spectral.spectral_basis import ASCENDING, DESCENDING, SpectralBasis, decompose, \
    derive_shifted_basis
from utils.logger.pylogger import get_logger

logger = get_logger("spectrum_io", LOGGING_LEVEL)

MAGIC = b"CGSPEIG1"
HEADER = struct.Struct("<8sQBB6x")
KIND_CODES = {
    OperatorKind.ADJACENCY: 0,
    OperatorKind.LAPLACIAN: 1,
    OperatorKind.MODULARITY: 2,
    OperatorKind.MODULARITY_PLUS: 3,
    OperatorKind.MODULARITY_MINUS: 4,
}
ORDERING_CODES = {ASCENDING: 0, DESCENDING: 1}


def spectrum_frame(basis):
    return pd.DataFrame({"index": np.arange(1, basis.n + 1), "eigenvalue": basis.eigenvalues})


def basis_to_bytes(basis):
    """Header (magic, n, operator kind, ordering), eigenvalues, then the eigenvectors column-major."""
    header = HEADER.pack(MAGIC, basis.n, KIND_CODES[basis.operator_kind], ORDERING_CODES[basis.ordering])
    return (header + np.asarray(basis.eigenvalues, dtype="<f8").tobytes()
            + np.asarray(basis.eigenvectors, dtype="<f8").tobytes(order="F"))


def basis_from_bytes(payload, graph):
    if len(payload) < HEADER.size:
        raise DataError("spectrum payload is truncated")
    magic, n, kind_code, ordering_code = HEADER.unpack_from(payload)
    if magic != MAGIC:
        raise DataError("not a spectrum file (bad magic)")
    if n != graph.n:
        raise DataError("spectrum has n = {n} but graph has {graph_n} nodes".format(n=n, graph_n=graph.n))
    expected = HEADER.size + 8 * (n + n * n)
    if len(payload) != expected:
        raise DataError("spectrum payload has {size} bytes, expected {expected}".format(size=len(payload),
                                                                                       expected=expected))
    kinds = {code: kind for kind, code in KIND_CODES.items()}
    orderings = {code: ordering for ordering, code in ORDERING_CODES.items()}
    eigenvalues = np.frombuffer(payload, dtype="<f8", count=n, offset=HEADER.size).astype(float)
    eigenvectors = np.frombuffer(payload, dtype="<f8", count=n * n, offset=HEADER.size + 8 * n)
    eigenvectors = np.ascontiguousarray(eigenvectors.reshape((n, n), order="F"), dtype=float)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return SpectralBasis(eigenvectors=eigenvectors, eigenvalues=eigenvalues, operator_kind=kinds[kind_code],
                         ordering=orderings[ordering_code], graph=graph)


class SpectrumCache(object):
    """Eigendecomposition cache keyed by (graph hash, operator kind)."""

    FOLDER = "spectra"

    def __init__(self, data_store):
        self.data_store = data_store

    @classmethod
    def cache_key(cls, graph, kind):
        return "{graph_hash}_{kind}.eig".format(graph_hash=graph.hash, kind=OperatorKind(kind).value)

    def get_or_decompose(self, op):
        key = self.cache_key(op.graph, op.kind)
        if self.data_store.exists(self.FOLDER, key):
            basis = basis_from_bytes(self.data_store.read_bytes(self.FOLDER, key), op.graph)
            if basis.operator_kind is op.kind:
                logger.info("spectrum cache hit for {key}".format(key=key))
                return basis
        basis = decompose(op)
        self.data_store.write_bytes(self.FOLDER, key, basis_to_bytes(basis))
        logger.info("spectrum cached as {key}".format(key=key))
        return basis

    def get_basis(self, graph, kind):
        """Basis of any kind; Q+ and Q- are derived from the cached modularity basis."""
        kind = OperatorKind(kind)
        if kind.is_shifted:
            return derive_shifted_basis(self.get_or_decompose(ShiftOperator(OperatorKind.MODULARITY, graph)), kind)
        return self.get_or_decompose(ShiftOperator(kind, graph))
