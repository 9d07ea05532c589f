import numpy as np

from community_gsp.src.errors import InvalidPartitionError


class Partition(object):
    """Labeling of nodes by contiguous community ids 0..C-1, every community non-empty."""

    def __init__(self, labels, names=None):
        labels = np.array(labels).ravel()
        if len(labels) == 0:
            raise InvalidPartitionError("partition must label at least one node")
        if not np.issubdtype(labels.dtype, np.integer):
            if not np.all(np.mod(labels, 1) == 0):
                raise InvalidPartitionError("community ids must be integers")
            labels = labels.astype(int)
        community_count = int(labels.max()) + 1
        if labels.min() < 0 or len(np.unique(labels)) != community_count:
            raise InvalidPartitionError("community ids must be contiguous 0..C-1 with no empty community")
        if names is None:
            names = [str(c) for c in range(community_count)]
        names = [str(name) for name in names]
        if len(names) != community_count or len(set(names)) != community_count:
            raise InvalidPartitionError("expected {count} distinct community names".format(count=community_count))
        labels.setflags(write=False)
        self._labels = labels
        self._names = tuple(names)

    @classmethod
    def from_assignments(cls, graph, assignments, order=None):
        """
        Partition of ``graph`` from a mapping node_id -> community name.

        Community ids follow ``order`` (names absent from the mapping are skipped),
        otherwise the sorted community names.
        """
        missing = [node_id for node_id in graph.node_ids if node_id not in assignments]
        if missing:
            raise InvalidPartitionError("{count} nodes have no community, e.g. {node_id}".format(
                count=len(missing), node_id=missing[0]))
        present = set(str(assignments[node_id]) for node_id in graph.node_ids)
        if order is None:
            names = sorted(present)
        else:
            unknown = present - set(order)
            if unknown:
                raise InvalidPartitionError("communities {unknown} are not in the given order".format(
                    unknown=sorted(unknown)))
            names = [name for name in order if name in present]
        ids = {name: c for c, name in enumerate(names)}
        return cls([ids[str(assignments[node_id])] for node_id in graph.node_ids], names=names)

    @classmethod
    def from_sign_vector(cls, s):
        s = np.asarray(s, dtype=float).ravel()
        if not np.all(np.abs(s) == 1.0):
            raise InvalidPartitionError("sign vector entries must be +1 or -1")
        labels = (s < 0).astype(int)
        if labels.min() == labels.max():
            return cls(np.zeros(len(s), dtype=int), names=["+1"])
        return cls(labels, names=["+1", "-1"])

    @property
    def labels(self):
        return self._labels

    @property
    def names(self):
        return self._names

    @property
    def community_count(self):
        return len(self._names)

    @property
    def n(self):
        return len(self._labels)

    def members(self, community_id):
        return np.flatnonzero(self._labels == community_id)

    def name_of(self, index):
        return self._names[self._labels[index]]

    def relabeled(self, permutation):
        """Same partition with community c renamed to permutation[c]."""
        permutation = np.asarray(permutation, dtype=int)
        names = [None] * self.community_count
        for c, new_c in enumerate(permutation):
            names[new_c] = self._names[c]
        return Partition(permutation[self._labels], names=names)

    def check_covers(self, graph):
        if self.n != graph.n:
            raise InvalidPartitionError("partition labels {count} nodes but graph has {n}".format(count=self.n,
                                                                                               n=graph.n))
