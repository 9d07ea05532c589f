"""Small canonical graphs used by the test suite and the ``fixture`` command."""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from config import LOGGING_LEVEL
from community_gsp.src.community.partition import Partition
from community_gsp.src.errors import ConfigurationError, DataError
from community_gsp.src.graph.graph import Graph
from community_gsp.src.graph.shift_operator import OperatorKind, ShiftOperator
from community_gsp.src.spectral.spectral_basis import decompose
from utils.logger.pylogger import get_logger

logger = get_logger("fixtures", LOGGING_LEVEL)


@dataclass(frozen=True, eq=False)
class GraphFixture:
    name: str
    graph: Graph
    partition: Partition
    description: str


def _fixture(name, edges, node_ids, communities, description):
    graph = Graph.from_edges(edges, node_ids=node_ids)
    order = list(dict.fromkeys(communities[node_id] for node_id in node_ids))
    partition = Partition.from_assignments(graph, communities, order=order)
    return GraphFixture(name=name, graph=graph, partition=partition, description=description)


def verify_toy_fixture(fixture):
    """Raises DataError unless the graph has 10 nodes, is connected, contains the K5 on 1..5 and the
    leading modularity eigenvector splits {1..5} from {6..10} by sign."""
    graph = fixture.graph
    if graph.n != 10 or graph.component_count() != 1:
        raise DataError("toy fixture must be a connected graph on 10 nodes")
    clique = [graph.index_of(str(node)) for node in range(1, 6)]
    dense = graph.to_dense_adjacency()
    if not all(dense[i, j] > 0 for i, j in combinations(clique, 2)):
        raise DataError("nodes 1..5 of the toy fixture must form a clique")
    leading = decompose(ShiftOperator(OperatorKind.MODULARITY, graph)).eigenvectors[:, 0]
    inside = np.zeros(graph.n, dtype=bool)
    inside[clique] = True
    signs = np.sign(leading)
    if not (np.all(signs[inside] == signs[clique[0]]) and np.all(signs[~inside] == -signs[clique[0]])):
        raise DataError("leading modularity eigenvector does not separate the clique of the toy fixture")


def toy10():
    """
    K5 on nodes 1..5 and a path 6-7-8-9-10 hanging off it through the edges
    1-6 and 2-7.
    """
    node_ids = [str(node) for node in range(1, 11)]
    edges = [(str(i), str(j)) for i, j in combinations(range(1, 6), 2)]
    edges += [("6", "7"), ("7", "8"), ("8", "9"), ("9", "10"), ("1", "6"), ("2", "7")]
    communities = {node_id: "clique" if int(node_id) <= 5 else "periphery" for node_id in node_ids}
    fixture = _fixture("toy10", edges, node_ids, communities, "5-clique with a sparse 5-node periphery")
    verify_toy_fixture(fixture)
    return fixture


def k3():
    node_ids = ["1", "2", "3"]
    return _fixture("k3", [("1", "2"), ("2", "3"), ("1", "3")], node_ids, {node_id: "all" for node_id in node_ids},
                    "triangle")


def barbell6():
    node_ids = [str(node) for node in range(1, 7)]
    edges = [("1", "2"), ("2", "3"), ("1", "3"), ("4", "5"), ("5", "6"), ("4", "6"), ("3", "4")]
    communities = {node_id: "left" if int(node_id) <= 3 else "right" for node_id in node_ids}
    return _fixture("barbell6", edges, node_ids, communities, "two triangles joined by the bridge 3-4")


def planted_hub():
    """
    Community A is the ring a1..a5 plus the hub h, community B the K4 b1..b4.
    Every edge of h goes to B; a1-b1 keeps the graph connected.
    """
    ring = ["a{i}".format(i=i) for i in range(1, 6)]
    clique = ["b{i}".format(i=i) for i in range(1, 5)]
    node_ids = ring + ["h"] + clique
    edges = [(ring[i], ring[(i + 1) % 5]) for i in range(5)]
    edges += list(combinations(clique, 2))
    edges += [("h", b) for b in clique]
    edges += [("a1", "b1")]
    communities = {node_id: "B" if node_id.startswith("b") else "A" for node_id in node_ids}
    return _fixture("planted_hub", edges, node_ids, communities, "hub of community A wired only into community B")


FIXTURES = {
    "toy10": toy10,
    "k3": k3,
    "barbell6": barbell6,
    "planted_hub": planted_hub,
}


def make_fixture(name):
    try:
        builder = FIXTURES[name]
    except KeyError:
        raise ConfigurationError("unknown fixture {name}, expected one of {names}".format(
            name=name, names=", ".join(sorted(FIXTURES))))
    fixture = builder()
    logger.info("built fixture {name}: {graph}".format(name=name, graph=fixture.graph))
    return fixture
