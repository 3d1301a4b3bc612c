import numpy as np
import pytest

from vrpbench import (
    Instance,
    PenaltyTable,
    centroid_vertex,
    extract_network,
    generate_grid_network,
    insert_point_on_edge,
    synthetic_city,
)


@pytest.fixture(scope="session")
def city_streets():
    return synthetic_city()


@pytest.fixture(scope="session")
def city_network(city_streets):
    net = extract_network(city_streets)
    net.set_depot(centroid_vertex(net))
    return net


@pytest.fixture(scope="session")
def default_table():
    return PenaltyTable()


def grid_instance(rows=4, cols=4, block=100.0, n_customers=4, k=2, **kwargs):
    """Grid network with n delivery vertices dropped on its first edges.

    Customer i sits 1/3 of the way along edge i, so positions are exact
    and easy to reason about in expected values.
    """
    net = generate_grid_network(rows, cols, block)
    net.set_depot(0)
    customers = []
    for eid in range(n_customers):
        _, vid = insert_point_on_edge(net, eid, net.edges[eid].weight / 3.0)
        customers.append((vid, 1.0))
    return Instance(network=net, depot=0, customers=customers, fleet_size=k, **kwargs)


def line_instance(weights, k=1, **kwargs):
    """Path graph depot=0 -1 - 2 - ... with the given edge weights.

    Distances along a path are trivial to compute by hand, which keeps
    expected route lengths auditable.
    """
    from vrpbench import StreetNetwork

    net = StreetNetwork()
    for i in range(len(weights) + 1):
        net.add_vertex(float(i), 0.0)
    for i, w in enumerate(weights):
        net.add_edge(i, i + 1, float(w), 0)
    net.set_depot(0)
    customers = [(i, 1.0) for i in range(1, len(weights) + 1)]
    return Instance(network=net, depot=0, customers=customers, fleet_size=k, **kwargs)


def rng_of(seed):
    return np.random.Generator(np.random.PCG64(seed))
