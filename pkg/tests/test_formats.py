from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metasolve.errors import LowerTriangleEntry, ParseError, UnknownNode
from metasolve.formats import (
    KnapsackInstance,
    KnapsackItem,
    Node,
    Qubo,
    RouteSolution,
    TspInstance,
    VrpInstance,
    distance,
    parse_knapsack,
    parse_qubo,
    parse_routes,
    parse_tsp,
    parse_vrp,
    serialize_knapsack,
    serialize_qubo,
    serialize_routes,
    serialize_tsp,
    serialize_vrp,
)
from metasolve.formats.qubo import energy

TSP_TEXT = """NAME: tri
TYPE: TSP
DIMENSION: 3
EDGE_WEIGHT_TYPE: EUC_2D
NODE_COORD_SECTION
1 0.0 0.0
2 3.0 0.0
3 3.0 4.0
EOF
"""

VRP_TEXT = """NAME: toy
TYPE: CVRP
DIMENSION: 4
EDGE_WEIGHT_TYPE: EUC_2D
CAPACITY: 2
VEHICLES: 2
NODE_COORD_SECTION
1 0.0 0.0
2 1.0 0.0
3 2.0 0.0
4 3.0 0.0
DEMAND_SECTION
1 0
2 1
3 1
4 1
DEPOT_SECTION
1
-1
EOF
"""


def _random_tsp(rng: random.Random, n: int) -> TspInstance:
    nodes = tuple(Node(i + 1, rng.uniform(-50, 50), rng.uniform(-50, 50)) for i in range(n))
    return TspInstance(name=f"rand{n}", nodes=nodes)


def _random_vrp(rng: random.Random, n_customers: int) -> VrpInstance:
    nodes = tuple(
        Node(i + 1, rng.uniform(0, 100), rng.uniform(0, 100)) for i in range(n_customers + 1)
    )
    demand = {1: 0}
    for i in range(2, n_customers + 2):
        demand[i] = rng.randint(1, 3)
    capacity = max(demand.values()) + rng.randint(2, 5)
    total = sum(demand.values())
    max_vehicles = math.ceil(total / capacity) + 1
    return VrpInstance(
        name=f"vrp{n_customers}",
        nodes=nodes,
        depot=1,
        capacity=capacity,
        demand=demand,
        max_vehicles=max_vehicles,
    )


class TestDistance:
    def test_345_triangle(self):
        instance = parse_tsp(TSP_TEXT)
        assert distance(instance, 2, 3) == 5.0 - 1.0  # vertical leg
        assert distance(instance, 1, 3) == 5.0

    def test_symmetry_and_identity(self):
        rng = random.Random(7)
        instance = _random_tsp(rng, 12)
        ids = instance.node_ids
        for a in ids:
            assert distance(instance, a, a) == 0.0
            for b in ids:
                assert distance(instance, a, b) == distance(instance, b, a)

    def test_unknown_node(self):
        instance = parse_tsp(TSP_TEXT)
        with pytest.raises(UnknownNode):
            distance(instance, 1, 99)


class TestTspFormat:
    def test_parse_fields(self):
        instance = parse_tsp(TSP_TEXT)
        assert instance.name == "tri"
        assert instance.node_ids == (1, 2, 3)
        assert instance.node(3).y == 4.0

    def test_round_trip(self):
        instance = parse_tsp(TSP_TEXT)
        assert parse_tsp(serialize_tsp(instance)) == instance

    def test_missing_section(self):
        bad = TSP_TEXT.replace("NODE_COORD_SECTION\n", "")
        with pytest.raises(ParseError):
            parse_tsp(bad)

    def test_dimension_mismatch(self):
        bad = TSP_TEXT.replace("DIMENSION: 3", "DIMENSION: 4")
        with pytest.raises(ParseError):
            parse_tsp(bad)

    def test_wrong_type(self):
        with pytest.raises(ParseError):
            parse_tsp(VRP_TEXT)

    def test_duplicate_node_id(self):
        bad = TSP_TEXT.replace("2 3.0 0.0", "1 3.0 0.0")
        with pytest.raises(ParseError) as exc:
            parse_tsp(bad)
        assert exc.value.line == 7

    def test_random_round_trips(self):
        rng = random.Random(11)
        for n in (2, 3, 8, 20):
            instance = _random_tsp(rng, n)
            assert parse_tsp(serialize_tsp(instance)) == instance


class TestVrpFormat:
    def test_parse_fields(self):
        instance = parse_vrp(VRP_TEXT)
        assert instance.depot == 1
        assert instance.capacity == 2
        assert instance.max_vehicles == 2
        assert instance.customers == (2, 3, 4)
        assert instance.demand[2] == 1

    def test_round_trip(self):
        instance = parse_vrp(VRP_TEXT)
        assert parse_vrp(serialize_vrp(instance)) == instance

    def test_vehicles_header_optional(self):
        text = VRP_TEXT.replace("VEHICLES: 2\n", "")
        assert parse_vrp(text).max_vehicles is None

    def test_demand_exceeding_capacity(self):
        bad = VRP_TEXT.replace("DEMAND_SECTION\n1 0\n2 1", "DEMAND_SECTION\n1 0\n2 9")
        with pytest.raises(ParseError) as exc:
            parse_vrp(bad)
        assert "exceeds capacity" in exc.value.reason

    def test_fleet_capacity_check(self):
        bad = VRP_TEXT.replace("VEHICLES: 2", "VEHICLES: 1")
        with pytest.raises(ParseError):
            parse_vrp(bad)

    def test_depot_demand_must_be_zero(self):
        bad = VRP_TEXT.replace("1 0\n2 1", "1 1\n2 1")
        with pytest.raises(ParseError):
            parse_vrp(bad)

    def test_random_round_trips(self):
        rng = random.Random(13)
        for n in (1, 4, 9):
            instance = _random_vrp(rng, n)
            assert parse_vrp(serialize_vrp(instance)) == instance


class TestQuboFormat:
    def test_two_variable_example(self):
        qubo = parse_qubo("n 2\nc 0.0\n0 0 -1.0\n1 1 -1.0\n")
        assert energy(qubo, (1, 1)) == -2.0
        assert energy(qubo, (0, 0)) == 0.0

    def test_offset_only(self):
        qubo = parse_qubo("n 3\nc 5.0\n")
        assert qubo.coefficients == {}
        for x in ((0, 0, 0), (1, 0, 1), (1, 1, 1)):
            assert energy(qubo, x) == 5.0

    def test_lower_triangle_rejected(self):
        with pytest.raises(LowerTriangleEntry):
            parse_qubo("n 2\n1 0 3.0\n")

    def test_comments_and_blanks(self):
        qubo = parse_qubo("# header\nn 2\n\n0 1 2.5 # coupling\n")
        assert qubo.coefficients == {(0, 1): 2.5}

    def test_round_trip_drops_zeros(self):
        qubo = Qubo(n=3, coefficients={(0, 1): 1.5, (2, 2): -0.25}, offset=2.0)
        text = serialize_qubo(qubo)
        assert parse_qubo(text) == qubo
        assert "0 0" not in text

    def test_out_of_range_index(self):
        with pytest.raises(ParseError):
            parse_qubo("n 2\n0 5 1.0\n")


class TestKnapsackFormat:
    def test_round_trip(self):
        instance = KnapsackInstance(
            items=(KnapsackItem(1, 2, 3.0), KnapsackItem(2, 3, 4.0), KnapsackItem(3, 4, 5.0)),
            capacity=5,
        )
        assert parse_knapsack(serialize_knapsack(instance)) == instance

    def test_capacity_required(self):
        with pytest.raises(ParseError):
            parse_knapsack("ITEM 1 2 3.0\n")


class TestRouteSolutionFormat:
    def test_round_trip(self):
        solution = RouteSolution(routes=((2, 3), (4, 5)), total_length=17.25)
        assert parse_routes(serialize_routes(solution)) == solution

    def test_single_tour_line(self):
        solution = RouteSolution(routes=((1, 2, 3, 4),), total_length=4.0)
        assert parse_routes(serialize_routes(solution)) == solution

    def test_missing_length(self):
        with pytest.raises(ParseError):
            parse_routes("2 3\n4 5\n")


# --- property tests ---------------------------------------------------------

finite_coord = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)


@st.composite
def tsp_instances(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    xs = draw(st.lists(finite_coord, min_size=n, max_size=n))
    ys = draw(st.lists(finite_coord, min_size=n, max_size=n))
    ids = draw(st.lists(st.integers(min_value=1, max_value=10**6), min_size=n, max_size=n, unique=True))
    nodes = tuple(Node(i, x, y) for i, x, y in zip(ids, xs, ys))
    return TspInstance(name=draw(st.text(alphabet=st.characters(categories=["L", "N"]), max_size=8)), nodes=nodes)


@given(tsp_instances())
@settings(max_examples=60, deadline=None)
def test_tsp_round_trip_property(instance):
    assert parse_tsp(serialize_tsp(instance)) == instance


@given(st.text(max_size=400))
@settings(max_examples=300, deadline=None)
def test_tsp_parser_never_panics(text):
    try:
        parse_tsp(text)
    except ParseError:
        pass


@given(st.text(max_size=400))
@settings(max_examples=300, deadline=None)
def test_vrp_parser_never_panics(text):
    try:
        parse_vrp(text)
    except ParseError:
        pass


@given(st.text(max_size=200))
@settings(max_examples=300, deadline=None)
def test_qubo_parser_never_panics(text):
    try:
        parse_qubo(text)
    except ParseError:
        pass


@st.composite
def qubos(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    entries = draw(
        st.dictionaries(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).map(
                lambda ij: (min(ij), max(ij))
            ),
            st.floats(min_value=-100, max_value=100, allow_nan=False).filter(lambda v: v != 0.0),
            max_size=10,
        )
    )
    offset = draw(st.floats(min_value=-100, max_value=100, allow_nan=False))
    return Qubo(n=n, coefficients=entries, offset=offset)


@given(qubos())
@settings(max_examples=80, deadline=None)
def test_qubo_round_trip_property(qubo):
    assert parse_qubo(serialize_qubo(qubo)) == qubo
