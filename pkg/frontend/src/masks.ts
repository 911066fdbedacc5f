/** Input masks: one per registered problem type, each with a ready-made
 * example so a first journey is one click away. */

export interface ProblemMask {
  typeId: string;
  label: string;
  description: string;
  example: string;
}

const VRP_EXAMPLE = `NAME: demo-vrp
TYPE: CVRP
DIMENSION: 5
EDGE_WEIGHT_TYPE: EUC_2D
CAPACITY: 2
VEHICLES: 2
NODE_COORD_SECTION
1 0.0 0.0
2 10.0 0.0
3 20.0 0.0
4 0.0 10.0
5 0.0 20.0
DEMAND_SECTION
1 0
2 1
3 1
4 1
5 1
DEPOT_SECTION
1
-1
EOF
`;

const TSP_EXAMPLE = `NAME: demo-tsp
TYPE: TSP
DIMENSION: 4
EDGE_WEIGHT_TYPE: EUC_2D
NODE_COORD_SECTION
1 0.0 0.0
2 8.0 0.0
3 8.0 6.0
4 0.0 6.0
EOF
`;

const KNAPSACK_EXAMPLE = `CAPACITY 5
ITEM 1 2 3.0
ITEM 2 3 4.0
ITEM 3 4 5.0
`;

const QUBO_EXAMPLE = `n 2
0 0 -1.0
0 1 2.0
1 1 -1.0
`;

const QCP_EXAMPLE = `KIND ANNEAL
SHOTS 100
SEED 1
SWEEPS 1000
RESTARTS 10
BETA_START 0.1
BETA_END 10.0
QUBO
n 2
0 0 -1.0
1 1 -1.0
`;

export const PROBLEM_MASKS: ProblemMask[] = [
  {
    typeId: "cluster-vrp",
    label: "Vehicle Routing",
    description:
      "Capacitated routing: serve every customer from the depot without " +
      "exceeding vehicle capacity, minimizing total route length.",
    example: VRP_EXAMPLE,
  },
  {
    typeId: "tsp",
    label: "Traveling Salesman",
    description: "Shortest round trip visiting every node exactly once.",
    example: TSP_EXAMPLE,
  },
  {
    typeId: "knapsack",
    label: "Knapsack",
    description: "Pick items maximizing value within the weight capacity.",
    example: KNAPSACK_EXAMPLE,
  },
  {
    typeId: "qubo",
    label: "QUBO",
    description:
      "Quadratic unconstrained binary optimization: minimize x'Qx + c over binary x.",
    example: QUBO_EXAMPLE,
  },
  {
    typeId: "quantum-circuit-processing",
    label: "Quantum Job",
    description: "A prepared sampling job for a simulated or remote backend.",
    example: QCP_EXAMPLE,
  },
];

export function maskFor(typeId: string): ProblemMask | undefined {
  return PROBLEM_MASKS.find((mask) => mask.typeId === typeId);
}
