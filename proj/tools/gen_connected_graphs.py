"""Writes every connected graph on 1..7 nodes (up to isomorphism) as concatenated graph files."""
import sys

import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def main(path):
    graphs = [g for g in graph_atlas_g() if g.number_of_nodes() >= 1 and nx.is_connected(g)]
    with open(path, "w") as out:
        out.write(f"c {len(graphs)} connected graphs, n <= 7, from the networkx graph atlas\n")
        for g in graphs:
            edges = sorted(tuple(sorted((u + 1, v + 1))) for u, v in g.edges())
            out.write(f"p edge {g.number_of_nodes()} {len(edges)}\n")
            for u, v in edges:
                out.write(f"e {u} {v}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/connected_n7.graphs")
