"""
Network snapshot and the clustering scatter
===========================================

Exports the final network as node-link JSON and reads it back with
networkx (if installed). Links join agents whose local clustering is
listed pairwise in ``clustering_pairs``; pairs of highly clustered agents
mark tightly knit groups, a highly clustered agent tied to a weakly
clustered one sits on a bridge.
"""
import argparse
import json
from pathlib import Path

from statusgame import SimParams, run_single
from statusgame.io import export_snapshot, read_snapshot

parser = argparse.ArgumentParser()
parser.add_argument("--cycles", type=int, default=2000)
parser.add_argument("--out", default="demo-out/snapshot.json")
args = parser.parse_args()

world = run_single(SimParams(cost=7.5, memory=2.0, cycles=args.cycles, seed=3)).final
export_snapshot(world, args.out)
doc = read_snapshot(args.out)
print(f"wrote {Path(args.out)}: {len(doc['nodes'])} nodes, {len(doc['links'])} links")

links = sorted(doc["links"], key=lambda l: l["strength"], reverse=True)
print("strongest links (source, target, min(U_ij, U_ji)):")
for l in links[:5]:
    print(f"  {l['source']:3d} {l['target']:3d} {l['strength']:10.1f}")

pairs = doc["clustering_pairs"]
both_high = sum(1 for a, b in pairs if a > 0.5 and b > 0.5)
bridges = sum(1 for a, b in pairs if max(a, b) > 0.5 and min(a, b) < 0.2)
print(f"links between well-clustered agents: {both_high}, bridge-like links: {bridges}")

try:
    import networkx as nx
except ImportError:
    nx = None
if nx is not None:
    g = nx.node_link_graph(doc, edges="links")
    print("networkx sees", g.number_of_nodes(), "nodes and", nx.number_connected_components(g), "components")
else:
    print(json.dumps(doc["nodes"][0]))
