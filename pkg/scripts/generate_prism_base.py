"""Regenerate the frozen K_7 schedules for the five order-11 prisms.

Each schedule is four contractions in the complement of
``elongated_prism(a, b, c)``, found by exact search for a spanning
partition into seven connected, pairwise adjacent branch sets.

    python scripts/generate_prism_base.py > src/nspminor/data/prism_base.json
"""

import json
import sys

from nspminor.families import elongated_prism, enumerate_prisms
from nspminor.graph import complement, iter_bits
from nspminor.search import has_complete_minor


def spanning_contractions(host, block):
    """Tree edges of a BFS inside ``block`` rooted at its least vertex."""
    root, *_ = sorted(block)
    seen, frontier, edges = {root}, [root], []
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(w + 1 for w in iter_bits(host.adj[u - 1])):
                if w in block and w not in seen:
                    seen.add(w)
                    edges.append([u, w])
                    nxt.append(w)
        frontier = nxt
    return edges


def main():
    out = {}
    for spec in enumerate_prisms(11):
        host = complement(elongated_prism(*spec.subdivisions))
        res = has_complete_minor(host, 7)
        assert res.found
        steps = []
        for s in res.model.branch_sets:
            steps += [{"contract": e} for e in spanning_contractions(host, s)]
        assert len(steps) == 4
        out[",".join(map(str, spec.subdivisions))] = {"steps": steps, "target": 7}
    lines = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in out.items()]
    sys.stdout.write("{\n" + ",\n".join(lines) + "\n}\n")


if __name__ == "__main__":
    main()
