"""
Interaction qubit counts on a square-lattice device
===================================================

An operator whose support is not connected on the device needs SWAPs.
The qubits touched are counted as the vertices of a Steiner tree over the
support.
"""

# %%
from hybridmap.routing import grid_graph, steiner_exact, steiner_heuristic

g = grid_graph(3)
tree = steiner_exact(g, [0, 2, 6, 8])
print("3x3 corners:", tree.edges, "vertices:", tree.vertex_count)
print("heuristic  :", steiner_heuristic(g, [0, 2, 6, 8]).vertex_count)

# %%
# Average interaction count per hop, square lattice connectivity.
from hybridmap.bench import compute_row

print(" N    jw   hybrid(4)  hybrid+(2)")
for N in (8, 16, 24):
    jw = compute_row("jw", N, None, "lattice").avg_iqc
    hy = compute_row("hybrid", N, 4, "lattice").avg_iqc
    hp = compute_row("hybridplus", N, 2, "lattice").avg_iqc
    print(f"{N:>2} {jw:6.2f} {hy:9.2f} {hp:10.2f}")

# %%
# Jordan-Wigner strings are contiguous paths, so no routing is needed; the
# Hybrid strings jump between cell roots and pay for the gaps.
row = compute_row("hybrid", 16, 4, "lattice")
print(f"hybrid(4), N=16: weight {row.avg_weight:.2f} -> routed {row.avg_iqc:.2f}"
      f" ({100 * row.exact_fraction:.0f}% of trees solved exactly)")
