"""
Pauli weight scaling and the Hybrid versus Bravyi-Kitaev crossover
==================================================================

Exact rational checks of the closed forms, and where the Hybrid mapping
sits relative to Bravyi-Kitaev under full connectivity.
"""

# %%
from hybridmap.bench import (
    compute_row,
    crossover_report,
    decompose_hybrid_weight,
    hybrid_root_parity_formula,
    jw_average_weight,
)

for N in (2, 4, 8, 16):
    row = compute_row("jw", N, None)
    print(f"JW N={N:<2} avg {row.avg_weight_exact} (formula {jw_average_weight(N)}) max {row.max_weight}")

# %%
# Root-parity part of the Hybrid weight, counted edge by edge.
for N, n in ((8, 2), (16, 2), (16, 4), (32, 4)):
    parts = decompose_hybrid_weight(N, n)
    print(f"N={N:<2} n={n}: counted {parts.root_parity_avg}, closed form "
          f"{hybrid_root_parity_formula(N, n)}, in-cell {float(parts.in_cell_avg):.3f}")

# %%
# All-to-all connectivity: Hybrid(4) stays below Bravyi-Kitaev on every
# lattice computed here. Larger lattices are only listed.
for r in crossover_report([8, 16, 32, 64, 164], 4):
    if r.status == "computed":
        print(f"N={r.N:<3} hybrid {r.hybrid_avg:5.2f}  bk {r.bk_avg:5.2f}  hybrid<bk {r.hybrid_below_bk}")
    else:
        print(f"N={r.N:<3} {r.status}")
