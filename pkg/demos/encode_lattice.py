"""
Encoding hopping terms on a square lattice
==========================================

Walk through the four encoders on small lattices: the Jordan-Wigner chain,
the Bravyi-Kitaev tree and the cell-wise Hybrid construction.
"""

# %%
# Lattice enumeration: an 8x8 lattice cut into 2x2 cells, Z pattern.
from hybridmap.lattice import LatticeSpec, build_layout

layout = build_layout(LatticeSpec(8, 2))
print(layout.mode_at)
print("cell roots:", layout.roots[:6], "...")

# %%
# Jordan-Wigner: a vertical hop drags a Z string across a whole row.
from hybridmap.mappings import make_encoder

jw = make_encoder("jw", 4)
print(jw.hopping(1, 5).to_text())

# %%
# Hybrid(n=2): Fenwick trees inside cells, and the parity of earlier cells
# read off their roots. The hop between modes 6 and 27 touches the in-cell
# sets of both targets plus the roots of the cells in between.
hybrid = make_encoder("hybrid", 8, 2)
h = hybrid.hopping(6, 27)
print(h.to_text())
print("support:", sorted(h.support()))

# %%
# Average support weight over every nearest-neighbour hop.
import numpy as np

for kind, n in (("jw", None), ("bk", None), ("hybrid", 2), ("hybrid", 4)):
    enc = make_encoder(kind, 16, n)
    weights = [len(op.support()) for _, op in enc.hamiltonian()]
    print(f"{kind:>6} n={enc.spec.n:<2} avg {np.mean(weights):5.2f}  max {max(weights)}")

# %%
# The degenerate cases: one-mode cells give Jordan-Wigner and a single
# cell gives Bravyi-Kitaev, string for string.
same_jw = all(a == b for (_, a), (_, b) in zip(make_encoder("hybrid", 4, 1).hamiltonian(),
                                               make_encoder("jw", 4).hamiltonian()))
same_bk = all(a == b for (_, a), (_, b) in zip(make_encoder("hybrid", 4, 4).hamiltonian(),
                                               make_encoder("bk", 4).hamiltonian()))
print("hybrid(n=1) == jw:", same_jw, " hybrid(n=N) == bk:", same_bk)
