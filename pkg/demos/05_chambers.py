"""Chambers of the positive cone of T and their refinement by Δ′ hyperplanes."""
# %%
from fractions import Fraction

from ballquot.catalog import k3n_lattice
from ballquot.chambers import chamber_of, crossing_count, integer_grid, local_walls, refine_by_delta_prime
from ballquot.corpus import delta_prime_witness, sextic_embedding
from ballquot.sublattice import PrimitiveEmbedding
from ballquot.walls import delta_prime_test

# %% T = U ⊕ <-2> inside K3^[2]
L = k3n_lattice(2)
rows = []
for i in (0, 1, 22):
    r = [0] * 23
    r[i] = 1
    rows.append(tuple(r))
emb = PrimitiveEmbedding(L, tuple(rows))
walls = local_walls(emb, 2)
print(len(walls), "walls up to B = 2:", [w.coords for w in walls])

# %% sign vectors name chambers
x, y = [1, 3, Fraction(1, 3)], [3, 1, Fraction(1, 5)]
cx = chamber_of(x, walls, emb.lattice, reference=[1, 1, 0])
cy = chamber_of(y, walls, emb.lattice, reference=[1, 1, 0])
print(cx.label(), cy.label(), "crossings:", crossing_count(x, y, walls, emb.lattice))

# %% a Δ′ vector splits a chamber of T = U in U ⊕ U ⊕ <2>
emb2, d = delta_prime_witness()
print("Δ′ test:", delta_prime_test(d, emb2))
K = chamber_of([1, 2], local_walls(emb2, 2), emb2.lattice)
print("pieces:", refine_by_delta_prime(K, [d], integer_grid(2, 5), emb=emb2))

# %% with T of rank one nothing is cut
s = sextic_embedding()
K1 = chamber_of([1], local_walls(s, 2), s.lattice)
print("rank one pieces:", refine_by_delta_prime(K1, [], integer_grid(1, 2), emb=s))
