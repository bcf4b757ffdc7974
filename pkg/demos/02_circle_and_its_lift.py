
# coding: utf-8

# # A circle, swept backwards

# The cycle of a polygon is born when its last edge arrives.  Its representative is a chain in the prism `K x [b, d]`.  Vertical pieces `tau x t_tau` mark where each edge enters.  Horizontal runs `sigma x [l, r]` carry the faces between those levels.

# In[1]:

from zigzag_reps import LiftArgs, lift_cycle, lift_cycle_easy, boundary_contract_holds
from zigzag_reps.generate import circle_lift_args

c, args = circle_lift_args(8)
print("cells:", c.m, "spaces:", c.n + 1)
print("sweep from", args.s, "to", args.f)


# In[2]:

chain = lift_cycle(args, c)
for cell, coeff in sorted(chain.terms.items(), key=repr)[:12]:
    print(cell, coeff)
print("...", len(chain.terms), "terms")


# The fast sweep and the direct construction must agree, and the boundary of the lift is the difference of the two end cycles.

# In[3]:

print("same as direct construction:", chain == lift_cycle_easy(args, c))
print("boundary contract:", boundary_contract_holds(args, chain, c))


# # Timing

# In[4]:

import time

for m in (10**3, 10**4, 10**5):
    c, args = circle_lift_args(m)
    t0 = time.perf_counter()
    lift_cycle(args, c)
    print(m, f"{time.perf_counter() - t0:.4f}s")
