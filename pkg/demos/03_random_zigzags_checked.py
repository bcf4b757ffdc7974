
# coding: utf-8

# # Checking random zigzags by brute force

# `full_verify` recomputes the barcode and then checks every representative against dense homology computations.  Each slice must be a nonzero cycle.  Consecutive slices must be homologous.  The live slices at each index must form a basis.

# In[1]:

from collections import Counter

from zigzag_reps.generate import random_suite
from zigzag_reps.verify import full_verify

reports = []
for c, p in random_suite(seed=7, count=40):
    reports.append(full_verify(c, p))
print("all ok:", all(r.ok for r in reports))


# In[2]:

totals = Counter()
for r in reports:
    for name, check in r.checks.items():
        totals[name] += check.passed
for name, n in totals.items():
    print(f"{name:28s} {n}")


# # A closer look at one case

# In[3]:

r = reports[0]
for line in r.summary():
    print(line)
for bar in r.barcode.bars:
    print(bar.id, bar.dim, bar.type, bar.span)
