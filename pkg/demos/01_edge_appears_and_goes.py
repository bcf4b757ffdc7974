
# coding: utf-8

# # Two vertices and an edge

# A zigzag is a sequence of complexes joined by inclusions that point either way.  Here two vertices appear, an edge joins them, then `u` is removed and the leftovers vanish at the end.

# In[1]:

from zigzag_reps import Add, Del, ingest_events, zigzag_barcode

events = [
    Add("u", 0, ()),
    Add("v", 0, ()),
    Add("e", 1, (("u", -1), ("v", 1))),
    Del("e"),
]
c = ingest_events(events)
for rec in c:
    print(rec.id, rec.dim, rec.lifetime)
print("spaces:", c.n + 1)


# Every cell lives on an interval of indices.  Additions land on up-maps and deletions on down-maps, so odd spaces are the big ones.

# In[2]:

for i in range(c.n + 1):
    print(i, c.space(i))


# # The barcode

# In[3]:

zz = zigzag_barcode(c, p=2)
for bar in zz.bars:
    print(bar.id, "dim", bar.dim, bar.type, bar.span)


# One component persists throughout.  The second one is born with `v`, then dies when the edge merges it into the first.

# # Representatives

# Each bar comes with a cycle at every index it covers, and neighbouring cycles are homologous in the larger space between them.

# In[4]:

for bar in zz.bars:
    print("bar", bar.id)
    for i, z in zz.representatives(bar.id).items():
        print("   ", i, dict(z))
