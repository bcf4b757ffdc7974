
# coding: utf-8

# # The command line

# The same pipeline is available as `zigzag-reps` (or `python3 -m zigzag_reps`).  Input is plain text in either the event format or the interval format.

# In[1]:

import io
import tempfile
from pathlib import Path

from zigzag_reps.cli import main

text = """field 2
add u 0
add v 0
add e 1 u:-1 v:1
del e
"""
path = Path(tempfile.mkdtemp()) / "uve.zz"
path.write_text(text)


# In[2]:

def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    print(out.getvalue(), end="")
    print("exit", code)

run("barcode", str(path))


# In[3]:

run("reps", str(path), "--bar", "0")


# In[4]:

run("verify", str(path))


# In[5]:

run("plot", str(path))
