"""A two-level toy of the cat: atom (decayed/undecayed) entangled with a pointer (dead/alive)."""
# %%
import json

from qmdensity.scenarios import cat_demo

rep = cat_demo()
short = {k: v for k, v in rep.items() if not isinstance(v, dict) or "rows" not in v}
print(json.dumps(short, indent=2))
print("cat marginal diagonal:", [d[0] for d in rep["cat_marginal"]["data"][::3]])
