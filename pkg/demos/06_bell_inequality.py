"""Bell's inequality |P(a,b) - P(a,c)| <= 1 + P(b,c), with and without hidden variables."""
# %%
import math

from qmdensity import (
    Direction,
    bell_check,
    lhv_estimate,
    qm_correlation,
    qm_sampled_correlation,
    sign_strategy,
    table_strategy,
)

a, b, c = (Direction.in_plane(x) for x in (0, 60, 120))
pairs = [(a, b), (a, c), (b, c)]

# %% Quantum prediction -a.b: the inequality fails by 0.5
exact = [qm_correlation(p, q) for p, q in pairs]
print("exact P:", [round(x, 6) for x in exact], "-> margin", bell_check(*exact)[1])

# %% The same from sampled singlet measurements
recs = [qm_sampled_correlation(p, q, 100_000, seed=0, stream=s) for s, (p, q) in enumerate(pairs)]
ok, margin = bell_check(*(r.P for r in recs))
se = math.sqrt(sum(r.std_error ** 2 for r in recs))
print(f"sampled margin {margin:+.4f} +- {se:.4f}")

# %% Any predetermined-outcome model obeys it, trial by trial
for strat in (sign_strategy(), table_strategy([a, b, c], [[1, 1, -1], [1, -1, 1], [-1, 1, 1]])):
    recs = lhv_estimate(strat, pairs, 100_000, seed=0)
    print(strat.name, [round(r.P, 4) for r in recs], "->", bell_check(*(r.P for r in recs)))
