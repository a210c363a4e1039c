"""Running the property suites and shrinking a counterexample.

Suites are seeded and sharded; the merged report is identical however many
worker processes run the shards.
"""

from cubical.harness import SuiteConfig, run_suite, shrink
from cubical.opsem import evaluate
from cubical.surface import parse, show
from cubical.syntax import If

for name in ("canonicity", "kan-laws", "not-involution"):
    print(run_suite(name, SuiteConfig(count=300, seed=1)).summary())
    print()

a = run_suite("determinacy", SuiteConfig(count=2000, seed=5, shards=4))
b = run_suite("determinacy", SuiteConfig(count=2000, seed=5, shards=4, workers=4))
print("sharded reports identical:", a.to_json() == b.to_json())

# a made-up failing property: "an if never evaluates to true"
big = parse("(if _ bool (fst (pair (notf false) base)) (notf (notf true)) false)")


def still_true(u):
    return isinstance(u, If) and evaluate(u).final == parse("true")


print("\nshrinking", show(big))
print("      to ", show(shrink(big, still_true)))
