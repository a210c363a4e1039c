"""Building, saving and validating derivations.

Each node names a catalog rule and binds its metavariables; the validator
instantiates the rule and compares conclusions and premises up to renaming.
"""

import tempfile
from pathlib import Path

from cubical.checker import dump, load, show_judgment, validate
from cubical.checker.generate import derive, full_examples, mutate_conclusion
from cubical.syntax import BOOL, TRUE, Var

bool_wf = derive("bool-wf", {})
beta = derive(
    "pi-beta", {"a": "a", "A": BOOL, "B": BOOL, "M": Var("a"), "N": TRUE},
    derive("var", {"a": "a", "A": BOOL}, bool_wf),
    derive("true", {}),
    bool_wf,
    derive("weaken", {"J": bool_wf.conclusion.body, "a": "a", "A": BOOL}, bool_wf, bool_wf),
)
print("conclusion:", show_judgment(beta.conclusion))
print("report:    ", validate(beta).summary())

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "beta.json"
    dump(beta, path)
    print("reloaded:  ", validate(load(path)).summary())

print("\nmutated conclusion:")
print(validate(mutate_conclusion(beta)).summary())

print("\nshipped complete examples:")
for name, d in full_examples().items():
    print(f"  {name}: {validate(d).summary()}")
