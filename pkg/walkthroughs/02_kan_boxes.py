"""Open boxes, their lids, and observational equality at bool.

An ``hcom`` with a constant extent is determined by one of its tubes; with
``r = r'`` it is its cap.  Terms with free dimension names are compared by
``obs_equal_bool``, which checks every endpoint substitution.
"""

from cubical.harness import check_canonicity, obs_equal_bool
from cubical.opsem import evaluate
from cubical.surface import parse, show

box = parse("(hcom bool (exts 1) 0 1 false (tube y (notf true) (notf false)))")
print(show(box))
print("  lid:", show(evaluate(box).final))

# a free extent blocks reduction: the hcom is itself a value
open_box = parse("(hcom bool (exts i) 0 1 true (tube y true true))")
print(show(open_box), "is a value:", evaluate(open_box).n_steps == 0)

# but at each endpoint of i it computes to true
print("observationally true:", obs_equal_bool(open_box, parse("true")))

# eliminating the open box by if still reaches a canonical boolean at every endpoint
t = parse("(if _ bool (hcom bool (exts 0) 0 1 true (tube y false true)) false true)")
print(show(t), "=>", check_canonicity(t))
