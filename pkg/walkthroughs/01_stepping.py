"""Stepping closed terms by hand.

Parse a term, take single steps, and watch the rule labels.  Negation is an
``if`` with a constant motive, so evaluating ``notf (notf true)`` takes two
``if`` steps.
"""

from cubical.opsem import evaluate, step
from cubical.surface import parse, show

t = parse("(notf (notf true))")
print("term:  ", show(t))
out = step(t)
print("step:  ", out.label, "->", show(out.next))

print("\nfull trace:")
for line in evaluate(t).lines():
    print("  ", line)

# coercion along the not line flips the boolean
print("\ncoe x.not(x) from 0 to 1:")
for line in evaluate(parse("(coe x (not-ty x) 0 1 true)")).lines():
    print("  ", line)

# an eliminator applied to the wrong value is reported, not raised
tr = evaluate(parse("(fst (lam a a))"))
print("\nstuck:", tr.stuck.reason, "at", show(tr.stuck.subterm))
