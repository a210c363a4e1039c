"""One hand-derived case per operational rule.

Each entry is ``(rule, source, first label, first reduct)``.  The reducts were
written out by hand from the rule table, with every composition expanded into
its hcom/coe definition, and are compared up to renaming of bound names.
"""

P = "(pair true (dlam w true))"
F_IA = "(lam a (loop x))"
G_IA = "(lam b (coe w bool x 0 true))"
H_BOOL = "(hcom bool (exts i) 0 z true (tube y true false))"
H_BOOL_1 = "(hcom bool (exts i) 0 1 true (tube y true false))"
FIL = "(hcom bool (exts i) 0 z (fst {p}) (tube y (fst {p}) (fst {p})))".format(p=P)
FIL_1 = "(hcom bool (exts i) 0 1 (fst {p}) (tube y (fst {p}) (fst {p})))".format(p=P)
IF_T = "(if a (id w bool a a) true (dlam w true) (dlam w false))"
IF_F = "(if a (id w bool a a) false (dlam w true) (dlam w false))"

CASES = [
    # types, hcom/coe congruence
    ("not-ty-const", "(not-ty 1)", "not-ty-const", "bool"),
    ("coe-cong", "(coe x (not-ty 0) 0 1 true)", "coe-cong/not-ty-const", "(coe x bool 0 1 true)"),
    ("hcom-cong", "(hcom (not-ty 1) (exts i) 0 1 true (tube y true true))", "hcom-cong/not-ty-const",
     "(hcom bool (exts i) 0 1 true (tube y true true))"),
    # functions
    ("app-cong", "(app (fst (pair (lam a a) true)) false)", "app-cong/fst-beta", "(app (lam a a) false)"),
    ("app-beta", "(app (lam a (pair a a)) true)", "app-beta", "(pair true true)"),
    ("hcom-pi", "(hcom (pi a bool bool) (exts i) 0 1 (lam b b) (tube y (lam b b) (lam b (loop y))))",
     "hcom-pi",
     "(lam a (hcom bool (exts i) 0 1 (app (lam b b) a) (tube y (app (lam b b) a) (app (lam b (loop y)) a))))"),
    ("coe-pi", "(coe x (pi a bool (id z bool a a)) 0 1 (lam b (dlam z b)))", "coe-pi",
     "(lam a (coe x (id z bool (coe x bool 1 x a) (coe x bool 1 x a)) 0 1"
     " (app (lam b (dlam z b)) (coe x bool 1 0 a))))"),
    # pairs
    ("fst-cong", "(fst (app (lam a a) (pair true false)))", "fst-cong/app-beta", "(fst (pair true false))"),
    ("snd-cong", "(snd (snd (pair true (pair false base))))", "snd-cong/snd-beta", "(snd (pair false base))"),
    ("fst-beta", "(fst (pair true false))", "fst-beta", "true"),
    ("snd-beta", "(snd (pair true false))", "snd-beta", "false"),
    ("hcom-sigma", f"(hcom (sigma a bool (id w bool a a)) (exts i) 0 1 {P} (tube y {P} {P}))", "hcom-sigma",
     f"(pair {FIL_1} (hcom (id w bool {FIL_1} {FIL_1}) (exts i) 0 1"
     f" (coe z (id w bool {FIL} {FIL}) 0 1 (snd {P}))"
     f" (tube y (coe z (id w bool {FIL} {FIL}) y 1 (snd {P})) (coe z (id w bool {FIL} {FIL}) y 1 (snd {P})))))"),
    ("coe-sigma", f"(coe x (sigma a bool (id w bool a a)) 0 1 {P})", "coe-sigma",
     f"(pair (coe x bool 0 1 (fst {P}))"
     f" (coe x (id w bool (coe x bool 0 x (fst {P})) (coe x bool 0 x (fst {P}))) 0 1 (snd {P})))"),
    # paths
    ("dapp-cong", "(dapp (fst (pair (dlam x (loop x)) true)) i)", "dapp-cong/fst-beta", "(dapp (dlam x (loop x)) i)"),
    ("dapp-beta", "(dapp (dlam x (loop x)) i)", "dapp-beta", "(loop i)"),
    ("hcom-id", "(hcom (id x circle base base) (exts i) 0 1 (dlam z (loop z)) (tube y (dlam z (loop z)) (dlam z base)))",
     "hcom-id",
     "(dlam x (hcom circle (exts i x) 0 1 (dapp (dlam z (loop z)) x)"
     " (tube y (dapp (dlam z (loop z)) x) (dapp (dlam z base) x)) (tube y base base)))"),
    ("coe-id", "(coe y (id x (not-ty y) true false) 0 1 (dlam z true))", "coe-id",
     "(dlam x (hcom (not-ty 1) (exts x) 0 1 (coe y (not-ty y) 0 1 (dapp (dlam z true) x))"
     " (tube y (coe y (not-ty y) y 1 true) (coe y (not-ty y) y 1 false))))"),
    # booleans
    ("if-cong", "(if _ bool (notf true) base base)", "if-cong/if-true", "(if _ bool false base base)"),
    ("if-true", "(if a bool true false base)", "if-true", "false"),
    ("if-false", "(if a bool false false base)", "if-false", "base"),
    ("if-hcom", f"(if a (id w bool a a) {H_BOOL_1} (dlam w true) (dlam w false))", "if-hcom",
     f"(hcom (id w bool {H_BOOL_1} {H_BOOL_1}) (exts i) 0 1"
     f" (coe z (id w bool {H_BOOL} {H_BOOL}) 0 1 {IF_T})"
     f" (tube y (coe z (id w bool {H_BOOL} {H_BOOL}) y 1 {IF_T}) (coe z (id w bool {H_BOOL} {H_BOOL}) y 1 {IF_F})))"),
    ("hcom-bool-tube", "(hcom bool (exts i 1) 0 1 true (tube y true true) (tube y false (loop y)))",
     "hcom-bool-tube", "(loop 1)"),
    ("hcom-bool-cap", "(hcom bool (exts i) 1 1 true (tube y false false))", "hcom-bool-cap", "true"),
    ("coe-bool", "(coe x bool 0 i true)", "coe-bool", "true"),
    # circle
    ("hcom-s1-tube", "(hcom circle (exts 0) 0 j base (tube y (loop y) base))", "hcom-s1-tube", "(loop j)"),
    ("hcom-s1-cap", "(hcom circle (exts i j) j j (loop i) (tube y base base) (tube y base base))",
     "hcom-s1-cap", "(loop i)"),
    ("loop-const", "(loop 0)", "loop-const", "base"),
    ("celim-cong", "(circ-elim a bool (dapp (dlam x (loop x)) i) true x false)", "celim-cong/dapp-beta",
     "(circ-elim a bool (loop i) true x false)"),
    ("celim-base", "(circ-elim a bool base true x false)", "celim-base", "true"),
    ("celim-loop", "(circ-elim a bool (loop i) true x (coe w bool x 0 true))", "celim-loop",
     "(coe w bool i 0 true)"),
    ("celim-hcom", "(circ-elim a bool (hcom circle (exts i) 0 1 base (tube y base (loop y))) true x true)",
     "celim-hcom",
     "(hcom bool (exts i) 0 1 (coe z bool 0 1 (circ-elim a bool base true x true))"
     " (tube y (coe z bool y 1 (circ-elim a bool base true x true))"
     " (coe z bool y 1 (circ-elim a bool (loop y) true x true))))"),
    ("coe-s1", "(coe x circle 1 0 (loop i))", "coe-s1", "(loop i)"),
    # not
    ("notel-0", "(not-el 0 true)", "notel-0", "(if _ bool true false true)"),
    ("notel-1", "(not-el 1 true)", "notel-1", "true"),
    ("coe-not-flip", "(coe x (not-ty x) 1 0 false)", "coe-not-flip", "(if _ bool false false true)"),
    ("coe-not-refl", "(coe x (not-ty x) 1 1 false)", "coe-not-refl", "false"),
    ("coe-not-0x", "(coe x (not-ty x) 0 i true)", "coe-not-0x", "(not-el i (if _ bool true false true))"),
    ("coe-not-1x", "(coe x (not-ty x) 1 i true)", "coe-not-1x", "(not-el i true)"),
    ("coe-not-cong", "(coe x (not-ty x) i j (fst (pair (not-el i true) base)))", "coe-not-cong/fst-beta",
     "(coe x (not-ty x) i j (not-el i true))"),
    ("coe-not-notel", "(coe x (not-ty x) i j (not-el i true))", "coe-not-notel", "(not-el j true)"),
    ("coe-not-apart", "(coe x (not-ty i) 0 1 true)", "coe-not-apart", "true"),
    ("hcom-not", "(hcom (not-ty i) (exts j) 0 1 (not-el i true) (tube y (not-el i true) (not-el i false)))",
     "hcom-not",
     "(not-el i (hcom bool (exts j) 0 1 (coe x (not-ty x) i 1 (not-el i true))"
     " (tube y (coe x (not-ty x) i 1 (not-el i true)) (coe x (not-ty x) i 1 (not-el i false)))))"),
    # strict booleans
    ("hcom-sbool", "(hcom sbool (exts 0) 0 1 true (tube y false false))", "hcom-sbool", "true"),
    ("coe-sbool", "(coe x sbool 0 1 false)", "coe-sbool", "false"),
    # univalence for isomorphisms
    ("ia-0", "(ia 0 bool circle (lam a a) (lam b b))", "ia-0", "bool"),
    ("ia-1", "(ia 1 bool circle (lam a a) (lam b b))", "ia-1", "circle"),
    ("iain-0", "(ia-in 0 true (lam a (notf a)))", "iain-0", "true"),
    ("iain-1", "(ia-in 1 true (lam a (notf a)))", "iain-1", "(app (lam a (notf a)) true)"),
    ("iaout-0", "(ia-out 0 true (lam b b))", "iaout-0", "true"),
    ("iaout-1", "(ia-out 1 true (lam b b))", "iaout-1", "(app (lam b b) true)"),
    ("iaout-cong", "(ia-out i (fst (pair (ia-in i true (lam a a)) base)) (lam b b))", "iaout-cong/fst-beta",
     "(ia-out i (ia-in i true (lam a a)) (lam b b))"),
    ("iaout-beta", "(ia-out i (ia-in i true (lam a a)) (lam b b))", "iaout-beta", "true"),
    ("coe-ia", f"(coe x (ia x bool circle {F_IA} {G_IA}) 0 1 true)", "coe-ia",
     "(ia-in 1 (coe x bool 0 1 (ia-out 0 true (lam b (coe w bool 0 0 true)))) (lam a (loop 1)))"),
    ("coe-ia-apart", f"(coe x (ia i bool circle {F_IA} {G_IA}) 0 1 true)", "coe-ia-apart",
     "(ia-in i (hcom bool (exts i) 0 1 (coe x bool 0 1 (ia-out i true (lam b (coe w bool 0 0 true))))"
     " (tube y (coe x bool y 1 (coe x bool 0 y true))"
     " (coe x bool y 1 (app (lam b (coe w bool y 0 true)) (coe x circle 0 y true)))))"
     " (lam a (loop 1)))"),
    ("hcom-ia", "(hcom (ia i bool circle (lam a base) (lam b true)) (exts j) 0 1 true (tube y true false))",
     "hcom-ia",
     "(ia-in i (hcom bool (exts j i) 0 1 (ia-out i true (lam b true))"
     " (tube y (ia-out i true (lam b true)) (ia-out i false (lam b true)))"
     " (tube z (hcom bool (exts j) 0 z true (tube y true false))"
     " (app (lam b true) (hcom circle (exts j) 0 z true (tube y true false)))))"
     " (lam a base))"),
]

# terms that must be stuck, with the reason code
STUCK = [
    ("(app true false)", "EliminatorMismatch"),
    ("(fst (lam a a))", "EliminatorMismatch"),
    ("(if a bool base true false)", "EliminatorMismatch"),
    ("(circ-elim a bool true base x base)", "EliminatorMismatch"),
    ("(coe x (lam a a) 0 1 true)", "NonTypeSubscript"),
    ("(hcom true (exts i) 0 1 true (tube y true true))", "NonTypeSubscript"),
    ("(app (lam a a) c)", "FreeTermVariable"),
    ("(coe x (not-ty x) i j true)", "EliminatorMismatch"),
]
