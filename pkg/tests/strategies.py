"""Hypothesis strategies for small terms, independent of the harness generators."""

from hypothesis import strategies as st

from cubical.syntax import (
    BASE, BOOL, CIRCLE, FALSE, TRUE, App, Coe, DApp, DBind, DLam, Fst, If, Lam, Loop, NotEl, NotTy,
    Pair, Snd, TBind, Var, dim,
)

NAMES = ("x", "y", "i")
VARS = ("a", "b")

dims = st.sampled_from([0, 1, *NAMES]).map(dim)
leaves = st.one_of(
    st.sampled_from([TRUE, FALSE, BASE, BOOL, CIRCLE]),
    st.sampled_from(VARS).map(Var),
    dims.map(Loop),
    dims.map(NotTy),
)


def _extend(children):
    return st.one_of(
        st.builds(lambda a, b: Lam(TBind(a, b)), st.sampled_from(VARS), children),
        st.builds(App, children, children),
        st.builds(Pair, children, children),
        st.builds(Fst, children),
        st.builds(Snd, children),
        st.builds(lambda x, b: DLam(DBind(x, b)), st.sampled_from(NAMES), children),
        st.builds(DApp, children, dims),
        st.builds(NotEl, dims, children),
        st.builds(lambda a, m, t, f: If(TBind(a, BOOL), m, t, f), st.sampled_from(VARS), children, children,
                  children),
        st.builds(lambda x, r, s, m: Coe(DBind(x, NotTy(dim(x))), r, s, m), st.sampled_from(NAMES), dims, dims,
                  children),
    )


terms = st.recursive(leaves, _extend, max_leaves=12)
