"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from ordauto.ordinals import OrdinalCNF
from ordauto.words import FiniteOrdinalWord


def cnfs(level=1, max_terms=3, max_coord=3, max_coef=4):
    exps = st.tuples(*[st.integers(0, max_coord)] * level)
    return st.dictionaries(exps, st.integers(1, max_coef), max_size=max_terms).map(
        lambda d: OrdinalCNF(level, tuple(sorted(d.items(), reverse=True)))
    )


def words(level=1, alphabet=("a", "b"), max_support=3, box=3):
    pos = st.tuples(*[st.integers(0, box)] * level)
    return st.dictionaries(pos, st.sampled_from(alphabet), max_size=max_support).map(
        lambda d: FiniteOrdinalWord(level, d)
    )
