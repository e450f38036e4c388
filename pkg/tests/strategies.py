from hypothesis import strategies as st

from qclaw.coefficient import Coefficient
from qclaw.torus import TorusElement

coefficients = st.dictionaries(st.integers(-6, 6), st.integers(-4, 4), max_size=4).map(Coefficient)
nonzero_coefficients = coefficients.filter(lambda c: not c.is_zero())
units = st.tuples(st.integers(-6, 6), st.sampled_from([1, -1])).map(lambda t: Coefficient.qpow(*t))


def elements(ctx, max_terms=3, bound=2):
    exps = st.tuples(*[st.integers(-bound, bound)] * ctx.dim)
    return st.dictionaries(exps, nonzero_coefficients, max_size=max_terms).map(lambda d: TorusElement(ctx, d))
