from hypothesis import strategies as st

from urntest import UrnSpec


@st.composite
def urn_specs(draw, max_total=60, min_total=1):
    """Valid urns up to a given total size, with a feasible observed count."""
    total = draw(st.integers(min_total, max_total))
    r = draw(st.integers(1, total))
    t = total - r
    n = draw(st.integers(0, total))
    lo, hi = max(0, n - r), min(n, t)
    x = draw(st.integers(lo, hi))
    return UrnSpec(t_count=t, r_count=r, sample_size=n, support_count=x)
