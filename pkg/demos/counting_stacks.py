"""Stacks of size 4 and 5, counted twice.

First we list the sequences one by one, then we read the same numbers off the
generating functions. Run with ``python3 demos/counting_stacks.py``.
"""

from stacklab import combinat as cb
from stacklab.combinat import StackVariant
from stacklab.genfun import Variant, series

FAMILIES = [
    ("stacks", StackVariant.STACK, Variant.S),
    ("receding", StackVariant.RECEDING, Variant.G),
    ("shifted", StackVariant.SHIFTED, Variant.H),
    ("strict", StackVariant.STRICT, Variant.D),
    ("semi-strict", StackVariant.SEMISTRICT, Variant.DM),
]


def show(n):
    print(f"size {n}")
    for label, sv, v in FAMILIES:
        seqs = cb.enumerate_stacks(sv, n)
        listing = " ".join(s.format() for s in seqs)
        print(f"  {label:12s} {len(seqs):3d}   series: {series(v, n)[n]:3d}   {listing}")
    for label, sv, v in FAMILIES[:3]:
        marked = cb.count_with_summits(sv, n)
        vs = Variant(v.value + "s")
        print(f"  {label:12s} with summits: {marked} (series {series(vs, n)[n]})")
    print()


if __name__ == "__main__":
    show(4)
    show(5)

    # brute force gets slow quickly; the series does not
    N = 2000
    s = series(Variant.S, N)
    print(f"s({N}) has {len(str(s[N]))} digits")
    print(f"s(100) = {s[100]}")
