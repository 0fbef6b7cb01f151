"""Partitions, Frobenius symbols and receding stacks with a marked summit.

Reading a Ferrers diagram along its diagonals gives a receding stack whose
marked part is the main diagonal. Frobenius symbols with a 0 in the top row
correspond to stacks whose marked summit beats every part after it.
"""

from stacklab import combinat as cb
from stacklab.combinat import Partition
from stacklab.genfun import Variant, series


def ferrers(p):
    return "\n".join("    " + "*" * row for row in p.parts)


p = Partition((4, 4, 3, 3, 1))
f = cb.partition_to_frobenius(p)
seq, mark = cb.partition_to_receding_summit(p)
print(f"partition {p}")
print(ferrers(p))
print(f"Frobenius symbol ({f}), size {f.size}")
print(f"diagonal reading {seq.format(mark)}")
print(f"back again: {cb.receding_summit_to_partition(seq, mark)}")
print(f"zero in top row: {cb.has_zero_top_row(f)}, summit beats the tail: {cb.summit_dominates_b(seq, mark)}")
print()

print("all partitions of 6:")
for q in cb.partitions(6):
    fq = cb.partition_to_frobenius(q)
    sq, mq = cb.partition_to_receding_summit(q)
    flag = "*" if cb.has_zero_top_row(fq) else " "
    print(f"  {flag} {str(q):12s} ({fq})".ljust(32) + sq.format(mq))
print("  (* marks a 0 in the top row)")
print()

g = series(Variant.G, 20)
print(" n   p(n)  zero-row  g(n)")
for n in range(1, 21):
    parts = cb.partitions(n)
    zero = sum(cb.has_zero_top_row(cb.partition_to_frobenius(q)) for q in parts)
    print(f"{n:2d} {len(parts):6d} {zero:9d} {g[n]:5d}")
