"""Fast fragment-based augmentation vs the plain O(h) scan on a tall,
small-diameter instance.

The disjointness gadget with column length 2^p has height about 2^p but
graph diameter O(p), which is exactly where fragmenting the tree pays:
the plain scan needs Theta(h) rounds, the fast one O(D + sqrt(n)).
"""
import math
import sys
import time

from treeaug import fast, generators, unweighted
from treeaug.graph import eccentricity

p = int(sys.argv[1]) if len(sys.argv) > 1 else 8

g, tree = generators.gen_lb_disjointness(2, 2, p, [1, 0], [0, 1],
                                         weighted=False)
n = g.n
print("n=%d height=%d sqrt(n)=%d" % (n, tree.height, math.isqrt(n)))

t = time.time()
res = fast.fast_cover_distributed(g, tree)
print("fast : %6d rounds, %3d fragments  (%.1fs)"
      % (res["metrics"].rounds, len(res["frag_roots"]), time.time() - t))

t = time.time()
_, _, m = unweighted.augment_unweighted(g, tree)
print("plain: %6d rounds                 (%.1fs)" % (m.rounds, time.time() - t))

d = 2 * eccentricity(g, 0)
limit = 20 * (d + math.isqrt(n))
print("fast limit 20(D+sqrt n) = %d, speedup x%.1f"
      % (limit, m.rounds / res["metrics"].rounds))
