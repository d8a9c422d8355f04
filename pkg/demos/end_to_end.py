"""Everything on one small instance: generate, augment three ways, verify,
and compare against the exact solver.
"""
import random

from treeaug import apps, fast, generators, oracle, unweighted, weighted
from treeaug.graph import augmentation_covers

g, tree = generators.gen_random_2ec(12, 6, seed=42, wmin=1, wmax=30)
print("graph: n=%d m=%d tree height %d" % (g.n, g.m, tree.height))

aug, cover, m = unweighted.augment_unweighted(g, tree)
opt = oracle.opt_augmentation(g, tree, weighted=False)
print("unweighted: %d edges (optimum %d), %d rounds, covers=%s"
      % (len(aug.edge_ids), opt.weight, m.rounds,
         augmentation_covers(g, tree, aug.edge_ids)))

waug, _, costs, m = weighted.augment_weighted(g, tree)
wopt = oracle.opt_augmentation(g, tree, weighted=True)
print("weighted:   weight %d (optimum %d), cost sum %d"
      % (waug.weight, wopt.weight, sum(costs.values())))

faug, fcover, m = fast.augment_fast(g, tree)
print("fast:       %d edges, %d fragments, %d rounds"
      % (len(faug.edge_ids), faug.meta["fragments"], m.rounds))

edges, _, _, m = apps.two_ecss_unweighted(g)
print("2-ecss:     %d edges (<= 2(n-1) = %d)" % (len(edges), 2 * (g.n - 1)))

verdict, bridges, m = apps.verify_2ec_distributed(g)
print("verify:     2-edge-connected=%s bridges=%s" % (verdict, bridges))
