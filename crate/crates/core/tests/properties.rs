mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use shortk::exact::{sp_kmst, tree_kmst, two_weight_kmst};
use shortk::gen::{random_hu, random_points, random_sp_tree, random_tree, random_two_weight, HuPreset};
use shortk::graph::{metric_closure, mst, DisjointSets};
use shortk::merge_collect::{ceil_sqrt, k_steiner, merge_collect, merge_step, ClusterState};
use shortk::oracles::{enumerate_spanning_trees, oracle_kmst};
use shortk::plane::{circle_filter, grid_select, plane_kmst_detailed, CellGrid};
use shortk::short_trees::{evaluate_hu, min_diameter_ktree};
use shortk::tree::tree_metrics;
use shortk::{Metric, WeightedGraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mst_is_the_cheapest_spanning_tree(seed in any::<u64>()) {
        let g = graph(seed, 1, 7, 9);
        let best = enumerate_spanning_trees(&g, &budget()).unwrap()
            .iter().map(|t| t.iter().map(|e| e.w).sum::<f64>()).fold(f64::INFINITY, f64::min);
        prop_assert!(close(mst(&g).unwrap().cost, best));
    }

    #[test]
    fn closure_obeys_triangle_inequality(seed in any::<u64>()) {
        let g = graph(seed, 2, 10, 9);
        let c = metric_closure(&g, None).unwrap();
        let n = c.graph.vertex_count();
        let w = |a: usize, b: usize| if a == b { 0.0 } else { c.graph.weight(a, b).unwrap() };
        for a in 0..n {
            for b in 0..n {
                for m in 0..n {
                    prop_assert!(w(a, b) <= w(a, m) + w(m, b));
                }
            }
        }
        for e in g.edges() {
            prop_assert!(c.graph.weight(e.u, e.v).unwrap() <= e.w);
        }
    }

    #[test]
    fn solver_outputs_are_valid_trees(seed in any::<u64>(), k in 1usize..8) {
        let g = graph(seed, 8, 12, 9);
        for t in [merge_collect(&g, k).unwrap(), min_diameter_ktree(&g, k).unwrap().tree] {
            t.check_against(&g).unwrap();
            prop_assert_eq!(t.size(), k);
            let m = tree_metrics(&t).unwrap();
            prop_assert!(close(m.cost, t.cost) && close(m.diameter, t.diameter));
        }
    }

    #[test]
    fn merging_stops_below_twice_k(seed in any::<u64>(), k in 1usize..10) {
        let g = graph(seed, 10, 14, 9);
        let mut s = ClusterState::singletons(g.vertex_count());
        while s.largest() < k {
            s = merge_step(&s, &g).unwrap();
        }
        prop_assert!(s.largest() < 2 * k.max(1));
        for (c, size) in s.clusters() {
            prop_assert_eq!(s.tree(c).len() + 1, size);
            for e in s.tree(c) {
                prop_assert_eq!(g.weight(e.u, e.v), Some(e.w));
            }
        }
    }

    #[test]
    fn k_steiner_ratio(seed in any::<u64>()) {
        let g = graph(seed, 6, 10, 9);
        let mut r = seeded(seed);
        let mut terms: Vec<usize> = (0..g.vertex_count()).collect();
        rand::seq::SliceRandom::shuffle(terms.as_mut_slice(), &mut r);
        terms.truncate(5);
        let got = k_steiner(&g, &terms, 3).unwrap();
        got.check_against(&g).unwrap();
        prop_assert!(got.vertices.iter().filter(|v| terms.contains(v)).count() >= 3);
        let opt = oracle_kmst(&g, 3, Some(&terms), &budget()).unwrap().cost;
        prop_assert!(within(got.cost, 4.0 * 3f64.sqrt() * opt));
    }

    #[test]
    fn grid_selection_uses_fewest_cells(seed in any::<u64>(), k in 2usize..9) {
        let mut r = seeded(seed);
        let n = r.gen_range(k..=14);
        let ps = random_points(&mut r, n, Metric::Euclidean).unwrap();
        for i in 0..n {
            for j in i + 1..n {
                let w = circle_filter(&ps, i, j);
                if w.contained.len() < k {
                    continue;
                }
                let (chosen, g) = grid_select(&w, &ps, k).unwrap();
                prop_assert_eq!(chosen.len(), k);
                let mut counts: Vec<usize> = CellGrid::new(&w, &ps, k).cells.iter().map(Vec::len).collect();
                counts.sort_unstable_by(|a, b| b.cmp(a));
                prop_assert!(counts[..g - 1].iter().sum::<usize>() < k);
            }
        }
    }

    #[test]
    fn plane_outputs_respect_metrics(seed in any::<u64>(), k in 1usize..8) {
        let mut r = seeded(seed);
        let n = r.gen_range(k..=11);
        let ps = random_points(&mut r, n, Metric::Euclidean).unwrap();
        let res = plane_kmst_detailed(&ps, k).unwrap();
        let t = &res.tree;
        prop_assert!(ps.length_under(t, Metric::Rectilinear) >= ps.length_under(t, Metric::Euclidean));
        let opt = oracle_kmst(&ps.complete_graph(), k, None, &budget()).unwrap();
        let (span, _, _) = ps.euclidean_diameter(&opt.vertices);
        prop_assert!(within(span, opt.cost));
        prop_assert!(res.cells_used <= ceil_sqrt(k) * ceil_sqrt(k));
    }

    #[test]
    fn decomposable_solvers_match_oracle(seed in any::<u64>()) {
        let mut r = seeded(seed);
        let b = budget();
        let m = r.gen_range(1..=10);
        let t = random_sp_tree(&mut r, m, 9).unwrap();
        let g = t.graph().unwrap();
        let n = r.gen_range(1..=11);
        let tree = random_tree(&mut r, n, 9).unwrap();
        for k in 1..=g.vertex_count() {
            prop_assert!(close(sp_kmst(&t, k).unwrap().cost, oracle_kmst(&g, k, None, &b).unwrap().cost));
        }
        for k in 1..=n {
            prop_assert!(close(tree_kmst(&tree, k).unwrap().cost, oracle_kmst(&tree, k, None, &b).unwrap().cost));
        }
    }

    #[test]
    fn two_weight_cost_formula(seed in any::<u64>()) {
        let mut r = seeded(seed);
        let n = r.gen_range(2..=10);
        let density = r.gen_range(0.1..0.6);
        let g = random_two_weight(&mut r, n, density, 9).unwrap();
        let ws = g.distinct_weights();
        let (w1, w2) = (ws[0], *ws.last().unwrap());
        let mut dsu = DisjointSets::new(n);
        for e in g.edges().iter().filter(|e| e.w == w1) {
            dsu.union(e.u, e.v);
        }
        let mut sizes = vec![0usize; n];
        for v in 0..n {
            sizes[dsu.find(v)] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        for k in 1..=n {
            let mut total = 0;
            let r_min = sizes.iter().take_while(|&&s| { let before = total; total += s; before < k }).count();
            let want = (k - r_min) as f64 * w1 + (r_min - 1) as f64 * w2;
            prop_assert!(close(two_weight_kmst(&g, k).unwrap().cost, want));
        }
    }

    #[test]
    fn hu_costs_match_path_sums(seed in any::<u64>()) {
        let mut r = seeded(seed);
        let n = r.gen_range(1..=6);
        let inst = random_hu(&mut r, n, HuPreset::Row1).unwrap();
        let tree = random_tree(&mut r, n, 1).unwrap();
        let pairs: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.u, e.v)).collect();
        let t = inst.tree(pairs, "t").unwrap();
        let c = evaluate_hu(&t, &inst).unwrap();
        // tree distances by Floyd-Warshall over the tree edges
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for e in &t.edges {
            d[e.u][e.v] = inst.d.get(e.u, e.v);
            d[e.v][e.u] = inst.d.get(e.u, e.v);
        }
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    d[a][b] = d[a][b].min(d[a][m] + d[m][b]);
                }
            }
        }
        let (mut comm, mut diam) = (0.0, 0.0f64);
        for a in 0..n {
            for b in a + 1..n {
                comm += inst.r.get(a, b) * d[a][b];
                diam = diam.max(inst.r.get(a, b) * d[a][b]);
            }
        }
        prop_assert!(close(c.communication, comm) && close(c.diameter, diam));
    }

    #[test]
    fn oracle_is_monotone_in_k_and_edges(seed in any::<u64>()) {
        let g = graph(seed, 3, 9, 9);
        let b = budget();
        let costs: Vec<f64> = (1..=g.vertex_count()).map(|k| oracle_kmst(&g, k, None, &b).unwrap().cost).collect();
        prop_assert!(costs.windows(2).all(|w| w[0] <= w[1]));
        let n = g.vertex_count();
        let mut more: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        if let Some((a, c)) = (0..n).flat_map(|a| (a + 1..n).map(move |c| (a, c))).find(|&(a, c)| !g.has_edge(a, c)) {
            more.push((a, c, 3.0));
        }
        let bigger = WeightedGraph::new(n, more).unwrap();
        for k in 1..=n {
            prop_assert!(oracle_kmst(&bigger, k, None, &b).unwrap().cost <= costs[k - 1]);
        }
    }
}
