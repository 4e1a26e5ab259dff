use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use shortk::convex::convex_kmst;
use shortk::exact::{sp_kmst, tree_kmst};
use shortk::gen::{gen_fig2, gen_fig4, HuPreset};
use shortk::merge_collect::merge_collect;
use shortk::plane::plane_kmst;
use shortk::short_trees::{gomory_hu, min_comm_tree_two_r_zero_c, min_diameter_ktree};
use shortk::Metric;
use shortk_bench as fx;

fn merge_collect_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("merge_collect");
    for n in [30, 60, 120] {
        let g = fx::graph(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| merge_collect(g, n / 3).unwrap()));
    }
    group.finish();
}

fn plane_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("plane_kmst");
    group.sample_size(20);
    for n in [20, 40] {
        for metric in [Metric::Euclidean, Metric::Rectilinear] {
            let ps = fx::points(n, metric);
            let id = BenchmarkId::new(metric.name(), n);
            group.bench_with_input(id, &ps, |b, ps| b.iter(|| plane_kmst(ps, 9).unwrap()));
        }
    }
    group.finish();
}

fn exact_bench(c: &mut Criterion) {
    let t = fx::tree(200);
    c.bench_function("tree_kmst/200", |b| b.iter(|| tree_kmst(&t, 50).unwrap()));
    let sp = fx::sp(120);
    c.bench_function("sp_kmst/120", |b| b.iter(|| sp_kmst(&sp, 30).unwrap()));
    let ps = fx::convex(24);
    c.bench_function("convex_kmst/24", |b| b.iter(|| convex_kmst(&ps, 8).unwrap()));
}

fn short_tree_bench(c: &mut Criterion) {
    let g = fx::graph(40);
    c.bench_function("min_diameter_ktree/40", |b| b.iter(|| min_diameter_ktree(&g, 10).unwrap()));
    c.bench_function("gomory_hu/40", |b| b.iter(|| gomory_hu(&g).unwrap()));
    let inst = fx::hu(30, HuPreset::Row3);
    c.bench_function("min_comm_tree/30", |b| b.iter(|| min_comm_tree_two_r_zero_c(&inst).unwrap()));
}

fn family_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("families");
    group.sample_size(10);
    for k in [16, 36] {
        let fam = gen_fig2(k, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::new("fig2_merge_collect", k), &fam, |b, f| {
            b.iter(|| black_box(merge_collect(&f.graph, k).unwrap().cost))
        });
        let fam = gen_fig4(k, 1.0, Metric::Euclidean, 7).unwrap();
        group.bench_with_input(BenchmarkId::new("fig4_plane", k), &fam, |b, f| {
            b.iter(|| black_box(plane_kmst(&f.points, k).unwrap().cost))
        });
    }
    group.finish();
}

criterion_group!(benches, merge_collect_bench, plane_bench, exact_bench, short_tree_bench, family_bench);
criterion_main!(benches);
