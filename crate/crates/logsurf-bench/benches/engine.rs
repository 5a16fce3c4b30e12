//! Timings of the core engine on representative configurations.

use criterion::{criterion_group, criterion_main, Criterion};
use logsurf::coefficients::coefficients_linear;
use logsurf::graph::{chain, fork};
use logsurf::invariants::discriminant;
use logsurf::mmp::{almost_minimalize, enumerate_runs, Kind};
use logsurf::rational::int;
use logsurf::{rat, DualGraph, Edge, LogSurfaceModel, Vertex};
use std::hint::black_box;

fn in_boundary(g: DualGraph) -> DualGraph {
    g.map_vertices(|_, v| v.clone().with_boundary(int(1)))
        .expect("relabelled graph")
}

/// A contracted chain `[3,2,...,2,3]` of the given length inside `D`.
fn long_rod(len: usize) -> LogSurfaceModel {
    let mut weights = vec![2; len];
    weights[0] = 3;
    weights[len - 1] = 3;
    let g = in_boundary(chain(&weights));
    LogSurfaceModel::new(g.clone(), g.all(), Some(rat(2, 3))).expect("negative definite")
}

/// The cuspidal cubic: a (-1)-curve meeting [2], [3] and the cubic itself.
fn cuspidal_cubic(r: (i64, i64)) -> LogSurfaceModel {
    let vertices = [("E1", 2), ("L", 1), ("E2", 3), ("C", -3)]
        .into_iter()
        .map(|(id, w)| Vertex::new(id, w).with_boundary(int(1)))
        .collect();
    let edges = vec![
        Edge::new("E1", "L", 1),
        Edge::new("L", "E2", 1),
        Edge::new("L", "C", 1),
    ];
    let g = DualGraph::new(vertices, edges).expect("valid graph");
    LogSurfaceModel::new(g, Default::default(), Some(rat(r.0, r.1))).expect("smooth model")
}

/// A smooth comb: a spine of (-1)-curves, each carrying a boundary tooth.
fn comb(teeth: usize) -> LogSurfaceModel {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for i in 0..teeth {
        vertices.push(Vertex::new(format!("S{i}"), 1));
        vertices.push(Vertex::new(format!("T{i}"), 3).with_boundary(int(1)));
        edges.push(Edge::new(format!("S{i}"), format!("T{i}"), 1));
        if i > 0 {
            edges.push(Edge::new(format!("T{}", i - 1), format!("S{i}"), 1));
        }
    }
    LogSurfaceModel::smooth(DualGraph::new(vertices, edges).expect("valid graph"))
}

fn engine(c: &mut Criterion) {
    let rod = long_rod(40);
    c.bench_function("coefficients of a 40-curve rod", |b| {
        b.iter(|| coefficients_linear(black_box(&rod)))
    });

    let e8 = fork(2, [&[2], &[2, 2], &[2, 2, 2, 2]]);
    let all = e8.all();
    c.bench_function("discriminant of E8", |b| {
        b.iter(|| discriminant(black_box(&e8), black_box(&all)))
    });

    let cubic = cuspidal_cubic((3, 4));
    c.bench_function("almost minimalization of the cuspidal cubic", |b| {
        b.iter(|| almost_minimalize(black_box(&cubic), Kind::First))
    });

    let comb = comb(4);
    c.bench_function("run enumeration on a comb of 8 curves", |b| {
        b.iter(|| enumerate_runs(black_box(&comb), Kind::Second, None))
    });
}

criterion_group!(benches, engine);
criterion_main!(benches);
