//! Shapes of reduced subdivisors: tips, twigs, rods, segments, forks, benches,
//! half-benches, cycles and superfluous (-1)-curves.
//!
//! All notions are relative to a reduced divisor `D` given as a vertex set.
//! Twigs that are not rods are ordered starting at their tip of `D`. Rods are
//! ordered from the end with the lexicographically smaller id.

use crate::graph::{DualGraph, VertexSet};

/// `beta_D(v)`: multiplicity of contact between `v` and the rest of `D`.
pub fn beta(g: &DualGraph, d: &VertexSet, v: usize) -> u32 {
    g.neighbors(v)
        .filter(|(j, _)| *j != v && d.contains(j))
        .map(|(_, m)| m)
        .sum()
}

/// Smooth rational with weight at least 2.
pub fn is_admissible_vertex(g: &DualGraph, v: usize) -> bool {
    g.vertex(v).is_rational() && g.weight(v) >= 2
}

pub fn all_admissible(g: &DualGraph, vs: impl IntoIterator<Item = usize>) -> bool {
    vs.into_iter().all(|v| is_admissible_vertex(g, v))
}

pub fn all_weight_two(g: &DualGraph, vs: impl IntoIterator<Item = usize>) -> bool {
    vs.into_iter()
        .all(|v| g.vertex(v).is_rational() && g.weight(v) == 2)
}

/// Order of a chain: a connected path with simple edges. Starts at the end with
/// the smaller id. `None` if `set` is not a chain.
pub fn chain_order(g: &DualGraph, set: &VertexSet) -> Option<Vec<usize>> {
    if set.is_empty() || !g.is_tree(set) {
        return None;
    }
    if set.iter().any(|&v| g.degree_in(v, set) > 2) {
        return None;
    }
    let ends: Vec<usize> = set
        .iter()
        .copied()
        .filter(|&v| g.degree_in(v, set) <= 1)
        .collect();
    let start = *ends.iter().min_by_key(|&&v| g.id(v))?;
    Some(walk_chain(g, set, start))
}

fn walk_chain(g: &DualGraph, set: &VertexSet, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    loop {
        let next = g
            .neighbors(cur)
            .map(|(j, _)| j)
            .find(|j| set.contains(j) && Some(*j) != prev && *j != cur);
        match next {
            Some(n) if !order.contains(&n) => {
                order.push(n);
                prev = Some(cur);
                cur = n;
            }
            _ => return order,
        }
    }
}

/// Whether `order` lists the vertices of a chain consecutively.
pub fn is_ordered_chain(g: &DualGraph, order: &[usize]) -> bool {
    let set: VertexSet = order.iter().copied().collect();
    set.len() == order.len()
        && chain_order(g, &set).is_some()
        && order.windows(2).all(|w| g.multiplicity(w[0], w[1]) == 1)
}

/// A rational chain `T <= D` whose components all have `beta_D <= 2`.
fn is_nonbranching_rational_chain(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> bool {
    t.is_subset(d)
        && chain_order(g, t).is_some()
        && t.iter()
            .all(|&v| g.vertex(v).is_rational() && beta(g, d, v) <= 2)
}

pub fn is_twig(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> bool {
    is_nonbranching_rational_chain(g, d, t) && t.iter().any(|&v| beta(g, d, v) <= 1)
}

pub fn is_segment(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> bool {
    is_nonbranching_rational_chain(g, d, t) && t.iter().all(|&v| beta(g, d, v) >= 2)
}

/// A twig which is a whole connected component of `D`.
pub fn is_rod(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> bool {
    is_twig(g, d, t) && g.branching_in(t, d) == 0
}

/// Orders a twig of `D` that is not a rod so that it starts at its tip of `D`.
pub fn twig_order(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> Option<Vec<usize>> {
    if !is_twig(g, d, t) {
        return None;
    }
    let order = chain_order(g, t)?;
    if is_rod(g, d, t) {
        return Some(order);
    }
    if beta(g, d, order[0]) <= 1 {
        Some(order)
    } else {
        Some(order.into_iter().rev().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fork {
    pub center: usize,
    /// Maximal twigs, each ordered from its tip towards the center.
    pub twigs: [Vec<usize>; 3],
}

impl Fork {
    pub fn vertices(&self) -> VertexSet {
        let mut s: VertexSet = self.twigs.iter().flatten().copied().collect();
        s.insert(self.center);
        s
    }
}

/// Reads `set` as a rational fork: a tree with a unique branching vertex of
/// degree three. Twigs are sorted by the id of their tip.
pub fn as_fork(g: &DualGraph, set: &VertexSet) -> Option<Fork> {
    if !g.is_tree(set) || set.iter().any(|&v| !g.vertex(v).is_rational()) {
        return None;
    }
    let branching: Vec<usize> = set
        .iter()
        .copied()
        .filter(|&v| g.degree_in(v, set) >= 3)
        .collect();
    let [center] = branching[..] else { return None };
    if g.degree_in(center, set) != 3 {
        return None;
    }
    let mut twigs: Vec<Vec<usize>> = g
        .neighbors(center)
        .filter(|(j, _)| set.contains(j))
        .map(|(start, _)| {
            let mut rest = set.clone();
            rest.remove(&center);
            let mut arm = walk_chain(g, &rest, start);
            arm.reverse();
            arm
        })
        .collect();
    twigs.sort_by(|a, b| g.id(a[0]).cmp(g.id(b[0])));
    let twigs: [Vec<usize>; 3] = twigs.try_into().ok()?;
    Some(Fork { center, twigs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bench {
    pub central: Vec<usize>,
    /// The four `[2]` leaves, two at each end of the central chain.
    pub leaves: [usize; 4],
}

/// Reads `set` as a bench: a rational tree made of a central chain and four
/// `[2]` leaves, two at each end.
pub fn as_bench(g: &DualGraph, set: &VertexSet) -> Option<Bench> {
    if !g.is_tree(set) || set.len() < 5 || set.iter().any(|&v| !g.vertex(v).is_rational()) {
        return None;
    }
    let leaves: VertexSet = set
        .iter()
        .copied()
        .filter(|&v| g.degree_in(v, set) == 1)
        .collect();
    if leaves.len() != 4 || !all_weight_two(g, leaves.iter().copied()) {
        return None;
    }
    let central: VertexSet = set.difference(&leaves).copied().collect();
    let order = chain_order(g, &central)?;
    let (c1, cn) = (order[0], order[order.len() - 1]);
    let leaf_count = |c: usize| g.neighbors(c).filter(|(j, _)| leaves.contains(j)).count();
    let ok = if order.len() == 1 {
        leaf_count(c1) == 4
    } else {
        leaf_count(c1) == 2 && leaf_count(cn) == 2
    };
    if !ok {
        return None;
    }
    let mut ls: Vec<usize> = leaves.iter().copied().collect();
    ls.sort_by_key(|&l| !g.neighbors(l).any(|(j, _)| j == c1));
    Some(Bench {
        central: order,
        leaves: ls.try_into().ok()?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfBench {
    /// `C_1, ..., C_n`; the rest of `D` meets only `C_n`, once.
    pub central: Vec<usize>,
    pub leaves: [usize; 2],
}

/// Reads `t <= D` as a half-bench of `D`.
pub fn as_half_bench(g: &DualGraph, d: &VertexSet, t: &VertexSet) -> Option<HalfBench> {
    if !t.is_subset(d)
        || !g.is_tree(t)
        || t.len() < 3
        || t.iter().any(|&v| !g.vertex(v).is_rational())
    {
        return None;
    }
    if g.branching_in(t, d) != 1 {
        return None;
    }
    let attach = t
        .iter()
        .copied()
        .find(|&v| beta(g, d, v) > g.degree_in(v, t))?;
    // The leaves are the degree-one vertices of `t` other than the attachment point.
    let leaves: Vec<usize> = t
        .iter()
        .copied()
        .filter(|&v| v != attach && g.degree_in(v, t) == 1)
        .collect();
    let [a, b] = leaves[..] else { return None };
    if !all_weight_two(g, [a, b]) {
        return None;
    }
    let c1 = g.neighbors(a).map(|(j, _)| j).find(|j| t.contains(j))?;
    if !g.neighbors(b).any(|(j, _)| j == c1) {
        return None;
    }
    let mut central_set = t.clone();
    central_set.remove(&a);
    central_set.remove(&b);
    let order = chain_order(g, &central_set)?;
    let oriented = if order[0] == c1 {
        order
    } else if order[order.len() - 1] == c1 {
        order.into_iter().rev().collect()
    } else {
        return None;
    };
    if oriented[oriented.len() - 1] != attach {
        return None;
    }
    Some(HalfBench {
        central: oriented,
        leaves: [a, b],
    })
}

/// A connected set in which every vertex meets the others with total
/// multiplicity two (a circular subdivisor).
pub fn is_cycle(g: &DualGraph, set: &VertexSet) -> bool {
    set.len() >= 2 && g.is_connected(set) && set.iter().all(|&v| g.degree_in(v, set) == 2)
}

/// A `(-1)`-curve of `D` meeting at most two other components of `D`, each at
/// most once.
pub fn is_superfluous(g: &DualGraph, d: &VertexSet, v: usize) -> bool {
    let contacts: Vec<u32> = g
        .neighbors(v)
        .filter(|(j, _)| d.contains(j))
        .map(|(_, m)| m)
        .collect();
    d.contains(&v)
        && g.vertex(v).is_rational()
        && g.weight(v) == 1
        && contacts.len() <= 2
        && contacts.iter().all(|&m| m == 1)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapeReport {
    pub tips: Vec<usize>,
    pub branching: Vec<usize>,
    /// Maximal twigs that are not rods, ordered from the tip of `D`.
    pub twigs: Vec<Vec<usize>>,
    pub rods: Vec<Vec<usize>>,
    /// Maximal segments: chains of non-tip, non-branching rational components
    /// that lie in no twig and are not whole cycles.
    pub segments: Vec<Vec<usize>>,
    pub forks: Vec<Fork>,
    pub benches: Vec<Bench>,
    pub half_benches: Vec<HalfBench>,
    pub cycles: Vec<VertexSet>,
    pub superfluous: Vec<usize>,
}

/// Maximal twig of `D` starting at the tip `t`.
fn maximal_twig_from(g: &DualGraph, d: &VertexSet, t: usize) -> Vec<usize> {
    let mut order = vec![t];
    let mut prev: Option<usize> = None;
    let mut cur = t;
    loop {
        let nexts: Vec<(usize, u32)> = g
            .neighbors(cur)
            .filter(|(j, _)| d.contains(j) && Some(*j) != prev)
            .collect();
        let [(next, 1)] = nexts[..] else { return order };
        if order.contains(&next) || !g.vertex(next).is_rational() || beta(g, d, next) > 2 {
            return order;
        }
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
}

pub fn find_shapes(g: &DualGraph, d: &VertexSet) -> ShapeReport {
    let mut report = ShapeReport::default();
    for &v in d {
        let b = beta(g, d, v);
        if b <= 1 {
            report.tips.push(v);
        }
        if b >= 3 {
            report.branching.push(v);
        }
        if is_superfluous(g, d, v) {
            report.superfluous.push(v);
        }
    }

    let mut in_twig = VertexSet::new();
    for &t in &report.tips {
        if !g.vertex(t).is_rational() {
            continue;
        }
        let twig = maximal_twig_from(g, d, t);
        let set: VertexSet = twig.iter().copied().collect();
        in_twig.extend(set.iter().copied());
        if is_rod(g, d, &set) {
            let order = chain_order(g, &set).expect("rod is a chain");
            if !report.rods.contains(&order) {
                report.rods.push(order);
            }
        } else {
            report.twigs.push(twig);
        }
    }

    for comp in g.components(d) {
        if let Some(f) = as_fork(g, &comp) {
            report.forks.push(f);
        }
        if let Some(b) = as_bench(g, &comp) {
            report.benches.push(b);
        }
        if comp.iter().all(|&v| g.vertex(v).is_rational()) && is_cycle(g, &comp) {
            report.cycles.push(comp.clone());
        }
    }

    let cyc: VertexSet = report.cycles.iter().flatten().copied().collect();
    let middle: VertexSet = d
        .iter()
        .copied()
        .filter(|&v| {
            !in_twig.contains(&v)
                && !cyc.contains(&v)
                && g.vertex(v).is_rational()
                && beta(g, d, v) == 2
        })
        .collect();
    for comp in g.components(&middle) {
        if let Some(order) = chain_order(g, &comp) {
            if is_segment(g, d, &comp) {
                report.segments.push(order);
            }
        }
    }

    for &c1 in d {
        let leaves: Vec<usize> = g
            .neighbors(c1)
            .filter(|&(j, m)| {
                m == 1 && d.contains(&j) && beta(g, d, j) == 1 && all_weight_two(g, [j])
            })
            .map(|(j, _)| j)
            .collect();
        if leaves.len() != 2 || !g.vertex(c1).is_rational() {
            continue;
        }
        let mut t: VertexSet = [c1, leaves[0], leaves[1]].into();
        let mut cur = c1;
        let mut prev: Option<usize> = None;
        loop {
            if let Some(hb) = as_half_bench(g, d, &t) {
                report.half_benches.push(hb);
            }
            let nexts: Vec<usize> = g
                .neighbors(cur)
                .map(|(j, _)| j)
                .filter(|j| d.contains(j) && !t.contains(j) && Some(*j) != prev)
                .collect();
            let [next] = nexts[..] else { break };
            if g.multiplicity(cur, next) != 1 || !g.vertex(next).is_rational() {
                break;
            }
            t.insert(next);
            prev = Some(cur);
            cur = next;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{chain, fork, DualGraph, Edge, Vertex};

    #[test]
    fn rod_and_tips() {
        let g = chain(&[3, 2]);
        let r = find_shapes(&g, &g.all());
        assert_eq!(r.rods, vec![vec![0, 1]]);
        assert_eq!(r.tips, vec![0, 1]);
        assert!(r.twigs.is_empty());
    }

    #[test]
    fn fork_with_three_twigs() {
        let g = fork(2, [&[2], &[2], &[2]]);
        let r = find_shapes(&g, &g.all());
        assert_eq!(r.forks.len(), 1);
        assert_eq!(r.twigs.len(), 3);
        assert!(r.twigs.iter().all(|t| t.len() == 1));
        let f = &r.forks[0];
        assert_eq!(f.center, g.index_of("B").unwrap());
    }

    #[test]
    fn fork_twigs_are_tip_first() {
        let g = fork(2, [&[2, 3], &[2], &[2]]);
        let f = as_fork(&g, &g.all()).unwrap();
        let long = f.twigs.iter().find(|t| t.len() == 2).unwrap();
        assert_eq!(g.id(long[0]), "T1_2");
        assert_eq!(g.id(long[1]), "T1_1");
    }

    #[test]
    fn superfluous_minus_one_curve() {
        // [2,1,2] hanging off a branching curve elsewhere in D.
        let g = DualGraph::new(
            vec![
                Vertex::new("A", 2),
                Vertex::new("L", 1),
                Vertex::new("B", 2),
                Vertex::new("C", 3),
            ],
            vec![Edge::new("A", "L", 1), Edge::new("L", "B", 1)],
        )
        .unwrap();
        let r = find_shapes(&g, &g.all());
        assert_eq!(r.superfluous, vec![1]);
    }

    #[test]
    fn benches_and_half_benches() {
        let mut vs = vec![Vertex::new("C1", 3), Vertex::new("C2", 2)];
        let mut es = vec![Edge::new("C1", "C2", 1)];
        for (leaf, at) in [("L1", "C1"), ("L2", "C1"), ("L3", "C2"), ("L4", "C2")] {
            vs.push(Vertex::new(leaf, 2));
            es.push(Edge::new(at, leaf, 1));
        }
        let g = DualGraph::new(vs, es).unwrap();
        let r = find_shapes(&g, &g.all());
        assert_eq!(r.benches.len(), 1);
        assert_eq!(r.benches[0].central.len(), 2);

        // [2,b,2] with the rest of D attached at b.
        let g = DualGraph::new(
            vec![
                Vertex::new("A", 2),
                Vertex::new("B", 4),
                Vertex::new("C", 2),
                Vertex::new("R", 1),
            ],
            vec![
                Edge::new("A", "B", 1),
                Edge::new("C", "B", 1),
                Edge::new("B", "R", 1),
            ],
        )
        .unwrap();
        let d = g.all();
        let t: VertexSet = g.set_of(&["A", "B", "C"]).unwrap();
        let hb = as_half_bench(&g, &d, &t).unwrap();
        assert_eq!(hb.central, vec![1]);
        assert!(find_shapes(&g, &d).half_benches.contains(&hb));
    }

    #[test]
    fn segments_and_cycles() {
        let g = DualGraph::new(
            vec![
                Vertex::new("A", 3),
                Vertex::new("B", 2),
                Vertex::new("C", 3),
            ],
            vec![
                Edge::new("A", "B", 1),
                Edge::new("B", "C", 1),
                Edge::new("C", "A", 1),
            ],
        )
        .unwrap();
        let r = find_shapes(&g, &g.all());
        assert_eq!(r.cycles.len(), 1);
        assert!(r.segments.is_empty());
        let d: VertexSet = g.all();
        assert!(is_segment(&g, &d, &[1].into()));
        assert!(!is_twig(&g, &d, &[1].into()));
    }

    #[test]
    fn twig_orientation_starts_at_tip() {
        let g = fork(3, [&[2, 5], &[2], &[2]]);
        let d = g.all();
        let t: VertexSet = g.set_of(&["T1_1", "T1_2"]).unwrap();
        let order = twig_order(&g, &d, &t).unwrap();
        assert_eq!(g.id(order[0]), "T1_2");
    }
}
