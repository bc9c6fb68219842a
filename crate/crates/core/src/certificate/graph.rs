//! Directed graph of the type-1 rows: an edge `i → σ(i)` for every row
//! `3x_i ± x_σ(i) = 0`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;

use super::system::{EquationKind, EquationSystem};
use super::CertificateError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    InDegree,
    OutDegree,
    DirectedCycle,
    UndirectedCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphViolation {
    pub kind: ViolationKind,
    /// The offending vertex, or the vertices of the cycle in order.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Decomposition {
    /// Vertex-disjoint directed paths, each listed as its vertex sequence.
    Paths(Vec<Vec<usize>>),
    Violations(Vec<GraphViolation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Type1Graph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub decomposition: Decomposition,
}

impl Type1Graph {
    pub fn from_edges(edges: &[(usize, usize)]) -> Self {
        let vertices: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let decomposition = decompose(edges);
        Type1Graph {
            vertices: vertices.into_iter().collect(),
            edges: edges.to_vec(),
            decomposition,
        }
    }

    pub fn paths(&self) -> Option<&[Vec<usize>]> {
        match &self.decomposition {
            Decomposition::Paths(p) => Some(p),
            Decomposition::Violations(_) => None,
        }
    }

    pub fn violations(&self) -> &[GraphViolation] {
        match &self.decomposition {
            Decomposition::Paths(_) => &[],
            Decomposition::Violations(v) => v,
        }
    }

    /// Number of paths `t`, when the decomposition exists.
    pub fn path_count(&self) -> Option<usize> {
        self.paths().map(<[_]>::len)
    }
}

fn decompose(edges: &[(usize, usize)]) -> Decomposition {
    let mut violations = Vec::new();
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut inc: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        out.entry(a).or_default().push(b);
        inc.entry(b).or_default().push(a);
    }
    for (&v, targets) in &out {
        if targets.len() > 1 {
            violations.push(GraphViolation {
                kind: ViolationKind::OutDegree,
                vertices: vec![v],
            });
        }
    }
    for (&v, sources) in &inc {
        if sources.len() > 1 {
            violations.push(GraphViolation {
                kind: ViolationKind::InDegree,
                vertices: vec![v],
            });
        }
    }
    violations.extend(directed_cycles(&out));
    if violations.is_empty() {
        violations.extend(undirected_cycle(edges));
    }
    if !violations.is_empty() {
        return Decomposition::Violations(violations);
    }

    // in/out-degree ≤ 1 and acyclic: follow successors from every source
    let mut paths = Vec::new();
    for &start in out.keys() {
        if inc.contains_key(&start) {
            continue;
        }
        let mut path = vec![start];
        let mut v = start;
        while let Some(next) = out.get(&v) {
            v = next[0];
            path.push(v);
        }
        paths.push(path);
    }
    Decomposition::Paths(paths)
}

/// Each directed cycle once, reported from its smallest vertex.
fn directed_cycles(out: &BTreeMap<usize, Vec<usize>>) -> Vec<GraphViolation> {
    let mut found = Vec::new();
    let mut seen_cycles = BTreeSet::new();
    for &start in out.keys() {
        // walk the first-successor chain; cycles reachable that way are found
        let mut order: Vec<usize> = Vec::new();
        let mut pos: BTreeMap<usize, usize> = BTreeMap::new();
        let mut v = start;
        loop {
            if let Some(&k) = pos.get(&v) {
                let cycle: Vec<usize> = order[k..].to_vec();
                let min_at = (0..cycle.len()).min_by_key(|&j| cycle[j]).unwrap();
                let mut rotated = cycle[min_at..].to_vec();
                rotated.extend_from_slice(&cycle[..min_at]);
                if seen_cycles.insert(rotated.clone()) {
                    found.push(GraphViolation {
                        kind: ViolationKind::DirectedCycle,
                        vertices: rotated,
                    });
                }
                break;
            }
            pos.insert(v, order.len());
            order.push(v);
            match out.get(&v) {
                Some(next) => v = next[0],
                None => break,
            }
        }
    }
    found
}

/// A cycle in the underlying undirected multigraph, via union–find.
fn undirected_cycle(edges: &[(usize, usize)]) -> Option<GraphViolation> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            return v;
        }
        let root = find(parent, p);
        parent.insert(v, root);
        root
    }
    for &(a, b) in edges {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra == rb {
            return Some(GraphViolation {
                kind: ViolationKind::UndirectedCycle,
                vertices: vec![a, b],
            });
        }
        parent.insert(ra, rb);
    }
    None
}

pub fn type1_edges(sys: &EquationSystem) -> Vec<(usize, usize)> {
    sys.equations
        .iter()
        .filter(|e| e.kind == EquationKind::Type1)
        .map(|e| (e.row, e.sigma))
        .collect()
}

/// Builds the type-1 graph of `sys`. When `3^m ≤ p` the graph must split
/// into vertex-disjoint directed paths, so any violation is an error; for
/// larger `m` violations are only reported.
pub fn type1_graph(sys: &EquationSystem) -> Result<Type1Graph, CertificateError> {
    let graph = Type1Graph::from_edges(&type1_edges(sys));
    let small = BigUint::from(3u32).pow(sys.m() as u32) <= BigUint::from(sys.p.get());
    if small && !graph.violations().is_empty() {
        return Err(CertificateError::LemmaViolation(
            graph.violations().to_vec(),
        ));
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_one_path() {
        let g = Type1Graph::from_edges(&[(1, 2), (2, 3)]);
        assert_eq!(g.paths().unwrap(), &[vec![1, 2, 3]]);
        assert_eq!(g.path_count(), Some(1));
    }

    #[test]
    fn two_paths() {
        let g = Type1Graph::from_edges(&[(4, 1), (2, 3), (1, 5)]);
        assert_eq!(g.paths().unwrap(), &[vec![2, 3], vec![4, 1, 5]]);
    }

    #[test]
    fn in_degree_violation() {
        let g = Type1Graph::from_edges(&[(1, 3), (2, 3)]);
        assert_eq!(
            g.violations(),
            &[GraphViolation {
                kind: ViolationKind::InDegree,
                vertices: vec![3]
            }]
        );
    }

    #[test]
    fn directed_two_cycle() {
        let g = Type1Graph::from_edges(&[(1, 2), (2, 1)]);
        assert_eq!(
            g.violations(),
            &[GraphViolation {
                kind: ViolationKind::DirectedCycle,
                vertices: vec![1, 2]
            }]
        );
    }

    #[test]
    fn longer_cycle_reported_once() {
        let g = Type1Graph::from_edges(&[(3, 1), (1, 2), (2, 3), (4, 1)]);
        let kinds: Vec<ViolationKind> = g.violations().iter().map(|v| v.kind).collect();
        assert_eq!(
            kinds,
            [ViolationKind::InDegree, ViolationKind::DirectedCycle]
        );
        assert_eq!(g.violations()[1].vertices, vec![1, 2, 3]);
    }

    #[test]
    fn out_degree_violation() {
        let g = Type1Graph::from_edges(&[(1, 2), (1, 3)]);
        assert_eq!(g.violations()[0].kind, ViolationKind::OutDegree);
    }

    #[test]
    fn empty_graph() {
        let g = Type1Graph::from_edges(&[]);
        assert_eq!(g.path_count(), Some(0));
    }
}
