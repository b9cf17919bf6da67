#![allow(dead_code)]

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use uno_core::reductions::SimpleGraph;
use uno_core::unograph::{canonical_form, Graph};

/// One representative per isomorphism class of graphs on `n` vertices.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = SimpleGraph::new(n, &edges).unwrap();
        if seen.insert(canonical_form(&g.to_graph())) {
            out.push(g);
        }
    }
    out
}

pub fn connected_non_trees(n: usize) -> Vec<SimpleGraph> {
    graphs_up_to_isomorphism(n).into_iter().filter(|g| g.is_connected() && !g.is_tree()).collect()
}

/// Every Hamiltonian path, each direction counted separately.
pub fn all_hamiltonian_paths(g: &SimpleGraph) -> Vec<Vec<usize>> {
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if path.len() == g.order() {
            out.push(path.clone());
            return;
        }
        for v in 0..g.order() {
            if !used[v] && path.last().is_none_or(|&u| g.has_edge(u, v)) {
                used[v] = true;
                path.push(v);
                extend(g, path, used, out);
                path.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::new(), &mut vec![false; g.order()], &mut out);
    out
}

/// Random simple cubic graph on `n` (even) vertices by the pairing model.
pub fn random_cubic<R: Rng>(rng: &mut R, n: usize) -> SimpleGraph {
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(rng);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = SimpleGraph::new(n, &edges) {
            return g;
        }
    }
}

/// Random bipartite graph with sides of the given sizes.
pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..left {
        for v in 0..right {
            if rng.gen_bool(p) {
                edges.push((u, left + v));
            }
        }
    }
    Graph::undirected(left + right, &edges)
}

pub fn k4() -> SimpleGraph {
    SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn k33() -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
    SimpleGraph::new(6, &edges).unwrap()
}

pub fn prism() -> SimpleGraph {
    SimpleGraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap()
}

pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    SimpleGraph::new(10, &edges).unwrap()
}

pub fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// Runs the CLI in-process: (exit code, stdout, stderr).
pub fn uno(args: &[&str], stdin: &str) -> (u8, String, String) {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["uno"];
    full.extend_from_slice(args);
    let code = uno_core::cli::run(full, &mut input, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub const EXAMPLE1_FILE: &str = "uno 1\nplayers 1\ncolors 4\nnumbers 4\nhand 1: 1,3 2,2 2,3 2,3 2,4 3,2 3,4 4,1 4,3\n";

/// The printed full sequence for the nine-card example.
pub const EXAMPLE1_SEQUENCE: &str = "1 1,3\n1 2,3\n1 2,4\n1 3,4\n1 3,2\n1 2,2\n1 2,3\n1 4,3\n1 4,1\n";
