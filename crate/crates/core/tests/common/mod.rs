//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's graph algorithms; inputs are plain matrices.

#![allow(dead_code)]

use topoctl_core::{Adjacency, NodeId, Point, PointSet, UndirectedGraph};

/// Dense boolean adjacency of any graph over positions `0..n`.
pub fn to_matrix<G: UndirectedGraph>(g: &G) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut m = vec![vec![false; n]; n];
    for a in 0..n {
        for &b in g.neighbors(a) {
            m[a][b] = true;
        }
    }
    m
}

/// Pairwise distance check with plain Euclidean distances.
pub fn disk_matrix(coords: &[Point], range: f64) -> Vec<Vec<bool>> {
    let n = coords.len();
    let mut m = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let dx = coords[a].x - coords[b].x;
                let dy = coords[a].y - coords[b].y;
                m[a][b] = dx * dx + dy * dy <= range * range;
            }
        }
    }
    m
}

/// Transitive closure by repeated boolean matrix squaring.
pub fn reachability(m: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = m.len();
    let mut r: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| a == b || m[a][b]).collect())
        .collect();
    let mut steps = 1;
    while steps < n {
        let mut next = r.clone();
        for a in 0..n {
            for b in 0..n {
                if !next[a][b] {
                    next[a][b] = (0..n).any(|k| r[a][k] && r[k][b]);
                }
            }
        }
        r = next;
        steps *= 2;
    }
    r
}

pub fn matrix_connected(m: &[Vec<bool>]) -> bool {
    reachability(m).iter().all(|row| row.iter().all(|&x| x))
}

/// Plain union-find with path halving.
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Components of the subgraph induced by `subset`, each sorted, ordered by
/// smallest member.
pub fn union_find_blocks(m: &[Vec<bool>], subset: &[usize]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(m.len());
    for &a in subset {
        for &b in subset {
            if m[a][b] {
                uf.union(a, b);
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &a in subset {
        let r = uf.find(a);
        blocks.entry(r).or_default().push(a);
    }
    let mut out: Vec<Vec<usize>> = blocks
        .into_values()
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

/// Minimum path cost by enumerating every simple path (tiny graphs only).
pub fn enumerate_min_cost(m: &[Vec<bool>], coords: &[Point], s: usize, t: usize, alpha: f64) -> f64 {
    fn go(
        m: &[Vec<bool>],
        w: &dyn Fn(usize, usize) -> f64,
        u: usize,
        t: usize,
        used: &mut Vec<bool>,
        acc: f64,
        best: &mut f64,
    ) {
        if u == t {
            *best = best.min(acc);
            return;
        }
        for v in 0..m.len() {
            if m[u][v] && !used[v] {
                used[v] = true;
                go(m, w, v, t, used, acc + w(u, v), best);
                used[v] = false;
            }
        }
    }
    let weight = |a: usize, b: usize| {
        let d = ((coords[a].x - coords[b].x).powi(2) + (coords[a].y - coords[b].y).powi(2)).sqrt();
        if alpha == 0.0 {
            1.0
        } else {
            d.powf(alpha)
        }
    };
    let mut used = vec![false; m.len()];
    used[s] = true;
    let mut best = f64::INFINITY;
    go(m, &weight, s, t, &mut used, 0.0, &mut best);
    best
}

pub fn relative_eq(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

pub fn random_points(n: usize, seed: u64, side: f64) -> PointSet {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    PointSet::from_coords((0..n).map(|_| (rng.gen::<f64>() * side, rng.gen::<f64>() * side))).unwrap()
}

pub fn ids(v: &[u64]) -> Vec<NodeId> {
    v.iter().copied().map(NodeId::Num).collect()
}

/// A 10-node neighbor relation matching the worked example: node 6 has
/// lesser neighbors 1..5 that split into {1,2,5} and {3,4}, and one greater
/// neighbor, 7.
pub fn worked_example() -> Adjacency {
    let e = |a: u64, b: u64| (NodeId::Num(a), NodeId::Num(b));
    Adjacency::from_edges(
        (1..=10).map(NodeId::Num),
        vec![
            e(1, 2),
            e(2, 5),
            e(1, 5),
            e(3, 4),
            e(1, 6),
            e(2, 6),
            e(3, 6),
            e(4, 6),
            e(5, 6),
            e(6, 7),
            e(5, 7),
            e(7, 8),
            e(7, 9),
            e(8, 9),
            e(9, 10),
            e(4, 10),
        ],
    )
    .unwrap()
}
