//! Small graphs as bitset adjacency, with exact spectra.
//!
//! This is the brute-force side of the crate: everything here is computed
//! directly from an adjacency structure of at most 64 vertices, and serves as
//! an independent oracle for the parameter-level rules.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactnum::{
    int, real_roots_with_multiplicity, IntPolynomial, Rational, RationalMatrix, RealRoot,
};
use crate::srgcore::SrgParams;

pub const MAX_ORDER: usize = 64;

/// Largest order for which [`equitable_partitions`] enumerates every partition.
pub const MAX_SEARCH_ORDER: usize = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} is outside 1..=64")]
    BadOrder(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("H(a,t) needs a+t >= 1 and a, t >= 0, got a={a}, t={t}")]
    BadArity { a: i64, t: i64 },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("exhaustive partition search is limited to order {MAX_SEARCH_ORDER}, got {0}")]
    SearchTooLarge(usize),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Simple undirected graph on `0..order`, one `u64` bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    order: usize,
    rows: Vec<u64>,
}

impl SmallGraph {
    /// Edgeless graph on `order` vertices.
    pub fn empty(order: usize) -> Result<Self, GraphError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::BadOrder(order));
        }
        Ok(Self {
            order,
            rows: vec![0; order],
        })
    }

    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: self.order,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    fn from_fn(order: usize, adj: impl Fn(usize, usize) -> bool) -> Result<Self, GraphError> {
        let mut g = Self::empty(order)?;
        for u in 0..order {
            for v in u + 1..order {
                if adj(u, v) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    pub fn complete(order: usize) -> Result<Self, GraphError> {
        Self::from_fn(order, |_, _| true)
    }

    pub fn cycle(order: usize) -> Result<Self, GraphError> {
        if order < 3 {
            return Err(GraphError::Unsupported(format!(
                "cycle on {order} vertices"
            )));
        }
        Self::from_fn(order, |u, v| v == u + 1 || (u == 0 && v == order - 1))
    }

    pub fn path(order: usize) -> Result<Self, GraphError> {
        Self::from_fn(order, |u, v| v == u + 1)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Self::from_fn(a + b, |u, v| (u < a) != (v < a))
    }

    /// `K_{parts x 2}`: complete multipartite with parts of size two.
    pub fn cocktail_party(parts: usize) -> Result<Self, GraphError> {
        Self::from_fn(2 * parts, |u, v| u / 2 != v / 2)
    }

    pub fn petersen() -> Self {
        // Kneser graph K(5,2): 2-subsets adjacent when disjoint.
        let pairs: Vec<u8> = (0..5u8)
            .flat_map(|i| (i + 1..5).map(move |j| (1 << i) | (1 << j)))
            .collect();
        Self::from_fn(10, |u, v| pairs[u] & pairs[v] == 0).expect("order 10")
    }

    /// Paley graph on `q` vertices for a prime `q = 1 mod 4`, or `q = 9`.
    pub fn paley(q: usize) -> Result<Self, GraphError> {
        if q == 9 {
            // GF(9) = GF(3)[i], i^2 = -1; element a + bi stored as 3a + b.
            let mul = |x: usize, y: usize| {
                let (a, b, c, d) = (x / 3, x % 3, y / 3, y % 3);
                3 * ((a * c + 2 * b * d) % 3) + (a * d + b * c) % 3
            };
            let sub = |x: usize, y: usize| 3 * ((x / 3 + 3 - y / 3) % 3) + (x % 3 + 3 - y % 3) % 3;
            let squares: Vec<usize> = (1..9).map(|x| mul(x, x)).collect();
            return Self::from_fn(9, |u, v| squares.contains(&sub(u, v)));
        }
        let prime = q >= 5
            && (2..q)
                .take_while(|d| d * d <= q)
                .all(|d| !q.is_multiple_of(d));
        if !prime || q % 4 != 1 {
            return Err(GraphError::Unsupported(format!("Paley graph of order {q}")));
        }
        let squares: Vec<usize> = (1..q).map(|x| x * x % q).collect();
        Self::from_fn(q, |u, v| squares.contains(&((v + q - u) % q)))
    }

    /// Rook's graph on an `side x side` board.
    pub fn lattice(side: usize) -> Result<Self, GraphError> {
        Self::from_fn(side * side, |u, v| {
            u / side == v / side || u % side == v % side
        })
    }

    pub fn hypercube(dim: u32) -> Result<Self, GraphError> {
        Self::from_fn(1 << dim, |u, v| (u ^ v).count_ones() == 1)
    }

    /// Cayley graph on `Z4 x Z4` with connection set `±(1,0), ±(0,1), ±(1,1)`.
    pub fn shrikhande() -> Self {
        let conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
        Self::from_fn(16, |u, v| {
            let d = ((v / 4 + 4 - u / 4) % 4, (v % 4 + 4 - u % 4) % 4);
            conn.contains(&d)
        })
        .expect("order 16")
    }

    /// `K_{a+t}` plus one vertex (the last) adjacent to exactly `a` of its vertices.
    pub fn hat(a: i64, t: i64) -> Result<Self, GraphError> {
        if a < 0 || t < 0 || a + t < 1 {
            return Err(GraphError::BadArity { a, t });
        }
        let c = (a + t) as usize;
        let apex = c;
        Self::from_fn(c + 1, |u, v| if v == apex { u < a as usize } else { true })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&u| self.has_edge(v, u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |u| {
            (u + 1..self.order)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// The common valency, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.order).all(|v| self.degree(v) == d).then_some(d)
    }

    fn full_mask(&self) -> u64 {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }

    pub fn complement(&self) -> Self {
        let full = self.full_mask();
        let rows = (0..self.order)
            .map(|v| !self.rows[v] & full & !(1 << v))
            .collect();
        Self {
            order: self.order,
            rows,
        }
    }

    /// Disjoint union plus every edge between the two vertex sets; `g2`'s
    /// vertices follow `g1`'s.
    pub fn join(&self, other: &Self) -> Result<Self, GraphError> {
        let order = self.order + other.order;
        if order > MAX_ORDER {
            return Err(GraphError::BadOrder(order));
        }
        let off = self.order;
        Self::from_fn(order, |u, v| match (u < off, v < off) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - off, v - off),
            _ => true,
        })
    }

    /// Subgraph induced on `vs`, relabelled in the given order.
    pub fn induced(&self, vs: &[usize]) -> Result<Self, GraphError> {
        if vs.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(&v) = vs.iter().find(|&&v| v >= self.order) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        let mut seen = 0u64;
        for &v in vs {
            if seen >> v & 1 == 1 {
                return Err(GraphError::NotAPartition(format!("vertex {v} repeated")));
            }
            seen |= 1 << v;
        }
        Self::from_fn(vs.len(), |i, j| self.has_edge(vs[i], vs[j]))
    }

    pub fn adjacency(&self) -> RationalMatrix {
        let entries = (0..self.order)
            .flat_map(|u| (0..self.order).map(move |v| int(i64::from(self.has_edge(u, v)))))
            .collect();
        RationalMatrix::new(self.order, entries).expect("square adjacency")
    }

    pub fn char_poly(&self) -> IntPolynomial {
        self.adjacency().char_poly()
    }

    /// Distinct eigenvalues in increasing order, with multiplicities.
    pub fn spectrum(&self) -> Vec<(RealRoot, usize)> {
        real_roots_with_multiplicity(&self.char_poly()).expect("nonzero characteristic polynomial")
    }

    pub fn lambda_min(&self) -> RealRoot {
        self.spectrum().swap_remove(0).0
    }

    /// Vertices at each distance from `v`, nearest first; unreachable
    /// vertices are omitted.
    pub fn distance_layers(&self, v: usize) -> Vec<Vec<usize>> {
        let mut layers = vec![vec![v]];
        let mut seen = 1u64 << v;
        loop {
            let mut next = 0u64;
            for &u in layers.last().unwrap() {
                next |= self.rows[u];
            }
            next &= !seen;
            if next == 0 {
                return layers;
            }
            seen |= next;
            layers.push((0..self.order).filter(|&u| next >> u & 1 == 1).collect());
        }
    }

    /// Parameters if the graph is strongly regular and neither complete nor edgeless.
    pub fn srg_params(&self) -> Option<SrgParams> {
        let k = self.regular_degree()?;
        let mut lambda = None;
        let mut mu = None;
        for u in 0..self.order {
            for v in u + 1..self.order {
                let common = (self.rows[u] & self.rows[v]).count_ones() as i64;
                let slot = if self.has_edge(u, v) {
                    &mut lambda
                } else {
                    &mut mu
                };
                match *slot {
                    None => *slot = Some(common),
                    Some(c) if c != common => return None,
                    _ => {}
                }
            }
        }
        SrgParams::new(self.order as i64, k as i64, lambda?, mu?).ok()
    }

    /// Renders the edge-list format: the order, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SmallGraph({} vertices, edges {:?})",
            self.order,
            self.edges().collect::<Vec<_>>()
        )
    }
}

impl FromStr for SmallGraph {
    type Err = GraphError;

    /// Parses the edge-list format. Blank lines and `#` comments are skipped.
    fn from_str(s: &str) -> Result<Self, GraphError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing order".into(),
        })?;
        let order: usize = header.parse().map_err(|_| GraphError::Parse {
            line: first,
            msg: format!("bad order {header:?}"),
        })?;
        let mut g = Self::empty(order)?;
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            let [u, v] = parts[..] else {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected `u v`, got {text:?}"),
                });
            };
            let parse = |x: &str| {
                x.parse::<usize>().map_err(|_| GraphError::Parse {
                    line,
                    msg: format!("bad vertex {x:?}"),
                })
            };
            g.add_edge(parse(u)?, parse(v)?)?;
        }
        Ok(g)
    }
}

/// Disjoint nonempty vertex sets covering `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    order: usize,
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(order: usize, blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut seen = vec![false; order];
        for block in &blocks {
            if block.is_empty() {
                return Err(GraphError::NotAPartition("empty block".into()));
            }
            for &v in block {
                if v >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: v, order });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GraphError::NotAPartition(format!(
                        "vertex {v} in two blocks"
                    )));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::NotAPartition(format!("vertex {v} uncovered")));
        }
        Ok(Self { order, blocks })
    }

    pub fn singletons(order: usize) -> Self {
        Self {
            order,
            blocks: (0..order).map(|v| vec![v]).collect(),
        }
    }

    /// Partition of a connected graph by distance from `v`.
    pub fn by_distance(g: &SmallGraph, v: usize) -> Result<Self, GraphError> {
        Self::new(g.order(), g.distance_layers(v))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    fn masks(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect()
    }
}

/// Quotient matrix of `p` if it is equitable for `g`.
pub fn is_equitable(g: &SmallGraph, p: &VertexPartition) -> Option<RationalMatrix> {
    if p.order != g.order {
        return None;
    }
    quotient_counts(g, &p.blocks, &p.masks()).map(|q| {
        let r = p.blocks.len();
        RationalMatrix::new(r, q.into_iter().map(|c| int(c as i64)).collect())
            .expect("square quotient")
    })
}

fn quotient_counts(g: &SmallGraph, blocks: &[Vec<usize>], masks: &[u64]) -> Option<Vec<u32>> {
    let r = blocks.len();
    let mut q = vec![0u32; r * r];
    for (i, block) in blocks.iter().enumerate() {
        for (j, &mask) in masks.iter().enumerate() {
            let count = (g.rows[block[0]] & mask).count_ones();
            if block[1..]
                .iter()
                .any(|&v| (g.rows[v] & mask).count_ones() != count)
            {
                return None;
            }
            q[i * r + j] = count;
        }
    }
    Some(q)
}

/// Every equitable partition of `g` with its quotient, by exhaustive search
/// over all set partitions. Only for order up to [`MAX_SEARCH_ORDER`].
pub fn equitable_partitions(
    g: &SmallGraph,
) -> Result<Vec<(VertexPartition, RationalMatrix)>, GraphError> {
    if g.order > MAX_SEARCH_ORDER {
        return Err(GraphError::SearchTooLarge(g.order));
    }
    let mut found = Vec::new();
    let mut labels = vec![0usize; g.order];
    enumerate_partitions(g, 1, 1, &mut labels, &mut found);
    Ok(found)
}

/// Restricted-growth enumeration: vertex `v` joins one of the `used` blocks
/// or opens a new one.
fn enumerate_partitions(
    g: &SmallGraph,
    v: usize,
    used: usize,
    labels: &mut [usize],
    found: &mut Vec<(VertexPartition, RationalMatrix)>,
) {
    if v == g.order {
        let mut blocks = vec![Vec::new(); used];
        for (u, &b) in labels.iter().enumerate() {
            blocks[b].push(u);
        }
        let masks: Vec<u64> = blocks
            .iter()
            .map(|b| b.iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        if let Some(q) = quotient_counts(g, &blocks, &masks) {
            let quotient =
                RationalMatrix::new(used, q.into_iter().map(|c| int(c as i64)).collect())
                    .expect("square quotient");
            found.push((
                VertexPartition {
                    order: g.order,
                    blocks,
                },
                quotient,
            ));
        }
        return;
    }
    for b in 0..=used {
        labels[v] = b;
        enumerate_partitions(g, v + 1, used.max(b + 1), labels, found);
    }
}

/// Whether every root of `sub` (with any multiplicity) is a root of `host`,
/// by a gcd test on integer polynomials.
pub fn roots_contained(sub: &IntPolynomial, host: &IntPolynomial) -> bool {
    let s = sub.square_free_part();
    s.gcd(host).degree() == s.degree()
}

/// `[[k1, n2], [n1, k2]]`, the quotient of the join of two regular graphs
/// on the partition into the two factors.
pub fn join_quotient(g1: &SmallGraph, g2: &SmallGraph) -> Option<RationalMatrix> {
    let k1 = g1.regular_degree()? as i64;
    let k2 = g2.regular_degree()? as i64;
    Some(
        RationalMatrix::from_i64_rows(&[&[k1, g2.order() as i64], &[g1.order() as i64, k2]])
            .expect("2x2 shape"),
    )
}

/// Smallest eigenvalue of the join of two regular graphs predicted from the
/// factors alone: the least of both factors' smallest eigenvalues and the
/// smaller root of the join quotient.
pub fn predicted_join_lambda_min(g1: &SmallGraph, g2: &SmallGraph) -> Option<RealRoot> {
    let q = join_quotient(g1, g2)?;
    let q_min = real_roots_with_multiplicity(&q.char_poly())
        .ok()?
        .swap_remove(0)
        .0;
    [g1.lambda_min(), g2.lambda_min(), q_min]
        .into_iter()
        .min_by(|a, b| a.cmp_root(b))
}

/// Named connected-or-not regular graphs of order at most `max_order`,
/// used as the oracle corpus.
pub fn regular_catalogue(max_order: usize) -> Vec<(String, SmallGraph)> {
    let mut out: Vec<(String, SmallGraph)> = Vec::new();
    let mut push = |name: String, g: Result<SmallGraph, GraphError>| {
        if let Ok(g) = g {
            if g.order() <= max_order && g.regular_degree().is_some() {
                out.push((name, g));
            }
        }
    };
    for n in 1..=max_order {
        push(format!("K{n}"), SmallGraph::complete(n));
        if n >= 2 {
            push(format!("E{n}"), SmallGraph::empty(n));
        }
        if n >= 3 {
            push(format!("C{n}"), SmallGraph::cycle(n));
        }
    }
    for a in 2..=max_order / 2 {
        push(format!("K{a},{a}"), SmallGraph::complete_bipartite(a, a));
        push(format!("CP{a}"), SmallGraph::cocktail_party(a));
    }
    push("Petersen".into(), Ok(SmallGraph::petersen()));
    push(
        "complement(Petersen)".into(),
        Ok(SmallGraph::petersen().complement()),
    );
    push("Paley9".into(), SmallGraph::paley(9));
    push("Q3".into(), SmallGraph::hypercube(3));
    push(
        "prism3".into(),
        SmallGraph::cycle(3).and_then(|c| c.cartesian_k2()),
    );
    push(
        "prism5".into(),
        SmallGraph::cycle(5).and_then(|c| c.cartesian_k2()),
    );
    push(
        "2K3".into(),
        SmallGraph::complete(3).and_then(|k| k.disjoint_union(&k)),
    );
    push(
        "2C4".into(),
        SmallGraph::cycle(4).and_then(|c| c.disjoint_union(&c)),
    );
    push(
        "complement(C7)".into(),
        SmallGraph::cycle(7).map(|c| c.complement()),
    );
    out
}

impl SmallGraph {
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        let off = self.order;
        Self::from_fn(off + other.order, |u, v| match (u < off, v < off) {
            (true, true) => self.has_edge(u, v),
            (false, false) => other.has_edge(u - off, v - off),
            _ => false,
        })
    }

    /// Cartesian product with `K2` (two copies joined by a perfect matching).
    pub fn cartesian_k2(&self) -> Result<Self, GraphError> {
        let n = self.order;
        Self::from_fn(2 * n, |u, v| {
            if u / n == v / n {
                self.has_edge(u % n, v % n)
            } else {
                u % n == v % n
            }
        })
    }
}

/// Exact comparison of `lambda_min(g)` with a rational bound.
pub fn lambda_min_cmp(g: &SmallGraph, bound: &Rational) -> Ordering {
    g.lambda_min().cmp_rational(bound)
}

/// Integer eigenvalue list (`value^mult`) if the whole spectrum is rational.
pub fn integral_spectrum(g: &SmallGraph) -> Option<Vec<(BigInt, usize)>> {
    g.spectrum()
        .into_iter()
        .map(|(r, m)| {
            r.as_exact()
                .filter(|v| v.is_integer())
                .map(|v| (v.numer().clone(), m))
        })
        .collect()
}
