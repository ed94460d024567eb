use crate::code::{FrCode, Symbol};
use crate::error::{violation, Error, Result};

/// Simple undirected graph stored as a symmetric 0/1 adjacency matrix.
///
/// Vertex `i` (0-based) stands for node `U_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u8>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![0; n * n],
        }
    }

    /// Builds a graph from matrix rows, checking symmetry, a zero diagonal and
    /// 0/1 entries.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(violation(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(violation(format!(
                        "entry ({}, {}) is not 0/1",
                        i + 1,
                        j + 1
                    )));
                }
                g.adj[i * n + j] = v;
            }
        }
        for i in 0..n {
            if g.get(i, i) != 0 {
                return Err(violation(format!("diagonal entry {} is nonzero", i + 1)));
            }
            for j in 0..i {
                if g.get(i, j) != g.get(j, i) {
                    return Err(violation(format!(
                        "matrix not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.adj[i * self.n + j]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == 1
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.adj[i * self.n + j] = 1;
        self.adj[j * self.n + i] = 1;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.adj[i * self.n..(i + 1) * self.n]
    }

    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&v| v == 1).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.has_edge(i, j))
            .collect()
    }
}

/// d-regular circulant graph: vertex `i` joins `i ± 1, …, i ± ⌊d/2⌋` and, for
/// odd `d`, the antipodal vertex `i + n/2`.
pub fn circulant_regular_graph(n: usize, d: usize) -> Result<Graph> {
    if n < 2 {
        return Err(violation(format!("n >= 2 required, got {n}")));
    }
    if d < 1 || d >= n {
        return Err(violation(format!(
            "1 <= d <= n - 1 required (n = {n}, d = {d})"
        )));
    }
    if (n * d) % 2 == 1 {
        return Err(violation(format!("nd must be even (n = {n}, d = {d})")));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for off in 1..=d / 2 {
            g.add_edge(i, (i + off) % n);
        }
        if d % 2 == 1 {
            g.add_edge(i, (i + n / 2) % n);
        }
    }
    Ok(g)
}

/// Labels edges `1, 2, …` in lexicographic order and gives each node the
/// labels of its incident edges. Every symbol is stored exactly twice.
pub fn code_from_graph(g: &Graph) -> Result<FrCode> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut nodes: Vec<Vec<Symbol>> = vec![Vec::new(); g.n()];
    for (label, &(i, j)) in (1..).zip(&edges) {
        nodes[i].push(label);
        nodes[j].push(label);
    }
    FrCode::new(nodes, 2)
}

pub fn regular_graph_code(n: usize, d: usize) -> Result<FrCode> {
    code_from_graph(&circulant_regular_graph(n, d)?)
}
