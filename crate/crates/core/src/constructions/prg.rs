//! Partial regular graphs PRG(n, d) and the weak FR codes built on them.
//!
//! For odd `n` and `d` no d-regular graph on n vertices exists. PRG(n, d) is
//! obtained by adding a half-shift permutation matrix `S_n` to the circulant
//! `C_n(d−1)` (mod 2): every vertex but the last gains one neighbor, so
//! vertices `1..n−1` have degree `d` and vertex `n` keeps degree `d−1`.

use crate::code::FrCode;
use crate::constructions::graph::{code_from_graph, Graph};
use crate::error::{violation, Error, Result};

/// First row `(a_0, …, a_{n−1})` of a symmetric circulant adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CirculantSpec {
    first_row: Vec<u8>,
}

impl CirculantSpec {
    pub fn new(first_row: Vec<u8>) -> Result<Self> {
        let n = first_row.len();
        if n == 0 {
            return Err(violation("circulant needs n >= 1"));
        }
        if first_row[0] != 0 {
            return Err(violation("a_0 must be 0 (no self loops)"));
        }
        if first_row.iter().any(|&a| a > 1) {
            return Err(violation("coefficients must be 0/1"));
        }
        if let Some(j) = (1..n).find(|&j| first_row[j] != first_row[n - j]) {
            return Err(violation(format!(
                "a_{j} != a_{} (support not symmetric)",
                n - j
            )));
        }
        Ok(Self { first_row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[u8] {
        &self.first_row
    }

    pub fn weight(&self) -> usize {
        self.first_row.iter().filter(|&&a| a == 1).count()
    }

    /// Entry `(i, j)` is `a_{(j − i) mod n}`.
    pub fn matrix(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.first_row[(j + n - i) % n]).collect())
            .collect()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_adjacency(&self.matrix()).expect("symmetric circulant is a valid graph")
    }
}

fn check_odd_pair(n: usize, d: usize) -> Result<()> {
    if n.is_multiple_of(2) || d.is_multiple_of(2) {
        return Err(violation(format!(
            "n and d must both be odd (n = {n}, d = {d})"
        )));
    }
    if d < 3 || d + 2 > n {
        return Err(violation(format!(
            "3 <= d <= n - 2 required (n = {n}, d = {d})"
        )));
    }
    Ok(())
}

/// `q(t) = t + … + t^{(d−1)/2} + t^{n−(d−1)/2} + … + t^{n−1}`, weight `d − 1`.
pub fn circulant_from_polynomial(n: usize, d: usize) -> Result<CirculantSpec> {
    check_odd_pair(n, d)?;
    let half = (d - 1) / 2;
    let mut row = vec![0u8; n];
    for e in (1..=half).chain(n - half..n) {
        row[e] = 1;
    }
    CirculantSpec::new(row)
}

/// Permutation matrix `P(π)`: row `i` has its single 1 in column `π(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationMatrix {
    mapping: Vec<usize>,
}

impl PermutationMatrix {
    /// `mapping[i]` is `π(i)`, 0-based.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &p in &mapping {
            if p >= mapping.len() || std::mem::replace(&mut seen[p], true) {
                return Err(violation("mapping is not a bijection"));
            }
        }
        Ok(Self { mapping })
    }

    pub fn size(&self) -> usize {
        self.mapping.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_involution(&self) -> bool {
        (0..self.size()).all(|i| self.apply(self.apply(i)) == i)
    }

    pub fn matrix(&self) -> Vec<Vec<u8>> {
        self.padded(self.size())
    }

    /// The matrix grown to `size + 1` with a zero last row and column. For the
    /// half shift this is `S_n`.
    pub fn zero_extended(&self) -> Vec<Vec<u8>> {
        self.padded(self.size() + 1)
    }

    fn padded(&self, dim: usize) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; dim]; dim];
        for (i, &p) in self.mapping.iter().enumerate() {
            m[i][p] = 1;
        }
        m
    }
}

/// `P_{n−1}` for odd `n`: swaps the two halves of `{1, …, n−1}`.
/// [`PermutationMatrix::zero_extended`] yields the n×n matrix `S_n`.
pub fn half_shift_matrix(n: usize) -> Result<PermutationMatrix> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(violation(format!("n must be odd and >= 3, got {n}")));
    }
    let half = (n - 1) / 2;
    PermutationMatrix::new((0..n - 1).map(|i| (i + half) % (n - 1)).collect())
}

/// `PRG(n, d) = S_n + C_n(d−1) (mod 2)`.
pub fn partial_regular_graph(n: usize, d: usize) -> Result<Graph> {
    let circulant = circulant_from_polynomial(n, d)?.matrix();
    let shift = half_shift_matrix(n)?.zero_extended();
    let mut rows = circulant;
    for i in 0..n {
        for j in 0..n {
            if shift[i][j] == 1 && rows[i][j] == 1 {
                return Err(Error::InternalCheck(format!(
                    "S_n overlaps the circulant at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            rows[i][j] ^= shift[i][j];
        }
    }
    let g = Graph::from_adjacency(&rows)?;
    let degrees = g.degrees();
    if degrees[..n - 1].iter().any(|&x| x != d) || degrees[n - 1] != d - 1 {
        return Err(Error::InternalCheck(format!(
            "unexpected degree sequence {degrees:?}"
        )));
    }
    Ok(g)
}

/// Weak FR code from PRG(n, d): θ = (nd − 1)/2, node `n` holds `d − 1` symbols.
pub fn wfr_from_prg(n: usize, d: usize) -> Result<FrCode> {
    code_from_graph(&partial_regular_graph(n, d)?)
}
