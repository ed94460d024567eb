//! Fractional repetition codes: the placement of θ symbols onto n storage
//! nodes, plus the verifier that classifies a placement as strong, weak or
//! irregular.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{violation, Error, Result};

/// Symbol (packet) identifier. Constructions keep their natural labels, which
/// may start at 0; [`normalize_symbols`] maps them onto `1..=θ`.
pub type Symbol = u32;

/// An inner fractional repetition code: `n` node sets `U_1..U_n` over the
/// symbol universe Ω.
///
/// Node indices are 0-based in the API; node `i` is `U_{i+1}` in the usual
/// notation. Each node set is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrCode {
    nodes: Vec<Vec<Symbol>>,
    symbols: Vec<Symbol>,
    nominal_rho: usize,
}

impl FrCode {
    pub fn new(nodes: Vec<Vec<Symbol>>, nominal_rho: usize) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidCode(format!(
                "need at least 2 nodes, got {}",
                nodes.len()
            )));
        }
        if nominal_rho == 0 {
            return Err(Error::InvalidCode("nominal rho must be positive".into()));
        }
        let mut universe = BTreeSet::new();
        let mut sorted_nodes = Vec::with_capacity(nodes.len());
        for (i, mut node) in nodes.into_iter().enumerate() {
            if node.is_empty() {
                return Err(Error::InvalidCode(format!("node {} is empty", i + 1)));
            }
            node.sort_unstable();
            if let Some(w) = node.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidCode(format!(
                    "node {} lists symbol {} twice",
                    i + 1,
                    w[0]
                )));
            }
            universe.extend(node.iter().copied());
            sorted_nodes.push(node);
        }
        Ok(Self {
            nodes: sorted_nodes,
            symbols: universe.into_iter().collect(),
            nominal_rho,
        })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    /// θ, the number of distinct symbols.
    pub fn theta(&self) -> usize {
        self.symbols.len()
    }

    pub fn nominal_rho(&self) -> usize {
        self.nominal_rho
    }

    pub fn nodes(&self) -> &[Vec<Symbol>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &[Symbol] {
        &self.nodes[i]
    }

    /// Ω in ascending order.
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, node: usize, symbol: Symbol) -> bool {
        self.nodes[node].binary_search(&symbol).is_ok()
    }

    /// Nodes storing `symbol`, ascending.
    pub fn holders(&self, symbol: Symbol) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.contains(i, symbol))
            .collect()
    }

    /// Number of distinct symbols held jointly by `nodes`.
    pub fn union_size(&self, nodes: &[usize]) -> usize {
        nodes
            .iter()
            .flat_map(|&i| self.nodes[i].iter().copied())
            .collect::<BTreeSet<_>>()
            .len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Every symbol replicated exactly ρ times and every node holds d symbols.
    Strong,
    /// Every symbol replicated exactly ρ times but node sizes differ.
    Weak,
    /// Replication is not uniform at the nominal ρ.
    Irregular,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Strong => "strong",
            Classification::Weak => "weak",
            Classification::Irregular => "irregular",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub classification: Classification,
    /// Replication count of every symbol.
    pub rho_observed: BTreeMap<Symbol, usize>,
    /// d, the largest node size.
    pub d_max: usize,
    pub node_sizes: Vec<usize>,
    /// δ_i = d − d_i, the order of weakness of each node.
    pub delta_per_node: Vec<usize>,
    /// δ = Σ δ_i.
    pub delta_total: usize,
}

impl VerificationReport {
    /// Distinct replication counts mapped to the symbols having them.
    pub fn replication_profile(&self) -> BTreeMap<usize, Vec<Symbol>> {
        let mut profile: BTreeMap<usize, Vec<Symbol>> = BTreeMap::new();
        for (&s, &r) in &self.rho_observed {
            profile.entry(r).or_default().push(s);
        }
        profile
    }

    pub fn theta(&self) -> usize {
        self.rho_observed.len()
    }
}

/// Counts replication per symbol and classifies the code.
///
/// Irregular codes are reported rather than rejected.
pub fn verify_code(code: &FrCode) -> VerificationReport {
    let mut rho_observed: BTreeMap<Symbol, usize> = BTreeMap::new();
    for node in code.nodes() {
        for &s in node {
            *rho_observed.entry(s).or_insert(0) += 1;
        }
    }
    let node_sizes: Vec<usize> = code.nodes().iter().map(Vec::len).collect();
    let d_max = node_sizes.iter().copied().max().unwrap_or(0);
    let delta_per_node: Vec<usize> = node_sizes.iter().map(|&s| d_max - s).collect();
    let delta_total: usize = delta_per_node.iter().sum();

    let n = code.n();
    let theta = rho_observed.len();
    let rho = code.nominal_rho();
    let uniform = rho_observed.values().all(|&r| r == rho);
    let classification = match (uniform, delta_total) {
        (true, 0) => Classification::Strong,
        (true, _) => Classification::Weak,
        (false, _) => Classification::Irregular,
    };

    assert_eq!(node_sizes.iter().sum::<usize>(), n * d_max - delta_total);
    if classification != Classification::Irregular {
        // θρ = nd for strong codes, ρθ = nd − δ for weak ones.
        assert_eq!(theta * rho, n * d_max - delta_total);
    }

    VerificationReport {
        classification,
        rho_observed,
        d_max,
        node_sizes,
        delta_per_node,
        delta_total,
    }
}

/// Fixed-width bitset over densely re-indexed symbols.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or_into(&self, other: &Bits, out: &mut Bits) {
        for ((o, a), b) in out.0.iter_mut().zip(&self.0).zip(&other.0) {
            *o = a | b;
        }
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Largest file size guaranteed retrievable from any `k` nodes: the minimum,
/// over every k-subset of nodes, of the number of distinct symbols held.
///
/// The enumeration is exhaustive, C(n, k) unions.
pub fn supported_file_size(code: &FrCode, k: usize) -> Result<usize> {
    let n = code.n();
    if k == 0 || k > n {
        return Err(violation(format!(
            "k must satisfy 1 <= k <= n = {n}, got {k}"
        )));
    }
    let index: BTreeMap<Symbol, usize> = code
        .symbols()
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, i))
        .collect();
    let words = code.theta().div_ceil(64);
    let masks: Vec<Bits> = code
        .nodes()
        .iter()
        .map(|node| {
            let mut b = Bits::zero(words);
            for s in node {
                b.set(index[s]);
            }
            b
        })
        .collect();

    // stack[depth] holds the union of the first `depth` chosen nodes
    let mut stack: Vec<Bits> = vec![Bits::zero(words); k + 1];
    let mut best = usize::MAX;
    min_union(&masks, k, 0, 0, &mut stack, &mut best);
    Ok(best)
}

fn min_union(
    masks: &[Bits],
    k: usize,
    start: usize,
    depth: usize,
    stack: &mut [Bits],
    best: &mut usize,
) {
    if depth == k {
        *best = (*best).min(stack[depth].count());
        return;
    }
    let remaining = k - depth;
    for i in start..=masks.len() - remaining {
        let (lo, hi) = stack.split_at_mut(depth + 1);
        lo[depth].or_into(&masks[i], &mut hi[0]);
        min_union(masks, k, i + 1, depth + 1, stack, best);
    }
}

/// Relabeling that sends the i-th smallest symbol to `i + 1`.
pub fn symbol_relabeling(code: &FrCode) -> BTreeMap<Symbol, Symbol> {
    code.symbols()
        .iter()
        .zip(1..)
        .map(|(&s, label)| (s, label))
        .collect()
}

/// Relabels symbols onto `1..=θ`, preserving ascending order of the original
/// identifiers and the node membership structure.
pub fn normalize_symbols(code: &FrCode) -> FrCode {
    let map = symbol_relabeling(code);
    let nodes = code
        .nodes()
        .iter()
        .map(|node| node.iter().map(|s| map[s]).collect())
        .collect();
    FrCode::new(nodes, code.nominal_rho()).expect("relabeling preserves code invariants")
}
