//! Simulated storage cluster running a DRESS code: an outer MDS code whose
//! coded symbols are placed on nodes by an inner FR code.
//!
//! Repair is table based and uncoded: each helper forwards stored symbols
//! verbatim to the replacement node. Node ids are 0-based in this API and
//! 1-based in the event log.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bounds::mbr_capacity;
use crate::code::{
    normalize_symbols, supported_file_size, verify_code, Classification, FrCode, Symbol,
};
use crate::error::{violation, Error, Result};
use crate::gf256::Gf256;
use crate::mds::MdsParams;

/// Outer (θ, B) MDS code composed with an inner FR or weak FR code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DressCode {
    inner: FrCode,
    outer: MdsParams,
    k: usize,
}

impl DressCode {
    /// Normalizes the inner code and sizes the file at
    /// `B = supported_file_size(inner, k)`.
    pub fn assemble(inner: &FrCode, k: usize) -> Result<Self> {
        if verify_code(inner).classification == Classification::Irregular {
            return Err(Error::IrregularCode);
        }
        let inner = normalize_symbols(inner);
        let b = supported_file_size(&inner, k)?;
        let outer = MdsParams::new(inner.theta(), b)?;
        Ok(Self { inner, outer, k })
    }

    pub fn inner(&self) -> &FrCode {
        &self.inner
    }

    pub fn outer(&self) -> &MdsParams {
        &self.outer
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// File size B in symbols (bytes).
    pub fn b(&self) -> usize {
        self.outer.b()
    }

    pub fn theta(&self) -> usize {
        self.outer.theta()
    }

    pub fn n(&self) -> usize {
        self.inner.n()
    }

    /// MBR capacity of the `(n, k, d)` system with `d` the largest node size,
    /// when those parameters are valid. Can be below [`Self::b`] for weak codes.
    pub fn mbr_capacity(&self) -> Option<usize> {
        let d = self.inner.nodes().iter().map(Vec::len).max()?;
        mbr_capacity(self.n(), self.k, d).ok()
    }
}

pub fn assemble_dress(inner: &FrCode, k: usize) -> Result<DressCode> {
    DressCode::assemble(inner, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepairMode {
    /// Every helper forwards exactly one symbol.
    Strict,
    /// A helper may forward several symbols.
    Relaxed,
}

impl fmt::Display for RepairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepairMode::Strict => "strict",
            RepairMode::Relaxed => "relaxed",
        })
    }
}

/// One symbol forwarded from a helper to the replacement node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transfer {
    pub helper: usize,
    pub symbol: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairReport {
    pub failed: usize,
    /// Ordered by symbol.
    pub transfers: Vec<Transfer>,
    pub mode: RepairMode,
    /// Symbols downloaded.
    pub total_bandwidth: usize,
    generation: u64,
}

impl RepairReport {
    /// Distinct helpers, ascending.
    pub fn helpers(&self) -> Vec<usize> {
        self.transfers
            .iter()
            .map(|t| t.helper)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Plans an uncoded repair of `failed` from the live nodes of `code`.
///
/// Strict mode solves a maximum bipartite matching between lost symbols and
/// live helpers holding them (augmenting paths, symbols and helpers tried in
/// ascending order). Relaxed mode fetches every symbol from its lowest-index
/// live holder.
pub fn plan_uncoded_repair(
    code: &FrCode,
    alive: &[bool],
    failed: usize,
    mode: RepairMode,
) -> Result<Vec<Transfer>> {
    let n = code.n();
    if failed >= n {
        return Err(Error::UnknownNode(failed));
    }
    if alive.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: alive.len(),
        });
    }
    if alive[failed] {
        return Err(Error::NodeNotFailed(failed));
    }
    let lost = code.node(failed);
    let candidates: Vec<Vec<usize>> = lost
        .iter()
        .map(|&s| {
            let live: Vec<usize> = code.holders(s).into_iter().filter(|&h| alive[h]).collect();
            if live.is_empty() {
                Err(Error::UnrepairableSymbol(s))
            } else {
                Ok(live)
            }
        })
        .collect::<Result<_>>()?;

    let assignment = match mode {
        RepairMode::Relaxed => candidates.iter().map(|c| c[0]).collect(),
        RepairMode::Strict => {
            let mut owner: Vec<Option<usize>> = vec![None; n];
            let mut matched = 0;
            for sym in 0..lost.len() {
                let mut visited = vec![false; n];
                if augment(sym, &candidates, &mut owner, &mut visited) {
                    matched += 1;
                }
            }
            if matched < lost.len() {
                return Err(Error::NoStrictPlan {
                    matched,
                    needed: lost.len(),
                });
            }
            let mut helper_of = vec![0; lost.len()];
            for (h, o) in owner.iter().enumerate() {
                if let Some(sym) = *o {
                    helper_of[sym] = h;
                }
            }
            helper_of
        }
    };
    Ok(lost
        .iter()
        .zip(assignment)
        .map(|(&symbol, helper)| Transfer { helper, symbol })
        .collect())
}

fn augment(
    sym: usize,
    candidates: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [bool],
) -> bool {
    for &h in &candidates[sym] {
        if visited[h] {
            continue;
        }
        visited[h] = true;
        let free = match owner[h] {
            None => true,
            Some(other) => augment(other, candidates, owner, visited),
        };
        if free {
            owner[h] = Some(sym);
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Store,
    Fail,
    Repair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    pub seq: u64,
    pub kind: EventKind,
    pub node: usize,
    /// Symbols transferred by this transition.
    pub bw: usize,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            EventKind::Store => "STORE",
            EventKind::Fail => "FAIL",
            EventKind::Repair => "REPAIR",
        };
        write!(
            f,
            "EVENT {} {} node={} bw={}",
            self.seq,
            kind,
            self.node + 1,
            self.bw
        )
    }
}

/// Per-node stores, liveness and repair accounting of a simulated cluster.
#[derive(Debug, Clone)]
pub struct ClusterState {
    code: DressCode,
    stores: Vec<BTreeMap<Symbol, u8>>,
    alive: Vec<bool>,
    bandwidth: usize,
    events: Vec<Event>,
    generation: u64,
}

/// Encodes `file` (exactly B bytes) and places the coded symbols.
pub fn store_file(code: &DressCode, file: &[u8]) -> Result<ClusterState> {
    let coded = code.outer().encode_bytes(file)?;
    let stores: Vec<BTreeMap<Symbol, u8>> = code
        .inner()
        .nodes()
        .iter()
        .map(|node| node.iter().map(|&s| (s, coded[s as usize - 1])).collect())
        .collect();
    let n = code.n();
    let mut cluster = ClusterState {
        code: code.clone(),
        stores,
        alive: vec![true; n],
        bandwidth: 0,
        events: Vec::with_capacity(n),
        generation: 0,
    };
    for node in 0..n {
        cluster.log(EventKind::Store, node, 0);
    }
    Ok(cluster)
}

impl ClusterState {
    pub fn code(&self) -> &DressCode {
        &self.code
    }

    pub fn stores(&self) -> &[BTreeMap<Symbol, u8>] {
        &self.stores
    }

    pub fn is_alive(&self, node: usize) -> bool {
        self.alive.get(node).copied().unwrap_or(false)
    }

    pub fn liveness(&self) -> &[bool] {
        &self.alive
    }

    pub fn live_nodes(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&i| self.alive[i]).collect()
    }

    /// Total repair bandwidth so far, in symbols.
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    fn log(&mut self, kind: EventKind, node: usize, bw: usize) {
        let seq = self.events.len() as u64 + 1;
        self.events.push(Event {
            seq,
            kind,
            node,
            bw,
        });
        self.generation += 1;
    }

    fn check_node(&self, node: usize) -> Result<()> {
        if node >= self.alive.len() {
            return Err(Error::UnknownNode(node));
        }
        Ok(())
    }

    /// Live stores hold exactly their node's symbol set; dead stores are empty.
    pub fn check_invariants(&self) -> Result<()> {
        for (i, store) in self.stores.iter().enumerate() {
            let ok = if self.alive[i] {
                store
                    .keys()
                    .copied()
                    .eq(self.code.inner().node(i).iter().copied())
            } else {
                store.is_empty()
            };
            if !ok {
                return Err(Error::InternalCheck(format!(
                    "store of node {} disagrees with placement",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Decodes the file from the union of the named nodes' symbols.
    pub fn retrieve_file(&self, nodes: &[usize]) -> Result<Vec<u8>> {
        let mut received: BTreeMap<usize, Gf256> = BTreeMap::new();
        for &node in nodes {
            self.check_node(node)?;
            if !self.alive[node] {
                return Err(Error::DeadNodeContacted(node));
            }
            for (&s, &v) in &self.stores[node] {
                received.insert(s as usize - 1, Gf256(v));
            }
        }
        let b = self.code.b();
        if received.len() < b {
            return Err(Error::InsufficientSymbols {
                needed: b,
                available: received.len(),
            });
        }
        let file = self.code.outer().decode(&received)?;
        Ok(file.into_iter().map(u8::from).collect())
    }

    pub fn fail_node(&mut self, node: usize) -> Result<()> {
        self.check_node(node)?;
        if !self.alive[node] {
            return Err(Error::AlreadyDead(node));
        }
        self.alive[node] = false;
        self.stores[node].clear();
        self.log(EventKind::Fail, node, 0);
        Ok(())
    }

    pub fn plan_repair(&self, failed: usize, mode: RepairMode) -> Result<RepairReport> {
        let transfers = plan_uncoded_repair(self.code.inner(), &self.alive, failed, mode)?;
        Ok(RepairReport {
            failed,
            total_bandwidth: transfers.len(),
            transfers,
            mode,
            generation: self.generation,
        })
    }

    /// Copies the planned symbols onto the replacement node and brings it back
    /// online.
    pub fn execute_repair(&mut self, report: &RepairReport) -> Result<()> {
        if report.generation != self.generation {
            return Err(Error::StaleReport);
        }
        let failed = report.failed;
        self.check_node(failed)?;
        if self.alive[failed] {
            return Err(Error::NodeNotFailed(failed));
        }
        let mut restored = BTreeMap::new();
        for t in &report.transfers {
            if !self.alive[t.helper] {
                return Err(Error::DeadNodeContacted(t.helper));
            }
            let v = *self.stores[t.helper].get(&t.symbol).ok_or_else(|| {
                violation(format!(
                    "helper {} does not hold symbol {}",
                    t.helper + 1,
                    t.symbol
                ))
            })?;
            restored.insert(t.symbol, v);
        }
        if !restored
            .keys()
            .copied()
            .eq(self.code.inner().node(failed).iter().copied())
        {
            return Err(violation(format!(
                "report does not cover node {}",
                failed + 1
            )));
        }
        self.stores[failed] = restored;
        self.alive[failed] = true;
        self.bandwidth += report.total_bandwidth;
        self.log(EventKind::Repair, failed, report.total_bandwidth);
        Ok(())
    }

    /// Plans and executes in one step.
    pub fn repair(&mut self, failed: usize, mode: RepairMode) -> Result<RepairReport> {
        let report = self.plan_repair(failed, mode)?;
        self.execute_repair(&report)?;
        Ok(report)
    }
}

/// Largest `f` such that after any `f` simultaneous failures every symbol
/// keeps a live replica and the live nodes still hold at least B symbols.
/// Exhaustive over failure subsets.
pub fn failure_tolerance_check(code: &DressCode) -> usize {
    let inner = code.inner();
    let n = inner.n();
    let holders: Vec<Vec<usize>> = inner.symbols().iter().map(|&s| inner.holders(s)).collect();
    let survives = |dead: &[bool]| {
        let covered = holders
            .iter()
            .filter(|hs| hs.iter().any(|&h| !dead[h]))
            .count();
        covered == holders.len() && covered >= code.b()
    };
    for f in 1..=n {
        let mut dead = vec![false; n];
        if !all_subsets(n, f, 0, &mut dead, &survives) {
            return f - 1;
        }
    }
    n
}

fn all_subsets(
    n: usize,
    left: usize,
    start: usize,
    dead: &mut [bool],
    ok: &dyn Fn(&[bool]) -> bool,
) -> bool {
    if left == 0 {
        return ok(dead);
    }
    for i in start..=n - left {
        dead[i] = true;
        let pass = all_subsets(n, left - 1, i + 1, dead, ok);
        dead[i] = false;
        if !pass {
            return false;
        }
    }
    true
}
