//! Acceptance suite. Every criterion is checked with exact integer or byte
//! equality and prints one PASS/FAIL line.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use dress_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure!(got == want, "{what}: got {got:?}, want {want:?}");
    Ok(())
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn within(limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn ac1_k6_code() -> Check {
    let start = Instant::now();
    let inner = regular_graph_code(6, 5).map_err(|e| e.to_string())?;
    let report = verify_code(&inner);
    eq(
        "classification",
        report.classification,
        Classification::Strong,
    )?;
    eq("theta", inner.theta(), 15)?;
    ensure!(report.rho_observed.values().all(|&r| r == 2), "rho != 2");
    eq("node sizes", report.node_sizes.clone(), vec![5; 6])?;

    let code = assemble_dress(&inner, 4).map_err(|e| e.to_string())?;
    eq("B", code.b(), 14)?;
    let file: Vec<u8> = b"fourteen bytes".to_vec();
    let pristine = store_file(&code, &file).map_err(|e| e.to_string())?;
    let subsets = k_subsets(6, 4);
    eq("subset count", subsets.len(), 15)?;
    for s in &subsets {
        eq(
            "retrieved",
            pristine.retrieve_file(s).map_err(|e| e.to_string())?,
            file.clone(),
        )?;
    }
    for node in 0..6 {
        let mut c = pristine.clone();
        c.fail_node(node).map_err(|e| e.to_string())?;
        let r = c
            .repair(node, RepairMode::Strict)
            .map_err(|e| e.to_string())?;
        eq("bandwidth", r.total_bandwidth, 5)?;
        eq("helpers", r.helpers().len(), 5)?;
        ensure!(
            c.stores() == pristine.stores(),
            "repair of node {} not exact",
            node + 1
        );
    }
    within(Duration::from_secs(1), start)
}

const PRG_9_7: [[u8; 9]; 9] = [
    [0, 1, 1, 1, 1, 0, 1, 1, 1],
    [1, 0, 1, 1, 1, 1, 0, 1, 1],
    [1, 1, 0, 1, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 1, 1, 1, 1, 0],
    [1, 1, 1, 1, 0, 1, 1, 1, 0],
    [0, 1, 1, 1, 1, 0, 1, 1, 1],
    [1, 0, 1, 1, 1, 1, 0, 1, 1],
    [1, 1, 0, 1, 1, 1, 1, 0, 1],
    [1, 1, 1, 0, 0, 1, 1, 1, 0],
];

fn ac2_prg() -> Check {
    let start = Instant::now();
    let g = partial_regular_graph(9, 7).map_err(|e| e.to_string())?;
    for (i, row) in PRG_9_7.iter().enumerate() {
        eq(&format!("PRG row {}", i + 1), g.row(i), &row[..])?;
    }
    let inner = wfr_from_prg(9, 7).map_err(|e| e.to_string())?;
    let report = verify_code(&inner);
    eq("theta", inner.theta(), 31)?;
    eq("delta", report.delta_total, 1)?;
    eq(
        "node sizes",
        report.node_sizes.clone(),
        vec![7, 7, 7, 7, 7, 7, 7, 7, 6],
    )?;
    eq(
        "classification",
        report.classification,
        Classification::Weak,
    )?;

    let code = assemble_dress(&inner, 7).map_err(|e| e.to_string())?;
    eq("B", code.b(), 30)?;
    let file: Vec<u8> = (0..30u8)
        .map(|i| i.wrapping_mul(29).wrapping_add(3))
        .collect();
    let pristine = store_file(&code, &file).map_err(|e| e.to_string())?;
    let subsets = k_subsets(9, 7);
    eq("subset count", subsets.len(), 36)?;
    for s in &subsets {
        eq(
            "retrieved",
            pristine.retrieve_file(s).map_err(|e| e.to_string())?,
            file.clone(),
        )?;
    }
    for node in 0..9 {
        let mut c = pristine.clone();
        c.fail_node(node).map_err(|e| e.to_string())?;
        let r = c
            .repair(node, RepairMode::Strict)
            .map_err(|e| e.to_string())?;
        let want = if node == 8 { 6 } else { 7 };
        eq(
            &format!("helpers for node {}", node + 1),
            r.helpers().len(),
            want,
        )?;
        eq("bandwidth", r.total_bandwidth, want)?;
        ensure!(
            c.stores() == pristine.stores(),
            "repair of node {} not exact",
            node + 1
        );
    }
    within(Duration::from_secs(1), start)
}

fn ac3_bounds() -> Check {
    eq(
        "C_MBR(6,4,5)",
        mbr_capacity(6, 4, 5).map_err(|e| e.to_string())?,
        14,
    )?;
    eq(
        "C_MBR(9,7,7)",
        mbr_capacity(9, 7, 7).map_err(|e| e.to_string())?,
        28,
    )?;
    for d in 1..=12 {
        for k in 1..=d {
            let mbr = mbr_file_size(k, d, 1).map_err(|e| e.to_string())?;
            for alpha in d..=d + 4 {
                let cut = cut_set_bound(k, d, alpha, 1).map_err(|e| e.to_string())?;
                eq(&format!("k={k} d={d} alpha={alpha}"), cut, mbr)?;
            }
        }
    }
    Ok(())
}

/// Replication counts of `{ t^{i-1} + j mod (n+1) }` by direct counting.
fn modular_profile_oracle(n: usize, t: usize, rho: usize) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for j in 0..n {
        let mut set = BTreeSet::new();
        let mut power = 1;
        for _ in 0..rho {
            set.insert((power + j) % (n + 1));
            power *= t;
        }
        for r in set {
            *counts.entry(r).or_insert(0) += 1;
        }
    }
    counts
}

fn ac4_modular_audit() -> Check {
    let oracle = modular_profile_oracle(8, 2, 3);
    let mut expected = BTreeMap::new();
    for r in 0..9 {
        expected.insert(r, if [0, 1, 3].contains(&r) { 2 } else { 3 });
    }
    eq("oracle profile", oracle.clone(), expected)?;

    let code = modular_code(8, 2, 3).map_err(|e| e.to_string())?;
    let report = verify_code(&code);
    eq(
        "classification",
        report.classification,
        Classification::Irregular,
    )?;
    let observed: BTreeMap<usize, usize> = report
        .rho_observed
        .iter()
        .map(|(&s, &c)| (s as usize, c))
        .collect();
    eq("observed profile", observed, oracle)?;
    let profile = report.replication_profile();
    eq("rep 2", profile[&2].clone(), vec![0, 1, 3])?;
    eq("rep 3 count", profile[&3].len(), 6)
}

fn ac5_ring() -> Check {
    let r = verify_code(&ring_code(9, 31).map_err(|e| e.to_string())?);
    eq("sum sizes", r.node_sizes.iter().sum::<usize>(), 62)?;
    eq("d", r.d_max, 8)?;
    eq("delta", r.delta_total, 10)?;
    eq("class", r.classification, Classification::Weak)?;

    let r = verify_code(&ring_code(9, 18).map_err(|e| e.to_string())?);
    eq("class", r.classification, Classification::Strong)?;
    eq("sizes", r.node_sizes, vec![4; 9])?;

    for n in 3..=10 {
        for theta in n..=4 * n {
            let r = verify_code(&ring_code(n, theta).map_err(|e| e.to_string())?);
            eq(
                &format!("strong iff n | theta (n={n}, theta={theta})"),
                r.classification == Classification::Strong,
                theta % n == 0,
            )?;
        }
    }
    Ok(())
}

fn ac6_projective() -> Check {
    for m in [2usize, 3] {
        let code = projective_plane_code(m).map_err(|e| e.to_string())?;
        let q = m * m + m + 1;
        let r = verify_code(&code);
        eq("class", r.classification, Classification::Strong)?;
        eq("n", code.n(), q)?;
        eq("theta", code.theta(), q)?;
        eq("d", r.d_max, m + 1)?;
        ensure!(
            r.rho_observed.values().all(|&c| c == m + 1),
            "rho != m + 1 for m = {m}"
        );
        for a in 0..q {
            for b in a + 1..q {
                let shared = code
                    .node(a)
                    .iter()
                    .filter(|&&s| code.contains(b, s))
                    .count();
                eq(&format!("|U{} ∩ U{}|", a + 1, b + 1), shared, 1)?;
            }
        }
    }
    Ok(())
}

fn ac7_mds() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for theta in 1..=16usize {
        for b in 1..=theta {
            let params = MdsParams::new(theta, b).map_err(|e| e.to_string())?;
            let file: Vec<Gf256> = (0..b).map(|_| Gf256(rng.gen())).collect();
            let y = params.encode(&file).map_err(|e| e.to_string())?;
            for s in k_subsets(theta, b) {
                let rx = s.iter().map(|&c| (c, y[c])).collect();
                eq(
                    &format!("theta={theta} B={b} {s:?}"),
                    params.decode(&rx).map_err(|e| e.to_string())?,
                    file.clone(),
                )?;
            }
        }
    }
    for _ in 0..100 {
        let theta = rng.gen_range(2..=16);
        let b = rng.gen_range(1..=theta);
        let params = MdsParams::new(theta, b).map_err(|e| e.to_string())?;
        let file: Vec<Gf256> = (0..b).map(|_| Gf256(rng.gen())).collect();
        let y = params.encode(&file).map_err(|e| e.to_string())?;
        let rx = (0..theta).map(|c| (c, y[c])).collect();
        eq(
            "round trip",
            params.decode(&rx).map_err(|e| e.to_string())?,
            file,
        )?;
    }
    for a in 1..=255u8 {
        let x = Gf256(a);
        let inv = x.inv().ok_or("missing inverse")?;
        eq(&format!("{a} * inv"), x * inv, Gf256::ONE)?;
    }
    within(Duration::from_secs(5), start)
}

/// Tolerance by definition: largest f such that no f-set of failed nodes
/// contains every holder of some symbol.
fn tolerance_oracle(code: &FrCode) -> usize {
    let n = code.n();
    let holder_masks: Vec<u32> = code
        .symbols()
        .iter()
        .map(|&s| {
            (0..n)
                .filter(|&i| code.contains(i, s))
                .map(|i| 1 << i)
                .sum()
        })
        .collect();
    (0u32..1 << n)
        .filter(|dead| holder_masks.iter().any(|h| h & dead == *h))
        .map(|dead| dead.count_ones() as usize)
        .min()
        .map_or(n, |smallest_fatal| smallest_fatal - 1)
}

fn ac8_tolerance() -> Check {
    let rho2: Vec<(&str, FrCode, usize)> = vec![
        ("regular(6,5)", regular_graph_code(6, 5).unwrap(), 4),
        ("regular(4,2)", regular_graph_code(4, 2).unwrap(), 2),
        ("regular(10,3)", regular_graph_code(10, 3).unwrap(), 6),
        ("prg(9,7)", wfr_from_prg(9, 7).unwrap(), 7),
        ("prg(5,3)", wfr_from_prg(5, 3).unwrap(), 3),
        ("ring(9,31)", ring_code(9, 31).unwrap(), 7),
        ("ring(9,18)", ring_code(9, 18).unwrap(), 7),
        ("ring(3,3)", ring_code(3, 3).unwrap(), 2),
    ];
    for (name, inner, k) in rho2 {
        let code = assemble_dress(&inner, k).map_err(|e| e.to_string())?;
        eq(name, failure_tolerance_check(&code), 1)?;
    }
    for m in [2usize, 3] {
        let inner = projective_plane_code(m).map_err(|e| e.to_string())?;
        let n = inner.n();
        let code = assemble_dress(&inner, n - 2).map_err(|e| e.to_string())?;
        let got = failure_tolerance_check(&code);
        eq(&format!("projective({m})"), got, tolerance_oracle(&inner))?;
        ensure!(got >= m, "projective({m}) tolerates {got} < rho - 1 = {m}");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("AC1 (6,4,5) K6 code", ac1_k6_code),
        ("AC2 PRG(9,7) weak FR reproduction", ac2_prg),
        ("AC3 bounds", ac3_bounds),
        ("AC4 modular construction audit", ac4_modular_audit),
        ("AC5 ring construction", ac5_ring),
        ("AC6 projective planes", ac6_projective),
        ("AC7 MDS property suite", ac7_mds),
        ("AC8 failure tolerance", ac8_tolerance),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
