use crate::code::{FrCode, Symbol};
use crate::error::{violation, Result};

fn is_prime(m: usize) -> bool {
    m >= 2
        && (2..)
            .take_while(|p| p * p <= m)
            .all(|p| !m.is_multiple_of(p))
}

/// Homogeneous coordinates over Z_m with first nonzero entry equal to 1, in
/// the order `(1, y, z)`, `(0, 1, z)`, `(0, 0, 1)`.
fn normalized_triples(m: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(m * m + m + 1);
    for y in 0..m {
        for z in 0..m {
            out.push([1, y, z]);
        }
    }
    for z in 0..m {
        out.push([0, 1, z]);
    }
    out.push([0, 0, 1]);
    out
}

/// Code from the projective plane of prime order `m`: points are symbols
/// (numbered `1..=m²+m+1`), lines are nodes. `n = θ = m² + m + 1` and
/// `ρ = d = m + 1`.
pub fn projective_plane_code(m: usize) -> Result<FrCode> {
    if !is_prime(m) {
        return Err(violation(format!("order m must be prime, got {m}")));
    }
    let points = normalized_triples(m);
    let nodes = points
        .iter()
        .map(|line| {
            (1..)
                .zip(&points)
                .filter(|(_, p)| (0..3).map(|i| line[i] * p[i]).sum::<usize>() % m == 0)
                .map(|(label, _): (Symbol, _)| label)
                .collect()
        })
        .collect();
    FrCode::new(nodes, m + 1)
}
