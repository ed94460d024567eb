use crate::code::{FrCode, Symbol};
use crate::error::{violation, Result};

/// Generalized ring code with ρ = 2.
///
/// The n nodes sit on a circle and packets are dealt round-robin onto the
/// gaps between consecutive nodes: packet `p` lands on gap `(p − 1) mod n`,
/// and gap `e` lies between `U_{e+1}` and `U_{(e+1 mod n)+1}`. Writing
/// `θ = qn + r`, the result is strong when `r = 0` and weak otherwise.
pub fn ring_code(n: usize, theta: usize) -> Result<FrCode> {
    if n < 3 {
        return Err(violation(format!("n >= 3 required, got {n}")));
    }
    if theta + 1 < n {
        return Err(violation(format!(
            "theta >= n - 1 required (n = {n}, theta = {theta})"
        )));
    }
    let mut nodes: Vec<Vec<Symbol>> = vec![Vec::new(); n];
    for p in 1..=theta {
        let gap = (p - 1) % n;
        nodes[gap].push(p as Symbol);
        nodes[(gap + 1) % n].push(p as Symbol);
    }
    FrCode::new(nodes, 2)
}
