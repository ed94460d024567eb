use crate::code::{FrCode, Symbol};
use crate::error::{violation, Result};

/// Modular construction: node `j` (for `0 <= j < n`) stores
/// `{ t^{i−1} + j mod (n+1) : 1 <= i <= rho }`.
///
/// Symbols are emitted as raw residues, so 0 can appear. The replication
/// profile of the result is not uniform in general; run
/// [`verify_code`](crate::verify_code) rather than assuming it.
pub fn modular_code(n: usize, t: usize, rho: usize) -> Result<FrCode> {
    if t < 2 {
        return Err(violation(format!("t >= 2 required, got {t}")));
    }
    if rho < 2 {
        return Err(violation(format!("rho >= 2 required, got {rho}")));
    }
    let top = u32::try_from(rho - 1)
        .ok()
        .and_then(|e| t.checked_pow(e))
        .filter(|&p| p < n)
        .ok_or_else(|| {
            violation(format!(
                "t^(rho-1) < n violated (n = {n}, t = {t}, rho = {rho})"
            ))
        })?;
    debug_assert!(top < n);

    let modulus = n + 1;
    let powers: Vec<usize> = (0..rho as u32).map(|e| t.pow(e) % modulus).collect();
    let mut sorted = powers.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(violation("powers of t collide modulo n + 1"));
    }

    let nodes = (0..n)
        .map(|j| {
            powers
                .iter()
                .map(|&p| ((p + j) % modulus) as Symbol)
                .collect()
        })
        .collect();
    FrCode::new(nodes, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{normalize_symbols, verify_code, Classification};

    #[test]
    fn sets_for_n8_t2_rho3() {
        let code = modular_code(8, 2, 3).unwrap();
        assert_eq!(code.node(0), &[1, 2, 4]);
        assert_eq!(code.node(7), &[0, 2, 8]);
        let r = verify_code(&code);
        assert!(r.node_sizes.iter().all(|&s| s == 3));
        assert_eq!(r.classification, Classification::Irregular);
        assert_eq!(code.theta(), 9);
    }

    #[test]
    fn normalization_shifts_by_one() {
        let code = modular_code(8, 2, 3).unwrap();
        let norm = normalize_symbols(&code);
        for (a, b) in code.nodes().iter().zip(norm.nodes()) {
            let shifted: Vec<Symbol> = a.iter().map(|s| s + 1).collect();
            assert_eq!(&shifted, b);
        }
    }

    #[test]
    fn precondition_failures() {
        assert!(modular_code(8, 1, 3).is_err());
        assert!(modular_code(8, 2, 1).is_err());
        assert!(modular_code(4, 2, 3).is_err());
        assert!(modular_code(8, 2, 4).is_err());
        assert!(modular_code(10, 3, 40).is_err());
    }

    #[test]
    fn node_sizes_equal_rho() {
        for n in 3..40 {
            for t in 2..6 {
                for rho in 2..6 {
                    if let Ok(code) = modular_code(n, t, rho) {
                        assert!(code.nodes().iter().all(|s| s.len() == rho));
                        assert_eq!(code.n(), n);
                    }
                }
            }
        }
    }
}
