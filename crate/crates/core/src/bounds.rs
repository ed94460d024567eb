//! Parameter checks and capacity bounds for an `(n, k, d)` storage system.

use crate::error::{violation, Result};

/// System parameters `(n, k, d, α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DssParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Per-node storage in symbols.
    pub alpha: usize,
    /// Per-helper download in symbols.
    pub beta: usize,
}

impl DssParams {
    /// Validates `n`, `k`, `d` and sets the MBR point with unit helper
    /// download: `α = d`, `β = 1`.
    pub fn new(n: usize, k: usize, d: usize) -> Result<Self> {
        Self::with_storage(n, k, d, d, 1)
    }

    pub fn with_storage(n: usize, k: usize, d: usize, alpha: usize, beta: usize) -> Result<Self> {
        if n < 2 {
            return Err(violation(format!("n >= 2 violated (n = {n})")));
        }
        if k < 1 {
            return Err(violation("k >= 1 violated (k = 0)"));
        }
        if k > d {
            return Err(violation(format!("k <= d violated (k = {k}, d = {d})")));
        }
        if d > n - 1 {
            return Err(violation(format!("d <= n - 1 violated (d = {d}, n = {n})")));
        }
        if alpha < 1 {
            return Err(violation("alpha >= 1 violated"));
        }
        if beta < 1 {
            return Err(violation("beta >= 1 violated"));
        }
        Ok(Self {
            n,
            k,
            d,
            alpha,
            beta,
        })
    }
}

pub fn validate_dss_params(n: usize, k: usize, d: usize) -> Result<DssParams> {
    DssParams::new(n, k, d)
}

fn check_k_d(k: usize, d: usize) -> Result<()> {
    if k > d {
        return Err(violation(format!("k <= d violated (k = {k}, d = {d})")));
    }
    Ok(())
}

/// `kd − k(k−1)/2`, the MBR capacity at unit helper download.
pub fn mbr_capacity(n: usize, k: usize, d: usize) -> Result<usize> {
    let p = validate_dss_params(n, k, d)?;
    Ok(mbr_sum(p.k, p.d))
}

fn mbr_sum(k: usize, d: usize) -> usize {
    k * d - k * (k - 1) / 2
}

/// `Σ_{i=0}^{k−1} min{α, (d−i)β}`.
pub fn cut_set_bound(k: usize, d: usize, alpha: usize, beta: usize) -> Result<usize> {
    check_k_d(k, d)?;
    if alpha < 1 || beta < 1 {
        return Err(violation("alpha >= 1 and beta >= 1 required"));
    }
    Ok((0..k).map(|i| alpha.min((d - i) * beta)).sum())
}

/// `(kd − k(k−1)/2)·β`, the largest file an MBR code can hold.
pub fn mbr_file_size(k: usize, d: usize, beta: usize) -> Result<usize> {
    check_k_d(k, d)?;
    if beta < 1 {
        return Err(violation("beta >= 1 required"));
    }
    Ok(mbr_sum(k, d) * beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn validation() {
        let p = validate_dss_params(6, 4, 5).unwrap();
        assert_eq!((p.alpha, p.beta), (5, 1));
        let err = validate_dss_params(6, 4, 6).unwrap_err();
        assert!(matches!(err, Error::ParamViolation(ref m) if m.contains("d <= n - 1")));
        let err = validate_dss_params(6, 5, 4).unwrap_err();
        assert!(matches!(err, Error::ParamViolation(ref m) if m.contains("k <= d")));
        assert!(validate_dss_params(6, 0, 4).is_err());
        assert!(validate_dss_params(1, 1, 1).is_err());
    }

    #[test]
    fn capacity() {
        assert_eq!(mbr_capacity(6, 4, 5).unwrap(), 14);
        assert_eq!(mbr_capacity(9, 7, 7).unwrap(), 28);
        for n in 2..10 {
            for d in 1..n {
                assert_eq!(mbr_capacity(n, 1, d).unwrap(), d);
            }
        }
        assert!(mbr_capacity(6, 5, 4).is_err());
    }

    #[test]
    fn cut_set() {
        assert_eq!(cut_set_bound(4, 5, 5, 1).unwrap(), 14);
        assert_eq!(cut_set_bound(1, 3, 2, 1).unwrap(), 2);
        assert_eq!(cut_set_bound(2, 2, 1, 1).unwrap(), 2);
        assert!(cut_set_bound(3, 2, 1, 1).is_err());
    }

    #[test]
    fn file_size() {
        assert_eq!(mbr_file_size(4, 5, 1).unwrap(), 14);
        assert_eq!(mbr_file_size(7, 7, 1).unwrap(), 28);
        assert_eq!(mbr_file_size(2, 3, 2).unwrap(), 10);
        assert!(mbr_file_size(5, 4, 1).is_err());
    }

    #[test]
    fn cut_set_saturates_at_mbr() {
        for d in 1..=12 {
            for k in 1..=d {
                for alpha in d..d + 3 {
                    assert_eq!(
                        cut_set_bound(k, d, alpha, 1).unwrap(),
                        mbr_file_size(k, d, 1).unwrap()
                    );
                }
            }
        }
    }
}
