//! Systematic (θ, B) MDS erasure code over GF(256).
//!
//! The generator is `[I_B; P]`. With a single parity row `P` is all ones, a
//! plain parity check. With more parity rows `P` is the Cauchy matrix
//! `P[j][i] = 1 / (x_i + y_j)` with `x_i = i` for `i < B` and `y_j = B + j`,
//! so every square submatrix of `P` is nonsingular and any B coordinates
//! determine the message.
//!
//! Coordinates are 0-based here: coordinate `c` carries the symbol labelled
//! `c + 1` in a normalized inner code.

use std::collections::BTreeMap;

use crate::error::{violation, Error, Result};
use crate::gf256::Gf256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsParams {
    theta: usize,
    b: usize,
    parity: Vec<Vec<Gf256>>,
}

impl MdsParams {
    pub fn new(theta: usize, b: usize) -> Result<Self> {
        if b == 0 {
            return Err(violation("message length B must be >= 1"));
        }
        if theta < b {
            return Err(violation(format!(
                "theta >= B required (theta = {theta}, B = {b})"
            )));
        }
        if theta > 256 {
            return Err(violation(format!("theta <= 256 required, got {theta}")));
        }
        let parity = if theta == b + 1 {
            vec![vec![Gf256::ONE; b]]
        } else {
            (b..theta)
                .map(|y| {
                    (0..b)
                        .map(|x| {
                            Gf256((x ^ y) as u8)
                                .inv()
                                .expect("Cauchy coordinates are distinct")
                        })
                        .collect()
                })
                .collect()
        };
        Ok(Self { theta, b, parity })
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Row `c` of the θ×B generator matrix.
    pub fn row(&self, c: usize) -> Vec<Gf256> {
        if c < self.b {
            let mut unit = vec![Gf256::ZERO; self.b];
            unit[c] = Gf256::ONE;
            unit
        } else {
            self.parity[c - self.b].clone()
        }
    }

    pub fn encoding_matrix(&self) -> Vec<Vec<Gf256>> {
        (0..self.theta).map(|c| self.row(c)).collect()
    }

    /// Encodes B message symbols into θ coded symbols; the first B are the
    /// message itself.
    pub fn encode(&self, file: &[Gf256]) -> Result<Vec<Gf256>> {
        if file.len() != self.b {
            return Err(Error::LengthMismatch {
                expected: self.b,
                actual: file.len(),
            });
        }
        let mut out = file.to_vec();
        out.extend(self.parity.iter().map(|row| dot(row, file)));
        Ok(out)
    }

    /// Recovers the message from any B or more coordinates.
    ///
    /// The lowest B coordinates are solved for; any further coordinates are
    /// checked against the re-encoded message.
    pub fn decode(&self, received: &BTreeMap<usize, Gf256>) -> Result<Vec<Gf256>> {
        if let Some((&c, _)) = received.range(self.theta..).next() {
            return Err(Error::CoordinateOutOfRange {
                coordinate: c,
                theta: self.theta,
            });
        }
        if received.len() < self.b {
            return Err(Error::InsufficientSymbols {
                needed: self.b,
                available: received.len(),
            });
        }
        let chosen: Vec<(usize, Gf256)> = received
            .iter()
            .take(self.b)
            .map(|(&c, &v)| (c, v))
            .collect();
        let mut file = vec![Gf256::ZERO; self.b];
        let mut known = vec![false; self.b];
        let mut parity = Vec::new();
        for &(c, v) in &chosen {
            if c < self.b {
                file[c] = v;
                known[c] = true;
            } else {
                parity.push((c, v));
            }
        }
        // Erased message positions: each parity row, minus the contribution of
        // the known symbols, gives one equation in the unknowns.
        let missing: Vec<usize> = (0..self.b).filter(|&i| !known[i]).collect();
        if !missing.is_empty() {
            let system = parity
                .iter()
                .map(|&(c, v)| {
                    let row = &self.parity[c - self.b];
                    let rhs = (0..self.b)
                        .filter(|&i| known[i])
                        .fold(v, |acc, i| acc - row[i] * file[i]);
                    let mut eq: Vec<Gf256> = missing.iter().map(|&m| row[m]).collect();
                    eq.push(rhs);
                    eq
                })
                .collect();
            let solved = solve(system, missing.len())
                .ok_or_else(|| Error::InternalCheck("selected parity rows are singular".into()))?;
            for (&m, v) in missing.iter().zip(solved) {
                file[m] = v;
            }
        }
        if received.len() > self.b {
            let codeword = self.encode(&file)?;
            if received.iter().any(|(&c, &v)| codeword[c] != v) {
                return Err(Error::InconsistentSymbols);
            }
        }
        Ok(file)
    }

    pub fn encode_bytes(&self, file: &[u8]) -> Result<Vec<u8>> {
        let symbols: Vec<Gf256> = file.iter().copied().map(Gf256).collect();
        Ok(self.encode(&symbols)?.into_iter().map(u8::from).collect())
    }
}

fn dot(row: &[Gf256], v: &[Gf256]) -> Gf256 {
    row.iter()
        .zip(v)
        .fold(Gf256::ZERO, |acc, (&a, &b)| acc + a * b)
}

/// Gauss-Jordan elimination on an augmented `size × (size + 1)` system.
fn solve(mut m: Vec<Vec<Gf256>>, size: usize) -> Option<Vec<Gf256>> {
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].inv()?;
        for v in m[col].iter_mut() {
            *v *= inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (v, &p) in row.iter_mut().zip(&pivot_row) {
                *v += factor * p;
            }
        }
    }
    Some(m.into_iter().map(|row| row[size]).collect())
}
