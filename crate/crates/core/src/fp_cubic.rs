//! The reduced cubic `x³ + āx = b̄` over F_p.
//!
//! Root counting goes through the discriminant `D̄ = -4ā³ - 27b̄²` and the
//! order-3 recurrence `u_{n+3} = b̄·u_n - ā·u_{n+1}` with `u₁ = 0, u₂ = -ā, u₃ = b̄`:
//! the count is 3 when `D̄·u_{p-2}² = 0`, 0 when it equals `9ā²`, and 1 otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::padic::Prime;

/// `x³ + a0·x = b0` over F_p with `a0·b0 ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpCubic {
    pub prime: Prime,
    pub a0: u64,
    pub b0: u64,
}

/// Three consecutive recurrence terms `(u_n, u_{n+1}, u_{n+2})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceState {
    pub u1: u64,
    pub u2: u64,
    pub u3: u64,
}

type Mat3 = [[u64; 3]; 3];

/// Outcome of the closed-form root count together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpCountVerdict {
    pub discriminant: u64,
    pub u_p_minus_2: u64,
    pub count: u8,
}

impl FpCubic {
    pub fn new(a0: u64, b0: u64, prime: Prime) -> Result<Self> {
        let a0 = a0 % prime.get();
        let b0 = b0 % prime.get();
        if a0 == 0 || b0 == 0 {
            return Err(Error::ZeroResidue);
        }
        Ok(FpCubic { prime, a0, b0 })
    }

    /// `D̄ = -4a0³ - 27b0² (mod p)`.
    pub fn discriminant(&self) -> u64 {
        let p = self.prime;
        let a3 = p.mul_mod(p.mul_mod(self.a0, self.a0), self.a0);
        let b2 = p.mul_mod(self.b0, self.b0);
        let four_a3 = p.mul_mod(4 % p.get(), a3);
        let t = p.mul_mod(27 % p.get(), b2);
        p.neg_mod(p.add_mod(four_a3, t))
    }

    pub fn initial_state(&self) -> RecurrenceState {
        RecurrenceState {
            u1: 0,
            u2: self.prime.neg_mod(self.a0),
            u3: self.b0,
        }
    }

    fn step(&self, s: RecurrenceState) -> RecurrenceState {
        let p = self.prime;
        let next = p.sub_mod(p.mul_mod(self.b0, s.u1), p.mul_mod(self.a0, s.u2));
        RecurrenceState {
            u1: s.u2,
            u2: s.u3,
            u3: next,
        }
    }

    /// Companion matrix mapping `(u_n, u_{n+1}, u_{n+2})ᵀ` to `(u_{n+1}, u_{n+2}, u_{n+3})ᵀ`.
    fn companion(&self) -> Mat3 {
        let p = self.prime;
        [[0, 1, 0], [0, 0, 1], [self.b0, p.neg_mod(self.a0), 0]]
    }

    fn mat_mul(&self, x: &Mat3, y: &Mat3) -> Mat3 {
        let p = self.prime;
        let mut out = [[0u64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(0, |acc, k| p.add_mod(acc, p.mul_mod(x[i][k], y[k][j])));
            }
        }
        out
    }

    /// `u_n` by companion-matrix exponentiation, `O(log n)` products.
    pub fn u_term(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut acc: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut base = self.companion();
        let mut e = n - 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mat_mul(&acc, &base);
            }
            base = self.mat_mul(&base, &base);
            e >>= 1;
        }
        let s = self.initial_state();
        let p = self.prime;
        let row = acc[0];
        Ok(p.add_mod(
            p.add_mod(p.mul_mod(row[0], s.u1), p.mul_mod(row[1], s.u2)),
            p.mul_mod(row[2], s.u3),
        ))
    }

    /// `u_n` by direct iteration, `O(n)`.
    pub fn u_term_iterative(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::ZeroArgument);
        }
        let mut s = self.initial_state();
        for _ in 1..n {
            s = self.step(s);
        }
        Ok(s.u1)
    }

    /// Closed-form count of roots in F_p (counted with multiplicity when `D̄ = 0`).
    pub fn count_verdict(&self) -> FpCountVerdict {
        let p = self.prime;
        let d = self.discriminant();
        let u = self.u_term(p.get() - 2).expect("p - 2 >= 1 for p > 3");
        let lhs = p.mul_mod(d, p.mul_mod(u, u));
        let nine_a2 = p.mul_mod(9, p.mul_mod(self.a0, self.a0));
        let count = if lhs == 0 {
            3
        } else if lhs == nine_a2 {
            0
        } else {
            1
        };
        FpCountVerdict {
            discriminant: d,
            u_p_minus_2: u,
            count,
        }
    }

    pub fn count_roots_formula(&self) -> u8 {
        self.count_verdict().count
    }

    /// Distinct roots in F_p, ascending, by exhaustive scan.
    pub fn roots_exhaustive(&self, limits: &Limits) -> Result<Vec<u64>> {
        limits.check_scan(self.prime.get() as u128)?;
        let p = self.prime;
        Ok((0..p.get())
            .filter(|&x| {
                let lhs = p.add_mod(p.mul_mod(p.mul_mod(x, x), x), p.mul_mod(self.a0, x));
                lhs == self.b0
            })
            .collect())
    }
}

/// Unique root of `a·x ≡ b (mod p)`.
pub fn linear_root(a: u64, b: u64, p: Prime) -> Result<u64> {
    let inv = p.inv_mod(a % p.get())?;
    Ok(p.mul_mod(b % p.get(), inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(p: u64, a0: u64, b0: u64) -> FpCubic {
        FpCubic::new(a0, b0, Prime::new(p).unwrap()).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(cubic(5, 1, 1).discriminant(), 4);
        assert_eq!(cubic(11, 4, 5).discriminant(), 4);
        assert_eq!(cubic(7, 4, 5).discriminant(), 0);
    }

    #[test]
    fn u_term_examples() {
        let c = cubic(11, 4, 5);
        assert_eq!(c.u_term(2).unwrap(), 7);
        assert_eq!(c.u_term(9).unwrap(), 0);
        assert_eq!(cubic(5, 1, 2).u_term(3).unwrap(), 2);
        assert_eq!(c.u_term(0), Err(Error::ZeroArgument));
    }

    #[test]
    fn u_terms_of_worked_instance() {
        // u1..u9 for ā = 4, b̄ = 5 over F_11.
        let c = cubic(11, 4, 5);
        let seq: Vec<u64> = (1..=9).map(|n| c.u_term(n).unwrap()).collect();
        assert_eq!(seq, vec![0, 7, 5, 5, 4, 5, 9, 0, 0]);
    }

    #[test]
    fn count_formula_examples() {
        assert_eq!(cubic(11, 4, 5).count_roots_formula(), 3);
        assert_eq!(cubic(5, 1, 1).count_roots_formula(), 0);
        assert_eq!(cubic(5, 1, 2).count_roots_formula(), 1);
    }

    #[test]
    fn exhaustive_examples() {
        let lim = Limits::default();
        assert_eq!(
            cubic(11, 4, 5).roots_exhaustive(&lim).unwrap(),
            vec![1, 2, 8]
        );
        assert!(cubic(5, 1, 1).roots_exhaustive(&lim).unwrap().is_empty());
        assert_eq!(cubic(5, 1, 2).roots_exhaustive(&lim).unwrap(), vec![1]);
    }

    #[test]
    fn linear_root_examples() {
        let p5 = Prime::new(5).unwrap();
        assert_eq!(linear_root(1, 1, p5).unwrap(), 1);
        assert_eq!(linear_root(2, 1, p5).unwrap(), 3);
        assert_eq!(linear_root(4, 5, Prime::new(11).unwrap()).unwrap(), 4);
        assert_eq!(linear_root(5, 1, p5), Err(Error::ZeroResidue));
    }

    #[test]
    fn rejects_zero_coefficients() {
        let p = Prime::new(7).unwrap();
        assert_eq!(FpCubic::new(7, 1, p), Err(Error::ZeroResidue));
        assert_eq!(FpCubic::new(1, 0, p), Err(Error::ZeroResidue));
    }

    #[test]
    fn formula_matches_scan_on_small_primes() {
        let lim = Limits::default();
        for p in [5u64, 7, 11, 13] {
            for a0 in 1..p {
                for b0 in 1..p {
                    let c = cubic(p, a0, b0);
                    let roots = c.roots_exhaustive(&lim).unwrap();
                    for &r in &roots {
                        let pr = c.prime;
                        let lhs = pr.add_mod(pr.pow_mod(r, 3), pr.mul_mod(a0, r));
                        assert_eq!(lhs, b0);
                    }
                    let n = c.count_roots_formula() as usize;
                    if c.discriminant() != 0 {
                        assert_eq!(n, roots.len(), "p={p} a0={a0} b0={b0}");
                    } else {
                        assert_eq!(n, 3);
                        assert!(roots.len() == 1 || roots.len() == 2);
                    }
                }
            }
        }
    }
}
