//! Power residues over F_p and solvability of `x^q = a` over ℚ_p.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::padic::{PadicRational, Prime};

fn nonzero_residue(a0: u64, p: Prime) -> Result<u64> {
    let a0 = a0 % p.get();
    if a0 == 0 {
        Err(Error::ZeroResidue)
    } else {
        Ok(a0)
    }
}

/// Euler-type criterion: `a0` is a q-th power in F_p iff `a0^{(p-1)/d} = 1`, `d = (q, p-1)`.
pub fn is_qth_residue(a0: u64, q: u64, p: Prime) -> Result<bool> {
    let a0 = nonzero_residue(a0, p)?;
    let d = q.gcd(&(p.get() - 1));
    Ok(p.pow_mod(a0, (p.get() - 1) / d) == 1)
}

/// Number of solutions of `x^q = a0` in F_p: `(q, p-1)` for a residue, else 0.
pub fn qth_root_count_mod_p(a0: u64, q: u64, p: Prime) -> Result<u64> {
    if is_qth_residue(a0, q, p)? {
        Ok(q.gcd(&(p.get() - 1)))
    } else {
        Ok(0)
    }
}

/// Splits `q = m · p^s` with `(m, p) = 1`.
fn split_q(q: u64, p: Prime) -> (u64, u32) {
    let mut m = q;
    let mut s = 0;
    while m.is_multiple_of(p.get()) {
        m /= p.get();
        s += 1;
    }
    (m, s)
}

/// Solvability of `x^q = a` in ℚ_p.
///
/// For `q = m·p^s` this checks `a₀^{(p-1)/(m,p-1)} ≡ 1 (mod p)`, `q | log_p|a|_p`
/// and, when `s ≥ 1`, `a₀^{p^s} ≡ a* (mod p^{s+1})` where `a*` is the unit part.
pub fn monomial_solvable(a: &PadicRational, q: u64) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    if q == 0 {
        return Err(Error::ZeroArgument);
    }
    let p = a.prime();
    let (m, s) = split_q(q, p);
    let a0 = a.leading_digit()?;
    let d = m.gcd(&(p.get() - 1));
    if p.pow_mod(a0, (p.get() - 1) / d) != 1 {
        return Ok(false);
    }
    if a.norm_exponent()?.rem_euclid(q as i64) != 0 {
        return Ok(false);
    }
    if s >= 1 {
        let modulus = p.pow(s + 1);
        let unit = a.unit_part()?.residue_mod_pow(s + 1)?;
        let lifted = BigInt::from(a0).modpow(&p.pow(s), &modulus);
        if lifted != unit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of roots of `x^q = a` in ℚ_p: `(m, p-1)` when solvable (`q = m·p^s`), else 0.
///
/// For `(q, p) = 1` this is `(q, p-1)`. Odd p has no nontrivial p-power roots
/// of unity in ℚ_p, so the p-part of `q` contributes no extra roots.
pub fn monomial_root_count(a: &PadicRational, q: u64) -> Result<u64> {
    if !monomial_solvable(a, q)? {
        return Ok(0);
    }
    let (m, _) = split_q(q, a.prime());
    Ok(m.gcd(&(a.prime().get() - 1)))
}

/// `√a` exists in ℚ_p.
pub fn sqrt_exists(a: &PadicRational) -> Result<bool> {
    monomial_solvable(a, 2)
}

/// `∛a` exists in ℚ_p.
pub fn cbrt_exists(a: &PadicRational) -> Result<bool> {
    monomial_solvable(a, 3)
}

/// All `x ∈ F_p` with `x^q = a0`, ascending, by exhaustive scan.
pub fn nth_roots_mod_p(a0: u64, q: u64, p: Prime, limits: &Limits) -> Result<Vec<u64>> {
    let a0 = nonzero_residue(a0, p)?;
    limits.check_scan(p.get() as u128)?;
    Ok((1..p.get()).filter(|&x| p.pow_mod(x, q) == a0).collect())
}
