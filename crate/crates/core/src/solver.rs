//! Roots of `x³ + ax = b` in ℚ_p to a requested number of digits.
//!
//! A root of valuation `-k` is `y·p^{-k}` with `y` a unit root of
//! `y³ + a·p^{2k}·y = b·p^{3k}`. For each admissible `k` the unit roots are
//! seeded from a congruence mod p and lifted by Newton iteration. A seed that
//! is a double root mod p is refined digit by digit until the generalized
//! Hensel hypothesis `f(θ) ≡ 0 (mod p^{2i+1})`, `ord_p f'(θ) = i` holds.
//! Exact double roots (`-4a³ - 27b² = 0`) are rational and computed in closed form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::classifier::{CubicInstance, DomainTag};
use crate::error::{Error, Result};
use crate::fp_cubic::{linear_root, FpCubic};
use crate::limits::Limits;
use crate::padic::{
    rational_mod_pow, rational_valuation, DigitExpansion, PadicRational, Prime, Valuation,
};
use crate::residues::nth_roots_mod_p;

/// Default number of p-adic digits per root.
pub const DEFAULT_DIGITS: usize = 20;

/// `y³ + A·y = B` with `A = a·p^{2k}`, `B = b·p^{3k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledEquation {
    pub k: i64,
    pub a: PadicRational,
    pub b: PadicRational,
}

/// Which congruence supplies the initial points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeedCase {
    /// `x³ ≡ b₀` when `|A| < |B| = 1`
    CubeRoot,
    /// `x² + a₀ ≡ 0` when `|B| < |A| = 1`
    SquareRoot,
    /// `x³ + a₀x ≡ b₀` when `|A| = |B| = 1`
    FullCubic,
    /// `a₀x ≡ b₀` when `|A| = |B| > 1`
    Linear,
}

/// `cubic·y³ + linear·y + constant` with p-integral rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftPolynomial {
    pub prime: Prime,
    pub cubic: BigRational,
    pub linear: BigRational,
    pub constant: BigRational,
}

impl LiftPolynomial {
    pub fn eval(&self, y: &BigRational) -> BigRational {
        &self.cubic * y * y * y + &self.linear * y + &self.constant
    }

    /// Taylor coefficients `[c₀, c₁, c₂, c₃]` at `r0`: `f(r0 + t) = Σ cᵢ tⁱ`.
    pub fn taylor_at(&self, r0: &BigRational) -> [BigRational; 4] {
        let three = BigRational::from_integer(BigInt::from(3));
        [
            self.eval(r0),
            &three * &self.cubic * r0 * r0 + &self.linear,
            &three * &self.cubic * r0,
            self.cubic.clone(),
        ]
    }

    /// Discriminant `-4·c₃·c₁³ - 27·c₃²·c₀²` of `c₃y³ + c₁y + c₀`.
    pub fn discriminant(&self) -> BigRational {
        let four = BigRational::from_integer(BigInt::from(4));
        let twenty_seven = BigRational::from_integer(BigInt::from(27));
        -(four * &self.cubic * &self.linear * &self.linear * &self.linear)
            - twenty_seven * &self.cubic * &self.cubic * &self.constant * &self.constant
    }

    /// `ord_p f(y)` at an integer point.
    pub fn residual(&self, y: &BigInt) -> Valuation {
        rational_valuation(
            &self.eval(&BigRational::from_integer(y.clone())),
            self.prime,
        )
    }

    fn reduce(&self, n: u32) -> ZpCubic {
        let c = |x: &BigRational| {
            rational_mod_pow(x, self.prime, n).expect("lifting polynomial is p-integral")
        };
        ZpCubic {
            modulus: self.prime.pow(n),
            cubic: c(&self.cubic),
            linear: c(&self.linear),
            constant: c(&self.constant),
        }
    }
}

/// The lifting polynomial reduced modulo `p^n`.
struct ZpCubic {
    modulus: BigInt,
    cubic: BigInt,
    linear: BigInt,
    constant: BigInt,
}

impl ZpCubic {
    fn value(&self, y: &BigInt) -> BigInt {
        let y2 = (y * y).mod_floor(&self.modulus);
        (&self.cubic * &y2 * y + &self.linear * y + &self.constant).mod_floor(&self.modulus)
    }

    fn derivative(&self, y: &BigInt) -> BigInt {
        (BigInt::from(3) * &self.cubic * y * y + &self.linear).mod_floor(&self.modulus)
    }
}

/// `ord_p n`, capped at `cap` (the working precision) when `n ≡ 0`.
fn ord_capped(n: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if n.is_zero() {
        return cap;
    }
    let mut v = 0;
    let mut m = n.clone();
    while v < cap {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    v
}

/// An initial point for lifting one unit root of a scaled equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HenselSeed {
    pub r0: u64,
    pub poly: LiftPolynomial,
    pub case: SeedCase,
    /// `log_p |A|_p` in the linear case, otherwise 0.
    pub gamma: i64,
    /// Scaling exponent the seed belongs to.
    pub k: i64,
}

impl HenselSeed {
    pub fn prime(&self) -> Prime {
        self.poly.prime
    }

    fn r0_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.r0))
    }

    /// `f'(r0) ≢ 0 (mod p)`.
    pub fn is_simple(&self) -> bool {
        let [_, c1, _, _] = self.poly.taylor_at(&self.r0_rational());
        rational_valuation(&c1, self.prime()) == Valuation::Finite(0)
    }
}

/// Scalings `k` for which `y³ + a·p^{2k}y = b·p^{3k}` can have a unit root.
pub fn candidate_scalings(inst: &CubicInstance) -> Vec<ScaledEquation> {
    let e_a = -inst.ord_a();
    let e_b = -inst.ord_b();
    let mut ks = Vec::with_capacity(3);
    if e_b % 3 == 0 {
        ks.push(e_b / 3);
    }
    if e_a % 2 == 0 {
        ks.push(e_a / 2);
    }
    ks.push(e_b - e_a);
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter()
        .map(|k| {
            let scaled = inst.scaled(k);
            ScaledEquation {
                k,
                a: scaled.a().clone(),
                b: scaled.b().clone(),
            }
        })
        .collect()
}

/// Seeds for every unit root of the scaled equation; empty when the congruence has no root.
pub fn congruence_initials(eq: &ScaledEquation, limits: &Limits) -> Result<Vec<HenselSeed>> {
    let p = eq.a.prime();
    let v_a = eq.a.valuation().finite().ok_or(Error::ZeroCoefficient)?;
    let v_b = eq.b.valuation().finite().ok_or(Error::ZeroCoefficient)?;
    let a0 = eq.a.leading_digit()?;
    let b0 = eq.b.leading_digit()?;
    let monic = || LiftPolynomial {
        prime: p,
        cubic: BigRational::one(),
        linear: eq.a.value().clone(),
        constant: -eq.b.value().clone(),
    };
    let (case, roots, poly, gamma) = if v_a == 0 && v_b == 0 {
        let fp = FpCubic::new(a0, b0, p)?;
        (
            SeedCase::FullCubic,
            fp.roots_exhaustive(limits)?,
            monic(),
            0,
        )
    } else if v_a == v_b && v_a < 0 {
        let gamma = -v_a;
        let poly = LiftPolynomial {
            prime: p,
            cubic: PadicRational::prime_power(p, gamma).value().clone(),
            linear: eq.a.unit_part()?.value().clone(),
            constant: -eq.b.unit_part()?.value().clone(),
        };
        (SeedCase::Linear, vec![linear_root(a0, b0, p)?], poly, gamma)
    } else if v_a == 0 && v_b > 0 {
        let roots = nth_roots_mod_p(p.neg_mod(a0), 2, p, limits)?;
        (SeedCase::SquareRoot, roots, monic(), 0)
    } else if v_b == 0 && v_a > 0 {
        let roots = nth_roots_mod_p(b0, 3, p, limits)?;
        (SeedCase::CubeRoot, roots, monic(), 0)
    } else {
        return Ok(Vec::new());
    };
    Ok(roots
        .into_iter()
        .map(|r0| HenselSeed {
            r0,
            poly: poly.clone(),
            case,
            gamma,
            k: eq.k,
        })
        .collect())
}

/// Newton lift of a simple seed to `n` digits, doubling the working precision each step.
pub fn lift(seed: &HenselSeed, n: usize) -> Result<DigitExpansion> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    if !seed.is_simple() {
        return Err(Error::SingularSeed);
    }
    let p = seed.prime();
    let full = seed.poly.reduce(n as u32);
    let mut r = BigInt::from(seed.r0);
    let mut prec = 1usize;
    while prec < n {
        prec = (2 * prec).min(n);
        let modulus = p.pow(prec as u32);
        let fr = full.value(&r).mod_floor(&modulus);
        let dfr = full.derivative(&r).mod_floor(&modulus);
        let inv = dfr
            .modinv(&modulus)
            .expect("derivative is a unit at a simple seed");
        r = (&r - fr * inv).mod_floor(&modulus);
    }
    Ok(DigitExpansion::from_unit_residue(&r, 0, p, n))
}

/// Newton iteration from `θ` with `ord_p f'(θ) = i` and `ord_p f(θ) ≥ 2i+1`,
/// run until the root is pinned to `n` digits.
fn newton_at_index(poly: &ZpCubic, p: &BigInt, cap: u32, theta: BigInt, i: u32, n: u32) -> BigInt {
    let pi = num_traits::pow(p.clone(), i as usize);
    let mut theta = theta;
    loop {
        let f = poly.value(&theta);
        if ord_capped(&f, p, cap) >= n + i {
            return theta;
        }
        let d = poly.derivative(&theta);
        let unit = d.div_floor(&pi);
        let inv = unit
            .mod_floor(&poly.modulus)
            .modinv(&poly.modulus)
            .expect("derivative has exact order i");
        let step = (f.div_floor(&pi) * inv).mod_floor(&poly.modulus);
        theta = (theta - step).mod_floor(&poly.modulus);
    }
}

/// All unit roots in the residue class of a singular seed (`f'(r0) ≡ 0 mod p`).
///
/// Classes `θ mod p^j` with `f(θ) ≡ 0 (mod p^j)` are refined one digit at a
/// time. A class is resolved once `ord_p f'(θ) = i < j` and `f(θ) ≡ 0 (mod p^{2i+1})`,
/// which pins a unique root `≡ θ (mod p^{i+1})`. Classes still unresolved after
/// `ord_p(disc) + 2` digits contain no root.
pub fn lift_singular(seed: &HenselSeed, n: usize) -> Result<Vec<DigitExpansion>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let prime = seed.prime();
    let disc = seed.poly.discriminant();
    let disc_ord = match rational_valuation(&disc, prime) {
        Valuation::Finite(v) => v as u32,
        Valuation::Infinite => return Err(Error::ZeroDiscriminant),
    };
    let max_depth = disc_ord + 2;
    let cap = n as u32 + 2 * disc_ord + 4;
    let poly = seed.poly.reduce(cap);
    let p = prime.to_bigint();

    let mut roots = Vec::new();
    let mut frontier = vec![(BigInt::from(seed.r0), 1u32)];
    while let Some((theta, j)) = frontier.pop() {
        let f = poly.value(&theta);
        let i = ord_capped(&poly.derivative(&theta), &p, cap);
        if i < j && ord_capped(&f, &p, cap) > 2 * i {
            let root = newton_at_index(&poly, &p, cap, theta, i, n as u32);
            roots.push(DigitExpansion::from_unit_residue(&root, 0, prime, n));
            continue;
        }
        if j >= max_depth {
            continue;
        }
        let pj = prime.pow(j);
        for t in 0..prime.get() {
            let child = &theta + &pj * BigInt::from(t);
            if ord_capped(&poly.value(&child), &p, cap) > j {
                frontier.push((child, j + 1));
            }
        }
    }
    roots.sort_by(|x, y| x.digits.cmp(&y.digits));
    Ok(roots)
}

/// Digits of agreement guaranteed between a `terms`-term series and the true root:
/// `ord(c₀/c₁) + terms·ord(c₀/c₁²)`; `None` when `c₀ = 0` (the seed is exact).
pub fn series_precision(seed: &HenselSeed, terms: usize) -> Result<Option<u32>> {
    let prime = seed.prime();
    let [c0, c1, _, _] = seed.poly.taylor_at(&seed.r0_rational());
    if rational_valuation(&c1, prime) != Valuation::Finite(0) {
        return Err(Error::SingularSeed);
    }
    let v0 = match rational_valuation(&c0, prime) {
        Valuation::Infinite => return Ok(None),
        Valuation::Finite(v) => v,
    };
    if v0 < 1 {
        return Err(Error::NonconvergentSeed(v0));
    }
    Ok(Some((v0 + terms as i64 * v0) as u32))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Truncated closed-form Hensel series
/// `r₀ - (c₀/c₁) Σ_{k<terms} [Σ_j (-1)^{k-j} c₂^j/(2k-j+1) C(k,j) C(3k-j,k) (c₀c₃/c₁)^{k-j}] (c₀/c₁²)^k`.
pub fn series_value(seed: &HenselSeed, terms: usize) -> Result<BigRational> {
    series_precision(seed, terms)?;
    let r0 = seed.r0_rational();
    let [c0, c1, c2, c3] = seed.poly.taylor_at(&r0);
    let ratio = &c0 / (&c1 * &c1);
    let inner_base = &c0 * &c3 / &c1;
    let mut sum = BigRational::zero();
    let mut ratio_pow = BigRational::one();
    for k in 0..terms as u64 {
        let mut inner = BigRational::zero();
        for j in 0..=k {
            let weight = BigRational::new(
                binomial(k, j) * binomial(3 * k - j, k),
                BigInt::from(2 * k - j + 1),
            );
            let mut term = weight
                * num_traits::pow(c2.clone(), j as usize)
                * num_traits::pow(inner_base.clone(), (k - j) as usize);
            if (k - j) % 2 == 1 {
                term = -term;
            }
            inner += term;
        }
        sum += inner * &ratio_pow;
        ratio_pow *= &ratio;
    }
    Ok(r0 - &c0 / &c1 * sum)
}

/// Series root as a digit expansion, truncated to its guaranteed precision.
pub fn series_root(seed: &HenselSeed, terms: usize) -> Result<DigitExpansion> {
    let digits = series_precision(seed, terms)?.unwrap_or(DEFAULT_DIGITS as u32);
    let value = series_value(seed, terms)?;
    let residue = rational_mod_pow(&value, seed.prime(), digits)?;
    Ok(DigitExpansion::from_unit_residue(
        &residue,
        0,
        seed.prime(),
        digits as usize,
    ))
}

/// Double root `r = 3b/(2a)` and simple root `s = -2r` when `-4a³ - 27b² = 0`.
pub fn double_root_closed_form(inst: &CubicInstance) -> Result<(PadicRational, PadicRational)> {
    if !inst.full_discriminant().is_zero() {
        return Err(Error::NotDoubleRoot);
    }
    let p = inst.prime();
    let three_b = &PadicRational::from_integer(3, p) * inst.b();
    let two_a = &PadicRational::from_integer(2, p) * inst.a();
    let r = three_b.checked_div(&two_a)?;
    let s = -&(&PadicRational::from_integer(2, p) * &r);
    // (x - r)²(x - s) = x³ - (2r + s)x² + (r² + 2rs)x - r²s
    let two_r_s = &(&r + &r) + &s;
    let lin = &(&r * &r) + &(&PadicRational::from_integer(2, p) * &(&r * &s));
    let cons = &(&r * &r) * &s;
    if !two_r_s.is_zero() || &lin != inst.a() || &cons != inst.b() {
        return Err(Error::InternalInconsistency(format!(
            "{inst}: closed-form double root {r} does not factor the cubic"
        )));
    }
    Ok((r, s))
}

/// One root of the cubic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootRecord {
    /// `p^{valuation}·(d₀ + d₁p + …)`.
    pub expansion: DigitExpansion,
    pub valuation: i64,
    pub domain: DomainTag,
    pub multiplicity: u8,
    /// `ord_p` of the lifting polynomial at the truncated unit part.
    pub residual: Valuation,
}

impl RootRecord {
    /// The truncated root `p^v·Σdᵢpⁱ` as an exact rational.
    pub fn truncated_value(&self) -> PadicRational {
        self.expansion.to_padic()
    }
}

fn exact_root_record(
    inst: &CubicInstance,
    x: &PadicRational,
    multiplicity: u8,
    n: usize,
) -> Result<RootRecord> {
    let expansion = x.digits(n)?;
    let v = expansion.valuation;
    let scaled = inst.scaled(-v);
    let poly = LiftPolynomial {
        prime: inst.prime(),
        cubic: BigRational::one(),
        linear: scaled.a().value().clone(),
        constant: -scaled.b().value().clone(),
    };
    let residual = poly.residual(&expansion.unit_residue());
    Ok(RootRecord {
        expansion,
        valuation: v,
        domain: DomainTag::atom_for_valuation(v),
        multiplicity,
        residual,
    })
}

/// Every root in ℚ_p to `n` digits, with the default scan limits.
pub fn all_roots(inst: &CubicInstance, n: usize) -> Result<Vec<RootRecord>> {
    all_roots_with(inst, n, &Limits::default())
}

pub fn all_roots_with(inst: &CubicInstance, n: usize, limits: &Limits) -> Result<Vec<RootRecord>> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut out = Vec::new();
    if inst.full_discriminant().is_zero() {
        let (r, s) = double_root_closed_form(inst)?;
        out.push(exact_root_record(inst, &r, 2, n)?);
        out.push(exact_root_record(inst, &s, 1, n)?);
    } else {
        for eq in candidate_scalings(inst) {
            for seed in congruence_initials(&eq, limits)? {
                let units = if seed.is_simple() {
                    vec![lift(&seed, n)?]
                } else {
                    lift_singular(&seed, n)?
                };
                for unit in units {
                    let residual = seed.poly.residual(&unit.unit_residue());
                    let v = -eq.k;
                    out.push(RootRecord {
                        expansion: DigitExpansion {
                            prime: unit.prime,
                            valuation: v,
                            digits: unit.digits,
                        },
                        valuation: v,
                        domain: DomainTag::atom_for_valuation(v),
                        multiplicity: 1,
                        residual,
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| (x.valuation, &x.expansion.digits).cmp(&(y.valuation, &y.expansion.digits)));
    Ok(out)
}

/// Valuations of `e₁`, `e₂ - a`, `e₃ - b` over truncated roots, with the bounds
/// implied by the truncation (`n + Σ` of the participating root valuations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VietaCheck {
    pub achieved: [Valuation; 3],
    pub required: [i64; 3],
}

impl VietaCheck {
    pub fn holds(&self) -> bool {
        self.achieved
            .iter()
            .zip(&self.required)
            .all(|(v, &r)| v.at_least(r))
    }
}

/// Vieta relations for a full set of three roots (with multiplicity); `None` otherwise.
pub fn vieta_check(inst: &CubicInstance, roots: &[RootRecord]) -> Option<VietaCheck> {
    let expanded: Vec<&RootRecord> = roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(r, r.multiplicity as usize))
        .collect();
    if expanded.len() != 3 {
        return None;
    }
    let n = expanded.iter().map(|r| r.expansion.precision()).min()? as i64;
    let x: Vec<PadicRational> = expanded.iter().map(|r| r.truncated_value()).collect();
    let v: Vec<i64> = expanded.iter().map(|r| r.valuation).collect();
    let e1 = &(&x[0] + &x[1]) + &x[2];
    let e2 = &(&(&x[0] * &x[1]) + &(&x[0] * &x[2])) + &(&x[1] * &x[2]);
    let e3 = &(&x[0] * &x[1]) * &x[2];
    let pair_min = (v[0] + v[1]).min(v[0] + v[2]).min(v[1] + v[2]);
    Some(VietaCheck {
        achieved: [
            e1.valuation(),
            (&e2 - inst.a()).valuation(),
            (&e3 - inst.b()).valuation(),
        ],
        required: [
            n + *v.iter().min()?,
            n + pair_min,
            n + v.iter().sum::<i64>(),
        ],
    })
}

/// Smallest residual over a root list (`Infinite` for an empty list).
pub fn min_residual(roots: &[RootRecord]) -> Valuation {
    roots
        .iter()
        .map(|r| r.residual)
        .min()
        .unwrap_or(Valuation::Infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::count_in;

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn inst(a: i64, b: i64, p: u64) -> CubicInstance {
        CubicInstance::from_integers(a, b, pr(p)).unwrap()
    }

    fn seed_11(r0: u64) -> HenselSeed {
        let eq = &candidate_scalings(&inst(4, 5, 11))[0];
        congruence_initials(eq, &Limits::default())
            .unwrap()
            .into_iter()
            .find(|s| s.r0 == r0)
            .unwrap()
    }

    #[test]
    fn scalings_examples() {
        let s = candidate_scalings(&inst(5, 25, 5));
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].k, -1);
        assert_eq!(s[0].a.norm_exponent().unwrap(), 1);
        assert_eq!(s[0].b.norm_exponent().unwrap(), 1);

        let s = candidate_scalings(&inst(4, 5, 11));
        assert_eq!(s.len(), 1);
        assert_eq!(
            (s[0].k, s[0].a.clone(), s[0].b.clone()),
            (0, inst(4, 5, 11).a().clone(), inst(4, 5, 11).b().clone())
        );

        let s = candidate_scalings(&inst(-3 * 49, -2 * 343, 7));
        assert_eq!(s.iter().map(|e| e.k).collect::<Vec<_>>(), vec![-1]);
    }

    #[test]
    fn initials_examples() {
        let lim = Limits::default();
        let eq = &candidate_scalings(&inst(4, 5, 11))[0];
        let seeds = congruence_initials(eq, &lim).unwrap();
        assert_eq!(
            seeds.iter().map(|s| s.r0).collect::<Vec<_>>(),
            vec![1, 2, 8]
        );
        assert!(seeds.iter().all(|s| s.case == SeedCase::FullCubic));

        let eq = &candidate_scalings(&inst(5, 25, 5))[0];
        let seeds = congruence_initials(eq, &lim).unwrap();
        assert_eq!(seeds.len(), 1);
        assert_eq!(
            (seeds[0].r0, seeds[0].case, seeds[0].gamma),
            (1, SeedCase::Linear, 1)
        );

        let eq = &candidate_scalings(&inst(1, 1, 5))[0];
        assert!(congruence_initials(eq, &lim).unwrap().is_empty());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift(&seed_11(2), 2).unwrap().digits, vec![2, 2]);
        assert_eq!(lift(&seed_11(1), 2).unwrap().digits, vec![1, 0]);
        assert_eq!(lift(&seed_11(8), 2).unwrap().digits, vec![8, 8]);
        assert_eq!(
            lift(&seed_11(2), 2).unwrap().unit_residue(),
            BigInt::from(24)
        );
        assert_eq!(
            lift(&seed_11(8), 2).unwrap().unit_residue(),
            BigInt::from(96)
        );
    }

    #[test]
    fn lift_rejects_singular_seed() {
        // x³ - 3x + 2 + 7³ over ℚ_7 has a double root 1 mod 7 but D ≠ 0.
        let i = inst(-3, -2 - 343, 7);
        let eq = &candidate_scalings(&i)[0];
        let seeds = congruence_initials(eq, &Limits::default()).unwrap();
        let singular = seeds.iter().find(|s| s.r0 == 1).unwrap();
        assert!(!singular.is_simple());
        assert_eq!(lift(singular, 5), Err(Error::SingularSeed));
        assert_eq!(series_root(singular, 1), Err(Error::SingularSeed));
    }

    #[test]
    fn series_examples() {
        let exact = series_root(&seed_11(1), 3).unwrap();
        assert_eq!(exact.digits[..2], [1, 0]);
        for r0 in [2, 8] {
            let seed = seed_11(r0);
            let s = series_root(&seed, 1).unwrap();
            assert_eq!(s.precision(), 2);
            assert_eq!(s, lift(&seed, 2).unwrap());
        }
    }

    #[test]
    fn series_precision_grows_with_terms() {
        let seed = seed_11(2);
        let newton = lift(&seed, 40).unwrap();
        let mut last = 0;
        for t in 1..=4 {
            let m = series_precision(&seed, t).unwrap().unwrap();
            assert!(m > last);
            last = m;
            let s = series_root(&seed, t).unwrap();
            assert!(newton.agreement(&s) >= m as usize);
        }
    }

    #[test]
    fn closed_form_examples() {
        let (r, s) = double_root_closed_form(&inst(-3, -2, 7)).unwrap();
        assert_eq!(
            (r.value().to_string(), s.value().to_string()),
            ("1".into(), "-2".into())
        );
        let (r, s) = double_root_closed_form(&inst(-12, -16, 5)).unwrap();
        assert_eq!(
            (r.value().to_string(), s.value().to_string()),
            ("2".into(), "-4".into())
        );
        let (r, s) = double_root_closed_form(&inst(-3 * 121, -2 * 1331, 11)).unwrap();
        assert_eq!(
            (r.value().to_string(), s.value().to_string()),
            ("11".into(), "-22".into())
        );
        assert_eq!(
            double_root_closed_form(&inst(4, 5, 11)),
            Err(Error::NotDoubleRoot)
        );
    }

    #[test]
    fn all_roots_examples() {
        let roots = all_roots(&inst(4, 5, 11), 2).unwrap();
        let digits: Vec<Vec<u64>> = roots.iter().map(|r| r.expansion.digits.clone()).collect();
        assert_eq!(digits, vec![vec![1, 0], vec![2, 2], vec![8, 8]]);
        assert!(roots
            .iter()
            .all(|r| r.domain == DomainTag::Units && r.multiplicity == 1));

        let roots = all_roots(&inst(-3, -2, 7), 3).unwrap();
        assert_eq!(roots.len(), 2);
        let double = roots.iter().find(|r| r.multiplicity == 2).unwrap();
        assert_eq!(double.expansion.digits, vec![1, 0, 0]);
        let simple = roots.iter().find(|r| r.multiplicity == 1).unwrap();
        assert_eq!(simple.expansion.digits, vec![5, 6, 6]);
        assert!(roots.iter().all(|r| r.domain == DomainTag::Units));

        let roots = all_roots(&inst(5, 25, 5), 2).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].valuation, 1);
        assert_eq!(roots[0].domain, DomainTag::SmallBall);
        assert_eq!(roots[0].expansion.digits[0], 1);
    }

    #[test]
    fn singular_seed_is_resolved_by_refinement() {
        // (x - 1)(x - 1 - 7²)(x + 2 + 7²): two unit roots ≡ 1 mod 7 that differ at 7².
        let p = pr(7);
        let r1 = PadicRational::from_integer(1, p);
        let r2 = PadicRational::from_integer(50, p);
        let r3 = -&(&r1 + &r2);
        let a = &(&(&r1 * &r2) + &(&r1 * &r3)) + &(&r2 * &r3);
        let b = &(&r1 * &r2) * &r3;
        let i = CubicInstance::new(a, b).unwrap();
        let roots = all_roots(&i, 6).unwrap();
        assert_eq!(roots.len(), 3);
        let found: Vec<PadicRational> = roots.iter().map(|r| r.truncated_value()).collect();
        for r in [&r1, &r2, &r3] {
            assert!(
                found
                    .iter()
                    .any(|f| r.digits(6).unwrap() == f.digits(6).unwrap()),
                "missing {r}"
            );
        }
        assert_eq!(count_in(&i, DomainTag::Whole), 3);
    }

    #[test]
    fn singular_seed_without_rational_pair() {
        // Double root mod 7 whose pair is not in ℚ_7: exactly one root survives.
        let i = inst(-3, -2 - 3 * 7, 7);
        let roots = all_roots(&i, 8).unwrap();
        let total: u8 = roots.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, count_in(&i, DomainTag::Whole));
        for r in &roots {
            assert!(r.residual.at_least(8));
        }
    }

    #[test]
    fn vieta_on_worked_instance() {
        let i = inst(4, 5, 11);
        let roots = all_roots(&i, DEFAULT_DIGITS).unwrap();
        let check = vieta_check(&i, &roots).unwrap();
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn deterministic_output() {
        let i = inst(-7, -6, 11);
        assert_eq!(all_roots(&i, 20).unwrap(), all_roots(&i, 20).unwrap());
    }
}
