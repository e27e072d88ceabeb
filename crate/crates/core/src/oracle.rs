//! Ground truth that does not go through the classifier or solver.
//!
//! Two sources: cubics built from known roots by Vieta's formulas, and brute-force
//! enumeration of roots modulo `p^m`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{signature, CubicInstance, LocationSignature};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::padic::{PadicRational, Prime, Valuation};
use crate::solver::all_roots_with;

/// A root with a prescribed valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSpec {
    pub valuation: i64,
    /// Leading digit of the unit part.
    pub residue_seed: u64,
    pub value: PadicRational,
}

/// `x³ + ax - b = (x - r₁)(x - r₂)(x - r₃)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructedInstance {
    pub a: PadicRational,
    pub b: PadicRational,
    pub expected: LocationSignature,
    pub roots: Vec<PadicRational>,
}

impl ConstructedInstance {
    pub fn instance(&self) -> CubicInstance {
        CubicInstance::new(self.a.clone(), self.b.clone()).expect("construction guarantees ab != 0")
    }

    pub fn has_distinct_roots(&self) -> bool {
        self.roots[0] != self.roots[1]
            && self.roots[0] != self.roots[2]
            && self.roots[1] != self.roots[2]
    }

    /// Distinct roots with their multiplicities.
    pub fn distinct_roots(&self) -> Vec<(PadicRational, u8)> {
        let mut out: Vec<(PadicRational, u8)> = Vec::new();
        for r in &self.roots {
            match out.iter_mut().find(|(x, _)| x == r) {
                Some((_, m)) => *m += 1,
                None => out.push((r.clone(), 1)),
            }
        }
        out
    }
}

/// Builds the cubic with roots `r1`, `r2`, `-(r1 + r2)`.
pub fn generate_from_roots(r1: &PadicRational, r2: &PadicRational) -> Result<ConstructedInstance> {
    if r1.prime() != r2.prime() {
        return Err(Error::PrimeMismatch(r1.prime().get(), r2.prime().get()));
    }
    let r3 = -&(r1 + r2);
    for r in [r1, r2, &r3] {
        if r.is_zero() {
            return Err(Error::DegenerateConstruction(format!("root {r} is zero")));
        }
    }
    let a = &(&(r1 * r2) + &(r1 * &r3)) + &(r2 * &r3);
    let b = &(r1 * r2) * &r3;
    if a.is_zero() || b.is_zero() {
        return Err(Error::DegenerateConstruction(format!("a = {a}, b = {b}")));
    }
    let roots = vec![r1.clone(), r2.clone(), r3];
    let expected = LocationSignature::from_valuations(
        roots
            .iter()
            .map(|r| (r.valuation().finite().expect("nonzero root"), 1)),
    );
    Ok(ConstructedInstance {
        a,
        b,
        expected,
        roots,
    })
}

/// Seeded source of random roots and instances.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    pub prime: Prime,
    pub valuations: Vec<i64>,
}

impl Sampler {
    /// Valuations are drawn uniformly from `[-3, 3]`.
    pub fn new(prime: Prime, seed: u64) -> Self {
        Self::with_valuations(prime, seed, (-3..=3).collect())
    }

    pub fn with_valuations(prime: Prime, seed: u64, valuations: Vec<i64>) -> Self {
        assert!(!valuations.is_empty());
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            prime,
            valuations,
        }
    }

    fn coprime(&mut self, max: u64) -> u64 {
        let p = self.prime.get();
        loop {
            let n = self.rng.random_range(1..=max);
            if n % p != 0 {
                return n;
            }
        }
    }

    /// `±(n/d)` with `p ∤ nd`.
    pub fn unit(&mut self) -> PadicRational {
        let num = self.coprime(999) as i64;
        let den = if self.rng.random_bool(0.5) {
            1
        } else {
            self.coprime(99) as i64
        };
        let sign = if self.rng.random_bool(0.5) { 1 } else { -1 };
        PadicRational::new(sign * num, den, self.prime).expect("den >= 1")
    }

    pub fn valuation(&mut self) -> i64 {
        let i = self.rng.random_range(0..self.valuations.len());
        self.valuations[i]
    }

    pub fn root(&mut self) -> RootSpec {
        let valuation = self.valuation();
        let unit = self.unit();
        RootSpec {
            valuation,
            residue_seed: unit.leading_digit().expect("unit is nonzero"),
            value: unit.mul_pow_p(valuation),
        }
    }

    /// A cubic from two random roots, retrying degenerate draws.
    pub fn constructed(&mut self) -> ConstructedInstance {
        loop {
            let r1 = self.root().value;
            let r2 = self.root().value;
            if let Ok(c) = generate_from_roots(&r1, &r2) {
                return c;
            }
        }
    }

    /// `a`, `b` with independent random valuations and units.
    pub fn instance(&mut self) -> CubicInstance {
        let va = self.valuation();
        let vb = self.valuation();
        let a = self.unit().mul_pow_p(va);
        let b = self.unit().mul_pow_p(vb);
        CubicInstance::new(a, b).expect("units are nonzero")
    }
}

fn cubic_mod(x: &BigInt, a: &BigInt, b: &BigInt, modulus: &BigInt) -> BigInt {
    (x * x * x + a * x - b).mod_floor(modulus)
}

/// Every `x ∈ [0, p^m)` with `x³ + ax ≡ b (mod p^m)`, by a full scan.
pub fn enumerate_roots_mod(
    a: &BigInt,
    b: &BigInt,
    m: u32,
    p: Prime,
    limits: &Limits,
) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let modulus = p.pow(m);
    let size = modulus.to_u128().unwrap_or(u128::MAX);
    limits.check_enumeration(size)?;
    let bound = size as u64;
    let (a, b) = (a.mod_floor(&modulus), b.mod_floor(&modulus));
    let mut roots: Vec<u64> = (0..bound)
        .into_par_iter()
        .filter(|&x| cubic_mod(&BigInt::from(x), &a, &b, &modulus).is_zero())
        .collect();
    roots.sort_unstable();
    Ok(roots)
}

/// The same solution set as [`enumerate_roots_mod`], built level by level:
/// solutions mod `p^{j+1}` are the lifts `x + t·p^j` of solutions mod `p^j`.
pub fn solutions_mod(
    a: &BigInt,
    b: &BigInt,
    m: u32,
    p: Prime,
    limits: &Limits,
) -> Result<Vec<BigInt>> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut level: Vec<BigInt> = vec![BigInt::zero()];
    for j in 0..m {
        let pj = p.pow(j);
        let next_mod = p.pow(j + 1);
        let (a, b) = (a.mod_floor(&next_mod), b.mod_floor(&next_mod));
        let next: Vec<BigInt> = level
            .par_iter()
            .flat_map_iter(|x| {
                let x = x.clone();
                let pj = pj.clone();
                (0..p.get()).map(move |t| &x + &pj * BigInt::from(t))
            })
            .filter(|y| cubic_mod(y, &a, &b, &next_mod).is_zero())
            .collect();
        limits.check_enumeration(next.len() as u128 * p.get() as u128)?;
        level = next;
    }
    level.sort();
    Ok(level)
}

fn ord(n: &BigInt, p: &BigInt) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        m = q;
        v += 1;
    }
}

/// Number of roots of `x³ + ax = b` in ℤ_p for integers `a`, `b`.
///
/// Solutions mod `p^m`, `m = 2·ord_p(D) + 2`, are grouped into classes mod
/// `p^{i+1}` where `i = ord_p(3x² + a) ≤ ord_p(D)/2`; each such class holds
/// exactly one root.
pub fn stable_zp_root_count(a: &BigInt, b: &BigInt, p: Prime, limits: &Limits) -> Result<usize> {
    let disc: BigInt = BigInt::from(-4) * a * a * a - BigInt::from(27) * b * b;
    let pb = p.to_bigint();
    let vd = match ord(&disc, &pb) {
        Valuation::Infinite => return Err(Error::ZeroDiscriminant),
        Valuation::Finite(v) => v,
    };
    let m = (2 * vd + 2) as u32;
    let modulus = p.pow(m);
    let mut classes = BTreeSet::new();
    for x in solutions_mod(a, b, m, p, limits)? {
        let deriv = (BigInt::from(3) * &x * &x + a).mod_floor(&modulus);
        let i = match ord(&deriv, &pb) {
            Valuation::Finite(i) if 2 * i <= vd => i,
            _ => continue,
        };
        let f = cubic_mod(&x, a, b, &modulus);
        if ord(&f, &pb).at_least(2 * i + 1) {
            classes.insert(x.mod_floor(&p.pow(i as u32 + 1)));
        }
    }
    Ok(classes.len())
}

/// Outcome of checking classifier and solver against a constructed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub instance: String,
    pub expected: LocationSignature,
    pub classified: Option<LocationSignature>,
    pub solved: Option<LocationSignature>,
    pub roots_matched: usize,
    pub roots_expected: usize,
    pub min_residual: Option<i64>,
    pub repeated_root: bool,
    pub issues: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Runs classifier and solver on a constructed instance and compares with the known roots
/// to `digits` digits.
pub fn verify(c: &ConstructedInstance, digits: usize, limits: &Limits) -> VerifyReport {
    let inst = c.instance();
    let distinct = c.distinct_roots();
    let mut report = VerifyReport {
        instance: inst.to_string(),
        expected: c.expected,
        classified: None,
        solved: None,
        roots_matched: 0,
        roots_expected: distinct.len(),
        min_residual: None,
        repeated_root: distinct.len() < 3,
        issues: Vec::new(),
    };

    match signature(&inst) {
        Ok(sig) => {
            report.classified = Some(sig);
            if sig != c.expected {
                report.issues.push(format!(
                    "classifier signature {sig}, expected {}",
                    c.expected
                ));
            }
        }
        Err(e) => report.issues.push(format!("classifier: {e}")),
    }

    let roots = match all_roots_with(&inst, digits, limits) {
        Ok(r) => r,
        Err(e) => {
            report.issues.push(format!("solver: {e}"));
            return report;
        }
    };
    let solved =
        LocationSignature::from_valuations(roots.iter().map(|r| (r.valuation, r.multiplicity)));
    report.solved = Some(solved);
    if solved != c.expected {
        report.issues.push(format!(
            "solver signature {solved}, expected {}",
            c.expected
        ));
    }
    let min_res = roots
        .iter()
        .map(|r| r.residual)
        .min()
        .unwrap_or(Valuation::Infinite);
    report.min_residual = min_res.finite();
    if !min_res.at_least(digits as i64) {
        report
            .issues
            .push(format!("residual order {min_res} below {digits}"));
    }

    for (r, mult) in &distinct {
        let want = match r.digits(digits) {
            Ok(d) => d,
            Err(e) => {
                report.issues.push(format!("digits of {r}: {e}"));
                continue;
            }
        };
        match roots.iter().find(|s| s.expansion == want) {
            Some(s) if s.multiplicity == *mult => report.roots_matched += 1,
            Some(s) => report.issues.push(format!(
                "root {r}: multiplicity {} reported, {mult} expected",
                s.multiplicity
            )),
            None => report
                .issues
                .push(format!("root {r} not found to {digits} digits")),
        }
    }
    if roots.len() != distinct.len() {
        report.issues.push(format!(
            "solver returned {} roots, expected {}",
            roots.len(),
            distinct.len()
        ));
    }
    report
}

/// Aggregate of a randomized construction sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub prime: u64,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<VerifyReport>,
}

/// Verifies `count` constructed instances; instance `i` is drawn from seed `seed + i`.
pub fn sweep(prime: Prime, count: usize, seed: u64, digits: usize, limits: &Limits) -> SweepReport {
    let reports: Vec<VerifyReport> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut sampler = Sampler::new(prime, seed.wrapping_add(i as u64));
            verify(&sampler.constructed(), digits, limits)
        })
        .collect();
    let failures: Vec<VerifyReport> = reports.into_iter().filter(|r| !r.passed()).collect();
    SweepReport {
        prime: prime.get(),
        seed,
        instances: count,
        passed: count - failures.len(),
        failed: failures.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::count_in;
    use crate::classifier::DomainTag;
    use crate::solver::all_roots;

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn int(n: i64, p: u64) -> PadicRational {
        PadicRational::from_integer(n, pr(p))
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn construction_examples() {
        let c = generate_from_roots(&int(1, 11), &int(2, 11)).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (int(-7, 11), int(-6, 11)));
        assert_eq!(c.expected, LocationSignature::new(3, 0, 0));

        let c = generate_from_roots(&int(1, 7), &int(1, 7)).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (int(-3, 7), int(-2, 7)));
        assert_eq!(c.expected, LocationSignature::new(3, 0, 0));
        assert!(!c.has_distinct_roots());

        let c = generate_from_roots(&int(5, 5), &int(25, 5)).unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (int(-775, 5), int(-3750, 5)));
        assert_eq!(c.expected, LocationSignature::new(0, 3, 0));
    }

    #[test]
    fn degenerate_constructions() {
        assert!(matches!(
            generate_from_roots(&int(1, 7), &int(-1, 7)),
            Err(Error::DegenerateConstruction(_))
        ));
        assert!(matches!(
            generate_from_roots(&int(0, 7), &int(1, 7)),
            Err(Error::DegenerateConstruction(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        let lim = Limits::default();
        assert_eq!(
            enumerate_roots_mod(&big(4), &big(5), 2, pr(11), &lim).unwrap(),
            vec![1, 24, 96]
        );
        assert!(enumerate_roots_mod(&big(1), &big(1), 1, pr(5), &lim)
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_roots_mod(&big(-3), &big(-2), 2, pr(7), &lim).unwrap(),
            vec![1, 8, 15, 22, 29, 36, 43, 47]
        );
        let tight = Limits {
            scan_bound: 100,
            enumeration_bound: 100,
        };
        assert!(matches!(
            enumerate_roots_mod(&big(4), &big(5), 2, pr(11), &tight),
            Err(Error::ScanBoundExceeded { .. })
        ));
    }

    #[test]
    fn layered_solutions_match_full_scan() {
        let lim = Limits::default();
        for (a, b, p, m) in [
            (4, 5, 11, 3),
            (-3, -2, 7, 3),
            (5, 25, 5, 4),
            (1, 1, 5, 3),
            (-7, 6, 5, 5),
        ] {
            let scan: Vec<BigInt> = enumerate_roots_mod(&big(a), &big(b), m, pr(p), &lim)
                .unwrap()
                .into_iter()
                .map(BigInt::from)
                .collect();
            assert_eq!(
                solutions_mod(&big(a), &big(b), m, pr(p), &lim).unwrap(),
                scan,
                "a={a} b={b} p={p}"
            );
        }
    }

    #[test]
    fn stable_count_examples() {
        let lim = Limits::default();
        assert_eq!(
            stable_zp_root_count(&big(4), &big(5), pr(11), &lim).unwrap(),
            3
        );
        assert_eq!(
            stable_zp_root_count(&big(1), &big(1), pr(5), &lim).unwrap(),
            0
        );
        assert_eq!(
            stable_zp_root_count(&big(5), &big(25), pr(5), &lim).unwrap(),
            1
        );
        assert_eq!(
            stable_zp_root_count(&big(-3), &big(-2), pr(7), &lim),
            Err(Error::ZeroDiscriminant)
        );
    }

    #[test]
    fn stable_count_matches_classifier_on_a_grid() {
        let lim = Limits::default();
        for (a, b) in (-12i64..=12).flat_map(|a| (-12i64..=12).map(move |b| (a, b))) {
            if a == 0 || b == 0 || -4 * a * a * a - 27 * b * b == 0 {
                continue;
            }
            let inst = CubicInstance::from_integers(a, b, pr(5)).unwrap();
            let n = stable_zp_root_count(&big(a), &big(b), pr(5), &lim).unwrap();
            assert_eq!(
                n,
                count_in(&inst, DomainTag::Integers) as usize,
                "a={a} b={b}"
            );
        }
    }

    #[test]
    fn solver_roots_reduce_to_enumerated_residues() {
        let lim = Limits::default();
        let inst = CubicInstance::from_integers(-7, 6, pr(5)).unwrap();
        let residues = enumerate_roots_mod(&big(-7), &big(6), 3, pr(5), &lim).unwrap();
        for r in all_roots(&inst, 10)
            .unwrap()
            .iter()
            .filter(|r| r.valuation >= 0)
        {
            let x = r.truncated_value().residue_mod_pow(3).unwrap();
            assert!(residues.contains(&x.to_u64().unwrap()));
        }
    }

    #[test]
    fn verify_examples() {
        let lim = Limits::default();
        let worked = generate_from_roots(&int(1, 11), &int(2, 11)).unwrap();
        let r = verify(&worked, 20, &lim);
        assert!(r.passed(), "{:?}", r.issues);
        assert_eq!((r.roots_matched, r.roots_expected), (3, 3));

        let double = generate_from_roots(&int(1, 7), &int(1, 7)).unwrap();
        let r = verify(&double, 20, &lim);
        assert!(r.passed(), "{:?}", r.issues);
        assert!(r.repeated_root);
        assert_eq!((r.roots_matched, r.roots_expected), (2, 2));
    }

    #[test]
    fn sampler_is_reproducible() {
        let mut s1 = Sampler::new(pr(7), 42);
        let mut s2 = Sampler::new(pr(7), 42);
        for _ in 0..20 {
            let r = s1.root();
            assert_eq!(r, s2.root());
            assert_eq!(r.value.valuation(), Valuation::Finite(r.valuation));
        }
    }

    #[test]
    fn small_sweep_passes() {
        for p in [5, 7, 11, 13] {
            let rep = sweep(pr(p), 200, 7, 20, &Limits::default());
            assert_eq!(rep.failed, 0, "{:#?}", rep.failures.first());
        }
    }
}
