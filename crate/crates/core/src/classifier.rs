//! Region membership, per-domain solvability, per-domain root counts and the
//! root-location signature of `x³ + ax = b` over ℚ_p.
//!
//! Every predicate here is a literal case table over the norm exponents of `a`
//! and `b`, the leading digits `a₀, b₀`, the F_p verdict `D₀·u_{p-2}²` and the
//! unit-normalized discriminant `D = -4(a*)³ - 27(b*)²`. Three tables are
//! encoded independently (solvability criteria, root counts, signature items)
//! so that [`signature`] can cross-check them against each other.
//!
//! Norms are compared through valuations: `|a|³ < |b|²` iff `3·ord(a) > 2·ord(b)`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp_cubic::FpCubic;
use crate::padic::{PadicRational, Prime, Valuation};
use crate::residues::{cbrt_exists, sqrt_exists};

/// The equation `x³ + ax = b` with `ab ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicInstance {
    a: PadicRational,
    b: PadicRational,
}

impl CubicInstance {
    pub fn new(a: PadicRational, b: PadicRational) -> Result<Self> {
        if a.prime() != b.prime() {
            return Err(Error::PrimeMismatch(a.prime().get(), b.prime().get()));
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroCoefficient);
        }
        Ok(CubicInstance { a, b })
    }

    pub fn from_integers(a: i64, b: i64, prime: Prime) -> Result<Self> {
        Self::new(
            PadicRational::from_integer(a, prime),
            PadicRational::from_integer(b, prime),
        )
    }

    pub fn prime(&self) -> Prime {
        self.a.prime()
    }

    pub fn a(&self) -> &PadicRational {
        &self.a
    }

    pub fn b(&self) -> &PadicRational {
        &self.b
    }

    pub(crate) fn ord_a(&self) -> i64 {
        self.a.valuation().finite().expect("a is nonzero")
    }

    pub(crate) fn ord_b(&self) -> i64 {
        self.b.valuation().finite().expect("b is nonzero")
    }

    /// `(a·p^{2k}, b·p^{3k})`, whose roots are `p^k` times the roots of `self`.
    pub fn scaled(&self, k: i64) -> CubicInstance {
        CubicInstance {
            a: self.a.mul_pow_p(2 * k),
            b: self.b.mul_pow_p(3 * k),
        }
    }

    /// `x³ + ax - b`.
    pub fn evaluate(&self, x: &PadicRational) -> PadicRational {
        &(&x.pow(3) + &(&self.a * x)) - &self.b
    }

    /// The full discriminant `-4a³ - 27b²`.
    pub fn full_discriminant(&self) -> PadicRational {
        discriminant_of(&self.a, &self.b)
    }
}

impl fmt::Display for CubicInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x^3 + ({})x = {} over Q_{}",
            self.a,
            self.b,
            self.prime()
        )
    }
}

fn discriminant_of(a: &PadicRational, b: &PadicRational) -> PadicRational {
    let p = a.prime();
    let four = PadicRational::from_integer(-4, p);
    let twenty_seven = PadicRational::from_integer(-27, p);
    &(&four * &a.pow(3)) + &(&twenty_seven * &b.pow(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    Delta1,
    Delta2,
    Delta3,
    Outside,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::Delta1 => "Delta1",
            Region::Delta2 => "Delta2",
            Region::Delta3 => "Delta3",
            Region::Outside => "Outside",
        };
        f.write_str(s)
    }
}

/// Subsets of ℚ_p built from the three atoms ℤ_p^*, ℤ_p∖ℤ_p^* and ℚ_p∖ℤ_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainTag {
    /// ℤ_p^*
    Units,
    /// ℤ_p∖ℤ_p^*
    SmallBall,
    /// ℤ_p
    Integers,
    /// ℚ_p∖ℤ_p
    Exterior,
    /// ℚ_p∖ℤ_p^*
    NotUnits,
    /// ℚ_p∖(ℤ_p∖ℤ_p^*)
    NotSmallBall,
    /// ℚ_p
    Whole,
}

impl DomainTag {
    pub const ALL: [DomainTag; 7] = [
        DomainTag::Units,
        DomainTag::SmallBall,
        DomainTag::Integers,
        DomainTag::Exterior,
        DomainTag::NotUnits,
        DomainTag::NotSmallBall,
        DomainTag::Whole,
    ];

    pub const ATOMS: [DomainTag; 3] = [DomainTag::Units, DomainTag::SmallBall, DomainTag::Exterior];

    pub fn atoms(self) -> &'static [DomainTag] {
        use DomainTag::*;
        match self {
            Units => &[Units],
            SmallBall => &[SmallBall],
            Exterior => &[Exterior],
            Integers => &[Units, SmallBall],
            NotUnits => &[SmallBall, Exterior],
            NotSmallBall => &[Units, Exterior],
            Whole => &[Units, SmallBall, Exterior],
        }
    }

    pub fn is_atom(self) -> bool {
        self.atoms().len() == 1
    }

    /// The atom containing elements of valuation `v`.
    pub fn atom_for_valuation(v: i64) -> DomainTag {
        match v.cmp(&0) {
            Ordering::Equal => DomainTag::Units,
            Ordering::Greater => DomainTag::SmallBall,
            Ordering::Less => DomainTag::Exterior,
        }
    }

    pub fn name(self) -> &'static str {
        use DomainTag::*;
        match self {
            Units => "units",
            SmallBall => "small_ball",
            Integers => "integers",
            Exterior => "exterior",
            NotUnits => "not_units",
            NotSmallBall => "not_small_ball",
            Whole => "whole",
        }
    }

    pub fn symbol(self) -> &'static str {
        use DomainTag::*;
        match self {
            Units => "Z_p^*",
            SmallBall => "Z_p \\ Z_p^*",
            Integers => "Z_p",
            Exterior => "Q_p \\ Z_p",
            NotUnits => "Q_p \\ Z_p^*",
            NotSmallBall => "Q_p \\ (Z_p \\ Z_p^*)",
            Whole => "Q_p",
        }
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `D = -4(a*)³ - 27(b*)²` on unit parts, and its leading residue `D₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedDiscriminant {
    pub dstar: PadicRational,
    pub d0: u64,
}

impl NormalizedDiscriminant {
    pub fn valuation(&self) -> Valuation {
        self.dstar.valuation()
    }

    /// `|D|_p = 1`.
    pub fn is_unit(&self) -> bool {
        self.dstar.valuation() == Valuation::Finite(0)
    }

    /// `√D` exists, with `√0` counted as existing.
    pub fn has_sqrt(&self) -> bool {
        self.dstar.is_zero() || sqrt_exists(&self.dstar).expect("nonzero discriminant")
    }

    pub fn value(&self) -> &BigRational {
        self.dstar.value()
    }
}

/// Necessary shapes for a root in ℤ_p^*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitCondition {
    /// `|a|_p = |b|_p ≥ 1`
    EqualNorms,
    /// `|b|_p < |a|_p = 1`
    SmallB,
    /// `|a|_p < |b|_p = 1`
    SmallA,
}

impl UnitCondition {
    pub fn label(self) -> &'static str {
        match self {
            UnitCondition::EqualNorms => "(i)",
            UnitCondition::SmallB => "(ii)",
            UnitCondition::SmallA => "(iii)",
        }
    }
}

/// Root counts (with multiplicity) in the three atoms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocationSignature {
    pub units: u8,
    pub small_ball: u8,
    pub exterior: u8,
}

impl LocationSignature {
    pub fn new(units: u8, small_ball: u8, exterior: u8) -> Self {
        LocationSignature {
            units,
            small_ball,
            exterior,
        }
    }

    /// Tallies roots given as `(valuation, multiplicity)` pairs.
    pub fn from_valuations<I: IntoIterator<Item = (i64, u8)>>(roots: I) -> Self {
        let mut sig = LocationSignature::default();
        for (v, m) in roots {
            match DomainTag::atom_for_valuation(v) {
                DomainTag::Units => sig.units += m,
                DomainTag::SmallBall => sig.small_ball += m,
                _ => sig.exterior += m,
            }
        }
        sig
    }

    pub fn total(&self) -> u8 {
        self.units + self.small_ball + self.exterior
    }

    /// Count in any domain, summing its atoms.
    pub fn get(&self, domain: DomainTag) -> u8 {
        domain
            .atoms()
            .iter()
            .map(|atom| match atom {
                DomainTag::Units => self.units,
                DomainTag::SmallBall => self.small_ball,
                _ => self.exterior,
            })
            .sum()
    }

    pub fn nonzero_atoms(&self) -> Vec<(DomainTag, u8)> {
        DomainTag::ATOMS
            .iter()
            .map(|&d| (d, self.get(d)))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.total() == 0
    }
}

impl fmt::Display for LocationSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_atoms()
            .into_iter()
            .map(|(d, n)| format!("({})^[{}]", d.symbol(), n))
            .collect();
        if parts.is_empty() {
            f.write_str("no roots")
        } else {
            f.write_str(&parts.join(" ⊔ "))
        }
    }
}

/// The item of the root-location case tables an instance falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseItem {
    /// Item 1–9 of the description for `Δ1 ∪ Δ3`.
    Mixed(u8),
    /// Item 1–6 of the description for `Δ2`.
    Balanced(u8),
}

impl CaseItem {
    pub fn expected_signature(self) -> LocationSignature {
        let s = LocationSignature::new;
        match self {
            CaseItem::Mixed(1) => s(3, 0, 0),
            CaseItem::Mixed(2) => s(0, 3, 0),
            CaseItem::Mixed(3) => s(0, 0, 3),
            CaseItem::Mixed(4) => s(2, 1, 0),
            CaseItem::Mixed(5) => s(1, 0, 2),
            CaseItem::Mixed(6) => s(0, 1, 2),
            CaseItem::Mixed(7) => s(1, 0, 0),
            CaseItem::Mixed(8) => s(0, 1, 0),
            CaseItem::Mixed(9) => s(0, 0, 1),
            CaseItem::Balanced(1) => s(3, 0, 0),
            CaseItem::Balanced(2) => s(0, 3, 0),
            CaseItem::Balanced(3) => s(0, 0, 3),
            CaseItem::Balanced(4) => s(1, 0, 0),
            CaseItem::Balanced(5) => s(0, 1, 0),
            CaseItem::Balanced(6) => s(0, 0, 1),
            other => unreachable!("no such case item {other:?}"),
        }
    }
}

impl fmt::Display for CaseItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseItem::Mixed(i) => write!(f, "Delta1/Delta3 item {i}"),
            CaseItem::Balanced(i) => write!(f, "Delta2 item {i}"),
        }
    }
}

/// How `|a|³` compares with `|b|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NormShape {
    /// `|a|³ < |b|²`
    BDominant,
    /// `|a|³ = |b|²`
    Balanced,
    /// `|a|³ > |b|²`
    ADominant,
}

/// Position of `D` and of `D₀·u_{p-2}²` in the Δ2 case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DiscClass {
    /// `|D| = 1`, `D₀u² ≡ 0`
    UnitZero,
    /// `|D| = 1`, `D₀u² ≢ 0, 9a₀²`
    UnitGeneric,
    /// `|D| = 1`, `D₀u² ≡ 9a₀²` (no roots)
    UnitNine,
    /// `0 ≤ |D| < 1`, `√D` exists
    SmallSquare,
    /// `0 < |D| < 1`, `√D` does not exist
    SmallNonSquare,
}

impl DiscClass {
    fn three_roots(self) -> bool {
        matches!(self, DiscClass::UnitZero | DiscClass::SmallSquare)
    }

    fn one_root(self) -> bool {
        matches!(self, DiscClass::UnitGeneric | DiscClass::SmallNonSquare)
    }

    fn count(self) -> u8 {
        if self.three_roots() {
            3
        } else if self.one_root() {
            1
        } else {
            0
        }
    }
}

/// Everything the case tables read, computed once per instance.
struct Profile {
    va: i64,
    vb: i64,
    shape: NormShape,
    p_mod3_is_one: bool,
    cbrt_b: bool,
    sqrt_neg_a: bool,
    /// `D₀·u_{p-2}² ≢ 9a₀² (mod p)`
    fp_condition: bool,
    disc: DiscClass,
}

impl Profile {
    fn of(inst: &CubicInstance) -> Profile {
        let p = inst.prime();
        let va = inst.ord_a();
        let vb = inst.ord_b();
        let shape = match (3 * va).cmp(&(2 * vb)) {
            Ordering::Greater => NormShape::BDominant,
            Ordering::Equal => NormShape::Balanced,
            Ordering::Less => NormShape::ADominant,
        };
        let a0 = inst.a.leading_digit().expect("a is nonzero");
        let b0 = inst.b.leading_digit().expect("b is nonzero");
        let verdict = FpCubic::new(a0, b0, p)
            .expect("leading digits are nonzero")
            .count_verdict();
        let lhs = p.mul_mod(
            verdict.discriminant,
            p.mul_mod(verdict.u_p_minus_2, verdict.u_p_minus_2),
        );
        let nine_a2 = p.mul_mod(9, p.mul_mod(a0, a0));
        let nd = normalized_discriminant(inst);
        let disc = if nd.is_unit() {
            if lhs == 0 {
                DiscClass::UnitZero
            } else if lhs == nine_a2 {
                DiscClass::UnitNine
            } else {
                DiscClass::UnitGeneric
            }
        } else if nd.has_sqrt() {
            DiscClass::SmallSquare
        } else {
            DiscClass::SmallNonSquare
        };
        Profile {
            va,
            vb,
            shape,
            p_mod3_is_one: p.get() % 3 == 1,
            cbrt_b: cbrt_exists(&inst.b).expect("b is nonzero"),
            sqrt_neg_a: sqrt_exists(&-&inst.a).expect("a is nonzero"),
            fp_condition: lhs != nine_a2,
            disc,
        }
    }

    fn region(&self) -> Region {
        match self.shape {
            NormShape::BDominant if self.cbrt_b => Region::Delta1,
            NormShape::Balanced if self.fp_condition => Region::Delta2,
            NormShape::ADominant => Region::Delta3,
            _ => Region::Outside,
        }
    }

    fn cube_count(&self) -> u8 {
        if self.p_mod3_is_one {
            3
        } else {
            1
        }
    }

    // Solvability criteria, one atom at a time.

    fn solvable_units(&self) -> bool {
        let (va, vb) = (self.va, self.vb);
        (va > 0 && vb == 0 && self.cbrt_b)
            || (vb > 0 && va == 0 && self.sqrt_neg_a)
            || (va == 0 && vb == 0 && self.fp_condition)
            || (va == vb && va < 0)
    }

    fn solvable_small_ball(&self) -> bool {
        let (va, vb) = (self.va, self.vb);
        match self.shape {
            NormShape::BDominant => vb > 0 && self.cbrt_b,
            NormShape::Balanced => vb > 0 && self.fp_condition,
            NormShape::ADominant => va < vb,
        }
    }

    fn solvable_exterior(&self) -> bool {
        let (va, vb) = (self.va, self.vb);
        match self.shape {
            NormShape::BDominant => vb < 0 && self.cbrt_b,
            NormShape::Balanced => vb < 0 && self.fp_condition,
            NormShape::ADominant => va > vb || (va <= vb && va < 0 && self.sqrt_neg_a),
        }
    }

    // Root-count tables, one atom at a time plus the whole field.

    fn count_units(&self) -> u8 {
        let (va, vb) = (self.va, self.vb);
        if va > 0 && vb == 0 && self.cbrt_b {
            self.cube_count()
        } else if va == 0 && vb == 0 {
            self.disc.count()
        } else if vb > 0 && va == 0 && self.sqrt_neg_a {
            2
        } else if va == vb && va < 0 {
            1
        } else {
            0
        }
    }

    fn count_small_ball(&self) -> u8 {
        let (va, vb) = (self.va, self.vb);
        match self.shape {
            NormShape::BDominant if vb > 0 && self.cbrt_b => self.cube_count(),
            NormShape::Balanced if vb > 0 => self.disc.count(),
            NormShape::ADominant if va > 0 => {
                if self.sqrt_neg_a {
                    3
                } else {
                    1
                }
            }
            NormShape::ADominant if vb > va => 1,
            _ => 0,
        }
    }

    fn count_exterior(&self) -> u8 {
        let (va, vb) = (self.va, self.vb);
        match self.shape {
            NormShape::BDominant if vb < 0 && self.cbrt_b => self.cube_count(),
            NormShape::Balanced if vb < 0 => self.disc.count(),
            NormShape::ADominant if va > vb => {
                if self.sqrt_neg_a {
                    3
                } else {
                    1
                }
            }
            NormShape::ADominant if va < 0 && self.sqrt_neg_a => 2,
            _ => 0,
        }
    }

    fn count_whole(&self) -> u8 {
        match self.shape {
            NormShape::BDominant if self.cbrt_b => self.cube_count(),
            NormShape::Balanced => self.disc.count(),
            NormShape::ADominant => {
                if self.sqrt_neg_a {
                    3
                } else {
                    1
                }
            }
            _ => 0,
        }
    }

    fn atom_count(&self, atom: DomainTag) -> u8 {
        if self.region() == Region::Outside {
            return 0;
        }
        match atom {
            DomainTag::Units => self.count_units(),
            DomainTag::SmallBall => self.count_small_ball(),
            DomainTag::Exterior => self.count_exterior(),
            _ => unreachable!("not an atom"),
        }
    }

    fn atom_solvable(&self, atom: DomainTag) -> bool {
        match atom {
            DomainTag::Units => self.solvable_units(),
            DomainTag::SmallBall => self.solvable_small_ball(),
            DomainTag::Exterior => self.solvable_exterior(),
            _ => unreachable!("not an atom"),
        }
    }

    /// All case items whose hypotheses hold.
    fn matching_items(&self) -> Vec<CaseItem> {
        let region = self.region();
        let (va, vb) = (self.va, self.vb);
        let d1 = region == Region::Delta1;
        let d3 = region == Region::Delta3;
        let one = self.p_mod3_is_one;
        let sq = self.sqrt_neg_a;
        let mut items = Vec::new();
        let mut push = |cond: bool, item: CaseItem| {
            if cond {
                items.push(item);
            }
        };
        push(d1 && vb == 0 && one, CaseItem::Mixed(1));
        push(
            (d1 && vb > 0 && one) || (d3 && va > 0 && sq),
            CaseItem::Mixed(2),
        );
        push(
            (d1 && vb < 0 && one) || (d3 && vb < va && sq),
            CaseItem::Mixed(3),
        );
        push(d3 && va == 0 && sq, CaseItem::Mixed(4));
        push(d3 && va == vb && sq, CaseItem::Mixed(5));
        push(d3 && va < vb && va < 0 && sq, CaseItem::Mixed(6));
        push(
            (d1 && vb == 0 && !one) || (d3 && va == vb && !sq),
            CaseItem::Mixed(7),
        );
        push(
            (d1 && vb > 0 && !one) || (d3 && va < vb && !sq),
            CaseItem::Mixed(8),
        );
        push(
            (d1 && vb < 0 && !one) || (d3 && va > vb && !sq),
            CaseItem::Mixed(9),
        );
        if region == Region::Delta2 {
            let three = self.disc.three_roots();
            let single = self.disc.one_root();
            push(vb == 0 && three, CaseItem::Balanced(1));
            push(vb > 0 && three, CaseItem::Balanced(2));
            push(vb < 0 && three, CaseItem::Balanced(3));
            push(vb == 0 && single, CaseItem::Balanced(4));
            push(vb > 0 && single, CaseItem::Balanced(5));
            push(vb < 0 && single, CaseItem::Balanced(6));
        }
        items
    }
}

/// Which of Δ1, Δ2, Δ3 the pair `(a, b)` lies in, or `Outside` when there is no root in ℚ_p.
pub fn region(inst: &CubicInstance) -> Region {
    Profile::of(inst).region()
}

pub fn normalized_discriminant(inst: &CubicInstance) -> NormalizedDiscriminant {
    let a_star = inst.a.unit_part().expect("a is nonzero");
    let b_star = inst.b.unit_part().expect("b is nonzero");
    let dstar = discriminant_of(&a_star, &b_star);
    let d0 = inst.prime().reduce_big(
        &dstar
            .residue_mod_pow(1)
            .expect("unit-part discriminant is integral"),
    );
    NormalizedDiscriminant { dstar, d0 }
}

/// Which necessary condition for a root in ℤ_p^* holds, if any.
pub fn unit_precheck(inst: &CubicInstance) -> Option<UnitCondition> {
    let (va, vb) = (inst.ord_a(), inst.ord_b());
    if va == vb && va <= 0 {
        Some(UnitCondition::EqualNorms)
    } else if va == 0 && vb > 0 {
        Some(UnitCondition::SmallB)
    } else if vb == 0 && va > 0 {
        Some(UnitCondition::SmallA)
    } else {
        None
    }
}

/// Whether at least one root lies in `domain`.
pub fn solvable_in(inst: &CubicInstance, domain: DomainTag) -> bool {
    let profile = Profile::of(inst);
    if domain == DomainTag::Whole {
        return profile.region() != Region::Outside;
    }
    domain
        .atoms()
        .iter()
        .any(|&atom| profile.atom_solvable(atom))
}

/// Number of roots in `domain`, counted with multiplicity.
pub fn count_in(inst: &CubicInstance, domain: DomainTag) -> u8 {
    let profile = Profile::of(inst);
    if domain == DomainTag::Whole {
        if profile.region() == Region::Outside {
            return 0;
        }
        return profile.count_whole();
    }
    domain
        .atoms()
        .iter()
        .map(|&atom| profile.atom_count(atom))
        .sum()
}

/// The case item describing the instance, `None` outside Δ.
pub fn case_item(inst: &CubicInstance) -> Result<Option<CaseItem>> {
    let items = Profile::of(inst).matching_items();
    match items.len() {
        0 => Ok(None),
        1 => Ok(Some(items[0])),
        _ => Err(Error::InternalInconsistency(format!(
            "{inst}: several case items apply: {items:?}"
        ))),
    }
}

/// Root-location signature, cross-checked against the case items.
pub fn signature(inst: &CubicInstance) -> Result<LocationSignature> {
    let profile = Profile::of(inst);
    let region = profile.region();
    let sig = LocationSignature::new(
        profile.atom_count(DomainTag::Units),
        profile.atom_count(DomainTag::SmallBall),
        profile.atom_count(DomainTag::Exterior),
    );
    let fail = |msg: String| Err(Error::InternalInconsistency(format!("{inst}: {msg}")));
    let items = profile.matching_items();
    if region == Region::Outside {
        if !items.is_empty() || !sig.is_empty() {
            return fail(format!("outside Δ but items {items:?}, signature {sig:?}"));
        }
        return Ok(sig);
    }
    if items.len() != 1 {
        return fail(format!("expected exactly one case item, found {items:?}"));
    }
    let expected = items[0].expected_signature();
    if expected != sig {
        return fail(format!(
            "{} predicts {expected:?} but the count tables give {sig:?}",
            items[0]
        ));
    }
    if sig.total() != profile.count_whole() {
        return fail(format!(
            "atom counts {sig:?} do not add up to the ℚ_p count {}",
            profile.count_whole()
        ));
    }
    let nonzero = sig.nonzero_atoms().len();
    if nonzero == 3 {
        return fail("roots in all three atoms".into());
    }
    if region == Region::Delta2 && nonzero > 1 {
        return fail(format!("Δ2 instance with mixed signature {sig:?}"));
    }
    Ok(sig)
}

/// The full classification of one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub region: Region,
    pub signature: LocationSignature,
    pub item: Option<CaseItem>,
    pub counts: Vec<(DomainTag, u8)>,
    pub solvable: Vec<(DomainTag, bool)>,
    pub unit_condition: Option<UnitCondition>,
    pub discriminant: NormalizedDiscriminant,
}

pub fn classify(inst: &CubicInstance) -> Result<Classification> {
    let signature = signature(inst)?;
    let counts: Vec<(DomainTag, u8)> = DomainTag::ALL
        .iter()
        .map(|&d| (d, count_in(inst, d)))
        .collect();
    let solvable: Vec<(DomainTag, bool)> = DomainTag::ALL
        .iter()
        .map(|&d| (d, solvable_in(inst, d)))
        .collect();
    for (&(d, n), &(_, s)) in counts.iter().zip(&solvable) {
        if s != (n >= 1) {
            return Err(Error::InternalInconsistency(format!(
                "{inst}: solvable_in({d}) = {s} but count_in({d}) = {n}"
            )));
        }
    }
    Ok(Classification {
        region: region(inst),
        signature,
        item: case_item(inst)?,
        counts,
        solvable,
        unit_condition: unit_precheck(inst),
        discriminant: normalized_discriminant(inst),
    })
}
