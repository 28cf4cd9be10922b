//! Decision procedures built on top of the invariant calculus: prime-power
//! divisibility of the plain invariant, the admissible dimension window for
//! prime-order actions, fixed-point congruences for free actions, the
//! connected-sum vanishing test, dihedral extension rules, and the Burnside
//! bookkeeping of zero-dimensional moduli.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{divisors, is_prime, mod_pow, totient, totient_mobius};
use crate::cohring::{CoeffMode, CohClass, HalfInt};
use crate::error::{Error, Result};
use crate::grouptheory::{subgroup_mobius, FiniteGroup, SubgroupLattice};
use crate::reptheory::{palindrome_check, RepRingElem};

/// Outcome of an obstruction test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "statement", rename_all = "snake_case")]
pub enum Conclusion {
    Obstructed,
    Consistent,
    NotApplicable,
    ForcedCongruence(String),
}

/// Machine-readable record of which inequality or congruence fired.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Witness {
    /// A required prime power does not divide `(b+ - 1)/2`.
    PrimePowerFails { divisor: u64, target: i64 },
    /// The moduli degree is odd or negative, so the test does not apply.
    DegreeOutOfScope { delta: i64 },
    /// Corollary report: `m` against the window bound `p - 2`.
    CorollaryBound { m: i64, bound: i64 },
    /// No Dirac multiplicity lands in the admissible window.
    WindowEmpty { lo: i64, hi: i64 },
    /// The multiplicity at `index` lands in the admissible window.
    WindowHit {
        index: usize,
        value: i64,
        lo: i64,
        hi: i64,
    },
    /// `b0` is congruent to 1 mod `2p`, which disables the window test.
    ResidueExcluded { b0: u32, modulus: u64 },
    /// The mod-p input vanishes, so there is nothing to constrain.
    VanishingInput,
    /// Fixed-point pair at `index` violates `2 dim D <= dim H+`.
    PairExceeds { index: usize, dirac: i64, hplus: i64 },
    /// Every fixed-point pair satisfies `2 dim D <= dim H+`.
    AllPairsWithin { count: usize },
    /// Residue of a weighted fixed-point sum.
    CongruenceResidue {
        form: CongruenceForm,
        residue: u64,
        modulus: u64,
    },
    /// A nonzero value sits in a degree banned by the reflection.
    ForbiddenDegree { m: u32, degree: i64 },
    /// K-theoretic value at `index` is not symmetric under `t -> 1/t`.
    PalindromeFails { index: usize, power: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceForm {
    EulerPhi,
    Moebius,
}

impl fmt::Display for CongruenceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongruenceForm::EulerPhi => write!(f, "euler-phi"),
            CongruenceForm::Moebius => write!(f, "moebius"),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::PrimePowerFails { divisor, target } => {
                write!(f, "{divisor} does not divide (b+ - 1)/2 = {target}")
            }
            Witness::DegreeOutOfScope { delta } => {
                write!(f, "moduli degree {delta} is odd or negative")
            }
            Witness::CorollaryBound { m, bound } => {
                write!(f, "m = {m} against the window bound p - 2 = {bound}")
            }
            Witness::WindowEmpty { lo, hi } => write!(f, "no i with d_i in [{lo},{hi}]"),
            Witness::WindowHit {
                index,
                value,
                lo,
                hi,
            } => write!(f, "d_{index} = {value} lies in [{lo},{hi}]"),
            Witness::ResidueExcluded { b0, modulus } => {
                write!(f, "b0 = {b0} is congruent to 1 mod {modulus}")
            }
            Witness::VanishingInput => write!(f, "the mod-p input vanishes"),
            Witness::PairExceeds {
                index,
                dirac,
                hplus,
            } => write!(
                f,
                "pair {index}: 2 dim D = {dirac} exceeds dim H+ = {hplus}"
            ),
            Witness::AllPairsWithin { count } => {
                write!(f, "all {count} pairs satisfy 2 dim D <= dim H+")
            }
            Witness::CongruenceResidue {
                form,
                residue,
                modulus,
            } => write!(f, "{form} sum is {residue} mod {modulus}"),
            Witness::ForbiddenDegree { m, degree } => {
                write!(f, "SW(x^{m}) is nonzero in degree {degree}")
            }
            Witness::PalindromeFails { index, power } => {
                write!(f, "value {index} breaks t^{power} symmetry")
            }
        }
    }
}

/// Conclusion of a test together with the records that justify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub witness: Vec<Witness>,
}

impl Verdict {
    pub fn obstructed(witness: Vec<Witness>) -> Self {
        Verdict {
            conclusion: Conclusion::Obstructed,
            witness,
        }
    }

    pub fn consistent(witness: Vec<Witness>) -> Self {
        Verdict {
            conclusion: Conclusion::Consistent,
            witness,
        }
    }

    pub fn not_applicable(witness: Vec<Witness>) -> Self {
        Verdict {
            conclusion: Conclusion::NotApplicable,
            witness,
        }
    }

    pub fn forced(statement: impl Into<String>, witness: Vec<Witness>) -> Self {
        Verdict {
            conclusion: Conclusion::ForcedCongruence(statement.into()),
            witness,
        }
    }

    #[must_use]
    pub fn is_obstructed(&self) -> bool {
        self.conclusion == Conclusion::Obstructed
    }

    fn from_residues(witness: Vec<Witness>) -> Self {
        let clean = witness.iter().all(|w| {
            matches!(
                w,
                Witness::CongruenceResidue { residue: 0, .. }
            )
        });
        if clean {
            Verdict::consistent(witness)
        } else {
            Verdict::obstructed(witness)
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.conclusion {
            Conclusion::Obstructed => write!(f, "obstructed")?,
            Conclusion::Consistent => write!(f, "consistent")?,
            Conclusion::NotApplicable => write!(f, "not applicable")?,
            Conclusion::ForcedCongruence(statement) => write!(f, "forced {statement}")?,
        }
        if !self.witness.is_empty() {
            let parts: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
            write!(f, ": {}", parts.join("; "))?;
        }
        Ok(())
    }
}

/// Prime-power divisibility forced on the plain invariant by an action of
/// order `p`: every `p^(e+1)` with `p^e <= m/(p-1)` must divide
/// `(b+ - 1)/2`, where `2m = 2d - b+ - 1`; a failure forces the invariant
/// to vanish mod `p`. The corollary window `m <= p - 2` is reported
/// alongside.
pub fn divisibility_check(b_plus: u32, d: i64, p: u64) -> Result<Verdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let delta = 2 * d - i64::from(b_plus) - 1;
    if delta < 0 || delta % 2 != 0 {
        return Ok(Verdict::not_applicable(vec![Witness::DegreeOutOfScope {
            delta,
        }]));
    }
    let m = delta / 2;
    let target = (i64::from(b_plus) - 1) / 2;
    let cap = m / (p as i64 - 1);
    let mut failures = Vec::new();
    let mut pe = 1i64;
    while pe <= cap {
        let divisor = match pe.checked_mul(p as i64) {
            Some(next) => next,
            None => break,
        };
        if target % divisor != 0 {
            failures.push(Witness::PrimePowerFails {
                divisor: divisor as u64,
                target,
            });
        }
        pe = divisor;
    }
    let corollary = Witness::CorollaryBound {
        m,
        bound: p as i64 - 2,
    };
    if failures.is_empty() {
        Ok(Verdict::consistent(vec![corollary]))
    } else {
        failures.push(corollary);
        Ok(Verdict::forced(format!("SW = 0 (mod {p})"), failures))
    }
}

/// Admissible-window constraint for an order-`p` action: a nonvanishing
/// mod-p invariant forces some Dirac multiplicity to satisfy
/// `0 <= 2 d_i - b0 - 1 <= 2(p - 2)`. The window is void when `b0` is
/// congruent to 1 mod `2p`.
pub fn constraint_zp(b0: u32, d: &[i64], p: u64, sw_mod_p_nonzero: bool) -> Result<Verdict> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d.len() as u64 != p {
        return Err(Error::Invalid(format!(
            "expected {p} Dirac multiplicities, got {}",
            d.len()
        )));
    }
    if !sw_mod_p_nonzero {
        return Ok(Verdict::consistent(vec![Witness::VanishingInput]));
    }
    if u64::from(b0) % (2 * p) == 1 {
        return Ok(Verdict::not_applicable(vec![Witness::ResidueExcluded {
            b0,
            modulus: 2 * p,
        }]));
    }
    let lo_twice = i64::from(b0) + 1;
    let hi_twice = lo_twice + 2 * (p as i64 - 2);
    let lo = (lo_twice + 1).div_euclid(2);
    let hi = hi_twice.div_euclid(2);
    for (index, &value) in d.iter().enumerate() {
        if 2 * value >= lo_twice && 2 * value <= hi_twice {
            return Ok(Verdict::consistent(vec![Witness::WindowHit {
                index,
                value,
                lo,
                hi,
            }]));
        }
    }
    Ok(Verdict::obstructed(vec![Witness::WindowEmpty { lo, hi }]))
}

/// Connected-sum style vanishing: when every nontrivial cyclic subgroup and
/// splitting satisfies `2 dim D^sH <= dim H+^H`, the signed point count is
/// a multiple of the group order. Pairs list `(2 dim D^sH, dim H+^H)`.
pub fn fang_check(pairs: &[(i64, i64)], group_order: u64) -> Result<Verdict> {
    if pairs.is_empty() && group_order > 1 {
        return Err(Error::Invalid(
            "no fixed-point pairs supplied; a nontrivial group has a nontrivial cyclic subgroup"
                .into(),
        ));
    }
    for (index, &(dirac, hplus)) in pairs.iter().enumerate() {
        if dirac > hplus {
            return Ok(Verdict::consistent(vec![Witness::PairExceeds {
                index,
                dirac,
                hplus,
            }]));
        }
    }
    Ok(Verdict::forced(
        format!("SW = 0 (mod {group_order})"),
        vec![Witness::AllPairsWithin { count: pairs.len() }],
    ))
}

/// Fixed-point congruences of a finite oriented Z_n-set: the totient-weighted
/// sum over subgroups and its Moebius companion must both vanish mod `n`.
/// `fixed_counts` maps each subgroup order `m | n` to the signed count of
/// points fixed by the order-`m` subgroup.
pub fn free_congruence_check(n: u64, fixed_counts: &BTreeMap<u64, i64>) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::Invalid("group order must be positive".into()));
    }
    for &m in fixed_counts.keys() {
        if m == 0 || n % m != 0 {
            return Err(Error::Invalid(format!(
                "{m} is not a subgroup order of Z_{n}"
            )));
        }
    }
    let mut phi_sum: i128 = 0;
    let mut mob_sum: i128 = 0;
    for m in divisors(n) {
        let count = *fixed_counts.get(&m).ok_or_else(|| {
            Error::Invalid(format!("missing fixed-point count for the order-{m} subgroup"))
        })? as i128;
        let (phi, mob) = totient_mobius(m);
        phi_sum += i128::from(phi) * count;
        mob_sum += i128::from(mob) * count;
    }
    Ok(Verdict::from_residues(vec![
        Witness::CongruenceResidue {
            form: CongruenceForm::EulerPhi,
            residue: phi_sum.rem_euclid(i128::from(n)) as u64,
            modulus: n,
        },
        Witness::CongruenceResidue {
            form: CongruenceForm::Moebius,
            residue: mob_sum.rem_euclid(i128::from(n)) as u64,
            modulus: n,
        },
    ]))
}

/// Which congruences to evaluate on a general subgroup lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceScope {
    /// Only the totient form over conjugacy classes of cyclic subgroups.
    CyclicClasses,
    /// The totient form plus the Moebius form over all subgroups.
    Full,
}

/// The congruence test over an arbitrary subgroup lattice. `fixed_counts`
/// is keyed by subgroup index; counts must be constant on conjugacy
/// classes, and may be supplied for any one member of a class. The cyclic
/// form needs data for every cyclic class, the Moebius form for every
/// class.
pub fn free_congruence_check_lattice(
    group: &FiniteGroup,
    lattice: &SubgroupLattice,
    fixed_counts: &BTreeMap<usize, i64>,
    scope: CongruenceScope,
) -> Result<Verdict> {
    let n = group.order() as u64;
    for &index in fixed_counts.keys() {
        if index >= lattice.len() {
            return Err(Error::Invalid(format!(
                "subgroup index {index} out of range"
            )));
        }
    }
    let mut class_count: Vec<Option<i64>> = Vec::with_capacity(lattice.conj_classes().len());
    for class in lattice.conj_classes() {
        let mut value = None;
        for member in class {
            if let Some(&count) = fixed_counts.get(member) {
                if value.is_some_and(|prev| prev != count) {
                    return Err(Error::Inconsistent(
                        "fixed-point counts must be constant on conjugacy classes".into(),
                    ));
                }
                value = Some(count);
            }
        }
        class_count.push(value);
    }
    let mut phi_sum: i128 = 0;
    for (class, value) in lattice.conj_classes().iter().zip(&class_count) {
        let rep = class[0];
        if !lattice.is_cyclic_subgroup(group, rep) {
            continue;
        }
        let count = value.ok_or_else(|| {
            Error::Invalid("missing fixed-point count for a cyclic subgroup class".into())
        })?;
        phi_sum += i128::from(totient(lattice.subgroup_order(rep) as u64))
            * lattice.normaliser_index(rep) as i128
            * i128::from(count);
    }
    let mut witness = vec![Witness::CongruenceResidue {
        form: CongruenceForm::EulerPhi,
        residue: phi_sum.rem_euclid(i128::from(n)) as u64,
        modulus: n,
    }];
    if scope == CongruenceScope::Full {
        let mut mob_sum: i128 = 0;
        for (class, value) in lattice.conj_classes().iter().zip(&class_count) {
            let count = value.ok_or_else(|| {
                Error::Invalid("missing fixed-point count in moebius mode".into())
            })?;
            mob_sum += i128::from(subgroup_mobius(lattice, class[0]))
                * class.len() as i128
                * i128::from(count);
        }
        witness.push(Witness::CongruenceResidue {
            form: CongruenceForm::Moebius,
            residue: mob_sum.rem_euclid(i128::from(n)) as u64,
            modulus: n,
        });
    }
    Ok(Verdict::from_residues(witness))
}

/// Orientation behaviour of the reflection on the self-dual cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TauOrientation {
    Preserves,
    Reverses,
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::Invalid("the dihedral rule needs an odd prime".into()));
    }
    Ok(())
}

/// Extension rule for enlarging an odd-prime cyclic action to the dihedral
/// group: a nonzero value in positive degree `2m - delta` congruent to 2
/// mod 4 obstructs a reflection that preserves orientation on H+, and one
/// congruent to 0 mod 4 obstructs a reversing reflection.
pub fn extension_check_dp(
    p: u64,
    sw_values: &BTreeMap<u32, CohClass>,
    delta: i64,
    tau: TauOrientation,
) -> Result<Verdict> {
    require_odd_prime(p)?;
    let mode = CoeffMode::PMod(
        u32::try_from(p).map_err(|_| Error::Invalid("group order too large".into()))?,
    );
    let banned = match tau {
        TauOrientation::Preserves => 2,
        TauOrientation::Reverses => 0,
    };
    let mut fired = Vec::new();
    for (&m, value) in sw_values {
        if value.is_zero() {
            continue;
        }
        if value.mode() != mode {
            return Err(Error::ModeMismatch(
                value.mode().to_string(),
                mode.to_string(),
            ));
        }
        let degree = 2 * i64::from(m) - delta;
        if degree > 0 && degree.rem_euclid(4) == banned {
            fired.push(Witness::ForbiddenDegree { m, degree });
        }
    }
    if fired.is_empty() {
        Ok(Verdict::consistent(Vec::new()))
    } else {
        Ok(Verdict::obstructed(fired))
    }
}

/// K-theoretic companion of the dihedral extension rule: every supplied
/// value must be a palindrome in the representation ring, i.e. restrict
/// from the dihedral overgroup.
pub fn extension_check_dp_k(p: u64, values: &[RepRingElem]) -> Result<Verdict> {
    require_odd_prime(p)?;
    let mut fired = Vec::new();
    for (index, value) in values.iter().enumerate() {
        if u64::from(value.order()) != p {
            return Err(Error::OrderMismatch(value.order(), p as u32));
        }
        if palindrome_check(value) {
            continue;
        }
        for power in 1..=(p as i64 - 1) / 2 {
            if value.coeff(power) != value.coeff(-power) {
                fired.push(Witness::PalindromeFails { index, power });
            }
        }
    }
    if fired.is_empty() {
        Ok(Verdict::consistent(Vec::new()))
    } else {
        Ok(Verdict::obstructed(fired))
    }
}

/// Integer combination of pointed orbit types of Z_n. A basis element is a
/// pair (subgroup order `m`, character `c` mod `m`): the orbit with
/// stabiliser Z_m carrying the equivariant line given by `c`. The product
/// counts diagonal orbits and adds restricted characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideElem {
    order: u32,
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl BurnsideElem {
    #[must_use]
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "group order must be positive");
        BurnsideElem {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    /// The orbit with stabiliser of order `subgroup` and the line bundle
    /// given by `character` mod `subgroup`.
    pub fn basis(order: u32, subgroup: u32, character: u32) -> Result<Self> {
        if order < 1 || subgroup < 1 || order % subgroup != 0 {
            return Err(Error::Invalid(format!(
                "stabiliser order {subgroup} must divide the group order {order}"
            )));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert((subgroup, character % subgroup), 1);
        Ok(BurnsideElem { order, coeffs })
    }

    /// One point with the trivial character; the multiplicative identity.
    #[must_use]
    pub fn one(order: u32) -> Self {
        assert!(order >= 1, "group order must be positive");
        Self::basis(order, order, 0).expect("the full subgroup divides")
    }

    /// The free orbit.
    #[must_use]
    pub fn free_orbit(order: u32) -> Self {
        assert!(order >= 1, "group order must be positive");
        Self::basis(order, 1, 0).expect("the trivial subgroup divides")
    }

    #[must_use]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[must_use]
    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.coeffs
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn accumulate(coeffs: &mut BTreeMap<(u32, u32), i64>, key: (u32, u32), value: i64) {
        if value == 0 {
            return;
        }
        let entry = coeffs.entry(key).or_insert(0);
        *entry += value;
        if *entry == 0 {
            coeffs.remove(&key);
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let mut coeffs = self.coeffs.clone();
        for (&key, &value) in &rhs.coeffs {
            Self::accumulate(&mut coeffs, key, value);
        }
        Ok(BurnsideElem {
            order: self.order,
            coeffs,
        })
    }

    #[must_use]
    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.order);
        }
        BurnsideElem {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&key, &value)| (key, value * k))
                .collect(),
        }
    }

    /// Product of orbit types: two stabilisers of orders `m1`, `m2` meet in
    /// `n / lcm(m1, m2)` diagonal orbits with stabiliser of order
    /// `gcd(m1, m2)`, and the characters restrict and add.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let mut coeffs = BTreeMap::new();
        for (&(m1, a), &k1) in &self.coeffs {
            for (&(m2, b), &k2) in &rhs.coeffs {
                let g = m1.gcd(&m2);
                let l = m1 / g * m2;
                let key = (g, (a % g + b % g) % g);
                Self::accumulate(&mut coeffs, key, k1 * k2 * i64::from(self.order / l));
            }
        }
        Ok(BurnsideElem {
            order: self.order,
            coeffs,
        })
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurnsideOp {
    Add,
    Mul,
}

pub fn burnside_ops(a: &BurnsideElem, b: &BurnsideElem, op: BurnsideOp) -> Result<BurnsideElem> {
    match op {
        BurnsideOp::Add => a.add(b),
        BurnsideOp::Mul => a.mul(b),
    }
}

/// Transfer value of the invariant on a Burnside element: each basis pair
/// `(m, c)` contributes `[G:H] c^k v^k` in `Z[v]/(nv)`, via
/// `tr(res(a) 1) = a tr(1)` with `tr(1) = [G:H]` and `res(v) = v`. At
/// `k = 0` the contribution is the bare index, an honest integer.
#[must_use]
pub fn burnside_sw(elem: &BurnsideElem, m_exp: u32) -> CohClass {
    let n = elem.order();
    let mode = CoeffMode::IntMod(n);
    let mut acc = CohClass::zero(mode);
    for (&(m, c), &k) in elem.coeffs() {
        let index = u64::from(n / m);
        let scalar = if m_exp == 0 {
            index as i64
        } else {
            (index * mod_pow(u64::from(c), u64::from(m_exp), u64::from(n)) % u64::from(n)) as i64
        };
        let term = CohClass::term(
            mode,
            0,
            HalfInt::from_int(i64::from(m_exp)),
            BigInt::from(scalar * k),
        );
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gen_binom_int;
    use crate::gluing::p_copies;
    use crate::grouptheory::enumerate_subgroup_lattice;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn divisibility_examples() {
        let forced = divisibility_check(3, 4, 2).unwrap();
        assert_eq!(
            forced.conclusion,
            Conclusion::ForcedCongruence("SW = 0 (mod 2)".into())
        );
        assert!(forced
            .witness
            .contains(&Witness::PrimePowerFails { divisor: 2, target: 1 }));

        let ok = divisibility_check(5, 4, 2).unwrap();
        assert_eq!(ok.conclusion, Conclusion::Consistent);

        // m = 0 leaves no exponent to check.
        let vacuous = divisibility_check(3, 2, 5).unwrap();
        assert_eq!(vacuous.conclusion, Conclusion::Consistent);

        let odd = divisibility_check(4, 4, 2).unwrap();
        assert_eq!(odd.conclusion, Conclusion::NotApplicable);
        let negative = divisibility_check(9, 2, 3).unwrap();
        assert_eq!(negative.conclusion, Conclusion::NotApplicable);

        assert!(divisibility_check(3, 4, 6).is_err());
    }

    #[test]
    fn divisibility_sweep_matches_parity_oracle() {
        for p in [2u64, 3, 5, 7] {
            for b_plus in (1u32..=41).step_by(2) {
                for d in 0i64..=30 {
                    let delta = 2 * d - i64::from(b_plus) - 1;
                    if delta < 0 || delta % 2 != 0 {
                        continue;
                    }
                    let m = delta / 2;
                    let verdict = divisibility_check(b_plus, d, p).unwrap();
                    let forced =
                        matches!(verdict.conclusion, Conclusion::ForcedCongruence(_));
                    if m <= p as i64 - 2 {
                        assert!(!forced, "p={p} b+={b_plus} d={d}");
                    } else if i64::from(b_plus) % (2 * p as i64) != 1 {
                        assert!(forced, "p={p} b+={b_plus} d={d}");
                    }
                    if p == 2 {
                        // Lucas: binom(d-1-m, 2^u) is odd exactly when bit u
                        // of d-1-m is set, and d-1-m = (b+ - 1)/2.
                        assert_eq!(d - 1 - m, (i64::from(b_plus) - 1) / 2);
                        let mut oracle = false;
                        let mut u = 0u32;
                        while 1i64 << u <= m {
                            let bit = (d - 1 - m) >> u & 1 == 1;
                            let binom_odd = gen_binom_int(d - 1 - m, 1i64 << u).bit(0);
                            assert_eq!(bit, binom_odd);
                            oracle |= bit;
                            u += 1;
                        }
                        assert_eq!(forced, oracle, "b+={b_plus} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_window_examples() {
        let verdict = constraint_zp(5, &[0, 5, 5], 3, true).unwrap();
        assert_eq!(verdict.conclusion, Conclusion::Obstructed);
        assert_eq!(verdict.witness, vec![Witness::WindowEmpty { lo: 3, hi: 4 }]);
        assert_eq!(verdict.to_string(), "obstructed: no i with d_i in [3,4]");

        let hit = constraint_zp(5, &[0, 3, 7], 3, true).unwrap();
        assert_eq!(hit.conclusion, Conclusion::Consistent);
        assert_eq!(
            hit.witness,
            vec![Witness::WindowHit {
                index: 1,
                value: 3,
                lo: 3,
                hi: 4
            }]
        );

        let vacuous = constraint_zp(5, &[0, 5, 5], 3, false).unwrap();
        assert_eq!(vacuous.conclusion, Conclusion::Consistent);
        assert_eq!(vacuous.witness, vec![Witness::VanishingInput]);

        let excluded = constraint_zp(7, &[0, 0, 0], 3, true).unwrap();
        assert_eq!(excluded.conclusion, Conclusion::NotApplicable);

        assert!(constraint_zp(5, &[0, 5], 3, true).is_err());
        assert!(constraint_zp(5, &[0, 5, 5, 0], 4, true).is_err());
    }

    #[test]
    fn fang_examples() {
        let forced = fang_check(&[(2, 3), (2, 3)], 3).unwrap();
        assert_eq!(
            forced.conclusion,
            Conclusion::ForcedCongruence("SW = 0 (mod 3)".into())
        );

        let open = fang_check(&[(2, 3), (4, 3)], 3).unwrap();
        assert_eq!(open.conclusion, Conclusion::Consistent);
        assert_eq!(
            open.witness,
            vec![Witness::PairExceeds {
                index: 1,
                dirac: 4,
                hplus: 3
            }]
        );

        assert!(fang_check(&[], 3).is_err());
        let trivial = fang_check(&[], 1).unwrap();
        assert_eq!(
            trivial.conclusion,
            Conclusion::ForcedCongruence("SW = 0 (mod 1)".into())
        );
    }

    #[test]
    fn cyclic_congruence_examples() {
        let mut counts = BTreeMap::new();
        counts.insert(1u64, 70i64);
        counts.insert(3u64, 4i64);
        let ok = free_congruence_check(3, &counts).unwrap();
        assert_eq!(ok.conclusion, Conclusion::Consistent);

        counts.insert(3, 3);
        let bad = free_congruence_check(3, &counts).unwrap();
        assert_eq!(bad.conclusion, Conclusion::Obstructed);
        assert!(bad.witness.contains(&Witness::CongruenceResidue {
            form: CongruenceForm::EulerPhi,
            residue: 1,
            modulus: 3
        }));

        let mut missing = BTreeMap::new();
        missing.insert(1u64, 4i64);
        missing.insert(4u64, 0i64);
        assert!(free_congruence_check(4, &missing).is_err());

        let mut stray = BTreeMap::new();
        stray.insert(1u64, 0i64);
        stray.insert(3u64, 0i64);
        assert!(free_congruence_check(4, &stray).is_err());
    }

    /// Signed fixed counts of a disjoint union of orbits Z_n/Z_m with
    /// multiplicities per divisor.
    fn cyclic_set_counts(n: u64, mults: &[i64]) -> BTreeMap<u64, i64> {
        let divs = divisors(n);
        let mut counts = BTreeMap::new();
        for &m in &divs {
            let mut total = 0i64;
            for (i, &orbit_stab) in divs.iter().enumerate() {
                if orbit_stab % m == 0 {
                    total += mults[i % mults.len()] * (n / orbit_stab) as i64;
                }
            }
            counts.insert(m, total);
        }
        counts
    }

    proptest! {
        #[test]
        fn congruences_hold_on_cyclic_g_sets(
            n in 2u64..=12,
            mults in prop::collection::vec(-3i64..=3, 6),
        ) {
            let counts = cyclic_set_counts(n, &mults);
            let verdict = free_congruence_check(n, &counts).unwrap();
            prop_assert_eq!(verdict.conclusion, Conclusion::Consistent);
        }
    }

    #[test]
    fn lattice_path_matches_divisor_path() {
        for n in 2u32..=12 {
            let counts = cyclic_set_counts(u64::from(n), &[1, -2, 1, 0, 2, 1]);
            let group = FiniteGroup::cyclic(n);
            let lattice = enumerate_subgroup_lattice(&group).unwrap();
            let mut by_index = BTreeMap::new();
            for i in 0..lattice.len() {
                by_index.insert(i, counts[&(lattice.subgroup_order(i) as u64)]);
            }
            let direct = free_congruence_check(u64::from(n), &counts).unwrap();
            let via_lattice =
                free_congruence_check_lattice(&group, &lattice, &by_index, CongruenceScope::Full)
                    .unwrap();
            assert_eq!(direct, via_lattice, "n = {n}");
            assert_eq!(direct.conclusion, Conclusion::Consistent);

            // Breaking one count breaks both paths the same way.
            let mut broken = counts.clone();
            *broken.get_mut(&1).unwrap() += 1;
            let mut broken_by_index = by_index.clone();
            *broken_by_index.get_mut(&lattice.trivial_index()).unwrap() += 1;
            let direct = free_congruence_check(u64::from(n), &broken).unwrap();
            let via_lattice = free_congruence_check_lattice(
                &group,
                &lattice,
                &broken_by_index,
                CongruenceScope::Full,
            )
            .unwrap();
            assert_eq!(direct, via_lattice, "n = {n}");
            assert_eq!(direct.conclusion, Conclusion::Obstructed);
        }
    }

    /// Signed count of cosets gH fixed by K, i.e. with K^g contained in H.
    fn orbit_fixed_count(g: &FiniteGroup, h_elems: &[usize], k_elems: &[usize]) -> i64 {
        let members: BTreeSet<usize> = h_elems.iter().copied().collect();
        let mut seen = vec![false; g.order()];
        let mut count = 0;
        for rep in 0..g.order() {
            if seen[rep] {
                continue;
            }
            for &h in h_elems {
                seen[g.mul(rep, h)] = true;
            }
            let inv = g.inverse(rep);
            if k_elems
                .iter()
                .all(|&k| members.contains(&g.mul(g.mul(inv, k), rep)))
            {
                count += 1;
            }
        }
        count
    }

    proptest! {
        #[test]
        fn congruences_hold_on_dihedral_g_sets(
            k in 3u32..=6,
            mults in prop::collection::vec(-2i64..=2, 12),
        ) {
            let group = FiniteGroup::dihedral(k);
            let lattice = enumerate_subgroup_lattice(&group).unwrap();
            let mut counts = BTreeMap::new();
            for i in 0..lattice.len() {
                let mut total = 0i64;
                for (ci, class) in lattice.conj_classes().iter().enumerate() {
                    let mult = mults[ci % mults.len()];
                    if mult == 0 {
                        continue;
                    }
                    // The orbit G/H appears `class.len()` times up to
                    // isomorphism but each conjugate gives the same G-set,
                    // so one representative suffices.
                    total += mult
                        * orbit_fixed_count(
                            &group,
                            lattice.elements(class[0]),
                            lattice.elements(i),
                        );
                }
                counts.insert(i, total);
            }
            let verdict =
                free_congruence_check_lattice(&group, &lattice, &counts, CongruenceScope::Full)
                    .unwrap();
            prop_assert_eq!(verdict.conclusion, Conclusion::Consistent);
        }
    }

    #[test]
    fn moebius_mode_requires_every_class() {
        let group = FiniteGroup::dihedral(3);
        let lattice = enumerate_subgroup_lattice(&group).unwrap();
        let mut cyclic_only = BTreeMap::new();
        for i in 0..lattice.len() {
            if lattice.is_cyclic_subgroup(&group, i) {
                cyclic_only.insert(i, 0i64);
            }
        }
        let restricted = free_congruence_check_lattice(
            &group,
            &lattice,
            &cyclic_only,
            CongruenceScope::CyclicClasses,
        )
        .unwrap();
        assert_eq!(restricted.conclusion, Conclusion::Consistent);
        assert_eq!(restricted.witness.len(), 1);

        let full = free_congruence_check_lattice(
            &group,
            &lattice,
            &cyclic_only,
            CongruenceScope::Full,
        );
        assert!(full.is_err());
    }

    #[test]
    fn extension_rules_on_connected_sums() {
        // Five K3 summands cyclically permuted; the only nonzero value sits
        // at m = p - 1 in degree p - 1.
        let sw3 = p_copies(2, 3, 1, 3, 2).unwrap();
        assert!(!sw3.is_zero());
        let mut values = BTreeMap::new();
        values.insert(2u32, sw3);
        let preserving = extension_check_dp(3, &values, 2, TauOrientation::Preserves).unwrap();
        assert_eq!(preserving.conclusion, Conclusion::Obstructed);
        assert_eq!(
            preserving.witness,
            vec![Witness::ForbiddenDegree { m: 2, degree: 2 }]
        );
        let reversing = extension_check_dp(3, &values, 2, TauOrientation::Reverses).unwrap();
        assert_eq!(reversing.conclusion, Conclusion::Consistent);

        let sw5 = p_copies(2, 3, 1, 5, 4).unwrap();
        assert!(!sw5.is_zero());
        let mut values = BTreeMap::new();
        values.insert(4u32, sw5);
        let preserving = extension_check_dp(5, &values, 4, TauOrientation::Preserves).unwrap();
        assert_eq!(preserving.conclusion, Conclusion::Consistent);
        let reversing = extension_check_dp(5, &values, 4, TauOrientation::Reverses).unwrap();
        assert_eq!(reversing.conclusion, Conclusion::Obstructed);

        let empty = BTreeMap::new();
        let idle = extension_check_dp(3, &empty, 0, TauOrientation::Preserves).unwrap();
        assert_eq!(idle.conclusion, Conclusion::Consistent);

        assert!(extension_check_dp(2, &empty, 0, TauOrientation::Preserves).is_err());
        let mut wrong_mode = BTreeMap::new();
        wrong_mode.insert(1u32, CohClass::v_power(CoeffMode::PMod(5), 1));
        assert!(extension_check_dp(3, &wrong_mode, 0, TauOrientation::Preserves).is_err());
    }

    proptest! {
        /// The banned set depends on the degree only through its residue
        /// mod 4, so shifting m by 2 leaves the verdict unchanged.
        #[test]
        fn extension_rule_is_mod_four_periodic(
            m in 1u32..=20,
            delta in 0i64..=10,
            preserves in any::<bool>(),
        ) {
            let tau = if preserves {
                TauOrientation::Preserves
            } else {
                TauOrientation::Reverses
            };
            let base_degree = 2 * i64::from(m) - delta;
            prop_assume!(base_degree > 0);
            let mut values = BTreeMap::new();
            values.insert(m, CohClass::v_power(CoeffMode::PMod(3), 1));
            let mut shifted = BTreeMap::new();
            shifted.insert(m + 2, CohClass::v_power(CoeffMode::PMod(3), 1));
            let got = extension_check_dp(3, &values, delta, tau).unwrap();
            let moved = extension_check_dp(3, &shifted, delta, tau).unwrap();
            prop_assert_eq!(got.conclusion, moved.conclusion);
        }
    }

    #[test]
    fn palindrome_flags() {
        let symmetric = RepRingElem::from_coeffs(5, vec![2, 1, 0, 0, 1]).unwrap();
        let lopsided = RepRingElem::from_coeffs(5, vec![0, 1, 0, 0, 0]).unwrap();
        let ok = extension_check_dp_k(5, &[symmetric.clone()]).unwrap();
        assert_eq!(ok.conclusion, Conclusion::Consistent);
        let bad = extension_check_dp_k(5, &[symmetric, lopsided]).unwrap();
        assert_eq!(bad.conclusion, Conclusion::Obstructed);
        assert_eq!(
            bad.witness,
            vec![Witness::PalindromeFails { index: 1, power: 1 }]
        );

        let wrong_order = RepRingElem::from_coeffs(3, vec![0, 1, 0]).unwrap();
        assert!(extension_check_dp_k(5, &[wrong_order]).is_err());
    }

    #[test]
    fn presentation_relations_hold() {
        for p in [2u32, 3, 5, 7] {
            let y = BurnsideElem::free_orbit(p);
            let xs: Vec<BurnsideElem> = (0..p)
                .map(|j| BurnsideElem::basis(p, p, j).unwrap())
                .collect();
            for i in 0..p as usize {
                for j in 0..p as usize {
                    let got = xs[i].mul(&xs[j]).unwrap();
                    assert_eq!(got, xs[(i + j) % p as usize]);
                }
                assert_eq!(xs[i].mul(&y).unwrap(), y);
            }
            assert_eq!(y.mul(&y).unwrap(), y.scale(i64::from(p)));

            let mut power = BurnsideElem::one(p);
            for _ in 0..p {
                power = power.mul(&xs[1]).unwrap();
            }
            assert_eq!(power, BurnsideElem::one(p));
        }
    }

    #[test]
    fn products_on_composite_orders() {
        let a = BurnsideElem::basis(12, 6, 1).unwrap();
        let b = BurnsideElem::basis(12, 4, 3).unwrap();
        // Stabilisers of orders 6 and 4 meet in one diagonal orbit with
        // stabiliser of order 2 and character 1 + 3 = 0 mod 2.
        assert_eq!(a.mul(&b).unwrap(), BurnsideElem::basis(12, 2, 0).unwrap());

        let one = BurnsideElem::one(12);
        assert_eq!(one.mul(&a).unwrap(), a);
        assert_eq!(
            burnside_ops(&a, &b, BurnsideOp::Add).unwrap(),
            a.add(&b).unwrap()
        );

        assert!(a.mul(&BurnsideElem::one(6)).is_err());
        assert!(BurnsideElem::basis(12, 5, 0).is_err());
    }

    #[test]
    fn transfer_values() {
        let y = BurnsideElem::free_orbit(6);
        assert!(burnside_sw(&y, 2).is_zero());
        assert_eq!(burnside_sw(&y, 0).render(), "6");

        let full = BurnsideElem::basis(6, 6, 5).unwrap();
        assert_eq!(burnside_sw(&full, 2).render(), "v^2");
        assert_eq!(burnside_sw(&full, 0).render(), "1");

        let half = BurnsideElem::basis(4, 2, 1).unwrap();
        assert_eq!(burnside_sw(&half, 1).render(), "2*v");
    }

    fn arb_burnside(n: u32) -> impl Strategy<Value = BurnsideElem> {
        let divs: Vec<u32> = divisors(u64::from(n)).iter().map(|&d| d as u32).collect();
        prop::collection::vec((0..divs.len(), 0..n, -3i64..=3), 0..4).prop_map(move |items| {
            let mut acc = BurnsideElem::zero(n);
            for (di, c, k) in items {
                let basis = BurnsideElem::basis(n, divs[di], c).unwrap();
                acc = acc.add(&basis.scale(k)).unwrap();
            }
            acc
        })
    }

    fn arb_burnside_pair() -> impl Strategy<Value = (BurnsideElem, BurnsideElem, u32)> {
        prop::sample::select(vec![1u32, 2, 3, 4, 6, 12])
            .prop_flat_map(|n| (arb_burnside(n), arb_burnside(n), 0u32..4))
    }

    proptest! {
        #[test]
        fn transfer_is_linear((a, b, exp) in arb_burnside_pair()) {
            let sum = a.add(&b).unwrap();
            let lhs = burnside_sw(&sum, exp);
            let rhs = burnside_sw(&a, exp).add(&burnside_sw(&b, exp));
            prop_assert_eq!(lhs, rhs);
            let scaled = burnside_sw(&a.scale(3), exp);
            prop_assert_eq!(scaled, burnside_sw(&a, exp).scale_int(3));
        }
    }

    #[test]
    fn verdicts_serialize_with_witnesses() {
        let verdict = constraint_zp(5, &[0, 5, 5], 3, true).unwrap();
        let json = serde_json::to_string(&verdict).unwrap();
        assert!(json.contains("window_empty"));
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, verdict);

        let forced = divisibility_check(3, 4, 2).unwrap();
        let json = serde_json::to_string(&forced).unwrap();
        let back: Verdict = serde_json::from_str(&json).unwrap();
        assert_eq!(back, forced);
    }
}
