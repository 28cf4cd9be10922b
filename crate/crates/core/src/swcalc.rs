//! Invariant calculus for cyclic group actions on four-manifolds: chamber
//! bookkeeping, wall crossing, charge conjugation, vanishing verdicts,
//! transversality bounds, and the localisation of equivariant invariants to
//! reduced data, in cohomology and at the character level in K-theory.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{is_prime, ratio, Cyclotomic, Rat};
use crate::charclass::{euler_class, segre_classes, sw_classes_z2, VirtualRep};
use crate::cohring::{laurent_cj, CoeffMode, CohClass};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chamber {
    Plus,
    Minus,
    Unique,
}

/// The non-invariant part of H+ as a group representation: explicit complex
/// weights (any order), or a bare count of sign-representation summands for
/// the order-two group, whose real summands need not admit a complex
/// structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HplusQuotient {
    Weights(VirtualRep),
    SignCount(u32),
}

/// Algebraic shadow of a group action on a four-manifold with an invariant
/// spin-c structure: the weight decomposition of the Dirac index, the
/// self-dual cohomology dimensions, and the chamber bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionData {
    order: u32,
    b_plus: u32,
    b0: u32,
    d: i64,
    d_weights: VirtualRep,
    hplus_quotient: HplusQuotient,
    chamber: Chamber,
    orientation_hplus_preserved: bool,
}

impl ActionData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        order: u32,
        b_plus: u32,
        b0: u32,
        d: i64,
        d_weights: VirtualRep,
        hplus_quotient: HplusQuotient,
        chamber: Chamber,
        orientation_hplus_preserved: bool,
    ) -> Result<Self> {
        if order < 1 {
            return Err(Error::Invalid("group order must be positive".into()));
        }
        if d_weights.order() != order {
            return Err(Error::OrderMismatch(d_weights.order(), order));
        }
        if !d_weights.twisted() {
            return Err(Error::Invalid(
                "index weights must carry the circle twist".into(),
            ));
        }
        if d_weights.rank() != d {
            return Err(Error::Inconsistent(format!(
                "index weight multiplicities sum to {}, expected d = {}",
                d_weights.rank(),
                d
            )));
        }
        if b0 > b_plus {
            return Err(Error::Inconsistent(format!(
                "invariant part {b0} exceeds b+ = {b_plus}"
            )));
        }
        match &hplus_quotient {
            HplusQuotient::Weights(w) => {
                if w.order() != order {
                    return Err(Error::OrderMismatch(w.order(), order));
                }
                if w.twisted() {
                    return Err(Error::Invalid(
                        "self-dual quotient weights must be untwisted".into(),
                    ));
                }
                if !w.is_genuine() {
                    return Err(Error::Invalid(
                        "self-dual quotient weights must be non-negative".into(),
                    ));
                }
                if 2 * w.rank() != i64::from(b_plus) - i64::from(b0) {
                    return Err(Error::Inconsistent(format!(
                        "complex quotient rank {} does not match b+ - b0 = {}",
                        w.rank(),
                        b_plus - b0
                    )));
                }
            }
            HplusQuotient::SignCount(c) => {
                if order != 2 {
                    return Err(Error::Invalid(
                        "sign-representation count is only meaningful for order two".into(),
                    ));
                }
                if i64::from(*c) != i64::from(b_plus) - i64::from(b0) {
                    return Err(Error::Inconsistent(format!(
                        "sign count {c} does not match b+ - b0 = {}",
                        b_plus - b0
                    )));
                }
            }
        }
        let unique = matches!(chamber, Chamber::Unique);
        if unique != (b0 != 1) {
            return Err(Error::Inconsistent(
                "chamber is a free choice exactly when the invariant part is one-dimensional"
                    .into(),
            ));
        }
        Ok(ActionData {
            order,
            b_plus,
            b0,
            d,
            d_weights,
            hplus_quotient,
            chamber,
            orientation_hplus_preserved,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn b_plus(&self) -> u32 {
        self.b_plus
    }

    pub fn b0(&self) -> u32 {
        self.b0
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn d_weight(&self, j: i64) -> i64 {
        self.d_weights.weight(j)
    }

    pub fn d_weights(&self) -> &VirtualRep {
        &self.d_weights
    }

    pub fn hplus_quotient(&self) -> &HplusQuotient {
        &self.hplus_quotient
    }

    pub fn chamber(&self) -> Chamber {
        self.chamber
    }

    pub fn orientation_hplus_preserved(&self) -> bool {
        self.orientation_hplus_preserved
    }

    /// Expected dimension 2d - b+ - 1 of the invariant map.
    pub fn delta(&self) -> i64 {
        2 * self.d - i64::from(self.b_plus) - 1
    }

    /// Expected reduced dimension d_j - (b0+1)/2 for the weight-j splitting.
    pub fn delta_j(&self, j: i64) -> Rat {
        Rat::from(BigInt::from(self.d_weight(j))) - ratio(i64::from(self.b0) + 1, 2)
    }

    fn euler_hplus_quotient(&self, mode: CoeffMode) -> Result<CohClass> {
        match &self.hplus_quotient {
            HplusQuotient::Weights(w) => Ok(euler_class(w, mode)?.coeff(0)),
            HplusQuotient::SignCount(c) => {
                if mode != CoeffMode::PMod(2) {
                    return Err(Error::Invalid(
                        "a sign-representation count only has an Euler class mod 2".into(),
                    ));
                }
                Ok(CohClass::u_gen(mode).pow(*c))
            }
        }
    }
}

/// Reduced invariants, one integer per splitting. Entries whose expected
/// reduced dimension is negative or non-integral are forced to zero when the
/// data is constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSWData {
    values: Vec<BigInt>,
    forced: Vec<bool>,
}

impl ReducedSWData {
    pub fn new(data: &ActionData, raw: &[i64]) -> Result<Self> {
        if raw.len() != data.order() as usize {
            return Err(Error::Invalid(format!(
                "expected {} reduced invariants, got {}",
                data.order(),
                raw.len()
            )));
        }
        let mut values = Vec::with_capacity(raw.len());
        let mut forced = Vec::with_capacity(raw.len());
        for (j, &s) in raw.iter().enumerate() {
            let dj = data.delta_j(j as i64);
            let keep = dj.is_integer() && !dj.numer().is_negative();
            values.push(if keep { BigInt::from(s) } else { BigInt::zero() });
            forced.push(!keep);
        }
        Ok(ReducedSWData { values, forced })
    }

    pub fn value(&self, j: usize) -> &BigInt {
        &self.values[j]
    }

    pub fn was_forced(&self, j: usize) -> bool {
        self.forced[j]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Invariant table indexed by request exponent vectors (m_0, ..., m_{n-1}),
/// the monomial being the product of (x + j*v)^{m_j}.
pub type InvariantTable = BTreeMap<Vec<u32>, CohClass>;

/// Ordinary invariant of the trivial group action: the scalar in the single
/// admissible degree, zero elsewhere.
pub fn sw_trivial_group(sw_scalar: i64, data: &ActionData, m: u32) -> Result<i64> {
    if data.order() != 1 {
        return Err(Error::Invalid("trivial-group evaluation needs order one".into()));
    }
    if 2 * i64::from(m) == data.delta() {
        Ok(sw_scalar)
    } else {
        Ok(0)
    }
}

/// Difference of the two chamber invariants at x^m when the invariant part of
/// H+ is a line: e(H_0) s_{m-(d-1)}(D), with H_0 the quotient of H+ by the
/// chamber direction.
pub fn wall_cross(data: &ActionData, m: u32, mode: CoeffMode) -> Result<CohClass> {
    mode.validate()?;
    if data.b0() != 1 {
        return Err(Error::Invalid(
            "wall crossing needs a one-dimensional invariant part".into(),
        ));
    }
    if !data.orientation_hplus_preserved() && mode != CoeffMode::PMod(2) {
        return Err(Error::Invalid(
            "orientation-reversing data only has a mod 2 wall-crossing class".into(),
        ));
    }
    let e = data.euler_hplus_quotient(mode)?;
    if e.is_zero() {
        return Ok(CohClass::zero(mode));
    }
    let idx = i64::from(m) - (data.d() - 1);
    if idx < 0 {
        return Ok(CohClass::zero(mode));
    }
    let segre = segre_classes(data.d_weights(), idx as usize, mode)?;
    Ok(e.mul(&segre[idx as usize]))
}

/// Invariant table of the conjugate structure in the opposite chamber. Each
/// request is reindexed by negating the weights and the value picks up the
/// sign (-1)^{d + b+ + 1 + sum(m)}.
pub fn charge_conjugate(table: &InvariantTable, data: &ActionData) -> Result<InvariantTable> {
    let n = data.order() as usize;
    let sign_base = data.d() + i64::from(data.b_plus()) + 1;
    let mut out = InvariantTable::new();
    for (request, value) in table {
        if request.len() != n {
            return Err(Error::Invalid(format!(
                "request has {} exponents, expected {}",
                request.len(),
                n
            )));
        }
        let mut conjugated = vec![0u32; n];
        for (j, &mj) in request.iter().enumerate() {
            conjugated[(n - j) % n] = mj;
        }
        let total: i64 = sign_base + request.iter().map(|&m| i64::from(m)).sum::<i64>();
        let signed = if total % 2 == 0 {
            value.clone()
        } else {
            value.neg()
        };
        out.insert(conjugated, signed);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PscConvention {
    /// A chamber pairing non-positively against c(s) has vanishing invariants
    /// (the direction the proof establishes).
    #[default]
    NonpositiveVanishes,
    /// The opposite reading.
    NonnegativeVanishes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PscVerdict {
    AllVanish,
    ChamberVanishes { plus: bool, minus: bool },
    NoChamber,
}

/// Vanishing consequences of an invariant positive-scalar-curvature metric.
/// `pairing_phi_cs` is the pairing of the chosen chamber against c(s).
pub fn psc_vanishing(
    data: &ActionData,
    pairing_phi_cs: i64,
    convention: PscConvention,
) -> PscVerdict {
    match data.b0() {
        0 => PscVerdict::NoChamber,
        1 => {
            let kills = |pairing: i64| match convention {
                PscConvention::NonpositiveVanishes => pairing <= 0,
                PscConvention::NonnegativeVanishes => pairing >= 0,
            };
            PscVerdict::ChamberVanishes {
                plus: kills(pairing_phi_cs),
                minus: kills(-pairing_phi_cs),
            }
        }
        _ => PscVerdict::AllVanish,
    }
}

/// Mod 2 invariant of a spin structure with an order-two symmetry:
/// w_{b+-3}(H+) s_{m-(d-2)}(D), with the Stiefel-Whitney class determined by
/// the number `b_neg` of sign-representation coordinates of H+.
///
/// For groups of odd order the coefficient ring is trivial in positive
/// degree, so only a degree-zero value can survive. Even orders other than
/// two are not supported.
pub fn mod2_spin_sw(data: &ActionData, m: u32, b_neg: u32) -> Result<CohClass> {
    let mode = CoeffMode::PMod(2);
    if m % 2 != 0 {
        return Err(Error::Invalid("request power must be even".into()));
    }
    let idx = i64::from(m) - (data.d() - 2);
    if data.order() % 2 == 1 {
        if data.b_plus() == 3 && idx == 0 {
            return Ok(CohClass::one(mode));
        }
        return Ok(CohClass::zero(mode));
    }
    if data.order() != 2 {
        return Err(Error::Invalid(
            "mod 2 formula is implemented for the order-two group".into(),
        ));
    }
    if data.b_plus() < 3 || idx < 0 {
        return Ok(CohClass::zero(mode));
    }
    let w = sw_classes_z2(b_neg, data.b_plus() - 3);
    if w.is_zero() {
        return Ok(CohClass::zero(mode));
    }
    let segre = segre_classes(data.d_weights(), idx as usize, mode)?;
    Ok(w.mul(&segre[idx as usize]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransversalityReport {
    pub achievable: bool,
    pub cobordism_class_well_defined: bool,
    pub failures: Vec<(i64, i64)>,
}

/// Whether the invariant-map representative can be made equivariantly
/// transverse: for odd primes, d_{j-i} + d_{j+i} >= b_i for every splitting j
/// and nontrivial character i; for the order-two group, 2 d_j >= b+ - b0,
/// with strict inequality needed for a well-defined cobordism class.
pub fn transversality_zp(data: &ActionData) -> Result<TransversalityReport> {
    let p = data.order();
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    if p == 2 {
        let bound = i64::from(data.b_plus()) - i64::from(data.b0());
        let mut failures = Vec::new();
        let mut strict = true;
        for j in 0..2i64 {
            let lhs = 2 * data.d_weight(j);
            if lhs < bound {
                failures.push((j, 1));
            }
            if lhs <= bound {
                strict = false;
            }
        }
        let achievable = failures.is_empty();
        return Ok(TransversalityReport {
            achievable,
            cobordism_class_well_defined: achievable && strict,
            failures,
        });
    }
    let weights = match data.hplus_quotient() {
        HplusQuotient::Weights(w) => w,
        HplusQuotient::SignCount(_) => {
            return Err(Error::Invalid(
                "odd-order transversality needs explicit quotient weights".into(),
            ))
        }
    };
    let n = i64::from(p);
    let mut failures = Vec::new();
    for j in 0..n {
        for i in 1..n {
            let b_i = weights.weight(i) + weights.weight(-i);
            if data.d_weight(j - i) + data.d_weight(j + i) < b_i {
                failures.push((j, i));
            }
        }
    }
    let achievable = failures.is_empty();
    Ok(TransversalityReport {
        achievable,
        // Every nontrivial real irreducible of an odd-order cyclic group is
        // two-dimensional, so no strengthening is needed.
        cobordism_class_well_defined: achievable,
        failures,
    })
}

/// Localised invariant as a Laurent class, before the check that the result
/// lands in non-negative degrees. Exposed so exhaustive comparisons against
/// closed forms can cover inputs that no actual action realizes.
pub fn localize_zp_laurent(
    data: &ActionData,
    reduced: &ReducedSWData,
    request: &[u32],
) -> Result<CohClass> {
    let p = data.order();
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    if data.b0() == 0 {
        return Err(Error::Invalid(
            "localisation needs a chamber: the invariant part is zero".into(),
        ));
    }
    if request.len() != p as usize {
        return Err(Error::Invalid(format!(
            "expected {} request exponents, got {}",
            p,
            request.len()
        )));
    }
    let mode = CoeffMode::PMod(p);
    let n_scalar = ratio(-(i64::from(data.b0()) + 1), 2);
    let nvec: Vec<i64> = request
        .iter()
        .enumerate()
        .map(|(j, &mj)| i64::from(mj) - data.d_weight(j as i64))
        .collect();
    let mut sum = CohClass::zero(mode).with_laurent();
    for j in 0..p as usize {
        let s_j = reduced.value(j);
        if s_j.is_zero() {
            continue;
        }
        let cj = laurent_cj(&n_scalar, &nvec, j, u64::from(p))?;
        sum = sum.add(&cj.scale(s_j));
    }
    let euler = data.euler_hplus_quotient(mode)?;
    Ok(euler.mul(&sum))
}

/// Localisation of the equivariant invariant at the monomial
/// prod_j (x + j*v)^{m_j} in terms of reduced invariants.
pub fn localize_zp(
    data: &ActionData,
    reduced: &ReducedSWData,
    request: &[u32],
) -> Result<CohClass> {
    localize_zp_laurent(data, reduced, request)?.assert_cohomological()
}

/// Character of the K-theoretic invariant at the group element g^k applied to
/// xi^m, for reduced functionals of evaluation type. Exponents of coinciding
/// character bases are combined before evaluation, so fixed parts shared
/// between the self-dual quotient and the index bundle cancel instead of
/// producing poles; a residual vanishing base is a genuine pole and errors.
pub fn localize_k_char(
    data: &ActionData,
    scalars: &[i64],
    k: i64,
    m: u32,
) -> Result<Cyclotomic> {
    let n = data.order();
    let modulus = i64::from(n);
    let weights = match data.hplus_quotient() {
        HplusQuotient::Weights(w) => w,
        HplusQuotient::SignCount(_) => {
            return Err(Error::Invalid(
                "character evaluation needs explicit complex quotient weights".into(),
            ))
        }
    };
    if scalars.len() != n as usize {
        return Err(Error::Invalid(format!(
            "expected {} reduced scalars, got {}",
            n,
            scalars.len()
        )));
    }
    let mut acc = Cyclotomic::zero(n);
    for (j, &s_j) in scalars.iter().enumerate() {
        if s_j == 0 {
            continue;
        }
        let j = j as i64;
        let mut net: BTreeMap<i64, i64> = BTreeMap::new();
        for (s, &c_s) in weights.weights().iter().enumerate() {
            if c_s != 0 {
                *net.entry((-(s as i64) * k).rem_euclid(modulus)).or_insert(0) += c_s;
            }
        }
        for i in 0..modulus {
            if i == j {
                continue;
            }
            let d_i = data.d_weight(i);
            if d_i != 0 {
                *net.entry(((j - i) * k).rem_euclid(modulus)).or_insert(0) -= d_i;
            }
        }
        if let Some(&e) = net.get(&0) {
            if e != 0 {
                return Err(Error::CharacterPole {
                    weight: j,
                    exponent: e,
                    k,
                });
            }
        }
        let mut value = Cyclotomic::root(n, -j * i64::from(m) * k);
        for (b, e) in net {
            if b == 0 || e == 0 {
                continue;
            }
            let base = Cyclotomic::one(n).sub(&Cyclotomic::root(n, b));
            value = value.mul(&base.powi(e)?);
        }
        acc = acc.add(&value.scale(&Rat::from(BigInt::from(s_j))));
    }
    Ok(acc)
}
