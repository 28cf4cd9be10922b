//! Characteristic classes of virtual weight representations: Euler classes
//! (twisted and untwisted), total Chern and Segre series, Stiefel-Whitney
//! classes of real representations of the order-two group, and the x-twisted
//! Segre polynomial consumed by the gluing formulas.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{gen_binom_int, rat};
use crate::cohring::{CoeffMode, CohClass, EquivPoly, HalfInt};
use crate::error::{Error, Result};

/// A virtual complex representation of Z_n, recorded by weight multiplicity.
///
/// `weights[i]` is the multiplicity of the weight-`i` line; negative entries
/// are allowed and mean formal differences. When `s1_twist` is set the circle
/// factor acts with weight one on every line, which shifts each first Chern
/// class by the degree-two generator x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualRep {
    order: u32,
    weights: Vec<i64>,
    s1_twist: bool,
}

impl VirtualRep {
    pub fn new(order: u32, s1_twist: bool) -> Self {
        assert!(order >= 1, "group order must be positive");
        VirtualRep {
            order,
            weights: vec![0; order as usize],
            s1_twist,
        }
    }

    pub fn from_weights(order: u32, weights: Vec<i64>, s1_twist: bool) -> Result<Self> {
        if order < 1 {
            return Err(Error::Invalid("group order must be positive".into()));
        }
        if weights.len() != order as usize {
            return Err(Error::Invalid(format!(
                "expected {} weight multiplicities, got {}",
                order,
                weights.len()
            )));
        }
        Ok(VirtualRep {
            order,
            weights,
            s1_twist,
        })
    }

    /// Single line of the given weight (taken mod n).
    pub fn line(order: u32, weight: i64, s1_twist: bool) -> Self {
        let mut rep = VirtualRep::new(order, s1_twist);
        rep.add_weight(weight, 1);
        rep
    }

    pub fn add_weight(&mut self, weight: i64, mult: i64) {
        let i = weight.rem_euclid(self.order as i64) as usize;
        self.weights[i] += mult;
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, i: i64) -> i64 {
        self.weights[i.rem_euclid(self.order as i64) as usize]
    }

    pub fn twisted(&self) -> bool {
        self.s1_twist
    }

    pub fn rank(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn is_genuine(&self) -> bool {
        self.weights.iter().all(|&a| a >= 0)
    }

    pub fn neg(&self) -> Self {
        VirtualRep {
            order: self.order,
            weights: self.weights.iter().map(|a| -a).collect(),
            s1_twist: self.s1_twist,
        }
    }

    /// Weight-wise sum; both sides must share the order and twist.
    pub fn direct_sum(&self, rhs: &Self) -> Result<Self> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch(self.order, rhs.order));
        }
        if self.s1_twist != rhs.s1_twist {
            return Err(Error::Invalid(
                "cannot sum a twisted and an untwisted representation".into(),
            ));
        }
        let weights = self
            .weights
            .iter()
            .zip(&rhs.weights)
            .map(|(a, b)| a + b)
            .collect();
        Ok(VirtualRep {
            order: self.order,
            weights,
            s1_twist: self.s1_twist,
        })
    }

    /// Weights negated in Z_n; multiplicities are kept.
    pub fn dual(&self) -> Self {
        let n = self.order as usize;
        let mut weights = vec![0; n];
        for (i, &a) in self.weights.iter().enumerate() {
            weights[(n - i) % n] += a;
        }
        VirtualRep {
            order: self.order,
            weights,
            s1_twist: self.s1_twist,
        }
    }
}

fn reduce(c: BigInt, modulus: u32) -> BigInt {
    let m = BigInt::from(modulus);
    ((c % &m) + &m) % m
}

/// Coefficients of the total Chern series prod_i (1 + i*v)^{a_i} up to index
/// `upto`, as scalars mod the coefficient modulus. Negative multiplicities
/// expand through the generalized binomial series.
fn chern_scalars(w: &VirtualRep, upto: usize, mode: CoeffMode) -> Vec<BigInt> {
    let modulus = mode.modulus();
    let mut series = vec![BigInt::zero(); upto + 1];
    series[0] = BigInt::one();
    for (i, &a) in w.weights().iter().enumerate() {
        if a == 0 || i == 0 {
            // A trivial line has c = 1 regardless of multiplicity.
            continue;
        }
        let mut factor = Vec::with_capacity(upto + 1);
        let mut ipow = BigInt::one();
        for k in 0..=upto {
            factor.push(reduce(gen_binom_int(a, k as i64) * &ipow, modulus));
            ipow *= i;
        }
        let mut next = vec![BigInt::zero(); upto + 1];
        for (d, c) in series.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (e, f) in factor.iter().enumerate().take(upto + 1 - d) {
                next[d + e] += c * f;
            }
        }
        for c in &mut next {
            *c = reduce(std::mem::take(c), modulus);
        }
        series = next;
    }
    series
}

fn series_inverse(series: &[BigInt], modulus: u32) -> Vec<BigInt> {
    let mut inv = vec![BigInt::zero(); series.len()];
    inv[0] = BigInt::one();
    for k in 1..series.len() {
        let mut acc = BigInt::zero();
        for j in 1..=k {
            acc += &series[j] * &inv[k - j];
        }
        inv[k] = reduce(-acc, modulus);
    }
    inv
}

fn scalar_to_class(c: &BigInt, degree: usize, mode: CoeffMode) -> CohClass {
    CohClass::term(mode, 0, HalfInt::from_int(degree as i64), c.clone())
}

/// Equivariant Euler class. With the circle twist this is prod_i (x + i*v)^{a_i};
/// without it, prod_i (i*v)^{a_i}, which vanishes exactly when a trivial weight
/// is present.
pub fn euler_class(w: &VirtualRep, mode: CoeffMode) -> Result<EquivPoly> {
    mode.validate()?;
    if !w.is_genuine() {
        return Err(Error::Invalid(
            "Euler class requires non-negative multiplicities".into(),
        ));
    }
    if w.twisted() {
        let mut acc = EquivPoly::one(mode);
        for (i, &a) in w.weights().iter().enumerate() {
            if a == 0 {
                continue;
            }
            let factor = EquivPoly::x(mode).add(&EquivPoly::from_coh(
                CohClass::v_power(mode, 1).scale_int(i as i64),
            ));
            acc = acc.mul(&factor.pow(a as u32));
        }
        Ok(acc)
    } else {
        if w.weight(0) > 0 {
            return Ok(EquivPoly::zero(mode));
        }
        let modulus = mode.modulus();
        let mut coeff = BigInt::one();
        let mut degree = 0i64;
        for (i, &a) in w.weights().iter().enumerate() {
            if a == 0 {
                continue;
            }
            coeff = reduce(coeff * BigInt::from(i).pow(a as u32), modulus);
            degree += a;
        }
        Ok(EquivPoly::from_coh(CohClass::term(
            mode,
            0,
            HalfInt::from_int(degree),
            coeff,
        )))
    }
}

/// Segre classes s_0..s_upto, the series inverse of the total Chern class.
pub fn segre_classes(w: &VirtualRep, upto: usize, mode: CoeffMode) -> Result<Vec<CohClass>> {
    mode.validate()?;
    let chern = chern_scalars(w, upto, mode);
    let inv = series_inverse(&chern, mode.modulus());
    Ok(inv
        .iter()
        .enumerate()
        .map(|(k, c)| scalar_to_class(c, k, mode))
        .collect())
}

/// Chern classes c_0..c_upto of a virtual representation.
pub fn chern_classes(w: &VirtualRep, upto: usize, mode: CoeffMode) -> Result<Vec<CohClass>> {
    mode.validate()?;
    Ok(chern_scalars(w, upto, mode)
        .iter()
        .enumerate()
        .map(|(k, c)| scalar_to_class(c, k, mode))
        .collect())
}

/// The x-twisted Segre polynomial sum_{l=0..k} x^l s_{k-l}(d).
pub fn twisted_segre(d: &VirtualRep, k: usize, mode: CoeffMode) -> Result<EquivPoly> {
    if !d.twisted() {
        return Err(Error::Invalid(
            "twisted Segre expansion needs the circle twist".into(),
        ));
    }
    let segre = segre_classes(d, k, mode)?;
    let mut acc = EquivPoly::zero(mode);
    for (l, s) in segre.iter().rev().enumerate() {
        if !s.is_zero() {
            acc = acc.add(&EquivPoly::term(l as u32, s.clone()));
        }
    }
    Ok(acc)
}

/// k-th Stiefel-Whitney class of a real representation of the order-two group
/// on which the generator acts by -1 on `b_neg` coordinates: the u^k
/// coefficient of (1+u)^{b_neg}.
pub fn sw_classes_z2(b_neg: u32, k: u32) -> CohClass {
    let mode = CoeffMode::PMod(2);
    let c = gen_binom_int(b_neg as i64, k as i64);
    if (c % BigInt::from(2)).is_zero() {
        return CohClass::zero(mode);
    }
    CohClass::u_gen(mode).pow(k)
}

/// Convenience wrapper: the coefficient scalar of s_k as an exact rational,
/// read off over the integers before any reduction. Used by property tests.
pub fn segre_scalar_unreduced(w: &VirtualRep, k: usize) -> BigInt {
    // Build the Chern series over Z, then invert over Q; entries stay integral
    // because c_0 = 1.
    let mut series = vec![rat(0); k + 1];
    series[0] = rat(1);
    for (i, &a) in w.weights().iter().enumerate() {
        if a == 0 || i == 0 {
            continue;
        }
        let mut factor = Vec::with_capacity(k + 1);
        let mut ipow = BigInt::one();
        for e in 0..=k {
            factor.push(crate::algebra::Rat::from(gen_binom_int(a, e as i64) * &ipow));
            ipow *= i;
        }
        let mut next = vec![rat(0); k + 1];
        for (d, c) in series.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (e, f) in factor.iter().enumerate().take(k + 1 - d) {
                next[d + e] = &next[d + e] + c * f;
            }
        }
        series = next;
    }
    let mut inv = vec![rat(0); k + 1];
    inv[0] = rat(1);
    for d in 1..=k {
        let mut acc = rat(0);
        for j in 1..=d {
            acc = acc + &series[j] * &inv[d - j];
        }
        inv[d] = -acc;
    }
    let value = inv[k].clone();
    assert!(value.denom().is_one() || value.numer().is_zero());
    if value.numer().is_zero() {
        BigInt::zero()
    } else {
        assert!(!value.denom().is_negative());
        value.numer() / value.denom()
    }
}
