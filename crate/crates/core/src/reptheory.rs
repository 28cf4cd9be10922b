//! Representation rings of cyclic groups and of their product with the
//! circle, exact character evaluation in cyclotomic fields, K-theoretic Euler
//! characters, and the palindrome test for classes restricted from a dihedral
//! overgroup.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Cyclotomic;
use crate::charclass::VirtualRep;
use crate::error::{Error, Result};

/// Element of Z[t]/(t^n - 1), the representation ring of Z_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepRingElem {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl RepRingElem {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "group order must be positive");
        RepRingElem {
            order,
            coeffs: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn constant(order: u32, c: i64) -> Self {
        let mut elem = RepRingElem::zero(order);
        elem.coeffs[0] = BigInt::from(c);
        elem
    }

    /// The basis monomial t^j, with j taken mod n.
    pub fn t_power(order: u32, j: i64) -> Self {
        let mut elem = RepRingElem::zero(order);
        let idx = j.rem_euclid(order as i64) as usize;
        elem.coeffs[idx] = BigInt::one();
        elem
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != order as usize {
            return Err(Error::Invalid(format!(
                "expected {} coefficients, got {}",
                order,
                coeffs.len()
            )));
        }
        Ok(RepRingElem {
            order,
            coeffs: coeffs.into_iter().map(BigInt::from).collect(),
        })
    }

    /// The regular representation, every weight once.
    pub fn regular(order: u32) -> Self {
        RepRingElem {
            order,
            coeffs: vec![BigInt::one(); order as usize],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: i64) -> &BigInt {
        &self.coeffs[j.rem_euclid(self.order as i64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Virtual rank, the coefficient sum.
    pub fn rank(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "representation ring order mismatch");
        RepRingElem {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RepRingElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        RepRingElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cyclic convolution product.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "representation ring order mismatch");
        let n = self.order as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % n] += a * b;
            }
        }
        RepRingElem {
            order: self.order,
            coeffs,
        }
    }

    /// t replaced by t^{-1}.
    pub fn dual(&self) -> Self {
        let n = self.order as usize;
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[(n - i) % n] += a;
        }
        RepRingElem {
            order: self.order,
            coeffs,
        }
    }
}

impl fmt::Display for RepRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sym = match j {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{j}"),
            };
            let part = if sym.is_empty() {
                c.to_string()
            } else if c.is_one() {
                sym
            } else if (-c).is_one() {
                format!("-{sym}")
            } else {
                format!("{c}*{sym}")
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Character of V at the group element g^k, as an exact cyclotomic number.
pub fn char_at(v: &RepRingElem, k: i64) -> Cyclotomic {
    let n = v.order();
    let mut acc = Cyclotomic::zero(n);
    for (j, a) in v.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let root = Cyclotomic::root(n, j as i64 * k);
        acc = acc.add(&root.scale(&crate::algebra::Rat::from(a.clone())));
    }
    acc
}

/// Element of R(Z_n)[xi, xi^{-1}], the representation ring of the product
/// with the circle; keys are xi-exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KLaurent {
    order: u32,
    coeffs: BTreeMap<i64, RepRingElem>,
}

impl KLaurent {
    pub fn zero(order: u32) -> Self {
        KLaurent {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        let mut k = KLaurent::zero(order);
        k.set(0, RepRingElem::constant(order, 1));
        k
    }

    pub fn set(&mut self, xi_exp: i64, coeff: RepRingElem) {
        assert_eq!(self.order, coeff.order(), "representation ring order mismatch");
        if coeff.is_zero() {
            self.coeffs.remove(&xi_exp);
        } else {
            self.coeffs.insert(xi_exp, coeff);
        }
    }

    pub fn coeff(&self, xi_exp: i64) -> RepRingElem {
        self.coeffs
            .get(&xi_exp)
            .cloned()
            .unwrap_or_else(|| RepRingElem::zero(self.order))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, RepRingElem> {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "representation ring order mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            let merged = out.coeff(*e).add(c);
            out.set(*e, merged);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order, "representation ring order mismatch");
        let mut out = KLaurent::zero(self.order);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let merged = out.coeff(e1 + e2).add(&c1.mul(c2));
                out.set(e1 + e2, merged);
            }
        }
        out
    }

    /// K-theoretic Euler class prod_i (1 - t^{-i} xi^{-1})^{a_i} of a genuine
    /// twisted representation.
    pub fn euler(weights: &VirtualRep) -> Result<Self> {
        if !weights.is_genuine() {
            return Err(Error::Invalid(
                "K-theoretic Euler class requires non-negative multiplicities".into(),
            ));
        }
        let n = weights.order();
        let mut acc = KLaurent::one(n);
        for (i, &a) in weights.weights().iter().enumerate() {
            let mut factor = KLaurent::one(n);
            factor.set(-1, RepRingElem::t_power(n, -(i as i64)).neg());
            for _ in 0..a {
                acc = acc.mul(&factor);
            }
        }
        Ok(acc)
    }

    /// Character at (g^k, xi = omega^{-j}).
    pub fn char_at(&self, k: i64, j: i64) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.order);
        for (e, c) in &self.coeffs {
            let xi_pow = Cyclotomic::root(self.order, -j * k * e);
            acc = acc.add(&char_at(c, k).mul(&xi_pow));
        }
        acc
    }
}

/// Where the circle coordinate is sent when evaluating a K-theoretic Euler
/// character: a concrete root of unity, or left symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiValue {
    /// xi = omega^{-j} at the group element, matching the weight-j splitting.
    OmegaPower(i64),
    Formal,
}

/// One combined factor (1 - omega^b xi^{-1})^e of a symbolic Euler character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KFactor {
    pub omega_exponent: i64,
    pub exponent: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KEulerChar {
    Value(Cyclotomic),
    Formal(Vec<KFactor>),
}

impl KEulerChar {
    pub fn value(&self) -> Option<&Cyclotomic> {
        match self {
            KEulerChar::Value(c) => Some(c),
            KEulerChar::Formal(_) => None,
        }
    }
}

/// Character of the K-theoretic Euler class prod_i (1 - omega^{-i} xi^{-1})^{a_i}
/// evaluated at the group element g^{g_power}.
///
/// Factors sharing a base are combined before anything else, so formally
/// cancelling weights never produce a spurious pole. A base that evaluates to
/// zero with nonzero combined exponent is a genuine localisation pole and is
/// reported as an error.
pub fn k_euler_char(
    weights: &VirtualRep,
    g_power: i64,
    xi_value: XiValue,
) -> Result<KEulerChar> {
    let n = weights.order();
    let modulus = n as i64;
    match xi_value {
        XiValue::Formal => {
            let mut net: BTreeMap<i64, i64> = BTreeMap::new();
            for (i, &a) in weights.weights().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let b = (-(i as i64) * g_power).rem_euclid(modulus);
                *net.entry(b).or_insert(0) += a;
            }
            Ok(KEulerChar::Formal(
                net.into_iter()
                    .filter(|&(_, e)| e != 0)
                    .map(|(b, e)| KFactor {
                        omega_exponent: b,
                        exponent: e,
                    })
                    .collect(),
            ))
        }
        XiValue::OmegaPower(j) => {
            let mut net: BTreeMap<i64, i64> = BTreeMap::new();
            for (i, &a) in weights.weights().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let b = ((j - i as i64) * g_power).rem_euclid(modulus);
                *net.entry(b).or_insert(0) += a;
            }
            if let Some(&e) = net.get(&0) {
                if e != 0 {
                    return Err(Error::CharacterPole {
                        weight: j,
                        exponent: e,
                        k: g_power,
                    });
                }
            }
            let mut acc = Cyclotomic::one(n);
            for (b, e) in net {
                if b == 0 || e == 0 {
                    continue;
                }
                let base = Cyclotomic::one(n).sub(&Cyclotomic::root(n, b));
                acc = acc.mul(&base.powi(e)?);
            }
            Ok(KEulerChar::Value(acc))
        }
    }
}

/// True when the coefficients are symmetric under j -> -j, i.e. the class is
/// a restriction from the dihedral overgroup.
pub fn palindrome_check(v: &RepRingElem) -> bool {
    let n = v.order() as i64;
    (0..n).all(|j| v.coeff(j) == v.coeff(n - j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn character_of_constants_and_regular_rep() {
        for n in 2u32..=8 {
            let trivial = RepRingElem::constant(n, 5);
            for k in 0..n as i64 {
                assert_eq!(char_at(&trivial, k).as_rational(), Some(rat(5)));
            }
            let reg = RepRingElem::regular(n);
            assert_eq!(char_at(&reg, 0).as_rational(), Some(rat(n as i64)));
            for k in 1..n as i64 {
                assert!(char_at(&reg, k).is_zero(), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn character_of_nontrivial_sum() {
        let v = RepRingElem::from_coeffs(3, vec![0, 1, 1]).unwrap();
        assert_eq!(char_at(&v, 1).as_rational(), Some(rat(-1)));
        assert_eq!(char_at(&v, 0).as_rational(), Some(rat(2)));
    }

    #[test]
    fn rendering() {
        let v = RepRingElem::from_coeffs(5, vec![2, -1, 0, 3, 1]).unwrap();
        assert_eq!(v.to_string(), "2 + -t + 3*t^3 + t^4");
        assert_eq!(RepRingElem::zero(4).to_string(), "0");
    }

    #[test]
    fn dual_inverts_exponents() {
        let v = RepRingElem::from_coeffs(6, vec![1, 2, 0, 0, 0, 0]).unwrap();
        let d = v.dual();
        assert_eq!(d.coeff(-1), &BigInt::from(2));
        assert_eq!(d.coeff(0), &BigInt::from(1));
        assert_eq!(v.dual().dual(), v);
    }

    #[test]
    fn euler_char_of_single_weight_line() {
        let w = VirtualRep::line(2, 1, true);
        let got = k_euler_char(&w, 1, XiValue::OmegaPower(0)).unwrap();
        assert_eq!(got.value().unwrap().as_rational(), Some(rat(2)));
    }

    #[test]
    fn euler_char_product_identity() {
        for n in 3u32..=6 {
            let mut w = VirtualRep::new(n, true);
            for i in 1..n {
                w.add_weight(i as i64, 1);
            }
            let got = k_euler_char(&w, 1, XiValue::OmegaPower(0)).unwrap();
            assert_eq!(
                got.value().unwrap().as_rational(),
                Some(rat(n as i64)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn euler_char_of_free_shape_is_group_order_power() {
        for n in [3u32, 4, 5, 6] {
            for d in 1..=2i64 {
                for j in 0..n as i64 {
                    let mut w = VirtualRep::new(n, true);
                    for i in 0..n as i64 {
                        if i != j {
                            w.add_weight(i, d);
                        }
                    }
                    let got = k_euler_char(&w, 1, XiValue::OmegaPower(j)).unwrap();
                    let expect = rat(n as i64).pow(d as i32);
                    assert_eq!(got.value().unwrap().as_rational(), Some(expect));
                }
            }
        }
    }

    #[test]
    fn euler_char_detects_pole() {
        let w = VirtualRep::line(3, 2, true);
        let err = k_euler_char(&w, 1, XiValue::OmegaPower(2)).unwrap_err();
        assert!(matches!(err, Error::CharacterPole { exponent: 1, .. }));

        let zero_power = k_euler_char(&w, 0, XiValue::OmegaPower(0));
        assert!(zero_power.is_err());
    }

    #[test]
    fn cancelling_weights_share_a_base() {
        // At g^2 in Z_4 the weight-1 and weight-3 lines evaluate to the same
        // base, so opposite multiplicities cancel instead of raising a pole.
        let mut w = VirtualRep::new(4, true);
        w.add_weight(1, 1);
        w.add_weight(3, -1);
        let got = k_euler_char(&w, 2, XiValue::OmegaPower(1)).unwrap();
        assert_eq!(got.value().unwrap().as_rational(), Some(rat(1)));
    }

    #[test]
    fn negated_exponents_give_reciprocal() {
        for n in 2u32..=12 {
            let mut w = VirtualRep::new(n, true);
            for i in 0..n as i64 {
                w.add_weight(i, (i % 3) + 1);
            }
            for k in 1..n as i64 {
                for j in 0..n as i64 {
                    let pos = k_euler_char(&w, k, XiValue::OmegaPower(j));
                    let neg = k_euler_char(&w.neg(), k, XiValue::OmegaPower(j));
                    match (pos, neg) {
                        (Ok(a), Ok(b)) => {
                            let prod = a.value().unwrap().mul(b.value().unwrap());
                            assert_eq!(prod.as_rational(), Some(rat(1)), "n={n} k={k} j={j}");
                        }
                        (Err(_), Err(_)) => {}
                        (a, b) => panic!("pole asymmetry at n={n} k={k} j={j}: {a:?} vs {b:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn formal_mode_combines_repeated_bases() {
        let mut w = VirtualRep::new(4, true);
        w.add_weight(1, 2);
        w.add_weight(3, 1);
        w.add_weight(2, 1);
        w.add_weight(0, -1);
        let got = k_euler_char(&w, 1, XiValue::Formal).unwrap();
        match got {
            KEulerChar::Formal(factors) => {
                assert_eq!(
                    factors,
                    vec![
                        KFactor { omega_exponent: 0, exponent: -1 },
                        KFactor { omega_exponent: 1, exponent: 1 },
                        KFactor { omega_exponent: 2, exponent: 1 },
                        KFactor { omega_exponent: 3, exponent: 2 },
                    ]
                );
            }
            KEulerChar::Value(_) => panic!("expected formal factors"),
        }
    }

    #[test]
    fn laurent_euler_character_matches_direct_evaluation() {
        for n in [2u32, 3, 4, 6] {
            let mut w = VirtualRep::new(n, true);
            for i in 0..n as i64 {
                w.add_weight(i, (i + 1) % 2 + 1);
            }
            let lifted = KLaurent::euler(&w).unwrap();
            for k in 0..n as i64 {
                for j in 0..n as i64 {
                    let direct = k_euler_char(&w, k, XiValue::OmegaPower(j));
                    if let Ok(KEulerChar::Value(c)) = direct {
                        assert_eq!(lifted.char_at(k, j), c, "n={n} k={k} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn palindrome_examples() {
        let gen = RepRingElem::t_power(5, 1).add(&RepRingElem::t_power(5, -1));
        assert!(palindrome_check(&gen));
        assert!(!palindrome_check(&RepRingElem::t_power(3, 1)));
        let v = RepRingElem::from_coeffs(5, vec![2, 3, 0, 0, 3]).unwrap();
        assert!(palindrome_check(&v));
    }

    fn rep_strategy() -> impl Strategy<Value = RepRingElem> {
        (2u32..8).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..5, n as usize)
                .prop_map(move |c| RepRingElem::from_coeffs(n, c).unwrap())
        })
    }

    fn rep_pair_strategy() -> impl Strategy<Value = (RepRingElem, RepRingElem)> {
        (2u32..8).prop_flat_map(|n| {
            (
                proptest::collection::vec(-4i64..5, n as usize),
                proptest::collection::vec(-4i64..5, n as usize),
            )
                .prop_map(move |(a, b)| {
                    (
                        RepRingElem::from_coeffs(n, a).unwrap(),
                        RepRingElem::from_coeffs(n, b).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn character_is_ring_homomorphism((v, w) in rep_pair_strategy(), k in 0i64..8) {
            let lhs = char_at(&v.mul(&w), k);
            let rhs = char_at(&v, k).mul(&char_at(&w, k));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn character_at_identity_is_rank(v in rep_strategy()) {
            let r = v.rank();
            prop_assert_eq!(
                char_at(&v, 0).as_rational(),
                Some(crate::algebra::Rat::from(r))
            );
        }

        #[test]
        fn palindromes_are_closed_under_product((v, w) in rep_pair_strategy()) {
            let sym = |x: &RepRingElem| x.add(&x.dual());
            let a = sym(&v);
            let b = sym(&w);
            prop_assert!(palindrome_check(&a));
            prop_assert!(palindrome_check(&b));
            prop_assert!(palindrome_check(&a.mul(&b)));
        }
    }
}
