//! Gluing calculus for connected sums: the equivariant degree of a summand
//! with no invariant self-dual part, induction of weight data from a
//! subgroup, the smash-product formula against an invariant table, and the
//! closed-form prime-order connected-sum evaluations.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{is_prime, mod_pow};
use crate::charclass::{euler_class, segre_classes, twisted_segre, VirtualRep};
use crate::cohring::{CoeffMode, CohClass, EquivPoly, HalfInt};
use crate::error::{Error, Result};
use crate::swcalc::{ActionData, InvariantTable};

/// Weight data of a summand that carries no invariant self-dual directions:
/// the index weights (twisted) and the full self-dual representation
/// (untwisted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueSide {
    d_weights: VirtualRep,
    hplus: VirtualRep,
}

impl GlueSide {
    pub fn new(d_weights: VirtualRep, hplus: VirtualRep) -> Result<Self> {
        if d_weights.order() != hplus.order() {
            return Err(Error::OrderMismatch(d_weights.order(), hplus.order()));
        }
        if !d_weights.twisted() {
            return Err(Error::Invalid(
                "index weights must carry the circle twist".into(),
            ));
        }
        if hplus.twisted() {
            return Err(Error::Invalid(
                "self-dual weights must be untwisted".into(),
            ));
        }
        if !hplus.is_genuine() {
            return Err(Error::Invalid(
                "self-dual weights must be non-negative".into(),
            ));
        }
        Ok(GlueSide { d_weights, hplus })
    }

    pub fn trivial(order: u32) -> Self {
        GlueSide {
            d_weights: VirtualRep::new(order, true),
            hplus: VirtualRep::new(order, false),
        }
    }

    pub fn order(&self) -> u32 {
        self.d_weights.order()
    }

    pub fn d(&self) -> i64 {
        self.d_weights.rank()
    }

    pub fn d_weights(&self) -> &VirtualRep {
        &self.d_weights
    }

    pub fn hplus(&self) -> &VirtualRep {
        &self.hplus
    }

    fn has_invariant_hplus(&self) -> bool {
        self.hplus.weight(0) > 0
    }
}

/// Degree of a monopole map with the given index and self-dual weights:
/// zero when the self-dual part meets the trivial character, otherwise
/// e(H+) times the twisted Segre expansion of the index in degree -d.
pub fn equivariant_degree(
    d: &VirtualRep,
    hplus: &VirtualRep,
    mode: CoeffMode,
) -> Result<EquivPoly> {
    mode.validate()?;
    let side = GlueSide::new(d.clone(), hplus.clone())?;
    let e = euler_class(side.hplus(), mode)?.coeff(0);
    if e.is_zero() {
        return Ok(EquivPoly::zero(mode));
    }
    let deg = side.d();
    if deg > 0 {
        return Err(Error::Inconsistent(format!(
            "a nonzero Euler class forces d <= 0, got d = {deg}"
        )));
    }
    let segre = twisted_segre(side.d_weights(), (-deg) as usize, mode)?;
    Ok(EquivPoly::from_coh(e).mul(&segre))
}

/// Induces weight data from the cyclic subgroup of order `m` to the cyclic
/// group of order `n`: each subgroup character lifts to all n/m characters
/// restricting to it.
pub fn induce_rep(m: u32, n: u32, w: &VirtualRep) -> Result<VirtualRep> {
    if w.order() != m {
        return Err(Error::OrderMismatch(w.order(), m));
    }
    if m == 0 || n == 0 || n % m != 0 {
        return Err(Error::Invalid(format!(
            "subgroup order {m} must divide the group order {n}"
        )));
    }
    let mut out = VirtualRep::new(n, w.twisted());
    for i in 0..i64::from(n) {
        let mult = w.weight(i.rem_euclid(i64::from(m)));
        if mult != 0 {
            out.add_weight(i, mult);
        }
    }
    Ok(out)
}

/// Invariant of a smash product evaluated against the invariant table of the
/// side that carries the chamber. Returns zero identically when the other
/// side also has invariant self-dual directions.
pub fn glue_smash(
    data1: &ActionData,
    table1: &InvariantTable,
    side2: &GlueSide,
    theta: &[u32],
    mode: CoeffMode,
) -> Result<CohClass> {
    mode.validate()?;
    if data1.order() != side2.order() {
        return Err(Error::OrderMismatch(data1.order(), side2.order()));
    }
    if data1.b0() == 0 {
        return Err(Error::Invalid(
            "the table side must carry the chamber: its invariant part is zero".into(),
        ));
    }
    if theta.len() != data1.order() as usize {
        return Err(Error::Invalid(format!(
            "expected {} request exponents, got {}",
            data1.order(),
            theta.len()
        )));
    }
    if side2.has_invariant_hplus() {
        return Ok(CohClass::zero(mode));
    }
    let e = euler_class(side2.hplus(), mode)?.coeff(0);
    if e.is_zero() {
        return Ok(CohClass::zero(mode));
    }
    let d2 = side2.d();
    if d2 > 0 {
        return Err(Error::Inconsistent(format!(
            "a nonzero Euler class forces d <= 0 on the degree side, got d = {d2}"
        )));
    }
    let reach = (-d2) as usize;
    let segre = segre_classes(side2.d_weights(), reach, mode)?;
    let mut acc = CohClass::zero(mode);
    for l in 0..=reach {
        if segre[l].is_zero() {
            continue;
        }
        let k = reach - l;
        let mut request = theta.to_vec();
        request[0] += k as u32;
        let value = table1.get(&request).ok_or_else(|| {
            Error::Invalid(format!("no invariant table entry for request {request:?}"))
        })?;
        if value.mode() != mode {
            return Err(Error::ModeMismatch(
                format!("{:?}", value.mode()),
                format!("{mode:?}"),
            ));
        }
        acc = acc.add(&segre[l].mul(value));
    }
    Ok(acc.mul(&e))
}

/// Invariant of the connected sum of a summand with no invariant self-dual
/// directions and p freely permuted copies of a manifold with vanishing
/// expected dimension, evaluated at x^m with mod p coefficients.
pub fn connect_sum_zp(
    x_side: &GlueSide,
    d_y: i64,
    b_plus_y: u32,
    sw_y: i64,
    p: u32,
    m: u32,
) -> Result<CohClass> {
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    if x_side.order() != p {
        return Err(Error::OrderMismatch(x_side.order(), p));
    }
    if 2 * d_y - i64::from(b_plus_y) - 1 != 0 {
        return Err(Error::Invalid(
            "the permuted summand needs vanishing expected dimension".into(),
        ));
    }
    if b_plus_y == 0 {
        return Err(Error::Invalid("the permuted summand needs b+ > 0".into()));
    }
    if x_side.has_invariant_hplus() {
        return Err(Error::Invalid(
            "the fixed summand must have no invariant self-dual directions".into(),
        ));
    }
    let d_x = x_side.d();
    if d_x > 0 {
        return Err(Error::Inconsistent(format!(
            "the fixed summand needs d <= 0, got d = {d_x}"
        )));
    }
    let mode = CoeffMode::PMod(p);
    let e = euler_class(x_side.hplus(), mode)?.coeff(0);
    let reach = (-d_x) as usize;
    let segre = segre_classes(x_side.d_weights(), reach, mode)?;
    let mut h = 1u64;
    if p != 2 {
        for j in 1..=u64::from(p - 1) / 2 {
            h = h * mod_pow(j, u64::from(b_plus_y), u64::from(p)) % u64::from(p);
        }
    }
    let sign = if (d_y + 1) % 2 == 0 { 1 } else { -1 };
    let scalar = sign * h as i64 * sw_y;
    let step = i64::from(p - 1);
    let mut acc = CohClass::zero(mode);
    for l in 0..=reach {
        let total = i64::from(m) + l as i64;
        if total <= 0 || total % step.max(1) != 0 {
            continue;
        }
        let shift = CohClass::term(
            mode,
            0,
            HalfInt::from_twice(2 * total - step),
            BigInt::one(),
        );
        acc = acc.add(&segre[reach - l].mul(&shift));
    }
    Ok(acc.mul(&e).scale_int(scalar))
}

/// Invariant of p cyclically permuted copies of a manifold with vanishing
/// expected dimension: nonzero only for positive m divisible by p - 1.
pub fn p_copies(d: i64, b_plus: u32, sw: i64, p: u32, m: u32) -> Result<CohClass> {
    if !is_prime(u64::from(p)) {
        return Err(Error::NotPrime(u64::from(p)));
    }
    connect_sum_zp(&GlueSide::trivial(p), d, b_plus, sw, p, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swcalc::{Chamber, HplusQuotient};
    use proptest::prelude::*;

    fn weights(order: u32, w: &[i64], twisted: bool) -> VirtualRep {
        VirtualRep::from_weights(order, w.to_vec(), twisted).unwrap()
    }

    #[test]
    fn degree_examples() {
        let mode = CoeffMode::IntMod(3);
        let zero_dim = VirtualRep::new(3, false);
        let got = equivariant_degree(&weights(3, &[0, -1, 0], true), &zero_dim, mode).unwrap();
        assert_eq!(got.render(), "x + v");
        let got = equivariant_degree(&VirtualRep::new(3, true), &zero_dim, mode).unwrap();
        assert_eq!(got.render(), "1");

        let invariant_direction = weights(3, &[1, 1, 0], false);
        let got =
            equivariant_degree(&weights(3, &[2, 0, 0], true), &invariant_direction, mode).unwrap();
        assert!(got.is_zero());

        let err = equivariant_degree(&weights(3, &[1, 0, 0], true), &weights(3, &[0, 1, 0], false), mode);
        assert!(matches!(err, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn degree_truncates_for_negative_ranks() {
        // For a purely negative index the Segre series is the Chern
        // polynomial of the opposite, so it must vanish beyond -d.
        let mode = CoeffMode::IntMod(5);
        let d = weights(5, &[0, -1, 0, -1, 0], true);
        let hplus = weights(5, &[0, 2, 0, 0, 1], false);
        let e = euler_class(&hplus, mode).unwrap().coeff(0);
        let segre = segre_classes(&d, 6, mode).unwrap();
        for (j, s) in segre.iter().enumerate() {
            if j > 2 {
                assert!(e.mul(s).is_zero(), "j = {j}");
            }
        }
    }

    #[test]
    fn induction_examples() {
        let trivial = induce_rep(1, 4, &weights(1, &[3], false)).unwrap();
        assert_eq!(trivial.weights(), &[3, 3, 3, 3]);

        let identity = induce_rep(3, 3, &weights(3, &[1, 2, 0], true)).unwrap();
        assert_eq!(identity, weights(3, &[1, 2, 0], true));

        let lifted = induce_rep(2, 4, &weights(2, &[0, 1], false)).unwrap();
        assert_eq!(lifted.weights(), &[0, 1, 0, 1]);

        assert!(induce_rep(2, 5, &weights(2, &[0, 1], false)).is_err());
        assert!(induce_rep(3, 6, &weights(2, &[0, 1], false)).is_err());
    }

    fn chamber_side(order: u32, d: &[i64]) -> ActionData {
        let rank: i64 = d.iter().sum();
        let mut quotient = VirtualRep::new(order, false);
        quotient.add_weight(1, 1);
        ActionData::new(
            order,
            3,
            1,
            rank,
            weights(order, d, true),
            HplusQuotient::Weights(quotient),
            Chamber::Plus,
            true,
        )
        .unwrap()
    }

    fn sample_table(order: u32, mode: CoeffMode, upto: u32) -> InvariantTable {
        let mut table = InvariantTable::new();
        for m0 in 0..=upto {
            let mut request = vec![0u32; order as usize];
            request[0] = m0;
            table.insert(
                request,
                CohClass::v_power(mode, i64::from(m0)).scale_int(i64::from(m0) + 1),
            );
        }
        table
    }

    #[test]
    fn smash_examples() {
        let mode = CoeffMode::IntMod(3);
        let data = chamber_side(3, &[1, 1, 0]);
        let table = sample_table(3, mode, 4);

        let trivial = GlueSide::trivial(3);
        let theta = vec![1u32, 0, 0];
        let got = glue_smash(&data, &table, &trivial, &theta, mode).unwrap();
        assert_eq!(got, table[&theta]);

        let euler_only = GlueSide::new(
            VirtualRep::new(3, true),
            weights(3, &[0, 1, 0], false),
        )
        .unwrap();
        let got = glue_smash(&data, &table, &euler_only, &theta, mode).unwrap();
        assert_eq!(got, table[&theta].mul(&CohClass::v_power(mode, 1)));

        let negative_line = GlueSide::new(
            weights(3, &[0, -1, 0], true),
            VirtualRep::new(3, false),
        )
        .unwrap();
        let got = glue_smash(&data, &table, &negative_line, &theta, mode).unwrap();
        let expect = table[&vec![2u32, 0, 0]].add(&table[&theta].mul(&CohClass::v_power(mode, 1)));
        assert_eq!(got, expect);

        let both_chambers = GlueSide::new(
            VirtualRep::new(3, true),
            weights(3, &[2, 0, 0], false),
        )
        .unwrap();
        let got = glue_smash(&data, &table, &both_chambers, &theta, mode).unwrap();
        assert!(got.is_zero());

        let missing = glue_smash(&data, &table, &trivial, &[9, 0, 0], mode);
        assert!(missing.is_err());
    }

    #[test]
    fn connected_sum_small_cases() {
        // One copy of K3 per group element, trivial fixed summand.
        let k3 = (2i64, 3u32, 1i64);
        let got = p_copies(k3.0, k3.1, k3.2, 2, 1).unwrap();
        assert_eq!(got.render(), "u");
        let got = p_copies(k3.0, k3.1, k3.2, 3, 2).unwrap();
        assert_eq!(got.render(), "2*v");
        assert!(p_copies(k3.0, k3.1, k3.2, 3, 1).unwrap().is_zero());
        assert!(p_copies(k3.0, k3.1, k3.2, 3, 0).unwrap().is_zero());

        assert!(p_copies(2, 4, 1, 3, 2).is_err());
        assert!(p_copies(2, 3, 1, 4, 2).is_err());
    }

    #[test]
    fn connected_sum_with_nontrivial_fixed_summand() {
        // d_X = -1 spreads the request over two lattice points.
        let x_side = GlueSide::new(
            weights(3, &[-1, 0, 0], true),
            weights(3, &[0, 1, 1], false),
        )
        .unwrap();
        let got = connect_sum_zp(&x_side, 2, 3, 1, 3, 1).unwrap();
        // Only l = 1 contributes: m + l = 2. e = 2v^2, s_0 = 1, shift v^1.
        assert_eq!(got.render(), "v^3");

        let unbalanced = GlueSide::new(
            weights(3, &[1, 0, 0], true),
            weights(3, &[0, 1, 1], false),
        )
        .unwrap();
        assert!(connect_sum_zp(&unbalanced, 2, 3, 1, 3, 1).is_err());

        let invariant = GlueSide::new(
            VirtualRep::new(3, true),
            weights(3, &[1, 1, 1], false),
        )
        .unwrap();
        assert!(connect_sum_zp(&invariant, 2, 3, 1, 3, 1).is_err());
    }

    proptest! {
        #[test]
        fn p_copies_matches_trivial_connected_sum(
            p in prop::sample::select(vec![2u32, 3, 5]),
            d_y in 1i64..5,
            sw in -4i64..5,
            m in 0u32..9,
        ) {
            let b_plus = (2 * d_y - 1) as u32;
            let direct = p_copies(d_y, b_plus, sw, p, m).unwrap();
            let glued = connect_sum_zp(&GlueSide::trivial(p), d_y, b_plus, sw, p, m).unwrap();
            prop_assert_eq!(direct, glued);
        }
    }
}
