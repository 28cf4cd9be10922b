//! Closed-form equivariant invariants of complex surfaces without odd
//! cohomology: the obstruction-bundle formula in terms of the cohomology of
//! the line bundle, the trichotomy when the self-dual part is a line, and the
//! five-way case split for K3 surfaces.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::gen_binom_int;
use crate::charclass::{chern_classes, euler_class, segre_classes, VirtualRep};
use crate::cohring::{CoeffMode, CohClass};
use crate::error::{Error, Result};

/// Cohomology of a G-equivariant line bundle L on a complex surface with
/// b_1 = 0: dimensions h^i(L), the geometric genus, and the corresponding
/// G-representations, all plain (untwisted) and genuine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerData {
    h0: u32,
    h1: u32,
    h2: u32,
    pg: u32,
    v0: VirtualRep,
    v1: VirtualRep,
    v2: VirtualRep,
    h2o: VirtualRep,
    holomorphic: bool,
}

impl KahlerData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        h0: u32,
        h1: u32,
        h2: u32,
        pg: u32,
        v0: VirtualRep,
        v1: VirtualRep,
        v2: VirtualRep,
        h2o: VirtualRep,
        holomorphic: bool,
    ) -> Result<Self> {
        let order = v0.order();
        for (name, rep, dim) in [
            ("H0(L)", &v0, h0),
            ("H1(L)", &v1, h1),
            ("H2(L)", &v2, h2),
            ("H2(O)", &h2o, pg),
        ] {
            if rep.order() != order {
                return Err(Error::OrderMismatch(rep.order(), order));
            }
            if rep.twisted() {
                return Err(Error::Invalid(format!("{name} must be untwisted")));
            }
            if !rep.is_genuine() {
                return Err(Error::Invalid(format!("{name} must be a genuine representation")));
            }
            if rep.rank() != i64::from(dim) {
                return Err(Error::Inconsistent(format!(
                    "{name} has rank {}, expected {}",
                    rep.rank(),
                    dim
                )));
            }
        }
        Ok(KahlerData {
            h0,
            h1,
            h2,
            pg,
            v0,
            v1,
            v2,
            h2o,
            holomorphic,
        })
    }

    pub fn h0(&self) -> u32 {
        self.h0
    }

    pub fn h2(&self) -> u32 {
        self.h2
    }

    pub fn pg(&self) -> u32 {
        self.pg
    }

    pub fn order(&self) -> u32 {
        self.v0.order()
    }

    pub fn v0(&self) -> &VirtualRep {
        &self.v0
    }

    pub fn h2o(&self) -> &VirtualRep {
        &self.h2o
    }

    /// Index d = h0 - h1 + h2 of the line bundle.
    pub fn d(&self) -> i64 {
        i64::from(self.h0) - i64::from(self.h1) + i64::from(self.h2)
    }

    /// Rank r = h1 - h2 + pg of the obstruction bundle.
    pub fn r(&self) -> i64 {
        i64::from(self.h1) - i64::from(self.h2) + i64::from(self.pg)
    }

    /// Alternating sum H0(L) - H1(L) + H2(L) as a virtual representation.
    pub fn index_rep(&self) -> VirtualRep {
        self.v0
            .direct_sum(&self.v1.neg())
            .and_then(|w| w.direct_sum(&self.v2))
            .expect("orders agree by construction")
    }
}

/// Invariant of the canonical chamber of a complex surface, evaluated at x^m.
/// Zero when the bundle is not holomorphic or has no sections; otherwise the
/// pushed-forward Euler class of the obstruction bundle.
pub fn sw_kahler(data: &KahlerData, m: u32, mode: CoeffMode) -> Result<CohClass> {
    mode.validate()?;
    if !data.holomorphic || data.h0 == 0 {
        return Ok(CohClass::zero(mode));
    }
    let r = data.r();
    if r < 0 {
        return Ok(CohClass::zero(mode));
    }
    let r = r as usize;
    let base = i64::from(m) - (i64::from(data.h0) - 1);
    let virt = data.v1.direct_sum(&data.v2.neg())?;
    let chern_virt = chern_classes(&virt, r, mode)?;
    let chern_h2o = chern_classes(&data.h2o, r, mode)?;
    let max_segre = r as i64 + base;
    let segre = if max_segre >= 0 {
        segre_classes(&data.v0, max_segre as usize, mode)?
    } else {
        Vec::new()
    };
    let top = i64::from(data.h1) - i64::from(data.h2);
    let mut acc = CohClass::zero(mode);
    for i in 0..=r {
        let j = r - i;
        for l in 0..=i {
            let idx = (i - l) as i64 + base;
            if idx < 0 {
                continue;
            }
            let coeff = gen_binom_int(top - l as i64, (i - l) as i64);
            if coeff.is_zero() {
                continue;
            }
            let term = segre[idx as usize]
                .mul(&chern_virt[l])
                .mul(&chern_h2o[j])
                .scale(&coeff);
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// Both chamber invariants when the self-dual part of H^2 is a line (which
/// forces pg = 0). At most one of h0, h2 can be positive; the corresponding
/// chamber carries (plus or minus) a Segre class of the index bundle and the
/// other chamber vanishes.
pub fn sw_kahler_bplus1(
    data: &KahlerData,
    m: u32,
    mode: CoeffMode,
) -> Result<(CohClass, CohClass)> {
    mode.validate()?;
    if data.pg != 0 {
        return Err(Error::Invalid(
            "a one-dimensional self-dual part forces pg = 0".into(),
        ));
    }
    let zero = CohClass::zero(mode);
    if !data.holomorphic {
        return Ok((zero.clone(), zero));
    }
    if data.h0 > 0 && data.h2 > 0 {
        return Err(Error::Inconsistent(
            "h0 and h2 cannot both be positive when pg = 0".into(),
        ));
    }
    if data.h0 == 0 && data.h2 == 0 {
        return Ok((zero.clone(), zero));
    }
    let idx = i64::from(m) - (data.d() - 1);
    if idx < 0 {
        return Ok((zero.clone(), zero));
    }
    let segre = segre_classes(&data.index_rep(), idx as usize, mode)?;
    let value = segre[idx as usize].clone();
    if data.h0 > 0 {
        Ok((value, zero))
    } else {
        Ok((zero, value.neg()))
    }
}

/// Hodge type of the first Chern class of the line bundle, part of the case
/// selector for K3 surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum C1Type {
    NotType11,
    Type11Nonzero,
    Zero,
}

/// Invariants per chamber: a single value when the group fixes the symplectic
/// cone, otherwise one value for each of the two chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChamberValues {
    Unique(CohClass),
    PlusMinus(CohClass, CohClass),
}

impl ChamberValues {
    pub fn plus(&self) -> &CohClass {
        match self {
            ChamberValues::Unique(c) | ChamberValues::PlusMinus(c, _) => c,
        }
    }

    pub fn minus(&self) -> &CohClass {
        match self {
            ChamberValues::Unique(c) | ChamberValues::PlusMinus(_, c) => c,
        }
    }
}

/// Chamber invariants of a K3 surface with a holomorphic group action,
/// split by the Hodge type of c_1(L) and by whether the group acts trivially
/// on the canonical bundle.
pub fn sw_k3(
    c1: C1Type,
    k_trivial: bool,
    data: &KahlerData,
    m: u32,
    mode: CoeffMode,
) -> Result<ChamberValues> {
    mode.validate()?;
    if data.pg != 1 {
        return Err(Error::Inconsistent("K3 data needs pg = 1".into()));
    }
    let k_weight_trivial = data
        .h2o
        .weights()
        .iter()
        .enumerate()
        .all(|(w, &a)| a == 0 || w == 0);
    if k_trivial != k_weight_trivial {
        return Err(Error::Inconsistent(
            "canonical-bundle triviality flag disagrees with the H2(O) weight".into(),
        ));
    }
    let zero = CohClass::zero(mode);
    match (c1, k_trivial) {
        (C1Type::NotType11, true) => Ok(ChamberValues::Unique(zero)),
        (C1Type::NotType11, false) => Ok(ChamberValues::PlusMinus(zero.clone(), zero)),
        (C1Type::Type11Nonzero, true) => Ok(ChamberValues::Unique(zero)),
        (C1Type::Zero, k_trivial) => {
            if (data.h0, data.h1, data.h2) != (1, 0, 1) {
                return Err(Error::Inconsistent(
                    "a flat line bundle on K3 has h0 = h2 = 1 and h1 = 0".into(),
                ));
            }
            let s1_l = segre_classes(&data.v0, 1, mode)?[1].clone();
            if k_trivial {
                Ok(ChamberValues::Unique(s1_l.pow(m)))
            } else {
                let s1_k = segre_classes(&data.h2o.dual(), 1, mode)?[1].clone();
                Ok(ChamberValues::PlusMinus(
                    s1_l.pow(m),
                    s1_l.sub(&s1_k).pow(m),
                ))
            }
        }
        (C1Type::Type11Nonzero, false) => {
            if data.h0 > 0 && data.h2 > 0 {
                return Err(Error::Inconsistent(
                    "h0 and h2 cannot both be positive when c1 is nonzero".into(),
                ));
            }
            let idx = i64::from(m) - (data.d() - 1);
            if idx < 0 {
                return Ok(ChamberValues::PlusMinus(zero.clone(), zero));
            }
            let e = euler_class(&data.h2o.dual(), mode)?.coeff(0);
            let segre = segre_classes(&data.index_rep(), idx as usize, mode)?;
            let value = e.mul(&segre[idx as usize]);
            if data.h0 > 0 {
                Ok(ChamberValues::PlusMinus(value, zero))
            } else {
                Ok(ChamberValues::PlusMinus(zero, value.neg()))
            }
        }
    }
}
