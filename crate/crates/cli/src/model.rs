//! Input model of the job document and conversions into library types.
//!
//! Every job record carries a `task` discriminator plus fields mirroring the
//! library call it dispatches to. Weight lists are multiplicity vectors
//! indexed by character 0..n-1, requests are exponent vectors of the same
//! length, and class values are given term by term (`v_twice` doubles the
//! v-exponent so half-integer powers stay integral in the document).

use std::collections::BTreeMap;

use eqsw_core::charclass::VirtualRep;
use eqsw_core::cohring::{CoeffMode, CohClass, HalfInt};
use eqsw_core::gluing::GlueSide;
use eqsw_core::kahler::{C1Type, KahlerData};
use eqsw_core::obstruct::TauOrientation;
use eqsw_core::swcalc::{ActionData, Chamber, HplusQuotient, InvariantTable, PscConvention};
use eqsw_core::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum Job {
    LocalizeZp {
        action: ActionSpec,
        reduced: Vec<i64>,
        request: Vec<u32>,
    },
    LocalizeK {
        action: ActionSpec,
        scalars: Vec<i64>,
        k: i64,
        m: u32,
    },
    WallCross {
        action: ActionSpec,
        m: u32,
        mode: ModeSpec,
    },
    ChargeConjugate {
        action: ActionSpec,
        table: Vec<TableEntry>,
    },
    Mod2Spin {
        action: ActionSpec,
        m: u32,
        b_minus: u32,
    },
    Psc {
        action: ActionSpec,
        pairing: i64,
        #[serde(default)]
        convention: PscConvention,
    },
    Transversality {
        action: ActionSpec,
    },
    Kahler {
        kahler: KahlerSpec,
        m: u32,
        mode: ModeSpec,
    },
    K3 {
        c1: C1Type,
        k_trivial: bool,
        kahler: KahlerSpec,
        m: u32,
        mode: ModeSpec,
    },
    Glue {
        action: ActionSpec,
        table: Vec<TableEntry>,
        side: SideSpec,
        theta: Vec<u32>,
        mode: ModeSpec,
    },
    ConnectSumZp {
        side: SideSpec,
        d_y: i64,
        b_plus_y: u32,
        sw_y: i64,
        p: u32,
        m: u32,
    },
    PCopies {
        d: i64,
        b_plus: u32,
        sw: i64,
        p: u32,
        m: u32,
    },
    Divisibility {
        b_plus: u32,
        d: i64,
        p: u64,
    },
    ConstraintZp {
        b0: u32,
        d: Vec<i64>,
        p: u64,
        sw_mod_p_nonzero: bool,
    },
    Fang {
        pairs: Vec<(i64, i64)>,
        group_order: u64,
    },
    FreeCongruence {
        order: u64,
        fixed_counts: BTreeMap<String, i64>,
    },
    ExtensionDp {
        p: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tau: Option<TauOrientation>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<SwEntry>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k_values: Option<Vec<RepSpec>>,
    },
    Burnside {
        order: u32,
        a: BurnsideSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<BurnsideSpec>,
        op: BurnsideTask,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m_exp: Option<u32>,
    },
}

impl Job {
    pub fn task_name(&self) -> &'static str {
        match self {
            Job::LocalizeZp { .. } => "localize_zp",
            Job::LocalizeK { .. } => "localize_k",
            Job::WallCross { .. } => "wall_cross",
            Job::ChargeConjugate { .. } => "charge_conjugate",
            Job::Mod2Spin { .. } => "mod2_spin",
            Job::Psc { .. } => "psc",
            Job::Transversality { .. } => "transversality",
            Job::Kahler { .. } => "kahler",
            Job::K3 { .. } => "k3",
            Job::Glue { .. } => "glue",
            Job::ConnectSumZp { .. } => "connect_sum_zp",
            Job::PCopies { .. } => "p_copies",
            Job::Divisibility { .. } => "divisibility",
            Job::ConstraintZp { .. } => "constraint_zp",
            Job::Fang { .. } => "fang",
            Job::FreeCongruence { .. } => "free_congruence",
            Job::ExtensionDp { .. } => "extension_dp",
            Job::Burnside { .. } => "burnside",
        }
    }

    /// Largest group order the job touches, for the runner's size cap.
    pub fn group_order(&self) -> u64 {
        match self {
            Job::LocalizeZp { action, .. }
            | Job::LocalizeK { action, .. }
            | Job::WallCross { action, .. }
            | Job::ChargeConjugate { action, .. }
            | Job::Mod2Spin { action, .. }
            | Job::Psc { action, .. }
            | Job::Transversality { action } => u64::from(action.order),
            Job::Kahler { kahler, .. } | Job::K3 { kahler, .. } => u64::from(kahler.order),
            Job::Glue { action, side, .. } => {
                u64::from(action.order).max(u64::from(side.order))
            }
            Job::ConnectSumZp { p, .. } | Job::PCopies { p, .. } => u64::from(*p),
            Job::Divisibility { p, .. } | Job::ConstraintZp { p, .. } => *p,
            Job::Fang { group_order, .. } => *group_order,
            Job::FreeCongruence { order, .. } => *order,
            Job::ExtensionDp { p, .. } => 2 * p,
            Job::Burnside { order, .. } => u64::from(*order),
        }
    }
}

/// Fixed-point data of a cyclic action: the index weights, the invariant and
/// quotient parts of the self-dual cohomology, and the chamber bookkeeping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionSpec {
    pub order: u32,
    pub b_plus: u32,
    pub b0: u32,
    pub d_weights: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hplus_weights: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hplus_sign_count: Option<u32>,
    pub chamber: Chamber,
    #[serde(default = "default_true")]
    pub orientation_preserved: bool,
}

impl ActionSpec {
    pub fn build(&self) -> Result<ActionData> {
        let d = self.d_weights.iter().sum();
        let d_rep = VirtualRep::from_weights(self.order, self.d_weights.clone(), true)?;
        let quotient = match (&self.hplus_weights, self.hplus_sign_count) {
            (Some(w), None) => {
                HplusQuotient::Weights(VirtualRep::from_weights(self.order, w.clone(), false)?)
            }
            (None, Some(c)) => HplusQuotient::SignCount(c),
            _ => {
                return Err(Error::Invalid(
                    "give exactly one of hplus_weights and hplus_sign_count".into(),
                ))
            }
        };
        ActionData::new(
            self.order,
            self.b_plus,
            self.b0,
            d,
            d_rep,
            quotient,
            self.chamber,
            self.orientation_preserved,
        )
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    IntMod(u32),
    PMod(u32),
}

impl ModeSpec {
    pub fn build(self) -> Result<CoeffMode> {
        let mode = match self {
            ModeSpec::IntMod(n) => CoeffMode::IntMod(n),
            ModeSpec::PMod(p) => CoeffMode::PMod(p),
        };
        mode.validate()?;
        Ok(mode)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermSpec {
    #[serde(default)]
    pub u: u8,
    #[serde(default)]
    pub v_twice: i64,
    pub coeff: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassSpec {
    pub mode: ModeSpec,
    pub terms: Vec<TermSpec>,
}

impl ClassSpec {
    pub fn build(&self) -> Result<CohClass> {
        let mode = self.mode.build()?;
        let mut acc = CohClass::zero(mode);
        for t in &self.terms {
            acc = acc.add(&CohClass::term(
                mode,
                t.u,
                HalfInt::from_twice(t.v_twice),
                BigInt::from(t.coeff),
            ));
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub request: Vec<u32>,
    pub value: ClassSpec,
}

pub fn build_table(entries: &[TableEntry]) -> Result<InvariantTable> {
    let mut table = InvariantTable::new();
    for e in entries {
        let value = e.value.build()?;
        if table.insert(e.request.clone(), value).is_some() {
            return Err(Error::Invalid(format!(
                "duplicate table request {:?}",
                e.request
            )));
        }
    }
    Ok(table)
}

/// Cohomology of a Kahler surface with a holomorphic cyclic action: the
/// dimensions h^i(L), the geometric genus, and the weight decompositions of
/// H^i(L) and of the canonical sections H^0(K).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KahlerSpec {
    pub order: u32,
    pub h0: u32,
    pub h1: u32,
    pub h2: u32,
    pub pg: u32,
    pub v0: Vec<i64>,
    pub v1: Vec<i64>,
    pub v2: Vec<i64>,
    pub h2o: Vec<i64>,
    #[serde(default = "default_true")]
    pub holomorphic: bool,
}

impl KahlerSpec {
    pub fn build(&self) -> Result<KahlerData> {
        let rep = |w: &[i64]| VirtualRep::from_weights(self.order, w.to_vec(), false);
        KahlerData::new(
            self.h0,
            self.h1,
            self.h2,
            self.pg,
            rep(&self.v0)?,
            rep(&self.v1)?,
            rep(&self.v2)?,
            rep(&self.h2o)?,
            self.holomorphic,
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SideSpec {
    pub order: u32,
    pub d_weights: Vec<i64>,
    pub hplus_weights: Vec<i64>,
}

impl SideSpec {
    pub fn build(&self) -> Result<GlueSide> {
        GlueSide::new(
            VirtualRep::from_weights(self.order, self.d_weights.clone(), true)?,
            VirtualRep::from_weights(self.order, self.hplus_weights.clone(), false)?,
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SwEntry {
    pub m: u32,
    pub value: ClassSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepSpec {
    pub order: u32,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BurnsideTermSpec {
    pub subgroup: u32,
    pub character: u32,
    pub coeff: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BurnsideSpec {
    pub basis: Vec<BurnsideTermSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BurnsideTask {
    Add,
    Mul,
    Transfer,
}
