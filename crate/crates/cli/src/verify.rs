//! Cross-checks behind `--verify`: independent routes to the same values,
//! small enough to run in well under a second. A disagreement means the
//! binary itself is broken, so the runner refuses to execute jobs.

use eqsw_core::algebra::rat;
use eqsw_core::charclass::VirtualRep;
use eqsw_core::cohring::{laurent_cj, series_cj_oracle, CoeffMode, CohClass, HalfInt};
use eqsw_core::gluing::{connect_sum_zp, p_copies, GlueSide};
use eqsw_core::kahler::{sw_k3, C1Type, ChamberValues, KahlerData};
use eqsw_core::obstruct::{burnside_sw, BurnsideElem};
use num_bigint::BigInt;

pub fn run_all() -> Result<(), String> {
    coefficient_extractor_routes()?;
    connected_sum_routes()?;
    flat_k3_closed_form()?;
    burnside_relations()?;
    Ok(())
}

fn coefficient_extractor_routes() -> Result<(), String> {
    for p in [2u64, 3] {
        let range: Vec<i64> = (-2..=2).collect();
        let mut nvec = vec![0i64; p as usize];
        let combos = range.len().pow(p as u32);
        for c in 0..combos {
            let mut rem = c;
            for slot in nvec.iter_mut() {
                *slot = range[rem % range.len()];
                rem /= range.len();
            }
            for n in -3..=3i64 {
                for j in 0..p as usize {
                    let closed = laurent_cj(&rat(n), &nvec, j, p)
                        .map_err(|e| format!("coefficient extractor: {e}"))?;
                    let need = (n - nvec[j]).max(0) as usize;
                    let series = series_cj_oracle(&rat(n), &nvec, j, p, need + 2)
                        .map_err(|e| format!("series oracle: {e}"))?;
                    if closed != series {
                        return Err(format!(
                            "coefficient extractor disagrees with its series oracle at \
                             p={p} nvec={nvec:?} n={n} j={j}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn connected_sum_routes() -> Result<(), String> {
    for p in [2u32, 3] {
        for m in 0..=4u32 {
            let direct = p_copies(2, 3, 1, p, m).map_err(|e| format!("p_copies: {e}"))?;
            let glued = connect_sum_zp(&GlueSide::trivial(p), 2, 3, 1, p, m)
                .map_err(|e| format!("connect_sum_zp: {e}"))?;
            if direct != glued {
                return Err(format!(
                    "p_copies and connect_sum_zp disagree at p={p} m={m}"
                ));
            }
        }
    }
    Ok(())
}

fn flat_k3_closed_form() -> Result<(), String> {
    let order = 3;
    let mode = CoeffMode::IntMod(order);
    for w in 0..i64::from(order) {
        let mut v0 = VirtualRep::new(order, false);
        v0.add_weight(w, 1);
        let mut v2 = VirtualRep::new(order, false);
        v2.add_weight(w, 1);
        let data = KahlerData::new(
            1,
            0,
            1,
            1,
            v0,
            VirtualRep::new(order, false),
            v2,
            VirtualRep::line(order, 0, false),
            true,
        )
        .map_err(|e| format!("flat K3 data: {e}"))?;
        for m in 0..=4u32 {
            let got = sw_k3(C1Type::Zero, true, &data, m, mode)
                .map_err(|e| format!("flat K3 selector: {e}"))?;
            let expected = CohClass::term(mode, 0, HalfInt::from_int(1), BigInt::from(-w)).pow(m);
            if got != ChamberValues::Unique(expected) {
                return Err(format!(
                    "flat K3 value differs from (-wv)^m at w={w} m={m}"
                ));
            }
        }
    }
    Ok(())
}

fn burnside_relations() -> Result<(), String> {
    let p = 3;
    let x = |c: u32| BurnsideElem::basis(p, p, c).expect("basis element");
    let y = BurnsideElem::free_orbit(p);
    let x3 = x(1)
        .mul(&x(1))
        .and_then(|sq| sq.mul(&x(1)))
        .map_err(|e| format!("burnside product: {e}"))?;
    if x3 != x(0) {
        return Err("burnside relation x^p = 1 fails".into());
    }
    let xy = x(1).mul(&y).map_err(|e| format!("burnside product: {e}"))?;
    if xy != y {
        return Err("burnside relation x*y = y fails".into());
    }
    let yy = y.mul(&y).map_err(|e| format!("burnside product: {e}"))?;
    if yy != y.scale(i64::from(p)) {
        return Err("burnside relation y^2 = p*y fails".into());
    }
    let sum = x(1).add(&y).map_err(|e| format!("burnside sum: {e}"))?;
    for m in 0..3 {
        let joint = burnside_sw(&sum, m);
        let split = burnside_sw(&x(1), m).add(&burnside_sw(&y, m));
        if joint != split {
            return Err(format!("burnside transfer is not additive at m={m}"));
        }
    }
    Ok(())
}
