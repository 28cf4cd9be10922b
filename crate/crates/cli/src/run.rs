//! Job dispatch: build library inputs from the parsed record, call the
//! matching operation, shape the output tree.

use std::collections::BTreeMap;

use eqsw_core::algebra::Cyclotomic;
use eqsw_core::cohring::{CoeffMode, CohClass};
use eqsw_core::gluing::{connect_sum_zp, glue_smash, p_copies};
use eqsw_core::kahler::{sw_k3, sw_kahler, ChamberValues};
use eqsw_core::obstruct::{
    burnside_ops, burnside_sw, constraint_zp, divisibility_check, extension_check_dp,
    extension_check_dp_k, fang_check, free_congruence_check, BurnsideElem, BurnsideOp, Verdict,
};
use eqsw_core::reptheory::RepRingElem;
use eqsw_core::swcalc::{
    charge_conjugate, localize_k_char, localize_zp, mod2_spin_sw, psc_vanishing,
    transversality_zp, wall_cross, ActionData, PscVerdict, ReducedSWData,
};
use eqsw_core::{Error, Result};
use serde_json::{json, Map, Value};

use crate::model::{build_table, BurnsideSpec, BurnsideTask, Job};

pub fn execute(job: &Job, max_group_order: u64) -> std::result::Result<Value, String> {
    if job.group_order() > max_group_order {
        return Err(format!(
            "group order {} exceeds the cap {}; raise --max-group-order to allow it",
            job.group_order(),
            max_group_order
        ));
    }
    dispatch(job).map_err(|e| e.to_string())
}

fn dispatch(job: &Job) -> Result<Value> {
    match job {
        Job::LocalizeZp {
            action,
            reduced,
            request,
        } => {
            let data = action.build()?;
            let red = ReducedSWData::new(&data, reduced)?;
            let class = localize_zp(&data, &red, request)?;
            let mut out = class_json(&class);
            attach_action_meta(&mut out, &data);
            out["forced"] = json!((0..data.order() as usize)
                .map(|j| red.was_forced(j))
                .collect::<Vec<_>>());
            Ok(out)
        }
        Job::LocalizeK {
            action,
            scalars,
            k,
            m,
        } => {
            let data = action.build()?;
            Ok(cyclotomic_json(&localize_k_char(&data, scalars, *k, *m)?))
        }
        Job::WallCross { action, m, mode } => {
            let data = action.build()?;
            let mut out = class_json(&wall_cross(&data, *m, mode.build()?)?);
            attach_action_meta(&mut out, &data);
            Ok(out)
        }
        Job::ChargeConjugate { action, table } => {
            let data = action.build()?;
            let conjugated = charge_conjugate(&build_table(table)?, &data)?;
            let entries: Vec<Value> = conjugated
                .iter()
                .map(|(request, value)| json!({ "request": request, "value": class_json(value) }))
                .collect();
            Ok(json!({ "table": entries }))
        }
        Job::Mod2Spin { action, m, b_minus } => {
            let data = action.build()?;
            Ok(class_json(&mod2_spin_sw(&data, *m, *b_minus)?))
        }
        Job::Psc {
            action,
            pairing,
            convention,
        } => {
            let data = action.build()?;
            let verdict = psc_vanishing(&data, *pairing, *convention);
            Ok(json!({
                "summary": psc_summary(&verdict),
                "verdict": serde_json::to_value(&verdict).expect("verdict serializes"),
            }))
        }
        Job::Transversality { action } => {
            let report = transversality_zp(&action.build()?)?;
            Ok(serde_json::to_value(&report).expect("report serializes"))
        }
        Job::Kahler { kahler, m, mode } => {
            let data = kahler.build()?;
            let mut out = class_json(&sw_kahler(&data, *m, mode.build()?)?);
            out["d"] = json!(data.d());
            out["r"] = json!(data.r());
            Ok(out)
        }
        Job::K3 {
            c1,
            k_trivial,
            kahler,
            m,
            mode,
        } => {
            let data = kahler.build()?;
            let values = sw_k3(*c1, *k_trivial, &data, *m, mode.build()?)?;
            Ok(match values {
                ChamberValues::Unique(c) => json!({
                    "chamber": "unique",
                    "value": class_json(&c),
                }),
                ChamberValues::PlusMinus(plus, minus) => json!({
                    "chamber": "plus_minus",
                    "plus": class_json(&plus),
                    "minus": class_json(&minus),
                }),
            })
        }
        Job::Glue {
            action,
            table,
            side,
            theta,
            mode,
        } => {
            let data = action.build()?;
            let class = glue_smash(&data, &build_table(table)?, &side.build()?, theta, mode.build()?)?;
            Ok(class_json(&class))
        }
        Job::ConnectSumZp {
            side,
            d_y,
            b_plus_y,
            sw_y,
            p,
            m,
        } => Ok(class_json(&connect_sum_zp(
            &side.build()?,
            *d_y,
            *b_plus_y,
            *sw_y,
            *p,
            *m,
        )?)),
        Job::PCopies {
            d,
            b_plus,
            sw,
            p,
            m,
        } => Ok(class_json(&p_copies(*d, *b_plus, *sw, *p, *m)?)),
        Job::Divisibility { b_plus, d, p } => Ok(verdict_json(&divisibility_check(*b_plus, *d, *p)?)),
        Job::ConstraintZp {
            b0,
            d,
            p,
            sw_mod_p_nonzero,
        } => Ok(verdict_json(&constraint_zp(*b0, d, *p, *sw_mod_p_nonzero)?)),
        Job::Fang { pairs, group_order } => Ok(verdict_json(&fang_check(pairs, *group_order)?)),
        Job::FreeCongruence {
            order,
            fixed_counts,
        } => {
            let mut counts = BTreeMap::new();
            for (key, &count) in fixed_counts {
                let subgroup: u64 = key.parse().map_err(|_| {
                    Error::Invalid(format!("fixed-point key {key:?} is not a subgroup order"))
                })?;
                counts.insert(subgroup, count);
            }
            Ok(verdict_json(&free_congruence_check(*order, &counts)?))
        }
        Job::ExtensionDp {
            p,
            delta,
            tau,
            values,
            k_values,
        } => {
            if values.is_none() && k_values.is_none() {
                return Err(Error::Invalid(
                    "extension_dp needs values or k_values".into(),
                ));
            }
            let mut out = Map::new();
            if let Some(entries) = values {
                let (delta, tau) = match (delta, tau) {
                    (Some(d), Some(t)) => (*d, *t),
                    _ => {
                        return Err(Error::Invalid(
                            "cohomological extension data needs delta and tau".into(),
                        ))
                    }
                };
                let mut sw_values = BTreeMap::new();
                for e in entries {
                    if sw_values.insert(e.m, e.value.build()?).is_some() {
                        return Err(Error::Invalid(format!("duplicate exponent {}", e.m)));
                    }
                }
                let verdict = extension_check_dp(*p, &sw_values, delta, tau)?;
                out.insert("cohomology".into(), verdict_json(&verdict));
            }
            if let Some(reps) = k_values {
                let reps: Vec<RepRingElem> = reps
                    .iter()
                    .map(|r| RepRingElem::from_coeffs(r.order, r.coeffs.clone()))
                    .collect::<Result<_>>()?;
                let verdict = extension_check_dp_k(*p, &reps)?;
                out.insert("k_theory".into(), verdict_json(&verdict));
            }
            Ok(Value::Object(out))
        }
        Job::Burnside {
            order,
            a,
            b,
            op,
            m_exp,
        } => {
            let a = build_burnside(*order, a)?;
            match op {
                BurnsideTask::Transfer => {
                    if b.is_some() {
                        return Err(Error::Invalid(
                            "transfer takes a single element; drop b".into(),
                        ));
                    }
                    Ok(class_json(&burnside_sw(&a, m_exp.unwrap_or(0))))
                }
                BurnsideTask::Add | BurnsideTask::Mul => {
                    if m_exp.is_some() {
                        return Err(Error::Invalid(
                            "m_exp only applies to the transfer operation".into(),
                        ));
                    }
                    let b = b
                        .as_ref()
                        .ok_or_else(|| Error::Invalid("binary operation needs b".into()))?;
                    let core_op = match op {
                        BurnsideTask::Add => BurnsideOp::Add,
                        _ => BurnsideOp::Mul,
                    };
                    Ok(burnside_json(&burnside_ops(
                        &a,
                        &build_burnside(*order, b)?,
                        core_op,
                    )?))
                }
            }
        }
    }
}

fn build_burnside(order: u32, spec: &BurnsideSpec) -> Result<BurnsideElem> {
    let mut acc = BurnsideElem::zero(order);
    for t in &spec.basis {
        acc = acc.add(&BurnsideElem::basis(order, t.subgroup, t.character)?.scale(t.coeff))?;
    }
    Ok(acc)
}

/// Canonical tree for a cohomology class: the rendered string, the mode, the
/// sorted term list (coefficients as decimal strings, v-exponents doubled),
/// and the occupied degrees.
fn class_json(class: &CohClass) -> Value {
    let terms: Vec<Value> = class
        .terms()
        .iter()
        .map(|(&(v, u), coeff)| {
            json!({ "u": u, "v_twice": v.twice(), "coeff": coeff.to_string() })
        })
        .collect();
    json!({
        "render": class.render(),
        "mode": mode_json(class.mode()),
        "terms": terms,
        "degrees": class.degrees(),
    })
}

fn mode_json(mode: CoeffMode) -> Value {
    match mode {
        CoeffMode::IntMod(n) => json!({ "int_mod": n }),
        CoeffMode::PMod(p) => json!({ "p_mod": p }),
    }
}

fn cyclotomic_json(value: &Cyclotomic) -> Value {
    json!({
        "order": value.order(),
        "rational": value.as_rational().map(|r| r.to_string()),
        "coeffs": value.coeffs().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}

fn verdict_json(verdict: &Verdict) -> Value {
    json!({
        "summary": verdict.to_string(),
        "verdict": serde_json::to_value(verdict).expect("verdict serializes"),
    })
}

fn attach_action_meta(out: &mut Value, data: &ActionData) {
    out["delta"] = json!(data.delta());
    out["delta_j"] = json!((0..i64::from(data.order()))
        .map(|j| data.delta_j(j).to_string())
        .collect::<Vec<_>>());
}

fn psc_summary(verdict: &PscVerdict) -> String {
    match verdict {
        PscVerdict::AllVanish => "all equivariant invariants vanish".into(),
        PscVerdict::ChamberVanishes { plus, minus } => format!(
            "plus-chamber invariants vanish: {plus}; minus-chamber invariants vanish: {minus}"
        ),
        PscVerdict::NoChamber => "no conclusion: the invariant part of H+ is zero".into(),
    }
}

fn burnside_json(elem: &BurnsideElem) -> Value {
    let basis: Vec<Value> = elem
        .coeffs()
        .iter()
        .map(|(&(subgroup, character), &coeff)| {
            json!({ "subgroup": subgroup, "character": character, "coeff": coeff })
        })
        .collect();
    json!({ "order": elem.order(), "basis": basis })
}

/// One-line rendering of a job output for the text report.
pub fn text_summary(output: &Value) -> String {
    if let Some(render) = output.get("render").and_then(Value::as_str) {
        return render.to_string();
    }
    if let Some(summary) = output.get("summary").and_then(Value::as_str) {
        return summary.to_string();
    }
    if let Some(chamber) = output.get("chamber").and_then(Value::as_str) {
        return match chamber {
            "unique" => format!("{}", text_summary(&output["value"])),
            _ => format!(
                "plus: {}, minus: {}",
                text_summary(&output["plus"]),
                text_summary(&output["minus"])
            ),
        };
    }
    if let Some(rational) = output.get("rational") {
        return match rational.as_str() {
            Some(r) => r.to_string(),
            None => format!(
                "cyclotomic {}",
                output["coeffs"].to_string()
            ),
        };
    }
    if let Some(table) = output.get("table").and_then(Value::as_array) {
        return format!("{} table entries", table.len());
    }
    if output.get("cohomology").is_some() || output.get("k_theory").is_some() {
        let mut parts = Vec::new();
        if let Some(c) = output.get("cohomology") {
            parts.push(format!("cohomology: {}", text_summary(c)));
        }
        if let Some(k) = output.get("k_theory") {
            parts.push(format!("k_theory: {}", text_summary(k)));
        }
        return parts.join("; ");
    }
    output.to_string()
}
