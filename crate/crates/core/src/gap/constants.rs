//! The constants of the two gap theorems, each recorded as a derivation
//! step whose formula string re-evaluates to the stored value.

use evalexpr::{eval_float_with_context, ContextWithMutableVariables, DefaultNumericTypes, HashMapContext, Value};
use serde::Serialize;

use super::{GapError, GapParams};

/// Default for the caller-supplied constant c of the Dobrowolski-type lower
/// bound h(β) ≥ c/d^{1+ε} (ε = 1). An input, not a derived value.
pub const DEFAULT_UNIVERSAL_C: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivationStep {
    pub name: String,
    pub formula: String,
    pub value: f64,
}

/// Ordered named formulas; later formulas may use earlier names.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Derivation {
    pub inputs: Vec<(String, f64)>,
    pub steps: Vec<DerivationStep>,
}

fn context(inputs: &[(String, f64)], steps: &[DerivationStep]) -> HashMapContext<DefaultNumericTypes> {
    let mut ctx = HashMapContext::<DefaultNumericTypes>::new();
    let named = inputs.iter().cloned().chain(steps.iter().map(|s| (s.name.clone(), s.value)));
    for (name, v) in named {
        ctx.set_value(name, Value::Float(v)).expect("fresh float variable");
    }
    ctx
}

impl Derivation {
    pub fn new(inputs: &[(&str, f64)]) -> Derivation {
        Derivation { inputs: inputs.iter().map(|(n, v)| (n.to_string(), *v)).collect(), steps: Vec::new() }
    }

    pub fn step(&mut self, name: &str, formula: &str) -> Result<f64, GapError> {
        let ctx = context(&self.inputs, &self.steps);
        let value = eval_float_with_context(formula, &ctx)
            .map_err(|e| GapError::Formula { name: name.into(), message: e.to_string() })?;
        if !value.is_finite() {
            return Err(GapError::Formula { name: name.into(), message: format!("non-finite value {value}") });
        }
        self.steps.push(DerivationStep { name: name.into(), formula: formula.into(), value });
        Ok(value)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.steps.iter().find(|s| s.name == name).map(|s| s.value)
    }

    /// Re-evaluates every formula from the inputs and earlier recorded values;
    /// returns the names whose value does not reproduce bit for bit.
    pub fn replay(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            let ctx = context(&self.inputs, &self.steps[..i]);
            match eval_float_with_context(&s.formula, &ctx) {
                Ok(v) if v.to_bits() == s.value.to_bits() => {}
                _ => bad.push(s.name.clone()),
            }
        }
        bad
    }
}

fn base(params: &GapParams) -> Derivation {
    let mut dv = Derivation::new(&[("d", params.d as f64), ("f", params.f as f64), ("p", params.p as f64)]);
    dv.step("q", "p^2").unwrap();
    dv.step("w", "p^(2 * f)").unwrap();
    dv
}

fn check_vacuous(params: &GapParams) -> Result<(), GapError> {
    let pf = num_bigint::BigInt::from(params.p).pow(params.f);
    let two_d = num_bigint::BigInt::from(2).pow(params.d);
    if pf <= two_d {
        return Err(GapError::Vacuous { pf: pf.to_string(), two_d: two_d.to_string() });
    }
    Ok(())
}

const UNRAMIFIED: &str = "math::ln(p^f / 2^d) / (d * (w + 1))";

/// log(p^f/2^d) / (d(w + 1)), the gap for totally p-adic-unramified fields.
pub fn unramified_gap(params: &GapParams) -> Result<f64, GapError> {
    check_vacuous(params)?;
    base(params).step("unramified_gap", UNRAMIFIED)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum C2Branch {
    /// f·log p / (2dp⁸)
    Ramified,
    /// log(p^f/2^d) / (dq(q − 1)(w + 1))
    Unramified,
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub params: GapParams,
    pub unramified_gap: f64,
    pub c2_ramified: f64,
    pub c2_unramified: f64,
    pub c2_attained_by: C2Branch,
    pub c2: f64,
    pub C1: f64,
    pub C2: f64,
    pub final_C: f64,
    /// Caller input.
    pub universal_c: f64,
    pub derivation: Derivation,
    pub warnings: Vec<String>,
}

/// Constants for the number-field gap: C1, C2 and the final C.
pub fn thm01_constants(params: &GapParams, universal_c: f64) -> Result<GapReport, GapError> {
    params.require_p5()?;
    check_vacuous(params)?;
    if !(universal_c > 0.0 && universal_c.is_finite()) {
        return Err(GapError::BadInput("the universal constant c must be positive".into()));
    }
    let mut dv = base(params);
    dv.inputs.push(("universal_c".into(), universal_c));
    let unramified_gap = dv.step("unramified_gap", UNRAMIFIED)?;
    let c2_ramified = dv.step("c2_ramified", "f * math::ln(p) / (2 * d * p^8)")?;
    let c2_unramified = dv.step("c2_unramified", "math::ln(p^f / 2^d) / (d * q * (q - 1) * (w + 1))")?;
    let c2 = dv.step("c2", "min(c2_ramified, c2_unramified)")?;
    let c1 = dv.step("C1", "10 * p^4")?;
    let c2_cap = dv.step("C2", "c2 / 5")?;
    dv.step("frey_factor", "4^5 * C1^0.25")?;
    dv.step("chain_bound", "C2^4 / (1 + frey_factor)^4")?;
    dv.step("c_over_C1", "universal_c / C1")?;
    let final_c = dv.step("final_C", "min(1.0, min(c_over_C1, chain_bound))")?;
    let c2_attained_by = if c2_ramified <= c2_unramified { C2Branch::Ramified } else { C2Branch::Unramified };
    Ok(GapReport {
        params: *params,
        unramified_gap,
        c2_ramified,
        c2_unramified,
        c2_attained_by,
        c2,
        C1: c1,
        C2: c2_cap,
        final_C: final_c,
        universal_c,
        derivation: dv,
        warnings: params.warnings(),
    })
}

/// C2⁴/(1 + 4⁵C1^{1/4})⁴: from h + 4⁵C1^{1/4}h^{1/4} ≥ C2 and h ≤ 1.
pub fn final_step_bound(c1: f64, c2: f64) -> f64 {
    c2.powi(4) / (1.0 + 1024.0 * c1.powf(0.25)).powi(4)
}

/// Checks the final algebra step on the grid: whenever h ≤ 1 satisfies the
/// hypothesis, h is at least the bound. Returns the violating h values.
pub fn frey_chain_implication(c1: f64, c2: f64, grid: &[f64]) -> Vec<f64> {
    let bound = final_step_bound(c1, c2);
    let k = 1024.0 * c1.powf(0.25);
    grid.iter().copied().filter(|&h| h <= 1.0 && h + k * h.powf(0.25) >= c2 && h < bound).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EllipticGapReport {
    pub params: GapParams,
    pub d_frak_p: u32,
    /// 40p⁴(w + 1)(q − 1)².
    pub amplification: f64,
    /// log p / (2p⁶).
    pub local_gap: f64,
    /// d_𝔭·log p / (2[K:ℚ]p⁶).
    pub global_gap: f64,
    pub epsilon: f64,
    pub derivation: Derivation,
    pub warnings: Vec<String>,
}

/// Constants for the elliptic gap.
pub fn thm02_constants(params: &GapParams, d_frak_p: u32) -> Result<EllipticGapReport, GapError> {
    params.require_p5()?;
    if d_frak_p == 0 || d_frak_p > params.d {
        return Err(GapError::BadInput(format!("local degree {d_frak_p} must lie in [1, d]")));
    }
    let mut dv = base(params);
    dv.inputs.push(("d_frak_p".into(), d_frak_p as f64));
    let amplification = dv.step("amplification", "40 * p^4 * (w + 1) * (q - 1)^2")?;
    let local_gap = dv.step("local_gap", "math::ln(p) / (2 * p^6)")?;
    let global_gap = dv.step("global_gap", "d_frak_p * math::ln(p) / (2 * d * p^6)")?;
    let epsilon = dv.step("epsilon", "global_gap / amplification")?;
    Ok(EllipticGapReport {
        params: *params,
        d_frak_p,
        amplification,
        local_gap,
        global_gap,
        epsilon,
        derivation: dv,
        warnings: params.warnings(),
    })
}
