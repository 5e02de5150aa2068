//! The full L-polynomial pipeline as a JSON report: enumeration, spectral
//! extraction, the bound, and predicted sums against brute force.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::{
    g_sum_brute, l_polynomial, predict_sum, spectral_from_lpoly, verify_weil_bound, GSumSpec,
};
use crate::cyclotomic::CyclotomicSum;
use crate::error::Result;

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn exact_and_approx(x: &CyclotomicSum) -> Value {
    json!({ "exact": x, "display": x.to_string(), "approx": pair(x.to_complex()) })
}

#[derive(Clone, Debug)]
pub struct LpolyReport {
    pub json: Value,
    /// Names of the checks that failed.
    pub failures: Vec<String>,
}

impl LpolyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs enumeration, root extraction and the bound check, then compares
/// predicted sums with brute force for `s = 1..=predict_to`.
pub fn lpoly_report(spec: &GSumSpec, vanish_check: bool, predict_to: usize) -> Result<LpolyReport> {
    let field = &spec.field;
    let q = field.order();
    let p = field.characteristic();
    let l = l_polynomial(spec, vanish_check)?;
    let spectral = spectral_from_lpoly(&l)?;
    let weil = verify_weil_bound(&spectral, q, spec.bound_hypothesis());
    let mut failures = Vec::new();

    let mut checks = serde_json::Map::new();
    if let Some(next) = &l.next_coefficient {
        if !next.is_zero() {
            failures.push("vanishing".to_string());
        }
        checks.insert(
            "vanishing".into(),
            json!({ "coefficient": exact_and_approx(next), "ok": next.is_zero() }),
        );
    }
    if weil.violation {
        failures.push("bound".to_string());
    }
    checks.insert(
        "bound".into(),
        json!({
            "min_ratio": weil.min_ratio,
            "max_ratio": weil.max_ratio,
            "hypotheses_ok": weil.hypotheses_ok,
            "asserted": weil.asserted,
            "ok": !weil.violation,
        }),
    );
    let mut predictions = Vec::new();
    for s in 1..=predict_to {
        let brute = g_sum_brute(spec, s as u32)?;
        let exact = predict_sum(&spectral, p, s)?;
        let complex = spectral.predicted_complex(s as u32);
        let delta = (complex - brute.to_complex()).norm();
        let tol = 1e-6 * (spec.u as f64 + 1.0) * (q as f64).powf(s as f64 / 2.0);
        let ok = exact == brute && delta <= tol;
        if !ok {
            failures.push(format!("predict_s{s}"));
        }
        predictions.push(json!({
            "s": s,
            "brute": exact_and_approx(&brute),
            "predicted": exact_and_approx(&exact),
            "complex": pair(complex),
            "delta": delta,
            "ok": ok,
        }));
    }
    checks.insert("predictions".into(), Value::Array(predictions));

    let json = json!({
        "spec": {
            "field": format!("{}^{}", p, field.degree()),
            "q": q,
            "u": spec.u,
            "a": spec.a.0,
            "b": spec.b.0,
        },
        "L": l.coeffs.iter().map(exact_and_approx).collect::<Vec<_>>(),
        "omegas": spectral.omegas.iter().map(|&w| pair(w)).collect::<Vec<_>>(),
        "checks": checks,
    });
    Ok(LpolyReport { json, failures })
}
