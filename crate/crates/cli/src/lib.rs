//! Library side of the command-line front end: suite definitions, report
//! types, and the output helpers shared with the binary.

pub mod report;
pub mod suites;

use multizeta_core::genfun_engine::eval_formula_ii;
use multizeta_core::partition_engine::eval_formula_i;
use multizeta_core::{EvalRequest, PiMultiple};

/// Runs both engines and insists on exact agreement before returning a
/// value; a disagreement reports both canonical forms.
pub fn eval_gated(req: &EvalRequest) -> Result<PiMultiple, String> {
    let one = eval_formula_i(req).map_err(|e| e.to_string())?;
    let two = eval_formula_ii(req).map_err(|e| e.to_string())?;
    if !one.value_eq(&two) {
        return Err(format!(
            "engine disagreement: partition form {one} vs generating form {two}"
        ));
    }
    Ok(one)
}

/// Decimal rendering of a value with the requested digit count.
pub fn render_digits(re: f64, im: f64, digits: usize) -> String {
    if im == 0.0 {
        format!("{re:.prec$e}", prec = digits.min(17))
    } else {
        format!("{re:.prec$e} + {im:.prec$e} i", prec = digits.min(17))
    }
}
