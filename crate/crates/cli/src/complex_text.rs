//! Complex numbers as text: `re+imi` / `re-imi`, spaces allowed around the
//! sign, as complex matrices are commonly written.

use ecsplit_core::Complex64;

pub fn parse_complex(text: &str) -> Option<Complex64> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return None;
    }
    let z: Complex64 = compact.parse().ok()?;
    (z.re.is_finite() && z.im.is_finite()).then_some(z)
}

/// Ten significant digits, no locale dependence; reads back with
/// [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("{:.9e}{:+.9e}i", z.re + 0.0, z.im + 0.0)
}

/// Four decimals, for terminal summaries.
pub fn format_complex_short(z: Complex64) -> String {
    // avoid printing -0.0000
    let clean = |x: f64| if x.abs() < 5e-5 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    format!(
        "{re:.4}{}{:.4}i",
        if im < 0.0 { '-' } else { '+' },
        im.abs()
    )
}
