//! Exact rationals and their fixed-point rendering.

use std::fmt;

/// Exact non-negative rational used for every accuracy, quality and rule measure.
pub type Ratio = num_rational::Ratio<usize>;

/// Builds `numer / denom`. Panics on a zero denominator.
pub fn ratio(numer: usize, denom: usize) -> Ratio {
    Ratio::new(numer, denom)
}

/// Renders a rational with `places` decimals, rounding half away from zero.
pub fn format_fixed(value: &Ratio, places: u32) -> String {
    let scale = 10usize.pow(places);
    let numer = *value.numer() as u128;
    let denom = *value.denom() as u128;
    let scaled = (numer * scale as u128 * 2 + denom) / (denom * 2);
    let int = scaled / scale as u128;
    if places == 0 {
        return int.to_string();
    }
    let frac = scaled % scale as u128;
    format!("{int}.{frac:0width$}", width = places as usize)
}

/// `Display` adapter printing a rational with two decimals, or `undefined`.
#[derive(Debug, Clone, Copy)]
pub struct TwoPlaces<'a>(pub Option<&'a Ratio>);

impl fmt::Display for TwoPlaces<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(r) => f.write_str(&format_fixed(r, 2)),
            None => f.write_str("undefined"),
        }
    }
}
