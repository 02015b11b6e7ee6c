//! Shipped derivation certificates.

use crate::derivation::{Derivation, ReplayError};

/// Eighteen star steps from `{0, 1}` to the unit `9 - 16 lambda` for the
/// negative root of `x^2 + 3x - 2`.
pub const UNIT_DERIVATION_X2_3X_2: &str = include_str!("../data/unit_derivation_x2_3x_2.json");

/// Eleven steps from `{0, 1}` to `2 lambda - lambda^2 + lambda^3`, a point on
/// the unit circle, for `lambda = phi e^{2 pi i / 5}`.
pub const UNIT_CIRCLE_CHAIN_QUARTIC: &str = include_str!("../data/unit_circle_chain_quartic.json");

pub fn load(text: &str) -> Result<Derivation, ReplayError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| ReplayError::Json(e.to_string()))?;
    Derivation::from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::replay_derivation;

    #[test]
    fn shipped_certificates_replay() {
        let d = load(UNIT_DERIVATION_X2_3X_2).unwrap();
        assert_eq!(replay_derivation(&d).unwrap().coords_i64(), Some(vec![9, -16]));
        assert_eq!(d.star_count(), 18);
        let d = load(UNIT_CIRCLE_CHAIN_QUARTIC).unwrap();
        assert_eq!(replay_derivation(&d).unwrap().coords_i64(), Some(vec![0, 2, -1, 1]));
    }
}
