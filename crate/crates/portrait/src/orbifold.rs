use crate::error::Result;
use crate::ram::{Alpha, RamPortrait};
use num_rational::Ratio;
use serde::Serialize;
use std::collections::BTreeMap;

/// Orbifold data of a portrait: ramification values at postcritical points
/// and the exact Euler characteristic `2 - sum(1 - 1/alpha(p))`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbifoldReport {
    pub alpha: BTreeMap<String, String>,
    /// Exact rational, rendered `num/den`.
    pub chi: String,
    pub classification: Classification,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Hyperbolic,
    Parabolic,
    /// chi > 0 cannot arise from a Thurston-map portrait; reported rather
    /// than rejected so bad data is visible.
    Spherical,
}

pub fn orbifold_characteristic(portrait: &RamPortrait) -> Result<OrbifoldReport> {
    let alpha = portrait.ramification_function()?;
    Ok(orbifold_from_alpha(alpha.iter().filter(|(name, _)| portrait.is_post(name))))
}

/// Euler characteristic from explicit alpha values (postcritical points
/// only); `1/inf = 0`.
pub fn orbifold_from_alpha<'a, I>(alphas: I) -> OrbifoldReport
where
    I: IntoIterator<Item = (&'a String, &'a Alpha)>,
{
    let mut chi = Ratio::new(2i64, 1);
    let mut table = BTreeMap::new();
    for (name, a) in alphas {
        let term = match a {
            Alpha::Finite(k) => Ratio::new(1, *k as i64),
            Alpha::Infinity => Ratio::new(0, 1),
        };
        chi -= Ratio::new(1, 1) - term;
        table.insert(name.clone(), a.to_string());
    }
    let classification = match chi.cmp(&Ratio::new(0, 1)) {
        std::cmp::Ordering::Less => Classification::Hyperbolic,
        std::cmp::Ordering::Equal => Classification::Parabolic,
        std::cmp::Ordering::Greater => Classification::Spherical,
    };
    OrbifoldReport { alpha: table, chi: ratio_string(chi), classification }
}

fn ratio_string(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_twos_is_parabolic() {
        let names: Vec<String> = (0..4).map(|i| format!("p{i}")).collect();
        let alphas: Vec<(String, Alpha)> =
            names.iter().map(|n| (n.clone(), Alpha::Finite(2))).collect();
        let report = orbifold_from_alpha(alphas.iter().map(|(n, a)| (n, a)));
        assert_eq!(report.chi, "0/1");
        assert_eq!(report.classification, Classification::Parabolic);
    }

    #[test]
    fn alpha_24_3_2_is_hyperbolic() {
        let data = vec![
            ("p".to_string(), Alpha::Finite(24)),
            ("q".to_string(), Alpha::Finite(3)),
            ("r".to_string(), Alpha::Finite(2)),
        ];
        let report = orbifold_from_alpha(data.iter().map(|(n, a)| (n, a)));
        // 2 - (23/24 + 2/3 + 1/2) = -1/8
        assert_eq!(report.chi, "-1/8");
        assert_eq!(report.classification, Classification::Hyperbolic);
    }

    #[test]
    fn infinity_contributes_a_full_puncture() {
        let data = vec![
            ("p".to_string(), Alpha::Infinity),
            ("q".to_string(), Alpha::Finite(2)),
            ("r".to_string(), Alpha::Finite(2)),
        ];
        let report = orbifold_from_alpha(data.iter().map(|(n, a)| (n, a)));
        assert_eq!(report.chi, "0/1");
    }
}
