use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Preimage components of an invariant curve: mapping degree of the
/// restriction plus the flags deciding whether the component counts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionInput {
    pub curve: String,
    pub components: Vec<CurveComponent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveComponent {
    pub degree: u64,
    #[serde(default)]
    pub peripheral: bool,
    #[serde(default = "default_true")]
    pub homotopic_to_curve: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub curve: String,
    /// Exact rational `sum 1/d_j` over counted components, rendered `num/den`.
    pub lambda: String,
    pub counted_components: usize,
    pub obstruction: bool,
}

/// Thurston coefficient `lambda = sum 1/d_j` over non-peripheral components
/// homotopic to the curve; the curve is an obstruction iff `lambda >= 1`.
pub fn thurston_lambda(input: &ObstructionInput) -> Result<ObstructionReport> {
    let mut lambda = Ratio::new(0i64, 1);
    let mut counted = 0usize;
    for c in &input.components {
        if c.degree == 0 {
            return Err(Error::InvalidEdgeData("component degree 0".into()));
        }
        if c.peripheral || !c.homotopic_to_curve {
            continue;
        }
        lambda += Ratio::new(1, c.degree as i64);
        counted += 1;
    }
    Ok(ObstructionReport {
        curve: input.curve.clone(),
        lambda: format!("{}/{}", lambda.numer(), lambda.denom()),
        counted_components: counted,
        obstruction: lambda >= Ratio::new(1, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(degree: u64, peripheral: bool) -> CurveComponent {
        CurveComponent { degree, peripheral, homotopic_to_curve: true }
    }

    #[test]
    fn two_four_four_is_an_obstruction() {
        let input = ObstructionInput {
            curve: "gamma".into(),
            components: vec![comp(2, false), comp(4, false), comp(4, false)],
        };
        let report = thurston_lambda(&input).unwrap();
        assert_eq!(report.lambda, "1/1");
        assert!(report.obstruction);
    }

    #[test]
    fn peripheral_components_do_not_count() {
        let input = ObstructionInput {
            curve: "gamma".into(),
            components: vec![comp(3, false), comp(3, false), comp(3, true)],
        };
        let report = thurston_lambda(&input).unwrap();
        assert_eq!(report.lambda, "2/3");
        assert!(!report.obstruction);
        assert_eq!(report.counted_components, 2);
    }

    #[test]
    fn no_counted_components_means_zero() {
        let input = ObstructionInput { curve: "gamma".into(), components: vec![comp(5, true)] };
        let report = thurston_lambda(&input).unwrap();
        assert_eq!(report.lambda, "0/1");
        assert!(!report.obstruction);
    }
}
