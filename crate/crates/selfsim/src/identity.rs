use crate::decide::{Equality, Limits, Triviality};
use crate::element::GroupElement;
use crate::error::Result;
use crate::perm::Perm;
use crate::presentation::WreathPresentation;

/// A partial wreath pattern: an optional root-permutation constraint and
/// equalities for a subset of first-level positions (1-based letters).
/// Omitted positions are unconstrained.
#[derive(Clone, Debug)]
pub struct WreathPattern {
    pub root: Option<Perm>,
    pub sections: Vec<(usize, GroupElement)>,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub root_ok: Option<bool>,
    /// Per constrained position: letter and the equality verdict.
    pub positions: Vec<(usize, Equality)>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.root_ok != Some(false)
            && self.positions.iter().all(|(_, e)| *e == Equality::Equal)
    }

    pub fn inconclusive(&self) -> bool {
        self.positions
            .iter()
            .any(|(_, e)| matches!(e, Equality::Inconclusive { .. }))
    }
}

/// Checks the root permutation of `lhs` against the constraint and the
/// section of `lhs` at each constrained position against the pattern entry,
/// as group elements.
pub fn verify_identity(
    pres: &WreathPresentation,
    lhs: &GroupElement,
    pattern: &WreathPattern,
    limits: &Limits,
) -> Result<IdentityReport> {
    let root_ok = pattern.root.as_ref().map(|p| &pres.root_perm(lhs) == p);
    let mut positions = Vec::new();
    for (letter, expected) in &pattern.sections {
        let s = pres.section(lhs, *letter)?;
        positions.push((*letter, pres.equal(&s, expected, limits)));
    }
    Ok(IdentityReport { root_ok, positions })
}

/// One named check of the standard suite.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub pass: bool,
    pub inconclusive: bool,
}

/// Runs the standard identity suite for a presentation with generators
/// a, b, c of the degree-6 catalog map: relations, section patterns, and the
/// branch-witness identities.
pub fn standard_identity_suite(
    pres: &WreathPresentation,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let a = pres.generator("a")?;
    let b = pres.generator("b")?;
    let c = pres.generator("c")?;
    let d = pres.degree();
    let mut out = Vec::new();

    let relation = |name: &str, statement: &str, g: &GroupElement, out: &mut Vec<IdentityCheck>| {
        let verdict = pres.is_trivial(g, limits);
        out.push(IdentityCheck {
            name: name.to_string(),
            statement: statement.to_string(),
            pass: verdict == Triviality::Trivial,
            inconclusive: matches!(verdict, Triviality::Inconclusive { .. }),
        });
    };

    relation("acb", "acb = 1", &pres.parse_element("acb")?, &mut out);
    relation("bc_squared", "(bc)^2 = 1", &b.mul(&c).pow(2), &mut out);
    relation("c_cubed", "c^3 = 1", &c.pow(3), &mut out);
    relation("a_squared", "a^2 = 1", &a.pow(2), &mut out);
    relation("b_24", "b^24 = 1", &b.pow(24), &mut out);
    relation(
        "b9c_commutator",
        "[(b^9 c)^2, b^-8] = 1",
        &GroupElement::commutator(&b.pow(9).mul(&c).pow(2), &b.pow(-8)),
        &mut out,
    );

    let pattern_check =
        |name: &str, statement: &str, lhs: &GroupElement, pattern: WreathPattern, out: &mut Vec<IdentityCheck>| -> Result<()> {
            let report = verify_identity(pres, lhs, &pattern, limits)?;
            out.push(IdentityCheck {
                name: name.to_string(),
                statement: statement.to_string(),
                pass: report.pass(),
                inconclusive: report.inconclusive(),
            });
            Ok(())
        };

    // b^-8 = << b^-8, 1, 1, c, 1, 1 >> with trivial root
    pattern_check(
        "b_minus8_pattern",
        "b^-8 = <<b^-8, 1, 1, c, 1, 1>>",
        &b.pow(-8),
        WreathPattern {
            root: Some(Perm::identity(d)),
            sections: vec![
                (1, b.pow(-8)),
                (2, GroupElement::identity()),
                (3, GroupElement::identity()),
                (4, c.clone()),
                (5, GroupElement::identity()),
                (6, GroupElement::identity()),
            ],
        },
        &mut out,
    )?;

    // [(b^8 c^-1 b^-4 c)^2, b^-8] = << 1, 1, 1, [b^2, c], 1, 1 >>
    let inner = b.pow(8).mul(&c.inverse()).mul(&b.pow(-4)).mul(&c).pow(2);
    let branch = GroupElement::commutator(&inner, &b.pow(-8));
    pattern_check(
        "branch_commutator_pattern",
        "[(b^8 c^-1 b^-4 c)^2, b^-8] = <<1, 1, 1, [b^2, c], 1, 1>>",
        &branch,
        WreathPattern {
            root: Some(Perm::identity(d)),
            sections: vec![
                (1, GroupElement::identity()),
                (2, GroupElement::identity()),
                (3, GroupElement::identity()),
                (4, GroupElement::commutator(&b.pow(2), &c)),
                (5, GroupElement::identity()),
                (6, GroupElement::identity()),
            ],
        },
        &mut out,
    )?;

    // Section fixpoints of the shift elements x = ab^4, y = ab^12.
    let x = a.mul(&b.pow(4));
    let y = a.mul(&b.pow(12));
    pattern_check(
        "x_squared_section",
        "(ab^4)^2|_1 = ab^4",
        &x.pow(2),
        WreathPattern { root: None, sections: vec![(1, x.clone())] },
        &mut out,
    )?;
    pattern_check(
        "y_squared_section",
        "(ab^12)^2|_1 = ab^12",
        &y.pow(2),
        WreathPattern { root: None, sections: vec![(1, y.clone())] },
        &mut out,
    )?;
    pattern_check(
        "xy_section",
        "(ab^4 ab^12)|_1 = ab^12",
        &x.mul(&y),
        WreathPattern { root: None, sections: vec![(1, y.clone())] },
        &mut out,
    )?;
    pattern_check(
        "yx_section",
        "(ab^12 ab^4)|_1 = ab^4",
        &y.mul(&x),
        WreathPattern { root: None, sections: vec![(1, x.clone())] },
        &mut out,
    )?;

    // [c, b^4] stabilizes the first level, its section at 1 is (ab^4)^(b^-1),
    // and it carries an infinite-order certificate.
    let comm = GroupElement::commutator(&c, &b.pow(4));
    pattern_check(
        "comm_c_b4_section",
        "[c, b^4]|_1 = (ab^4)^(b^-1)",
        &comm,
        WreathPattern {
            root: Some(Perm::identity(d)),
            sections: vec![(1, x.conjugate(&b.inverse()))],
        },
        &mut out,
    )?;
    let cert = pres.infinite_order_certificate(&comm, 6, 4, limits);
    let cert_ok = cert.as_ref().map(|c| pres.check_certificate(c, limits)).unwrap_or(false);
    out.push(IdentityCheck {
        name: "comm_c_b4_infinite".to_string(),
        statement: "[c, b^4] has an infinite-order certificate".to_string(),
        pass: cert_ok,
        inconclusive: false,
    });

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};

    #[test]
    fn standard_suite_passes() {
        let p = parse_presentation(F1_SOURCE).unwrap();
        let checks = standard_identity_suite(&p, &Limits::default()).unwrap();
        assert_eq!(checks.len(), 14);
        for check in &checks {
            assert!(check.pass, "identity `{}` failed: {}", check.name, check.statement);
        }
    }

    #[test]
    fn trivial_pattern_on_identity() {
        let p = parse_presentation(F1_SOURCE).unwrap();
        let pat = WreathPattern {
            root: Some(Perm::identity(6)),
            sections: (1..=6).map(|i| (i, GroupElement::identity())).collect(),
        };
        let report =
            verify_identity(&p, &GroupElement::identity(), &pat, &Limits::default()).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn failing_pattern_is_reported() {
        let p = parse_presentation(F1_SOURCE).unwrap();
        let b = p.generator("b").unwrap();
        let pat = WreathPattern { root: Some(Perm::identity(6)), sections: vec![] };
        let report = verify_identity(&p, &b, &pat, &Limits::default()).unwrap();
        assert!(!report.pass());
    }
}
