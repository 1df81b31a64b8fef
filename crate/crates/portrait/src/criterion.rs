use crate::edge::{EndpointType, InvariantEdgeData};
use crate::error::{Error, Result};
use crate::ram::RamPortrait;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct ConditionVerdict {
    pub pass: bool,
    pub detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> ConditionVerdict {
    ConditionVerdict { pass, detail: detail.into() }
}

/// Outcome of the five-condition check on an invariant edge:
/// (a) the edge maps over itself with degree >= 2;
/// (b) the endpoint p is fixed;
/// (c) all interior vertices of one type share a local degree, established
///     through (c1), (c2) and (c3) or (c4) depending on where q maps;
/// (d) the two sectors at every interior 1-vertex balance (or the edge lies
///     on the real line of a real map);
/// (e) some point reaches p with accumulated degree not dividing k_p.
///
/// Conditions (a)-(d) yield an element of infinite order, (a)-(e) a free
/// semigroup of rank two, hence exponential growth.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub edge: String,
    pub a: ConditionVerdict,
    pub b: ConditionVerdict,
    pub c: ConditionVerdict,
    pub c1: ConditionVerdict,
    pub c2: ConditionVerdict,
    pub c3: Option<ConditionVerdict>,
    pub c4: Option<ConditionVerdict>,
    pub d: ConditionVerdict,
    pub e: ConditionVerdict,
    pub k_p: Option<u64>,
    pub k_q: Option<u64>,
    /// Certificate point for (e): name, steps to reach p, accumulated degree.
    pub e_certificate: Option<(String, u64, u64)>,
    /// `a^(k_q/2) * b^(k_p/2)` with a the loop around q and b around p.
    pub witness_infinite_order: Option<String>,
    /// The witness above times `b^k_p`; together they generate a free
    /// semigroup when all five conditions hold.
    pub witness_second: Option<String>,
    pub infinite_order_element_exists: bool,
    pub exponential_growth: bool,
}

pub fn check_conditions(
    portrait: &RamPortrait,
    edge: &InvariantEdgeData,
) -> Result<CriterionReport> {
    portrait.validate()?;
    edge.validate(portrait)?;

    // (a) invariant edge, not a homeomorphism
    let a = verdict(edge.d_e >= 2, format!("deg(g|E) = {}", edge.d_e));

    // (b) g(p) = p
    let (p_img, p_deg) = portrait.image(&edge.p)?;
    let b = verdict(p_img == edge.p, format!("image of {} is {}", edge.p, p_img));

    // (c1): common degree on each interior type class
    let v_p: Vec<_> = edge.interior.iter().filter(|v| v.kind == EndpointType::P).collect();
    let v_q: Vec<_> = edge.interior.iter().filter(|v| v.kind == EndpointType::Q).collect();
    let common = |class: &[&crate::edge::InteriorVertex]| -> Option<u64> {
        let first = class.first()?.deg;
        class.iter().all(|v| v.deg == first).then_some(first)
    };
    let kq_c1 = common(&v_q);
    let kp_c1 = common(&v_p);
    let c1_pass = (!v_q.is_empty() && kq_c1.is_some()) && (v_p.is_empty() || kp_c1.is_some());
    let c1 = verdict(
        c1_pass,
        format!(
            "interior type-q degrees {:?}, type-p degrees {:?}",
            v_q.iter().map(|v| v.deg).collect::<Vec<_>>(),
            v_p.iter().map(|v| v.deg).collect::<Vec<_>>()
        ),
    );

    // (c2): deg(g, p) = 1
    let c2 = verdict(p_deg == 1, format!("deg(g, {}) = {}", edge.p, p_deg));

    // q is fixed or maps to p; (c3) or (c4) applies accordingly
    let (q_img, q_deg) = portrait.image(&edge.q)?;
    let mut c3 = None;
    let mut c4 = None;
    let mut k_p = kp_c1;
    let k_q = kq_c1;
    let case_ok;
    if q_img == edge.q {
        let pass = q_deg == 1;
        c3 = Some(verdict(pass, format!("deg(g, {}) = {q_deg}", edge.q)));
        case_ok = pass;
        // both classes are nonempty in this case; k_p comes from (c1)
    } else if q_img == edge.p {
        // k_p = k_q * deg(g, q); if interior type-p vertices exist their
        // common degree must agree
        let derived = k_q.map(|kq| kq * q_deg);
        let pass = match (derived, kp_c1) {
            (Some(d), Some(direct)) => d == direct,
            (Some(_), None) => true,
            _ => false,
        };
        c4 = Some(verdict(
            pass,
            format!(
                "k_p = k_q * deg(g, {}) = {:?} * {q_deg}",
                edge.q, k_q
            ),
        ));
        if pass {
            k_p = derived;
        }
        case_ok = pass;
    } else {
        return Err(Error::InvalidEdgeData(format!(
            "endpoint `{}` maps to `{q_img}`, outside the edge",
            edge.q
        )));
    }
    let c = verdict(
        c1.pass && c2.pass && case_ok,
        "common local degrees k_p, k_q on interior vertex types".to_string(),
    );

    // (d) sector balance at interior 1-vertices, or real symmetry
    let d = if edge.real_symmetric {
        verdict(true, "edge lies on the real line of a real map")
    } else {
        let mut ok = true;
        let mut missing = Vec::new();
        for v in &edge.interior {
            match edge.sectors.get(&v.name) {
                Some((s1, s2)) => ok &= s1 == s2,
                None => missing.push(v.name.clone()),
            }
        }
        if !missing.is_empty() {
            verdict(false, format!("no sector data for {missing:?}"))
        } else {
            verdict(ok, "sector tile counts balanced at every interior 1-vertex")
        }
    };

    // k_p and k_q are even whenever (a) and (d) hold; odd values indicate
    // inconsistent input data.
    if a.pass && d.pass && c.pass {
        for (label, k) in [("k_p", k_p), ("k_q", k_q)] {
            if let Some(k) = k {
                if k % 2 != 0 {
                    return Err(Error::InvalidEdgeData(format!(
                        "{label} = {k} is odd, impossible for a balanced invariant edge"
                    )));
                }
            }
        }
    }

    // (e) a point whose orbit reaches p with accumulated degree not
    // dividing k_p; the orbit is walked through one full cycle.
    let mut e_certificate = None;
    let e = match k_p {
        Some(kp) => {
            let mut names: Vec<&str> =
                portrait.vertices.iter().map(|v| v.name.as_str()).collect();
            names.sort_unstable();
            'outer: for name in names {
                let mut acc: u64 = 1;
                let mut cur = name;
                let mut steps = 0u64;
                let mut visited = vec![cur.to_string()];
                loop {
                    let (img, deg) = portrait.image(cur)?;
                    acc = acc.saturating_mul(deg);
                    steps += 1;
                    cur = img;
                    if cur == edge.p && kp % acc != 0 {
                        e_certificate = Some((name.to_string(), steps, acc));
                        break 'outer;
                    }
                    if visited.iter().any(|v| v == cur) {
                        break;
                    }
                    visited.push(cur.to_string());
                }
            }
            match &e_certificate {
                Some((name, steps, deg)) => verdict(
                    true,
                    format!("deg(g^{steps}, {name}) = {deg} does not divide k_p = {kp}"),
                ),
                None => verdict(false, format!("every accumulated degree into {} divides k_p = {kp}", edge.p)),
            }
        }
        None => verdict(false, "k_p undetermined".to_string()),
    };

    // Witness words per the growth theorems; rendered with a = loop around
    // q and b = loop around p.
    let (witness_infinite_order, witness_second) = match (k_p, k_q) {
        (Some(kp), Some(kq)) if kp % 2 == 0 && kq % 2 == 0 => {
            let w1 = format!("{}{}", power_word("a", kq / 2), power_word("b", kp / 2));
            let w2 = format!("{w1}{}", power_word("b", kp));
            (Some(w1), Some(w2))
        }
        _ => (None, None),
    };

    let infinite_order_element_exists = a.pass && b.pass && c.pass && d.pass;
    let exponential_growth = infinite_order_element_exists && e.pass;

    Ok(CriterionReport {
        edge: edge.name.clone(),
        a,
        b,
        c,
        c1,
        c2,
        c3,
        c4,
        d,
        e,
        k_p,
        k_q,
        e_certificate,
        witness_infinite_order,
        witness_second,
        infinite_order_element_exists,
        exponential_growth,
    })
}

fn power_word(letter: &str, exp: u64) -> String {
    match exp {
        0 => String::new(),
        1 => letter.to_string(),
        k => format!("{letter}^{k}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::InvariantEdgeData;

    fn f1_portrait() -> RamPortrait {
        RamPortrait::from_json(
            r#"{
                "vertices": [
                    {"name": "-1", "post": true}, {"name": "1", "post": true},
                    {"name": "inf", "post": true},
                    {"name": "c0"}, {"name": "c1"}, {"name": "a0"}, {"name": "a1"}, {"name": "0"}
                ],
                "edges": [
                    {"from": "c0", "to": "-1", "deg": 3}, {"from": "c1", "to": "-1", "deg": 3},
                    {"from": "-1", "to": "1", "deg": 1}, {"from": "1", "to": "1", "deg": 1},
                    {"from": "a0", "to": "inf", "deg": 2}, {"from": "a1", "to": "inf", "deg": 2},
                    {"from": "0", "to": "inf", "deg": 2}, {"from": "inf", "to": "1", "deg": 4}
                ]
            }"#,
        )
        .unwrap()
    }

    fn f1_edge() -> InvariantEdgeData {
        InvariantEdgeData::from_json(
            r#"{
                "name": "[1,inf]", "p": "1", "q": "inf", "d_e": 2,
                "interior": [{"name": "a0", "type": "q", "deg": 2}],
                "sectors": {"a0": [2, 2]}
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn f1_passes_with_kp8_kq2() {
        let report = check_conditions(&f1_portrait(), &f1_edge()).unwrap();
        assert!(report.exponential_growth);
        assert_eq!(report.k_p, Some(8));
        assert_eq!(report.k_q, Some(2));
        assert_eq!(report.witness_infinite_order.as_deref(), Some("ab^4"));
        assert_eq!(report.witness_second.as_deref(), Some("ab^4b^8"));
        let (name, steps, deg) = report.e_certificate.unwrap();
        assert_eq!((name.as_str(), steps, deg), ("c0", 2, 3));
    }

    #[test]
    fn missing_sector_data_fails_d() {
        let portrait = f1_portrait();
        let mut edge = f1_edge();
        edge.sectors.clear();
        let report = check_conditions(&portrait, &edge).unwrap();
        assert!(!report.d.pass);
        assert!(!report.infinite_order_element_exists);
    }

    #[test]
    fn unbalanced_sectors_fail_d() {
        let portrait = f1_portrait();
        let mut edge = f1_edge();
        edge.sectors.insert("a0".into(), (1, 3));
        let report = check_conditions(&portrait, &edge).unwrap();
        assert!(!report.d.pass);
    }
}
