use std::collections::BTreeMap;
use tiling::{
    generator_action, intertwine, invariant_edge_report, subdivide, tile_action_graph,
    validate_rule, Color, DetGraph, IntertwineOutcome, SubdivisionRule, DEFAULT_MAX_TILES,
};

fn f1_rule() -> SubdivisionRule {
    SubdivisionRule::from_json(include_str!("../../catalog/data/f1.rule.json")).unwrap()
}

#[test]
fn rule_validates_with_expected_portrait() {
    let report = validate_rule(&f1_rule()).unwrap();
    assert_eq!(report.degree, 6);
    let deg: BTreeMap<&str, (&str, u64)> = report
        .vertex_degrees
        .iter()
        .map(|(n, img, d)| (n.as_str(), (img.as_str(), *d)))
        .collect();
    assert_eq!(deg["c0"], ("-1", 3));
    assert_eq!(deg["c1"], ("-1", 3));
    assert_eq!(deg["a0"], ("inf", 2));
    assert_eq!(deg["a1"], ("inf", 2));
    assert_eq!(deg["0"], ("inf", 2));
    assert_eq!(deg["inf"], ("1", 4));
    assert_eq!(deg["1"], ("1", 1));
    assert_eq!(deg["-1"], ("1", 1));
}

#[test]
fn tile_counts_follow_powers_of_six() {
    let rule = f1_rule();
    for (n, expected) in [(0usize, 2usize), (1, 12), (2, 72)] {
        let c = subdivide(&rule, n, DEFAULT_MAX_TILES).unwrap();
        assert_eq!(c.tile_count(), expected);
        c.check(&rule).unwrap();
    }
}

#[test]
fn structure_checks_through_level_four() {
    let rule = f1_rule();
    for n in 0..=4 {
        let c = subdivide(&rule, n, DEFAULT_MAX_TILES).unwrap();
        // Euler formula, color alternation, flower degree = accumulated
        // degree, tile count
        c.check(&rule).unwrap();
    }
}

#[test]
fn level_one_rotations_match_the_known_permutations() {
    let rule = f1_rule();
    let c = subdivide(&rule, 1, DEFAULT_MAX_TILES).unwrap();
    // white tiles in face order are w/w1, w/w2, w/w6, b/w3, b/w5, b/w4;
    // map their rotation images back to the fig-style numbering 1..6
    let whites: Vec<&str> = c
        .faces
        .iter()
        .filter(|f| f.color == Color::White)
        .map(|f| f.name.as_str())
        .collect();
    assert_eq!(whites, vec!["w/w1", "w/w2", "w/w6", "b/w3", "b/w5", "b/w4"]);
    let number = |i: usize| -> usize {
        // face order -> tile label: w1->1, w2->2, w6->6, w3->3, w5->5, w4->4
        [1, 2, 6, 3, 5, 4][i]
    };
    let cycles = |images: &[u32]| -> Vec<Vec<usize>> {
        let mut seen = vec![false; images.len()];
        let mut out = Vec::new();
        for s in 0..images.len() {
            if seen[s] || images[s] as usize == s {
                seen[s] = true;
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(number(x));
                x = images[x] as usize;
            }
            let min = cyc.iter().copied().min().unwrap();
            let pos = cyc.iter().position(|&v| v == min).unwrap();
            cyc.rotate_left(pos);
            out.push(cyc);
        }
        out.sort();
        out
    };

    // generator at inf acts like (1 3)(2 5)(4 6)
    let a = generator_action(&c, "inf").unwrap();
    assert_eq!(cycles(&a), vec![vec![1, 3], vec![2, 5], vec![4, 6]]);
    // generator at 1 acts like (2 3 5 6), fixing tiles 1 and 4
    let b = generator_action(&c, "1").unwrap();
    assert_eq!(cycles(&b), vec![vec![2, 3, 5, 6]]);
    // generator at -1 acts like (1 2 3)(4 5 6)
    let g = generator_action(&c, "-1").unwrap();
    assert_eq!(cycles(&g), vec![vec![1, 2, 3], vec![4, 5, 6]]);
}

#[test]
fn level_zero_rotation_fixes_the_white_tile() {
    let rule = f1_rule();
    let c = subdivide(&rule, 0, DEFAULT_MAX_TILES).unwrap();
    for label in ["-1", "1", "inf"] {
        assert_eq!(generator_action(&c, label).unwrap(), vec![0]);
    }
}

#[test]
fn flower_degrees_on_the_invariant_edge() {
    let rule = f1_rule();
    for n in 1..=4 {
        let report = invariant_edge_report(&rule, "[1,inf]", n, DEFAULT_MAX_TILES).unwrap();
        // exactly 2^n + 1 vertices, types alternating
        assert_eq!(report.vertex_count, (1 << n) + 1);
        assert!(report.types_alternate);
        assert!(report.sectors_balanced);
        // endpoint 1 keeps a flower of degree 1; interior type-1 vertices
        // have degree 8, interior type-inf vertices degree 2
        assert_eq!(report.vertices[0].flower_degree, 1);
        for v in &report.vertices[1..report.vertex_count - 1] {
            match v.kind.as_str() {
                "1" => assert_eq!(v.flower_degree, 8, "vertex {}", v.name),
                "inf" => assert_eq!(v.flower_degree, 2, "vertex {}", v.name),
                other => panic!("unexpected type {other} on [1,inf]"),
            }
        }
    }
}

#[test]
fn level_one_edge_report_lists_1_a0_inf() {
    let rule = f1_rule();
    let report = invariant_edge_report(&rule, "[1,inf]", 1, DEFAULT_MAX_TILES).unwrap();
    let names: Vec<&str> = report.vertices.iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, vec!["1", "[1,inf]:a0", "inf"]);
}

#[test]
fn non_invariant_edge_is_rejected() {
    let rule = f1_rule();
    let err = invariant_edge_report(&rule, "[-1,1]", 1, DEFAULT_MAX_TILES).unwrap_err();
    assert!(matches!(err, tiling::Error::NotInvariant(..)), "{err}");
}

#[test]
fn a_flowers_have_degree_two_everywhere() {
    let rule = f1_rule();
    for n in 1..=3 {
        let c = subdivide(&rule, n, DEFAULT_MAX_TILES).unwrap();
        for v in 0..c.verts.len() as u32 {
            let vert = &c.verts[v as usize];
            if vert.image == "inf" {
                assert_eq!(c.flower(v).unwrap().degree(), 2, "vertex {}", vert.name);
            }
        }
    }
}

#[test]
fn mislabeled_base_pair_gives_a_conflict() {
    let rule = f1_rule();
    let c = subdivide(&rule, 1, DEFAULT_MAX_TILES).unwrap();
    let names: BTreeMap<String, String> = [("inf", "a"), ("1", "b"), ("-1", "c")]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    let g = tile_action_graph(&c, &names).unwrap();
    // the identity-labeled copy of the same graph, with a wrong base pair
    let same = DetGraph { labels: g.labels.clone(), nodes: g.nodes.clone(), out: g.out.clone() };
    match intertwine(&g, &same, "w/w1", "w/w2").unwrap() {
        IntertwineOutcome::Conflict { .. } => {}
        other => panic!("expected a conflict, got {other:?}"),
    }
}
