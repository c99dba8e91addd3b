//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test -p cmw --test acceptance -- --nocapture`.

use cmw::conditions::{classify_cm, is_pc_or_vertex_componentwise, Verdict};
use cmw::covers::{
    decomposition_is_exact_and_irredundant, is_unmixed, minimal_weighted_covers,
    DEFAULT_COVER_BUDGET,
};
use cmw::generate::{class_pc_graph, ClassPcOptions, WeightMode};
use cmw::graph::WeightedGraph;
use cmw::ideal::{edge_ideal, weighted_edge_ideal, Monomial, MonomialIdeal};
use cmw::oracle::{is_cm_oracle, CmOracleReport, OracleError, OracleOptions};
use cmw::structure::{
    classify_pc, girth, is_vertex_decomposable, is_well_covered, PcClassification,
};
use cmw::testkit::{
    brute_force_minimal_covers, c5, connected_girth5_catalog, figure3_shape, p3_fixture,
    FIGURE3_CM_WEIGHTS,
};
use cmw::Weight;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: usize, name: &str, ok: bool, detail: String) {
    println!(
        "criterion {id} ({name}): {} [{detail}]",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Deterministic mixed instance stream biased toward the class PC.
fn seeded_instance(seed: u64, index: u64, max_n: usize, max_w: Weight) -> WeightedGraph {
    cmw::generate::mixed_instance(seed, index, max_n, max_w)
}

#[test]
fn criterion_1_cycle_theorem_exhaustive() {
    let mut checked = 0usize;
    let mut disagreements = Vec::new();
    for code in 0..1024u32 {
        let w: [Weight; 5] = std::array::from_fn(|i| 1 + ((code >> (2 * i)) & 3));
        let g = c5(w);
        let classifier = classify_cm(&g).verdict == Verdict::CohenMacaulay;
        let oracle = is_cm_oracle(&g, &OracleOptions::default())
            .expect("5-cycle within budget")
            .cohen_macaulay;
        if classifier != oracle {
            disagreements.push(w);
        }
        checked += 1;
    }
    report(
        1,
        "balanced-vertex classification vs homology oracle on all 4^5 weighted 5-cycles",
        checked == 1024 && disagreements.is_empty(),
        format!("{checked} instances, disagreements: {disagreements:?}"),
    );
}

#[test]
fn criterion_2_structure_triangle_exhaustive() {
    let catalog = connected_girth5_catalog(8);
    let mut disagreements = Vec::new();
    for g in &catalog {
        let pc_or_vertex =
            g.vertex_count() == 1 || matches!(classify_pc(g), PcClassification::Pc(_));
        let wc = is_well_covered(g, 20).unwrap();
        let vd = is_vertex_decomposable(g, 14).unwrap();
        let wcvd = wc.well_covered && vd;
        let cm = is_cm_oracle(g, &OracleOptions::default())
            .unwrap()
            .cohen_macaulay;
        if !(pc_or_vertex == wcvd && wcvd == cm) {
            disagreements.push((g.to_document(), pc_or_vertex, wcvd, cm));
        }
    }
    report(
        2,
        "class PC = well-covered+vertex-decomposable = Cohen-Macaulay, exhaustive to 8 vertices",
        catalog.len() >= 80 && disagreements.is_empty(),
        format!(
            "{} graphs up to isomorphism, disagreements: {disagreements:?}",
            catalog.len()
        ),
    );
}

#[test]
fn criterion_3_classification_matches_unmixedness() {
    let seed = 0xc3;
    let count = 500u64;
    let mut disagreements = Vec::new();
    for i in 0..count {
        let g = seeded_instance(seed, i, 12, 4);
        assert!(girth(&g).is_at_least(5));
        let classifier = classify_cm(&g).verdict == Verdict::CohenMacaulay;
        let pc = is_pc_or_vertex_componentwise(&g);
        let unmixed = is_unmixed(&g, DEFAULT_COVER_BUDGET).unwrap().unmixed;
        if classifier != (pc && unmixed) {
            disagreements.push(g.to_document());
        }
    }
    report(
        3,
        "weight conditions = class PC + unmixedness on 500 seeded instances (<= 12 vertices)",
        disagreements.is_empty(),
        format!("{count} instances, disagreements: {disagreements:?}"),
    );
}

#[test]
fn criterion_4_classification_matches_oracle() {
    let seed = 0xc4;
    let count = 200u64;
    let mut skipped = 0usize;
    let mut disagreements = Vec::new();
    for i in 0..count {
        let g = seeded_instance(seed, i, 8, 3);
        let classifier = classify_cm(&g).verdict == Verdict::CohenMacaulay;
        match is_cm_oracle(&g, &OracleOptions::default()) {
            Ok(CmOracleReport { cohen_macaulay, .. }) => {
                if classifier != cohen_macaulay {
                    disagreements.push(g.to_document());
                }
            }
            Err(OracleError::Complex(_)) => skipped += 1,
            Err(e) => panic!("oracle error: {e}"),
        }
    }
    let ok = disagreements.is_empty() && skipped * 20 <= count as usize;
    report(
        4,
        "weight conditions = homology oracle on 200 seeded instances (<= 8 vertices, weights <= 3)",
        ok,
        format!(
            "{count} instances, {skipped} skipped over budget, disagreements: {disagreements:?}"
        ),
    );
}

#[test]
fn criterion_5_decomposition_identity() {
    let seed = 0xc5;
    let count = 500u64;
    let mut failures = Vec::new();
    for i in 0..count {
        let g = seeded_instance(seed, i, 10, 4);
        if !decomposition_is_exact_and_irredundant(&g, DEFAULT_COVER_BUDGET).unwrap() {
            failures.push(g.to_document());
        }
    }
    report(
        5,
        "irreducible decomposition intersects exactly and irredundantly on 500 instances",
        failures.is_empty(),
        format!("{count} instances, failures: {failures:?}"),
    );
}

#[test]
fn criterion_6_radical_identity() {
    let seed = 0xc6;
    let count = 500u64;
    let mut failures = Vec::new();
    for i in 0..count {
        let g = seeded_instance(seed, i, 12, 6);
        if !weighted_edge_ideal(&g).radical().equals(&edge_ideal(&g)) {
            failures.push(g.to_document());
        }
    }
    report(
        6,
        "radical of the weighted edge ideal is the edge ideal on 500 instances",
        failures.is_empty(),
        format!("{count} instances, failures: {failures:?}"),
    );
}

/// Colon and sum identities at a balanced vertex `x` with degree-2 cycle
/// neighbors `y, v` and `m = ω(xy) = ω(xv)`:
///
///   I : x^m = (y^m, v^m) + (y_1^{m_1}, ..., y_k^{m_k}) + I((G \ {x,y,v})_ω)
///   I + (x^m) = (x^m) + (x^{m_1} y_1^{m_1}, ..., x^{m_k} y_k^{m_k}) + I((G \ x)_ω)
///
/// with `y_i` the off-cycle neighbors of `x` (none in the degree-2 case).
fn proof_identities_hold(g: &WeightedGraph) -> Option<(bool, usize)> {
    let cert = classify_cm(g);
    if cert.verdict != Verdict::CohenMacaulay {
        return None;
    }
    let ideal = weighted_edge_ideal(g);
    let mut deg3_cases = 0usize;
    for witness in cert.balanced.values() {
        let x = &witness.cycle[0];
        let y = &witness.cycle[1];
        let v = &witness.cycle[4];
        let m = witness.m;
        let xi = g.vertex_index(x).unwrap();
        let spokes: Vec<(String, Weight)> = g
            .neighbors(xi)
            .iter()
            .filter(|&&u| g.label(u) != y && g.label(u) != v)
            .map(|&u| (g.label(u).to_owned(), g.weight(xi, u).unwrap()))
            .collect();
        if !spokes.is_empty() {
            deg3_cases += 1;
        }

        let xm = Monomial::var_pow(x.clone(), m);
        let lhs_colon = ideal.colon(&xm);
        let keep: Vec<&String> = g
            .labels()
            .iter()
            .filter(|l| *l != x && *l != y && *l != v)
            .collect();
        let rest = g.induced_subgraph(&keep).unwrap();
        let mut rhs_colon = MonomialIdeal::new([
            Monomial::var_pow(y.clone(), m),
            Monomial::var_pow(v.clone(), m),
        ])
        .sum(&weighted_edge_ideal(&rest));
        for (yi, mi) in &spokes {
            rhs_colon = rhs_colon.add(Monomial::var_pow(yi.clone(), *mi));
        }
        if !lhs_colon.equals(&rhs_colon) {
            return Some((false, deg3_cases));
        }

        let lhs_sum = ideal.add(xm.clone());
        let no_x = g.delete(x, cmw::graph::DeleteMode::Vertex).unwrap();
        let mut rhs_sum = MonomialIdeal::new([xm]).sum(&weighted_edge_ideal(&no_x));
        for (yi, mi) in &spokes {
            rhs_sum = rhs_sum
                .add(Monomial::var_pow(x.clone(), *mi).mul(&Monomial::var_pow(yi.clone(), *mi)));
        }
        if !lhs_sum.equals(&rhs_sum) {
            return Some((false, deg3_cases));
        }
    }
    Some((true, deg3_cases))
}

#[test]
fn criterion_7_proof_identity_suite() {
    let seed = 0xc7;
    let mut passed = 0usize;
    let mut deg2_cases = 0usize;
    let mut deg3_cases = 0usize;
    let mut failures = Vec::new();

    // fixed shapes guaranteeing both the degree-2 and the degree >= 3 case
    let fixtures = vec![c5([1, 2, 1, 2, 1]), figure3_shape(FIGURE3_CM_WEIGHTS)];
    let mut index = 0u64;
    let mut instances = fixtures;
    while instances.len() < 160 {
        let mut rng = stream_rng(seed, index);
        index += 1;
        let n = rng.gen_range(5..=14);
        if let Ok(g) = class_pc_graph(
            &ClassPcOptions {
                n,
                max_weight: 4,
                mode: WeightMode::Satisfy,
            },
            &mut rng,
        ) {
            instances.push(g);
        }
    }
    for g in &instances {
        match proof_identities_hold(g) {
            None => {}
            Some((ok, d3)) => {
                if ok {
                    passed += 1;
                    deg3_cases += d3;
                    let cert = classify_cm(g);
                    deg2_cases += cert.balanced.len() - d3;
                } else {
                    failures.push(g.to_document());
                }
            }
        }
    }
    let ok = failures.is_empty() && passed >= 100 && deg2_cases > 0 && deg3_cases > 0;
    report(
        7,
        "colon and sum identities at balanced vertices on >= 100 satisfying instances",
        ok,
        format!(
            "{passed} instances verified ({deg2_cases} degree-2 and {deg3_cases} degree->=3 balanced vertices), failures: {failures:?}"
        ),
    );
}

/// Exhaustive sweep beneath the acceptance criteria: every connected
/// girth >= 5 graph on at most 7 vertices, every weight vector in {1,2}^E,
/// all three routes in agreement.
#[test]
fn exhaustive_small_universe_triangle() {
    let mut checked = 0u64;
    for g in connected_girth5_catalog(7) {
        let m = g.edge_count();
        for code in 0u64..(1 << m) {
            let edges: Vec<(String, String, Weight)> = g
                .edges()
                .enumerate()
                .map(|(k, (i, j, _))| {
                    (
                        g.label(i).to_owned(),
                        g.label(j).to_owned(),
                        1 + ((code >> k) & 1) as Weight,
                    )
                })
                .collect();
            let gw = WeightedGraph::from_parts(g.labels().to_vec(), edges).unwrap();
            let classifier = classify_cm(&gw).verdict == Verdict::CohenMacaulay;
            let oracle = is_cm_oracle(&gw, &OracleOptions::default()).unwrap().cohen_macaulay;
            let unmixed = is_unmixed(&gw, DEFAULT_COVER_BUDGET).unwrap().unmixed;
            let pc = is_pc_or_vertex_componentwise(&gw);
            assert_eq!(classifier, oracle, "classifier vs oracle on {}", gw.to_document());
            assert_eq!(
                classifier,
                pc && unmixed,
                "classifier vs unmixedness on {}",
                gw.to_document()
            );
            checked += 1;
        }
    }
    println!("exhaustive small universe: {checked} weighted instances agree on all routes");
    assert!(checked > 2_000);
}

#[test]
fn criterion_8_p3_fixture() {
    let g = p3_fixture();
    // independent brute-force oracle first
    let brute = brute_force_minimal_covers(&g);
    let fast = minimal_weighted_covers(&g, DEFAULT_COVER_BUDGET).unwrap();
    let expected: Vec<Vec<(&str, Weight)>> = vec![
        vec![("y", 1)],
        vec![("x", 2), ("z", 1)],
        vec![("y", 2), ("z", 1)],
    ];
    let expected: Vec<cmw::covers::WeightedCover> = expected
        .into_iter()
        .map(|pairs| cmw::covers::WeightedCover::new(pairs).unwrap())
        .collect();
    let ok = brute == expected && fast == expected;
    report(
        8,
        "path fixture with weights (2,1) has exactly the three expected minimal covers",
        ok,
        format!("brute force: {brute:?}"),
    );
}
