//! Verdict cross-checks over the four reference models: the independent
//! deciders must agree model by model, and the failing models must fail
//! with concrete witnesses.

mod common;

use common::{all_models, f0, octahedron, pentagon_double_torus, triangle_torus};
use dimerlab_core::balgebra::check_algebraic_consistency_bounded;
use dimerlab_core::cy3::check_exact_in_window;
use dimerlab_core::jacobi::{cancellation_witness, equivalence_classes, verify_witness};
use dimerlab_core::model::RotationMaps;
use dimerlab_core::rcharge::{rcharge_feasible, rcharge_from_zigzags, verify_rcharge};
use dimerlab_core::topology::homology_labeling;
use dimerlab_core::zigzag::{
    check_condition_z, condition_z_verdict, enumerate_zigzags, expand_intersections,
    simulate_ray_intersections, simulation_window, ConditionZ, SurfaceZVerdict,
};

#[test]
fn corpus_validates_with_the_expected_euler_characteristics() {
    let expected = [2i64, 0, 0, -2];
    for (model, chi) in all_models().iter().zip(expected) {
        let report = model.validate();
        assert!(report.passed(), "{} must validate: {report:?}", model.name);
        assert_eq!(model.euler_characteristic(), chi, "{}", model.name);
    }
}

#[test]
fn zigzags_cover_every_arrow_twice_on_every_model() {
    for model in all_models() {
        let rot = RotationMaps::build(&model).unwrap();
        let zs = enumerate_zigzags(&model, &rot, None);
        let total: usize = zs.iter().map(|z| z.period_len()).sum();
        assert_eq!(total, 2 * model.arrow_count(), "{}", model.name);
    }
}

#[test]
fn pentagon_zigzag_periods() {
    let m = pentagon_double_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let mut lens: Vec<usize> =
        enumerate_zigzags(&m, &rot, None).iter().map(|z| z.period_len()).collect();
    lens.sort();
    assert_eq!(lens, [2, 2, 6]);
}

#[test]
fn octahedron_zigzag_length_sum_is_24() {
    let m = octahedron();
    let rot = RotationMaps::build(&m).unwrap();
    let total: usize =
        enumerate_zigzags(&m, &rot, None).iter().map(|z| z.period_len()).sum();
    assert_eq!(total, 24);
}

#[test]
fn triangle_fails_the_zigzag_condition_with_ray_witnesses() {
    let m = triangle_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let lab = homology_labeling(&m).unwrap();
    match check_condition_z(&m, &rot, &lab) {
        ConditionZ::Fails { ray_witnesses, .. } => {
            assert!(!ray_witnesses.is_empty());
            for w in &ray_witnesses {
                assert!(w.i >= 1 && w.j >= 1);
            }
        }
        ConditionZ::Holds => panic!("triangle model must fail the zigzag condition"),
    }
    // stable under a change of cover basis
    for u in [[[1, 1], [0, 1]], [[0, -1], [1, 0]]] {
        assert!(!check_condition_z(&m, &rot, &lab.transformed(u)).holds());
    }
}

#[test]
fn ray_solver_agrees_with_simulation_on_the_torus_corpus() {
    for model in [f0(), triangle_torus()] {
        let rot = RotationMaps::build(&model).unwrap();
        let lab = homology_labeling(&model).unwrap();
        for a in model.arrow_ids() {
            let window = simulation_window(&model, &rot, a, 8);
            let sim = simulate_ray_intersections(&model, &rot, &lab, a, 8);
            let dio = expand_intersections(&model, &rot, &lab, a, window, window);
            assert_eq!(sim, dio, "model {} arrow {}", model.name, model.arrow_name(a));
        }
    }
}

#[test]
fn surface_gates_for_the_zigzag_condition() {
    let m = octahedron();
    let rot = RotationMaps::build(&m).unwrap();
    match condition_z_verdict(&m, &rot).unwrap() {
        SurfaceZVerdict::AlwaysFails { chi: 2 } => {}
        v => panic!("expected the positive-curvature gate, got {v:?}"),
    }
    let m = pentagon_double_torus();
    let rot = RotationMaps::build(&m).unwrap();
    match condition_z_verdict(&m, &rot).unwrap() {
        SurfaceZVerdict::Unsupported { chi: -2 } => {}
        v => panic!("expected the hyperbolic gate, got {v:?}"),
    }
}

#[test]
fn rcharge_deciders_agree_across_the_corpus() {
    // feasibility (LP), construction (zigzag directions), and the zigzag
    // condition itself must line up on every torus model
    let m = f0();
    let rot = RotationMaps::build(&m).unwrap();
    let lab = homology_labeling(&m).unwrap();
    assert!(check_condition_z(&m, &rot, &lab).holds());
    let lp = rcharge_feasible(&m);
    assert!(lp.charge.is_some());
    let constructed = rcharge_from_zigzags(&m, &rot, &lab).unwrap();
    assert!(verify_rcharge(&m, &constructed, 1e-9).passed());

    let m = triangle_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let lab = homology_labeling(&m).unwrap();
    assert!(!check_condition_z(&m, &rot, &lab).holds());
    let lp = rcharge_feasible(&m);
    assert!(lp.charge.is_none());
    // the equality system is feasible but the best slack is exactly zero
    let t = lp.t_star.expect("equalities are consistent on a torus");
    assert!(t == num_rational::BigRational::from_integer(0.into()));
    assert!(rcharge_from_zigzags(&m, &rot, &lab).is_err());

    // nonzero Euler characteristic makes even the equalities infeasible
    for m in [octahedron(), pentagon_double_torus()] {
        assert!(rcharge_feasible(&m).t_star.is_none(), "{}", m.name);
    }
}

#[test]
fn triangle_cancellation_witness_appears_at_bound_three() {
    let m = triangle_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let at2 = equivalence_classes(&m, &rot, 2, 1 << 22).unwrap();
    assert!(cancellation_witness(&m, &at2).is_none());
    let at3 = equivalence_classes(&m, &rot, 3, 1 << 22).unwrap();
    let w = cancellation_witness(&m, &at3).expect("witness at bound 3");
    assert!(verify_witness(&m, &at3, &w));
    // the short loop pair: the parallel loops commute after one more arrow
    assert_eq!(w.p.len(), 2);
    assert_eq!(w.q.len(), 2);
    // still refuted at the default bound
    let at8 = equivalence_classes(&m, &rot, 8, 1 << 24).unwrap();
    let w8 = cancellation_witness(&m, &at8).expect("witness persists at bound 8");
    assert!(verify_witness(&m, &at8, &w8));
}

#[test]
fn consistent_models_have_no_witness_at_the_default_bound() {
    for m in [f0(), octahedron()] {
        let rot = RotationMaps::build(&m).unwrap();
        let closure = equivalence_classes(&m, &rot, 8, 1 << 24).unwrap();
        assert!(cancellation_witness(&m, &closure).is_none(), "{}", m.name);
    }
    // genus two: bounded search up to 7 finds nothing either
    let m = pentagon_double_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let closure = equivalence_classes(&m, &rot, 7, 1 << 24).unwrap();
    assert!(cancellation_witness(&m, &closure).is_none());
}

#[test]
fn algebraic_consistency_verdicts_match_cancellation() {
    let m = f0();
    let rot = RotationMaps::build(&m).unwrap();
    assert!(check_algebraic_consistency_bounded(&m, &rot, 6, 1 << 24).unwrap().consistent());

    let m = triangle_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let report = check_algebraic_consistency_bounded(&m, &rot, 6, 1 << 24).unwrap();
    assert!(!report.consistent());
    assert!(!report.injectivity_failures.is_empty());
    let report8 = check_algebraic_consistency_bounded(&m, &rot, 8, 1 << 24).unwrap();
    assert!(!report8.consistent());

    // the sphere theorem pairs algebraic consistency with cancellation
    let m = octahedron();
    let rot = RotationMaps::build(&m).unwrap();
    let report = check_algebraic_consistency_bounded(&m, &rot, 5, 1 << 24).unwrap();
    assert!(report.caveat_not_torus);
    assert!(report.consistent(), "{:?}", (report.surjectivity_failures.len(),
        report.injectivity_failures.len()));
}

#[test]
fn rewriting_preserves_lattice_classes_on_every_model() {
    // substitutions swap face complements, so exponents move by face
    // differences: the quotient class is invariant
    use dimerlab_core::balgebra::build_lattice;
    for model in all_models() {
        let rot = RotationMaps::build(&model).unwrap();
        let bound = if model.arrow_count() <= 9 { 6 } else { 5 };
        let closure = equivalence_classes(&model, &rot, bound, 1 << 24).unwrap();
        let lattice = build_lattice(&model);
        for group in closure.groups().values() {
            let first = &closure.words()[group[0] as usize];
            let r0 = lattice.reduce(&first.exponent(&model));
            for &i in &group[1..] {
                let w = &closure.words()[i as usize];
                assert_eq!(lattice.reduce(&w.exponent(&model)), r0, "{}", model.name);
            }
        }
    }
}

#[test]
fn exponent_enumeration_respects_its_budget() {
    use dimerlab_core::balgebra::{build_lattice, enumerate_mplus};
    let m = f0();
    let lattice = build_lattice(&m);
    let v1 = m.vertex_by_name("1").unwrap();
    match enumerate_mplus(&m, &lattice, v1, v1, 6, 10) {
        Err(e) => assert_eq!(e.budget, 10),
        Ok(_) => panic!("tiny budget must trip"),
    }
}

#[test]
fn cy3_exactness_separates_the_corpus() {
    // consistent torus model: exact everywhere in the window
    let m = f0();
    let rot = RotationMaps::build(&m).unwrap();
    let (exact, _) = check_exact_in_window(&m, &rot, 8, 5, 1 << 24).unwrap();
    assert!(exact);
    let (exact, _) = check_exact_in_window(&m, &rot, 8, 7, 1 << 24).unwrap();
    assert!(exact, "clean up to one step below the truncation");

    // inconsistent torus model: first nonzero rank at realized length 6
    let m = triangle_torus();
    let rot = RotationMaps::build(&m).unwrap();
    let (exact, reports) = check_exact_in_window(&m, &rot, 8, 7, 1 << 24).unwrap();
    assert!(!exact);
    let mut first_bad = usize::MAX;
    for r in &reports {
        for row in &r.rows {
            if row.homology[1] != 0 || row.homology[2] != 0 || row.homology[3] != 0 {
                first_bad = first_bad.min(row.min_length);
            }
        }
    }
    assert_eq!(first_bad, 6, "first homology appears at realized length 6");

    // sphere: never CY-3, and the window sees it
    let m = octahedron();
    let rot = RotationMaps::build(&m).unwrap();
    let (exact, _) = check_exact_in_window(&m, &rot, 8, 7, 1 << 24).unwrap();
    assert!(!exact);
}
