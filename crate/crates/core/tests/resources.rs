use proptest::prelude::*;

use qarith::arith::{build_ctrl_adder, build_multiplier, hybrid_policy};
use qarith::circuit::report;
use qarith::resources::{
    adder_formulas, cnot_measure_tradeoff, compare_scenarios, kq, multiplier_formulas,
    rtx_single_replacement_formulas, FormulaInputs, MultLowering, ScenarioId, TradeoffParams,
};
use qarith::toffoli::{expand, DecompKind, ExpansionPolicy};

#[test]
fn adder_closed_forms_against_hand_counts() {
    // Published appendix values.
    let d = |n, k, legacy| adder_formulas(&FormulaInputs::for_kind(n, k, legacy).unwrap()).unwrap();
    assert_eq!(d(4, DecompKind::A0t3, true).depth, 145);
    assert_eq!(d(12, DecompKind::A4t1, false).depth, 287);
    for n in 2..64 {
        // 3n+2 Toffolis, 2(2n-3) CNOTs; 4AT1 costs 7 layers, 1 T layer, 16 CNOTs, 4 scratch wires.
        let r = d(n, DecompKind::A4t1, false);
        assert_eq!(r.depth, (3 * n + 2) * 7 + 2 * n - 3);
        assert_eq!(r.t_depth, 3 * n + 2);
        assert_eq!(r.qubits, 2 * n + 7);
    }
}

#[test]
fn counted_width_matches_closed_form() {
    for n in 2..=10 {
        let (c, _) = build_ctrl_adder(n).unwrap();
        for (k, legacy, p) in [
            (DecompKind::A4t1, false, ExpansionPolicy::new(DecompKind::A4t1)),
            (DecompKind::A0t3, true, ExpansionPolicy::legacy_0at3()),
            (DecompKind::St, false, ExpansionPolicy::new(DecompKind::St)),
        ] {
            let r = report(&expand(&c, &p).unwrap());
            let f = adder_formulas(&FormulaInputs::for_kind(n, k, legacy).unwrap()).unwrap();
            assert_eq!(r.width, f.qubits, "{k} n={n}");
            assert_eq!(r.cnot_count, f.cnot, "{k} n={n}");
            assert_eq!(r.t_count, 7 * (3 * n + 2));
        }
    }
}

#[test]
fn hybrid_multiplier_width_and_formula() {
    assert_eq!(
        multiplier_formulas(MultLowering::Hybrid { n: 4 }).unwrap(),
        qarith::resources::MultiplierCosts {
            depth: 319,
            t_depth: 45,
            qubits: 21
        }
    );
    for n in 2..=5 {
        let (c, _) = build_multiplier(n).unwrap();
        let r = report(&expand(&c, &hybrid_policy()).unwrap());
        assert_eq!(r.width, 4 * n + 5);
        assert!(r.is_expanded());
    }
}

#[test]
fn single_replacement_ratios_tend_to_coefficient_ratios() {
    let r = rtx_single_replacement_formulas(10_000).unwrap();
    assert!((r.rt3_vs_4at1 - 25.0 / 52.0).abs() < 1e-3);
    assert_eq!(r.t_count, 12 * 10_000 + 8);
}

#[test]
fn scenario_rows_are_consistent() {
    let ns = [2, 5, 16, 33];
    let cmp = compare_scenarios(&ns, &ScenarioId::ALL).unwrap();
    assert_eq!(cmp.rows.len(), ns.len() * ScenarioId::ALL.len());
    for row in &cmp.rows {
        assert_eq!(row.kq, row.depth * row.width);
    }
    for s in ScenarioId::ALL {
        let direct = kq(&s.evaluate(16).unwrap());
        assert_eq!(cmp.row(16, s).unwrap().kq, direct.kq);
        assert!(direct.kq_t <= direct.kq);
        assert_eq!(s.name().parse::<ScenarioId>().unwrap(), s);
    }
    // Carry lookahead wins asymptotically: depth grows as log n.
    let big = compare_scenarios(&[200], &[ScenarioId::RcTakahashi, ScenarioId::ClRtx]).unwrap();
    assert!(big.row(200, ScenarioId::ClRtx).unwrap().depth < big.row(200, ScenarioId::RcTakahashi).unwrap().depth);
}

proptest! {
    #[test]
    fn tradeoff_threshold(meas in 0.0f64..1.0, cnot in 0.0f64..0.1, overhead in 1usize..12, saved in 0usize..20) {
        let t = cnot_measure_tradeoff(&TradeoffParams {
            meas_error: meas,
            cnot_error: cnot,
            cnot_overhead: overhead,
            cnots_saved_per_pair: saved,
        }).unwrap();
        prop_assert_eq!(t.physical_cnots_replaced, overhead * saved);
        prop_assert_eq!(t.beneficial, meas < (overhead * saved) as f64 * cnot);
    }

    #[test]
    fn adder_formulas_grow_with_n(n in 2usize..500) {
        for (k, legacy) in [(DecompKind::A4t1, false), (DecompKind::A0t3, true), (DecompKind::Rt3, false)] {
            let a = adder_formulas(&FormulaInputs::for_kind(n, k, legacy).unwrap()).unwrap();
            let b = adder_formulas(&FormulaInputs::for_kind(n + 1, k, legacy).unwrap()).unwrap();
            prop_assert!(b.depth > a.depth && b.cnot > a.cnot && b.qubits == a.qubits + 2);
        }
    }
}
