use proptest::prelude::*;

use qarith::circuit::{
    from_text, report, report_with, schedule_asap, to_text, Circuit, GateKind, Operation, TMode,
};
use qarith::sim::simulate;
use qarith::toffoli::{expand, published_row, DecompKind, ExpansionPolicy};
use qarith::topology::{clustering_coefficient, cpl, DeviceGraph};

const WIRES: usize = 6;

fn distinct(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..WIRES).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| v[..k].to_vec())
}

fn unitary_op() -> impl Strategy<Value = Operation> {
    prop_oneof![
        (prop_oneof![
            Just(GateKind::X),
            Just(GateKind::H),
            Just(GateKind::S),
            Just(GateKind::Sdg),
            Just(GateKind::T),
            Just(GateKind::Tdg),
            Just(GateKind::Z),
        ], distinct(1))
            .prop_map(|(g, q)| Operation::new(g, &q)),
        (-3.0f64..3.0, distinct(1)).prop_map(|(a, q)| Operation::new(GateKind::Ry(a), &q)),
        distinct(2).prop_map(|q| Operation::cnot(q[0], q[1])),
        distinct(2).prop_map(|q| Operation::new(GateKind::Cz, &q)),
        distinct(3).prop_map(|q| Operation::toffoli(q[0], q[1], q[2])),
        distinct(4).prop_map(|q| Operation::fanout(q[0], &q[1..])),
    ]
}

fn circuit(max_ops: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(unitary_op(), 0..max_ops).prop_map(|ops| {
        let mut c = Circuit::new();
        for op in ops {
            c.append(op).unwrap();
        }
        c
    })
}

fn touches(a: &Operation, b: &Operation) -> bool {
    a.qubits.iter().any(|q| b.qubits.contains(q)) || a.cbits.iter().any(|c| b.cbits.contains(c))
}

proptest! {
    #[test]
    fn asap_layers_are_tight(c in circuit(40)) {
        let s = schedule_asap(&c);
        let ops = c.ops();
        for (i, op) in ops.iter().enumerate() {
            let layer = s.assignment[i];
            let mut latest = None;
            for (j, prev) in ops[..i].iter().enumerate() {
                if touches(op, prev) {
                    prop_assert!(s.assignment[j] < layer);
                    latest = latest.max(Some(s.assignment[j]));
                }
            }
            // Nothing earlier could have taken it.
            prop_assert_eq!(layer, latest.map_or(0, |l| l + 1));
        }
        prop_assert_eq!(s.depth(), s.assignment.iter().max().map_or(0, |l| l + 1));
    }

    #[test]
    fn report_invariants(c in circuit(40)) {
        let p = report(&c);
        let q = report_with(&c, TMode::Sequential);
        let t = c.ops().iter().filter(|o| o.kind.is_t()).count();
        let cnots: usize = c.ops().iter().map(|o| o.kind.cnot_weight()).sum();
        prop_assert_eq!(p.t_count, t);
        prop_assert_eq!(p.cnot_count, cnots);
        prop_assert!(p.t_depth_parallel <= p.t_count);
        prop_assert_eq!(p.t_depth_sequential, p.t_count);
        prop_assert!(p.depth <= c.len());
        prop_assert!(q.depth >= p.depth);
        prop_assert_eq!(p.kq, p.depth * p.width);
        prop_assert_eq!(p.kq_t, p.t_depth_parallel * p.width);
        prop_assert_eq!(q.kq_t, q.t_depth_sequential * q.width);
        prop_assert_eq!(p.width, c.qubits().len());
    }

    #[test]
    fn depth_of_concatenation(a in circuit(20), b in circuit(20)) {
        let (da, db) = (report(&a).depth, report(&b).depth);
        let mut serial = a.clone();
        serial.extend(&b);
        prop_assert!(report(&serial).depth <= da + db);
        // b shifted onto fresh wires runs alongside a.
        let mut side = a.clone();
        side.extend_mapped(&b, &(WIRES..2 * WIRES).collect::<Vec<_>>());
        prop_assert_eq!(report(&side).depth, da.max(db));
    }

    #[test]
    fn text_round_trip(c in circuit(30)) {
        let back = from_text(&to_text(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn circuit_then_inverse_is_identity(c in circuit(12), input in 0usize..1 << WIRES) {
        let mut both = c.clone();
        both.extend(&c.inverse().unwrap());
        let mut padded = Circuit::new();
        padded.append(Operation::new(GateKind::Z, &[WIRES - 1])).unwrap();
        padded.extend(&both);
        padded.append(Operation::new(GateKind::Z, &[WIRES - 1])).unwrap();
        let branches = simulate(&padded, input).unwrap();
        prop_assert_eq!(branches.len(), 1);
        prop_assert!((branches[0].state.amplitude(input).norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn exact_lowering_costs_scale_with_toffolis(c in circuit(25), pick in 0usize..3) {
        let kind = [DecompKind::St, DecompKind::A0t3, DecompKind::A4t1][pick];
        let e = expand(&c, &ExpansionPolicy::new(kind)).unwrap();
        let before = report(&c);
        let after = report(&e);
        let row = published_row(kind).unwrap();
        prop_assert!(after.is_expanded());
        prop_assert_eq!(after.t_count, before.t_count + row.t_c * c.toffoli_count());
        prop_assert_eq!(after.cnot_count, before.cnot_count + row.cnot_c * c.toffoli_count());
    }
}

fn connected_graph() -> impl Strategy<Value = DeviceGraph> {
    (3usize..14).prop_flat_map(|n| {
        let extra = prop::collection::vec((0..n, 0..n), 0..2 * n);
        (Just(n), Just((0..n).collect::<Vec<_>>()).prop_shuffle(), extra)
    })
    .prop_map(|(n, order, extra)| {
        let mut edges: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
        for (u, v) in extra {
            let e = (u.min(v), u.max(v));
            if u != v && !edges.contains(&e) {
                edges.push(e);
            }
        }
        DeviceGraph::new("random", n, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn graph_metric_bounds(g in connected_graph()) {
        let l = cpl(&g).unwrap();
        let n = g.nodes as f64;
        prop_assert!(l >= 1.0 - 1e-12);
        prop_assert!(l <= (n + 1.0) / 3.0 + 1e-12, "path graph is the worst case");
        let complete = g.edges.len() == g.nodes * (g.nodes - 1) / 2;
        prop_assert_eq!((l - 1.0).abs() < 1e-12, complete);
        let cc = clustering_coefficient(&g);
        prop_assert!((0.0..=1.0).contains(&cc));
        prop_assert_eq!(DeviceGraph::parse("random", &g.to_text()).unwrap(), g);
    }

    #[test]
    fn adding_an_edge_never_lengthens_paths(g in connected_graph(), u in 0usize..14, v in 0usize..14) {
        let (u, v) = (u % g.nodes, v % g.nodes);
        let e = (u.min(v), u.max(v));
        prop_assume!(u != v && !g.edges.contains(&e));
        let mut edges = g.edges.clone();
        edges.push(e);
        let h = DeviceGraph::new("more", g.nodes, &edges).unwrap();
        prop_assert!(cpl(&h).unwrap() < cpl(&g).unwrap());
    }
}
