use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::odb::find_odb_pairs;
use super::{fragment, fragment_with, uncompute_for, DecompKind};
use crate::circuit::{schedule_asap, Circuit, GateKind, Operation, QubitId};
use crate::error::{Error, Result};

/// How a lone Toffoli lowered to a relative-phase kind gets its scratch
/// ancilla back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LoneUncompute {
    /// Run the fragment backwards.
    #[default]
    Mirror,
    /// Measurement-based uncompute.
    Measure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionPolicy {
    pub default: DecompKind,
    pub per_region: BTreeMap<String, DecompKind>,
    /// Compute/uncompute pairs on clean ancillae become a relative-phase
    /// compute plus measurement-based uncompute.
    pub odb_enabled: bool,
    /// Use the depth-10 layout for the zero-ancilla T-depth 3 lowering.
    pub use_legacy_0at3_depth: bool,
    pub lone_uncompute: LoneUncompute,
}

impl ExpansionPolicy {
    pub fn new(default: DecompKind) -> Self {
        ExpansionPolicy {
            default,
            per_region: BTreeMap::new(),
            odb_enabled: false,
            use_legacy_0at3_depth: false,
            lone_uncompute: LoneUncompute::Mirror,
        }
    }

    /// The zero-ancilla T-depth 3 lowering in its depth-10 layout.
    pub fn legacy_0at3() -> Self {
        ExpansionPolicy {
            use_legacy_0at3_depth: true,
            ..Self::new(DecompKind::A0t3)
        }
    }

    /// Measurement-based uncomputation everywhere it applies.
    pub fn odb(kind: DecompKind) -> Self {
        ExpansionPolicy {
            odb_enabled: true,
            lone_uncompute: LoneUncompute::Measure,
            ..Self::new(kind)
        }
    }

    pub fn with_region(mut self, region: &str, kind: DecompKind) -> Self {
        self.per_region.insert(region.to_string(), kind);
        self
    }

    fn kind_for(&self, op: &Operation) -> DecompKind {
        op.region
            .as_ref()
            .and_then(|r| self.per_region.get(r))
            .copied()
            .unwrap_or(self.default)
    }
}

/// Scratch ancillae handed out by layer of the unexpanded schedule. One
/// freed at layer `m` is only reused by Toffolis scheduled after `m`, so
/// Toffolis sharing a layer never share scratch space.
struct AncillaPool {
    next: usize,
    free: Vec<(usize, usize)>,
}

impl AncillaPool {
    fn take(&mut self, count: usize, layer: usize) -> Vec<usize> {
        let mut got = Vec::with_capacity(count);
        self.free.sort();
        let mut i = 0;
        while got.len() < count && i < self.free.len() {
            if self.free[i].1 < layer {
                got.push(self.free.remove(i).0);
            } else {
                i += 1;
            }
        }
        while got.len() < count {
            got.push(self.next);
            self.next += 1;
        }
        got
    }

    fn release(&mut self, qubits: &[usize], layer: usize) {
        self.free.extend(qubits.iter().map(|&q| (q, layer)));
    }
}

/// Lowers every Toffoli-like op according to `policy`.
pub fn expand(circuit: &Circuit, policy: &ExpansionPolicy) -> Result<Circuit> {
    let regions: HashSet<&str> = circuit
        .ops()
        .iter()
        .filter_map(|o| o.region.as_deref())
        .collect();
    for r in policy.per_region.keys() {
        if !regions.contains(r.as_str()) {
            return Err(Error::Policy(format!("region '{r}' does not occur in the circuit")));
        }
    }

    let layers = schedule_asap(circuit).assignment;
    let mut pairs: BTreeMap<usize, (usize, DecompKind)> = BTreeMap::new();
    if policy.odb_enabled {
        for (i, j) in find_odb_pairs(circuit) {
            let kind = policy.kind_for(&circuit.ops()[i]);
            if kind.is_relative_phase() {
                pairs.insert(i, (j, kind));
                pairs.insert(j, (i, kind));
            }
        }
    }

    let mut pool = AncillaPool {
        next: circuit.qubit_span(),
        free: Vec::new(),
    };
    let mut out = Circuit::new();
    for a in circuit.ancillae() {
        out.declare_ancilla(*a);
    }

    for (k, op) in circuit.ops().iter().enumerate() {
        let wires: Vec<usize> = op.qubits.iter().map(|q| q.0).collect();
        let layer = layers[k];
        let mut piece = match (&op.kind, pairs.get(&k)) {
            (GateKind::Toffoli, Some(&(partner, kind))) => {
                if partner > k {
                    fragment(kind)
                } else {
                    uncompute_for(kind)
                }
            }
            (GateKind::RelPhaseToffoli(tag), _) => fragment(DecompKind::from_tag(*tag)),
            (GateKind::Toffoli, None) => {
                let kind = policy.kind_for(op);
                if kind.is_exact() {
                    let frag = fragment_with(kind, policy.use_legacy_0at3_depth);
                    let scratch = pool.take(kind.ancillae(), layer);
                    let mut map = wires.clone();
                    map.extend(&scratch);
                    let mut piece = Circuit::new();
                    piece.extend_mapped(&frag, &map);
                    pool.release(&scratch, layer);
                    for q in scratch {
                        out.declare_ancilla(QubitId(q));
                    }
                    emit(&mut out, piece, op);
                    continue;
                }
                let x = pool.take(1, layer)[0];
                let piece = lone_relative_phase(kind, policy.lone_uncompute, &wires, x);
                pool.release(&[x], layer);
                out.declare_ancilla(QubitId(x));
                emit(&mut out, piece, op);
                continue;
            }
            _ => {
                out.push(op.clone());
                continue;
            }
        };
        let mut mapped = Circuit::new();
        mapped.extend_mapped(&piece, &wires);
        piece = mapped;
        emit(&mut out, piece, op);
    }
    Ok(out)
}

fn emit(out: &mut Circuit, mut piece: Circuit, origin: &Operation) {
    if let Some(r) = &origin.region {
        piece.set_region(r);
    }
    out.extend(&piece);
}

fn lone_relative_phase(kind: DecompKind, how: LoneUncompute, wires: &[usize], x: usize) -> Circuit {
    let (a, b, t) = (wires[0], wires[1], wires[2]);
    let compute = fragment(kind);
    let mut c = Circuit::new();
    c.extend_mapped(&compute, &[a, b, x]);
    c.push(Operation::cnot(x, t));
    match how {
        LoneUncompute::Mirror => {
            let back = compute.inverse().expect("fragments are unitary");
            c.extend_mapped(&back, &[a, b, x]);
        }
        LoneUncompute::Measure => c.extend_mapped(&uncompute_for(kind), &[a, b, x]),
    }
    c
}
