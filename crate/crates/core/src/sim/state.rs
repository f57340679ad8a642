use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::circuit::GateKind;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Amplitudes below this magnitude squared are dropped after each gate.
const PRUNE: f64 = 1e-28;

/// Amplitudes over `width` qubits, qubit 0 being the least significant bit
/// of the basis index. Only non-zero amplitudes are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    width: usize,
    amps: HashMap<usize, Complex64>,
}

type Mat2 = [[Complex64; 2]; 2];

fn mat(kind: &GateKind) -> Option<Mat2> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = FRAC_1_SQRT_2;
    Some(match kind {
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, c(-1.0, 0.0)]],
        GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
        GateKind::S => [[ONE, ZERO], [ZERO, c(0.0, 1.0)]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, c(0.0, -1.0)]],
        GateKind::T => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, FRAC_PI_4)]],
        GateKind::Tdg => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, -FRAC_PI_4)]],
        GateKind::Ry(theta) => {
            let (s, co) = (theta / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        _ => return None,
    })
}

impl StateVector {
    pub fn basis(width: usize, index: usize) -> Self {
        assert!(width >= usize::BITS as usize || index >> width == 0);
        StateVector {
            width,
            amps: HashMap::from([(index, ONE)]),
        }
    }

    /// Builds a state from a dense amplitude list of length `2^width`.
    pub fn from_amplitudes(amps: &[Complex64]) -> Self {
        assert!(amps.len().is_power_of_two());
        StateVector {
            width: amps.len().trailing_zeros() as usize,
            amps: amps
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm_sqr() > PRUNE)
                .map(|(i, a)| (i, *a))
                .collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps.get(&index).copied().unwrap_or(ZERO)
    }

    /// Non-zero amplitudes in ascending index order.
    pub fn support(&self) -> Vec<(usize, Complex64)> {
        let mut v: Vec<_> = self.amps.iter().map(|(i, a)| (*i, *a)).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut v = vec![ZERO; 1 << self.width];
        for (i, a) in &self.amps {
            v[*i] = *a;
        }
        v
    }

    pub fn norm(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps
            .iter()
            .map(|(i, a)| a.conj() * other.amplitude(*i))
            .sum()
    }

    /// Largest amplitude-wise distance between `self` and `phase * other`.
    pub fn distance(&self, other: &StateVector, phase: Complex64) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in &self.amps {
            worst = worst.max((a - phase * other.amplitude(*i)).norm());
        }
        for (i, b) in &other.amps {
            if !self.amps.contains_key(i) {
                worst = worst.max((phase * b).norm());
            }
        }
        worst
    }

    fn rebuild(&mut self, f: impl Fn(usize, Complex64, &mut HashMap<usize, Complex64>)) {
        let mut next = HashMap::with_capacity(self.amps.len() * 2);
        for (&i, &a) in &self.amps {
            f(i, a, &mut next);
        }
        next.retain(|_, a| a.norm_sqr() > PRUNE);
        self.amps = next;
    }

    fn single(&mut self, m: &Mat2, q: usize, only_if: usize) {
        let bit = 1 << q;
        if m[0][1] == ZERO && m[1][0] == ZERO {
            for (i, a) in self.amps.iter_mut() {
                if i & only_if == only_if {
                    *a *= m[(i & bit != 0) as usize][(i & bit != 0) as usize];
                }
            }
            return;
        }
        self.rebuild(|i, a, next| {
            if i & only_if != only_if {
                *next.entry(i).or_insert(ZERO) += a;
                return;
            }
            let col = (i & bit != 0) as usize;
            let base = i & !bit;
            *next.entry(base).or_insert(ZERO) += m[0][col] * a;
            *next.entry(base | bit).or_insert(ZERO) += m[1][col] * a;
        });
    }

    fn flip(&mut self, controls: usize, targets: usize) {
        self.amps = self
            .amps
            .drain()
            .map(|(i, a)| {
                if i & controls == controls {
                    (i ^ targets, a)
                } else {
                    (i, a)
                }
            })
            .collect();
    }

    /// Applies a unitary gate. Panics on measurements, classical control and
    /// unexpanded relative-phase Toffolis, which the simulator handles itself.
    pub fn apply(&mut self, kind: &GateKind, qubits: &[usize]) {
        if let Some(m) = mat(kind) {
            self.single(&m, qubits[0], 0);
            return;
        }
        match kind {
            GateKind::Cnot => self.flip(1 << qubits[0], 1 << qubits[1]),
            GateKind::Fanout(_) => {
                let targets = qubits[1..].iter().fold(0, |acc, q| acc | 1 << q);
                self.flip(1 << qubits[0], targets);
            }
            GateKind::Toffoli => self.flip(1 << qubits[0] | 1 << qubits[1], 1 << qubits[2]),
            GateKind::Cz => {
                let both = 1 << qubits[0] | 1 << qubits[1];
                for (i, a) in self.amps.iter_mut() {
                    if i & both == both {
                        *a = -*a;
                    }
                }
            }
            GateKind::Cry(theta) => {
                let m = mat(&GateKind::Ry(*theta)).unwrap();
                self.single(&m, qubits[1], 1 << qubits[0]);
            }
            other => panic!("{other:?} is not a plain unitary"),
        }
    }

    /// Probability of reading 1 on qubit `q`.
    pub fn prob_one(&self, q: usize) -> f64 {
        let bit = 1 << q;
        self.amps
            .iter()
            .filter(|(i, _)| *i & bit != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Projects qubit `q` onto `value`, renormalises by `prob`, and leaves the
    /// qubit in |0⟩.
    pub fn collapse_and_reset(&mut self, q: usize, value: bool, prob: f64) {
        let bit = 1 << q;
        let scale = 1.0 / prob.sqrt();
        self.amps = self
            .amps
            .drain()
            .filter(|(i, _)| (i & bit != 0) == value)
            .map(|(i, a)| (i & !bit, a * scale))
            .collect();
    }
}
