//! Behavior boxes `p(a, b | x, y)` and their CHSH / no-signalling analysis.
//!
//! Settings: Alice `a → x = 0`, `a′ → x = 1`; Bob `b → y = 0`, `b′ → y = 1`.
//! Outcome index 0 is +1, index 1 is −1.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{joint_probabilities, BellKind};
use crate::measure::Outcome;
use crate::{Error, Result, Vec3, EXACT_TOL};

type Table = [[[[f64; 2]; 2]; 2]; 2];

/// Joint conditional distribution over 2 settings × 2 settings × 2 × 2 outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "BoxJson", try_from = "BoxJson")]
pub struct BehaviorBox {
    p: Table,
}

/// Wire form: `{"settings": [2, 2], "outcomes": [1, -1], "p": [16 floats]}`,
/// `p` row-major over `(x, y, a, b)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoxJson {
    settings: [u8; 2],
    outcomes: [i8; 2],
    p: Vec<f64>,
}

impl From<BehaviorBox> for BoxJson {
    fn from(b: BehaviorBox) -> Self {
        BoxJson { settings: [2, 2], outcomes: [1, -1], p: b.entries().to_vec() }
    }
}

impl TryFrom<BoxJson> for BehaviorBox {
    type Error = Error;

    fn try_from(j: BoxJson) -> Result<Self> {
        if j.settings != [2, 2] || j.outcomes != [1, -1] {
            return Err(Error::Domain(format!(
                "unsupported box shape settings={:?} outcomes={:?}",
                j.settings, j.outcomes
            )));
        }
        let flat: [f64; 16] = j
            .p
            .as_slice()
            .try_into()
            .map_err(|_| Error::Dimension(format!("box needs 16 entries, got {}", j.p.len())))?;
        BehaviorBox::from_entries(flat)
    }
}

impl BehaviorBox {
    pub fn new(p: Table) -> Result<Self> {
        for (x, row) in p.iter().enumerate() {
            for (y, cell) in row.iter().enumerate() {
                let flat = [cell[0][0], cell[0][1], cell[1][0], cell[1][1]];
                if flat.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return Err(Error::Domain(format!("negative or non-finite entry at settings ({x},{y})")));
                }
                let total: f64 = flat.iter().sum();
                if (total - 1.0).abs() > EXACT_TOL {
                    return Err(Error::Domain(format!("settings ({x},{y}) sum to {total}")));
                }
            }
        }
        Ok(Self { p })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, Outcome, Outcome) -> f64) -> Result<Self> {
        let mut p = [[[[0.0; 2]; 2]; 2]; 2];
        for (x, row) in p.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                for a in Outcome::BOTH {
                    for b in Outcome::BOTH {
                        cell[a.index()][b.index()] = f(x, y, a, b);
                    }
                }
            }
        }
        Self::new(p)
    }

    /// Row-major `(x, y, a, b)` entries.
    pub fn from_entries(flat: [f64; 16]) -> Result<Self> {
        Self::from_fn(|x, y, a, b| flat[8 * x + 4 * y + 2 * a.index() + b.index()])
    }

    pub fn entries(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        out[8 * x + 4 * y + 2 * a + b] = self.p[x][y][a][b];
                    }
                }
            }
        }
        out
    }

    pub fn get(&self, x: usize, y: usize, a: Outcome, b: Outcome) -> f64 {
        self.p[x][y][a.index()][b.index()]
    }

    /// `E(x, y) = Σ a·b·p(a, b | x, y)`.
    pub fn correlator(&self, x: usize, y: usize) -> f64 {
        let c = &self.p[x][y];
        c[0][0] - c[0][1] - c[1][0] + c[1][1]
    }

    pub fn correlators(&self) -> [[f64; 2]; 2] {
        [[self.correlator(0, 0), self.correlator(0, 1)], [self.correlator(1, 0), self.correlator(1, 1)]]
    }

    /// Alice's `P(+1 | x, y)`.
    pub fn alice_plus(&self, x: usize, y: usize) -> f64 {
        self.p[x][y][0][0] + self.p[x][y][0][1]
    }

    /// Bob's `P(+1 | x, y)`.
    pub fn bob_plus(&self, x: usize, y: usize) -> f64 {
        self.p[x][y][0][0] + self.p[x][y][1][0]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries().iter().zip(other.entries()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("box serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad box JSON: {e}")))
    }

    /// Relabels outcomes: `alice_flip[x]` swaps ±1 for Alice's setting `x`,
    /// likewise for Bob.
    pub fn relabel(&self, alice_flip: [bool; 2], bob_flip: [bool; 2]) -> Self {
        let flip = |o: Outcome, f: bool| if f { o.flipped() } else { o };
        Self::from_fn(|x, y, a, b| self.get(x, y, flip(a, alice_flip[x]), flip(b, bob_flip[y])))
            .expect("relabeling preserves normalization")
    }
}

/// Box with uniform marginals and correlators `E(x, y) = signs[x][y] ∈ {±1}`.
pub fn correlator_box(signs: [[i8; 2]; 2]) -> BehaviorBox {
    BehaviorBox::from_fn(|x, y, a, b| {
        if a.sign() * b.sign() == signs[x][y] {
            0.5
        } else {
            0.0
        }
    })
    .expect("extremal correlator boxes are normalized")
}

/// All 16 boxes of the form [`correlator_box`].
pub fn correlator_sign_family() -> Vec<([[i8; 2]; 2], BehaviorBox)> {
    (0..16u8)
        .map(|bits| {
            let s = |k: u8| if bits >> k & 1 == 1 { -1 } else { 1 };
            let signs = [[s(0), s(1)], [s(2), s(3)]];
            (signs, correlator_box(signs))
        })
        .collect()
}

/// The Popescu-Rohrlich box: equal outcomes for `(a,b), (a,b′), (a′,b)`,
/// opposite outcomes for `(a′,b′)`, each with probability 1/2.
pub fn pr_box() -> BehaviorBox {
    correlator_box([[1, 1], [1, -1]])
}

/// Quantum box for a Bell state measured along `alice[x]`, `bob[y]`.
pub fn quantum_box(kind: BellKind, alice: [Vec3; 2], bob: [Vec3; 2]) -> Result<BehaviorBox> {
    let mut p = [[[[0.0; 2]; 2]; 2]; 2];
    for x in 0..2 {
        for y in 0..2 {
            let j = joint_probabilities(kind, &alice[x], &bob[y])?;
            p[x][y] = [[j.p_pp, j.p_pm], [j.p_mp, j.p_mm]];
        }
    }
    // trace evaluation leaves ~1e-17 negatives on exact zeros
    for v in p.iter_mut().flatten().flatten().flatten() {
        if *v < 0.0 && *v > -EXACT_TOL {
            *v = 0.0;
        }
    }
    BehaviorBox::new(p)
}

/// Quantum box with all four settings in the Bell state's symmetry plane.
pub fn quantum_box_in_plane(kind: BellKind, alice: [f64; 2], bob: [f64; 2]) -> Result<BehaviorBox> {
    let plane = kind.symmetry_plane();
    quantum_box(kind, alice.map(|t| plane.direction(t)), bob.map(|t| plane.direction(t)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginalViolation {
    pub party: &'static str,
    /// The party's own setting.
    pub setting: usize,
    /// `P(+1)` under the other party's setting 0 and 1.
    pub plus_given_other: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoSignallingReport {
    pub no_signalling: bool,
    /// `alice_plus[x][y]`.
    pub alice_plus: [[f64; 2]; 2],
    /// `bob_plus[y][x]`.
    pub bob_plus: [[f64; 2]; 2],
    pub violations: Vec<MarginalViolation>,
}

pub fn no_signalling_check(b: &BehaviorBox) -> Result<NoSignallingReport> {
    // re-validate: boxes can only be built normalized, but deserialized or
    // relabeled inputs go through the same gate
    let b = BehaviorBox::new(b.p)?;
    let alice_plus = [[b.alice_plus(0, 0), b.alice_plus(0, 1)], [b.alice_plus(1, 0), b.alice_plus(1, 1)]];
    let bob_plus = [[b.bob_plus(0, 0), b.bob_plus(1, 0)], [b.bob_plus(0, 1), b.bob_plus(1, 1)]];
    let mut violations = Vec::new();
    for s in 0..2 {
        if (alice_plus[s][0] - alice_plus[s][1]).abs() > EXACT_TOL {
            violations.push(MarginalViolation { party: "alice", setting: s, plus_given_other: alice_plus[s] });
        }
        if (bob_plus[s][0] - bob_plus[s][1]).abs() > EXACT_TOL {
            violations.push(MarginalViolation { party: "bob", setting: s, plus_given_other: bob_plus[s] });
        }
    }
    Ok(NoSignallingReport { no_signalling: violations.is_empty(), alice_plus, bob_plus, violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshResult {
    pub value: f64,
    /// `correlators[x][y] = E(x, y)`.
    pub correlators: [[f64; 2]; 2],
    /// The `(x, y)` whose correlator enters with a minus sign.
    pub negated: (usize, usize),
}

/// `max |±E00 ± E01 ± E10 ± E11|` over the four placements of a single minus sign.
pub fn chsh_value(b: &BehaviorBox) -> ChshResult {
    chsh_from_correlators(b.correlators())
}

pub fn chsh_from_correlators(e: [[f64; 2]; 2]) -> ChshResult {
    let total: f64 = e.iter().flatten().sum();
    let mut best = ChshResult { value: f64::NEG_INFINITY, correlators: e, negated: (0, 0) };
    for (x, row) in e.iter().enumerate() {
        for (y, exy) in row.iter().enumerate() {
            let v = (total - 2.0 * exy).abs();
            if v > best.value {
                best.value = v;
                best.negated = (x, y);
            }
        }
    }
    best
}

/// Local deterministic strategy: an outcome per setting for each party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeterministicStrategy {
    pub alice: [Outcome; 2],
    pub bob: [Outcome; 2],
}

impl DeterministicStrategy {
    /// All 16 strategies.
    pub fn all() -> Vec<Self> {
        let o = |bit: u8| if bit == 1 { Outcome::Minus } else { Outcome::Plus };
        (0..16u8)
            .map(|k| Self { alice: [o(k & 1), o(k >> 1 & 1)], bob: [o(k >> 2 & 1), o(k >> 3 & 1)] })
            .collect()
    }

    pub fn to_box(&self) -> BehaviorBox {
        BehaviorBox::from_fn(|x, y, a, b| if a == self.alice[x] && b == self.bob[y] { 1.0 } else { 0.0 })
            .expect("deterministic boxes are normalized")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LhvOptimum {
    pub value: f64,
    pub witness: DeterministicStrategy,
    pub optimal_count: usize,
    pub strategies_checked: usize,
}

/// Exhaustive CHSH maximum over local deterministic strategies.
pub fn lhv_max_chsh() -> LhvOptimum {
    let strategies = DeterministicStrategy::all();
    let values: Vec<f64> = strategies.iter().map(|s| chsh_value(&s.to_box()).value).collect();
    let value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let witness_idx = values.iter().position(|&v| v == value).expect("non-empty");
    LhvOptimum {
        value,
        witness: strategies[witness_idx],
        optimal_count: values.iter().filter(|&&v| v == value).count(),
        strategies_checked: strategies.len(),
    }
}

/// A measurement-direction label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    A,
    APrime,
    B,
    BPrime,
}

impl Direction {
    fn alice(x: usize) -> Self {
        [Direction::A, Direction::APrime][x]
    }

    fn bob(y: usize) -> Self {
        [Direction::B, Direction::BPrime][y]
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::A => "a",
            Direction::APrime => "a'",
            Direction::B => "b",
            Direction::BPrime => "b'",
        })
    }
}

/// `left = right` (`same`) or `left = −right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub left: Direction,
    pub right: Direction,
    pub same: bool,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.same { "" } else { "-" };
        write!(f, "{} = {sign}{}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Deduction {
    /// A ±1 correlator read as a direction relation.
    Asserted { relation: Relation, correlator: (usize, usize) },
    /// A relation forced by earlier assertions, with the chain used.
    Implied { relation: Relation, via: Vec<Relation> },
    /// The implied relation disagrees with what the correlator asserts.
    Contradiction { implied: Relation, asserted: Relation, correlator: (usize, usize) },
}

impl fmt::Display for Deduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deduction::Asserted { relation, correlator: (x, y) } => {
                write!(f, "E({},{}) = {:+} asserts {relation}", Direction::alice(*x), Direction::bob(*y), if relation.same { 1 } else { -1 })
            }
            Deduction::Implied { relation, via } => {
                let chain: Vec<String> = via.iter().map(ToString::to_string).collect();
                write!(f, "{} => {relation}", chain.join(", "))
            }
            Deduction::Contradiction { implied, asserted, correlator: (x, y) } => write!(
                f,
                "E({},{}) requires {asserted}, contradicting {implied}",
                Direction::alice(*x),
                Direction::bob(*y)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConservationVerdict {
    /// A consistent assignment exists; `orientation[d]` is ±1 relative to `a`.
    Consistent { trace: Vec<Deduction>, orientation: [i8; 4] },
    Inconsistent { trace: Vec<Deduction> },
    /// Some correlator is not ±1.
    NotApplicable { reason: String },
}

impl ConservationVerdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, ConservationVerdict::Consistent { .. })
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self, ConservationVerdict::Inconsistent { .. })
    }

    pub fn trace(&self) -> &[Deduction] {
        match self {
            ConservationVerdict::Consistent { trace, .. } | ConservationVerdict::Inconsistent { trace } => trace,
            ConservationVerdict::NotApplicable { .. } => &[],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ConservationVerdict::Consistent { .. } => "consistent",
            ConservationVerdict::Inconsistent { .. } => "inconsistent",
            ConservationVerdict::NotApplicable { .. } => "not_applicable",
        }
    }
}

/// Finds a chain of relations from `from` to `to`; returns the composed sign
/// and the relations in order.
fn find_chain(edges: &[Relation], from: Direction, to: Direction) -> Option<(bool, Vec<Relation>)> {
    let mut prev: [Option<(Direction, Relation)>; 4] = [None; 4];
    let mut seen = [false; 4];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from.index()] = true;
    while let Some(node) = queue.pop_front() {
        if node == to {
            let mut chain = Vec::new();
            let mut cur = to;
            while cur != from {
                let (p, rel) = prev[cur.index()].expect("visited nodes have a predecessor");
                chain.push(rel);
                cur = p;
            }
            chain.reverse();
            let same = chain.iter().filter(|r| !r.same).count() % 2 == 0;
            return Some((same, chain));
        }
        for rel in edges {
            let next = if rel.left == node {
                rel.right
            } else if rel.right == node {
                rel.left
            } else {
                continue;
            };
            if !seen[next.index()] {
                seen[next.index()] = true;
                prev[next.index()] = Some((node, *rel));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Reads each ±1 correlator as "same direction" / "antipodal directions" and
/// checks that the four relations can hold together.
pub fn conservation_filter(b: &BehaviorBox) -> ConservationVerdict {
    let e = b.correlators();
    for (x, row) in e.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            if (v.abs() - 1.0).abs() > EXACT_TOL {
                return ConservationVerdict::NotApplicable {
                    reason: format!(
                        "correlator E({},{}) = {v} is not ±1",
                        Direction::alice(x),
                        Direction::bob(y)
                    ),
                };
            }
        }
    }

    let mut edges: Vec<Relation> = Vec::new();
    let mut trace = Vec::new();
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let asserted = Relation { left: Direction::alice(x), right: Direction::bob(y), same: e[x][y] > 0.0 };
        match find_chain(&edges, asserted.left, asserted.right) {
            Some((same, via)) => {
                let implied = Relation { same, ..asserted };
                trace.push(Deduction::Implied { relation: implied, via });
                if same != asserted.same {
                    trace.push(Deduction::Contradiction { implied, asserted, correlator: (x, y) });
                    return ConservationVerdict::Inconsistent { trace };
                }
                trace.push(Deduction::Asserted { relation: asserted, correlator: (x, y) });
            }
            None => {
                trace.push(Deduction::Asserted { relation: asserted, correlator: (x, y) });
                edges.push(asserted);
            }
        }
    }

    let mut orientation = [1i8; 4];
    for d in [Direction::APrime, Direction::B, Direction::BPrime] {
        let (same, _) = find_chain(&edges, Direction::A, d).expect("all four labels are connected");
        orientation[d.index()] = if same { 1 } else { -1 };
    }
    ConservationVerdict::Consistent { trace, orientation }
}

/// Canonical singlet settings in one plane: Alice {0, π/2}, Bob {π/4, 3π/4}.
pub fn canonical_singlet_box() -> BehaviorBox {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    quantum_box_in_plane(BellKind::Singlet, [0.0, FRAC_PI_2], [FRAC_PI_4, 3.0 * FRAC_PI_4])
        .expect("in-plane directions are unit vectors")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanResult {
    pub resolution: usize,
    pub points: usize,
    pub max_value: f64,
    /// Alice `[α0, α1]` and Bob `[β0, β1]` at the maximum.
    pub argmax_alice: [f64; 2],
    pub argmax_bob: [f64; 2],
}

/// In-plane CHSH scan on an `n × n` grid with step `π/n`: Alice at `{0, u}`,
/// Bob at `{v, u + v}`. The grid contains the canonical optimum whenever `n`
/// is divisible by 4.
pub fn chsh_scan(kind: BellKind, resolution: usize) -> Result<ScanResult> {
    if resolution == 0 {
        return Err(Error::Domain("scan resolution must be at least 1".into()));
    }
    let step = std::f64::consts::PI / resolution as f64;
    let best = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let (u, v) = ((k / resolution) as f64 * step, (k % resolution) as f64 * step);
            let alice = [0.0, u];
            let bob = [v, u + v];
            quantum_box_in_plane(kind, alice, bob).map(|b| (chsh_value(&b).value, alice, bob))
        })
        .try_reduce(
            || (f64::NEG_INFINITY, [0.0; 2], [0.0; 2]),
            |p, q| Ok(if q.0 > p.0 { q } else { p }),
        )?;
    Ok(ScanResult {
        resolution,
        points: resolution * resolution,
        max_value: best.0,
        argmax_alice: best.1,
        argmax_bob: best.2,
    })
}
