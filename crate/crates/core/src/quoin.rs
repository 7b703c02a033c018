//! Quoin Mechanics, the rigging enumeration and the parity guessing game.
//!
//! Game rules: the dealer sets a bit per lane for each player; Alice guesses
//! the parity of the number of lanes where both players hold a 1. Bob may buy
//! bits of communication at one chip each. With `b` bits bought a correct
//! guess is paid `chips_start − b` by the House (net `chips_start − 2b`); a
//! wrong guess forfeits all `chips_start` chips.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boxes::BehaviorBox;
use crate::measure::Outcome;
use crate::rng::{trial_rng, Domain};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coin {
    H,
    T,
}

impl Coin {
    pub const BOTH: [Coin; 2] = [Coin::H, Coin::T];

    pub fn other(self) -> Self {
        match self {
            Coin::H => Coin::T,
            Coin::T => Coin::H,
        }
    }

    /// Dealer bit 1 starts a quoin on H, 0 on T.
    pub fn from_bit(bit: u8) -> Self {
        if bit == 1 {
            Coin::H
        } else {
            Coin::T
        }
    }

    pub fn outcome(self) -> Outcome {
        match self {
            Coin::H => Outcome::Plus,
            Coin::T => Outcome::Minus,
        }
    }
}

impl fmt::Display for Coin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coin::H => "H",
            Coin::T => "T",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Correlation {
    Equal,
    Unequal,
}

impl Correlation {
    pub fn of(pair: (Coin, Coin)) -> Self {
        if pair.0 == pair.1 {
            Correlation::Equal
        } else {
            Correlation::Unequal
        }
    }
}

/// Outcome rule for a pair of entangled coins. Every start other than HH
/// lands equal; the HH row is what distinguishes quoins from quantum coins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuoinMechanics {
    pub hh: Correlation,
}

impl QuoinMechanics {
    /// HH → unequal, everything else → equal.
    pub fn quoin() -> Self {
        Self { hh: Correlation::Unequal }
    }

    /// Every start, HH included, lands equal.
    pub fn quantum_coin() -> Self {
        Self { hh: Correlation::Equal }
    }

    /// Required correlation for a start pair `(alice, bob)`.
    pub fn rule(&self, start: (Coin, Coin)) -> Correlation {
        if start == (Coin::H, Coin::H) {
            self.hh
        } else {
            Correlation::Equal
        }
    }

    /// The two allowed outcome pairs, each with probability 1/2.
    pub fn outcomes(&self, start: (Coin, Coin)) -> [(Coin, Coin); 2] {
        match self.rule(start) {
            Correlation::Equal => [(Coin::H, Coin::H), (Coin::T, Coin::T)],
            Correlation::Unequal => [(Coin::H, Coin::T), (Coin::T, Coin::H)],
        }
    }

    /// The mechanics as a behavior box: setting 0 = T start, 1 = H start,
    /// outcome +1 = H.
    pub fn to_box(&self) -> BehaviorBox {
        let start = |s: usize| if s == 1 { Coin::H } else { Coin::T };
        BehaviorBox::from_fn(|x, y, a, b| {
            let allowed = self.outcomes((start(x), start(y)));
            if allowed.iter().any(|&(ca, cb)| ca.outcome() == a && cb.outcome() == b) {
                0.5
            } else {
                0.0
            }
        })
        .expect("mechanics boxes are normalized")
    }
}

/// Flips one entangled pair started at `(alice, bob)`. Alice's coin is a
/// fair draw; Bob's follows from the rule.
pub fn flip_pair(mech: &QuoinMechanics, start: (Coin, Coin), seed: u64, trial: u64) -> (Coin, Coin) {
    let alice = if trial_rng(seed, Domain::QuoinFlip, trial).random::<bool>() { Coin::H } else { Coin::T };
    let bob = match mech.rule(start) {
        Correlation::Equal => alice,
        Correlation::Unequal => alice.other(),
    };
    (alice, bob)
}

/// A deterministic rule for one coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rigging {
    /// Always ends heads.
    #[serde(rename = "H")]
    Heads,
    /// Always ends tails.
    #[serde(rename = "T")]
    Tails,
    /// Ends as it started.
    #[serde(rename = "S")]
    Same,
    /// Ends opposite to how it started.
    #[serde(rename = "O")]
    Other,
}

impl Rigging {
    pub const ALL: [Rigging; 4] = [Rigging::Heads, Rigging::Tails, Rigging::Same, Rigging::Other];

    pub fn apply(self, start: Coin) -> Coin {
        match self {
            Rigging::Heads => Coin::H,
            Rigging::Tails => Coin::T,
            Rigging::Same => start,
            Rigging::Other => start.other(),
        }
    }
}

impl fmt::Display for Rigging {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rigging::Heads => "H",
            Rigging::Tails => "T",
            Rigging::Same => "S",
            Rigging::Other => "O",
        })
    }
}

/// A cell of the mechanics rule broken by a rigging pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellViolation {
    pub start: (Coin, Coin),
    pub outcome: (Coin, Coin),
    pub required: Correlation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiggingFailure {
    /// `(alice, bob)` riggings.
    pub pair: (Rigging, Rigging),
    pub violations: Vec<CellViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiggingReport {
    pub pairs_checked: usize,
    pub valid: Vec<(Rigging, Rigging)>,
    pub failures: Vec<RiggingFailure>,
}

/// Checks a rigging pair against every start configuration.
pub fn check_rigging(mech: &QuoinMechanics, pair: (Rigging, Rigging)) -> Vec<CellViolation> {
    let mut violations = Vec::new();
    for alice in Coin::BOTH {
        for bob in Coin::BOTH {
            let start = (alice, bob);
            let outcome = (pair.0.apply(alice), pair.1.apply(bob));
            let required = mech.rule(start);
            if Correlation::of(outcome) != required {
                violations.push(CellViolation { start, outcome, required });
            }
        }
    }
    violations
}

/// All 16 rigging pairs checked against quoin mechanics.
pub fn enumerate_riggings() -> RiggingReport {
    enumerate_riggings_for(&QuoinMechanics::quoin())
}

pub fn enumerate_riggings_for(mech: &QuoinMechanics) -> RiggingReport {
    let mut valid = Vec::new();
    let mut failures = Vec::new();
    for a in Rigging::ALL {
        for b in Rigging::ALL {
            let violations = check_rigging(mech, (a, b));
            if violations.is_empty() {
                valid.push((a, b));
            } else {
                failures.push(RiggingFailure { pair: (a, b), violations });
            }
        }
    }
    RiggingReport { pairs_checked: 16, valid, failures }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: usize) -> Self {
        if count & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "even" | "e" | "0" => Ok(Parity::Even),
            "odd" | "o" | "1" => Ok(Parity::Odd),
            other => Err(Error::Domain(format!("expected even/odd, got '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Strategy {
    /// Flip quoins by dealt bit, Bob sends the parity of his heads.
    Quoin,
    /// Alice buys Bob's bits in up to `k` lanes where she holds a 1.
    ClassicalBits { k: usize },
    /// Uniform guess, no communication.
    Random,
}

impl Strategy {
    pub fn label(&self) -> String {
        match self {
            Strategy::Quoin => "quoin".into(),
            Strategy::ClassicalBits { k } => format!("classical:{k}"),
            Strategy::Random => "random".into(),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    /// `quoin`, `random`, `classical` (k = 3) or `classical:K`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "quoin" => Ok(Strategy::Quoin),
            "random" => Ok(Strategy::Random),
            "classical" => Ok(Strategy::ClassicalBits { k: 3 }),
            other => {
                let k = other
                    .strip_prefix("classical:")
                    .or_else(|| other.strip_prefix("classical-"))
                    .ok_or_else(|| Error::Domain(format!("unknown strategy '{s}'")))?;
                let k = k.parse().map_err(|_| Error::Domain(format!("bad bit count in '{s}'")))?;
                Ok(Strategy::ClassicalBits { k })
            }
        }
    }
}

/// How the dealer sets the bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DealerModel {
    /// Probability of each dealt bit being 1.
    pub p_one: f64,
    /// Redeal Alice's bits until she holds at least one 1.
    pub alice_nonzero: bool,
}

impl Default for DealerModel {
    fn default() -> Self {
        Self { p_one: 0.5, alice_nonzero: true }
    }
}

impl DealerModel {
    /// Ten independent fair bits with no redeal.
    pub fn iid() -> Self {
        Self { p_one: 0.5, alice_nonzero: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameConfig {
    pub lanes: usize,
    pub chips_start: u32,
    pub dealer: DealerModel,
    pub mechanics: QuoinMechanics,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self { lanes: 5, chips_start: 6, dealer: DealerModel::default(), mechanics: QuoinMechanics::quoin() }
    }
}

impl GameConfig {
    pub fn quantum_coin() -> Self {
        Self { mechanics: QuoinMechanics::quantum_coin(), ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.lanes == 0 || self.lanes > 63 {
            return Err(Error::Domain(format!("lane count {} outside 1..=63", self.lanes)));
        }
        if !(0.0..=1.0).contains(&self.dealer.p_one) {
            return Err(Error::Domain(format!("dealer p_one = {} outside [0, 1]", self.dealer.p_one)));
        }
        if self.dealer.alice_nonzero && self.dealer.p_one == 0.0 {
            return Err(Error::Domain("dealer cannot give Alice a 1 with p_one = 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deal {
    pub alice: Vec<u8>,
    pub bob: Vec<u8>,
}

impl Deal {
    pub fn new(alice: Vec<u8>, bob: Vec<u8>) -> Result<Self> {
        if alice.len() != bob.len() || alice.is_empty() {
            return Err(Error::Domain("both players need the same non-zero number of lanes".into()));
        }
        if alice.iter().chain(&bob).any(|&b| b > 1) {
            return Err(Error::Domain("dealt values must be 0 or 1".into()));
        }
        Ok(Self { alice, bob })
    }

    /// Bob 1,0,1,1,0 / Alice 1,0,0,1,1.
    pub fn worked_example() -> Self {
        Self { alice: vec![1, 0, 0, 1, 1], bob: vec![1, 0, 1, 1, 0] }
    }

    pub fn lanes(&self) -> usize {
        self.alice.len()
    }

    pub fn double_ones(&self) -> usize {
        self.alice.iter().zip(&self.bob).filter(|&(&a, &b)| a == 1 && b == 1).count()
    }

    pub fn target(&self) -> Parity {
        Parity::of(self.double_ones())
    }

    /// Deal for game `game` under `seed`.
    pub fn draw(dealer: &DealerModel, lanes: usize, seed: u64, game: u64) -> Self {
        let mut rng = trial_rng(seed, Domain::Dealer, game);
        let bits = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<u8> {
            (0..lanes).map(|_| u8::from(rng.random::<f64>() < dealer.p_one)).collect()
        };
        let bob = bits(&mut rng);
        let mut alice = bits(&mut rng);
        while dealer.alice_nonzero && alice.iter().all(|&b| b == 0) {
            alice = bits(&mut rng);
        }
        Self { alice, bob }
    }
}

/// Per-lane quoin flips for game `game`; lane `l` uses trial `game·lanes + l`.
pub fn flip_lanes(mech: &QuoinMechanics, deal: &Deal, seed: u64, game: u64) -> Vec<(Coin, Coin)> {
    let lanes = deal.lanes() as u64;
    deal.alice
        .iter()
        .zip(&deal.bob)
        .enumerate()
        .map(|(l, (&a, &b))| {
            flip_pair(mech, (Coin::from_bit(a), Coin::from_bit(b)), seed, game * lanes + l as u64)
        })
        .collect()
}

/// Parity of the total number of heads across both players' coins.
pub fn combined_heads_parity(flips: &[(Coin, Coin)]) -> Parity {
    Parity::of(flips.iter().map(|&(a, b)| usize::from(a == Coin::H) + usize::from(b == Coin::H)).sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "protocol", rename_all = "snake_case")]
pub enum Transcript {
    Quoin {
        alice_flips: Vec<Coin>,
        bob_flips: Vec<Coin>,
        /// 1 if Bob saw an odd number of heads.
        message: u8,
    },
    Classical {
        /// 1-based lane numbers Alice asked about.
        requested_lanes: Vec<usize>,
        received: Vec<u8>,
        /// Lanes where Alice holds a 1 but did not ask.
        unknown_lanes: Vec<usize>,
    },
    Random,
}

/// One round of the guessing game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub game: u64,
    pub strategy: Strategy,
    pub bob_bits: Vec<u8>,
    pub alice_bits: Vec<u8>,
    pub target_parity: Parity,
    pub bits_bought: u32,
    pub guess: Parity,
    pub correct: bool,
    pub chips_start: u32,
    /// Chips paid by the House; zero on a loss.
    pub payout: i64,
    pub chips_net: i64,
    pub transcript: Transcript,
}

/// `(payout, net)` for a round.
pub fn settle(chips_start: u32, bits_bought: u32, correct: bool) -> (i64, i64) {
    let start = i64::from(chips_start);
    let bought = i64::from(bits_bought);
    if correct {
        let payout = start - bought;
        (payout, payout - bought)
    } else {
        (0, -start)
    }
}

/// Probability that an unknown lane count is odd given `m` lanes, each a
/// double-one with probability `q`.
fn odd_probability(m: usize, q: f64) -> f64 {
    0.5 * (1.0 - (1.0 - 2.0 * q).powi(m as i32))
}

/// Plays one round on a given deal.
pub fn play_deal(strategy: Strategy, config: &GameConfig, deal: &Deal, mech_seed: u64, game: u64) -> Result<GameRecord> {
    config.validate()?;
    if deal.lanes() != config.lanes {
        return Err(Error::Domain(format!("deal has {} lanes, config expects {}", deal.lanes(), config.lanes)));
    }
    if let Strategy::ClassicalBits { k } = strategy {
        if k > config.lanes {
            return Err(Error::Domain(format!("classical bit budget {k} exceeds {} lanes", config.lanes)));
        }
    }
    if u64::from(config.chips_start) < config.lanes as u64 {
        return Err(Error::Domain("not enough chips to buy a bit per lane".into()));
    }

    let (guess, bits_bought, transcript) = match strategy {
        Strategy::Quoin => {
            let flips = flip_lanes(&config.mechanics, deal, mech_seed, game);
            let bob_heads = flips.iter().filter(|f| f.1 == Coin::H).count();
            let alice_heads = flips.iter().filter(|f| f.0 == Coin::H).count();
            let message = (bob_heads % 2) as u8;
            let guess = Parity::of(alice_heads + usize::from(message));
            let transcript = Transcript::Quoin {
                alice_flips: flips.iter().map(|f| f.0).collect(),
                bob_flips: flips.iter().map(|f| f.1).collect(),
                message,
            };
            (guess, 1, transcript)
        }
        Strategy::ClassicalBits { k } => {
            let ones: Vec<usize> = (0..deal.lanes()).filter(|&l| deal.alice[l] == 1).collect();
            let (asked, unknown) = ones.split_at(ones.len().min(k));
            let received: Vec<u8> = asked.iter().map(|&l| deal.bob[l]).collect();
            let known = Parity::of(received.iter().filter(|&&b| b == 1).count());
            let p_odd_unknown = odd_probability(unknown.len(), config.dealer.p_one);
            let p_target_even = match known {
                Parity::Even => 1.0 - p_odd_unknown,
                Parity::Odd => p_odd_unknown,
            };
            let guess = if p_target_even >= 0.5 { Parity::Even } else { Parity::Odd };
            let transcript = Transcript::Classical {
                requested_lanes: asked.iter().map(|l| l + 1).collect(),
                received,
                unknown_lanes: unknown.iter().map(|l| l + 1).collect(),
            };
            (guess, asked.len() as u32, transcript)
        }
        Strategy::Random => {
            let odd: bool = trial_rng(mech_seed, Domain::Guess, game).random();
            (if odd { Parity::Odd } else { Parity::Even }, 0, Transcript::Random)
        }
    };

    let target_parity = deal.target();
    let correct = guess == target_parity;
    let (payout, chips_net) = settle(config.chips_start, bits_bought, correct);
    Ok(GameRecord {
        game,
        strategy,
        bob_bits: deal.bob.clone(),
        alice_bits: deal.alice.clone(),
        target_parity,
        bits_bought,
        guess,
        correct,
        chips_start: config.chips_start,
        payout,
        chips_net,
        transcript,
    })
}

/// Deals game `game` from `dealer_seed` and plays it.
pub fn play_round(strategy: Strategy, config: &GameConfig, dealer_seed: u64, mech_seed: u64, game: u64) -> Result<GameRecord> {
    config.validate()?;
    let deal = Deal::draw(&config.dealer, config.lanes, dealer_seed, game);
    play_deal(strategy, config, &deal, mech_seed, game)
}

pub fn play_game(strategy: Strategy, config: &GameConfig, dealer_seed: u64, mech_seed: u64) -> Result<GameRecord> {
    play_round(strategy, config, dealer_seed, mech_seed, 0)
}

/// Plays `games` rounds; dealer and coins share `seed` but draw from separate
/// random domains.
pub fn simulate(strategy: Strategy, config: &GameConfig, games: u64, seed: u64) -> Result<Vec<GameRecord>> {
    if games == 0 {
        return Err(Error::Domain("number of games must be at least 1".into()));
    }
    (0..games).into_par_iter().map(|g| play_round(strategy, config, seed, seed, g)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub games: u64,
    pub wins: u64,
    pub win_rate: f64,
    pub mean_chips_net: f64,
    /// `3·sqrt(w(1−w)/n)`.
    pub ci_halfwidth: f64,
    /// Three standard errors of the mean net chips.
    pub chips_ci_halfwidth: f64,
}

pub fn summarize(records: &[GameRecord]) -> MonteCarloSummary {
    let n = records.len() as f64;
    let wins = records.iter().filter(|r| r.correct).count() as u64;
    let win_rate = wins as f64 / n;
    let mean = records.iter().map(|r| r.chips_net as f64).sum::<f64>() / n;
    let var = if records.len() > 1 {
        records.iter().map(|r| (r.chips_net as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    MonteCarloSummary {
        games: records.len() as u64,
        wins,
        win_rate,
        mean_chips_net: mean,
        ci_halfwidth: 3.0 * (win_rate * (1.0 - win_rate) / n).sqrt(),
        chips_ci_halfwidth: 3.0 * (var / n).sqrt(),
    }
}

pub fn monte_carlo(strategy: Strategy, config: &GameConfig, games: u64, seed: u64) -> Result<MonteCarloSummary> {
    Ok(summarize(&simulate(strategy, config, games, seed)?))
}

/// One JSON object per line.
pub fn to_jsonl(records: &[GameRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxes::pr_box;

    #[test]
    fn quoin_hh_never_equal() {
        let mech = QuoinMechanics::quoin();
        let n = 10_000u64;
        let mut alice_heads = 0;
        for t in 0..n {
            let (a, b) = flip_pair(&mech, (Coin::H, Coin::H), 3, t);
            assert_ne!(a, b);
            alice_heads += u64::from(a == Coin::H);
        }
        let band = 3.0 * (0.25 / n as f64).sqrt();
        assert!((alice_heads as f64 / n as f64 - 0.5).abs() < band);
    }

    #[test]
    fn quoin_tt_never_unequal() {
        let mech = QuoinMechanics::quoin();
        for t in 0..10_000 {
            let (a, b) = flip_pair(&mech, (Coin::T, Coin::T), 3, t);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn flip_is_deterministic() {
        let mech = QuoinMechanics::quoin();
        assert_eq!(flip_pair(&mech, (Coin::H, Coin::T), 9, 41), flip_pair(&mech, (Coin::H, Coin::T), 9, 41));
    }

    #[test]
    fn quoin_mechanics_is_the_pr_box() {
        assert_eq!(QuoinMechanics::quoin().to_box(), pr_box());
    }

    #[test]
    fn rigging_examples() {
        let mech = QuoinMechanics::quoin();
        let pair = (Rigging::Same, Rigging::Other);
        let hh = (pair.0.apply(Coin::H), pair.1.apply(Coin::H));
        assert_eq!(hh, (Coin::H, Coin::T));
        assert_eq!(Correlation::of(hh), mech.rule((Coin::H, Coin::H)));
        let tt = (pair.0.apply(Coin::T), pair.1.apply(Coin::T));
        assert_eq!(tt, (Coin::T, Coin::H));
        let violations = check_rigging(&mech, pair);
        assert!(violations.iter().any(|v| v.start == (Coin::T, Coin::T) && v.required == Correlation::Equal));

        let report = enumerate_riggings();
        assert!(report.valid.is_empty());
        assert_eq!(report.failures.len(), 16);
    }

    #[test]
    fn quantum_coin_admits_riggings() {
        let report = enumerate_riggings_for(&QuoinMechanics::quantum_coin());
        assert_eq!(report.valid, vec![(Rigging::Heads, Rigging::Heads), (Rigging::Tails, Rigging::Tails)]);
    }

    #[test]
    fn worked_example_quoin() {
        let deal = Deal::worked_example();
        assert_eq!(deal.double_ones(), 2);
        let r = play_deal(Strategy::Quoin, &GameConfig::default(), &deal, 11, 0).unwrap();
        assert_eq!(r.target_parity, Parity::Even);
        assert_eq!(r.guess, Parity::Even);
        assert_eq!(r.bits_bought, 1);
        assert_eq!(r.payout, 5);
        assert_eq!(r.chips_net, 4);
    }

    #[test]
    fn worked_example_three_classical_bits() {
        let r = play_deal(Strategy::ClassicalBits { k: 3 }, &GameConfig::default(), &Deal::worked_example(), 0, 0)
            .unwrap();
        match &r.transcript {
            Transcript::Classical { requested_lanes, received, unknown_lanes } => {
                assert_eq!(requested_lanes, &vec![1, 4, 5]);
                assert_eq!(received, &vec![1, 1, 0]);
                assert!(unknown_lanes.is_empty());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(r.guess, Parity::Even);
        assert!(r.correct);
        assert_eq!(r.bits_bought, 3);
        assert_eq!(r.payout, 3);
        assert_eq!(r.chips_net, 0);
    }

    #[test]
    fn all_zero_alice_is_even_for_free() {
        let deal = Deal::new(vec![0; 5], vec![1, 1, 0, 1, 0]).unwrap();
        for strategy in [Strategy::ClassicalBits { k: 3 }, Strategy::ClassicalBits { k: 0 }] {
            let r = play_deal(strategy, &GameConfig::default(), &deal, 0, 0).unwrap();
            assert_eq!(r.target_parity, Parity::Even);
            assert_eq!(r.guess, Parity::Even);
            assert_eq!(r.bits_bought, 0);
            assert_eq!(r.chips_net, 6);
        }
        let q = play_deal(Strategy::Quoin, &GameConfig::default(), &deal, 5, 0).unwrap();
        assert_eq!(q.target_parity, Parity::Even);
        assert!(q.correct);
    }

    #[test]
    fn classical_fallback_guesses_even_on_ties() {
        let deal = Deal::new(vec![1, 1, 1, 1, 1], vec![1, 0, 0, 0, 1]).unwrap();
        let r = play_deal(Strategy::ClassicalBits { k: 1 }, &GameConfig::default(), &deal, 0, 0).unwrap();
        // lane 1 is a known double one, the other four lanes are a coin toss
        assert_eq!(r.guess, Parity::Even);
        let r = play_deal(Strategy::ClassicalBits { k: 0 }, &GameConfig::default(), &deal, 0, 0).unwrap();
        assert_eq!(r.guess, Parity::Even);
        assert_eq!(r.bits_bought, 0);
    }

    #[test]
    fn invalid_k_rejected() {
        let r = play_deal(Strategy::ClassicalBits { k: 6 }, &GameConfig::default(), &Deal::worked_example(), 0, 0);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn settle_ledger() {
        assert_eq!(settle(6, 1, true), (5, 4));
        assert_eq!(settle(6, 3, true), (3, 0));
        assert_eq!(settle(6, 0, true), (6, 6));
        assert_eq!(settle(6, 2, false), (0, -6));
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("quoin".parse::<Strategy>().unwrap(), Strategy::Quoin);
        assert_eq!("classical:2".parse::<Strategy>().unwrap(), Strategy::ClassicalBits { k: 2 });
        assert_eq!("classical".parse::<Strategy>().unwrap(), Strategy::ClassicalBits { k: 3 });
        assert!("telepathy".parse::<Strategy>().is_err());
    }

    #[test]
    fn dealer_respects_alice_nonzero() {
        let dealer = DealerModel { p_one: 0.05, alice_nonzero: true };
        for g in 0..500 {
            let d = Deal::draw(&dealer, 5, 1, g);
            assert!(d.alice.contains(&1));
        }
        assert_eq!(Deal::draw(&dealer, 5, 1, 7), Deal::draw(&dealer, 5, 1, 7));
    }

    #[test]
    fn records_serialize_as_json_lines() {
        let records = simulate(Strategy::Quoin, &GameConfig::default(), 3, 2).unwrap();
        let text = to_jsonl(&records);
        assert_eq!(text.lines().count(), 3);
        for (line, rec) in text.lines().zip(&records) {
            let back: GameRecord = serde_json::from_str(line).unwrap();
            assert_eq!(&back, rec);
        }
    }
}
