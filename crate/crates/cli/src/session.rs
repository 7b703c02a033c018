//! Interactive game where the user plays Alice.

use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};

use qubitlab_core::quoin::{flip_lanes, settle, Coin, Deal, GameConfig, Parity, Transcript};
use qubitlab_core::{GameRecord, Strategy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionSummary {
    pub records: Vec<GameRecord>,
    pub ledger: i64,
}

impl SessionSummary {
    pub fn wins(&self) -> usize {
        self.records.iter().filter(|r| r.correct).count()
    }
}

enum Step {
    Guess(Parity),
    Quit,
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

fn read_line(input: &mut impl BufRead) -> io::Result<Option<String>> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_ascii_lowercase()))
}

/// Runs games until the player quits or input ends. Game `g` uses the same
/// deal and quoin flips as game `g` of `game simulate` with the same seed.
pub fn run_session(
    strategy: Strategy,
    config: &GameConfig,
    seed: u64,
    mut input: impl BufRead,
    mut out: impl Write,
) -> io::Result<SessionSummary> {
    let mut summary = SessionSummary { records: Vec::new(), ledger: 0 };
    writeln!(out, "You are Alice. Guess the parity of lanes where you and Bob both hold a 1.")?;
    writeln!(out, "You start each game with {} chips; each bit from Bob costs one chip.", config.chips_start)?;
    match strategy {
        Strategy::Quoin => writeln!(out, "Commands: bit (Bob's quoin message), even, odd, quit")?,
        Strategy::ClassicalBits { k } => writeln!(out, "Commands: ask N (Bob's value in lane N, up to {k}), even, odd, quit")?,
        Strategy::Random => writeln!(out, "No messages from Bob this time. Commands: even, odd, quit")?,
    }
    for game in 0u64.. {
        let deal = Deal::draw(&config.dealer, config.lanes, seed, game);
        let flips = flip_lanes(&config.mechanics, &deal, seed, game);
        writeln!(out, "\nGame {}. Your bits: {}", game + 1, bits(&deal.alice))?;
        if strategy == Strategy::Quoin {
            let mine: Vec<String> = flips.iter().map(|f| f.0.to_string()).collect();
            writeln!(out, "Your quoins landed: {}", mine.join(" "))?;
        }
        let mut message = None;
        let mut asked: BTreeSet<usize> = BTreeSet::new();
        let step = loop {
            write!(out, "> ")?;
            out.flush()?;
            let Some(line) = read_line(&mut input)? else { break Step::Quit };
            let mut words = line.split_whitespace();
            match (words.next(), words.next()) {
                (Some("quit" | "q"), _) => break Step::Quit,
                (Some(w), None) if w.parse::<Parity>().is_ok() && !w.chars().all(|c| c.is_ascii_digit()) => {
                    break Step::Guess(w.parse().expect("checked"));
                }
                (Some("bit"), None) if strategy == Strategy::Quoin => {
                    let m = *message.get_or_insert_with(|| {
                        (flips.iter().filter(|f| f.1 == Coin::H).count() % 2) as u8
                    });
                    writeln!(out, "Bob sends {m}.")?;
                }
                (Some("ask"), Some(n)) => match (strategy, n.parse::<usize>()) {
                    (Strategy::ClassicalBits { k }, Ok(lane)) if (1..=config.lanes).contains(&lane) => {
                        if asked.contains(&lane) || asked.len() < k {
                            asked.insert(lane);
                            writeln!(out, "Bob's lane {lane}: {}", deal.bob[lane - 1])?;
                        } else {
                            writeln!(out, "You have already bought {k} bits.")?;
                        }
                    }
                    (Strategy::ClassicalBits { .. }, _) => writeln!(out, "Lanes are numbered 1 to {}.", config.lanes)?,
                    _ => writeln!(out, "Bob cannot send lane values in this game.")?,
                },
                _ => writeln!(out, "Unrecognized command.")?,
            }
        };
        let guess = match step {
            Step::Quit => break,
            Step::Guess(g) => g,
        };
        let bits_bought = match strategy {
            Strategy::Quoin => u32::from(message.is_some()),
            _ => asked.len() as u32,
        };
        let target = deal.target();
        let correct = guess == target;
        let (payout, chips_net) = settle(config.chips_start, bits_bought, correct);
        summary.ledger += chips_net;
        writeln!(out, "Bob's bits: {}", bits(&deal.bob))?;
        if correct {
            writeln!(out, "Correct, the parity is {target}. The House pays {payout} (net {chips_net:+}).")?;
        } else {
            writeln!(out, "Wrong, the parity is {target}. You lose {} chips.", config.chips_start)?;
        }
        writeln!(out, "Ledger: {:+}", summary.ledger)?;
        let transcript = match strategy {
            Strategy::Quoin => Transcript::Quoin {
                alice_flips: flips.iter().map(|f| f.0).collect(),
                bob_flips: flips.iter().map(|f| f.1).collect(),
                message: message.unwrap_or(0),
            },
            Strategy::ClassicalBits { .. } => Transcript::Classical {
                requested_lanes: asked.iter().copied().collect(),
                received: asked.iter().map(|&l| deal.bob[l - 1]).collect(),
                unknown_lanes: (1..=config.lanes).filter(|l| deal.alice[l - 1] == 1 && !asked.contains(l)).collect(),
            },
            Strategy::Random => Transcript::Random,
        };
        summary.records.push(GameRecord {
            game,
            strategy,
            bob_bits: deal.bob.clone(),
            alice_bits: deal.alice.clone(),
            target_parity: target,
            bits_bought,
            guess,
            correct,
            chips_start: config.chips_start,
            payout,
            chips_net,
            transcript,
        });
        write!(out, "Play again? [y/N] ")?;
        out.flush()?;
        match read_line(&mut input)? {
            Some(a) if a == "y" || a == "yes" => continue,
            _ => break,
        }
    }
    writeln!(out, "\n{} games, {} won, net {:+} chips.", summary.records.len(), summary.wins(), summary.ledger)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qubitlab_core::quoin::play_round;
    use std::io::Cursor;

    fn play(strategy: Strategy, script: &str) -> (SessionSummary, String) {
        let mut out = Vec::new();
        let s = run_session(strategy, &GameConfig::default(), 11, Cursor::new(script.to_string()), &mut out).unwrap();
        (s, String::from_utf8(out).unwrap())
    }

    #[test]
    fn quoin_protocol_nets_four() {
        let expected = play_round(Strategy::Quoin, &GameConfig::default(), 11, 11, 0).unwrap();
        let (s, text) = play(Strategy::Quoin, &format!("bit\n{}\nn\n", expected.guess));
        assert_eq!(s.records.len(), 1);
        assert_eq!(s.records[0], expected);
        assert_eq!(s.ledger, 4);
        assert!(text.contains("Ledger: +4"));
    }

    #[test]
    fn wrong_guess_loses_stake() {
        let target = play_round(Strategy::Quoin, &GameConfig::default(), 11, 11, 0).unwrap().target_parity;
        let (s, _) = play(Strategy::Quoin, &format!("{}\n", target.flip()));
        assert_eq!(s.ledger, -6);
    }

    #[test]
    fn classical_budget_enforced() {
        let (s, text) = play(Strategy::ClassicalBits { k: 1 }, "ask 1\nask 2\nask 9\neven\n");
        assert!(text.contains("already bought 1 bits"));
        assert!(text.contains("Lanes are numbered 1 to 5"));
        assert_eq!(s.records[0].bits_bought, 1);
    }

    #[test]
    fn eof_ends_without_settling() {
        let (s, _) = play(Strategy::Quoin, "bit\n");
        assert!(s.records.is_empty());
        assert_eq!(s.ledger, 0);
    }

    #[test]
    fn consecutive_games_follow_simulation_order() {
        let cfg = GameConfig::default();
        let g0 = play_round(Strategy::Quoin, &cfg, 11, 11, 0).unwrap();
        let g1 = play_round(Strategy::Quoin, &cfg, 11, 11, 1).unwrap();
        let (s, _) = play(Strategy::Quoin, &format!("bit\n{}\ny\nbit\n{}\nn\n", g0.guess, g1.guess));
        assert_eq!(s.records, vec![g0, g1]);
        assert_eq!(s.ledger, 8);
    }
}
