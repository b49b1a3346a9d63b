// SPDX-License-Identifier: Apache-2.0

//! Seeded differential fuzzing of [`apply_move`] against [`oracle_apply`].

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apply::{apply_move, ApplyOptions};
use crate::oracle::{oracle_apply, random_pseudo_move, PseudoMoveError};

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

/// Positions fuzz chains start from.
pub const SEED_POSITIONS: &[&str] = &[
    START_FEN,
    "7N/1b3RN1/7k/6b1/KBp4p/5q2/6Q1/7n w - - 0 1",
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1",
    "rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3",
    "n1n5/PPPk4/8/8/8/8/4Kppp/5N1N b - - 0 1",
    "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
    "4k3/8/8/8/8/8/8/4K2R w K - 0 1",
    "r3k2r/8/8/8/8/8/8/R3K2R b KQkq - 0 1",
    "1B6/2n5/p1N1P2R/P1K3N1/4Pk2/1Q2p2p/6nP/1B4R1 w - - 0 1",
    "rnbqkb1r/pp1p1pPp/8/2p1pP2/1P1P4/3P3P/P1P1P3/RNBQKBNR w KQkq e6 0 1",
];

const MIN_CHAIN: usize = 10;
const MAX_CHAIN: usize = 160;

/// Endless stream of `(fen, move)` pairs built from pseudo-move chains.
///
/// Chains are advanced with the array oracle, so the walk does not depend on
/// the implementation being tested. A chain restarts from a seed position
/// when it runs out or the side to move has no pieces.
pub struct Walker {
    rng: ChaCha8Rng,
    opts: ApplyOptions,
    current: Option<String>,
    remaining: usize,
    restarts: usize,
}

impl Walker {
    pub fn new(seed: u64, opts: ApplyOptions) -> Walker {
        Walker {
            rng: ChaCha8Rng::seed_from_u64(seed),
            opts,
            current: None,
            remaining: 0,
            restarts: 0,
        }
    }

    pub fn restarts(&self) -> usize {
        self.restarts
    }

    fn restart(&mut self) -> String {
        self.restarts += 1;
        self.remaining = self.rng.gen_range(MIN_CHAIN..=MAX_CHAIN);
        let i = self.rng.gen_range(0..SEED_POSITIONS.len());
        SEED_POSITIONS[i].to_string()
    }
}

impl Iterator for Walker {
    type Item = (String, String);

    fn next(&mut self) -> Option<(String, String)> {
        loop {
            let fen = match self.current.take() {
                Some(f) if self.remaining > 0 => f,
                _ => self.restart(),
            };
            let mv = match random_pseudo_move(&fen, self.rng.gen()) {
                Ok(mv) => mv,
                Err(PseudoMoveError::NoPieces) => continue,
                Err(e) => panic!("walker reached an unparsable position {fen:?}: {e}"),
            };
            self.remaining -= 1;
            match oracle_apply(&fen, &mv, self.opts) {
                Ok(next) => self.current = Some(next),
                Err(_) => self.current = None,
            }
            return Some((fen, mv));
        }
    }
}

/// One disagreement between the two paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub fen: String,
    pub mv: String,
    pub segment_path: Result<String, String>,
    pub array_path: Result<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub seed: u64,
    pub iterations: usize,
    pub opts: ApplyOptions,
    pub positions_visited: usize,
    pub restarts: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

fn describe(r: &Result<String, String>) -> String {
    match r {
        Ok(fen) => fen.clone(),
        Err(name) => format!("error {name}"),
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "fuzz seed={} iterations={} ep-mode={} clock-mode={} validation={}",
            self.seed, self.iterations, self.opts.ep_mode, self.opts.clock_mode, self.opts.validation
        )?;
        writeln!(f, "positions visited: {}", self.positions_visited)?;
        writeln!(f, "chains: {}", self.restarts)?;
        write!(f, "result: {} mismatches", self.mismatches)?;
        if let Some(m) = &self.first_mismatch {
            write!(
                f,
                "\nfirst mismatch:\n  fen:   {}\n  move:  {}\n  segment path: {}\n  array path:   {}",
                m.fen,
                m.mv,
                describe(&m.segment_path),
                describe(&m.array_path)
            )?;
        }
        Ok(())
    }
}

/// Compares both paths on one pair. Errors compare by name.
pub fn compare(fen: &str, mv: &str, opts: ApplyOptions) -> Option<Mismatch> {
    let segment_path = apply_move(fen, mv, opts)
        .map(|o| o.fen_after)
        .map_err(|e| e.name().to_string());
    let array_path = oracle_apply(fen, mv, opts).map_err(|e| e.name().to_string());
    (segment_path != array_path).then(|| Mismatch {
        fen: fen.to_string(),
        mv: mv.to_string(),
        segment_path,
        array_path,
    })
}

pub fn run(seed: u64, iterations: usize, opts: ApplyOptions) -> FuzzReport {
    let mut walker = Walker::new(seed, opts);
    let mut seen = HashSet::new();
    let mut mismatches = 0;
    let mut first_mismatch = None;
    for (fen, mv) in walker.by_ref().take(iterations) {
        if let Some(m) = compare(&fen, &mv, opts) {
            mismatches += 1;
            first_mismatch.get_or_insert(m);
        }
        seen.insert(fen);
    }
    FuzzReport {
        seed,
        iterations,
        opts,
        positions_visited: seen.len(),
        restarts: walker.restarts(),
        mismatches,
        first_mismatch,
    }
}

/// `count` distinct positions reached by fuzz chains.
pub fn corpus(seed: u64, count: usize) -> Vec<String> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    for (fen, _) in Walker::new(seed, ApplyOptions::default()) {
        if out.len() == count {
            break;
        }
        if seen.insert(fen.clone()) {
            out.push(fen);
        }
    }
    out
}
