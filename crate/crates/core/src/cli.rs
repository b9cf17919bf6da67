//! The `uno` command line.
//!
//! Exit codes: 0 for yes / player 1 wins / valid, 1 for no / player 1 loses /
//! invalid, 2 for usage and input errors. Results go to standard output,
//! diagnostics to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dp::{dp_decide_with, DpMode};
use crate::game::{
    generate_random, parse_instance, parse_plays, serialize_instance, serialize_sequence, winner_condition, Card,
    GameMode, Instance, Outcome, PlayingSequence,
};
use crate::geography::{best_move, solve_uno2_uncoop};
use crate::oracles::{uno_minimax, OracleBudget};
use crate::reductions::{hp_source_lints, hp_to_uno2, hpc_to_uno1, pad_equal_hands, parse_graph};
use crate::solver::{solve_uno1_exact, solve_uno2_coop};
use crate::unograph::{build_uno1_graph, build_uno2_graph, build_unop_graph, export_dot};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_ERROR: u8 = 2;

/// Largest instance the game-tree search accepts for `--algo backtracking`
/// in uncooperative mode.
const GAME_TREE_CARDS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "uno", version, about = "Solvers for mathematical UNO")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide an instance and print a certificate.
    Solve {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "auto")]
        algo: Algo,
        /// `auto` uses the dynamic program for solitaire when colors or
        /// numbers are at most this.
        #[arg(long, default_value_t = 3)]
        dp_threshold: u32,
        file: PathBuf,
    },
    /// Check a playing sequence against an instance.
    Verify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        file: PathBuf,
        #[arg(long)]
        sequence: PathBuf,
    },
    /// Print a random instance.
    Generate {
        #[arg(long)]
        players: usize,
        #[arg(long)]
        colors: u32,
        #[arg(long)]
        numbers: u32,
        /// Hand sizes, one per player.
        #[arg(long, value_delimiter = ',', required = true)]
        cards: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compile a Hamiltonian path instance into an UNO instance.
    Reduce {
        #[arg(long, value_enum)]
        from: Source,
        #[arg(long, value_enum)]
        to: Target,
        /// Pad the hands to equal size, forcing play to start at `--start`.
        #[arg(long, requires = "start")]
        equal_hands: bool,
        #[arg(long, requires = "equal_hands")]
        start: Option<usize>,
        file: PathBuf,
    },
    /// Export the UNO graph of an instance.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        out: GraphFormat,
    },
    /// Play uncooperative two-player UNO against the engine.
    Play {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        human: u8,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Uno1,
    Coop2,
    Uncoop2,
}

impl From<ModeArg> for GameMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Uno1 => GameMode::Uno1,
            ModeArg::Coop2 => GameMode::Coop2,
            ModeArg::Uncoop2 => GameMode::Uncoop2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Auto,
    Backtracking,
    Dp,
    Matching,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Hp,
    Hpc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Uno2,
    Uno1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
}

/// A failure reported on standard error with exit code 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome2 = Result<u8, Failure>;

pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_YES
            };
        }
    };
    let result = match cli.command {
        Command::Solve { mode, algo, dp_threshold, file } => solve(&file, mode.into(), algo, dp_threshold, out),
        Command::Verify { mode, file, sequence } => verify(&file, &sequence, mode.into(), out),
        Command::Generate { players, colors, numbers, cards, seed } => {
            generate_random(players, &cards, colors, numbers, seed)
                .map_err(Failure::from)
                .and_then(|inst| emit(out, &serialize_instance(&inst)))
        }
        Command::Reduce { from, to, equal_hands, start, file } => reduce(&file, from, to, equal_hands, start, out, err),
        Command::Graph { file, out: GraphFormat::Dot } => graph(&file, out),
        Command::Play { file, human } => play(&file, human as usize, input, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_ERROR
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome2 {
    out.write_all(text.as_bytes())?;
    Ok(EXIT_YES)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn check_players(inst: &Instance, mode: GameMode) -> Result<(), Failure> {
    if inst.players() != mode.players() {
        return Err(Failure(format!(
            "mode {mode} needs {} players, the instance has {}",
            mode.players(),
            inst.players()
        )));
    }
    Ok(())
}

fn solve(path: &Path, mode: GameMode, algo: Algo, dp_threshold: u32, out: &mut dyn Write) -> Outcome2 {
    let inst = load_instance(path)?;
    check_players(&inst, mode)?;
    let algo = match (mode, algo) {
        (GameMode::Uno1, Algo::Auto) => {
            if inst.colors().min(inst.numbers()) <= dp_threshold {
                Algo::Dp
            } else {
                Algo::Backtracking
            }
        }
        (GameMode::Coop2, Algo::Auto) => Algo::Backtracking,
        (GameMode::Uncoop2, Algo::Auto) => Algo::Matching,
        (GameMode::Uno1, Algo::Dp | Algo::Backtracking)
        | (GameMode::Coop2, Algo::Backtracking)
        | (GameMode::Uncoop2, Algo::Matching | Algo::Backtracking) => algo,
        (mode, algo) => {
            let name = format!("{algo:?}").to_lowercase();
            return Err(Failure(format!("algorithm {name} does not apply to mode {mode}")));
        }
    };
    match (mode, algo) {
        (GameMode::Uno1, Algo::Dp) => {
            let hand = inst.hand(1);
            // decide along the smaller axis
            let answer = if inst.numbers() < inst.colors() {
                let flipped: Vec<Card> = hand.iter().map(Card::transposed).collect();
                dp_decide_with(&flipped, inst.numbers(), DpMode::Decide)?.answer
            } else {
                dp_decide_with(hand, inst.colors(), DpMode::Decide)?.answer
            };
            writeln!(out, "{}", if answer { "YES" } else { "NO" })?;
            Ok(if answer { EXIT_YES } else { EXIT_NO })
        }
        (GameMode::Uno1 | GameMode::Coop2, _) => {
            let cert = if mode == GameMode::Uno1 {
                solve_uno1_exact(inst.hand(1))?
            } else {
                solve_uno2_coop(&inst)?
            };
            if let Some(seq) = cert.sequence.filter(|_| cert.answer) {
                writeln!(out, "YES")?;
                out.write_all(serialize_sequence(&seq).as_bytes())?;
                Ok(EXIT_YES)
            } else {
                writeln!(out, "NO")?;
                Ok(EXIT_NO)
            }
        }
        (GameMode::Uncoop2, algo) => {
            let verdict = if algo == Algo::Matching {
                solve_uno2_uncoop(&inst)?
            } else {
                let budget = OracleBudget { max_cards: GAME_TREE_CARDS, ..OracleBudget::default() };
                uno_minimax(&inst, GameMode::Uncoop2, budget)?
            };
            writeln!(out, "WINNER {}", verdict.winner)?;
            if let Some(m) = verdict.opening_move {
                writeln!(out, "OPENING {m}")?;
            }
            out.write_all(serialize_sequence(&verdict.principal_line).as_bytes())?;
            Ok(if verdict.winner == 1 { EXIT_YES } else { EXIT_NO })
        }
    }
}

fn verify(path: &Path, sequence: &Path, mode: GameMode, out: &mut dyn Write) -> Outcome2 {
    let inst = load_instance(path)?;
    check_players(&inst, mode)?;
    let plays = parse_plays(&read(sequence)?).map_err(|e| Failure(format!("{}: {e}", sequence.display())))?;
    let seq = PlayingSequence::resolve(&inst, &plays)?;
    match winner_condition(&inst, &seq, mode) {
        Err(v) if v.is_input_error() => Err(Failure(v.to_string())),
        Err(v) => {
            writeln!(out, "INVALID {v}")?;
            Ok(EXIT_NO)
        }
        Ok(outcome) if outcome.player1_succeeds() => {
            writeln!(out, "VALID")?;
            Ok(EXIT_YES)
        }
        Ok(outcome) => {
            let why = match outcome {
                Outcome::NotCleared => "hand 1 is not empty".to_string(),
                Outcome::Winner(p) => format!("player {p} wins"),
                Outcome::Unfinished => "the game is not over".to_string(),
                Outcome::Cleared => unreachable!("success handled above"),
            };
            writeln!(out, "FEASIBLE but not a win: {why}")?;
            Ok(EXIT_NO)
        }
    }
}

fn reduce(
    path: &Path,
    from: Source,
    to: Target,
    equal_hands: bool,
    start: Option<usize>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome2 {
    let g = parse_graph(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let inst = match (from, to) {
        (Source::Hp, Target::Uno2) => {
            for lint in hp_source_lints(&g) {
                writeln!(err, "{lint}")?;
            }
            let inst = hp_to_uno2(&g)?;
            match (equal_hands, start) {
                (true, Some(s)) => pad_equal_hands(&inst, s, g.order())?,
                _ => inst,
            }
        }
        (Source::Hpc, Target::Uno1) => {
            if equal_hands {
                return Err(Failure("--equal-hands applies to --from hp --to uno2".into()));
            }
            Instance::solitaire(hpc_to_uno1(&g)?)
        }
        (Source::Hp, Target::Uno1) => return Err(Failure("hp reduces to uno2; use --from hpc for uno1".into())),
        (Source::Hpc, Target::Uno2) => return Err(Failure("hpc reduces to uno1; use --from hp for uno2".into())),
    };
    emit(out, &serialize_instance(&inst))
}

fn graph(path: &Path, out: &mut dyn Write) -> Outcome2 {
    let inst = load_instance(path)?;
    let g = match inst.players() {
        1 => build_uno1_graph(inst.hand(1)),
        2 => build_uno2_graph(&inst)?,
        _ => build_unop_graph(&inst),
    };
    emit(out, &export_dot(&g))
}

fn hand_text(cards: &[Card], alive: impl Fn(usize) -> bool) -> String {
    let shown: Vec<String> = cards.iter().enumerate().filter(|&(k, _)| alive(k)).map(|(_, c)| c.to_string()).collect();
    if shown.is_empty() {
        "(empty)".into()
    } else {
        shown.join(" ")
    }
}

fn play(path: &Path, human: usize, input: &mut dyn BufRead, out: &mut dyn Write) -> Outcome2 {
    let inst = load_instance(path)?;
    check_players(&inst, GameMode::Uncoop2)?;
    let g = build_uno2_graph(&inst)?;
    let verdict = solve_uno2_uncoop(&inst)?;
    let mut alive = vec![true; g.order()];
    let mut token: Option<usize> = None;
    let mut mover = 1;
    let engine = 3 - human;
    writeln!(out, "you are player {human}; the engine is player {engine}; the last player to play wins")?;

    loop {
        let legal: Vec<usize> = (0..g.order())
            .filter(|&v| alive[v] && g.vertex(v).player == mover && (token != Some(v)))
            .filter(|&v| token.is_none_or(|t| g.graph().has_edge(t, v)))
            .collect();
        for p in 1..=2 {
            let text = hand_text(inst.hand(p), |k| {
                g.index_of(p, k).is_some_and(|v| alive[v] && Some(v) != token)
            });
            writeln!(out, "hand {p}: {text}")?;
        }
        if let Some(t) = token {
            writeln!(out, "top: {}", g.vertex(t).card)?;
        }
        if legal.is_empty() {
            let winner = 3 - mover;
            writeln!(out, "player {mover} cannot play")?;
            writeln!(out, "winner: player {winner}")?;
            let expected = verdict.winner;
            writeln!(out, "pre-game verdict: player {expected} wins with best play")?;
            return Ok(if winner == human { EXIT_YES } else { EXIT_NO });
        }
        let chosen = if mover == human {
            let legal_cards: Vec<String> = legal.iter().map(|&v| g.vertex(v).card.to_string()).collect();
            loop {
                write!(out, "your move: ")?;
                out.flush()?;
                let mut line = String::new();
                if input.read_line(&mut line)? == 0 {
                    writeln!(out)?;
                    return Err(Failure("end of input, game aborted".into()));
                }
                let pick = parse_card(line.trim()).and_then(|c| legal.iter().copied().find(|&v| g.vertex(v).card == c));
                match pick {
                    Some(v) => break v,
                    None => writeln!(out, "illegal move {:?}; legal cards: {}", line.trim(), legal_cards.join(" "))?,
                }
            }
        } else {
            let v = match token {
                None => verdict
                    .opening_move
                    .and_then(|m| g.index_of(m.player, m.occurrence))
                    .unwrap_or(legal[0]),
                Some(t) => best_move(g.graph(), &alive, t).expect("a legal move exists"),
            };
            writeln!(out, "player {mover} plays {}", g.vertex(v).card)?;
            v
        };
        if let Some(t) = token {
            alive[t] = false;
        }
        token = Some(chosen);
        mover = 3 - mover;
    }
}

fn parse_card(text: &str) -> Option<Card> {
    let (x, y) = text.split_once(',')?;
    Some(Card::new(x.trim().parse().ok()?, y.trim().parse().ok()?))
}
