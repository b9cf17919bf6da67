//! Acceptance suite: one PASS/FAIL line per criterion, then a single verdict.
//!
//! Run with `cargo test -p uno-core --test acceptance -- --nocapture` to see the
//! lines when everything passes.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use uno_core::dp::{dp_decide, dp_decide_with, dp_layers, enumerate_pathsets, DpMode};
use uno_core::game::{random_cards, Card, GameMode, Instance};
use uno_core::geography::{best_move, solve_uno2_uncoop, solve_uvg};
use uno_core::oracles::{hamiltonian_path_bruteforce, uno_minimax, uvg_minimax, OracleBudget};
use uno_core::reductions::{
    hp_to_uno2, hpc_to_uno1, map_hp_to_sequence, map_sequence_to_hp, pad_equal_hands, ReductionKind, SimpleGraph,
};
use uno_core::solver::{solve_uno1_exact, solve_uno2_coop};
use uno_core::unograph::{are_isomorphic, build_uno1_graph, build_uno2_graph, incidence_bigraph, line_graph};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    if spent > limit {
        return Err(format!("took {spent:.1?}, limit {limit:?}"));
    }
    Ok(())
}

fn hp(g: &SimpleGraph, start: Option<usize>) -> bool {
    hamiltonian_path_bruteforce(&g.to_graph(), start, OracleBudget::default()).unwrap().is_some()
}

fn running_example() -> Check {
    let t = Instant::now();
    let inst = uno_core::game::parse_instance(EXAMPLE1_FILE).unwrap();
    if !solve_uno1_exact(inst.hand(1)).unwrap().answer {
        return Err("backtracking says NO".into());
    }
    let dp_start = Instant::now();
    if !dp_decide(inst.hand(1), 4).unwrap().answer {
        return Err("dp says NO".into());
    }
    within(Duration::from_secs(60), dp_start)?;
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "ex1.uno", EXAMPLE1_FILE);
    let seq = write_file(dir.path(), "ex1.seq", EXAMPLE1_SEQUENCE);
    let (code, out, err) = uno(
        &["verify", "--mode", "uno1", file.to_str().unwrap(), "--sequence", seq.to_str().unwrap()],
        "",
    );
    if code != 0 {
        return Err(format!("verify exited {code}: {out}{err}"));
    }
    within(Duration::from_secs(120), t)?;
    Ok(format!("backtracking, dp and verify agree on YES in {:.2?}", t.elapsed()))
}

fn line_graph_suite() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let n = rng.gen_range(1..=12);
        let (c, b) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let cards = random_cards(&mut rng, n, c, b);
        let direct = build_uno1_graph(&cards);
        let via_line = line_graph(&incidence_bigraph(&cards));
        if !are_isomorphic(direct.graph(), via_line.graph()) {
            return Err(format!("case {case}: {cards:?}"));
        }
    }
    within(Duration::from_secs(10), t)?;
    Ok(format!("100/100 isomorphic in {:.2?}", t.elapsed()))
}

fn dp_exactness() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..300 {
        let c = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=10);
        let b = rng.gen_range(1..=5);
        let cards = random_cards(&mut rng, n, c, b);
        let exact = solve_uno1_exact(&cards).unwrap().answer;
        let counted = dp_decide(&cards, c).unwrap().answer;
        let decided = dp_decide_with(&cards, c, DpMode::Decide).unwrap().answer;
        if exact != counted || exact != decided {
            return Err(format!("case {case}: {cards:?} exact {exact} count {counted} decide {decided}"));
        }
    }
    let mut layers_checked = 0;
    for case in 0..50 {
        let c = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=8);
        let b = rng.gen_range(1..=4);
        let cards = random_cards(&mut rng, n, c, b);
        let layers = dp_layers(&cards, c).unwrap();
        for (l, table) in layers.iter().enumerate() {
            let brute = enumerate_pathsets(&cards, c, l + 1).unwrap();
            let dp: Vec<(String, String)> = table.entries.iter().map(|(s, n)| (s.to_string(), n.to_string())).collect();
            let bf: Vec<(String, String)> = brute.iter().map(|(s, n)| (s.to_string(), n.to_string())).collect();
            if dp != bf {
                return Err(format!("case {case} layer {}: {cards:?}\ndp {dp:?}\nbrute {bf:?}", l + 1));
            }
            layers_checked += 1;
        }
    }
    within(Duration::from_secs(300), t)?;
    Ok(format!("300/300 decisions agree, {layers_checked} layers equal, {:.2?}", t.elapsed()))
}

fn dp_scaling() -> Check {
    let t = Instant::now();
    let sizes = [8usize, 16, 32, 64];
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut points = Vec::new();
    for &n in &sizes {
        let mut times = Vec::new();
        for _ in 0..3 {
            let cards = random_cards(&mut rng, n, 2, (n / 2) as u32);
            let s = Instant::now();
            dp_decide_with(&cards, 2, DpMode::Decide).unwrap();
            times.push(s.elapsed().as_secs_f64().max(1e-6));
        }
        times.sort_by(f64::total_cmp);
        points.push(((n as f64).ln(), times[1].ln()));
    }
    let m = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let cov: f64 = points.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = points.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    let slope = cov / var;
    within(Duration::from_secs(600), t)?;
    if slope > 10.0 {
        return Err(format!("log-log slope {slope:.2} exceeds 10"));
    }
    Ok(format!("log-log slope {slope:.2} over n = 8..64, {:.2?}", t.elapsed()))
}

fn geography_suite() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut starts = 0;
    for case in 0..300 {
        let left = rng.gen_range(1..=6);
        let right = rng.gen_range(0..=12 - left).min(6);
        let density = rng.gen_range(0.2..0.8);
        let g = random_bipartite(&mut rng, left, right, density);
        for s in 0..g.order() {
            let fast = solve_uvg(&g, s).unwrap().mover_wins;
            let slow = uvg_minimax(&g, s).unwrap().mover_wins;
            if fast != slow {
                return Err(format!("case {case} start {s}: edges {:?}", g.edges()));
            }
            starts += 1;
        }
    }
    within(Duration::from_secs(120), t)?;
    Ok(format!("300 graphs, {starts} starts agree, {:.2?}", t.elapsed()))
}

fn random_two_player(rng: &mut ChaCha8Rng) -> Instance {
    let (c, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let (n1, n2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
    let h1 = random_cards(rng, n1, c, b);
    let h2 = random_cards(rng, n2, c, b);
    Instance::two_player(h1, h2)
}

/// The engine plays `engine` with best_move, the opponent plays uniformly at
/// random; returns the winner.
fn engine_playout(inst: &Instance, engine: usize, rng: &mut ChaCha8Rng) -> usize {
    let g = build_uno2_graph(inst).unwrap();
    let verdict = solve_uno2_uncoop(inst).unwrap();
    let mut alive = vec![true; g.order()];
    let mut token: Option<usize> = None;
    let mut mover = 1;
    loop {
        let legal: Vec<usize> = (0..g.order())
            .filter(|&v| alive[v] && Some(v) != token && g.vertex(v).player == mover)
            .filter(|&v| token.is_none_or(|t| g.graph().has_edge(t, v)))
            .collect();
        if legal.is_empty() {
            return 3 - mover;
        }
        let pick = if mover == engine {
            match token {
                None => verdict.opening_move.and_then(|m| g.index_of(m.player, m.occurrence)).unwrap_or(legal[0]),
                Some(t) => best_move(g.graph(), &alive, t).unwrap(),
            }
        } else {
            legal[rng.gen_range(0..legal.len())]
        };
        if let Some(t) = token {
            alive[t] = false;
        }
        token = Some(pick);
        mover = 3 - mover;
    }
}

fn uncooperative_suite() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for case in 0..300 {
        let inst = random_two_player(&mut rng);
        let fast = solve_uno2_uncoop(&inst).unwrap().winner;
        let slow = uno_minimax(&inst, GameMode::Uncoop2, OracleBudget::default()).unwrap().winner;
        if fast != slow {
            return Err(format!("case {case}: {:?} {:?}", inst.hand(1), inst.hand(2)));
        }
    }
    let mut playouts = 0;
    while playouts < 200 {
        let inst = random_two_player(&mut rng);
        let winner = solve_uno2_uncoop(&inst).unwrap().winner;
        let result = engine_playout(&inst, winner, &mut rng);
        if result != winner {
            return Err(format!("engine lost a won game: {:?} {:?}", inst.hand(1), inst.hand(2)));
        }
        playouts += 1;
    }
    within(Duration::from_secs(120), t)?;
    Ok(format!("300/300 winners agree, engine won 200/200 playouts, {:.2?}", t.elapsed()))
}

fn vertex_edge_suite() -> Check {
    let t = Instant::now();
    let mut total = 0;
    let mut wrong: Vec<String> = Vec::new();
    for n in 3..=6 {
        for g in connected_non_trees(n) {
            total += 1;
            let expected = hp(&g, None);
            let got = solve_uno2_coop(&hp_to_uno2(&g).unwrap()).unwrap().answer;
            if expected != got {
                wrong.push(format!("{:?} (HP {expected}, solver {got})", one_based(&g)));
            }
        }
    }
    within(Duration::from_secs(300), t)?;
    if wrong.is_empty() {
        Ok(format!("{total}/{total} graphs agree, {:.2?}", t.elapsed()))
    } else {
        Err(format!("{} of {total} graphs disagree, first {}", wrong.len(), wrong[0]))
    }
}

fn one_based(g: &SimpleGraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect()
}

fn padding_suite() -> Check {
    let t = Instant::now();
    let mut total = 0;
    let mut wrong: Vec<String> = Vec::new();
    let mut unpadded = 0;
    for n in 4..=5 {
        for g in connected_non_trees(n) {
            let inst = hp_to_uno2(&g).unwrap();
            for start in 1..=n {
                total += 1;
                let padded = pad_equal_hands(&inst, start, n).unwrap();
                if padded.hand(1).len() != padded.hand(2).len() {
                    return Err(format!("unequal hands for {:?}", one_based(&g)));
                }
                let expected = hp(&g, Some(start - 1));
                let got = solve_uno2_coop(&padded).unwrap().answer;
                if expected != got {
                    unpadded += usize::from(padded == inst);
                    wrong.push(format!("{:?} start {start} (HP {expected}, solver {got})", one_based(&g)));
                }
            }
        }
    }
    if wrong.is_empty() {
        Ok(format!("{total}/{total} (graph, start) pairs agree, {:.2?}", t.elapsed()))
    } else {
        Err(format!(
            "{} of {total} pairs disagree ({unpadded} where the hands were already equal), first {}",
            wrong.len(),
            wrong[0]
        ))
    }
}

fn node_gadget_suite() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut graphs = vec![k4(), k33(), prism(), petersen()];
    for n in [6, 8, 8, 10, 10] {
        graphs.push(random_cubic(&mut rng, n));
    }
    for g in &graphs {
        let cards = hpc_to_uno1(g).unwrap();
        let cert = solve_uno1_exact(&cards).unwrap();
        if cert.answer != hp(g, None) {
            return Err(format!("{:?}: solver {}", one_based(g), cert.answer));
        }
        if let Some(seq) = cert.sequence {
            let path = map_sequence_to_hp(g, &seq, ReductionKind::NodeGadget).map_err(|e| e.to_string())?;
            g.check_hamiltonian(&path).map_err(|e| e.to_string())?;
        }
    }
    let mut round_trips = 0;
    let mut check = |g: &SimpleGraph, kind: ReductionKind| -> Result<(), String> {
        for path in all_hamiltonian_paths(g) {
            let seq = map_hp_to_sequence(g, &path, kind).map_err(|e| e.to_string())?;
            let back = map_sequence_to_hp(g, &seq, kind).map_err(|e| e.to_string())?;
            if back != path {
                return Err(format!("{:?}: {path:?} came back as {back:?}", one_based(g)));
            }
            round_trips += 1;
        }
        Ok(())
    };
    for g in [k4(), k33(), prism()] {
        check(&g, ReductionKind::NodeGadget)?;
    }
    for n in 1..=6 {
        for g in graphs_up_to_isomorphism(n) {
            check(&g, ReductionKind::VertexEdge)?;
        }
    }
    Ok(format!("{} cubic graphs agree, {round_trips} round trips exact, {:.2?}", graphs.len(), t.elapsed()))
}

fn transpose_suite() -> Check {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in 0..100 {
        let n = rng.gen_range(1..=12);
        let (c, b) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let cards = random_cards(&mut rng, n, c, b);
        let flipped: Vec<Card> = cards.iter().map(Card::transposed).collect();
        let a = solve_uno1_exact(&cards).unwrap().answer;
        let f = solve_uno1_exact(&flipped).unwrap().answer;
        let d = dp_decide_with(&flipped, b, DpMode::Decide).unwrap().answer;
        if a != f || a != d {
            return Err(format!("case {case}: {cards:?}"));
        }
    }
    Ok(format!("100/100 invariant, {:.2?}", t.elapsed()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("running example", running_example),
        ("UNO-1 graphs are line graphs", line_graph_suite),
        ("dp exactness", dp_exactness),
        ("dp polynomial scaling", dp_scaling),
        ("geography by matching", geography_suite),
        ("uncooperative two-player", uncooperative_suite),
        ("vertex/edge reduction", vertex_edge_suite),
        ("equal-hand padding", padding_suite),
        ("node-gadget reduction", node_gadget_suite),
        ("transpose symmetry", transpose_suite),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
