use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{Card, Instance};
use super::GameError;

/// Deals `hand_sizes[i]` cards to player `i + 1`, each drawn uniformly with
/// replacement from `[1..colors] x [1..numbers]`. Deterministic per seed.
pub fn generate_random(
    players: usize,
    hand_sizes: &[usize],
    colors: u32,
    numbers: u32,
    seed: u64,
) -> Result<Instance, GameError> {
    if players == 0 {
        return Err(GameError::NoPlayers);
    }
    if hand_sizes.len() != players {
        return Err(GameError::HandSizes { players, given: hand_sizes.len() });
    }
    if colors == 0 || numbers == 0 {
        return Err(GameError::EmptyRange);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hands = hand_sizes
        .iter()
        .map(|&n| random_cards(&mut rng, n, colors, numbers))
        .collect();
    Instance::new(colors, numbers, hands)
}

/// `n` uniform cards from the given ranges.
pub fn random_cards<R: Rng + ?Sized>(rng: &mut R, n: usize, colors: u32, numbers: u32) -> Vec<Card> {
    (0..n)
        .map(|_| Card::new(rng.gen_range(1..=colors), rng.gen_range(1..=numbers)))
        .collect()
}
