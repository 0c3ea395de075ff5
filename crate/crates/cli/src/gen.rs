//! Seeded synthetic datasets. Reproducible benchmarks need inputs with
//! actual near-duplicates, so a fixed fraction of the strings are mutated
//! copies of earlier ones rather than fresh uniform draws.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use segjoin::Record;

const SYMBOLS: &[u8; 62] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

/// Share of the dataset that is a near-copy of an earlier string.
const MUTANT_FRACTION: f64 = 0.25;
/// Mutated copies receive up to this many random single-character edits.
const MAX_MUTANT_EDITS: usize = 4;

#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub count: usize,
    pub len_min: usize,
    pub len_max: usize,
    /// Alphabet size: the first K symbols of `[a-z A-Z 0-9]`, 1..=62.
    pub alphabet: usize,
    pub seed: u64,
}

/// Generate `count` strings, deterministic for a fixed config. Three
/// quarters draw a uniform length in `[len_min, len_max]` and uniform
/// symbols; the rest copy a uniformly chosen earlier string and apply
/// 0..=4 random edits (substitution, deletion, insertion, equally likely),
/// so mutant lengths may drift slightly past the bounds.
pub fn generate(config: &GeneratorConfig) -> Vec<Record> {
    assert!(
        (1..=SYMBOLS.len()).contains(&config.alphabet),
        "alphabet size {} out of range",
        config.alphabet
    );
    assert!(config.len_min <= config.len_max);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records: Vec<Record> = Vec::with_capacity(config.count);
    for id in 0..config.count {
        let content = if id > 0 && rng.random_bool(MUTANT_FRACTION) {
            let base = records[rng.random_range(0..id)].content.clone();
            mutate(base, &mut rng, config.alphabet)
        } else {
            let len = rng.random_range(config.len_min..=config.len_max);
            (0..len).map(|_| symbol(&mut rng, config.alphabet)).collect()
        };
        records.push(Record::new(id as u32, content));
    }
    records
}

fn symbol(rng: &mut ChaCha8Rng, alphabet: usize) -> u8 {
    SYMBOLS[rng.random_range(0..alphabet)]
}

fn mutate(mut s: Vec<u8>, rng: &mut ChaCha8Rng, alphabet: usize) -> Vec<u8> {
    for _ in 0..rng.random_range(0..=MAX_MUTANT_EDITS) {
        match rng.random_range(0..3) {
            0 if !s.is_empty() => {
                let i = rng.random_range(0..s.len());
                s[i] = symbol(rng, alphabet);
            }
            1 if !s.is_empty() => {
                s.remove(rng.random_range(0..s.len()));
            }
            _ => {
                let i = rng.random_range(0..=s.len());
                s.insert(i, symbol(rng, alphabet));
            }
        }
    }
    s
}
