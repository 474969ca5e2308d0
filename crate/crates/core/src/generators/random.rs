use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GeneratorError;
use crate::dfa::LearnedDfa;
use crate::sample::{Label, Letter, SampleSet, Word};

/// A complete DFA with `n` states, all reachable from state 0, with
/// uniformly drawn transitions and acceptance bits. Draws are repeated
/// until every state is reachable.
pub fn gen_random_dfa(n: usize, alphabet_size: usize, seed: u64) -> LearnedDfa {
    assert!(n >= 1, "a DFA needs at least one state");
    assert!(alphabet_size >= 1 || n == 1, "states beyond the first are unreachable without letters");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let transitions: Vec<usize> = (0..n * alphabet_size).map(|_| rng.gen_range(0..n)).collect();
        let accepting: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
        let d = LearnedDfa::new(alphabet_size, transitions, accepting);
        if d.reachable_count() == n {
            return d;
        }
    }
}

/// Number of words of length at most `max_len`, saturating.
pub fn word_pool_size(alphabet_size: usize, max_len: usize) -> u128 {
    let k = alphabet_size as u128;
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(k);
    }
    total
}

fn random_word(rng: &mut ChaCha8Rng, k: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..k) as Letter).collect()
}

/// `count` distinct words with length uniform on `[0, max_len]` and uniform
/// letters, each labelled by `d`.
pub fn gen_samples_from_dfa(
    d: &LearnedDfa,
    count: usize,
    max_len: usize,
    seed: u64,
) -> Result<SampleSet, GeneratorError> {
    if count == 0 {
        return Err(GeneratorError::Zero("sample count"));
    }
    let k = d.alphabet_size();
    let available = word_pool_size(k, max_len);
    if count as u128 > available {
        return Err(GeneratorError::PoolExhausted {
            requested: count,
            available,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Vec<Letter>> = if (count as u128) * 2 > available {
        // Dense request: pick from the whole pool rather than rejecting.
        let mut pool = all_words(k, max_len);
        pool.shuffle(&mut rng);
        pool.truncate(count);
        pool
    } else {
        let mut seen = BTreeSet::new();
        let mut words = Vec::with_capacity(count);
        while words.len() < count {
            let w = random_word(&mut rng, k, max_len);
            if seen.insert(w.clone()) {
                words.push(w);
            }
        }
        words
    };
    let entries = words.into_iter().map(|w| {
        let w = Word::new(w);
        let label = if d.accepts(&w) {
            Label::Positive
        } else {
            Label::Negative
        };
        (w, label)
    });
    Ok(SampleSet::from_entries(k, entries).expect("distinct words labelled by one DFA"))
}

fn all_words(k: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                (0..k as Letter).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A hidden `n`-state DFA over two letters and `50 * n` samples of length
/// at most `2n + 3` labelled by it.
pub fn gen_random_benchmark(n: usize, seed: u64) -> (LearnedDfa, SampleSet) {
    let d = gen_random_dfa(n, 2, seed);
    let samples = gen_samples_from_dfa(&d, 50 * n, 2 * n + 3, seed.wrapping_add(1))
        .expect("the pool of words up to 2n+3 letters exceeds 50n");
    (d, samples)
}
