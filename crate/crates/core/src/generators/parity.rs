use rayon::prelude::*;

use super::GeneratorError;
use crate::sample::{Label, Letter, SampleSet, Word};

/// Largest number of words enumerated unless the caller raises it.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// All words of exactly `length` letters over colours `0..colours`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityConfig {
    colours: usize,
    length: usize,
}

impl ParityConfig {
    /// Requires `length > colours`, so every word repeats some colour.
    pub fn new(colours: usize, length: usize) -> Result<Self, GeneratorError> {
        if colours < 2 {
            return Err(GeneratorError::TooFewColours(colours));
        }
        if length <= colours {
            return Err(GeneratorError::LengthTooShort { length, colours });
        }
        Ok(ParityConfig { colours, length })
    }

    pub fn colours(&self) -> usize {
        self.colours
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `colours^length`, or `None` on overflow.
    pub fn word_count(&self) -> Option<u128> {
        (self.colours as u128).checked_pow(self.length.try_into().ok()?)
    }

    fn check_budget(&self, budget: u64) -> Result<u64, GeneratorError> {
        match self.word_count() {
            Some(w) if w <= budget as u128 => Ok(w as u64),
            w => Err(GeneratorError::BudgetExceeded {
                words: w.map_or_else(
                    || format!("{}^{}", self.colours, self.length),
                    |w| w.to_string(),
                ),
                budget,
            }),
        }
    }
}

/// `+` if the word closes at least one cycle and every cycle is winning,
/// `-` if it closes at least one and every cycle is losing, `?` otherwise.
///
/// A cycle closes when a colour repeats; it spans the positions after the
/// colour's previous occurrence up to and including the repeat, and is
/// winning iff its highest colour is even.
pub fn classify_parity_word(word: &[Letter], colours: usize) -> Result<Label, GeneratorError> {
    let mut last: Vec<Option<usize>> = vec![None; colours];
    let (mut winning, mut losing) = (false, false);
    for (pos, &c) in word.iter().enumerate() {
        let slot = last
            .get_mut(c as usize)
            .ok_or(GeneratorError::LetterOutOfRange { letter: c, colours })?;
        if let Some(prev) = *slot {
            let top = word[prev + 1..=pos].iter().max().copied().unwrap_or(c);
            if top % 2 == 0 {
                winning = true;
            } else {
                losing = true;
            }
        }
        *slot = Some(pos);
    }
    Ok(match (winning, losing) {
        (true, false) => Label::Positive,
        (false, true) => Label::Negative,
        _ => Label::DontCare,
    })
}

/// Labelled-sample totals of a configuration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParityCounts {
    pub positives: u64,
    pub negatives: u64,
    pub dont_cares: u64,
}

impl std::ops::Add for ParityCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ParityCounts {
            positives: self.positives + o.positives,
            negatives: self.negatives + o.negatives,
            dont_cares: self.dont_cares + o.dont_cares,
        }
    }
}

/// Splits the word space into blocks sharing a fixed-length prefix; each
/// block is enumerated in lexicographic order by one worker.
struct Blocks {
    colours: usize,
    length: usize,
    prefix_len: usize,
}

impl Blocks {
    fn new(cfg: &ParityConfig) -> Self {
        let mut prefix_len = 0;
        let mut blocks = 1usize;
        while prefix_len < cfg.length && blocks < 4096 {
            prefix_len += 1;
            blocks *= cfg.colours;
        }
        Blocks {
            colours: cfg.colours,
            length: cfg.length,
            prefix_len,
        }
    }

    fn count(&self) -> usize {
        self.colours.pow(self.prefix_len as u32)
    }

    /// Calls `f` on every word of block `b`, in lexicographic order.
    fn for_each(&self, b: usize, mut f: impl FnMut(&[Letter])) {
        let mut word = vec![0 as Letter; self.length];
        let mut rest = b;
        for slot in word[..self.prefix_len].iter_mut().rev() {
            *slot = (rest % self.colours) as Letter;
            rest /= self.colours;
        }
        let top = self.colours as Letter - 1;
        loop {
            f(&word);
            // Odometer over the suffix.
            let mut pos = self.length;
            loop {
                if pos == self.prefix_len {
                    return;
                }
                pos -= 1;
                if word[pos] < top {
                    word[pos] += 1;
                    break;
                }
                word[pos] = 0;
            }
        }
    }
}

/// Counts labels over all words of the configuration without storing them.
pub fn count_parity_samples(cfg: &ParityConfig, budget: u64) -> Result<ParityCounts, GeneratorError> {
    cfg.check_budget(budget)?;
    let blocks = Blocks::new(cfg);
    let colours = cfg.colours;
    Ok((0..blocks.count())
        .into_par_iter()
        .map(|b| {
            let mut c = ParityCounts::default();
            blocks.for_each(b, |w| {
                match classify_parity_word(w, colours).expect("letters below colours") {
                    Label::Positive => c.positives += 1,
                    Label::Negative => c.negatives += 1,
                    Label::DontCare => c.dont_cares += 1,
                }
            });
            c
        })
        .reduce(ParityCounts::default, |a, b| a + b))
}

/// Classifies all words of exactly the configured length; don't-care words
/// are left out.
pub fn gen_parity_samples(cfg: &ParityConfig, budget: u64) -> Result<SampleSet, GeneratorError> {
    cfg.check_budget(budget)?;
    let blocks = Blocks::new(cfg);
    let colours = cfg.colours;
    let parts: Vec<Vec<(Word, Label)>> = (0..blocks.count())
        .into_par_iter()
        .map(|b| {
            let mut out = Vec::new();
            blocks.for_each(b, |w| {
                let label = classify_parity_word(w, colours).expect("letters below colours");
                if label != Label::DontCare {
                    out.push((Word::from(w), label));
                }
            });
            out
        })
        .collect();
    let set = SampleSet::from_entries(colours, parts.into_iter().flatten())
        .expect("generated words are distinct and in range");
    log::debug!(
        "parity {}x{}: {} positive, {} negative",
        colours,
        cfg.length,
        set.positive_count(),
        set.negative_count()
    );
    Ok(set)
}
