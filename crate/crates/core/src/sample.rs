//! Labelled sample sets, the Abbadingo text format, and the lexicographic
//! order the incremental construction relies on.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

/// A letter is an index into the alphabet `0..alphabet_size`.
pub type Letter = u32;

/// Three-way classification of a word: accepted, rejected or don't-care.
///
/// Samples only ever carry `Positive` or `Negative`; `DontCare` is what every
/// unlisted word maps to, and the status of don't-care acceptor states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Positive,
    Negative,
    DontCare,
}

impl Label {
    pub fn symbol(self) -> char {
        match self {
            Label::Positive => '+',
            Label::Negative => '-',
            Label::DontCare => '?',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A finite word over an integer alphabet. `Ord` is [`lex_compare`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(letters: [Letter; N]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    /// Letters separated by dots, `ε` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char('.')?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_compare(&self.0, &other.0)
    }
}

/// Lexicographic order on words.
///
/// The first differing letter within the common length decides; equal
/// content of equal length is equal; otherwise the longer word is greater.
/// In particular every word precedes all of its proper extensions.
pub fn lex_compare(u: &[Letter], v: &[Letter]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    u.len().cmp(&v.len())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SampleError {
    #[error("line {line}: malformed header, expected \"<sample_count> <alphabet_size>\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed sample line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: label {label} is not 0 or 1")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: declared length {declared} but {found} symbols follow")]
    LengthMismatch {
        line: usize,
        declared: usize,
        found: usize,
    },
    #[error("symbol {symbol} in word {word} is outside the alphabet of size {alphabet_size}")]
    SymbolOutOfRange {
        word: Word,
        symbol: Letter,
        alphabet_size: usize,
    },
    #[error("header declares {declared} samples but {found} sample lines follow")]
    CountMismatch { declared: usize, found: usize },
    #[error("word {0} is labelled both positive and negative")]
    ConflictingLabels(Word),
    #[error("word {0} has label '?'; samples must be positive or negative")]
    DontCareSample(Word),
}

/// A finite set of labelled words. Every word not listed is don't-care.
///
/// Positives and negatives are disjoint by construction: inserting a word
/// with the opposite label of an existing entry fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    alphabet_size: usize,
    entries: BTreeMap<Word, Label>,
}

impl SampleSet {
    pub fn new(alphabet_size: usize) -> Self {
        SampleSet {
            alphabet_size,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a set from `(word, label)` pairs, collapsing identical
    /// duplicates and rejecting conflicting ones.
    pub fn from_entries<I>(alphabet_size: usize, entries: I) -> Result<Self, SampleError>
    where
        I: IntoIterator<Item = (Word, Label)>,
    {
        let mut set = SampleSet::new(alphabet_size);
        for (w, l) in entries {
            set.insert(w, l)?;
        }
        Ok(set)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// Adds a labelled word. Re-adding an existing entry with the same label
    /// is a no-op.
    pub fn insert(&mut self, word: Word, label: Label) -> Result<(), SampleError> {
        if label == Label::DontCare {
            return Err(SampleError::DontCareSample(word));
        }
        if let Some(&symbol) = word
            .letters()
            .iter()
            .find(|&&a| a as usize >= self.alphabet_size)
        {
            return Err(SampleError::SymbolOutOfRange {
                word,
                symbol,
                alphabet_size: self.alphabet_size,
            });
        }
        match self.entries.entry(word) {
            Entry::Vacant(v) => {
                v.insert(label);
                Ok(())
            }
            Entry::Occupied(o) if *o.get() == label => Ok(()),
            Entry::Occupied(o) => Err(SampleError::ConflictingLabels(o.key().clone())),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All entries in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, Label)> + '_ {
        self.entries.iter().map(|(w, &l)| (w, l))
    }

    pub fn positives(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words_with(Label::Positive)
    }

    pub fn negatives(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words_with(Label::Negative)
    }

    pub fn positive_count(&self) -> usize {
        self.positives().count()
    }

    pub fn negative_count(&self) -> usize {
        self.negatives().count()
    }

    fn words_with(&self, label: Label) -> impl Iterator<Item = &Word> + '_ {
        self.entries
            .iter()
            .filter(move |(_, &l)| l == label)
            .map(|(w, _)| w)
    }

    /// `+` for positives, `-` for negatives, `?` for every other word.
    pub fn classify(&self, word: &Word) -> Label {
        self.entries.get(word).copied().unwrap_or(Label::DontCare)
    }

    /// The entries as a strictly increasing sequence.
    pub fn ordered(&self) -> OrderedSampleSet {
        OrderedSampleSet {
            alphabet_size: self.alphabet_size,
            entries: self.entries.iter().map(|(w, &l)| (w.clone(), l)).collect(),
        }
    }

    /// The sub-set with only one label kept, e.g. `(S⁺, ∅)`.
    pub fn restricted_to(&self, label: Label) -> SampleSet {
        SampleSet {
            alphabet_size: self.alphabet_size,
            entries: self
                .entries
                .iter()
                .filter(|(_, &l)| l == label)
                .map(|(w, &l)| (w.clone(), l))
                .collect(),
        }
    }

    /// Number of distinct prefixes of all listed words, ε included.
    pub fn prefix_count(&self) -> usize {
        let mut count = 1;
        let mut prev: &[Letter] = &[];
        for w in self.entries.keys() {
            let lcp = common_prefix_len(prev, w.letters());
            count += w.len() - lcp;
            prev = w.letters();
        }
        count
    }
}

pub(crate) fn common_prefix_len(u: &[Letter], v: &[Letter]) -> usize {
    u.iter().zip(v).take_while(|(a, b)| a == b).count()
}

/// Samples sorted strictly ascending by [`lex_compare`], without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedSampleSet {
    alphabet_size: usize,
    entries: Vec<(Word, Label)>,
}

impl OrderedSampleSet {
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn entries(&self) -> &[(Word, Label)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_sample_set(&self) -> SampleSet {
        SampleSet {
            alphabet_size: self.alphabet_size,
            entries: self.entries.iter().cloned().collect(),
        }
    }
}

/// Sorts raw labelled entries, collapsing identical duplicates.
pub fn sort_and_validate<I>(alphabet_size: usize, entries: I) -> Result<OrderedSampleSet, SampleError>
where
    I: IntoIterator<Item = (Word, Label)>,
{
    SampleSet::from_entries(alphabet_size, entries).map(|s| s.ordered())
}

/// Parses the Abbadingo format: a `<sample_count> <alphabet_size>` header,
/// then one `<label> <length> <sym_1> ... <sym_length>` line per sample.
pub fn parse_abbadingo(text: &str) -> Result<SampleSet, SampleError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(SampleError::MalformedHeader { line: 1 })?;
    let header_fields: Vec<&str> = header.split_whitespace().collect();
    let [count, alphabet] = header_fields[..] else {
        return Err(SampleError::MalformedHeader { line: header_line });
    };
    let declared: usize = count
        .parse()
        .map_err(|_| SampleError::MalformedHeader { line: header_line })?;
    let alphabet_size: usize = alphabet
        .parse()
        .map_err(|_| SampleError::MalformedHeader { line: header_line })?;

    let mut set = SampleSet::new(alphabet_size);
    let mut found = 0;
    for (line, content) in lines {
        let mut fields = content.split_whitespace();
        let label = match fields.next() {
            Some("1") => Label::Positive,
            Some("0") => Label::Negative,
            Some(other) => {
                return Err(SampleError::BadLabel {
                    line,
                    label: other.to_string(),
                })
            }
            None => unreachable!("blank lines are filtered"),
        };
        let length: usize = fields
            .next()
            .ok_or_else(|| SampleError::MalformedLine {
                line,
                reason: "missing word length".into(),
            })?
            .parse()
            .map_err(|_| SampleError::MalformedLine {
                line,
                reason: "word length is not a non-negative integer".into(),
            })?;
        let letters = fields
            .map(|s| {
                s.parse::<Letter>().map_err(|_| SampleError::MalformedLine {
                    line,
                    reason: format!("symbol {s:?} is not a non-negative integer"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if letters.len() != length {
            return Err(SampleError::LengthMismatch {
                line,
                declared: length,
                found: letters.len(),
            });
        }
        set.insert(Word(letters), label)?;
        found += 1;
    }
    if found != declared {
        return Err(SampleError::CountMismatch { declared, found });
    }
    Ok(set)
}

/// Writes the set in Abbadingo format, entries in lexicographic order.
pub fn write_abbadingo(set: &SampleSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", set.len(), set.alphabet_size());
    for (w, label) in set.iter() {
        let bit = if label == Label::Positive { 1 } else { 0 };
        let _ = write!(out, "{} {}", bit, w.len());
        for a in w.letters() {
            let _ = write!(out, " {a}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word(s.bytes().map(|b| (b - b'0') as Letter).collect())
    }

    #[test]
    fn parses_the_minimal_example() {
        let set = parse_abbadingo("2 2\n1 1 0\n0 2 0 1\n").unwrap();
        assert_eq!(set.alphabet_size(), 2);
        assert_eq!(set.positives().cloned().collect::<Vec<_>>(), vec![w("0")]);
        assert_eq!(set.negatives().cloned().collect::<Vec<_>>(), vec![w("01")]);
    }

    #[test]
    fn parses_empty_set() {
        let set = parse_abbadingo("0 2\n").unwrap();
        assert!(set.is_empty());
        assert_eq!(set.alphabet_size(), 2);
    }

    #[test]
    fn parses_the_empty_word() {
        let set = parse_abbadingo("1 3\n1 0\n").unwrap();
        assert_eq!(set.classify(&Word::empty()), Label::Positive);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_abbadingo("2 2\n1 1 0\n0 1 0\n"),
            Err(SampleError::ConflictingLabels(w("0")))
        );
        assert!(matches!(
            parse_abbadingo("x 2\n"),
            Err(SampleError::MalformedHeader { line: 1 })
        ));
        assert!(matches!(
            parse_abbadingo("1 2 3\n1 1 0\n"),
            Err(SampleError::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_abbadingo(""),
            Err(SampleError::MalformedHeader { .. })
        ));
        assert!(matches!(
            parse_abbadingo("1 2\n2 1 0\n"),
            Err(SampleError::BadLabel { line: 2, .. })
        ));
        assert!(matches!(
            parse_abbadingo("1 2\n-1 1 0\n"),
            Err(SampleError::BadLabel { .. })
        ));
        assert!(matches!(
            parse_abbadingo("1 2\n1 2 0\n"),
            Err(SampleError::LengthMismatch {
                line: 2,
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_abbadingo("1 2\n1 1 2\n"),
            Err(SampleError::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(matches!(
            parse_abbadingo("2 2\n1 1 0\n"),
            Err(SampleError::CountMismatch {
                declared: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_abbadingo("1 2\n1 x\n"),
            Err(SampleError::MalformedLine { .. })
        ));
    }

    #[test]
    fn duplicate_identical_lines_are_collapsed() {
        // Both lines are counted against the header, the set keeps one entry.
        let set = parse_abbadingo("2 2\n1 1 0\n1 1 0\n").unwrap();
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn writes_in_lex_order() {
        let set = SampleSet::from_entries(2, [(w("1"), Label::Negative), (w("0"), Label::Positive)]).unwrap();
        assert_eq!(write_abbadingo(&set), "2 2\n1 1 0\n0 1 1\n");
        assert_eq!(write_abbadingo(&SampleSet::new(3)), "0 3\n");
        let text = "2 2\n1 1 0\n0 2 0 1\n";
        assert_eq!(write_abbadingo(&parse_abbadingo(text).unwrap()), text);
    }

    #[test]
    fn lex_compare_rules() {
        // a=0, b=1
        assert_eq!(lex_compare(&[0], &[0, 1]), Ordering::Less);
        assert_eq!(lex_compare(&[0, 1], &[0, 1]), Ordering::Equal);
        assert_eq!(lex_compare(&[0, 1], &[1]), Ordering::Less);
        assert_eq!(lex_compare(&[], &[0]), Ordering::Less);
    }

    #[test]
    fn sort_and_validate_examples() {
        let o = sort_and_validate(2, [(w("1"), Label::Positive), (w("0"), Label::Negative)]).unwrap();
        assert_eq!(
            o.entries(),
            &[(w("0"), Label::Negative), (w("1"), Label::Positive)]
        );
        let o = sort_and_validate(2, [(w("0"), Label::Positive), (w("0"), Label::Positive)]).unwrap();
        assert_eq!(o.entries(), &[(w("0"), Label::Positive)]);
        assert_eq!(
            sort_and_validate(2, [(w("0"), Label::Positive), (w("0"), Label::Negative)]),
            Err(SampleError::ConflictingLabels(w("0")))
        );
    }

    #[test]
    fn classify_examples() {
        let s = SampleSet::from_entries(2, [(w("0"), Label::Positive)]).unwrap();
        assert_eq!(s.classify(&w("0")), Label::Positive);
        assert_eq!(s.classify(&w("1")), Label::DontCare);
        let s = SampleSet::from_entries(2, [(w("0"), Label::Positive), (w("1"), Label::Negative)]).unwrap();
        assert_eq!(s.classify(&w("1")), Label::Negative);
    }

    #[test]
    fn dont_care_samples_are_rejected() {
        let mut s = SampleSet::new(2);
        assert!(matches!(
            s.insert(w("0"), Label::DontCare),
            Err(SampleError::DontCareSample(_))
        ));
    }

    #[test]
    fn prefix_count_counts_distinct_prefixes() {
        let s = SampleSet::from_entries(2, [(w("00"), Label::Positive), (w("01"), Label::Positive)]).unwrap();
        assert_eq!(s.prefix_count(), 4);
        assert_eq!(SampleSet::new(2).prefix_count(), 1);
    }

    fn word_strategy() -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec(0u32..3, 0..6)
    }

    fn sample_strategy() -> impl Strategy<Value = SampleSet> {
        prop::collection::vec((word_strategy(), any::<bool>()), 0..20).prop_map(|entries| {
            let mut s = SampleSet::new(3);
            for (letters, positive) in entries {
                let label = if positive { Label::Positive } else { Label::Negative };
                let _ = s.insert(Word(letters), label);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn lex_compare_is_a_total_order(u in word_strategy(), v in word_strategy(), x in word_strategy()) {
            prop_assert_eq!(lex_compare(&u, &v), lex_compare(&v, &u).reverse());
            prop_assert_eq!(lex_compare(&u, &v) == Ordering::Equal, u == v);
            if lex_compare(&u, &v) != Ordering::Greater && lex_compare(&v, &x) != Ordering::Greater {
                prop_assert_ne!(lex_compare(&u, &x), Ordering::Greater);
            }
        }

        #[test]
        fn prefixes_precede_extensions(u in word_strategy(), ext in prop::collection::vec(0u32..3, 1..4)) {
            let mut longer = u.clone();
            longer.extend(ext);
            prop_assert_eq!(lex_compare(&u, &longer), Ordering::Less);
        }

        #[test]
        fn abbadingo_round_trip(set in sample_strategy()) {
            let text = write_abbadingo(&set);
            let parsed = parse_abbadingo(&text).unwrap();
            prop_assert_eq!(&parsed, &set);
            prop_assert_eq!(write_abbadingo(&parsed), text);
            for (w, l) in set.iter() {
                prop_assert_eq!(parsed.classify(w), l);
            }
        }
    }
}
