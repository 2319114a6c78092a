//! Freely reduced words over a finite, named generating set.
//!
//! A [`Word`] always carries the [`Alphabet`] it lives over, and every binary
//! operation checks that both operands share it. Words are reduced when they
//! are built, so an unreduced word cannot be represented.
//!
//! Text form: lowercase names are generators, the same name with an
//! uppercase first character is the inverse, `x^k` repeats a letter (negative
//! `k` inverts), and `1` is the identity. Names are a letter optionally
//! followed by digits and primes (`a`, `g12`, `b'`).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest `|k|` accepted in an `x^k` term.
const MAX_EXPONENT: u32 = 1_000_000;

#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet("rank must be at least 1".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "`{name}` is not a generator name (expected a lowercase letter, optional digits, optional primes)"
                )));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate name `{name}`")));
            }
        }
        Ok(Alphabet { names, lookup })
    }

    /// `a, b, c, …` up to rank 26, `g1 … gn` beyond that.
    pub fn standard(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidAlphabet("rank must be at least 1".into()));
        }
        if rank <= 26 {
            Alphabet::new((0..rank).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Alphabet::new((1..=rank).map(|i| format!("g{i}")))
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    /// A name not yet in use: `preferred`, or `preferred` with primes appended.
    pub fn fresh_name(&self, preferred: &str) -> String {
        let mut name = preferred.to_string();
        while self.lookup.contains_key(&name) {
            name.push('\'');
        }
        name
    }

    /// This alphabet with one more generator appended at the end. Words over
    /// `self` embed into the result with unchanged letter indices.
    pub fn extended(&self, preferred: &str) -> Alphabet {
        let mut names = self.names.clone();
        names.push(self.fresh_name(preferred));
        Alphabet::new(names).expect("fresh name keeps the alphabet valid")
    }

    /// True when `self` is a prefix of `other` (same names, same order).
    pub fn embeds_into(&self, other: &Alphabet) -> bool {
        self.rank() <= other.rank() && self.names[..] == other.names[..self.rank()]
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.names.hash(state);
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.names.join(", "))
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars().peekable();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
        chars.next();
    }
    chars.all(|c| c == '\'')
}

pub(crate) fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> Result<()> {
    if same_alphabet(a, b) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

/// A generator or its inverse. Ordered `a < A < b < B < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: u32,
    inverted: bool,
}

impl Letter {
    pub fn new(index: usize, inverted: bool) -> Self {
        Letter {
            index: index as u32,
            inverted,
        }
    }

    pub fn generator(index: usize) -> Self {
        Letter::new(index, false)
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverted
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inverted: !self.inverted,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverted != other.inverted
    }

    /// All `2n` letters of a rank-`n` alphabet in their canonical order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..rank).flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
    }
}

/// Appends `letter` to an already reduced buffer, cancelling if needed.
#[inline]
pub(crate) fn push_reduced(buf: &mut Vec<Letter>, letter: Letter) {
    if buf.last().is_some_and(|&last| last.cancels(letter)) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

/// Number of letter pairs cancelled at the junction of `left · right`, both
/// already reduced.
#[inline]
pub(crate) fn junction_cancellation(left: &[Letter], right: &[Letter]) -> usize {
    left.iter().rev().zip(right).take_while(|(l, r)| l.cancels(**r)).count()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word {
            alphabet: Arc::clone(alphabet),
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, index: usize) -> Result<Self> {
        Word::new(alphabet, [Letter::generator(index)])
    }

    /// Builds the free reduction of `letters`.
    pub fn new(alphabet: &Arc<Alphabet>, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut buf = Vec::new();
        for letter in letters {
            if letter.index() >= alphabet.rank() {
                return Err(Error::InvalidAlphabet(format!(
                    "letter index {} out of range for {}",
                    letter.index(),
                    alphabet
                )));
            }
            push_reduced(&mut buf, letter);
        }
        Ok(Word {
            alphabet: Arc::clone(alphabet),
            letters: buf,
        })
    }

    /// Caller guarantees `letters` is reduced and in range.
    pub(crate) fn from_reduced(alphabet: &Arc<Alphabet>, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| !w[0].cancels(w[1])));
        debug_assert!(letters.iter().all(|l| l.index() < alphabet.rank()));
        Word {
            alphabet: Arc::clone(alphabet),
            letters,
        }
    }

    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Self> {
        let letters = parse_letters(text, alphabet)?;
        Word::new(alphabet, letters)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        check_same(&self.alphabet, &other.alphabet)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let k = junction_cancellation(&self.letters, &other.letters);
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * k);
        letters.extend_from_slice(&self.letters[..self.len() - k]);
        letters.extend_from_slice(&other.letters[k..]);
        Word::from_reduced(&self.alphabet, letters)
    }

    pub fn inverse(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word::from_reduced(&self.alphabet, letters)
    }

    /// `v⁻¹ · self · v`.
    pub fn conjugate_by(&self, v: &Word) -> Result<Word> {
        check_same(&self.alphabet, &v.alphabet)?;
        Ok(v.inverse().mul_unchecked(self).mul_unchecked(v))
    }

    /// Letter pairs annihilated at the junction when reducing `self · other`.
    pub fn cancellation_length(&self, other: &Word) -> Result<usize> {
        check_same(&self.alphabet, &other.alphabet)?;
        Ok(junction_cancellation(&self.letters, &other.letters))
    }

    /// The contiguous subword `[start, end)`.
    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word::from_reduced(&self.alphabet, self.letters[start..end].to_vec())
    }

    /// Reinterprets this word over an alphabet that extends its own.
    pub fn embed(&self, target: &Arc<Alphabet>) -> Result<Word> {
        if !self.alphabet.embeds_into(target) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: target.to_string(),
            });
        }
        Ok(Word::from_reduced(target, self.letters.clone()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for letter in &self.letters {
            let name = self.alphabet.name(letter.index());
            if letter.is_inverse() {
                let mut chars = name.chars();
                let first = chars.next().expect("names are nonempty");
                write!(f, "{}{}", first.to_ascii_uppercase(), chars.as_str())?;
            } else {
                f.write_str(name)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

fn parse_letters(text: &str, alphabet: &Alphabet) -> Result<Vec<Letter>> {
    let chars: Vec<char> = text.chars().collect();
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err(Error::parse(0, "empty word (write `1` for the identity)"));
    }

    let mut letters = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::parse(i, format!("unexpected character `{c}`")));
        }
        let start = i;
        i += 1;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        while i < chars.len() && chars[i] == '\'' {
            i += 1;
        }
        let token: String = chars[start..i].iter().collect();
        let letter = resolve_name(&token, alphabet)
            .ok_or_else(|| Error::parse(start, format!("unknown generator `{token}` for {alphabet}")))?;

        let mut exponent: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            let exp_start = i;
            i += 1;
            let negative = i < chars.len() && chars[i] == '-';
            if negative {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if digits_start == i {
                return Err(Error::parse(exp_start, "malformed exponent: expected digits after `^`"));
            }
            let digits: String = chars[digits_start..i].iter().collect();
            let magnitude: u32 = digits
                .parse()
                .ok()
                .filter(|&m| m <= MAX_EXPONENT)
                .ok_or_else(|| Error::parse(digits_start, format!("exponent exceeds {MAX_EXPONENT}")))?;
            exponent = if negative {
                -(magnitude as i64)
            } else {
                magnitude as i64
            };
        }
        let letter = if exponent < 0 { letter.inverse() } else { letter };
        letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
    }
    Ok(letters)
}

fn resolve_name(token: &str, alphabet: &Alphabet) -> Option<Letter> {
    if let Some(i) = alphabet.index_of(token) {
        return Some(Letter::new(i, false));
    }
    let mut chars = token.chars();
    let first = chars.next()?;
    if first.is_ascii_uppercase() {
        let lowered = format!("{}{}", first.to_ascii_lowercase(), chars.as_str());
        return alphabet.index_of(&lowered).map(|i| Letter::new(i, true));
    }
    None
}
