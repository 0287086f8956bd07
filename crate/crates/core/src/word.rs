//! Words over the generators `m`, `l`, `s`.
//!
//! A [`BraidWord`] is stored run-length encoded as a list of [`Syllable`]s and
//! is always freely reduced: adjacent syllables carry distinct generators and
//! no exponent is zero. The search machinery works on flat [`Letter`]
//! strings instead; conversion between the two is cheap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    M,
    L,
    S,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::M, Generator::L, Generator::S];

    pub fn symbol(self) -> char {
        match self {
            Generator::M => 'm',
            Generator::L => 'l',
            Generator::S => 's',
        }
    }

    fn from_symbol(c: char) -> Option<Self> {
        match c {
            'm' => Some(Generator::M),
            'l' => Some(Generator::L),
            's' => Some(Generator::S),
            _ => None,
        }
    }

    fn code(self) -> i8 {
        match self {
            Generator::M => 1,
            Generator::L => 2,
            Generator::S => 3,
        }
    }
}

/// A single generator or its inverse, packed into one byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i8);

impl Letter {
    pub const M: Letter = Letter(1);
    pub const M_INV: Letter = Letter(-1);
    pub const L: Letter = Letter(2);
    pub const L_INV: Letter = Letter(-2);
    pub const S: Letter = Letter(3);
    pub const S_INV: Letter = Letter(-3);

    pub fn new(gen: Generator, inverse: bool) -> Self {
        let c = gen.code();
        Letter(if inverse { -c } else { c })
    }

    pub fn gen(self) -> Generator {
        match self.0.abs() {
            1 => Generator::M,
            2 => Generator::L,
            _ => Generator::S,
        }
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}^-1", self.gen().symbol())
        } else {
            write!(f, "{}", self.gen().symbol())
        }
    }
}

/// Inverse of a letter string: reversed order, each letter inverted.
pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|x| x.inverse()).collect()
}

/// Free reduction of a letter string with a cancellation stack.
pub fn reduce_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for x in letters {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0] != w[1].inverse())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub gen: Generator,
    pub exp: i64,
}

impl Syllable {
    pub fn new(gen: Generator, exp: i64) -> Self {
        Syllable { gen, exp }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.gen.symbol())
        } else {
            write!(f, "{}^{}", self.gen.symbol(), self.exp)
        }
    }
}

/// Freely reduced word in the reduced braid group. The empty word is the
/// identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    syllables: Vec<Syllable>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord::default()
    }

    /// Builds a word from raw syllables (zero exponents and repeated
    /// generators allowed) and freely reduces it.
    pub fn free_reduce<I: IntoIterator<Item = Syllable>>(raw: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for syl in raw {
            push_syllable(&mut out, syl);
        }
        BraidWord { syllables: out }
    }

    pub fn from_pairs(pairs: &[(Generator, i64)]) -> Self {
        Self::free_reduce(pairs.iter().map(|&(g, e)| Syllable::new(g, e)))
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Self::free_reduce(letters.iter().map(|x| Syllable::new(x.gen(), x.sign())))
    }

    pub fn generator(gen: Generator, exp: i64) -> Self {
        Self::free_reduce([Syllable::new(gen, exp)])
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length: sum of absolute exponents.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn first(&self) -> Option<Syllable> {
        self.syllables.first().copied()
    }

    pub fn last(&self) -> Option<Syllable> {
        self.syllables.last().copied()
    }

    /// Expands the syllables into single letters.
    ///
    /// Panics if the word is too long to address in memory.
    pub fn letters(&self) -> Vec<Letter> {
        let n = usize::try_from(self.len()).expect("word too long to expand");
        let mut out = Vec::with_capacity(n);
        for syl in &self.syllables {
            let x = Letter::new(syl.gen, syl.exp < 0);
            out.extend(std::iter::repeat_n(x, syl.exp.unsigned_abs() as usize));
        }
        out
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut out = self.syllables.clone();
        for &syl in &other.syllables {
            push_syllable(&mut out, syl);
        }
        BraidWord { syllables: out }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.gen, -s.exp))
                .collect(),
        }
    }

    pub fn exponent_sum(&self, gen: Generator) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp)
            .sum()
    }

    pub fn contains(&self, gen: Generator) -> bool {
        self.syllables.iter().any(|s| s.gen == gen)
    }

    /// True if every syllable of `gen` has the same exponent sign.
    pub fn is_sign_pure(&self, gen: Generator) -> bool {
        let mut signs = self
            .syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp.signum());
        match signs.next() {
            None => true,
            Some(first) => signs.all(|x| x == first),
        }
    }
}

fn push_syllable(out: &mut Vec<Syllable>, syl: Syllable) {
    if syl.exp == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.gen == syl.gen => {
            top.exp = top
                .exp
                .checked_add(syl.exp)
                .expect("exponent overflow in free reduction");
            if top.exp == 0 {
                out.pop();
            }
        }
        _ => out.push(syl),
    }
}

impl fmt::Display for BraidWord {
    /// Canonical form: syllables separated by single spaces, `^` only when the
    /// exponent is not 1. The identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, syl) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{syl}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_word(text)
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_word(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses the word grammar
///
/// ```text
/// word       := (term WS*)*
/// term       := gen ('^' signed-int)?
/// gen        := 'm' | 'l' | 's'
/// signed-int := '-'? digit+
/// ```
///
/// A lone `1` is accepted as the identity so that the canonical formatter
/// round-trips.
pub fn parse_word(text: &str) -> Result<BraidWord, ParseError> {
    if text.trim() == "1" {
        return Ok(BraidWord::identity());
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut raw = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let gen = Generator::from_symbol(c).ok_or(ParseError::BadCharacter { at, found: c })?;
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i].1 == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && chars[i].1 == '-' {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let byte_start = chars.get(start).map_or(text.len(), |c| c.0);
            let byte_end = chars.get(i).map_or(text.len(), |c| c.0);
            let lexeme = &text[byte_start..byte_end];
            if i == digits_start {
                return Err(ParseError::MalformedInteger {
                    at: byte_start,
                    text: lexeme.to_string(),
                });
            }
            exp = lexeme.parse().map_err(|_| ParseError::MalformedInteger {
                at: byte_start,
                text: lexeme.to_string(),
            })?;
        }
        raw.push(Syllable::new(gen, exp));
    }
    Ok(BraidWord::free_reduce(raw))
}
