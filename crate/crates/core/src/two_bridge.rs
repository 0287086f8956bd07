//! Continued fractions of 2-bridge parameters, the braid descriptions of the
//! two tunnel positions they determine, and the level-number bounds read off
//! an expansion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CfError;
use crate::word::{BraidWord, Generator, Syllable};

/// Exact rational `num/den`, reduced with `den > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, CfError> {
        let den = den.into();
        if den.is_zero() {
            return Err(CfError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl FromStr for Rational {
    type Err = CfError;

    fn from_str(text: &str) -> Result<Self, CfError> {
        let int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| CfError::Malformed(text.to_string()))
        };
        match text.split_once('/') {
            Some((n, d)) => Rational::new(int(n)?, int(d)?),
            None => Rational::new(int(text)?, 1),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CfForm {
    /// `[2a_1, 2b_1, ..., 2a_n, 2b_n]`
    AllEven,
    /// `[2c_1, d_1, ..., 2c_k, d_k]`
    EvenOdd,
    /// `[c'_1, 2d'_1, ..., c'_k, 2d'_k]`
    OddEven,
}

impl CfForm {
    pub fn name(self) -> &'static str {
        match self {
            CfForm::AllEven => "all-even",
            CfForm::EvenOdd => "even-odd",
            CfForm::OddEven => "odd-even",
        }
    }

    /// Whether entry `i` (from 0) must be even.
    fn needs_even(self, i: usize) -> bool {
        match self {
            CfForm::AllEven => true,
            CfForm::EvenOdd => i.is_multiple_of(2),
            CfForm::OddEven => i % 2 == 1,
        }
    }

    fn admits(self, entries: &[BigInt]) -> bool {
        entries.len().is_multiple_of(2)
            && entries
                .iter()
                .enumerate()
                .all(|(i, e)| !self.needs_even(i) || e.is_even())
    }
}

impl FromStr for CfForm {
    type Err = CfError;

    fn from_str(text: &str) -> Result<Self, CfError> {
        match text {
            "all-even" => Ok(CfForm::AllEven),
            "even-odd" => Ok(CfForm::EvenOdd),
            "odd-even" => Ok(CfForm::OddEven),
            _ => Err(CfError::Malformed(text.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CFExpansion {
    entries: Vec<BigInt>,
    form: CfForm,
}

impl CFExpansion {
    /// Checks nonemptiness, nonzero entries, even length and the parity
    /// pattern of `form`. Whether the value is defined is checked by
    /// [`cf_value`].
    pub fn new(entries: Vec<BigInt>, form: CfForm) -> Result<Self, CfError> {
        if entries.is_empty() {
            return Err(CfError::Empty);
        }
        if let Some(index) = entries.iter().position(Zero::is_zero) {
            return Err(CfError::ZeroEntry { index });
        }
        if !form.admits(&entries) {
            return Err(CfError::FormMismatch(form.name()));
        }
        Ok(CFExpansion { entries, form })
    }

    pub fn from_i64(entries: &[i64], form: CfForm) -> Result<Self, CfError> {
        Self::new(entries.iter().map(|&e| BigInt::from(e)).collect(), form)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn form(&self) -> CfForm {
        self.form
    }

    /// Same entries under another form tag, if they satisfy it.
    pub fn with_form(&self, form: CfForm) -> Result<Self, CfError> {
        Self::new(self.entries.clone(), form)
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Parses `E1,E2,...`, optionally bracketed.
pub fn parse_entries(text: &str) -> Result<Vec<BigInt>, CfError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| CfError::Malformed(t.trim().to_string()))
        })
        .collect()
}

fn value_of(entries: &[BigInt]) -> Result<BigRational, CfError> {
    let (last, rest) = entries.split_last().ok_or(CfError::Empty)?;
    let mut x = BigRational::from_integer(last.clone());
    for (index, e) in rest.iter().enumerate().rev() {
        if x.is_zero() {
            return Err(CfError::DivisionByZero { index: index + 1 });
        }
        x = BigRational::from_integer(e.clone()) + x.recip();
    }
    Ok(x)
}

/// `e_1 + 1/(e_2 + 1/(... + 1/e_n))`, evaluated from the right.
pub fn cf_value(e: &CFExpansion) -> Result<Rational, CfError> {
    value_of(&e.entries).map(Rational)
}

fn check_two_bridge(r: &Rational) -> Result<(), CfError> {
    let (num, den) = (r.num(), r.den());
    if num.is_odd() && den.is_even() && num.abs() > *den {
        Ok(())
    } else {
        Err(CfError::Parity {
            num: num.to_string(),
            den: den.to_string(),
        })
    }
}

/// Even integer nearest to `x`.
fn nearest_even(x: &BigRational) -> BigInt {
    let half = x / BigInt::from(2);
    let two = BigInt::from(2);
    // round(x / 2) * 2; ties cannot occur for the values met here.
    let lo = half.floor().to_integer();
    let frac = &half - BigRational::from_integer(lo.clone());
    if frac * BigInt::from(2) < BigRational::one() {
        lo * two
    } else {
        (lo + 1) * two
    }
}

/// The all-even expansion of `p/q` (`p` odd, `q` even, `|p| > q`): take the
/// nearest even integer, invert the remainder, repeat.
pub fn conway_params(r: &Rational) -> Result<CFExpansion, CfError> {
    check_two_bridge(r)?;
    let mut x = r.0.clone();
    let mut entries = Vec::new();
    loop {
        let e = nearest_even(&x);
        let rem = &x - BigRational::from_integer(e.clone());
        entries.push(e);
        if rem.is_zero() {
            break;
        }
        x = rem.recip();
    }
    CFExpansion::new(entries, CfForm::AllEven)
}

/// Form invariants hold and the expansion evaluates to `r`.
pub fn validate_expansion(r: &Rational, e: &CFExpansion) -> bool {
    !e.entries.is_empty()
        && e.entries.iter().all(|x| !x.is_zero())
        && e.form.admits(&e.entries)
        && value_of(&e.entries).is_ok_and(|v| v == r.0)
}

fn exponent(x: &BigInt) -> Result<i64, CfError> {
    x.to_i64()
        .ok_or_else(|| CfError::ExponentOverflow(x.to_string()))
}

fn half(x: &BigInt) -> BigInt {
    x / BigInt::from(2)
}

fn require(e: &CFExpansion, form: CfForm) -> Result<(), CfError> {
    if e.form == form || e.form == CfForm::AllEven {
        Ok(())
    } else {
        Err(CfError::FormMismatch(form.name()))
    }
}

/// `m s^{d_k} l^{-c_k} ... s^{d_1} l^{-c_1}` for `[2c_1, d_1, ..., 2c_k, d_k]`.
pub fn rho1_word(e: &CFExpansion) -> Result<BraidWord, CfError> {
    require(e, CfForm::EvenOdd)?;
    let mut syls = vec![Syllable::new(Generator::M, 1)];
    for pair in e.entries.chunks(2).rev() {
        syls.push(Syllable::new(Generator::S, exponent(&pair[1])?));
        syls.push(Syllable::new(Generator::L, -exponent(&half(&pair[0]))?));
    }
    Ok(BraidWord::free_reduce(syls))
}

/// `m s^{-c'_1} l^{d'_1} ... s^{-c'_k} l^{d'_k}` for `[c'_1, 2d'_1, ...]`.
pub fn rho2_word(e: &CFExpansion) -> Result<BraidWord, CfError> {
    require(e, CfForm::OddEven)?;
    let mut syls = vec![Syllable::new(Generator::M, 1)];
    for pair in e.entries.chunks(2) {
        syls.push(Syllable::new(Generator::S, -exponent(&pair[0])?));
        syls.push(Syllable::new(Generator::L, exponent(&half(&pair[1]))?));
    }
    Ok(BraidWord::free_reduce(syls))
}

fn bound_from(halves: impl Iterator<Item = BigInt>) -> usize {
    2 + halves
        .skip(1)
        .map(|c| if c.abs() >= BigInt::from(2) { 2 } else { 1 })
        .sum::<usize>()
}

/// `sum_{i >= 2} min(|c_i|, 2) + 2`.
pub fn level_bound_rho1(e: &CFExpansion) -> Result<usize, CfError> {
    require(e, CfForm::EvenOdd)?;
    Ok(bound_from(e.entries.iter().step_by(2).map(half)))
}

/// `sum_{i >= 2} min(|d'_i|, 2) + 2`.
pub fn level_bound_rho2(e: &CFExpansion) -> Result<usize, CfError> {
    require(e, CfForm::OddEven)?;
    Ok(bound_from(e.entries.iter().skip(1).step_by(2).map(half)))
}

/// `[2a_1, 2b_1, ..., 2a_n, 2b_n] -> [-2b_n, -2a_n, ..., -2b_1, -2a_1]`.
pub fn flip_params(e: &CFExpansion) -> Result<CFExpansion, CfError> {
    if e.form != CfForm::AllEven {
        return Err(CfError::FormMismatch(CfForm::AllEven.name()));
    }
    CFExpansion::new(
        e.entries.iter().rev().map(|x| -x).collect(),
        CfForm::AllEven,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Rho1,
    Rho2,
}

impl Position {
    pub fn form(self) -> CfForm {
        match self {
            Position::Rho1 => CfForm::EvenOdd,
            Position::Rho2 => CfForm::OddEven,
        }
    }

    pub fn word(self, e: &CFExpansion) -> Result<BraidWord, CfError> {
        match self {
            Position::Rho1 => rho1_word(e),
            Position::Rho2 => rho2_word(e),
        }
    }

    pub fn bound(self, e: &CFExpansion) -> Result<usize, CfError> {
        match self {
            Position::Rho1 => level_bound_rho1(e),
            Position::Rho2 => level_bound_rho2(e),
        }
    }
}

impl FromStr for Position {
    type Err = CfError;

    fn from_str(text: &str) -> Result<Self, CfError> {
        match text {
            "rho1" => Ok(Position::Rho1),
            "rho2" => Ok(Position::Rho2),
            _ => Err(CfError::Malformed(text.to_string())),
        }
    }
}

/// Caps for [`optimize_expansion`]; `None` means the Conway-derived default
/// (twice the largest Conway entry, and the Conway length).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OptimizeCaps {
    pub max_entry: Option<BigInt>,
    pub max_len: Option<usize>,
}

struct Optimizer<'a> {
    form: CfForm,
    position: Position,
    max_entry: &'a BigInt,
    max_len: usize,
    best: Option<(usize, Vec<BigInt>)>,
}

impl Optimizer<'_> {
    fn offer(&mut self, entries: &[BigInt]) {
        let e = CFExpansion {
            entries: entries.to_vec(),
            form: self.form,
        };
        let bound = self.position.bound(&e).expect("form checked during search");
        let better = match &self.best {
            None => true,
            Some((b, es)) => match bound.cmp(b) {
                Ordering::Less => true,
                Ordering::Equal => entries < es.as_slice(),
                Ordering::Greater => false,
            },
        };
        if better {
            self.best = Some((bound, entries.to_vec()));
        }
    }

    /// Entries `e` with `|x - e| <= 1`, nonzero, within the cap and of the
    /// parity required at `index`.
    fn candidates(&self, x: &BigRational, index: usize) -> Vec<BigInt> {
        let lo = x.floor().to_integer();
        let hi = x.ceil().to_integer();
        let mut out = if lo == hi {
            vec![&lo - 1, lo.clone(), &lo + 1]
        } else {
            vec![lo, hi]
        };
        out.retain(|e| {
            !e.is_zero()
                && e.abs() <= *self.max_entry
                && (!self.form.needs_even(index) || e.is_even())
        });
        out
    }

    fn walk(&mut self, x: BigRational, entries: &mut Vec<BigInt>) {
        let index = entries.len();
        if index >= self.max_len {
            return;
        }
        for e in self.candidates(&x, index) {
            let rem = &x - BigRational::from_integer(e.clone());
            entries.push(e);
            if rem.is_zero() {
                if entries.len().is_multiple_of(2) {
                    self.offer(entries);
                }
            } else {
                self.walk(rem.recip(), entries);
            }
            entries.pop();
        }
    }
}

/// Searches expansions of the form required by `position` for the smallest
/// level bound, ties broken by the lexicographically smallest entries.
///
/// Each entry is an integer within distance 1 of the current complete
/// quotient; this contains the Conway expansion, so the result is never
/// worse than the Conway bound.
pub fn optimize_expansion(
    r: &Rational,
    position: Position,
    caps: &OptimizeCaps,
) -> Result<(CFExpansion, usize), CfError> {
    let conway = conway_params(r)?;
    let default_entry = conway
        .entries
        .iter()
        .map(|e| e.abs())
        .max()
        .expect("nonempty")
        * 2;
    let max_entry = caps.max_entry.clone().unwrap_or(default_entry);
    let max_len = caps.max_len.unwrap_or(conway.entries.len());
    let form = position.form();
    let mut opt = Optimizer {
        form,
        position,
        max_entry: &max_entry,
        max_len,
        best: None,
    };
    opt.offer(&conway.entries);
    opt.walk(r.0.clone(), &mut Vec::new());
    let (bound, entries) = opt.best.expect("conway baseline offered");
    let form = if CfForm::AllEven.admits(&entries) {
        CfForm::AllEven
    } else {
        form
    };
    Ok((CFExpansion::new(entries, form)?, bound))
}
