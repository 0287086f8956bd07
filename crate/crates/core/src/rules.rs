//! Relators of the reduced braid group and the rewrite catalog derived from
//! them.
//!
//! The presentation is `<m, l, s | msms, lsls, l^-1 m l m^-1 s^-2>`. Every
//! cyclic rotation `r` of a relator or its inverse, split as `r = lhs · t`,
//! gives the equality `lhs = t^-1`; the catalog keeps each such pair once,
//! oriented so that `|lhs| <= |rhs|`.

use std::collections::HashSet;
use std::fmt;
use std::ops::Add;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::word::{invert_letters, BraidWord, Generator, Letter};

pub fn relators() -> [Vec<Letter>; 3] {
    use Letter as X;
    [
        vec![X::M, X::S, X::M, X::S],
        vec![X::L, X::S, X::L, X::S],
        vec![X::L_INV, X::M, X::L, X::M_INV, X::S_INV, X::S_INV],
    ]
}

/// All distinct cyclic rotations of the relators and their inverses, in a
/// fixed order.
pub fn relator_rotations() -> &'static [Vec<Letter>] {
    static ROTATIONS: OnceLock<Vec<Vec<Letter>>> = OnceLock::new();
    ROTATIONS.get_or_init(|| {
        let mut out: Vec<Vec<Letter>> = Vec::new();
        for rel in relators() {
            for base in [rel.clone(), invert_letters(&rel)] {
                for k in 0..base.len() {
                    let mut rot = base[k..].to_vec();
                    rot.extend_from_slice(&base[..k]);
                    if !out.contains(&rot) {
                        out.push(rot);
                    }
                }
            }
        }
        out
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId(pub u16);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{:02}", self.0)
    }
}

impl RuleId {
    pub fn parse(text: &str) -> Option<RuleId> {
        let digits = text.strip_prefix('r')?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let id = RuleId(digits.parse().ok()?);
        (usize::from(id.0) < rule_catalog().len()).then_some(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub id: RuleId,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
}

impl RewriteRule {
    pub fn lhs_word(&self) -> BraidWord {
        BraidWord::from_letters(&self.lhs)
    }

    pub fn rhs_word(&self) -> BraidWord {
        BraidWord::from_letters(&self.rhs)
    }

    pub fn is_insertion(&self) -> bool {
        self.lhs.is_empty()
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.id, self.lhs_word(), self.rhs_word())
    }
}

pub fn rule_catalog() -> &'static [RewriteRule] {
    static CATALOG: OnceLock<Vec<RewriteRule>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for rot in relator_rotations() {
            for split in 0..=rot.len() {
                let lhs = rot[..split].to_vec();
                let rhs = invert_letters(&rot[split..]);
                if lhs.len() > rhs.len() || !seen.insert((lhs.clone(), rhs.clone())) {
                    continue;
                }
                let id = RuleId(out.len() as u16);
                out.push(RewriteRule { id, lhs, rhs });
            }
        }
        out
    })
}

pub fn rule(id: RuleId) -> &'static RewriteRule {
    &rule_catalog()[usize::from(id.0)]
}

/// Exponent sums of `m`, `l`, `s` modulo 2. Every relator has even exponent
/// sum in each generator, so this is a homomorphism onto `(Z/2)^3`; it is in
/// fact the abelianization of the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ParityTriple {
    pub em: u8,
    pub el: u8,
    pub es: u8,
}

impl ParityTriple {
    pub fn of_letters(letters: &[Letter]) -> Self {
        letters.iter().fold(ParityTriple::default(), |acc, x| {
            acc + ParityTriple::of_generator(x.gen(), 1)
        })
    }

    fn of_generator(gen: Generator, exp: i64) -> Self {
        let bit = exp.rem_euclid(2) as u8;
        match gen {
            Generator::M => ParityTriple {
                em: bit,
                el: 0,
                es: 0,
            },
            Generator::L => ParityTriple {
                em: 0,
                el: bit,
                es: 0,
            },
            Generator::S => ParityTriple {
                em: 0,
                el: 0,
                es: bit,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == ParityTriple::default()
    }
}

impl Add for ParityTriple {
    type Output = ParityTriple;

    fn add(self, rhs: ParityTriple) -> ParityTriple {
        ParityTriple {
            em: self.em ^ rhs.em,
            el: self.el ^ rhs.el,
            es: self.es ^ rhs.es,
        }
    }
}

impl fmt::Display for ParityTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.em, self.el, self.es)
    }
}

pub fn parity(w: &BraidWord) -> ParityTriple {
    w.syllables()
        .iter()
        .fold(ParityTriple::default(), |acc, syl| {
            acc + ParityTriple::of_generator(syl.gen, syl.exp)
        })
}
