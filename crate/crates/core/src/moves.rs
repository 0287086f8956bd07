//! Single rewrite moves, certificates and their replay.
//!
//! A catalog move replaces an occurrence of one side of a rule by the other
//! side and freely reduces. Moves are only admitted when the free cancellation
//! stays inside the inserted side (no cancellation cascading past it); every
//! admitted move then has a single admitted move as its inverse.
//!
//! Boundary moves insert or delete one letter at the ends of a word: `l`/`s`
//! on the left, `m`/`s` on the right. They change the group element and are
//! only valid in (1,1)-certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rules::{rule, rule_catalog, ParityTriple, RuleId};
use crate::word::{is_reduced, BraidWord, Generator, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Replace `lhs` by `rhs`.
    Forward,
    /// Replace `rhs` by `lhs`.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Leading,
    Trailing,
}

impl End {
    pub fn admits(self, gen: Generator) -> bool {
        match self {
            End::Leading => gen != Generator::M,
            End::Trailing => gen != Generator::L,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Rule {
        rule: RuleId,
        pos: usize,
        dir: Direction,
    },
    Boundary {
        end: End,
        letter: Letter,
        insert: bool,
    },
}

impl Move {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Move::Boundary { .. })
    }
}

/// Replaces `word[pos..pos + src_len]` by `dst` and freely reduces. Returns
/// `None` if the cancellation would cascade past `dst`.
pub(crate) fn splice(
    word: &[Letter],
    pos: usize,
    src_len: usize,
    dst: &[Letter],
) -> Option<Vec<Letter>> {
    let u = &word[..pos];
    let v = &word[pos + src_len..];
    let mut i = u.len();
    let mut a = 0;
    while i > 0 && a < dst.len() && u[i - 1] == dst[a].inverse() {
        i -= 1;
        a += 1;
    }
    let mut j = 0;
    let mut b = dst.len();
    while j < v.len() && b > a && v[j] == dst[b - 1].inverse() {
        j += 1;
        b -= 1;
    }
    if a == b && i > 0 && j < v.len() && u[i - 1] == v[j].inverse() {
        return None;
    }
    let mut out = Vec::with_capacity(i + (b - a) + (v.len() - j));
    out.extend_from_slice(&u[..i]);
    out.extend_from_slice(&dst[a..b]);
    out.extend_from_slice(&v[j..]);
    Some(out)
}

fn sides(id: RuleId, dir: Direction) -> (&'static [Letter], &'static [Letter]) {
    let r = rule(id);
    match dir {
        Direction::Forward => (&r.lhs, &r.rhs),
        Direction::Backward => (&r.rhs, &r.lhs),
    }
}

/// Applies a move to a reduced letter string. `None` if the move does not
/// match at its position or is not admitted.
pub fn apply_move(word: &[Letter], mv: &Move) -> Option<Vec<Letter>> {
    match *mv {
        Move::Rule { rule: id, pos, dir } => {
            if usize::from(id.0) >= rule_catalog().len() {
                return None;
            }
            let (src, dst) = sides(id, dir);
            if pos + src.len() > word.len() || &word[pos..pos + src.len()] != src {
                return None;
            }
            splice(word, pos, src.len(), dst)
        }
        Move::Boundary {
            end,
            letter,
            insert,
        } => {
            if !end.admits(letter.gen()) {
                return None;
            }
            match (end, insert) {
                (End::Leading, true) => {
                    if word.first() == Some(&letter.inverse()) {
                        return None;
                    }
                    let mut out = Vec::with_capacity(word.len() + 1);
                    out.push(letter);
                    out.extend_from_slice(word);
                    Some(out)
                }
                (End::Leading, false) => {
                    (word.first() == Some(&letter)).then(|| word[1..].to_vec())
                }
                (End::Trailing, true) => {
                    if word.last() == Some(&letter.inverse()) {
                        return None;
                    }
                    let mut out = word.to_vec();
                    out.push(letter);
                    Some(out)
                }
                (End::Trailing, false) => {
                    (word.last() == Some(&letter)).then(|| word[..word.len() - 1].to_vec())
                }
            }
        }
    }
}

/// Calls `f` for every admitted catalog move on `word` whose result has at
/// most `max_len` letters, in `(rule_id, position, direction)` order.
pub(crate) fn for_each_catalog_move(
    word: &[Letter],
    max_len: usize,
    mut f: impl FnMut(Move, Vec<Letter>),
) {
    let n = word.len();
    for r in rule_catalog() {
        for pos in 0..=n {
            for dir in [Direction::Forward, Direction::Backward] {
                let (src, dst) = match dir {
                    Direction::Forward => (&r.lhs, &r.rhs),
                    Direction::Backward => (&r.rhs, &r.lhs),
                };
                if src == dst && dir == Direction::Backward {
                    continue;
                }
                if pos + src.len() > n || word[pos..pos + src.len()] != src[..] {
                    continue;
                }
                // Lower bound on the result length; skip the allocation when
                // even full cancellation cannot bring it under the cap.
                if n - src.len() + dst.len() > max_len + 2 * dst.len() {
                    continue;
                }
                if let Some(out) = splice(word, pos, src.len(), dst) {
                    if out.len() <= max_len {
                        f(
                            Move::Rule {
                                rule: r.id,
                                pos,
                                dir,
                            },
                            out,
                        );
                    }
                }
            }
        }
    }
}

fn boundary_moves(word: &[Letter]) -> Vec<Move> {
    let mut out = Vec::new();
    for (end, gens) in [
        (End::Leading, [Generator::L, Generator::S]),
        (End::Trailing, [Generator::M, Generator::S]),
    ] {
        for gen in gens {
            for inverse in [false, true] {
                let letter = Letter::new(gen, inverse);
                for insert in [true, false] {
                    let mv = Move::Boundary {
                        end,
                        letter,
                        insert,
                    };
                    if apply_move(word, &mv).is_some() {
                        out.push(mv);
                    }
                }
            }
        }
    }
    out
}

/// Finds the first move turning `from` into `to`.
pub(crate) fn derive_step(from: &[Letter], to: &[Letter], allow_boundary: bool) -> Option<Move> {
    if allow_boundary && from.len().abs_diff(to.len()) == 1 {
        if let Some(mv) = boundary_moves(from)
            .into_iter()
            .find(|mv| apply_move(from, mv).as_deref() == Some(to))
        {
            return Some(mv);
        }
    }
    let mut found = None;
    for_each_catalog_move(from, to.len(), |mv, out| {
        if found.is_none() && out == to {
            found = Some(mv);
        }
    });
    found
}

/// Replayable witness that `start` can be rewritten into `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub start: BraidWord,
    pub steps: Vec<Move>,
    pub end: BraidWord,
}

impl Certificate {
    /// Builds a certificate from a chain of words in which consecutive words
    /// differ by one move. Panics if some link has no single move, which
    /// would be a bug in the search.
    pub(crate) fn from_chain(chain: &[Vec<Letter>], allow_boundary: bool) -> Certificate {
        let steps = chain
            .windows(2)
            .map(|pair| {
                derive_step(&pair[0], &pair[1], allow_boundary).unwrap_or_else(|| {
                    panic!(
                        "no single move links {} and {}",
                        BraidWord::from_letters(&pair[0]),
                        BraidWord::from_letters(&pair[1])
                    )
                })
            })
            .collect();
        Certificate {
            start: BraidWord::from_letters(chain.first().map_or(&[][..], |w| w)),
            steps,
            end: BraidWord::from_letters(chain.last().map_or(&[][..], |w| w)),
        }
    }

    pub fn trivial(word: &BraidWord) -> Certificate {
        Certificate {
            start: word.clone(),
            steps: Vec::new(),
            end: word.clone(),
        }
    }

    /// Longest intermediate word, in letters.
    pub fn max_word_len(&self) -> usize {
        self.words()
            .map_or(0, |ws| ws.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// All words visited by the certificate, or `None` if a step fails.
    pub fn words(&self) -> Option<Vec<Vec<Letter>>> {
        let mut cur = self.start.letters();
        let mut out = vec![cur.clone()];
        for mv in &self.steps {
            cur = apply_move(&cur, mv)?;
            out.push(cur.clone());
        }
        Some(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateDoc::from(self)).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate, String> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
        Certificate::try_from(doc)
    }
}

/// Replays a group-equality certificate: only catalog moves, every step must
/// apply at its recorded position, the parity triple must stay constant and
/// the final word must match.
pub fn replay(cert: &Certificate) -> bool {
    replay_inner(cert, false)
}

/// Replays a (1,1)-equivalence certificate, which may also use boundary moves.
pub fn replay_one_one(cert: &Certificate) -> bool {
    replay_inner(cert, true)
}

fn replay_inner(cert: &Certificate, allow_boundary: bool) -> bool {
    let mut cur = cert.start.letters();
    let parity = ParityTriple::of_letters(&cur);
    for mv in &cert.steps {
        if mv.is_boundary() && !allow_boundary {
            return false;
        }
        cur = match apply_move(&cur, mv) {
            Some(next) => next,
            None => return false,
        };
        if !is_reduced(&cur) {
            return false;
        }
        if !allow_boundary && ParityTriple::of_letters(&cur) != parity {
            return false;
        }
    }
    BraidWord::from_letters(&cur) == cert.end
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub rule: String,
    pub pos: usize,
    pub dir: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub start: String,
    pub end: String,
    pub steps: Vec<StepDoc>,
}

fn letter_name(x: Letter) -> String {
    x.to_string()
}

fn parse_letter(text: &str) -> Option<Letter> {
    let (gen, inverse) = match text {
        "m" => (Generator::M, false),
        "m^-1" => (Generator::M, true),
        "l" => (Generator::L, false),
        "l^-1" => (Generator::L, true),
        "s" => (Generator::S, false),
        "s^-1" => (Generator::S, true),
        _ => return None,
    };
    Some(Letter::new(gen, inverse))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let doc = StepDoc::from_move(self, 0);
        write!(f, "{} {}", doc.rule, doc.dir)
    }
}

impl StepDoc {
    fn from_move(mv: &Move, len_before: usize) -> StepDoc {
        match *mv {
            Move::Rule { rule, pos, dir } => StepDoc {
                rule: rule.to_string(),
                pos,
                dir: match dir {
                    Direction::Forward => "fwd",
                    Direction::Backward => "bwd",
                }
                .to_string(),
            },
            Move::Boundary {
                end,
                letter,
                insert,
            } => {
                let pos = match (end, insert) {
                    (End::Leading, _) => 0,
                    (End::Trailing, true) => len_before,
                    (End::Trailing, false) => len_before.saturating_sub(1),
                };
                let tag = match end {
                    End::Leading => "lead",
                    End::Trailing => "trail",
                };
                StepDoc {
                    rule: format!("{tag}:{}", letter_name(letter)),
                    pos,
                    dir: if insert { "ins" } else { "del" }.to_string(),
                }
            }
        }
    }

    fn to_move(&self) -> Result<Move, String> {
        if let Some((tag, letter)) = self.rule.split_once(':') {
            let end = match tag {
                "lead" => End::Leading,
                "trail" => End::Trailing,
                _ => return Err(format!("unknown boundary tag {tag:?}")),
            };
            let letter = parse_letter(letter).ok_or_else(|| format!("bad letter {letter:?}"))?;
            let insert = match self.dir.as_str() {
                "ins" => true,
                "del" => false,
                other => return Err(format!("bad boundary direction {other:?}")),
            };
            return Ok(Move::Boundary {
                end,
                letter,
                insert,
            });
        }
        let rule =
            RuleId::parse(&self.rule).ok_or_else(|| format!("unknown rule {:?}", self.rule))?;
        let dir = match self.dir.as_str() {
            "fwd" => Direction::Forward,
            "bwd" => Direction::Backward,
            other => return Err(format!("bad rule direction {other:?}")),
        };
        Ok(Move::Rule {
            rule,
            pos: self.pos,
            dir,
        })
    }
}

impl From<&Certificate> for CertificateDoc {
    fn from(cert: &Certificate) -> Self {
        let mut len = usize::try_from(cert.start.len()).unwrap_or(usize::MAX);
        let mut cur = cert.start.letters();
        let mut steps = Vec::with_capacity(cert.steps.len());
        for mv in &cert.steps {
            steps.push(StepDoc::from_move(mv, len));
            if let Some(next) = apply_move(&cur, mv) {
                cur = next;
                len = cur.len();
            }
        }
        CertificateDoc {
            start: cert.start.to_string(),
            end: cert.end.to_string(),
            steps,
        }
    }
}

impl TryFrom<CertificateDoc> for Certificate {
    type Error = String;

    fn try_from(doc: CertificateDoc) -> Result<Self, Self::Error> {
        let start: BraidWord = doc.start.parse().map_err(|e| format!("start: {e}"))?;
        let end: BraidWord = doc.end.parse().map_err(|e| format!("end: {e}"))?;
        let steps = doc
            .steps
            .iter()
            .map(StepDoc::to_move)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Certificate { start, steps, end })
    }
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Certificate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = CertificateDoc::deserialize(deserializer)?;
        Certificate::try_from(doc).map_err(serde::de::Error::custom)
    }
}
