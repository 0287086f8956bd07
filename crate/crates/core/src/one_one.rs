//! (1,1)-words, their block count, and budgeted search for short (1,1)-words
//! in a (1,1)-equivalence class.
//!
//! Two words are (1,1)-equivalent when they agree in the group up to a left
//! factor in `<l, s>` and a right factor in `<m, s>`. Every class therefore
//! has representatives with no leading `l`/`s` letter and no trailing `m`/`s`
//! letter; the searches below run on such stripped words only and reach
//! neighbours through catalog moves, through relator rotations whose leading
//! part lies in `<l, s>` (absorbed on the left), and through rotations whose
//! trailing part lies in `<m, s>` (absorbed on the right).

use std::fmt;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::equiv::Budget;
use crate::error::{BudgetError, OneOneError};
use crate::moves::{for_each_catalog_move, Certificate};
use crate::rules::relator_rotations;
use crate::search::{bidirectional, explore, Expand, Meeting, SearchStats, Visit, Word};
use crate::torus::{torus_letters, TorusType};
use crate::word::{invert_letters, reduce_letters, BraidWord, Generator, Letter};

/// Longest s-free segment `parse_one_one` accepts.
pub const MAX_SEGMENT_LEN: usize = 512;

/// Cap on the boundary powers `l^a`, `m^b` tried when scoring a search node.
const MAX_AUGMENT: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub torus_type: TorusType,
    pub word: BraidWord,
}

/// `ω_1 s^{n_1} ω_2 ⋯ s^{n_{k-1}} ω_k` with every `ω_j` a torus word, or the
/// empty word, which counts as one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OneOneWord {
    Empty,
    Blocks { blocks: Vec<Block>, seps: Vec<i64> },
}

impl OneOneWord {
    pub fn k(&self) -> usize {
        match self {
            OneOneWord::Empty => 1,
            OneOneWord::Blocks { blocks, .. } => blocks.len(),
        }
    }

    pub fn blocks(&self) -> &[Block] {
        match self {
            OneOneWord::Empty => &[],
            OneOneWord::Blocks { blocks, .. } => blocks,
        }
    }

    pub fn seps(&self) -> &[i64] {
        match self {
            OneOneWord::Empty => &[],
            OneOneWord::Blocks { seps, .. } => seps,
        }
    }

    pub fn flatten(&self) -> BraidWord {
        let mut out = BraidWord::identity();
        for (j, block) in self.blocks().iter().enumerate() {
            if j > 0 {
                out = out.concat(&BraidWord::generator(Generator::S, self.seps()[j - 1]));
            }
            out = out.concat(&block.word);
        }
        out
    }

    pub fn torus_type(&self) -> Option<TorusType> {
        match self.blocks() {
            [only] => Some(only.torus_type),
            _ => None,
        }
    }
}

impl fmt::Display for OneOneWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneOneWord::Empty => write!(f, "1"),
            OneOneWord::Blocks { blocks, seps } => {
                for (j, block) in blocks.iter().enumerate() {
                    if j > 0 {
                        match seps[j - 1] {
                            0 => write!(f, " ")?,
                            1 => write!(f, " s ")?,
                            n => write!(f, " s^{n} ")?,
                        }
                    }
                    write!(f, "[{}]", block.word)?;
                }
                Ok(())
            }
        }
    }
}

/// Factorization of one s-free segment: block types and block lengths.
type Factors = Box<[(TorusType, usize)]>;

/// Minimum-block factorizations of s-free segments, with memoized torus
/// words and segment results.
#[derive(Default)]
struct Parser {
    torus: FxHashMap<(i64, i64), Box<[Letter]>>,
    segments: FxHashMap<Box<[Letter]>, Factors>,
}

impl Parser {
    const SEGMENT_CACHE_LIMIT: usize = 1 << 20;

    fn is_torus(&mut self, el: i64, em: i64, letters: &[Letter]) -> Option<TorusType> {
        let t = TorusType::new(el, em).ok()?;
        let word = self.torus.entry((el, em)).or_insert_with(|| {
            torus_letters(t)
                .expect("valid torus type")
                .into_boxed_slice()
        });
        (**word == *letters).then_some(t)
    }

    /// Leftmost-longest minimum factorization of an s-free segment into torus
    /// words, as `(type, length)` pairs.
    fn segment(&mut self, seg: &[Letter]) -> Box<[(TorusType, usize)]> {
        if let Some(hit) = self.segments.get(seg) {
            return hit.clone();
        }
        let n = seg.len();
        // ends[i]: every j > i with seg[i..j] a torus word, ascending.
        let mut ends: Vec<Vec<(usize, TorusType)>> = vec![Vec::new(); n];
        for (i, slot) in ends.iter_mut().enumerate() {
            let (mut el, mut em) = (0i64, 0i64);
            let (mut l_sign, mut m_sign) = (0i64, 0i64);
            for j in i..n {
                let x = seg[j];
                let (sum, sign) = match x.gen() {
                    Generator::L => (&mut el, &mut l_sign),
                    Generator::M => (&mut em, &mut m_sign),
                    Generator::S => unreachable!("segments are s-free"),
                };
                if *sign != 0 && *sign != x.sign() {
                    break;
                }
                *sign = x.sign();
                *sum += x.sign();
                if let Some(t) = self.is_torus(el, em, &seg[i..=j]) {
                    slot.push((j + 1, t));
                }
            }
        }
        let mut best = vec![usize::MAX; n + 1];
        best[n] = 0;
        for i in (0..n).rev() {
            for &(j, _) in &ends[i] {
                best[i] = best[i].min(best[j].saturating_add(1));
            }
        }
        let mut out = Vec::with_capacity(best[0]);
        let mut i = 0;
        while i < n {
            let &(j, t) = ends[i]
                .iter()
                .rev()
                .find(|(j, _)| best[*j].saturating_add(1) == best[i])
                .expect("single letters are torus words");
            out.push((t, j - i));
            i = j;
        }
        let out = out.into_boxed_slice();
        if self.segments.len() >= Self::SEGMENT_CACHE_LIMIT {
            self.segments.clear();
        }
        self.segments.insert(seg.into(), out.clone());
        out
    }
}

/// Splits an s-interior letter string into s-free segments and the
/// separating s-exponents.
fn segments(letters: &[Letter]) -> (Vec<&[Letter]>, Vec<i64>) {
    let mut segs = Vec::new();
    let mut seps = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < letters.len() {
        if letters[i].gen() != Generator::S {
            i += 1;
            continue;
        }
        segs.push(&letters[start..i]);
        let mut exp = 0;
        while i < letters.len() && letters[i].gen() == Generator::S {
            exp += letters[i].sign();
            i += 1;
        }
        seps.push(exp);
        start = i;
    }
    segs.push(&letters[start..]);
    (segs, seps)
}

fn assemble(letters: &[Letter], parts: &[Box<[(TorusType, usize)]>], seps: Vec<i64>) -> OneOneWord {
    let mut blocks = Vec::new();
    let mut all_seps = Vec::new();
    let mut pos = 0;
    for (s, part) in parts.iter().enumerate() {
        if s > 0 {
            all_seps.push(seps[s - 1]);
            pos += seps[s - 1].unsigned_abs() as usize;
        }
        for (b, &(t, len)) in part.iter().enumerate() {
            if b > 0 {
                all_seps.push(0);
            }
            blocks.push(Block {
                torus_type: t,
                word: BraidWord::from_letters(&letters[pos..pos + len]),
            });
            pos += len;
        }
    }
    OneOneWord::Blocks {
        blocks,
        seps: all_seps,
    }
}

/// Minimum-block (1,1)-word spelling `w` letter for letter.
pub fn parse_one_one(w: &BraidWord) -> Result<OneOneWord, OneOneError> {
    let (Some(first), Some(last)) = (w.first(), w.last()) else {
        return Ok(OneOneWord::Empty);
    };
    if w.syllables().iter().all(|syl| syl.gen == Generator::S) {
        return Err(OneOneError::PurePowerOfS);
    }
    if first.gen == Generator::S {
        return Err(OneOneError::LeadingS);
    }
    if last.gen == Generator::S {
        return Err(OneOneError::TrailingS);
    }
    let letters = w.letters();
    let (segs, seps) = segments(&letters);
    if let Some(long) = segs.iter().find(|seg| seg.len() > MAX_SEGMENT_LEN) {
        return Err(OneOneError::SegmentTooLong(long.len()));
    }
    let mut parser = Parser::default();
    let parts: Vec<_> = segs.iter().map(|seg| parser.segment(seg)).collect();
    Ok(assemble(&letters, &parts, seps))
}

/// Deletes leading `l`/`s` syllables and trailing `m`/`s` syllables until
/// neither applies. A trailing deletion that would leave the empty word is
/// not made, so a lone `m`-power is its own reduction.
pub fn reduce_11(w: &BraidWord) -> BraidWord {
    let syls = w.syllables();
    let (mut lo, mut hi) = (0, syls.len());
    loop {
        if lo < hi && syls[lo].gen != Generator::M {
            lo += 1;
        } else if hi > lo + 1 && syls[hi - 1].gen != Generator::L {
            hi -= 1;
        } else {
            break;
        }
    }
    BraidWord::free_reduce(syls[lo..hi].iter().copied())
}

fn strippable(end_gen: Generator, leading: bool) -> bool {
    if leading {
        end_gen != Generator::M
    } else {
        end_gen != Generator::L
    }
}

/// Letter-by-letter deletion of every boundary letter, the empty word
/// allowed. Returns the chain of words, `w` first.
fn strip_chain(w: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = vec![w.to_vec()];
    let (mut lo, mut hi) = (0, w.len());
    loop {
        if lo < hi && strippable(w[lo].gen(), true) {
            lo += 1;
        } else if lo < hi && strippable(w[hi - 1].gen(), false) {
            hi -= 1;
        } else {
            break;
        }
        out.push(w[lo..hi].to_vec());
    }
    out
}

fn strip(w: &[Letter]) -> &[Letter] {
    let (mut lo, mut hi) = (0, w.len());
    while lo < hi && (strippable(w[lo].gen(), true) || strippable(w[hi - 1].gen(), false)) {
        if strippable(w[lo].gen(), true) {
            lo += 1;
        } else {
            hi -= 1;
        }
    }
    &w[lo..hi]
}

/// `(inserted, replacement)` pairs. A prefix pair comes from a relator
/// rotation `a·b` with `a` in `<l, s>`: the word `a^-1 c` is reached from `c`
/// by boundary insertions and then rewritten to `b c`. A suffix pair comes
/// from `a·b` with `b` in `<m, s>`: `c b^-1` is rewritten to `c a`.
struct BoundaryRelators {
    prefix: Vec<(Vec<Letter>, Vec<Letter>)>,
    suffix: Vec<(Vec<Letter>, Vec<Letter>)>,
}

fn boundary_relators() -> &'static BoundaryRelators {
    static TABLE: OnceLock<BoundaryRelators> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut prefix = Vec::new();
        let mut suffix = Vec::new();
        for rot in relator_rotations() {
            for j in 1..rot.len() {
                let (a, b) = rot.split_at(j);
                if a.iter().all(|x| strippable(x.gen(), true)) {
                    let pair = (invert_letters(a), b.to_vec());
                    if !prefix.contains(&pair) {
                        prefix.push(pair);
                    }
                }
                if b.iter().all(|x| strippable(x.gen(), false)) {
                    let pair = (invert_letters(b), a.to_vec());
                    if !suffix.contains(&pair) {
                        suffix.push(pair);
                    }
                }
            }
        }
        BoundaryRelators { prefix, suffix }
    })
}

#[derive(Clone, Copy)]
enum Edge {
    Catalog,
    Prefix(usize),
    Suffix(usize),
}

struct OneOneExpander {
    max_len: usize,
}

impl OneOneExpander {
    /// Calls `f(edge, raw)` for every move out of the stripped word `c`,
    /// where `raw` is the result before stripping.
    fn for_each_edge(&self, c: &[Letter], mut f: impl FnMut(Edge, &[Letter]) -> ControlFlow<()>) {
        let mut stop = false;
        for_each_catalog_move(c, self.max_len, |_, raw| {
            if !stop {
                stop = f(Edge::Catalog, &raw).is_break();
            }
        });
        if stop {
            return;
        }
        let table = boundary_relators();
        for (i, (ins, rep)) in table.prefix.iter().enumerate() {
            if ins.len() + c.len() > self.max_len {
                continue;
            }
            let raw = reduce_letters(rep.iter().chain(c).copied());
            if raw.len() <= self.max_len && f(Edge::Prefix(i), &raw).is_break() {
                return;
            }
        }
        for (i, (ins, rep)) in table.suffix.iter().enumerate() {
            if ins.len() + c.len() > self.max_len {
                continue;
            }
            let raw = reduce_letters(c.iter().chain(rep).copied());
            if raw.len() <= self.max_len && f(Edge::Suffix(i), &raw).is_break() {
                return;
            }
        }
    }

    /// Single-move chain from `c` along `edge`, ending at `strip(raw)`.
    fn edge_chain(c: &[Letter], edge: Edge, raw: &[Letter]) -> Vec<Vec<Letter>> {
        let mut out = vec![c.to_vec()];
        let table = boundary_relators();
        match edge {
            Edge::Catalog => {}
            Edge::Prefix(i) => {
                let ins = &table.prefix[i].0;
                for t in (0..ins.len()).rev() {
                    out.push(ins[t..].iter().chain(c).copied().collect());
                }
            }
            Edge::Suffix(i) => {
                let ins = &table.suffix[i].0;
                for t in 1..=ins.len() {
                    out.push(c.iter().chain(&ins[..t]).copied().collect());
                }
            }
        }
        out.extend(strip_chain(raw));
        out
    }

    fn forward_trail(&self, x: &[Letter], y: &[Letter]) -> Option<Vec<Vec<Letter>>> {
        let mut found = None;
        self.for_each_edge(x, |edge, raw| {
            if strip(raw) == y {
                found = Some(Self::edge_chain(x, edge, raw));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found
    }

    /// Chain of single moves from node `x` to an adjacent node `y`, `x` first.
    fn trail(&self, x: &[Letter], y: &[Letter]) -> Vec<Vec<Letter>> {
        if let Some(chain) = self.forward_trail(x, y) {
            return chain;
        }
        let mut back = self
            .forward_trail(y, x)
            .expect("search nodes are linked by an edge in one direction");
        back.reverse();
        back
    }

    /// Full chain along a path of adjacent nodes.
    fn path_chain(&self, nodes: &[Vec<Letter>]) -> Vec<Vec<Letter>> {
        let mut out = vec![nodes[0].clone()];
        for pair in nodes.windows(2) {
            out.extend(self.trail(&pair[0], &pair[1]).into_iter().skip(1));
        }
        out
    }
}

impl Expand for OneOneExpander {
    fn expand(&self, node: &[Letter]) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        self.for_each_edge(node, |_, raw| {
            let s = strip(raw);
            if s != node {
                out.push(s.into());
            }
            ControlFlow::Continue(())
        });
        out
    }
}

/// Appends `next` to `chain`, dropping its first word when it repeats the
/// current last word.
fn join(chain: &mut Vec<Vec<Letter>>, next: Vec<Vec<Letter>>) {
    let skip = usize::from(chain.last() == next.first());
    chain.extend(next.into_iter().skip(skip));
}

/// Budgeted (1,1)-equivalence. Only `Equivalent` and `Unknown` verdicts are
/// possible; boundary moves do not preserve the parity triple.
pub fn one_one_equivalent(
    w1: &BraidWord,
    w2: &BraidWord,
    budget: &Budget,
) -> Result<crate::equiv::EquivalenceVerdict, BudgetError> {
    use crate::equiv::EquivalenceVerdict;
    budget.validate()?;
    let (a, b) = (w1.letters(), w2.letters());
    let max_len = budget.resolve_len(a.len().max(b.len()));
    let expander = OneOneExpander { max_len };
    let (start, goal) = (strip(&a), strip(&b));
    let (meeting, stats) = bidirectional(
        start.into(),
        goal.into(),
        &expander,
        max_len,
        budget.max_nodes,
        budget.workers,
    );
    let nodes = match meeting {
        Meeting::Path(nodes) => nodes,
        Meeting::Exhausted => return Ok(EquivalenceVerdict::Unknown(stats)),
    };
    let mut chain = strip_chain(&a);
    join(&mut chain, expander.path_chain(&nodes));
    let mut tail = strip_chain(&b);
    tail.reverse();
    join(&mut chain, tail);
    Ok(EquivalenceVerdict::Equivalent(Certificate::from_chain(
        &chain, true,
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerStatus {
    /// The witness is a single torus word (or the empty word): the length is 1.
    Exact,
    /// No lower bound beyond 1 is claimed.
    Unproven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthReport {
    pub upper: usize,
    pub witness: OneOneWord,
    /// (1,1)-certificate from the input to the flattened witness.
    pub cert: Certificate,
    pub lower_status: LowerStatus,
    pub stats: SearchStats,
    pub remark: Option<&'static str>,
}

/// Rank of a scored node; smaller is better.
type Rank = (usize, usize, i64, i64, i64, i64);

struct Scored {
    rank: Rank,
    a: i64,
    b: i64,
    word: OneOneWord,
}

fn max_run(letters: &[Letter], gen: Generator) -> i64 {
    let mut best = 0;
    let mut run = 0;
    let mut prev: Option<Letter> = None;
    for &x in letters {
        if x.gen() == gen && prev == Some(x) {
            run += 1;
        } else if x.gen() == gen {
            run = 1;
        } else {
            run = 0;
        }
        best = best.max(run);
        prev = Some(x);
    }
    best
}

fn power(gen: Generator, exp: i64) -> impl Iterator<Item = Letter> {
    std::iter::repeat_n(Letter::new(gen, exp < 0), exp.unsigned_abs() as usize)
}

/// Symmetric range `0, -1, 1, -2, 2, ...` up to `cap`.
fn augment_range(cap: i64) -> impl Iterator<Item = i64> + Clone {
    (0..=cap).flat_map(|n| if n == 0 { vec![0] } else { vec![-n, n] })
}

impl Parser {
    /// Best (1,1)-word among `l^a c m^b` for a stripped nonempty `c`.
    fn score(&mut self, c: &[Letter]) -> Scored {
        let (segs, seps) = segments(c);
        let first_cap = (max_run(segs[0], Generator::L) + 1).min(MAX_AUGMENT);
        let last_cap = (max_run(segs[segs.len() - 1], Generator::M) + 1).min(MAX_AUGMENT);
        let with = |seg: &[Letter], a: i64, b: i64| -> Vec<Letter> {
            power(Generator::L, a)
                .chain(seg.iter().copied())
                .chain(power(Generator::M, b))
                .collect()
        };

        let (a, b, first, last);
        if segs.len() == 1 {
            let mut best: Option<(Rank, i64, i64, Factors)> = None;
            for a_try in augment_range(first_cap) {
                for b_try in augment_range(last_cap) {
                    let part = self.segment(&with(segs[0], a_try, b_try));
                    let rank = (
                        part.len(),
                        c.len(),
                        a_try.abs() + b_try.abs(),
                        a_try.abs(),
                        a_try,
                        b_try,
                    );
                    if best.as_ref().is_none_or(|(r, ..)| rank < *r) {
                        best = Some((rank, a_try, b_try, part));
                    }
                }
            }
            let (_, a_best, b_best, part) = best.expect("nonempty range");
            (a, b, first, last) = (a_best, b_best, part, None);
        } else {
            let mut pick = |seg: &[Letter], cap: i64, leading: bool| {
                let mut best: Option<((usize, i64, i64), i64, Factors)> = None;
                for e in augment_range(cap) {
                    let part = if leading {
                        self.segment(&with(seg, e, 0))
                    } else {
                        self.segment(&with(seg, 0, e))
                    };
                    let rank = (part.len(), e.abs(), e);
                    if best.as_ref().is_none_or(|(r, ..)| rank < *r) {
                        best = Some((rank, e, part));
                    }
                }
                let (_, e, part) = best.expect("nonempty range");
                (e, part)
            };
            let (a_best, f) = pick(segs[0], first_cap, true);
            let (b_best, l) = pick(segs[segs.len() - 1], last_cap, false);
            (a, b, first, last) = (a_best, b_best, f, Some(l));
        }

        let mut parts = vec![first];
        if let Some(l) = last {
            for seg in &segs[1..segs.len() - 1] {
                parts.push(self.segment(seg));
            }
            parts.push(l);
        }
        let letters: Vec<Letter> = power(Generator::L, a)
            .chain(c.iter().copied())
            .chain(power(Generator::M, b))
            .collect();
        let k = parts.iter().map(|p| p.len()).sum();
        Scored {
            rank: (k, c.len(), a.abs() + b.abs(), a.abs(), a, b),
            a,
            b,
            word: assemble(&letters, &parts, seps),
        }
    }
}

/// Chain of boundary insertions turning `c` into `l^a c m^b`.
fn augment_chain(c: &[Letter], a: i64, b: i64) -> Vec<Vec<Letter>> {
    let mut cur = c.to_vec();
    let mut out = vec![cur.clone()];
    for x in power(Generator::L, a) {
        cur.insert(0, x);
        out.push(cur.clone());
    }
    for x in power(Generator::M, b) {
        cur.push(x);
        out.push(cur.clone());
    }
    out
}

/// Upper bound on the (1,1)-length of `w` from the best (1,1)-word found in
/// its budgeted (1,1)-neighbourhood.
///
/// The search explores stripped representatives best-first; each visited
/// word `c` is scored over `l^a c m^b` for small `a`, `b`, keeping the first
/// strictly better candidate by `(k, |c|, |a| + |b|, |a|, a, b)`. Once a
/// single torus word is found from a word of `L` letters, the search only
/// continues while frontier words of at most `L` letters remain.
pub fn one_one_length_upper(w: &BraidWord, budget: &Budget) -> Result<LengthReport, BudgetError> {
    budget.validate()?;
    let letters = w.letters();
    let max_len = budget.resolve_len(letters.len());
    let mut parser = Parser::default();

    // The input's own (1,1)-word comes first.
    let reduced = reduce_11(w);
    let plain = {
        let r = reduced.letters();
        let (segs, seps) = segments(&r);
        if r.is_empty() {
            OneOneWord::Empty
        } else {
            let parts: Vec<_> = segs.iter().map(|seg| parser.segment(seg)).collect();
            assemble(&r, &parts, seps)
        }
    };
    let mut stats = SearchStats {
        discovered: 0,
        expanded: 0,
        max_len,
        max_nodes: budget.max_nodes,
        space_exhausted: false,
    };
    if plain.k() == 1 {
        let chain = reduce_chain(&letters, &reduced.letters());
        return Ok(report(plain, Certificate::from_chain(&chain, true), stats));
    }

    let expander = OneOneExpander { max_len };
    let start = strip(&letters);
    let mut best: Option<(usize, Scored)> = None;
    let (tree, search_stats) = explore(
        start.into(),
        &expander,
        max_len,
        budget.max_nodes,
        budget.workers,
        |idx, node| {
            let scored = if node.is_empty() {
                Scored {
                    rank: (1, 0, 0, 0, 0, 0),
                    a: 0,
                    b: 0,
                    word: OneOneWord::Empty,
                }
            } else {
                parser.score(node)
            };
            let improves = scored.rank.0 < plain.k()
                && best.as_ref().is_none_or(|(_, b)| scored.rank < b.rank);
            if improves {
                best = Some((idx, scored));
            }
            match &best {
                Some((_, b)) if b.rank.0 == 1 => Visit::StopAbove(b.rank.1),
                _ => Visit::Continue,
            }
        },
    );
    stats = search_stats;

    let Some((idx, scored)) = best else {
        let chain = reduce_chain(&letters, &reduced.letters());
        return Ok(report(plain, Certificate::from_chain(&chain, true), stats));
    };
    let nodes = tree.path_to(idx);
    let mut chain = strip_chain(&letters);
    join(&mut chain, expander.path_chain(&nodes));
    let node = chain.last().expect("nonempty chain").clone();
    join(&mut chain, augment_chain(&node, scored.a, scored.b));
    Ok(report(
        scored.word,
        Certificate::from_chain(&chain, true),
        stats,
    ))
}

/// Boundary deletions from `w` down to its substring `r = reduce_11(w)`.
fn reduce_chain(w: &[Letter], r: &[Letter]) -> Vec<Vec<Letter>> {
    let lo = (0..=w.len() - r.len())
        .find(|&lo| &w[lo..lo + r.len()] == r)
        .expect("reduction is a substring");
    let hi = lo + r.len();
    let mut out = vec![w.to_vec()];
    for i in 1..=lo {
        out.push(w[i..].to_vec());
    }
    for j in (hi..w.len()).rev() {
        out.push(w[lo..j].to_vec());
    }
    out
}

fn report(witness: OneOneWord, cert: Certificate, stats: SearchStats) -> LengthReport {
    let upper = witness.k();
    LengthReport {
        upper,
        lower_status: if upper == 1 {
            LowerStatus::Exact
        } else {
            LowerStatus::Unproven
        },
        remark: matches!(witness, OneOneWord::Empty)
            .then_some("empty witness: the (1,1)-length of the empty word is taken to be 1"),
        witness,
        cert,
        stats,
    }
}

/// Type of a single-torus-word witness, if the length search finds one. The
/// empty witness is reported as type `(1, 0)`. `None` is not a proof that no
/// such witness exists.
pub fn is_torus_position(w: &BraidWord, budget: &Budget) -> Result<Option<TorusType>, BudgetError> {
    let rep = one_one_length_upper(w, budget)?;
    Ok(match &rep.witness {
        OneOneWord::Empty => Some(TorusType::new(1, 0).expect("coprime")),
        other => other.torus_type(),
    })
}
