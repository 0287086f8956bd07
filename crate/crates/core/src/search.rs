//! Budgeted best-first exploration over reduced letter strings.
//!
//! Each side keeps a search tree (discovered words with parent links) and a
//! frontier ordered by `(letter length, discovery index)`. A step pops every
//! frontier entry sharing the minimal length (up to [`BATCH`]), expands them,
//! possibly in parallel, and merges the neighbour lists sequentially in batch
//! order. Results therefore do not depend on the number of workers.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use indexmap::IndexSet;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::word::Letter;

pub(crate) type Word = Box<[Letter]>;

const BATCH: usize = 512;

pub(crate) trait Expand: Sync {
    /// Neighbours of `node` in a deterministic order.
    fn expand(&self, node: &[Letter]) -> Vec<Word>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub discovered: usize,
    pub expanded: usize,
    pub max_len: usize,
    pub max_nodes: usize,
    /// Frontier ran dry before the node budget did: everything reachable
    /// under the length cap was seen.
    pub space_exhausted: bool,
}

pub(crate) struct Tree {
    nodes: IndexSet<Word, FxBuildHasher>,
    parents: Vec<u32>,
    frontier: BinaryHeap<Reverse<(usize, u32)>>,
}

impl Tree {
    fn new(root: Word) -> Self {
        let mut nodes = IndexSet::with_hasher(FxBuildHasher);
        let len = root.len();
        nodes.insert(root);
        let mut frontier = BinaryHeap::new();
        frontier.push(Reverse((len, 0)));
        Tree {
            nodes,
            parents: vec![u32::MAX],
            frontier,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn word(&self, idx: usize) -> &[Letter] {
        &self.nodes[idx]
    }

    fn min_len(&self) -> Option<usize> {
        self.frontier.peek().map(|Reverse((len, _))| *len)
    }

    fn pop_batch(&mut self) -> Vec<u32> {
        let Some(len) = self.min_len() else {
            return Vec::new();
        };
        let mut batch = Vec::new();
        while batch.len() < BATCH {
            match self.frontier.peek() {
                Some(Reverse((l, idx))) if *l == len => {
                    batch.push(*idx);
                    self.frontier.pop();
                }
                _ => break,
            }
        }
        batch
    }

    fn insert(&mut self, word: Word, parent: u32) -> Option<u32> {
        let len = word.len();
        let (idx, fresh) = self.nodes.insert_full(word);
        if !fresh {
            return None;
        }
        self.parents.push(parent);
        self.frontier.push(Reverse((len, idx as u32)));
        Some(idx as u32)
    }

    /// Words from the root to `idx`, root first.
    pub(crate) fn path_to(&self, idx: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut cur = idx as u32;
        while cur != u32::MAX {
            out.push(self.nodes[cur as usize].to_vec());
            cur = self.parents[cur as usize];
        }
        out.reverse();
        out
    }
}

struct Pool {
    #[cfg(feature = "parallel")]
    inner: Option<rayon::ThreadPool>,
}

impl Pool {
    fn new(workers: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            let inner = (workers > 1).then(|| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .expect("thread pool")
            });
            Pool { inner }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = workers;
            Pool {}
        }
    }

    fn expand_all<E: Expand>(&self, expander: &E, tree: &Tree, batch: &[u32]) -> Vec<Vec<Word>> {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.inner {
            use rayon::prelude::*;
            return pool.install(|| {
                batch
                    .par_iter()
                    .map(|&i| expander.expand(tree.word(i as usize)))
                    .collect()
            });
        }
        batch
            .iter()
            .map(|&i| expander.expand(tree.word(i as usize)))
            .collect()
    }
}

pub(crate) enum Meeting {
    /// Chain of words from start to goal.
    Path(Vec<Vec<Letter>>),
    Exhausted,
}

/// Bidirectional search from `start` to `goal`.
pub(crate) fn bidirectional<E: Expand>(
    start: Word,
    goal: Word,
    expander: &E,
    max_len: usize,
    max_nodes: usize,
    workers: usize,
) -> (Meeting, SearchStats) {
    let mut stats = SearchStats {
        discovered: 1,
        expanded: 0,
        max_len,
        max_nodes,
        space_exhausted: false,
    };
    if start == goal {
        return (Meeting::Path(vec![start.to_vec()]), stats);
    }
    let pool = Pool::new(workers);
    let mut sides = [Tree::new(start), Tree::new(goal)];
    stats.discovered = 2;
    loop {
        let pick = match (sides[0].min_len(), sides[1].min_len()) {
            (Some(a), Some(b)) => {
                if (a, sides[0].len()) <= (b, sides[1].len()) {
                    0
                } else {
                    1
                }
            }
            _ => {
                stats.space_exhausted = true;
                return (Meeting::Exhausted, stats);
            }
        };
        let batch = sides[pick].pop_batch();
        let expansions = pool.expand_all(expander, &sides[pick], &batch);
        stats.expanded += batch.len();
        let [fwd, bwd] = &mut sides;
        let (this, other) = if pick == 0 { (fwd, bwd) } else { (bwd, fwd) };
        for (&parent, neighbours) in batch.iter().zip(expansions) {
            for nb in neighbours {
                if this.nodes.contains(&nb) {
                    continue;
                }
                if stats.discovered >= max_nodes {
                    return (Meeting::Exhausted, stats);
                }
                let hit = other.nodes.get_index_of(&nb);
                let idx = this.insert(nb, parent).expect("fresh node");
                stats.discovered += 1;
                if let Some(j) = hit {
                    let here = this.path_to(idx as usize);
                    let there = other.path_to(j);
                    let (mut chain, mut back) = if pick == 0 {
                        (here, there)
                    } else {
                        (there, here)
                    };
                    back.reverse();
                    chain.extend(back.into_iter().skip(1));
                    return (Meeting::Path(chain), stats);
                }
            }
        }
    }
}

/// What [`explore`] does after a visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Visit {
    Continue,
    /// Keep expanding while frontier words have at most this many letters.
    StopAbove(usize),
}

/// Single-source exploration. `visit` sees every discovered node (the root
/// first) and may stop the search early.
pub(crate) fn explore<E: Expand>(
    start: Word,
    expander: &E,
    max_len: usize,
    max_nodes: usize,
    workers: usize,
    mut visit: impl FnMut(usize, &[Letter]) -> Visit,
) -> (Tree, SearchStats) {
    let pool = Pool::new(workers);
    let mut tree = Tree::new(start);
    let mut stats = SearchStats {
        discovered: 1,
        expanded: 0,
        max_len,
        max_nodes,
        space_exhausted: false,
    };
    let mut limit = usize::MAX;
    match visit(0, tree.word(0)) {
        Visit::Continue => {}
        Visit::StopAbove(len) => limit = len,
    }
    loop {
        if tree.min_len().is_some_and(|len| len > limit) {
            return (tree, stats);
        }
        let batch = tree.pop_batch();
        if batch.is_empty() {
            stats.space_exhausted = true;
            return (tree, stats);
        }
        let expansions = pool.expand_all(expander, &tree, &batch);
        stats.expanded += batch.len();
        for (&parent, neighbours) in batch.iter().zip(expansions) {
            for nb in neighbours {
                if tree.nodes.contains(&nb) {
                    continue;
                }
                if stats.discovered >= max_nodes {
                    return (tree, stats);
                }
                let idx = tree.insert(nb, parent).expect("fresh node") as usize;
                stats.discovered += 1;
                match visit(idx, tree.word(idx)) {
                    Visit::Continue => {}
                    Visit::StopAbove(len) => limit = limit.min(len),
                }
            }
        }
    }
}
