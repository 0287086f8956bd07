//! Budgeted word problem in the reduced braid group.

use serde::{Deserialize, Serialize};

use crate::error::BudgetError;
use crate::moves::{for_each_catalog_move, Certificate};
use crate::rules::{parity, ParityTriple};
use crate::search::{bidirectional, Expand, Meeting, SearchStats, Word};
use crate::word::{BraidWord, Letter};

pub const DEFAULT_MAX_NODES: usize = 1_000_000;

/// Search limits. `max_len` defaults to `2 * max(|w1|, |w2|) + 8` when unset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_len: Option<usize>,
    pub max_nodes: usize,
    pub workers: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_len: None,
            max_nodes: DEFAULT_MAX_NODES,
            workers: 1,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: usize) -> Self {
        Budget {
            max_nodes,
            ..Budget::default()
        }
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        if self.max_nodes == 0 {
            return Err(BudgetError::NonPositive("max_nodes"));
        }
        if self.max_len == Some(0) {
            return Err(BudgetError::NonPositive("max_len"));
        }
        if self.workers == 0 {
            return Err(BudgetError::NonPositive("workers"));
        }
        Ok(())
    }

    pub fn resolve_len(&self, longest_input: usize) -> usize {
        self.max_len.unwrap_or(2 * longest_input + 8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equivalent(Certificate),
    Distinct {
        invariant: &'static str,
        left: ParityTriple,
        right: ParityTriple,
    },
    Unknown(SearchStats),
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            EquivalenceVerdict::Equivalent(cert) => Some(cert),
            _ => None,
        }
    }
}

pub(crate) struct CatalogExpander {
    pub max_len: usize,
}

impl Expand for CatalogExpander {
    fn expand(&self, node: &[Letter]) -> Vec<Word> {
        let mut out = Vec::new();
        for_each_catalog_move(node, self.max_len, |_, w| out.push(w.into_boxed_slice()));
        out
    }
}

/// Decides `w1 = w2` in the group when the parity triple separates them or a
/// rewrite chain is found within budget; otherwise reports `Unknown`.
pub fn equivalent(
    w1: &BraidWord,
    w2: &BraidWord,
    budget: &Budget,
) -> Result<EquivalenceVerdict, BudgetError> {
    budget.validate()?;
    let (p1, p2) = (parity(w1), parity(w2));
    if p1 != p2 {
        return Ok(EquivalenceVerdict::Distinct {
            invariant: "parity",
            left: p1,
            right: p2,
        });
    }
    let (a, b) = (w1.letters(), w2.letters());
    let max_len = budget.resolve_len(a.len().max(b.len()));
    let expander = CatalogExpander { max_len };
    let (meeting, stats) = bidirectional(
        a.into_boxed_slice(),
        b.into_boxed_slice(),
        &expander,
        max_len,
        budget.max_nodes,
        budget.workers,
    );
    Ok(match meeting {
        Meeting::Path(chain) => {
            EquivalenceVerdict::Equivalent(Certificate::from_chain(&chain, false))
        }
        Meeting::Exhausted => EquivalenceVerdict::Unknown(stats),
    })
}
