//! Torus words read off the directed lattice path from `(0, 0)` to `(p, q)`.
//!
//! The unit squares whose interiors meet the open segment from the origin to
//! `(p, q)` are collected; in each square the vertices on the opposite side
//! of the segment from the square's lower right vertex are chosen. When
//! `p > 0 > q` the square at `(p, q)`, and when `p < 0 < q` the square at the
//! origin, contribute their two upper vertices instead. The directed path is
//! the shortest lattice path through all chosen vertices; horizontal steps
//! read as `l^{±1}` and vertical steps as `m^{±1}`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::TorusError;
use crate::word::{BraidWord, Generator, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusType {
    p: i64,
    q: i64,
}

impl TorusType {
    pub fn new(p: i64, q: i64) -> Result<Self, TorusError> {
        if p.unsigned_abs().gcd(&q.unsigned_abs()) != 1 {
            return Err(TorusError::InvalidType { p, q });
        }
        Ok(TorusType { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_axis(&self) -> bool {
        self.p == 0 || self.q == 0
    }
}

impl fmt::Display for TorusType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePath {
    pub vertices: Vec<(i64, i64)>,
}

impl LatticePath {
    /// One letter per unit step.
    pub fn letters(&self) -> Vec<Letter> {
        self.vertices
            .windows(2)
            .map(|e| {
                let (dx, dy) = (e[1].0 - e[0].0, e[1].1 - e[0].1);
                if dy == 0 {
                    Letter::new(Generator::L, dx < 0)
                } else {
                    Letter::new(Generator::M, dy < 0)
                }
            })
            .collect()
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let (q, r) = (a / b, a % b);
    if r != 0 && ((r < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Lower left corners of the unit squares whose interiors meet the open
/// segment from the origin to `(p, q)`, both entries nonzero.
fn crossed_squares(p: i64, q: i64) -> Vec<(i64, i64)> {
    let (p, q) = (p as i128, q as i128);
    let mut out = Vec::new();
    for i in p.min(0)..p.max(0) {
        // y = q x / p over x in [i, i + 1]
        let (a, b) = (q * i, q * (i + 1));
        let lo = div_floor(a, p).min(div_floor(b, p));
        let hi = div_ceil(a, p).max(div_ceil(b, p));
        for j in lo..hi {
            out.push((i as i64, j as i64));
        }
    }
    out
}

pub fn directed_path(t: TorusType) -> Result<LatticePath, TorusError> {
    let (p, q) = (t.p, t.q);
    if t.is_axis() {
        return Ok(LatticePath {
            vertices: vec![(0, 0), (p, q)],
        });
    }
    let fail = |reason: String| TorusError::PathAssembly { p, q, reason };
    let side = |(x, y): (i64, i64)| (q as i128 * x as i128 - p as i128 * y as i128).signum();

    let squares = crossed_squares(p, q);
    let expected = (p.unsigned_abs() + q.unsigned_abs() - 1) as usize;
    if squares.len() != expected {
        return Err(fail(format!(
            "{} crossed squares, expected {expected}",
            squares.len()
        )));
    }

    // Square at the origin when p < 0 < q, square at (p, q) when p > 0 > q.
    let first = (-1, 0);
    let last = (p - 1, q);

    let mut chosen: BTreeSet<(i64, i64)> = BTreeSet::new();
    for &(i, j) in &squares {
        let corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)];
        let upper_override =
            (p > 0 && q < 0 && (i, j) == last) || (p < 0 && q > 0 && (i, j) == first);
        if upper_override {
            chosen.insert((i, j + 1));
            chosen.insert((i + 1, j + 1));
            continue;
        }
        let lr = side((i + 1, j));
        if lr == 0 {
            return Err(fail(format!(
                "lower right vertex of square ({i}, {j}) lies on the segment"
            )));
        }
        for c in corners {
            if side(c) == -lr {
                chosen.insert(c);
            }
        }
    }
    chosen.remove(&(0, 0));
    chosen.remove(&(p, q));

    let proj = |(x, y): (i64, i64)| x as i128 * p as i128 + y as i128 * q as i128;
    let mut ordered: Vec<(i64, i64)> = chosen.into_iter().collect();
    ordered.sort_by_key(|&v| proj(v));
    if ordered.windows(2).any(|w| proj(w[0]) == proj(w[1])) {
        return Err(fail("two chosen vertices project to the same point".into()));
    }

    let (sx, sy) = (p.signum(), q.signum());
    let mut vertices = vec![(0, 0)];
    for target in ordered.into_iter().chain(std::iter::once((p, q))) {
        let cur = *vertices.last().expect("nonempty");
        let (dx, dy) = (target.0 - cur.0, target.1 - cur.1);
        if dx != 0 && dy != 0 {
            return Err(fail(format!(
                "chosen vertices {cur:?} and {target:?} are not axis-aligned"
            )));
        }
        if dx.signum() * sx < 0 || dy.signum() * sy < 0 {
            return Err(fail(format!(
                "step from {cur:?} to {target:?} runs backwards"
            )));
        }
        for k in 1..=dx.abs() {
            vertices.push((cur.0 + k * sx, cur.1));
        }
        for k in 1..=dy.abs() {
            vertices.push((cur.0, cur.1 + k * sy));
        }
    }
    if vertices.len() as u64 != p.unsigned_abs() + q.unsigned_abs() + 1 {
        return Err(fail("path is not a shortest path".into()));
    }
    Ok(LatticePath { vertices })
}

pub fn torus_word(t: TorusType) -> Result<BraidWord, TorusError> {
    torus_letters(t).map(|x| BraidWord::from_letters(&x))
}

pub(crate) fn torus_letters(t: TorusType) -> Result<Vec<Letter>, TorusError> {
    Ok(directed_path(t)?.letters())
}

/// Syntactic recognition: `w` is a torus word iff it equals the torus word of
/// its own exponent sums `(e_l, e_m)`.
pub fn recognize_torus_word(w: &BraidWord) -> Option<TorusType> {
    if w.is_empty() || w.contains(Generator::S) {
        return None;
    }
    if !w.is_sign_pure(Generator::M) || !w.is_sign_pure(Generator::L) {
        return None;
    }
    let t = TorusType::new(w.exponent_sum(Generator::L), w.exponent_sum(Generator::M)).ok()?;
    (torus_word(t).ok()? == *w).then_some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    fn tw(p: i64, q: i64) -> BraidWord {
        torus_word(TorusType::new(p, q).unwrap()).unwrap()
    }

    #[test]
    fn invalid_types() {
        assert!(TorusType::new(0, 0).is_err());
        assert!(TorusType::new(2, 4).is_err());
        assert!(TorusType::new(0, 2).is_err());
        assert!(TorusType::new(0, -1).is_ok());
        assert!(TorusType::new(-6, 35).is_ok());
    }

    #[test]
    fn small_paths() {
        let path = |p, q| {
            directed_path(TorusType::new(p, q).unwrap())
                .unwrap()
                .vertices
        };
        assert_eq!(path(1, 1), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(path(1, -1), vec![(0, 0), (1, 0), (1, -1)]);
        assert_eq!(path(-1, 1), vec![(0, 0), (0, 1), (-1, 1)]);
        assert_eq!(path(-1, -1), vec![(0, 0), (-1, 0), (-1, -1)]);
    }

    #[test]
    fn sign_quadruple() {
        assert_eq!(tw(5, 3), w("m l m l^2 m l^2"));
        assert_eq!(tw(-5, 3), w("m l^-2 m l^-2 m l^-1"));
        assert_eq!(tw(-5, -3), w("l^-2 m^-1 l^-2 m^-1 l^-1 m^-1"));
        assert_eq!(tw(5, -3), w("l m^-1 l^2 m^-1 l^2 m^-1"));
    }

    #[test]
    fn axis_words() {
        assert_eq!(tw(1, 0), w("l"));
        assert_eq!(tw(-1, 0), w("l^-1"));
        assert_eq!(tw(0, 1), w("m"));
        assert_eq!(tw(0, -1), w("m^-1"));
    }

    #[test]
    fn recognition_examples() {
        assert_eq!(
            recognize_torus_word(&w("m l")),
            Some(TorusType::new(1, 1).unwrap())
        );
        assert_eq!(recognize_torus_word(&w("l m")), None);
        assert_eq!(
            recognize_torus_word(&w("m^2 l")),
            Some(TorusType::new(1, 2).unwrap())
        );
        assert_eq!(
            recognize_torus_word(&w("m^-1 l m^-1 l m^-1")),
            Some(TorusType::new(2, -3).unwrap())
        );
        for text in ["m l", "m l^-1", "l m^-1", "l^-1 m^-1"] {
            assert!(recognize_torus_word(&w(text)).is_some(), "{text}");
        }
        for text in ["l m", "l^-1 m", "m^-1 l", "m^-1 l^-1", "m s", "m l m l", ""] {
            let word = if text.is_empty() {
                BraidWord::identity()
            } else {
                w(text)
            };
            assert_eq!(recognize_torus_word(&word), None, "{text}");
        }
    }
}
