mod common;

use std::collections::BTreeMap;

use common::w;
use leveler_core::{
    cf_value, conway_params, flip_params, level_bound_rho1, level_bound_rho2, optimize_expansion,
    rho1_word, rho2_word, validate_expansion, CFExpansion, CfError, CfForm, Generator,
    OptimizeCaps, Position, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

const P_MAX: i64 = 30;
const ENTRY_MAX: i64 = 32;
// Continuants grow by at least one per term, so no expansion is longer.
const LEN_MAX: usize = P_MAX as usize + 1;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn ints(e: &CFExpansion) -> Vec<i64> {
    e.entries().iter().map(|x| x.to_i64().unwrap()).collect()
}

/// Two-bridge parameters `p/q` with `|p| <= bound`: `p` odd, `q` even and
/// positive, `q < |p|`, coprime.
fn two_bridge_params(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        if p % 2 == 0 {
            continue;
        }
        for q in (2..p.abs()).step_by(2) {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Every even-length all-even sequence with entries in `[-ENTRY_MAX, ENTRY_MAX]`
/// and at most `LEN_MAX` terms whose value has numerator at most `P_MAX`.
/// The numerator of a prefix is the continuant `K(e_1..e_j)`, which grows in
/// absolute value with `j` when all `|e_i| >= 2`, so prefixes past `P_MAX`
/// are pruned.
fn conway_oracle() -> BTreeMap<(i64, i64), Vec<Vec<i64>>> {
    fn walk(
        seq: &mut Vec<i64>,
        k_prev: i64,
        k: i64,
        out: &mut BTreeMap<(i64, i64), Vec<Vec<i64>>>,
    ) {
        if !seq.is_empty() && seq.len().is_multiple_of(2) {
            // value = K(e_1..e_n) / K(e_2..e_n)
            let den = continuant(&seq[1..]);
            let g = k.gcd(&den);
            let (mut p, mut q) = (k / g, den / g);
            if q < 0 {
                p = -p;
                q = -q;
            }
            out.entry((p, q)).or_default().push(seq.clone());
        }
        if seq.len() == LEN_MAX {
            return;
        }
        for e in (-ENTRY_MAX..=ENTRY_MAX).step_by(2).filter(|&e| e != 0) {
            let next = e * k + k_prev;
            if next.abs() > P_MAX {
                continue;
            }
            seq.push(e);
            walk(seq, k, next, out);
            seq.pop();
        }
    }
    let mut out = BTreeMap::new();
    walk(&mut Vec::new(), 0, 1, &mut out);
    out
}

fn continuant(e: &[i64]) -> i64 {
    let (mut a, mut b) = (0i64, 1i64);
    for &x in e {
        let c = x * b + a;
        a = b;
        b = c;
    }
    b
}

#[test]
fn conway_matches_brute_force() {
    let oracle = conway_oracle();
    for (p, q) in two_bridge_params(P_MAX) {
        let seqs = oracle
            .get(&(p, q))
            .unwrap_or_else(|| panic!("{p}/{q} has no all-even expansion"));
        assert_eq!(
            seqs.len(),
            1,
            "{p}/{q} has {} all-even expansions",
            seqs.len()
        );
        assert_eq!(ints(&conway_params(&r(p, q)).unwrap()), seqs[0], "{p}/{q}");
    }
    for (p, q) in oracle.keys() {
        assert!(
            p % 2 != 0 && q % 2 == 0 && p.abs() > *q,
            "{p}/{q} is not a two-bridge parameter"
        );
    }
}

#[test]
fn conway_round_trips() {
    for (p, q) in two_bridge_params(99) {
        let e = conway_params(&r(p, q)).unwrap();
        assert_eq!(cf_value(&e).unwrap(), r(p, q));
        assert!(validate_expansion(&r(p, q), &e));
        assert!(e.entries().len().is_multiple_of(2));
    }
}

#[test]
fn known_expansions() {
    assert_eq!(ints(&conway_params(&r(13, 4)).unwrap()), vec![4, -2, 2, -2]);
    assert_eq!(ints(&conway_params(&r(3, 2)).unwrap()), vec![2, -2]);
    assert!(matches!(
        conway_params(&r(4, 3)),
        Err(CfError::Parity { .. })
    ));
    assert!(matches!(
        conway_params(&r(3, 4)),
        Err(CfError::Parity { .. })
    ));
}

#[test]
fn flips_invert_modulo_p() {
    for (p, q) in two_bridge_params(61) {
        let e = conway_params(&r(p, q)).unwrap();
        let f = flip_params(&e).unwrap();
        let v = cf_value(&f).unwrap();
        let (p2, q2) = (v.num().to_i64().unwrap(), v.den().to_i64().unwrap());
        assert_eq!(p2.abs(), p.abs(), "{p}/{q}");
        let prod = (q * q2).rem_euclid(p.abs());
        assert!(
            prod == 1 || prod == p.abs() - 1,
            "{p}/{q} flips to {p2}/{q2}"
        );
        assert_eq!(flip_params(&f).unwrap(), e);
    }
}

/// `m s^{d_k} l^{-c_k} ... s^{d_1} l^{-c_1}`, written out syllable by syllable.
fn rho1_text(e: &[i64]) -> String {
    let mut out = String::from("m");
    for pair in e.chunks(2).rev() {
        out += &format!(" s^{} l^{}", pair[1], -pair[0] / 2);
    }
    out
}

/// `m s^{-c_1} l^{d_1} ... s^{-c_k} l^{d_k}`.
fn rho2_text(e: &[i64]) -> String {
    let mut out = String::from("m");
    for pair in e.chunks(2) {
        out += &format!(" s^{} l^{}", -pair[0], pair[1] / 2);
    }
    out
}

/// One-line fold: two plus, over all but the first halved entry, one for a
/// half of absolute value one and two otherwise.
fn fold_bound(halves: &[i64]) -> usize {
    2 + halves[1..]
        .iter()
        .map(|h| (h.unsigned_abs() as usize).min(2))
        .sum::<usize>()
}

#[test]
fn descriptions_match_their_formulas() {
    for (p, q) in two_bridge_params(41) {
        let e = conway_params(&r(p, q)).unwrap();
        let x = ints(&e);
        let one = rho1_word(&e).unwrap();
        let two = rho2_word(&e).unwrap();
        assert_eq!(one, w(&rho1_text(&x)), "{p}/{q}");
        assert_eq!(two, w(&rho2_text(&x)), "{p}/{q}");
        for word in [&one, &two] {
            let syls = word.syllables();
            assert_eq!((syls[0].gen, syls[0].exp), (Generator::M, 1));
            for (i, s) in syls[1..].iter().enumerate() {
                let gen = if i % 2 == 0 {
                    Generator::S
                } else {
                    Generator::L
                };
                assert_eq!(s.gen, gen, "{p}/{q}: {word}");
            }
            assert_eq!(syls.len(), 1 + x.len());
        }
        let evens: Vec<i64> = x.iter().step_by(2).map(|v| v / 2).collect();
        let odds: Vec<i64> = x.iter().skip(1).step_by(2).map(|v| v / 2).collect();
        assert_eq!(level_bound_rho1(&e).unwrap(), fold_bound(&evens));
        assert_eq!(level_bound_rho2(&e).unwrap(), fold_bound(&odds));
    }
}

#[test]
fn form_checks() {
    let e = CFExpansion::from_i64(&[4, 3], CfForm::EvenOdd).unwrap();
    assert!(rho1_word(&e).is_ok());
    assert!(matches!(rho2_word(&e), Err(CfError::FormMismatch(_))));
    assert!(CFExpansion::from_i64(&[3, 3], CfForm::EvenOdd).is_err());
    assert!(CFExpansion::from_i64(&[4], CfForm::AllEven).is_err());
    assert!(CFExpansion::from_i64(&[4, 0], CfForm::AllEven).is_err());
    assert!(matches!(flip_params(&e), Err(CfError::FormMismatch(_))));
}

#[test]
fn optimizer_never_loses_to_conway() {
    for (p, q) in two_bridge_params(45) {
        let conway = conway_params(&r(p, q)).unwrap();
        for pos in [Position::Rho1, Position::Rho2] {
            let (e, bound) = optimize_expansion(&r(p, q), pos, &OptimizeCaps::default()).unwrap();
            assert!(bound <= pos.bound(&conway).unwrap(), "{p}/{q} {pos:?}");
            assert_eq!(pos.bound(&e).unwrap(), bound);
            assert!(validate_expansion(&r(p, q), &e));
            assert!(pos.word(&e).is_ok());
        }
    }
}

#[test]
fn optimizer_caps_are_respected() {
    let caps = OptimizeCaps {
        max_entry: Some(BigInt::from(4)),
        max_len: Some(4),
    };
    let (e, _) = optimize_expansion(&r(13, 4), Position::Rho2, &caps).unwrap();
    assert!(e.entries().len() <= 4);
    assert_eq!(ints(&e), vec![3, 4]);
}
