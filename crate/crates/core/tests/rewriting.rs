mod common;

use std::collections::HashSet;

use common::{w, word, CORPUS};
use leveler_core::moves::{apply_move, Direction};
use leveler_core::word::{invert_letters, reduce_letters};
use leveler_core::{
    equivalent, parity, replay, rule_catalog, BraidWord, Budget, EquivalenceVerdict, Letter, Move,
    RuleId,
};
use proptest::prelude::*;

/// Presentation relators, written out independently of the library tables.
fn relators() -> Vec<Vec<Letter>> {
    ["m s m s", "l s l s", "l^-1 m l m^-1 s^-2"]
        .iter()
        .map(|t| w(t).letters())
        .collect()
}

/// All cyclic rotations of the relators and their inverses.
fn cyclic_words() -> HashSet<Vec<Letter>> {
    let mut out = HashSet::new();
    for r in relators() {
        for base in [r.clone(), invert_letters(&r)] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                out.insert(rot);
            }
        }
    }
    out
}

fn cyclically_reduce(mut x: Vec<Letter>) -> Vec<Letter> {
    x = reduce_letters(x);
    while x.len() >= 2 && x[0] == x[x.len() - 1].inverse() {
        x = x[1..x.len() - 1].to_vec();
    }
    x
}

#[test]
fn catalog_has_twenty_rotations() {
    assert_eq!(cyclic_words().len(), 20);
}

#[test]
fn every_rule_is_a_relator_split() {
    let cyclic = cyclic_words();
    for rule in rule_catalog() {
        let mut rel = rule.lhs.clone();
        rel.extend(invert_letters(&rule.rhs));
        let rel = cyclically_reduce(rel);
        assert!(cyclic.contains(&rel), "{rule} is not a relator split");
        assert!(
            rule.lhs.len() <= rule.rhs.len(),
            "{rule} is not length-nondecreasing"
        );
    }
}

#[test]
fn every_relator_split_is_in_the_catalog() {
    let pairs: HashSet<(Vec<Letter>, Vec<Letter>)> = rule_catalog()
        .iter()
        .map(|r| (r.lhs.clone(), r.rhs.clone()))
        .collect();
    for rot in cyclic_words() {
        for split in 0..=rot.len() {
            let a = rot[..split].to_vec();
            let b = invert_letters(&rot[split..]);
            assert!(
                pairs.contains(&(a.clone(), b.clone())) || pairs.contains(&(b.clone(), a.clone())),
                "split {split} of {} missing",
                BraidWord::from_letters(&rot)
            );
        }
    }
}

/// Every rule move admitted on `x`.
fn admitted_moves(x: &[Letter]) -> Vec<(Move, Vec<Letter>)> {
    let mut out = Vec::new();
    for rule in rule_catalog() {
        for pos in 0..=x.len() {
            for dir in [Direction::Forward, Direction::Backward] {
                let mv = Move::Rule {
                    rule: rule.id,
                    pos,
                    dir,
                };
                if let Some(y) = apply_move(x, &mv) {
                    out.push((mv, y));
                }
            }
        }
    }
    out
}

#[test]
fn corpus_moves_keep_words_reduced() {
    for text in CORPUS {
        let x = w(text).letters();
        for (mv, y) in admitted_moves(&x) {
            assert_eq!(reduce_letters(y.iter().copied()), y, "{text} under {mv}");
        }
    }
}

#[test]
fn out_of_range_rule_is_rejected() {
    let bogus = Move::Rule {
        rule: RuleId(u16::MAX),
        pos: 0,
        dir: Direction::Forward,
    };
    assert!(apply_move(&w("m").letters(), &bogus).is_none());
}

#[test]
fn shifted_s_identity() {
    // s^d l^-c equals s^(d+1) m s m l^-c.
    for (d, c) in [(1, 1), (2, 3), (-3, 2), (4, -1), (-1, 1)] {
        let a = w(&format!("s^{d} l^{}", -c));
        let b = w(&format!("s^{} m s m l^{}", d + 1, -c));
        let v = equivalent(&a, &b, &Budget::default()).unwrap();
        let cert = v
            .certificate()
            .unwrap_or_else(|| panic!("d={d} c={c}: {v:?}"));
        assert!(replay(cert));
    }
}

#[test]
fn workers_do_not_change_certificates() {
    let pairs = [
        ("m s m s", "1"),
        ("m s^2 l", "l^-1 s^-2 m^-1"),
        ("l^-1 m l", "s^2 m"),
        ("s m s", "m^-1"),
    ];
    for (a, b) in pairs {
        let one = equivalent(
            &w(a),
            &w(b),
            &Budget {
                workers: 1,
                ..Budget::default()
            },
        )
        .unwrap();
        let four = equivalent(
            &w(a),
            &w(b),
            &Budget {
                workers: 4,
                ..Budget::default()
            },
        )
        .unwrap();
        assert_eq!(one, four, "{a} vs {b}");
    }
}

#[test]
fn certificate_json_round_trip() {
    let v = equivalent(&w("l^-1 m l"), &w("s^2 m"), &Budget::default()).unwrap();
    let cert = v.certificate().expect("equivalent");
    let back = leveler_core::Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(&back, cert);
    assert!(replay(&back));
}

#[test]
fn tampered_certificate_fails_replay() {
    let v = equivalent(&w("m s m s l"), &w("l"), &Budget::default()).unwrap();
    let mut cert = v.certificate().expect("equivalent").clone();
    assert!(replay(&cert));
    cert.end = w("l^-1");
    assert!(!replay(&cert));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_preserve_parity(x in word(14)) {
        let letters = x.letters();
        let p = parity(&x);
        for (_, y) in admitted_moves(&letters) {
            prop_assert_eq!(parity(&BraidWord::from_letters(&y)), p);
        }
    }

    #[test]
    fn parity_is_additive(a in word(10), b in word(10)) {
        prop_assert_eq!(parity(&a.concat(&b)), parity(&a) + parity(&b));
    }

    #[test]
    fn moves_are_reversible(x in word(12)) {
        let letters = x.letters();
        for (_, y) in admitted_moves(&letters) {
            let back = admitted_moves(&y).into_iter().any(|(_, z)| z == letters);
            prop_assert!(back);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn short_rewrites_are_found(x in word(6), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..=4)) {
        let start = x.letters();
        let mut cur = start.clone();
        for pick in &picks {
            // Keep intermediate words short so the search space stays small.
            let options: Vec<_> = admitted_moves(&cur).into_iter().filter(|(_, y)| y.len() <= 10).collect();
            if options.is_empty() {
                break;
            }
            cur = options[pick.index(options.len())].1.clone();
        }
        let target = BraidWord::from_letters(&cur);
        let budget = Budget::with_nodes(400_000);
        let v = equivalent(&x, &target, &budget).unwrap();
        match v {
            EquivalenceVerdict::Equivalent(cert) => {
                prop_assert!(replay(&cert));
                prop_assert_eq!(&cert.start, &x);
                prop_assert_eq!(&cert.end, &target);
                let cap = budget.resolve_len(start.len().max(cur.len()));
                prop_assert!(cert.max_word_len() <= cap);
            }
            other => prop_assert!(false, "{x} vs {target}: {other:?}"),
        }
    }
}
