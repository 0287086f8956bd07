#![allow(dead_code)]

use leveler_core::{BraidWord, Generator, Letter};
use proptest::prelude::*;

pub fn w(text: &str) -> BraidWord {
    text.parse().unwrap()
}

pub fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::M),
        Just(Letter::M_INV),
        Just(Letter::L),
        Just(Letter::L_INV),
        Just(Letter::S),
        Just(Letter::S_INV),
    ]
}

pub fn s_free_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::M),
        Just(Letter::M_INV),
        Just(Letter::L),
        Just(Letter::L_INV),
    ]
}

/// Freely reduced word with at most `max` letters before reduction.
pub fn word(max: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(letter(), 0..=max).prop_map(|ls| BraidWord::from_letters(&ls))
}

pub fn gen_of(x: Letter) -> Generator {
    x.gen()
}

/// Words used as a regression corpus throughout the suites.
pub const CORPUS: &[&str] = &[
    "m s^2 l",
    "m l m l",
    "m^2 l",
    "m^-1 l^-1",
    "m s^-2 l^-1 s^-2 l^-2",
    "m s^-2 l^-1",
    "m s^-2 l^-1 s^-2 l^-1",
    "m^-1 s^-1 m l^-1 m^3 l^-1 m^3",
    "m l^-1 m s^-1 m^-1 l m^-1 l m^-1",
    "s m^2 l^-1 m^3 l^-1",
    "l s^2 m m l",
    "m",
    "l m",
    "m s l",
    "m^3 s^-1 l^2",
];
