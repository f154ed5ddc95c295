//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use salvetti::{parse_graph, ActionSpec, GroupElement, Letter, Raag, Rational};

pub const EDGE: &str = "vertices a b\nedge a b";
pub const PATH: &str = "vertices a b c\nedge a b\nedge b c";
pub const C5: &str = "vertices a b c d e\nedge a b\nedge b c\nedge c d\nedge d e\nedge e a";
pub const K22: &str = "vertices a b c d\nedge a c\nedge a d\nedge b c\nedge b d";

pub const GRAPHS: [(&str, &str); 4] = [("edge", EDGE), ("path", PATH), ("C5", C5), ("K22", K22)];

pub fn raag(text: &str) -> Arc<Raag> {
    Raag::new(parse_graph(text).expect("fixture graph parses"))
}

pub fn standard(text: &str) -> ActionSpec {
    ActionSpec::standard(&raag(text)).expect("fixture graph is homogeneous of dimension 2")
}

pub fn el(raag: &Arc<Raag>, word: &str) -> GroupElement {
    GroupElement::parse(raag, word).expect("fixture word parses")
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Raw letter sequences over `rank` generators, before any reduction.
pub fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect())
}

pub fn element(raag: &Arc<Raag>, letters: Vec<Letter>) -> GroupElement {
    GroupElement::from_letters(raag, letters).expect("letters are in range")
}

/// Widths drawn from `{1/4, 1/3, 1/2, 2/3, 1, 3/2, 2, 3, 4}`.
pub fn width() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![
        r(1, 4),
        r(1, 3),
        r(1, 2),
        r(2, 3),
        r(1, 1),
        r(3, 2),
        r(2, 1),
        r(3, 1),
        r(4, 1),
    ])
}

/// Twisted and rescaled actions covering every twist type with a supported
/// minset shape, with widths in `[1/4, 4]`.
pub fn action_family() -> Vec<(&'static str, ActionSpec)> {
    use salvetti::Automorphism;
    let path = raag(PATH);
    let c5 = raag(C5);
    let k22 = raag(K22);
    let build = |g: &Arc<Raag>, widths: Vec<Rational>, twist: Option<Automorphism>| {
        ActionSpec::new(g, widths, twist).expect("valid family member")
    };
    vec![
        ("path, unit widths", build(&path, vec![r(1, 1); 3], None)),
        (
            "path, transvection a -> a b",
            build(
                &path,
                vec![r(1, 4), r(4, 1), r(3, 2)],
                Some(Automorphism::transvection(&path, 0, 1).unwrap()),
            ),
        ),
        (
            "path, symmetry a <-> c",
            build(
                &path,
                vec![r(2, 3), r(1, 2), r(3, 1)],
                Some(Automorphism::graph_symmetry(&path, &[2, 1, 0]).unwrap()),
            ),
        ),
        (
            "C5, rotation",
            build(
                &c5,
                vec![r(1, 1), r(2, 1), r(1, 3), r(3, 2), r(4, 1)],
                Some(Automorphism::graph_symmetry(&c5, &[1, 2, 3, 4, 0]).unwrap()),
            ),
        ),
        (
            "K22, inversion of a",
            build(
                &k22,
                vec![r(1, 2), r(2, 1), r(1, 1), r(3, 1)],
                Some(Automorphism::inversion(&k22, 0).unwrap()),
            ),
        ),
        (
            "path, conjugation by a c'",
            build(
                &path,
                vec![r(1, 1), r(5, 2), r(1, 4)],
                Some(Automorphism::conjugation(&el(&path, "a c'"))),
            ),
        ),
    ]
}
