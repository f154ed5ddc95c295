mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use salvetti::{AutoError, Automorphism, GroupElement, Letter, Raag};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every elementary automorphism the constructors accept for `raag`.
fn elementary(raag: &Arc<Raag>) -> Vec<Automorphism> {
    let n = raag.rank();
    let mut out = Vec::new();
    for v in 0..n {
        out.push(Automorphism::inversion(raag, v).unwrap());
        out.push(Automorphism::conjugation(&GroupElement::generator(raag, v)));
        for u in 0..n {
            if let Ok(t) = Automorphism::transvection(raag, v, u) {
                out.push(t);
            }
        }
    }
    for p in permutations(n) {
        if let Ok(s) = Automorphism::graph_symmetry(raag, &p) {
            out.push(s);
        }
    }
    out
}

#[test]
fn elementary_counts() {
    let count = |text: &str| {
        let g = raag(text);
        let n = g.rank();
        let transvections = (0..n)
            .flat_map(|v| (0..n).map(move |u| (v, u)))
            .filter(|&(v, u)| Automorphism::transvection(&g, v, u).is_ok())
            .count();
        let symmetries = permutations(n)
            .iter()
            .filter(|p| Automorphism::graph_symmetry(&g, p).is_ok())
            .count();
        (transvections, symmetries)
    };
    // edge: a↦ab, b↦ba; path: a↦ab, c↦cb plus a↦ac, c↦ca
    assert_eq!(count(EDGE), (2, 2));
    assert_eq!(count(PATH), (4, 2));
    assert_eq!(count(C5), (0, 10));
    assert_eq!(count(K22), (4, 8));
}

#[test]
fn rejects_non_automorphisms() {
    let g = raag(PATH);
    assert!(Automorphism::graph_symmetry(&g, &[1, 0, 2]).is_err());
    // b ↦ ba breaks the relation bc = cb
    assert!(matches!(
        Automorphism::transvection(&g, 1, 0),
        Err(AutoError::RelationViolation(..))
    ));
    assert_eq!(
        Automorphism::transvection(&g, 1, 1),
        Err(AutoError::DegenerateTransvection)
    );
    let images = vec![el(&g, "a"), el(&g, "a"), el(&g, "c")];
    assert!(Automorphism::new(&g, images.clone(), images).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composites_are_automorphisms(
        graph in 0usize..4,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5),
        x in letters(5, 8),
        y in letters(5, 8),
    ) {
        let (_, text) = GRAPHS[graph];
        let g = raag(text);
        let pool = elementary(&g);
        let mut phi = Automorphism::identity(&g);
        for p in &picks {
            phi = phi.compose(p.get(&pool)).unwrap();
        }
        let keep = |v: Vec<Letter>| -> Vec<Letter> { v.into_iter().filter(|l| l.generator() < g.rank()).collect() };
        let x = element(&g, keep(x));
        let y = element(&g, keep(y));
        let fx = phi.apply(&x).unwrap();
        prop_assert_eq!(phi.apply_inverse(&fx).unwrap(), x.clone());
        prop_assert_eq!(phi.apply(&(&x * &y)).unwrap(), &fx * &phi.apply(&y).unwrap());
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        let round = Automorphism::from_json(&g, &phi.to_json()).unwrap();
        prop_assert_eq!(round.apply(&x).unwrap(), fx);
    }
}
