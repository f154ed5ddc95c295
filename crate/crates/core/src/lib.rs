//! Word geometry of 2-dimensional right-angled Artin groups and the wall
//! (d₁) geometry of their metrized, optionally twisted, Salvetti actions.
//!
//! The crate is organized bottom-up:
//!
//! * [`graph`]: defining graphs, links, homogeneity, join decompositions.
//! * [`words`]: normal forms, cyclic reduction, conjugacy classes,
//!   centralizers, balls and parabolic coset calculus.
//! * [`autos`]: verified automorphisms used to twist actions.
//! * [`complex`]: action specifications, balls of the universal cover, walls.
//! * [`metric`]: separating walls, d₁ distances, minimal edge paths.
//! * [`minsets`]: minsets of generators, bridges, subtree families, basepoints.
//! * [`spectra`]: l₁ lengths, M₁, length spectra and the bound verifier.
//!
//! All distances and lengths are exact rationals.

pub mod autos;
pub mod complex;
pub mod graph;
pub mod metric;
pub mod minsets;
pub mod spectra;
pub mod words;

use num_rational::Ratio;

/// Exact rational number used for widths, distances and lengths.
pub type Rational = Ratio<i64>;

pub use autos::{AutoError, Automorphism};
pub use complex::{ActionSpec, ComplexBall, ComplexError, Side, WallId};
pub use graph::{parse_graph, DefiningGraph, GraphError, JoinDecomposition};
pub use metric::{EdgePath, MetricError, WallSet};
pub use minsets::{MinsetError, MinsetSlice};
pub use spectra::{BoundReport, L1Length, LengthSpectrum, SpectraError};
pub use words::{ConjClassId, GroupElement, Letter, Raag, WordError};

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, `p`, or a finite decimal such as `1.5` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: i64 = if whole.is_empty() || whole == "-" {
            0
        } else {
            whole.parse().ok()?
        };
        let denom = 10i64.pow(frac.len() as u32);
        let frac: i64 = frac.parse().ok()?;
        let magnitude = whole.abs().checked_mul(denom)?.checked_add(frac)?;
        let numer = if negative { -magnitude } else { magnitude };
        return Some(Rational::new(numer, denom));
    }
    text.parse::<i64>().ok().map(Rational::from_integer)
}

/// Top-level error type wrapping every module error.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Auto(#[from] AutoError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Minset(#[from] MinsetError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}
