//! l₁ translation lengths, the constant M₁, length spectra over conjugacy
//! classes, comparison of actions, and the bound verifier.
//!
//! The l₁ length of `g` is computed as the weighted length of the cyclically
//! reduced core of `φ(g)`. Every evaluation is cross-checked against the
//! stable slope `|h³|_w − |h²|_w` of `h = φ(g)`, which is exact because
//! `|b·hⁿ·b⁻¹|_w = n·‖h‖_w + 2|b|_w` for `n ≥ 1`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::complex::{ActionSpec, ComplexBall, ComplexError};
use crate::metric::{
    is_minimal_edge_path, point_coset_distance, EdgePath, MetricError, PathVerdict, VertexRegion,
};
use crate::minsets::{
    choose_basepoint, minset_distance, minset_distance_in_ball, minset_model, min1_window,
    select_flat_representative, MinsetError,
};
use crate::words::coset::right_coset_min;
use crate::words::normal::{canonicalize, push_letter};
use crate::words::{
    conjugacy_canonical, cyclic_reduction, enumerate_ball, enumerate_ball_words, ConjClassId,
    GroupElement, Letter, Raag, Word, WordError, DEFAULT_BALL_BUDGET,
};
use crate::{fmt_rational, Rational};

/// Radius of the ball `D` over which M₁ is maximized.
pub const D_RADIUS: usize = 4;
/// Default class window for length spectra.
pub const DEFAULT_CLASS_LENGTH: usize = 5;
/// The constant in the bound `l₁(g) ≤ 7·M₁·‖g‖`.
pub const KEY_CONSTANT: i64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectraError {
    #[error("l1 of {element}: cyclic formula gives {formula}, stable slope gives {slope}")]
    Disagreement {
        element: String,
        formula: String,
        slope: String,
    },
    #[error("empty class set")]
    EmptyClassSet,
    #[error("the ball D defining M1 must have radius at least 1")]
    EmptyD,
    #[error("actions are defined over different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Minset(#[from] MinsetError),
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rational(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum L1Method {
    CyclicFormula,
    StableSlope,
    BallMin,
}

impl fmt::Display for L1Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            L1Method::CyclicFormula => "cyclic-formula",
            L1Method::StableSlope => "stable-slope",
            L1Method::BallMin => "ball-min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L1Length {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub method: L1Method,
    pub certificate: String,
}

/// Weighted length of the cyclically reduced core of `φ(g)`.
pub fn l1_cyclic_formula(g: &GroupElement, spec: &ActionSpec) -> Result<Rational, SpectraError> {
    let acting = spec.acting_element(g)?;
    Ok(spec.weighted_len(&cyclic_reduction(&acting).core))
}

/// `|h³|_w − |h²|_w` for `h = φ(g)`.
pub fn l1_stable_slope(g: &GroupElement, spec: &ActionSpec) -> Result<Rational, SpectraError> {
    let h = spec.acting_element(g)?;
    Ok(spec.weighted_len(&h.pow(3)) - spec.weighted_len(&h.pow(2)))
}

/// Least displacement `d₁(x, g·x)` over vertices `x` with `|x| ≤ radius`.
///
/// The default radius `⌈|φ(g)|/2⌉` reaches a cyclically reduced conjugate.
pub fn l1_ball_min(
    g: &GroupElement,
    spec: &ActionSpec,
    radius: Option<usize>,
) -> Result<Rational, SpectraError> {
    let h = spec.acting_element(g)?;
    let radius = radius.unwrap_or(h.len().div_ceil(2));
    Ok(min_over_profiles(&conjugate_profiles(&h, radius), spec.widths()))
}

/// Letter-count vectors of the conjugates `x⁻¹hx` with `|x| ≤ radius`.
///
/// Conjugates are explored breadth-first in `x`, merging equal conjugates.
/// The weighted length of a conjugate depends only on how often each
/// generator occurs in it, so one search serves every width assignment.
pub fn conjugate_profiles(h: &GroupElement, radius: usize) -> BTreeSet<Vec<u32>> {
    let raag = h.raag();
    let profile = |w: &[Letter]| {
        let mut counts = vec![0u32; raag.rank()];
        for x in w {
            counts[x.generator()] += 1;
        }
        counts
    };
    let start: Word = h.letters().iter().copied().collect();
    let mut profiles = BTreeSet::from([profile(&start)]);
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    for depth in 0..radius {
        let last = depth + 1 == radius;
        let mut next = Vec::new();
        for c in &layer {
            for x in raag.letters() {
                let mut w = Word::new();
                push_letter(raag, &mut w, x.inverse());
                for &y in c {
                    push_letter(raag, &mut w, y);
                }
                push_letter(raag, &mut w, x);
                if last {
                    profiles.insert(profile(&w));
                    continue;
                }
                canonicalize(raag, &mut w);
                if seen.insert(w.clone()) {
                    profiles.insert(profile(&w));
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    profiles
}

/// Least weighted length among letter-count vectors.
pub fn min_over_profiles(profiles: &BTreeSet<Vec<u32>>, widths: &[Rational]) -> Rational {
    profiles
        .iter()
        .map(|p| {
            p.iter()
                .zip(widths)
                .map(|(&k, w)| w * Rational::from_integer(k as i64))
                .sum::<Rational>()
        })
        .min()
        .expect("the element itself is always a conjugate")
}

/// l₁ length by the cyclic formula, validated by the stable slope.
pub fn l1_length(g: &GroupElement, spec: &ActionSpec) -> Result<L1Length, SpectraError> {
    let acting = spec.acting_element(g)?;
    let reduction = cyclic_reduction(&acting);
    let formula = spec.weighted_len(&reduction.core);
    let slope = spec.weighted_len(&acting.pow(3)) - spec.weighted_len(&acting.pow(2));
    if formula != slope {
        return Err(SpectraError::Disagreement {
            element: g.to_string(),
            formula: fmt_rational(&formula),
            slope: fmt_rational(&slope),
        });
    }
    Ok(L1Length {
        value: formula,
        method: L1Method::CyclicFormula,
        certificate: format!(
            "acting element [{}] = [{}]·[{}]·[{}]^-1; stable slope {}",
            acting,
            reduction.conjugator,
            reduction.core,
            reduction.conjugator,
            fmt_rational(&slope)
        ),
    })
}

/// `M₁ = max{l₁(d) : |d| ≤ radius}` and the shortlex-first element attaining it.
pub fn m1_with_radius(spec: &ActionSpec, radius: usize) -> Result<(Rational, GroupElement), SpectraError> {
    if radius == 0 {
        return Err(SpectraError::EmptyD);
    }
    let mut best = Rational::from_integer(0);
    let mut witness = GroupElement::identity(spec.raag());
    for d in enumerate_ball(spec.raag(), radius)? {
        let l = l1_length(&d, spec)?.value;
        if l > best {
            best = l;
            witness = d;
        }
    }
    Ok((best, witness))
}

/// M₁ over the ball `D` of radius 4.
pub fn m1_of_action(spec: &ActionSpec) -> Result<(Rational, GroupElement), SpectraError> {
    m1_with_radius(spec, D_RADIUS)
}

/// Nontrivial conjugacy classes meeting the ball of the given radius.
pub fn classes_up_to(raag: &std::sync::Arc<Raag>, radius: usize) -> Result<Vec<ConjClassId>, SpectraError> {
    let mut classes = BTreeSet::new();
    for w in enumerate_ball_words(raag, radius, DEFAULT_BALL_BUDGET)? {
        if w.is_empty() {
            continue;
        }
        let g = GroupElement::from_letters(raag, w)?;
        classes.insert(conjugacy_canonical(&g)?);
    }
    Ok(classes.into_iter().collect())
}

/// Lower end of the CAT(0) length interval `[l₁/√2, l₁]`, stored as the
/// coefficient `l₁/2` of `√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cat0Interval {
    #[serde(serialize_with = "ser_rational")]
    pub lower_sqrt2_coefficient: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: Rational,
}

impl Cat0Interval {
    pub fn from_l1(l1: Rational) -> Cat0Interval {
        Cat0Interval {
            lower_sqrt2_coefficient: l1 / Rational::from_integer(2),
            upper: l1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthSpectrum {
    pub entries: BTreeMap<ConjClassId, Rational>,
    pub m1: Rational,
    pub m1_witness: GroupElement,
    /// `7·M₁`.
    pub scale: Rational,
}

impl LengthSpectrum {
    /// `l′(c) = l₁(c) / (7·M₁)`.
    pub fn scaled(&self, class: &ConjClassId) -> Option<Rational> {
        self.entries.get(class).map(|l| l / self.scale)
    }

    pub fn projectivized(&self) -> BTreeMap<ConjClassId, Rational> {
        self.entries
            .iter()
            .map(|(c, l)| (c.clone(), l / self.scale))
            .collect()
    }

    pub fn cat0_interval(&self, class: &ConjClassId) -> Option<Cat0Interval> {
        self.entries.get(class).map(|&l| Cat0Interval::from_l1(l))
    }

    /// CSV with header `class,word,l1_num,l1_den,scaled_num,scaled_den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class,word,l1_num,l1_den,scaled_num,scaled_den\n");
        for (i, (c, l)) in self.entries.iter().enumerate() {
            let s = l / self.scale;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                i,
                c.representative(),
                l.numer(),
                l.denom(),
                s.numer(),
                s.denom()
            ));
        }
        out
    }
}

pub fn length_spectrum(spec: &ActionSpec, classes: &[ConjClassId]) -> Result<LengthSpectrum, SpectraError> {
    length_spectrum_with_radius(spec, classes, D_RADIUS)
}

/// [`length_spectrum`] with M₁ taken over the ball of radius `d_radius`.
pub fn length_spectrum_with_radius(
    spec: &ActionSpec,
    classes: &[ConjClassId],
    d_radius: usize,
) -> Result<LengthSpectrum, SpectraError> {
    let (m1, m1_witness) = m1_with_radius(spec, d_radius)?;
    let mut entries = BTreeMap::new();
    for c in classes {
        if !c.representative().same_group(&GroupElement::identity(spec.raag())) {
            return Err(SpectraError::GraphMismatch);
        }
        entries.insert(c.clone(), l1_length(c.representative(), spec)?.value);
    }
    Ok(LengthSpectrum {
        entries,
        m1,
        m1_witness,
        scale: m1 * Rational::from_integer(KEY_CONSTANT),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// Second spectrum equals `ratio` times the first.
    ProjectivelyEqual { ratio: Rational },
    Distinct { witness: ConjClassId },
}

/// Compares two actions on a class set up to positive scaling.
///
/// Each spectrum is divided by its least positive entry; the witness of a
/// difference is the first class (in class order) where the normalized
/// values disagree.
pub fn compare_actions(
    s1: &ActionSpec,
    s2: &ActionSpec,
    classes: &[ConjClassId],
) -> Result<Comparison, SpectraError> {
    if classes.is_empty() {
        return Err(SpectraError::EmptyClassSet);
    }
    if s1.raag() != s2.raag() && **s1.raag() != **s2.raag() {
        return Err(SpectraError::GraphMismatch);
    }
    let mut sorted: Vec<ConjClassId> = classes.to_vec();
    sorted.sort();
    sorted.dedup();
    let values = |spec: &ActionSpec| -> Result<Vec<Rational>, SpectraError> {
        sorted
            .iter()
            .map(|c| Ok(l1_length(c.representative(), spec)?.value))
            .collect()
    };
    let v1 = values(s1)?;
    let v2 = values(s2)?;
    let zero = Rational::from_integer(0);
    let unit = |v: &[Rational]| v.iter().copied().filter(|x| *x > zero).min();
    let (n1, n2) = match (unit(&v1), unit(&v2)) {
        (Some(a), Some(b)) => (a, b),
        _ => (Rational::from_integer(1), Rational::from_integer(1)),
    };
    for (i, c) in sorted.iter().enumerate() {
        if v1[i] / n1 != v2[i] / n2 {
            return Ok(Comparison::Distinct { witness: c.clone() });
        }
    }
    Ok(Comparison::ProjectivelyEqual { ratio: n2 / n1 })
}

/// Parameters for [`verify_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Radius of the ball of elements tested against the l₁ bound.
    pub radius: usize,
    /// Radius of the ball `D` defining M₁.
    pub d_radius: usize,
    /// Seed for the sampled minimal-path check.
    pub seed: u64,
    /// Number of sampled basepoint-to-minset paths.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            radius: 6,
            d_radius: D_RADIUS,
            seed: 0,
            samples: 100,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceRecord {
    pub witness: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub bound: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub margin: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub domain: String,
    pub instances: usize,
    pub worst_witness: String,
    #[serde(serialize_with = "ser_rational")]
    pub margin: Rational,
    #[serde(serialize_with = "ser_opt_rational", skip_serializing_if = "Option::is_none")]
    pub worst_ratio: Option<Rational>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<InstanceRecord>,
}

impl CheckRecord {
    fn from_instances(name: &str, domain: String, details: Vec<InstanceRecord>, keep: bool) -> CheckRecord {
        let worst = details.iter().min_by(|a, b| a.margin.cmp(&b.margin));
        let (worst_witness, margin) = match worst {
            Some(w) => (w.witness.clone(), w.margin),
            None => (String::new(), Rational::from_integer(0)),
        };
        let pass = details.iter().all(|d| d.pass);
        CheckRecord {
            name: name.into(),
            domain,
            instances: details.len(),
            worst_witness,
            margin,
            worst_ratio: None,
            pass,
            note: None,
            details: if keep { details } else { Vec::new() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub generators: Vec<String>,
    pub widths: BTreeMap<String, String>,
    pub twisted: bool,
    #[serde(serialize_with = "ser_rational")]
    pub m1: Rational,
    pub m1_witness: String,
    pub d_radius: usize,
    pub radius: usize,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl BoundReport {
    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn instance(witness: String, value: Rational, bound: Rational) -> InstanceRecord {
    let margin = bound - value;
    InstanceRecord {
        witness,
        value,
        bound,
        margin,
        pass: margin >= Rational::from_integer(0),
    }
}

/// Runs every bound check for one action.
///
/// * `theorem_a1`: `d₁(Min(u), Min(w)) ≤ M₁` for all generator pairs.
/// * `lemma_bc`: `d₁(x₀, Min(u)) ≤ 3·M₁` for all `u`, with `x₀` built in `Min(v)`, for all `v`.
/// * `proposition_key_a`: `l₁(g) ≤ 7·M₁·‖g‖` on the ball of the given radius.
/// * `k_membership`: `l′(g) ≤ ‖g‖` on that ball, with `l′ = l₁/(7·M₁)`.
/// * `d_star`: `l′(d*) = 1/7` at the M₁ witness.
/// * `lemma_ab`: sampled paths from points of `Min(v)` through the bridge
///   `P^u` to `Min(u)` are minimal.
pub fn verify_bounds(spec: &ActionSpec, options: &VerifyOptions) -> Result<BoundReport, SpectraError> {
    let raag = spec.raag();
    let graph = raag.graph();
    let n = raag.rank();
    let (m1, m1_witness) = m1_with_radius(spec, options.d_radius)?;
    let zero = Rational::from_integer(0);
    let mut checks = Vec::new();

    let models: Vec<Result<_, MinsetError>> = (0..n)
        .map(|v| minset_model(&GroupElement::generator(raag, v), spec))
        .collect();
    let unsupported: Option<String> = models.iter().find_map(|m| m.as_ref().err().map(|e| e.to_string()));

    // Theorem a1.
    let fallback_ball = if unsupported.is_some() {
        let needed = (0..n)
            .map(|v| min1_window(&GroupElement::generator(raag, v), spec))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap_or(1);
        Some(ComplexBall::build(spec, needed)?)
    } else {
        None
    };
    let mut a1 = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            let d = match &fallback_ball {
                None => minset_distance(u, w, spec)?,
                Some(ball) => minset_distance_in_ball(u, w, ball)?,
            };
            let mut witness = format!("{} {}", graph.name(u), graph.name(w));
            if graph.is_adjacent(u, w) {
                let star = select_flat_representative(u, w, spec)?;
                witness.push_str(&format!(" (u* = {star})"));
            }
            a1.push(instance(witness, d, m1));
        }
    }
    let mut record = CheckRecord::from_instances(
        "theorem_a1",
        "all pairs of distinct generators".into(),
        a1,
        true,
    );
    if fallback_ball.is_some() {
        record.note = Some("distances are upper bounds from ball slices of the minsets".into());
    }
    checks.push(record);

    // Lemma BC and the sampled minimal-path check need the coset models.
    match &unsupported {
        None => {
            let mut bc = Vec::new();
            let mut basepoints = Vec::new();
            for v in 0..n {
                let x0 = choose_basepoint(v, spec)?;
                for (u, model) in models.iter().enumerate() {
                    let model = model.as_ref().expect("all models present");
                    let d = point_coset_distance(&x0.vertex, &model.coset, spec);
                    bc.push(instance(
                        format!("v={} x0=[{}] u={}", graph.name(v), x0.vertex, graph.name(u)),
                        d,
                        m1 * Rational::from_integer(3),
                    ));
                }
                basepoints.push(x0);
            }
            checks.push(CheckRecord::from_instances(
                "lemma_bc",
                "basepoint in Min(v) for every v, against Min(u) for every u".into(),
                bc,
                true,
            ));
            checks.push(sampled_bridge_paths(spec, &basepoints, options)?);
        }
        Some(reason) => {
            for name in ["lemma_bc", "lemma_ab"] {
                checks.push(CheckRecord {
                    name: name.into(),
                    domain: "requires coset models of all generator minsets".into(),
                    instances: 0,
                    worst_witness: String::new(),
                    margin: zero,
                    worst_ratio: None,
                    pass: false,
                    note: Some(format!("not checked: {reason}")),
                    details: Vec::new(),
                });
            }
        }
    }

    // Proposition keyA and K-membership over the ball.
    let seven = Rational::from_integer(KEY_CONSTANT);
    let mut key = Vec::new();
    let mut kmem = Vec::new();
    let mut worst_ratio: Option<Rational> = None;
    for g in enumerate_ball(raag, options.radius)? {
        if g.is_identity() {
            continue;
        }
        let l = l1_length(&g, spec)?.value;
        let norm = Rational::from_integer(cyclic_reduction(&g).cyclic_len() as i64);
        let ratio = l / (m1 * norm);
        worst_ratio = Some(worst_ratio.map_or(ratio, |r| r.max(ratio)));
        key.push(instance(g.to_string(), l, seven * m1 * norm));
        kmem.push(instance(g.to_string(), l / (seven * m1), norm));
    }
    let mut record = CheckRecord::from_instances(
        "proposition_key_a",
        format!("all nontrivial g with |g| <= {}", options.radius),
        key,
        false,
    );
    record.worst_ratio = worst_ratio;
    checks.push(record);
    checks.push(CheckRecord::from_instances(
        "k_membership",
        format!("all nontrivial g with |g| <= {}", options.radius),
        kmem,
        false,
    ));
    let d_star = l1_length(&m1_witness, spec)?.value / (seven * m1);
    let target = Rational::new(1, KEY_CONSTANT);
    checks.push(CheckRecord {
        name: "d_star".into(),
        domain: format!("M1 witness in the ball of radius {}", options.d_radius),
        instances: 1,
        worst_witness: m1_witness.to_string(),
        margin: d_star - target,
        worst_ratio: None,
        pass: d_star == target,
        note: Some(format!("l'(d*) = {}", fmt_rational(&d_star))),
        details: Vec::new(),
    });

    let all_passed = checks.iter().all(|c| c.pass);
    Ok(BoundReport {
        generators: graph.names().to_vec(),
        widths: (0..n)
            .map(|v| (graph.name(v).to_string(), fmt_rational(&spec.width(v))))
            .collect(),
        twisted: spec.twist().is_some(),
        m1,
        m1_witness: m1_witness.to_string(),
        d_radius: options.d_radius,
        radius: options.radius,
        seed: options.seed,
        checks,
        all_passed,
    })
}

/// For random `p ∈ Min(v)`, the path `p → P^u` (closest point, inside
/// `Min(v)`) followed by `P^u → Min(u)` (closest point) must be a minimal
/// edge path from `p` to `Min(u)`.
fn sampled_bridge_paths(
    spec: &ActionSpec,
    basepoints: &[crate::minsets::Basepoint],
    options: &VerifyOptions,
) -> Result<CheckRecord, SpectraError> {
    let raag = spec.raag();
    let graph = raag.graph();
    let n = raag.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut details = Vec::new();
    for _ in 0..options.samples {
        let v = rng.gen_range(0..n);
        let x0 = &basepoints[v];
        let bridge = &x0.bridges[rng.gen_range(0..x0.bridges.len())];
        let gens: Vec<usize> = x0.model.coset.gens.iter().copied().collect();
        let steps = rng.gen_range(0..=4);
        let letters: Vec<Letter> = (0..steps)
            .map(|_| Letter::new(gens[rng.gen_range(0..gens.len())], rng.gen_bool(0.5)))
            .collect();
        let z = GroupElement::from_letters(raag, letters)?;
        let p = &x0.model.coset.base * &z;
        // closest point of the bridge to p, then closest point of Min(u)
        let to_bridge = right_coset_min(&(&p.inverse() * &bridge.coset.base), &bridge.coset.gens);
        let q = &p * &to_bridge;
        let target = &minset_model(&GroupElement::generator(raag, bridge.u), spec)?.coset;
        let to_target = right_coset_min(&(&q.inverse() * &target.base), &target.gens);
        let mut path_letters: Vec<Letter> = to_bridge.letters().to_vec();
        path_letters.extend_from_slice(to_target.letters());
        let path = EdgePath::new(p.clone(), path_letters);
        let source = VertexRegion::new([p.clone()])?;
        let verdict = is_minimal_edge_path(&path, &source, target);
        let distance = point_coset_distance(&p, target, spec);
        let mut record = instance(
            format!(
                "v={} u={} p=[{}]",
                graph.name(v),
                graph.name(bridge.u),
                p
            ),
            path.length(spec),
            distance,
        );
        record.pass &= verdict == PathVerdict::Minimal;
        details.push(record);
    }
    Ok(CheckRecord::from_instances(
        "lemma_ab",
        format!("{} seeded points of Min(v) with a bridge P^u", options.samples),
        details,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::Automorphism;
    use crate::graph::parse_graph;

    fn spec(text: &str, widths: &[(&str, Rational)]) -> ActionSpec {
        ActionSpec::with_named_widths(&Raag::new(parse_graph(text).unwrap()), widths, None).unwrap()
    }

    const PATH: &str = "vertices a b c\nedge a b\nedge b c";
    const EDGE: &str = "vertices a b\nedge a b";

    fn el(s: &ActionSpec, w: &str) -> GroupElement {
        GroupElement::parse(s.raag(), w).unwrap()
    }

    #[test]
    fn basic_lengths() {
        let s = spec(PATH, &[]);
        assert_eq!(l1_length(&el(&s, ""), &s).unwrap().value, Rational::from_integer(0));
        assert_eq!(l1_length(&el(&s, "b a b'"), &s).unwrap().value, Rational::from_integer(1));
        let w = spec(EDGE, &[("b", Rational::from_integer(2))]);
        let ab = el(&w, "a b");
        assert_eq!(l1_length(&ab, &w).unwrap().value, Rational::from_integer(3));
        assert_eq!(l1_ball_min(&ab, &w, Some(4)).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn m1_examples() {
        let s = spec(PATH, &[]);
        let (m1, witness) = m1_of_action(&s).unwrap();
        assert_eq!(m1, Rational::from_integer(4));
        assert_eq!(witness.to_string(), "a a a a");
        let doubled = s.scaled(Rational::from_integer(2)).unwrap();
        assert_eq!(m1_of_action(&doubled).unwrap().0, Rational::from_integer(8));
        let swap = s
            .with_twist(Some(Automorphism::graph_symmetry(s.raag(), &[2, 1, 0]).unwrap()))
            .unwrap();
        assert_eq!(m1_of_action(&swap).unwrap().0, m1);
    }

    #[test]
    fn spectra_and_comparison() {
        let s = spec(EDGE, &[]);
        let classes: Vec<ConjClassId> = ["a", "b", "a b"]
            .iter()
            .map(|w| conjugacy_canonical(&el(&s, w)).unwrap())
            .collect();
        let spectrum = length_spectrum(&s, &classes).unwrap();
        let values: Vec<Rational> = classes.iter().map(|c| spectrum.entries[c]).collect();
        assert_eq!(values, vec![1.into(), 1.into(), 2.into()]);
        let doubled = s.scaled(Rational::from_integer(2)).unwrap();
        assert_eq!(
            compare_actions(&s, &doubled, &classes).unwrap(),
            Comparison::ProjectivelyEqual { ratio: 2.into() }
        );
        let twisted = s
            .with_twist(Some(Automorphism::transvection(s.raag(), 0, 1).unwrap()))
            .unwrap();
        let pair = &classes[..2];
        assert_eq!(length_spectrum(&twisted, pair).unwrap().entries[&classes[0]], 2.into());
        assert_eq!(
            compare_actions(&s, &twisted, pair).unwrap(),
            Comparison::Distinct {
                witness: classes[0].clone()
            }
        );
        assert_eq!(compare_actions(&s, &twisted, &[]), Err(SpectraError::EmptyClassSet));
        let csv = spectrum.to_csv();
        assert!(csv.starts_with("class,word,l1_num,l1_den,scaled_num,scaled_den\n0,a,1,1,1,"));
    }

    #[test]
    fn verify_path() {
        let s = spec(PATH, &[]);
        let report = verify_bounds(&s, &VerifyOptions { radius: 4, ..Default::default() }).unwrap();
        assert!(report.all_passed, "{report:#?}");
        assert_eq!(
            report.check("proposition_key_a").unwrap().worst_ratio,
            Some(Rational::new(1, 4))
        );
    }
}
