//! Irreducibility and *-series decisions for `T_{ελ}`, the predicted
//! decomposition of reducible cases, and a lattice scanner that finds
//! invariant block regions from vanishing coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::degenrep::RepSpec;
use crate::error::{Error, Result};
use crate::gtbasis::{admissible_blocks, Block};
use crate::qarith::{normalize_spectral, qnum_vanishes, QParam, ShiftRelation, SpectralParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StarSeries {
    Principal,
    Strange,
    Supplementary,
    /// Reducible, with at least one *-constituent.
    DiscreteConstituent,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConstituentName {
    #[serde(rename = "T^F")]
    TF,
    #[serde(rename = "T^0")]
    T0,
    #[serde(rename = "T^+")]
    TPlus,
    #[serde(rename = "T^-")]
    TMinus,
    #[serde(rename = "T^1")]
    T1,
    #[serde(rename = "T^2")]
    T2,
    #[serde(rename = "T^3")]
    T3,
    #[serde(rename = "full")]
    Full,
}

impl fmt::Display for ConstituentName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstituentName::TF => "T^F",
            ConstituentName::T0 => "T^0",
            ConstituentName::TPlus => "T^+",
            ConstituentName::TMinus => "T^-",
            ConstituentName::T1 => "T^1",
            ConstituentName::T2 => "T^2",
            ConstituentName::T3 => "T^3",
            ConstituentName::Full => "full",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    Subspace,
    Quotient,
    DirectSummand,
    Whole,
}

/// Blocks `(m,m')` with `sum_min ≤ m+m' ≤ sum_max` and
/// `diff_min ≤ m−m' ≤ diff_max`; missing bounds are open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct LatticeRegion {
    pub sum_min: Option<i64>,
    pub sum_max: Option<i64>,
    pub diff_min: Option<i64>,
    pub diff_max: Option<i64>,
}

impl LatticeRegion {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn sum_at_most(mut self, v: i64) -> Self {
        self.sum_max = Some(v);
        self
    }

    pub fn sum_at_least(mut self, v: i64) -> Self {
        self.sum_min = Some(v);
        self
    }

    pub fn diff_at_most(mut self, v: i64) -> Self {
        self.diff_max = Some(v);
        self
    }

    pub fn diff_at_least(mut self, v: i64) -> Self {
        self.diff_min = Some(v);
        self
    }

    pub fn contains(&self, b: Block) -> bool {
        let (sum, diff) = (b.sum(), b.diff());
        self.sum_min.is_none_or(|v| sum >= v)
            && self.sum_max.is_none_or(|v| sum <= v)
            && self.diff_min.is_none_or(|v| diff >= v)
            && self.diff_max.is_none_or(|v| diff <= v)
    }

    pub fn is_finite(&self) -> bool {
        self.sum_max.is_some()
    }

    /// The same region after exchanging `m` and `m'`.
    pub fn swap_labels(self) -> Self {
        LatticeRegion {
            diff_min: self.diff_max.map(|v| -v),
            diff_max: self.diff_min.map(|v| -v),
            ..self
        }
    }

    /// Admissible blocks of parity `epsilon` inside the region, up to `cutoff`.
    pub fn blocks(&self, epsilon: u8, cutoff: i64) -> BTreeSet<Block> {
        admissible_blocks(epsilon, cutoff)
            .into_iter()
            .filter(|&b| self.contains(b))
            .collect()
    }
}

impl fmt::Display for LatticeRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match (self.sum_min, self.sum_max) {
            (Some(a), Some(b)) => parts.push(format!("{a} <= m+m' <= {b}")),
            (Some(a), None) => parts.push(format!("m+m' >= {a}")),
            (None, Some(b)) => parts.push(format!("m+m' <= {b}")),
            (None, None) => {}
        }
        match (self.diff_min, self.diff_max) {
            (Some(a), Some(b)) => parts.push(format!("{a} <= m-m' <= {b}")),
            (Some(a), None) => parts.push(format!("m-m' >= {a}")),
            (None, Some(b)) => parts.push(format!("m-m' <= {b}")),
            (None, None) => {}
        }
        if parts.is_empty() {
            f.write_str("all")
        } else {
            f.write_str(&parts.join(" and "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constituent {
    pub name: ConstituentName,
    pub region: LatticeRegion,
    pub predicate: String,
    pub realized_on: Realization,
    pub star: bool,
    pub finite_dim: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub r: usize,
    pub s: usize,
    pub epsilon: u8,
    pub input_lambda: SpectralParam,
    /// λ with `im_t` reduced into `[0, 2)`.
    pub lambda: SpectralParam,
    pub relation: ShiftRelation,
    pub irreducible: bool,
    pub star_series: StarSeries,
    pub constituents: Vec<Constituent>,
    /// Whether the decomposition was read off at `r+s−2−λ`.
    pub mirrored: bool,
    pub ladder: bool,
    /// Human-readable name of the case applied.
    pub case: String,
}

fn check_ranks(r: usize, s: usize, epsilon: u8) -> Result<()> {
    if r <= 2 || s <= 2 {
        return Err(Error::UnsupportedRank { r, s });
    }
    if epsilon > 1 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    Ok(())
}

/// Normalized λ and its integer value, if it is a real integer.
fn integer_part(lambda: &SpectralParam) -> Result<(SpectralParam, ShiftRelation, Option<i64>)> {
    let (norm, rel) = normalize_spectral(lambda)?;
    Ok((norm, rel, norm.as_integer()))
}

fn same_parity(a: i64, b: i64) -> bool {
    (a - b).rem_euclid(2) == 0
}

pub fn classify_irreducible(
    r: usize,
    s: usize,
    epsilon: u8,
    lambda: &SpectralParam,
) -> Result<bool> {
    check_ranks(r, s, epsilon)?;
    let (_, _, int) = integer_part(lambda)?;
    let Some(l) = int else { return Ok(true) };
    let eps = epsilon as i64;
    Ok(match (r % 2, s % 2) {
        (0, 0) => !same_parity(l, eps),
        (1, 1) => same_parity(l, eps) && l > 0 && 2 * l < (r + s) as i64 - 4,
        _ => false,
    })
}

/// *-series tag of `T_{ελ}`; for reducible parameters the
/// tag reports whether some constituent is a *-representation.
pub fn classify_star(
    r: usize,
    s: usize,
    epsilon: u8,
    lambda: &SpectralParam,
) -> Result<StarSeries> {
    check_ranks(r, s, epsilon)?;
    if !classify_irreducible(r, s, epsilon, lambda)? {
        let c = predict_constituents(r, s, epsilon, lambda)?;
        return Ok(if c.constituents.iter().any(|k| k.star) {
            StarSeries::DiscreteConstituent
        } else {
            StarSeries::None
        });
    }
    let (norm, _) = normalize_spectral(lambda)?;
    let (re, im_t) = norm.exact_parts()?;
    let two = Rational64::from_integer(2);
    let center2 = Rational64::from_integer((r + s) as i64 - 2);
    if re * two == center2 {
        return Ok(StarSeries::Principal);
    }
    if im_t == Rational64::from_integer(1) {
        return Ok(StarSeries::Strange);
    }
    if !im_t.is_zero() {
        return Ok(StarSeries::None);
    }
    // mirror onto Re λ ≥ (r+s−2)/2
    let x = if re * two < center2 { center2 - re } else { re };
    let c = center2 / two;
    let half = Rational64::new(1, 2);
    let inside = if (r + s).is_multiple_of(2) {
        // a crossing move (m,m') -> (m±1,m'∓1) at m−m' = (s−r−2)/2 has a
        // negative weight ratio, so that difference must be off the lattice
        let half_gap = (s as i64 - r as i64) / 2;
        x > c && x < c + 1 && same_parity(epsilon as i64, half_gap)
    } else {
        x > c && x < c + half
    };
    Ok(if inside {
        StarSeries::Supplementary
    } else {
        StarSeries::None
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layer {
    Bottom,
    Middle,
    Top,
    Summand,
}

struct Piece {
    name: ConstituentName,
    region: LatticeRegion,
    layer: Layer,
    finite: bool,
}

fn piece(name: ConstituentName, region: LatticeRegion, layer: Layer) -> Piece {
    Piece {
        name,
        region,
        layer,
        finite: name == ConstituentName::TF,
    }
}

/// Decomposition at an integer `l` with `2l ≤ r+s−2`, for even `r` or odd
/// `r, s`. Returns the pieces, the case name and the ladder flag, or `None`
/// when the case list does not cover `l`.
fn small_lambda_cases(
    r: i64,
    s: i64,
    eps: i64,
    l: i64,
) -> Option<(Vec<Piece>, &'static str, bool)> {
    use ConstituentName::*;
    let matching = same_parity(l, eps);
    let band = LatticeRegion::all()
        .diff_at_least(l - r + 2)
        .diff_at_most(-l + s - 2);
    let minus = LatticeRegion::all().diff_at_least(-l + s - 1);
    let plus = LatticeRegion::all().diff_at_most(l - r + 1);
    let finite = LatticeRegion::all().sum_at_most(-l);
    let ladder = 2 * l == r + s - 4;
    let split = |l: i64| {
        vec![
            piece(
                TMinus,
                LatticeRegion::all().diff_at_least(l - r + 2),
                Layer::Summand,
            ),
            piece(
                TPlus,
                LatticeRegion::all().diff_at_most(-l + s - 2),
                Layer::Summand,
            ),
        ]
    };
    match (r % 2, s % 2) {
        (0, 0) => {
            if !matching {
                None
            } else if l <= 0 {
                Some((
                    vec![
                        piece(TF, finite, Layer::Bottom),
                        piece(T0, band.sum_at_least(-l + 1), Layer::Middle),
                        piece(TMinus, minus, Layer::Top),
                        piece(TPlus, plus, Layer::Top),
                    ],
                    "even r and s, λ ≤ 0: finite subspace, T^0 on the band quotient, T^± on the outer quotient",
                    false,
                ))
            } else if 2 * l <= r + s - 4 {
                Some((
                    vec![
                        piece(T0, band, Layer::Bottom),
                        piece(TMinus, minus, Layer::Top),
                        piece(TPlus, plus, Layer::Top),
                    ],
                    if ladder {
                        "even r and s, λ = (r+s)/2−2: ladder subspace T^0 and quotient T^− ⊕ T^+"
                    } else {
                        "even r and s, 0 < λ ≤ (r+s)/2−2: subspace T^0 and quotient T^− ⊕ T^+"
                    },
                    ladder,
                ))
            } else if 2 * l == r + s - 2 {
                Some((
                    split(l),
                    "even r and s, λ = (r+s)/2−1: direct sum T^− ⊕ T^+",
                    false,
                ))
            } else {
                None
            }
        }
        (1, 1) => {
            if matching && l <= 0 {
                Some((
                    vec![
                        piece(TF, finite, Layer::Bottom),
                        piece(T3, LatticeRegion::all().sum_at_least(-l + 1), Layer::Top),
                    ],
                    "odd r and s, λ ≤ 0, λ ≡ ε: finite subspace and quotient T^3",
                    false,
                ))
            } else if !matching && 2 * l <= r + s - 4 {
                Some((
                    vec![
                        piece(T0, band, Layer::Bottom),
                        piece(TMinus, minus, Layer::Top),
                        piece(TPlus, plus, Layer::Top),
                    ],
                    if ladder {
                        "odd r and s, λ = (r+s)/2−2, λ ≢ ε: ladder subspace T^0 and quotient T^− ⊕ T^+"
                    } else {
                        "odd r and s, λ ≤ (r+s)/2−2, λ ≢ ε: subspace T^0 and quotient T^− ⊕ T^+"
                    },
                    ladder,
                ))
            } else if !matching && 2 * l == r + s - 2 {
                Some((
                    split(l),
                    "odd r and s, λ = (r+s)/2−1: direct sum T^− ⊕ T^+",
                    false,
                ))
            } else {
                None
            }
        }
        _ => {
            // r even, s odd; 2l ≤ r+s−3 always holds here
            if matching && l <= 0 {
                Some((
                    vec![
                        piece(TF, finite, Layer::Bottom),
                        piece(
                            T1,
                            LatticeRegion::all()
                                .diff_at_least(l - r + 2)
                                .sum_at_least(-l + 1),
                            Layer::Middle,
                        ),
                        piece(TPlus, plus, Layer::Top),
                    ],
                    "even r, odd s, λ ≤ 0, λ ≡ ε: finite subspace, T^1, quotient T^+",
                    false,
                ))
            } else if matching {
                Some((
                    vec![
                        piece(
                            T1,
                            LatticeRegion::all().diff_at_least(l - r + 2),
                            Layer::Bottom,
                        ),
                        piece(TPlus, plus, Layer::Top),
                    ],
                    if 2 * l == r + s - 3 {
                        "even r, odd s, λ = (r+s−3)/2, λ ≡ ε: subspace T^1 and quotient T^+ (boundary of the 0 < λ < (r+s)/2−2 case)"
                    } else {
                        "even r, odd s, 0 < λ < (r+s)/2−2, λ ≡ ε: subspace T^1 and quotient T^+"
                    },
                    false,
                ))
            } else {
                Some((
                    vec![
                        piece(
                            T2,
                            LatticeRegion::all().diff_at_most(-l + s - 2),
                            Layer::Bottom,
                        ),
                        piece(TMinus, minus, Layer::Top),
                    ],
                    if 2 * l == r + s - 3 {
                        "even r, odd s, λ = (r+s−3)/2, λ ≢ ε: subspace T^2 and quotient T^− (boundary of the λ < (r+s)/2−2 case)"
                    } else {
                        "even r, odd s, λ < (r+s)/2−2, λ ≢ ε: subspace T^2 and quotient T^−"
                    },
                    false,
                ))
            }
        }
    }
}

/// Constituents of `T_{ελ}` with their lattice supports.
pub fn predict_constituents(
    r: usize,
    s: usize,
    epsilon: u8,
    lambda: &SpectralParam,
) -> Result<Classification> {
    check_ranks(r, s, epsilon)?;
    let (norm, relation, int) = integer_part(lambda)?;
    let irreducible = classify_irreducible(r, s, epsilon, lambda)?;
    let mut out = Classification {
        r,
        s,
        epsilon,
        input_lambda: *lambda,
        lambda: norm,
        relation,
        irreducible,
        star_series: StarSeries::None,
        constituents: Vec::new(),
        mirrored: false,
        ladder: false,
        case: String::new(),
    };
    if irreducible {
        let star = classify_star(r, s, epsilon, lambda)?;
        out.star_series = star;
        out.constituents.push(Constituent {
            name: ConstituentName::Full,
            region: LatticeRegion::all(),
            predicate: LatticeRegion::all().to_string(),
            realized_on: Realization::Whole,
            star: star != StarSeries::None,
            finite_dim: false,
        });
        out.case = "irreducible".into();
        return Ok(out);
    }
    let l = int.expect("reducible parameters are integers");
    let center2 = (r + s) as i64 - 2;
    let mirrored = 2 * l > center2;
    let small = if mirrored { center2 - l } else { l };
    // odd r with even s: exchange the roles of (r, m) and (s, m')
    let swapped = r % 2 == 1 && s.is_multiple_of(2);
    let (rr, ss) = if swapped { (s, r) } else { (r, s) };
    let unclassified = || Error::UnclassifiedReducibleCase {
        r,
        s,
        epsilon,
        lambda: norm.to_string(),
    };
    let (pieces, case, ladder) =
        small_lambda_cases(rr as i64, ss as i64, epsilon as i64, small).ok_or_else(unclassified)?;
    for p in pieces {
        let (name, region) = if swapped {
            let name = match p.name {
                ConstituentName::TPlus => ConstituentName::TMinus,
                ConstituentName::TMinus => ConstituentName::TPlus,
                other => other,
            };
            (name, p.region.swap_labels())
        } else {
            (p.name, p.region)
        };
        let realized_on = match (p.layer, mirrored) {
            (Layer::Summand, _) => Realization::DirectSummand,
            (Layer::Middle, _) => Realization::Quotient,
            (Layer::Bottom, false) | (Layer::Top, true) => Realization::Subspace,
            (Layer::Bottom, true) | (Layer::Top, false) => Realization::Quotient,
        };
        let star = match name {
            ConstituentName::TPlus | ConstituentName::TMinus => true,
            ConstituentName::T0 => ladder,
            _ => false,
        };
        out.constituents.push(Constituent {
            name,
            region,
            predicate: region.to_string(),
            realized_on,
            star,
            finite_dim: p.finite,
        });
    }
    out.mirrored = mirrored;
    out.ladder = ladder;
    let mut trace = case.to_string();
    if swapped {
        trace.push_str("; r odd and s even, read with r ↔ s and m ↔ m'");
    }
    if mirrored {
        trace = format!("{trace}; applied at r+s−2−λ = {small}, subspaces and quotients exchanged");
    }
    out.case = trace;
    out.star_series = if out.constituents.iter().any(|c| c.star) {
        StarSeries::DiscreteConstituent
    } else {
        StarSeries::None
    };
    Ok(out)
}

/// Smallest cutoff at which every predicted region of an integer λ in a
/// given range is populated.
pub fn recommended_cutoff(r: usize, s: usize, lambda: &SpectralParam) -> i64 {
    let re = match lambda {
        SpectralParam::Exact { re, .. } => re.abs().ceil().to_integer(),
        SpectralParam::Inexact(z) => z.re.abs().ceil() as i64,
    };
    2 * (re + (r + s) as i64) + 4
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub r: usize,
    pub s: usize,
    pub epsilon: u8,
    pub lambda: SpectralParam,
    pub cutoff: i64,
    /// Strongly connected block sets of the coefficient graph.
    pub components: Vec<BTreeSet<Block>>,
    /// Nonempty unions of components closed under the action, smallest
    /// first; the full lattice is always last.
    pub invariant_regions: Vec<BTreeSet<Block>>,
    #[serde(skip)]
    edges: BTreeMap<Block, Vec<Block>>,
}

impl ScanResult {
    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// No edge leaves `set`.
    pub fn is_closed(&self, set: &BTreeSet<Block>) -> bool {
        set.iter().all(|b| {
            self.edges
                .get(b)
                .is_none_or(|ts| ts.iter().all(|t| set.contains(t)))
        })
    }

    pub fn targets(&self, b: Block) -> &[Block] {
        self.edges.get(&b).map_or(&[], Vec::as_slice)
    }
}

/// Offsets `c` of the λ-factor `[λ+c]_q` for the four moves out of a block.
pub fn move_offsets(r: usize, s: usize, b: Block) -> [(i64, i64, i64); 4] {
    let (r, s) = (r as i64, s as i64);
    let (sum, diff) = (b.sum(), b.diff());
    [
        (1, 1, sum),
        (1, -1, diff - s + 2),
        (-1, 1, -diff - r + 2),
        (-1, -1, -sum - r - s + 4),
    ]
}

const MAX_ENUMERATED_COMPONENTS: usize = 16;

/// Block graph of the noncompact generator with exact vanishing tests; its
/// strongly connected components are the candidate constituents.
pub fn scan_lattice(spec: &RepSpec) -> Result<ScanResult> {
    spec.validate()?;
    let lam = &spec.lambda;
    lam.exact_parts()?;
    let blocks = admissible_blocks(spec.epsilon, spec.cutoff);
    let mut graph: DiGraph<Block, ()> = DiGraph::new();
    let nodes: BTreeMap<Block, NodeIndex> =
        blocks.iter().map(|&b| (b, graph.add_node(b))).collect();
    let mut edges: BTreeMap<Block, Vec<Block>> = BTreeMap::new();
    for &b in &blocks {
        for (dm, dmp, c) in move_offsets(spec.r, spec.s, b) {
            let t = Block::new(b.m + dm, b.m_prime + dmp);
            let Some(&to) = nodes.get(&t) else { continue };
            if qnum_vanishes(lam, Rational64::from_integer(c), &spec.p)? {
                continue;
            }
            graph.add_edge(nodes[&b], to, ());
            edges.entry(b).or_default().push(t);
        }
    }
    let mut components: Vec<BTreeSet<Block>> = tarjan_scc(&graph)
        .into_iter()
        .map(|scc| scc.into_iter().map(|n| graph[n]).collect())
        .collect();
    components.sort();
    let mut result = ScanResult {
        r: spec.r,
        s: spec.s,
        epsilon: spec.epsilon,
        lambda: spec.lambda,
        cutoff: spec.cutoff,
        components,
        invariant_regions: Vec::new(),
        edges,
    };
    let k = result.components.len();
    if k <= MAX_ENUMERATED_COMPONENTS {
        let mut regions = Vec::new();
        for mask in 1u32..(1 << k) {
            let set: BTreeSet<Block> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .flat_map(|i| result.components[i].iter().copied())
                .collect();
            if result.is_closed(&set) {
                regions.push(set);
            }
        }
        regions.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        result.invariant_regions = regions;
    }
    Ok(result)
}

/// Disagreements between a closed-form classification and a scan: the
/// irreducibility verdict, the constituent block sets against the strongly
/// connected components, and the closedness implied by each realization.
pub fn compare_with_scan(c: &Classification, scan: &ScanResult) -> Vec<String> {
    let mut out = Vec::new();
    if c.irreducible != scan.is_irreducible() {
        out.push(format!(
            "theorem says irreducible={}, scanner found {} components",
            c.irreducible,
            scan.components.len()
        ));
        return out;
    }
    if c.irreducible {
        return out;
    }
    let mut predicted: Vec<BTreeSet<Block>> = c
        .constituents
        .iter()
        .map(|k| k.region.blocks(c.epsilon, scan.cutoff))
        .collect();
    predicted.sort();
    if predicted != scan.components {
        out.push(format!(
            "predicted block sets of sizes {:?}, scanner components of sizes {:?}",
            predicted.iter().map(BTreeSet::len).collect::<Vec<_>>(),
            scan.components
                .iter()
                .map(BTreeSet::len)
                .collect::<Vec<_>>()
        ));
    }
    for k in &c.constituents {
        let closed = scan.is_closed(&k.region.blocks(c.epsilon, scan.cutoff));
        let want = matches!(
            k.realized_on,
            Realization::Subspace | Realization::DirectSummand
        );
        if closed != want {
            out.push(format!(
                "{} is {:?} but closed={closed}",
                k.name, k.realized_on
            ));
        }
    }
    out
}

/// Scanner spec at the recommended cutoff. The vanishing pattern does not
/// depend on `q ≠ 1`, so `q = 2` is used unless given.
pub fn scan_spec(
    r: usize,
    s: usize,
    epsilon: u8,
    lambda: SpectralParam,
    p: Option<QParam>,
) -> Result<RepSpec> {
    let p = p.unwrap_or(QParam::new(2.0)?);
    RepSpec::new(r, s, epsilon, lambda, p, recommended_cutoff(r, s, &lambda))
}
