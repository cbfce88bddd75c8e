//! Relation residuals, adjointness checks, block-scalar metrics and
//! diagonal intertwiners.

use std::collections::VecDeque;

use num_complex::Complex64;
use serde::Serialize;

use crate::compactrep::{CompactRep, GeneratorMatrix};
use crate::degenrep::DegenerateRep;
use crate::error::{Error, Result};
use crate::gtbasis::Block;
use crate::matrix::{combine, max_entry, SparseMatrix, SparseVec};

/// Relative tolerance for recurrence consistency in the metric and
/// intertwiner solvers.
pub const RECURRENCE_TOL: f64 = 1e-8;

/// Anything that carries generator matrices on one indexed basis.
pub trait Representation {
    fn dim(&self) -> usize;
    fn generators(&self) -> &[GeneratorMatrix];
    /// `q^{1/2} + q^{-1/2}`.
    fn a(&self) -> f64;
    /// Columns on which relation residuals are free of truncation effects.
    fn interior(&self, depth: i64) -> Vec<bool>;
    fn label(&self, i: usize) -> String;
    /// Index of the generator that must be Hermitian, if any.
    fn noncompact_index(&self) -> Option<usize>;
    /// Block id of every basis vector and the block labels.
    fn block_structure(&self) -> (Vec<usize>, Vec<Block>);
}

impl Representation for CompactRep {
    fn dim(&self) -> usize {
        CompactRep::dim(self)
    }
    fn generators(&self) -> &[GeneratorMatrix] {
        &self.generators
    }
    fn a(&self) -> f64 {
        self.p.a()
    }
    fn interior(&self, _depth: i64) -> Vec<bool> {
        vec![true; CompactRep::dim(self)]
    }
    fn label(&self, i: usize) -> String {
        self.basis[i].to_string()
    }
    fn noncompact_index(&self) -> Option<usize> {
        None
    }
    fn block_structure(&self) -> (Vec<usize>, Vec<Block>) {
        (vec![0; CompactRep::dim(self)], vec![Block::new(0, 0)])
    }
}

impl Representation for DegenerateRep {
    fn dim(&self) -> usize {
        self.space.dim()
    }
    fn generators(&self) -> &[GeneratorMatrix] {
        &self.generators
    }
    fn a(&self) -> f64 {
        self.spec.p.a()
    }
    fn interior(&self, depth: i64) -> Vec<bool> {
        self.space.interior_mask(depth)
    }
    fn label(&self, i: usize) -> String {
        self.space.pattern(i).to_string()
    }
    fn noncompact_index(&self) -> Option<usize> {
        Some(self.spec.noncompact_index())
    }
    fn block_structure(&self) -> (Vec<usize>, Vec<Block>) {
        (
            self.block_ids(),
            self.space.blocks().iter().map(|b| b.block).collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `X²Y − aXYX + YX² + Y` with `X = I_{i,i-1}`, `Y = I_{j,j-1}`.
    Cubic,
    /// `[I_{i,i-1}, I_{j,j-1}]`.
    Commutator,
    /// `M + M*`.
    AntiHermitian,
    /// `M − M*`.
    Hermitian,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualEntry {
    pub kind: RelationKind,
    pub i: usize,
    pub j: usize,
    pub max: f64,
    pub worst_column: Option<usize>,
    pub worst_row: Option<usize>,
    pub worst_pattern: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub entries: Vec<ResidualEntry>,
    pub max_residual: f64,
    pub tol: f64,
    pub columns_checked: usize,
    pub pass: bool,
}

impl ResidualReport {
    fn from_entries(entries: Vec<ResidualEntry>, tol: f64, columns_checked: usize) -> Self {
        let max_residual = entries.iter().map(|e| e.max).fold(0.0, f64::max);
        let pass = entries.iter().all(|e| e.pass);
        ResidualReport {
            entries,
            max_residual,
            tol,
            columns_checked,
            pass,
        }
    }

    pub fn worst(&self) -> Option<&ResidualEntry> {
        self.entries.iter().max_by(|a, b| a.max.total_cmp(&b.max))
    }
}

fn check_dims(rep: &dyn Representation) -> Result<()> {
    let dim = rep.dim();
    for g in rep.generators() {
        if g.matrix.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.matrix.dim(),
            });
        }
    }
    Ok(())
}

struct Worst {
    max: f64,
    col: Option<usize>,
    row: Option<usize>,
}

impl Worst {
    fn new() -> Self {
        Worst {
            max: 0.0,
            col: None,
            row: None,
        }
    }

    fn update(&mut self, col: usize, v: &SparseVec) {
        let (m, row) = max_entry(v);
        if m > self.max || (self.col.is_none() && m > 0.0) {
            self.max = m;
            self.col = Some(col);
            self.row = row;
        }
    }

    fn entry(
        self,
        rep: &dyn Representation,
        kind: RelationKind,
        i: usize,
        j: usize,
        tol: f64,
    ) -> ResidualEntry {
        ResidualEntry {
            kind,
            i,
            j,
            max: self.max,
            worst_column: self.col,
            worst_row: self.row,
            worst_pattern: self.col.map(|c| rep.label(c)),
            pass: self.max < tol,
        }
    }
}

/// Residuals of the defining relations on interior columns: both cubic
/// relations for each adjacent pair and the commutator for every pair
/// `|i − j| > 1`.
pub fn check_relations(rep: &dyn Representation, depth: i64, tol: f64) -> Result<ResidualReport> {
    check_dims(rep)?;
    let a = Complex64::new(rep.a(), 0.0);
    let one = Complex64::new(1.0, 0.0);
    let gens = rep.generators();
    let cols: Vec<usize> = rep
        .interior(depth)
        .iter()
        .enumerate()
        .filter_map(|(i, &ok)| ok.then_some(i))
        .collect();
    let mut entries = Vec::new();
    for (x_pos, gx) in gens.iter().enumerate() {
        for gy in &gens[x_pos + 1..] {
            let (x, y) = (&gx.matrix, &gy.matrix);
            if gy.index.abs_diff(gx.index) == 1 {
                let mut left = Worst::new();
                let mut right = Worst::new();
                for &c in &cols {
                    let xc = x.column_vec(c);
                    let yc = y.column_vec(c);
                    let xyc = x.apply(&yc);
                    let yxc = y.apply(&xc);
                    let xxc = x.apply(&xc);
                    let yyc = y.apply(&yc);
                    let res = combine(&[
                        (one, &x.apply(&xyc)),
                        (-a, &x.apply(&yxc)),
                        (one, &y.apply(&xxc)),
                        (one, &yc),
                    ]);
                    left.update(c, &res);
                    let res = combine(&[
                        (one, &y.apply(&yxc)),
                        (-a, &y.apply(&xyc)),
                        (one, &x.apply(&yyc)),
                        (one, &xc),
                    ]);
                    right.update(c, &res);
                }
                entries.push(left.entry(rep, RelationKind::Cubic, gx.index, gy.index, tol));
                entries.push(right.entry(rep, RelationKind::Cubic, gy.index, gx.index, tol));
            } else {
                let mut w = Worst::new();
                for &c in &cols {
                    let res = combine(&[
                        (one, &x.apply(&y.column_vec(c))),
                        (-one, &y.apply(&x.column_vec(c))),
                    ]);
                    w.update(c, &res);
                }
                entries.push(w.entry(rep, RelationKind::Commutator, gx.index, gy.index, tol));
            }
        }
    }
    Ok(ResidualReport::from_entries(entries, tol, cols.len()))
}

/// Adjointness in the given basis: `M* = −M` for compact generators and
/// `M* = M` for the noncompact one.
pub fn check_star(rep: &dyn Representation, tol: f64) -> Result<ResidualReport> {
    check_dims(rep)?;
    let nc = rep.noncompact_index();
    let mut entries = Vec::new();
    for g in rep.generators() {
        let hermitian = Some(g.index) == nc;
        let adj = g.matrix.adjoint();
        let mut w = Worst::new();
        for c in 0..rep.dim() {
            let mut v = g.matrix.column_vec(c);
            let sign = if hermitian { -1.0 } else { 1.0 };
            for (&row, &val) in adj.column_vec(c).iter() {
                *v.entry(row).or_insert(Complex64::new(0.0, 0.0)) += sign * val;
            }
            w.update(c, &v);
        }
        let kind = if hermitian {
            RelationKind::Hermitian
        } else {
            RelationKind::AntiHermitian
        };
        entries.push(w.entry(rep, kind, g.index, g.index, tol));
    }
    Ok(ResidualReport::from_entries(entries, tol, rep.dim()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricStatus {
    Found,
    /// Complex or inconsistent weight ratios.
    None,
    /// Consistent real ratios, but some of them negative.
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockWeight {
    pub block: Block,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSolution {
    pub status: MetricStatus,
    /// Weights normalized to 1 on the first block; empty unless the ratios
    /// were consistent and real.
    pub weights: Vec<BlockWeight>,
    /// Every block reached from the first one through nonzero entries.
    pub connected: bool,
    /// Largest relative violation of `c_N A[N,M] = conj(A[M,N]) c_M`.
    pub residual: f64,
    pub note: Option<String>,
}

impl MetricSolution {
    fn failed(status: MetricStatus, connected: bool, note: String) -> Self {
        MetricSolution {
            status,
            weights: Vec::new(),
            connected,
            residual: f64::INFINITY,
            note: Some(note),
        }
    }

    pub fn weight(&self, block: Block) -> Option<f64> {
        self.weights
            .iter()
            .find(|w| w.block == block)
            .map(|w| w.weight)
    }
}

/// Block-graph edges `(from, to, ratio)` where each ratio is required to be
/// the same for every entry of the block pair.
type Edges = Vec<Vec<(usize, Complex64)>>;

fn relative_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// Spreads block values from block 0 along `edges` and checks every edge.
fn propagate(n_blocks: usize, edges: &Edges) -> (Vec<Option<Complex64>>, f64) {
    let mut value: Vec<Option<Complex64>> = vec![None; n_blocks];
    let mut worst: f64 = 0.0;
    if n_blocks == 0 {
        return (value, worst);
    }
    value[0] = Some(Complex64::new(1.0, 0.0));
    let mut queue = VecDeque::from([0usize]);
    while let Some(b) = queue.pop_front() {
        let vb = value[b].expect("queued blocks carry a value");
        for &(to, ratio) in &edges[b] {
            let candidate = vb * ratio;
            match value[to] {
                None => {
                    value[to] = Some(candidate);
                    queue.push_back(to);
                }
                Some(existing) => worst = worst.max(relative_gap(existing, candidate)),
            }
        }
    }
    (value, worst)
}

/// Collects per-block-pair ratios `value(N)/value(M)` produced by `ratio`
/// for each nonzero entry `(N, M)`; `Err` carries the reason for an
/// inconsistency.
fn block_ratios(
    ids: &[usize],
    n_blocks: usize,
    entries: impl Iterator<Item = (usize, usize, std::result::Result<Complex64, String>)>,
) -> std::result::Result<Edges, String> {
    let mut edges: Edges = vec![Vec::new(); n_blocks];
    for (row, col, ratio) in entries {
        let ratio = ratio?;
        let (bn, bm) = (ids[row], ids[col]);
        if bn == bm {
            if relative_gap(ratio, Complex64::new(1.0, 0.0)) > RECURRENCE_TOL {
                return Err(format!("within-block ratio {ratio} at ({row},{col})"));
            }
            continue;
        }
        match edges[bm].iter().find(|(to, _)| *to == bn) {
            Some(&(_, existing)) => {
                if relative_gap(existing, ratio) > RECURRENCE_TOL {
                    return Err(format!(
                        "ratios {existing} and {ratio} disagree on one block pair at ({row},{col})"
                    ));
                }
            }
            None => {
                edges[bm].push((bn, ratio));
                edges[bn].push((bm, ratio.inv()));
            }
        }
    }
    Ok(edges)
}

const TINY: f64 = 1e-300;

/// Looks for positive block-scalar weights `c` with `c_N A[N,M] =
/// conj(A[M,N]) c_M` for the noncompact generator `A`, so that the
/// representation is a *-representation for the inner product `Σ c|x|²`.
pub fn solve_metric(rep: &dyn Representation) -> Result<MetricSolution> {
    check_dims(rep)?;
    let (ids, blocks) = rep.block_structure();
    let compact_ok = check_star(rep, 1e-9)?
        .entries
        .iter()
        .filter(|e| e.kind == RelationKind::AntiHermitian)
        .all(|e| e.pass);
    if !compact_ok {
        return Ok(MetricSolution::failed(
            MetricStatus::None,
            false,
            "compact generators are not anti-Hermitian".into(),
        ));
    }
    let Some(nc) = rep.noncompact_index() else {
        return Ok(MetricSolution {
            status: MetricStatus::Found,
            weights: blocks
                .iter()
                .map(|&block| BlockWeight { block, weight: 1.0 })
                .collect(),
            connected: true,
            residual: 0.0,
            note: None,
        });
    };
    let a = &rep
        .generators()
        .iter()
        .find(|g| g.index == nc)
        .ok_or_else(|| Error::InvalidParameter(format!("no generator I_{{{nc},{}}}", nc - 1)))?
        .matrix;
    let ratios = a.triplets().map(|(row, col, v)| {
        let back = a.get(col, row);
        let ratio = if v.norm() <= TINY || back.norm() <= 1e-14 * v.norm() {
            Err(format!("one-directional entry ({row},{col})"))
        } else {
            Ok(back.conj() / v)
        };
        (row, col, ratio)
    });
    let edges = match block_ratios(&ids, blocks.len(), ratios) {
        Ok(e) => e,
        Err(note) => return Ok(MetricSolution::failed(MetricStatus::None, false, note)),
    };
    let (values, cycle_gap) = propagate(blocks.len(), &edges);
    let connected = values.iter().all(Option::is_some);
    if cycle_gap > RECURRENCE_TOL {
        return Ok(MetricSolution::failed(
            MetricStatus::None,
            connected,
            format!("cycle mismatch {cycle_gap:.3e}"),
        ));
    }
    let mut status = MetricStatus::Found;
    let mut weights = Vec::new();
    for (b, v) in values.iter().enumerate() {
        let Some(v) = v else { continue };
        if v.im.abs() > RECURRENCE_TOL * v.norm() {
            return Ok(MetricSolution::failed(
                MetricStatus::None,
                connected,
                format!("complex weight {v} on block {}", blocks[b]),
            ));
        }
        if v.re <= 0.0 {
            status = MetricStatus::Indefinite;
        }
        weights.push(BlockWeight {
            block: blocks[b],
            weight: v.re,
        });
    }
    let c: Vec<f64> = values
        .iter()
        .map(|v| v.map_or(f64::NAN, |v| v.re))
        .collect();
    let residual = a
        .triplets()
        .map(|(row, col, v)| {
            let lhs = v * c[ids[row]];
            let rhs = a.get(col, row).conj() * c[ids[col]];
            relative_gap(lhs, rhs)
        })
        .fold(0.0, f64::max);
    let note = (!connected).then(|| "block graph is disconnected".to_string());
    Ok(MetricSolution {
        status: if connected {
            status
        } else {
            MetricStatus::None
        },
        weights,
        connected,
        residual,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockScalar {
    pub block: Block,
    pub re: f64,
    pub im: f64,
}

impl BlockScalar {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntertwinerSolution {
    /// `S` with `S·A(X) = B(X)·S` for every generator, normalized to 1 on the
    /// first block.
    pub weights: Vec<BlockScalar>,
    /// Largest relative entry of `S·A(X) − B(X)·S`.
    pub residual: f64,
}

impl IntertwinerSolution {
    pub fn weight(&self, block: Block) -> Option<Complex64> {
        self.weights
            .iter()
            .find(|w| w.block == block)
            .map(BlockScalar::value)
    }
}

/// Block-scalar diagonal intertwiner from `a` to `b`, or `None` when the
/// linear conditions are inconsistent or leave blocks undetermined.
pub fn solve_intertwiner(
    a: &dyn Representation,
    b: &dyn Representation,
    tol: f64,
) -> Result<Option<IntertwinerSolution>> {
    check_dims(a)?;
    check_dims(b)?;
    if a.dim() != b.dim() {
        return Err(Error::IncompatibleRepresentations(format!(
            "dimension {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    let (ids, blocks) = a.block_structure();
    if b.block_structure() != (ids.clone(), blocks.clone()) {
        return Err(Error::IncompatibleRepresentations("block structure".into()));
    }
    let indices =
        |r: &dyn Representation| r.generators().iter().map(|g| g.index).collect::<Vec<_>>();
    if indices(a) != indices(b) {
        return Err(Error::IncompatibleRepresentations("generator set".into()));
    }
    let pairs: Vec<(&SparseMatrix, &SparseMatrix)> = a
        .generators()
        .iter()
        .zip(b.generators())
        .map(|(x, y)| (&x.matrix, &y.matrix))
        .collect();
    let mut all = Vec::new();
    for &(ma, mb) in &pairs {
        let mut keys: Vec<(usize, usize)> = ma.triplets().map(|(r, c, _)| (r, c)).collect();
        keys.extend(mb.triplets().map(|(r, c, _)| (r, c)));
        keys.sort_unstable();
        keys.dedup();
        for (row, col) in keys {
            let (va, vb) = (ma.get(row, col), mb.get(row, col));
            let scale = va.norm().max(vb.norm());
            if scale <= TINY {
                continue;
            }
            let ratio = if va.norm() <= 1e-14 * scale || vb.norm() <= 1e-14 * scale {
                Err(format!("entry ({row},{col}) vanishes on one side only"))
            } else {
                Ok(vb / va)
            };
            all.push((row, col, ratio));
        }
    }
    let Ok(edges) = block_ratios(&ids, blocks.len(), all.into_iter()) else {
        return Ok(None);
    };
    let (values, cycle_gap) = propagate(blocks.len(), &edges);
    if cycle_gap > RECURRENCE_TOL || values.iter().any(Option::is_none) {
        return Ok(None);
    }
    let s: Vec<Complex64> = values.into_iter().map(|v| v.expect("connected")).collect();
    let mut residual: f64 = 0.0;
    for &(ma, mb) in &pairs {
        for (row, col, va) in ma.triplets() {
            residual = residual.max(relative_gap(
                s[ids[row]] * va,
                mb.get(row, col) * s[ids[col]],
            ));
        }
        for (row, col, vb) in mb.triplets() {
            residual = residual.max(relative_gap(
                s[ids[row]] * ma.get(row, col),
                vb * s[ids[col]],
            ));
        }
    }
    if residual >= tol {
        return Ok(None);
    }
    Ok(Some(IntertwinerSolution {
        weights: blocks
            .iter()
            .zip(&s)
            .map(|(&block, v)| BlockScalar {
                block,
                re: v.re,
                im: v.im,
            })
            .collect(),
        residual,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compactrep::{build_class1, build_so3};
    use crate::degenrep::{
        build_degenerate, build_degenerate_primed, conjugate_by_blocks, BasisKind, RepSpec,
    };
    use crate::gtbasis::HalfInt;
    use crate::qarith::{QParam, SpectralParam};
    use num_rational::Rational64;

    fn rat(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn spec(r: usize, s: usize, eps: u8, lam: SpectralParam, n: i64) -> RepSpec {
        RepSpec::new(r, s, eps, lam, QParam::new(2.0).unwrap(), n).unwrap()
    }

    #[test]
    fn so3_relations() {
        let rep = build_so3(HalfInt::int(3), &QParam::new(2.0).unwrap()).unwrap();
        let report = check_relations(&rep, 0, 1e-12).unwrap();
        assert!(report.pass, "{:?}", report.worst());
        assert_eq!(report.entries.len(), 2);
    }

    #[test]
    fn class1_relations_and_star() {
        let rep = build_class1(5, 2, &QParam::new(0.5).unwrap()).unwrap();
        assert!(check_relations(&rep, 0, 1e-10).unwrap().pass);
        assert!(check_star(&rep, 1e-12).unwrap().pass);
        // 3 adjacent pairs with two relations each, plus 3 commutators
        assert_eq!(check_relations(&rep, 0, 1e-10).unwrap().entries.len(), 9);
    }

    #[test]
    fn degenerate_relations() {
        let rep = build_degenerate(&spec(3, 3, 1, SpectralParam::real(rat(7, 10)), 8)).unwrap();
        let report = check_relations(&rep, 3, 1e-9).unwrap();
        assert!(report.pass, "{:?}", report.worst());
    }

    #[test]
    fn corruption_is_localized() {
        let mut rep = build_degenerate(&spec(3, 3, 0, SpectralParam::real(rat(7, 10)), 6)).unwrap();
        let target = rep
            .space
            .basis()
            .iter()
            .position(|p| p.m() == 1 && p.m_prime() == 1)
            .unwrap();
        rep.generators[0]
            .matrix
            .add(target, target, Complex64::new(0.1, 0.0));
        let report = check_relations(&rep, 3, 1e-9).unwrap();
        assert!(!report.pass);
        let worst = report.worst().unwrap();
        let near = |i: usize| rep.space.pattern(i).block() == rep.space.pattern(target).block();
        assert!(near(worst.worst_column.unwrap()));
    }

    #[test]
    fn star_in_standard_basis_fails_off_the_line() {
        let rep = build_degenerate(&spec(4, 4, 0, SpectralParam::real(rat(7, 10)), 6)).unwrap();
        let report = check_star(&rep, 1e-9).unwrap();
        let nc = report
            .entries
            .iter()
            .find(|e| e.kind == RelationKind::Hermitian)
            .unwrap();
        assert!(!nc.pass);
        assert!(report
            .entries
            .iter()
            .filter(|e| e.kind == RelationKind::AntiHermitian)
            .all(|e| e.pass));
    }

    #[test]
    fn principal_primed_star() {
        let lam = SpectralParam::inexact(Complex64::new(3.0, 2.0));
        let rep = build_degenerate_primed(&spec(4, 4, 0, lam, 6)).unwrap();
        assert!(check_star(&rep, 1e-9).unwrap().pass);
    }

    #[test]
    fn metric_examples() {
        let principal = build_degenerate(&spec(
            4,
            4,
            0,
            SpectralParam::inexact(Complex64::new(3.0, 2.0)),
            6,
        ))
        .unwrap();
        let m = solve_metric(&principal).unwrap();
        assert_eq!(m.status, MetricStatus::Found);
        assert!(m.weights.iter().all(|w| (w.weight - 1.0).abs() < 1e-8));

        let off = build_degenerate(&spec(
            4,
            4,
            0,
            SpectralParam::inexact(Complex64::new(0.7, 1.3)),
            6,
        ))
        .unwrap();
        assert_eq!(solve_metric(&off).unwrap().status, MetricStatus::None);

        let supp = build_degenerate(&spec(4, 4, 0, SpectralParam::real(rat(7, 2)), 6)).unwrap();
        let m = solve_metric(&supp).unwrap();
        assert_eq!(m.status, MetricStatus::Found, "{:?}", m.note);
        assert!(m.weights.iter().any(|w| (w.weight - 1.0).abs() > 1e-3));
        assert!(m.residual < 1e-8);

        // the metric makes the conjugated representation a *-representation
        let scaled = conjugate_by_blocks(
            &supp,
            |b| Complex64::new(m.weight(b).unwrap().sqrt(), 0.0),
            BasisKind::Conjugated,
        );
        assert!(check_star(&scaled, 1e-9).unwrap().pass);
    }

    #[test]
    fn odd_odd_supplementary_parity() {
        // the parity ε ≡ (r+s)/2 gives an indefinite form, the other one a metric
        for (r, s, lam) in [(3, 3, rat(5, 2)), (3, 5, rat(7, 2))] {
            let wrong = ((r + s) / 2 % 2) as u8;
            let bad = build_degenerate(&spec(r, s, wrong, SpectralParam::real(lam), 8)).unwrap();
            assert_eq!(solve_metric(&bad).unwrap().status, MetricStatus::Indefinite);
            let good =
                build_degenerate(&spec(r, s, 1 - wrong, SpectralParam::real(lam), 8)).unwrap();
            assert_eq!(solve_metric(&good).unwrap().status, MetricStatus::Found);
        }
    }

    #[test]
    fn intertwiner_examples() {
        let a = build_degenerate(&spec(3, 3, 0, SpectralParam::real(rat(3, 10)), 8)).unwrap();
        let same = solve_intertwiner(&a, &a, 1e-8).unwrap().unwrap();
        assert!(same
            .weights
            .iter()
            .all(|w| (w.value() - 1.0).norm() < 1e-12));

        let mirror =
            build_degenerate(&a.spec.with_lambda(a.spec.lambda.reflect(rat(4, 1)))).unwrap();
        let s = solve_intertwiner(&a, &mirror, 1e-8)
            .unwrap()
            .expect("mirror intertwiner");
        let back = solve_intertwiner(&mirror, &a, 1e-8)
            .unwrap()
            .expect("inverse intertwiner");
        for w in &s.weights {
            let inv = back.weight(w.block).unwrap();
            assert!((w.value() * inv - 1.0).norm() < 1e-8);
        }

        let p = a.spec.p;
        let shifted = build_degenerate(
            &a.spec
                .with_lambda(a.spec.lambda.shift_imaginary(rat(2, 1), &p).unwrap()),
        )
        .unwrap();
        let s = solve_intertwiner(&a, &shifted, 1e-8)
            .unwrap()
            .expect("period intertwiner");
        for w in &s.weights {
            let expected = if w.block.m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((w.value() - expected).norm() < 1e-8);
        }
    }

    #[test]
    fn incompatible_inputs() {
        let a = build_degenerate(&spec(3, 3, 0, SpectralParam::real(rat(3, 10)), 4)).unwrap();
        let b = build_degenerate(&spec(3, 3, 0, SpectralParam::real(rat(3, 10)), 6)).unwrap();
        assert!(matches!(
            solve_intertwiner(&a, &b, 1e-8),
            Err(Error::IncompatibleRepresentations(_))
        ));
    }
}
