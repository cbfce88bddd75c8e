//! Truncated degenerate principal series `T_{ελ}` of so'_q(r,s), in the
//! standard double-pattern basis and in the primed basis.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::compactrep::{build_class1, checked_sqrt, CompactRep, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gtbasis::{build_space, Block, TruncatedSpace};
use crate::matrix::SparseMatrix;
use crate::qarith::{qnum_vanishes, QParam, SpectralParam};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Parameters of one truncated degenerate-series representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepSpec {
    pub r: usize,
    pub s: usize,
    pub epsilon: u8,
    pub lambda: SpectralParam,
    pub p: QParam,
    pub cutoff: i64,
}

impl RepSpec {
    pub fn new(
        r: usize,
        s: usize,
        epsilon: u8,
        lambda: SpectralParam,
        p: QParam,
        cutoff: i64,
    ) -> Result<Self> {
        let spec = RepSpec {
            r,
            s,
            epsilon,
            lambda,
            p,
            cutoff,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r <= 2 || self.s <= 2 {
            return Err(Error::UnsupportedRank {
                r: self.r,
                s: self.s,
            });
        }
        if self.epsilon > 1 {
            return Err(Error::InvalidEpsilon(self.epsilon));
        }
        if self.cutoff < 0 {
            return Err(Error::InvalidParameter(format!(
                "cutoff must be nonnegative, got {}",
                self.cutoff
            )));
        }
        self.lambda.value(&self.p)?;
        Ok(())
    }

    pub fn with_lambda(&self, lambda: SpectralParam) -> Self {
        RepSpec { lambda, ..*self }
    }

    /// Index `r+1` of the noncompact generator.
    pub fn noncompact_index(&self) -> usize {
        self.r + 1
    }

    /// `[λ + c]_q`, exactly zero when it vanishes for exact λ.
    fn lambda_qnum(&self, lam: Complex64, c: i64) -> Result<Complex64> {
        if self.lambda.is_exact()
            && qnum_vanishes(&self.lambda, Rational64::from_integer(c), &self.p)?
        {
            return Ok(ZERO);
        }
        Ok(self.p.qnum(lam + Complex64::new(c as f64, 0.0)))
    }

    /// `[-λ + c]_q`.
    fn neg_lambda_qnum(&self, lam: Complex64, c: i64) -> Result<Complex64> {
        Ok(-self.lambda_qnum(lam, -c)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Standard,
    Primed,
    /// Standard basis conjugated by a block-scalar diagonal.
    Conjugated,
}

/// Square-root branch bookkeeping for one primed `I_{r+1,r}` edge: the
/// entry uses the product of principal roots of the two factors, which
/// differs in sign from the principal root of their product when `flipped`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchRecord {
    pub from: Block,
    pub to: Block,
    pub flipped: bool,
}

/// `T_{ελ}` on a truncated space.
#[derive(Debug, Clone)]
pub struct DegenerateRep {
    pub spec: RepSpec,
    pub space: TruncatedSpace,
    /// `I_{21}, …, I_{r+s,r+s-1}`.
    pub generators: Vec<GeneratorMatrix>,
    pub basis_kind: BasisKind,
    pub branches: Vec<BranchRecord>,
}

impl DegenerateRep {
    pub fn generator(&self, i: usize) -> &GeneratorMatrix {
        &self.generators[i - 2]
    }

    pub fn noncompact(&self) -> &SparseMatrix {
        &self.generator(self.spec.noncompact_index()).matrix
    }

    /// Block position (into `space.blocks()`) of every basis vector.
    pub fn block_ids(&self) -> Vec<usize> {
        block_ids(&self.space)
    }
}

pub(crate) fn block_ids(space: &TruncatedSpace) -> Vec<usize> {
    let mut ids = vec![0; space.dim()];
    for (b, range) in space.blocks().iter().enumerate() {
        ids[range.offset..range.offset + range.len()].fill(b);
    }
    ids
}

/// `K_m` of the noncompact generator, with `k = m_{r-1}` (signed for `r = 3`).
pub fn k_coeff(m: i64, k: i64, r: usize, p: &QParam) -> f64 {
    wall_coeff(m, k, r as i64, p)
}

/// `L_{m'}`, the same expression with `(m', k', s)`.
pub fn l_coeff(m_prime: i64, k_prime: i64, s: usize, p: &QParam) -> f64 {
    wall_coeff(m_prime, k_prime, s as i64, p)
}

fn wall_coeff(m: i64, k: i64, r: i64, p: &QParam) -> f64 {
    let a = m - k + 1;
    let b = m + k + r - 2;
    if a == 0 || b == 0 {
        return 0.0;
    }
    let num = p.qnum_real(a as f64) * p.qnum_real(b as f64);
    let den = p.qnum_real((2 * m + r) as f64) * p.qnum_real((2 * m + r - 2) as f64);
    // admissible labels keep this nonnegative; clamp tiny round-off
    checked_sqrt(num / den, || format!("K/L m={m} k={k} rank={r}")).unwrap_or(f64::NAN)
}

/// Standard-basis coefficients of `I_{r+1,r}` out of block `(m,m')`, as
/// `(Δm, Δm', value)`.
fn standard_moves(
    spec: &RepSpec,
    lam: Complex64,
    m: i64,
    k: i64,
    mp: i64,
    kp: i64,
) -> Result<[(i64, i64, Complex64); 4]> {
    let (r, s, p) = (spec.r, spec.s, &spec.p);
    let (ri, si) = (r as i64, s as i64);
    let sum = m + mp;
    let diff = m - mp;
    let kl = |a: i64, b: i64| Complex64::new(k_coeff(a, k, r, p) * l_coeff(b, kp, s, p), 0.0);
    Ok([
        (1, 1, kl(m, mp) * spec.lambda_qnum(lam, sum)?),
        (
            1,
            -1,
            -kl(m, mp - 1) * spec.lambda_qnum(lam, diff - si + 2)?,
        ),
        (
            -1,
            1,
            kl(m - 1, mp) * spec.lambda_qnum(lam, -diff - ri + 2)?,
        ),
        (
            -1,
            -1,
            -kl(m - 1, mp - 1) * spec.lambda_qnum(lam, -sum - ri - si + 4)?,
        ),
    ])
}

/// `√[λ+M]·√[−λ+M+r+s−2]` and whether the per-factor roots differ from the
/// root of the product.
fn pair_root(a: Complex64, b: Complex64) -> (Complex64, bool) {
    let per_factor = a.sqrt() * b.sqrt();
    let product = (a * b).sqrt();
    let flipped = (per_factor - product).norm() > 1e-9 * (1.0 + product.norm());
    (per_factor, flipped)
}

fn primed_pp(spec: &RepSpec, lam: Complex64, sum: i64) -> Result<(Complex64, bool)> {
    let rs = (spec.r + spec.s) as i64;
    Ok(pair_root(
        spec.lambda_qnum(lam, sum)?,
        spec.neg_lambda_qnum(lam, sum + rs - 2)?,
    ))
}

fn primed_pm(spec: &RepSpec, lam: Complex64, diff: i64) -> Result<(Complex64, bool)> {
    let (r, s) = (spec.r as i64, spec.s as i64);
    Ok(pair_root(
        spec.lambda_qnum(lam, diff - s + 2)?,
        spec.neg_lambda_qnum(lam, diff + r)?,
    ))
}

/// Builds `T_{ελ}` in the standard basis.
pub fn build_degenerate(spec: &RepSpec) -> Result<DegenerateRep> {
    spec.validate()?;
    let lam = spec.lambda.value(&spec.p)?;
    build_with(spec, BasisKind::Standard, |m, k, mp, kp| {
        Ok((standard_moves(spec, lam, m, k, mp, kp)?, [false; 4]))
    })
}

/// Builds `T_{ελ}` directly in the primed basis, where `I_{r+1,r}` carries
/// the square-root coefficients. Compact generators are unchanged.
pub fn build_degenerate_primed(spec: &RepSpec) -> Result<DegenerateRep> {
    spec.validate()?;
    let lam = spec.lambda.value(&spec.p)?;
    let (r, s, p) = (spec.r, spec.s, &spec.p);
    build_with(spec, BasisKind::Primed, |m, k, mp, kp| {
        let kl = |a: i64, b: i64| Complex64::new(k_coeff(a, k, r, p) * l_coeff(b, kp, s, p), 0.0);
        let (sum, diff) = (m + mp, m - mp);
        let (up, f0) = primed_pp(spec, lam, sum)?;
        let (cross, f1) = primed_pm(spec, lam, diff)?;
        let (cross_back, f2) = primed_pm(spec, lam, diff - 2)?;
        let (down, f3) = primed_pp(spec, lam, sum - 2)?;
        Ok((
            [
                (1, 1, kl(m, mp) * up),
                (1, -1, -kl(m, mp - 1) * cross),
                (-1, 1, -kl(m - 1, mp) * cross_back),
                (-1, -1, kl(m - 1, mp - 1) * down),
            ],
            [f0, f1, f2, f3],
        ))
    })
}

type Moves = ([(i64, i64, Complex64); 4], [bool; 4]);

fn build_with(
    spec: &RepSpec,
    kind: BasisKind,
    moves: impl Fn(i64, i64, i64, i64) -> Result<Moves>,
) -> Result<DegenerateRep> {
    let (r, s) = (spec.r, spec.s);
    let space = build_space(r, s, spec.epsilon, spec.cutoff)?;
    let dim = space.dim();
    let mut left: HashMap<i64, CompactRep> = HashMap::new();
    let mut right: HashMap<i64, CompactRep> = HashMap::new();
    for range in space.blocks() {
        let b = range.block;
        if let Entry::Vacant(e) = left.entry(b.m) {
            e.insert(build_class1(r, b.m, &spec.p)?);
        }
        if let Entry::Vacant(e) = right.entry(b.m_prime) {
            e.insert(build_class1(s, b.m_prime, &spec.p)?);
        }
    }

    let mut mats: Vec<SparseMatrix> = (0..r + s - 1).map(|_| SparseMatrix::zeros(dim)).collect();
    let mut branches: BTreeMap<(Block, Block), bool> = BTreeMap::new();
    for range in space.blocks() {
        let b = range.block;
        let (lrep, rrep) = (&left[&b.m], &right[&b.m_prime]);
        let rd = range.right_dim;
        let at = |a: usize, c: usize| range.offset + a * rd + c;

        for i in 2..=r {
            for (row, col, v) in lrep.generator(i).matrix.triplets() {
                for c in 0..rd {
                    mats[i - 2].add(at(row, c), at(col, c), v);
                }
            }
        }
        for i in r + 2..=r + s {
            let k = r + s + 2 - i;
            for (row, col, v) in rrep.generator(k).matrix.triplets() {
                for a in 0..range.left_dim {
                    mats[i - 2].add(at(a, row), at(a, col), v);
                }
            }
        }

        let nc = &mut mats[r - 1];
        for (a, lchain) in lrep.basis.iter().enumerate() {
            let k = lchain.entries[1].int_value();
            for (c, rchain) in rrep.basis.iter().enumerate() {
                let kp = rchain.entries[1].int_value();
                let (coeffs, flips) = moves(b.m, k, b.m_prime, kp)?;
                for ((dm, dmp, v), flipped) in coeffs.into_iter().zip(flips) {
                    if v == ZERO {
                        continue;
                    }
                    let target = Block::new(b.m + dm, b.m_prime + dmp);
                    let Some(trange) = space.block_range(target) else {
                        continue;
                    };
                    let ti = left
                        .get(&target.m)
                        .and_then(|t| t.index_of(&lchain.with_label(r, lchain.top().offset(dm))));
                    let tj = right
                        .get(&target.m_prime)
                        .and_then(|t| t.index_of(&rchain.with_label(s, rchain.top().offset(dmp))));
                    match (ti, tj) {
                        (Some(ti), Some(tj)) => {
                            if !v.re.is_finite() || !v.im.is_finite() {
                                return Err(Error::InvalidParameter(format!(
                                    "non-finite coefficient from block {b} to {target}"
                                )));
                            }
                            nc.add(trange.offset + ti * trange.right_dim + tj, at(a, c), v);
                            if kind == BasisKind::Primed {
                                *branches.entry((b, target)).or_insert(false) |= flipped;
                            }
                        }
                        _ => {
                            if v.norm() > 1e-12 {
                                return Err(Error::InvalidParameter(format!(
                                    "I_{{{},{}}} leaves the admissible patterns from {lchain};{rchain} with weight {v}",
                                    r + 1,
                                    r
                                )));
                            }
                        }
                    }
                }
            }
        }
    }

    let generators = mats
        .into_iter()
        .enumerate()
        .map(|(i, matrix)| GeneratorMatrix {
            index: i + 2,
            matrix,
        })
        .collect();
    Ok(DegenerateRep {
        spec: *spec,
        space,
        generators,
        basis_kind: kind,
        branches: branches
            .into_iter()
            .map(|((from, to), flipped)| BranchRecord { from, to, flipped })
            .collect(),
    })
}

/// One coefficient of the primed-basis change `|m,…⟩ = c(m,m')·|m,…⟩'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimedEntry {
    pub block: Block,
    /// `(m + m' − ε)/2`.
    pub m0: i64,
    /// `(m − m' − ε)/2`; negative values use the second product formula.
    pub shift: i64,
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
}

fn serialize_complex<S: serde::Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Block-scalar diagonal relating the standard and primed bases.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimedTransform {
    pub entries: BTreeMap<Block, PrimedEntry>,
}

impl PrimedTransform {
    pub fn coefficient(&self, block: Block) -> Option<Complex64> {
        self.entries.get(&block).map(|e| e.value)
    }
}

/// Factor `[±λ + c]_q`; vanishing factors make the primed basis undefined.
fn transform_factor(spec: &RepSpec, lam: Complex64, negate: bool, c: i64) -> Result<Complex64> {
    let v = if negate {
        spec.neg_lambda_qnum(lam, c)?
    } else {
        spec.lambda_qnum(lam, c)?
    };
    let vanishes = if spec.lambda.is_exact() {
        v == ZERO
    } else {
        v.norm() < 1e-13
    };
    if vanishes {
        let sign = if negate { "-λ" } else { "λ" };
        let factor = if c >= 0 {
            format!("[{sign}+{c}]")
        } else {
            format!("[{sign}{c}]")
        };
        return Err(Error::PrimedBasisUndefined { factor });
    }
    Ok(v)
}

pub fn primed_transform(spec: &RepSpec) -> Result<PrimedTransform> {
    spec.validate()?;
    let lam = spec.lambda.value(&spec.p)?;
    let (r, s, eps) = (spec.r as i64, spec.s as i64, spec.epsilon as i64);
    let ratio = |num: Complex64, den: Complex64| num.sqrt() / den.sqrt();

    // prefix products along m0, then along the shift in either direction
    let max_m0 = (spec.cutoff - eps).max(0) / 2;
    let mut base = vec![Complex64::new(1.0, 0.0)];
    for t in 1..=max_m0 {
        let f = ratio(
            transform_factor(spec, lam, true, eps + r + s + 2 * t - 4)?,
            transform_factor(spec, lam, false, eps + 2 * t - 2)?,
        );
        base.push(base[(t - 1) as usize] * f);
    }
    let mut upper = vec![Complex64::new(1.0, 0.0)];
    let mut lower = vec![Complex64::new(1.0, 0.0)];
    let mut entries = BTreeMap::new();
    for block in crate::gtbasis::admissible_blocks(spec.epsilon, spec.cutoff) {
        let m0 = (block.sum() - eps) / 2;
        let shift = (block.diff() - eps).div_euclid(2);
        let need = shift.unsigned_abs() as usize;
        if shift >= 0 {
            while upper.len() <= need {
                let t = upper.len() as i64;
                let f = ratio(
                    transform_factor(spec, lam, true, eps + r + 2 * t - 2)?,
                    transform_factor(spec, lam, false, eps - s + 2 * t)?,
                );
                upper.push(upper[(t - 1) as usize] * f);
            }
        } else {
            while lower.len() <= need {
                let t = lower.len() as i64;
                let f = ratio(
                    transform_factor(spec, lam, false, eps - s - 2 * t + 2)?,
                    transform_factor(spec, lam, true, eps + r - 2 * t)?,
                );
                lower.push(lower[(t - 1) as usize] * f);
            }
        }
        let tail = if shift >= 0 { upper[need] } else { lower[need] };
        entries.insert(
            block,
            PrimedEntry {
                block,
                m0,
                shift,
                value: base[m0 as usize] * tail,
            },
        );
    }
    // both formulas reduce to the m0 product on the diagonal m - m' = ε
    debug_assert!(upper[0] == lower[0]);
    Ok(PrimedTransform { entries })
}

/// `A'[N,M] = A[N,M]·c(N)/c(M)` for every generator, with `c` constant on
/// blocks.
pub fn conjugate_by_blocks(
    rep: &DegenerateRep,
    coeff: impl Fn(Block) -> Complex64,
    kind: BasisKind,
) -> DegenerateRep {
    let ids = rep.block_ids();
    let blocks = rep.space.blocks();
    let c: Vec<Complex64> = blocks.iter().map(|b| coeff(b.block)).collect();
    let generators = rep
        .generators
        .iter()
        .map(|g| GeneratorMatrix {
            index: g.index,
            matrix: g
                .matrix
                .map_entries(|row, col, v| v * c[ids[row]] / c[ids[col]]),
        })
        .collect();
    DegenerateRep {
        spec: rep.spec,
        space: rep.space.clone(),
        generators,
        basis_kind: kind,
        branches: Vec::new(),
    }
}

/// Standard-basis representation carried to the primed basis through
/// [`primed_transform`].
pub fn transform_to_primed(rep: &DegenerateRep) -> Result<DegenerateRep> {
    let t = primed_transform(&rep.spec)?;
    let mut out = conjugate_by_blocks(
        rep,
        |b| t.coefficient(b).expect("transform covers every block"),
        BasisKind::Primed,
    );
    out.basis_kind = BasisKind::Primed;
    Ok(out)
}
