//! Irreducible representations of so'_q(3) and class-1 representations of
//! so'_q(n) in the Gel'fand–Tsetlin basis.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gtbasis::{enumerate_chain, ChainPattern, HalfInt};
use crate::matrix::SparseMatrix;
use crate::qarith::QParam;

/// Matrix of `T(I_{i,i-1})` on some indexed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorMatrix {
    /// `i` in `I_{i,i-1}`.
    pub index: usize,
    pub matrix: SparseMatrix,
}

/// Square root of a radicand that must be nonnegative for admissible labels.
/// Round-off below zero is clamped; anything else is an internal error.
pub(crate) fn checked_sqrt(value: f64, context: impl FnOnce() -> String) -> Result<f64> {
    if value >= 0.0 {
        Ok(value.sqrt())
    } else if value > -1e-13 {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand {
            context: context(),
            value,
        })
    }
}

/// `d(m) = ([m][m+1] / [2m][2m+2])^{1/2}`, evaluated as
/// `((q^{m/2}+q^{-m/2})(q^{(m+1)/2}+q^{-(m+1)/2}))^{-1/2}`, which has no
/// removable singularities.
pub fn d_coeff(m: HalfInt, p: &QParam) -> f64 {
    let h = p.h();
    let x = m.value();
    let prod = 4.0 * (h * x / 2.0).cosh() * (h * (x + 1.0) / 2.0).cosh();
    1.0 / prod.sqrt()
}

/// `R(m_{n-1})` of the class-1 top-generator formula, for `n ≥ 4`.
pub fn r_coeff(m1: i64, m2: i64, n: usize, p: &QParam) -> Result<f64> {
    if n < 4 {
        return Err(Error::So3PathRequired);
    }
    let n = n as i64;
    let a = m1 + m2 + n - 3;
    let b = m1 - m2 + 1;
    if a == 0 || b == 0 {
        return Ok(0.0);
    }
    let num = p.qnum_real(a as f64) * p.qnum_real(b as f64);
    let den = p.qnum_real((2 * m1 + n - 3) as f64) * p.qnum_real((2 * m1 + n - 1) as f64);
    checked_sqrt(num / den, || format!("R({m1}; m2={m2}, n={n})"))
}

/// A finite-dimensional representation of so'_q(n) with its basis and the
/// generators `I_{21}, …, I_{n,n-1}`.
#[derive(Debug, Clone)]
pub struct CompactRep {
    pub n: usize,
    pub top: HalfInt,
    pub p: QParam,
    pub basis: Vec<ChainPattern>,
    index: HashMap<ChainPattern, usize>,
    pub generators: Vec<GeneratorMatrix>,
}

impl CompactRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, c: &ChainPattern) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// `T(I_{i,i-1})`.
    pub fn generator(&self, i: usize) -> &GeneratorMatrix {
        &self.generators[i - 2]
    }
}

/// `T_l(I_{21})` and `T_l(I_{32})` for integer or half-integer `l`.
pub fn build_so3(l: HalfInt, p: &QParam) -> Result<CompactRep> {
    build_chain_rep(3, l, p)
}

/// Class-1 representation `T_{m_top}` of so'_q(n).
pub fn build_class1(n: usize, m_top: i64, p: &QParam) -> Result<CompactRep> {
    if m_top < 0 {
        return Err(Error::NegativeLabel(m_top.to_string()));
    }
    build_chain_rep(n, HalfInt::int(m_top), p)
}

fn build_chain_rep(n: usize, top: HalfInt, p: &QParam) -> Result<CompactRep> {
    let basis = enumerate_chain(n, top)?;
    let index: HashMap<ChainPattern, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let dim = basis.len();
    let mut generators = Vec::with_capacity(n - 1);
    for k in 2..=n {
        let mut matrix = SparseMatrix::zeros(dim);
        for (col, chain) in basis.iter().enumerate() {
            for (target, coeff) in chain_transitions(chain, k, p)? {
                match index.get(&target) {
                    Some(&row) => matrix.add(row, col, Complex64::new(0.0, 0.0) + coeff),
                    None => {
                        if coeff.norm() > 1e-12 {
                            return Err(Error::InvalidParameter(format!(
                                "I_{{{k},{}}} maps {chain} outside the basis with weight {coeff}",
                                k - 1
                            )));
                        }
                    }
                }
            }
        }
        generators.push(GeneratorMatrix { index: k, matrix });
    }
    Ok(CompactRep {
        n,
        top,
        p: *p,
        basis,
        index,
        generators,
    })
}

/// Images of `chain` under `I_{k,k-1}`: target label and coefficient. Targets
/// that violate betweenness come with a vanishing coefficient.
pub(crate) fn chain_transitions(
    chain: &ChainPattern,
    k: usize,
    p: &QParam,
) -> Result<Vec<(ChainPattern, Complex64)>> {
    let m2 = chain.label(2);
    match k {
        2 => Ok(vec![(
            chain.clone(),
            Complex64::new(0.0, p.qnum_real(m2.value())),
        )]),
        3 => {
            let l = chain.label(3);
            let (lv, mv) = (l.value(), m2.value());
            let mut out = Vec::with_capacity(2);
            if m2 < l {
                let rad = p.qnum_real(lv - mv) * p.qnum_real(lv + mv + 1.0);
                let up = d_coeff(m2, p) * checked_sqrt(rad, || format!("so3 raise l={l} m={m2}"))?;
                out.push((chain.with_label(2, m2.offset(1)), Complex64::new(up, 0.0)));
            }
            if m2 > -l {
                let rad = p.qnum_real(lv + mv) * p.qnum_real(lv - mv + 1.0);
                let down = d_coeff(m2.offset(-1), p)
                    * checked_sqrt(rad, || format!("so3 lower l={l} m={m2}"))?;
                out.push((
                    chain.with_label(2, m2.offset(-1)),
                    Complex64::new(-down, 0.0),
                ));
            }
            Ok(out)
        }
        _ => {
            let mk = chain.label(k).int_value();
            let m1 = chain.label(k - 1).int_value();
            let m0 = chain.label(k - 2).int_value();
            let kk = k as i64;
            let mut out = Vec::with_capacity(2);
            if m1 < mk {
                let rad = p.qnum_real((mk + m1 + kk - 2) as f64) * p.qnum_real((mk - m1) as f64);
                let c = checked_sqrt(rad, || format!("class-1 raise k={k} {chain}"))?
                    * r_coeff(m1, m0, k, p)?;
                out.push((
                    chain.with_label(k - 1, HalfInt::int(m1 + 1)),
                    Complex64::new(c, 0.0),
                ));
            }
            let lower_ok = if k == 4 { m1 > m0.abs() } else { m1 > m0 };
            if lower_ok {
                let rad =
                    p.qnum_real((mk + m1 + kk - 3) as f64) * p.qnum_real((mk - m1 + 1) as f64);
                let c = checked_sqrt(rad, || format!("class-1 lower k={k} {chain}"))?
                    * r_coeff(m1 - 1, m0, k, p)?;
                out.push((
                    chain.with_label(k - 1, HalfInt::int(m1 - 1)),
                    Complex64::new(-c, 0.0),
                ));
            }
            Ok(out)
        }
    }
}
