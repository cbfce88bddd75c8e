//! Classical (q = 1) Gel'fand–Tsetlin formulas written out from scratch,
//! plus helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use soq::compactrep::CompactRep;
use soq::degenrep::DegenerateRep;
use soq::matrix::SparseMatrix;

/// Chain labels, top first: `m_n ≥ m_{n-1} ≥ … ≥ m_3 ≥ |m_2|`.
pub type Chain = Vec<i64>;

pub fn chains(n: usize, top: i64) -> Vec<Chain> {
    if n == 3 {
        return (-top..=top).map(|m| vec![top, m]).collect();
    }
    let mut out = Vec::new();
    for next in 0..=top {
        for tail in chains(n - 1, next) {
            let mut c = vec![top];
            c.extend(tail);
            out.push(c);
        }
    }
    out
}

fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Classical dimension of the class-1 representation `m` of so(n):
/// `(2m+n−2)(m+n−3)! / (m!(n−2)!)`.
pub fn class1_dim(n: usize, m: usize) -> usize {
    if n == 3 {
        return 2 * m + 1;
    }
    let (n, m) = (n as u128, m as u128);
    ((2 * m + n - 2) * binom(m + n - 3, n - 3) / (n - 2)) as usize
}

fn at(chain: &Chain, k: usize) -> i64 {
    chain[chain.len() + 1 - k]
}

fn set(chain: &Chain, k: usize, v: i64) -> Chain {
    let mut c = chain.clone();
    let len = c.len();
    c[len + 1 - k] = v;
    c
}

fn root(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Image of a basis vector under the classical `I_{k,k-1}` of so(n).
pub fn classical_generator(chain: &Chain, k: usize) -> Vec<(Chain, Complex64)> {
    let m2 = at(chain, 2);
    match k {
        2 => vec![(chain.clone(), Complex64::new(0.0, m2 as f64))],
        3 => {
            let (l, m) = (at(chain, 3) as f64, m2 as f64);
            vec![
                (
                    set(chain, 2, m2 + 1),
                    Complex64::new(0.5 * root((l - m) * (l + m + 1.0)), 0.0),
                ),
                (
                    set(chain, 2, m2 - 1),
                    Complex64::new(-0.5 * root((l + m) * (l - m + 1.0)), 0.0),
                ),
            ]
        }
        _ => {
            let (mk, m1, m0) = (
                at(chain, k) as f64,
                at(chain, k - 1),
                at(chain, k - 2) as f64,
            );
            let kf = k as f64;
            let r = |a: f64| {
                let den = (2.0 * a + kf - 3.0) * (2.0 * a + kf - 1.0);
                if den == 0.0 {
                    0.0
                } else {
                    root((a + m0 + kf - 3.0) * (a - m0 + 1.0) / den)
                }
            };
            let x = m1 as f64;
            let up = root((mk + x + kf - 2.0) * (mk - x)) * r(x);
            let down = root((mk + x + kf - 3.0) * (mk - x + 1.0)) * r(x - 1.0);
            vec![
                (set(chain, k - 1, m1 + 1), Complex64::new(up, 0.0)),
                (set(chain, k - 1, m1 - 1), Complex64::new(-down, 0.0)),
            ]
        }
    }
}

fn wall(m: i64, k: i64, rank: i64) -> f64 {
    let den = ((2 * m + rank) * (2 * m + rank - 2)) as f64;
    if den == 0.0 {
        return 0.0;
    }
    root(((m - k + 1) * (m + k + rank - 2)) as f64 / den)
}

/// Classical `I_{r+1,r}` on `(left, right)` at real λ.
pub fn classical_noncompact(
    left: &Chain,
    right: &Chain,
    r: usize,
    s: usize,
    lambda: f64,
) -> Vec<(Chain, Chain, f64)> {
    let (m, k, mp, kp) = (left[0], left[1], right[0], right[1]);
    let (ri, si) = (r as i64, s as i64);
    let (sum, diff) = ((m + mp) as f64, (m - mp) as f64);
    let kl = |a: i64, b: i64| wall(a, k, ri) * wall(b, kp, si);
    let shift = |c: &Chain, d: i64| {
        let mut c = c.clone();
        c[0] += d;
        c
    };
    let (rf, sf) = (r as f64, s as f64);
    vec![
        (shift(left, 1), shift(right, 1), kl(m, mp) * (lambda + sum)),
        (
            shift(left, 1),
            shift(right, -1),
            -kl(m, mp - 1) * (lambda + diff - sf + 2.0),
        ),
        (
            shift(left, -1),
            shift(right, 1),
            kl(m - 1, mp) * (lambda - diff - rf + 2.0),
        ),
        (
            shift(left, -1),
            shift(right, -1),
            -kl(m - 1, mp - 1) * (lambda - sum - rf - sf + 4.0),
        ),
    ]
}

/// Largest entrywise gap between `lib` and an oracle given column by column.
/// Oracle targets outside the basis must carry zero weight unless
/// `truncated` says they lie beyond the cutoff.
pub fn column_gap(
    lib: &SparseMatrix,
    labels: &[Vec<i64>],
    oracle: impl Fn(&Vec<i64>) -> Vec<(Vec<i64>, Complex64)>,
    truncated: impl Fn(&Vec<i64>) -> bool,
) -> f64 {
    let index = index_of(labels);
    let mut worst: f64 = 0.0;
    for (col, label) in labels.iter().enumerate() {
        let mut expected: HashMap<usize, Complex64> = HashMap::new();
        for (target, v) in oracle(label) {
            match index.get(&target) {
                Some(&row) => *expected.entry(row).or_default() += v,
                None if truncated(&target) => {}
                None => worst = worst.max(v.norm()),
            }
        }
        for &(row, v) in lib.column(col) {
            worst = worst.max((v - expected.remove(&row).unwrap_or_default()).norm());
        }
        for v in expected.values() {
            worst = worst.max(v.norm());
        }
    }
    worst
}

pub fn compact_labels(rep: &CompactRep) -> Vec<Vec<i64>> {
    rep.basis
        .iter()
        .map(|c| c.entries.iter().map(|e| e.twice() / 2).collect())
        .collect()
}

pub fn degenerate_labels(rep: &DegenerateRep) -> Vec<Vec<i64>> {
    rep.space.basis_dump()
}

pub fn index_of(labels: &[Vec<i64>]) -> HashMap<Vec<i64>, usize> {
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect()
}

/// Worst gap over all generators of a class-1 representation.
pub fn compact_gap(rep: &CompactRep) -> f64 {
    let labels = compact_labels(rep);
    (2..=rep.n)
        .map(|k| {
            column_gap(
                &rep.generator(k).matrix,
                &labels,
                |c| classical_generator(c, k),
                |_| false,
            )
        })
        .fold(0.0, f64::max)
}

/// Worst gap over all generators of `T_{ελ}` at real λ.
pub fn degenerate_gap(rep: &DegenerateRep, lambda: f64) -> f64 {
    let (r, s, cutoff) = (rep.spec.r, rep.spec.s, rep.spec.cutoff);
    let labels = degenerate_labels(rep);
    let beyond = |t: &Vec<i64>| t[0] + t[r - 1] > cutoff;
    let join = |a: &Chain, b: &Chain| [a.as_slice(), b.as_slice()].concat();
    let mut worst: f64 = 0.0;
    for i in 2..=r + s {
        let oracle = |l: &Vec<i64>| -> Vec<(Vec<i64>, Complex64)> {
            let (left, right) = (l[..r - 1].to_vec(), l[r - 1..].to_vec());
            if i <= r {
                classical_generator(&left, i)
                    .into_iter()
                    .map(|(t, v)| (join(&t, &right), v))
                    .collect()
            } else if i == r + 1 {
                classical_noncompact(&left, &right, r, s, lambda)
                    .into_iter()
                    .map(|(a, b, v)| (join(&a, &b), Complex64::new(v, 0.0)))
                    .collect()
            } else {
                classical_generator(&right, r + s + 2 - i)
                    .into_iter()
                    .map(|(t, v)| (join(&left, &t), v))
                    .collect()
            }
        };
        worst = worst.max(column_gap(
            &rep.generator(i).matrix,
            &labels,
            oracle,
            beyond,
        ));
    }
    worst
}
