//! JSON matrix dumps: a header, the basis, and per-generator triplets.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::compactrep::{CompactRep, GeneratorMatrix};
use crate::degenrep::DegenerateRep;
use crate::error::{Error, Result};
use crate::gtbasis::Block;
use crate::matrix::SparseMatrix;
use crate::qarith::{QParam, SpectralParam};
use crate::verify::Representation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DumpKind {
    So3,
    Class1,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpHeader {
    pub kind: DumpKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Top label of a compact dump, `2·top` to keep half-integers exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_twice: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<SpectralParam>,
    pub q: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<i64>,
    pub basis_kind: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDump {
    pub index: usize,
    /// `[row, col, re, im]`, column-major.
    pub entries: Vec<(usize, usize, f64, f64)>,
}

/// Basis labels are integers except for half-integer so'_q(3) chains,
/// which are written as floats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub header: DumpHeader,
    pub basis: Vec<Vec<serde_json::Number>>,
    pub generators: Vec<GeneratorDump>,
}

fn number(v: f64) -> serde_json::Number {
    if v.fract() == 0.0 {
        serde_json::Number::from(v as i64)
    } else {
        serde_json::Number::from_f64(v).expect("finite label")
    }
}

fn generator_dumps(gens: &[GeneratorMatrix]) -> Vec<GeneratorDump> {
    gens.iter()
        .map(|g| GeneratorDump {
            index: g.index,
            entries: g
                .matrix
                .triplets()
                .map(|(r, c, v)| (r, c, v.re, v.im))
                .collect(),
        })
        .collect()
}

pub fn dump_compact(rep: &CompactRep, config: Option<serde_json::Value>) -> MatrixDump {
    MatrixDump {
        header: DumpHeader {
            kind: if rep.n == 3 {
                DumpKind::So3
            } else {
                DumpKind::Class1
            },
            n: Some(rep.n),
            top_twice: Some(rep.top.twice()),
            r: None,
            s: None,
            epsilon: None,
            lambda: None,
            q: rep.p.q(),
            cutoff: None,
            basis_kind: "standard".into(),
            dim: rep.dim(),
            config,
        },
        basis: rep
            .basis
            .iter()
            .map(|c| c.entries.iter().map(|e| number(e.value())).collect())
            .collect(),
        generators: generator_dumps(&rep.generators),
    }
}

pub fn dump_degenerate(rep: &DegenerateRep, config: Option<serde_json::Value>) -> MatrixDump {
    let kind = serde_json::to_value(rep.basis_kind)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    MatrixDump {
        header: DumpHeader {
            kind: DumpKind::Degenerate,
            n: None,
            top_twice: None,
            r: Some(rep.spec.r),
            s: Some(rep.spec.s),
            epsilon: Some(rep.spec.epsilon),
            lambda: Some(rep.spec.lambda),
            q: rep.spec.p.q(),
            cutoff: Some(rep.spec.cutoff),
            basis_kind: kind,
            dim: rep.space.dim(),
            config,
        },
        basis: rep
            .space
            .basis_dump()
            .into_iter()
            .map(|row| row.into_iter().map(serde_json::Number::from).collect())
            .collect(),
        generators: generator_dumps(&rep.generators),
    }
}

pub fn to_json(dump: &MatrixDump) -> String {
    let mut s = serde_json::to_string_pretty(dump).expect("dump serializes");
    s.push('\n');
    s
}

/// A representation read back from a dump.
#[derive(Debug, Clone)]
pub struct LoadedRep {
    pub header: DumpHeader,
    pub p: QParam,
    basis: Vec<Vec<f64>>,
    generators: Vec<GeneratorMatrix>,
    blocks: Vec<Block>,
    block_ids: Vec<usize>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Dump(msg.into())
}

pub fn parse_dump(text: &str) -> Result<LoadedRep> {
    let dump: MatrixDump = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let h = &dump.header;
    let dim = h.dim;
    let p = QParam::new(h.q)?;
    if dump.basis.len() != dim {
        return Err(bad(format!(
            "basis has {} rows, header says {dim}",
            dump.basis.len()
        )));
    }
    let basis: Vec<Vec<f64>> = dump
        .basis
        .iter()
        .map(|row| row.iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    let mut generators = Vec::with_capacity(dump.generators.len());
    for (pos, g) in dump.generators.iter().enumerate() {
        if g.index != pos + 2 {
            return Err(bad(format!(
                "generator {pos} has index {}, expected {}",
                g.index,
                pos + 2
            )));
        }
        let mut m = SparseMatrix::zeros(dim);
        for &(row, col, re, im) in &g.entries {
            if row >= dim || col >= dim {
                return Err(bad(format!("entry ({row},{col}) outside dimension {dim}")));
            }
            if !re.is_finite() || !im.is_finite() {
                return Err(bad(format!("non-finite entry at ({row},{col})")));
            }
            m.add(row, col, Complex64::new(re, im));
        }
        generators.push(GeneratorMatrix {
            index: g.index,
            matrix: m,
        });
    }
    let (blocks, block_ids) = match h.kind {
        DumpKind::Degenerate => {
            let r = h.r.ok_or_else(|| bad("degenerate dump without r"))?;
            let s = h.s.ok_or_else(|| bad("degenerate dump without s"))?;
            if generators.len() != r + s - 1 {
                return Err(bad(format!(
                    "expected {} generators, found {}",
                    r + s - 1,
                    generators.len()
                )));
            }
            let mut index: BTreeMap<Block, usize> = BTreeMap::new();
            let mut ids = Vec::with_capacity(dim);
            for row in &basis {
                if row.len() != r + s - 2 {
                    return Err(bad(format!(
                        "basis row of length {}, expected {}",
                        row.len(),
                        r + s - 2
                    )));
                }
                let b = Block::new(row[0] as i64, row[r - 1] as i64);
                let next = index.len();
                ids.push(*index.entry(b).or_insert(next));
            }
            let mut blocks = vec![Block::new(0, 0); index.len()];
            for (b, i) in index {
                blocks[i] = b;
            }
            (blocks, ids)
        }
        DumpKind::So3 | DumpKind::Class1 => {
            let n = h.n.ok_or_else(|| bad("compact dump without n"))?;
            if generators.len() != n - 1 {
                return Err(bad(format!(
                    "expected {} generators, found {}",
                    n - 1,
                    generators.len()
                )));
            }
            (vec![Block::new(0, 0)], vec![0; dim])
        }
    };
    Ok(LoadedRep {
        header: dump.header,
        p,
        basis,
        generators,
        blocks,
        block_ids,
    })
}

impl LoadedRep {
    fn sum_label(&self, i: usize) -> i64 {
        let r = self.header.r.unwrap_or(1);
        (self.basis[i][0] + self.basis[i].get(r - 1).copied().unwrap_or(0.0)) as i64
    }
}

impl Representation for LoadedRep {
    fn dim(&self) -> usize {
        self.header.dim
    }
    fn generators(&self) -> &[GeneratorMatrix] {
        &self.generators
    }
    fn a(&self) -> f64 {
        self.p.a()
    }
    fn interior(&self, depth: i64) -> Vec<bool> {
        match (self.header.kind, self.header.cutoff) {
            (DumpKind::Degenerate, Some(n)) => (0..self.dim())
                .map(|i| self.sum_label(i) <= n - depth)
                .collect(),
            _ => vec![true; self.dim()],
        }
    }
    fn label(&self, i: usize) -> String {
        let parts: Vec<String> = self.basis[i].iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
    fn noncompact_index(&self) -> Option<usize> {
        match self.header.kind {
            DumpKind::Degenerate => self.header.r.map(|r| r + 1),
            _ => None,
        }
    }
    fn block_structure(&self) -> (Vec<usize>, Vec<Block>) {
        (self.block_ids.clone(), self.blocks.clone())
    }
}
