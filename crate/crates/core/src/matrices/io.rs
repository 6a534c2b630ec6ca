// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON and CSV serialization of matrix sets.
//!
//! JSON matrices are row-major nested arrays. CSV files hold one matrix:
//! a `# {...}` line with the JSON header, a column-name row, then one
//! record per matrix row. Floats are written in shortest round-trip form.

use std::io::{BufRead, Write};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{
    build_a_delta, build_a_gen, build_b_delta, build_b_gen, correct_a_delta, hippo_legs_reference, InputModel,
    InputVector,
};
use crate::basis::BasisSpec;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;
use crate::warp::WarpSpec;

pub const SCHEMA_VERSION: u32 = 1;

/// Provenance attached to every dumped matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixHeader {
    pub schema_version: u32,
    pub n_basis: usize,
    pub delta: f64,
    pub warp: WarpSpec,
    pub input_model: InputModel,
    pub quadrature: QuadratureConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FohVectors {
    pub v_next: Vec<f64>,
    pub v_prev: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputVectors {
    pub dirac: Vec<f64>,
    pub zoh: Vec<f64>,
    pub foh: FohVectors,
}

/// Everything `lagssm matrices` writes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub header: MatrixHeader,
    pub a_gen: Vec<Vec<f64>>,
    pub b_gen: Vec<f64>,
    pub a_delta: Vec<Vec<f64>>,
    pub a_corrected: Vec<Vec<f64>>,
    pub b_delta: InputVectors,
    pub a_hippo: Vec<Vec<f64>>,
    pub b_hippo: Vec<f64>,
}

pub fn to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Format("ragged matrix rows".into()));
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

fn vec_of(v: &DVector<f64>) -> Vec<f64> {
    v.iter().copied().collect()
}

impl MatrixDump {
    pub fn build(
        basis: &BasisSpec,
        warp: &WarpSpec,
        delta: f64,
        model: InputModel,
        quad: &QuadratureConfig,
    ) -> Result<Self> {
        let a_gen = build_a_gen(basis, warp, quad)?;
        let b_gen = build_b_gen(basis, warp);
        let a_delta = build_a_delta(basis, warp, delta, quad)?;
        let a_corrected = correct_a_delta(&a_delta, delta)?;
        let single = |m: InputModel| -> Result<Vec<f64>> {
            match build_b_delta(basis, warp, delta, m, quad)? {
                InputVector::Single(v) => Ok(vec_of(&v)),
                InputVector::FirstOrderHold { .. } => unreachable!("single-vector model"),
            }
        };
        let foh = match build_b_delta(basis, warp, delta, InputModel::Foh, quad)? {
            InputVector::FirstOrderHold { next, prev } => FohVectors {
                v_next: vec_of(&next),
                v_prev: vec_of(&prev),
            },
            InputVector::Single(_) => unreachable!("first-order hold yields a pair"),
        };
        let hippo = hippo_legs_reference(basis.n_basis())?;
        Ok(Self {
            header: MatrixHeader {
                schema_version: SCHEMA_VERSION,
                n_basis: basis.n_basis(),
                delta,
                warp: *warp,
                input_model: model,
                quadrature: *quad,
            },
            a_gen: to_rows(&a_gen),
            b_gen: vec_of(&b_gen),
            a_delta: to_rows(&a_delta),
            a_corrected: to_rows(&a_corrected),
            b_delta: InputVectors {
                dirac: single(InputModel::Dirac)?,
                zoh: single(InputModel::Zoh)?,
                foh,
            },
            a_hippo: to_rows(&hippo.a_hippo),
            b_hippo: vec_of(&hippo.b_hippo),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dump: MatrixDump = serde_json::from_str(text)?;
        if dump.header.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema version {}",
                dump.header.schema_version
            )));
        }
        Ok(dump)
    }

    /// The input vector matching the header's input model.
    pub fn selected_input(&self) -> InputVector {
        match self.header.input_model {
            InputModel::Dirac => InputVector::Single(DVector::from_vec(self.b_delta.dirac.clone())),
            InputModel::Zoh => InputVector::Single(DVector::from_vec(self.b_delta.zoh.clone())),
            InputModel::Foh => InputVector::FirstOrderHold {
                next: DVector::from_vec(self.b_delta.foh.v_next.clone()),
                prev: DVector::from_vec(self.b_delta.foh.v_prev.clone()),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CsvPreamble {
    name: String,
    #[serde(flatten)]
    header: MatrixHeader,
}

/// Writes one named matrix as CSV.
pub fn write_matrix_csv<W: Write>(mut out: W, name: &str, header: &MatrixHeader, m: &DMatrix<f64>) -> Result<()> {
    let preamble = CsvPreamble {
        name: name.to_string(),
        header: header.clone(),
    };
    writeln!(out, "# {}", serde_json::to_string(&preamble)?)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record((0..m.ncols()).map(|j| format!("c{j}")))?;
    for row in m.row_iter() {
        w.write_record(row.iter().map(|x| format!("{x:?}")))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a matrix written by [`write_matrix_csv`].
pub fn read_matrix_csv<R: BufRead>(mut input: R) -> Result<(String, MatrixHeader, DMatrix<f64>)> {
    let mut first = String::new();
    input.read_line(&mut first)?;
    let json = first
        .trim_end()
        .strip_prefix("# ")
        .ok_or_else(|| Error::Format("missing '# {header}' line".into()))?;
    let preamble: CsvPreamble = serde_json::from_str(json)?;
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Format(format!("bad number {f:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((preamble.name, preamble.header, from_rows(&rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header() -> MatrixHeader {
        MatrixHeader {
            schema_version: SCHEMA_VERSION,
            n_basis: 3,
            delta: 0.01,
            warp: WarpSpec::default(),
            input_model: InputModel::Foh,
            quadrature: QuadratureConfig::default(),
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let m = DMatrix::from_row_slice(2, 3, &[0.1, -1e-300, 1.0 / 3.0, 12345.678, f64::MIN_POSITIVE, -0.0]);
        let mut buf = Vec::new();
        write_matrix_csv(&mut buf, "a_delta", &header(), &m).unwrap();
        let (name, h, back) = read_matrix_csv(buf.as_slice()).unwrap();
        assert_eq!(name, "a_delta");
        assert_eq!(h, header());
        for (x, y) in m.iter().zip(back.iter()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn rejects_missing_preamble() {
        assert!(read_matrix_csv("c0\n1.0\n".as_bytes()).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }
}
