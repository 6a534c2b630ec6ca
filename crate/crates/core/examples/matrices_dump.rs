// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

// Serializes every matrix to JSON and one of them to CSV, then reads both
// back and checks that nothing changed.

use lagssm::matrices::io::{from_rows, read_matrix_csv, write_matrix_csv, MatrixDump};
use lagssm::{BasisSpec, InputModel, QuadratureConfig, WarpSpec};

fn main() -> lagssm::Result<()> {
    let dump = MatrixDump::build(
        &BasisSpec::legendre(2)?,
        &WarpSpec::default(),
        0.01,
        InputModel::Foh,
        &QuadratureConfig::default(),
    )?;
    let json = dump.to_json()?;
    let back = MatrixDump::from_json(&json)?;
    println!("json round trip identical: {}", back == dump);
    println!("a_hippo = {:?}", dump.a_hippo);
    println!("foh v_next = {:?}", dump.b_delta.foh.v_next);
    println!("foh v_prev = {:?}", dump.b_delta.foh.v_prev);

    let a_delta = from_rows(&dump.a_delta)?;
    let mut csv = Vec::new();
    write_matrix_csv(&mut csv, "a_delta", &dump.header, &a_delta)?;
    print!("{}", String::from_utf8_lossy(&csv));
    let (_, _, read) = read_matrix_csv(csv.as_slice())?;
    println!("csv round trip identical: {}", read == a_delta);
    Ok(())
}
