//! State file format: a JSON document with `dims` (local dimensions) and
//! `matrix` (row-major `[re, im]` pairs). Numbers are rendered with 17
//! significant digits so that serialize -> parse -> serialize is
//! byte-identical and doubles survive the round trip losslessly.

use anyhow::{bail, Context, Result};
use qcorr::{Complex64, ComplexMatrix, DensityMatrix};
use serde::Deserialize;

#[derive(Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    matrix: Vec<[f64; 2]>,
}

/// 17-significant-digit scientific rendering.
pub fn fmt17(x: f64) -> String {
    format!("{:.16e}", x)
}

pub fn render_state(rho: &DensityMatrix) -> String {
    let dims: Vec<String> = rho.dims().iter().map(|d| d.to_string()).collect();
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"dims\": [{}],\n", dims.join(", ")));
    out.push_str("  \"matrix\": [\n");
    let data = rho.mat().data();
    for (idx, z) in data.iter().enumerate() {
        let sep = if idx + 1 == data.len() { "" } else { "," };
        out.push_str(&format!("    [{}, {}]{}\n", fmt17(z.re), fmt17(z.im), sep));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn parse_state(text: &str, max_dim: usize) -> Result<DensityMatrix> {
    let raw: StateFile =
        serde_json::from_str(text).context("state file is not valid JSON with 'dims'/'matrix'")?;
    let total: usize = raw.dims.iter().product();
    if raw.matrix.len() != total * total {
        bail!(
            "field 'matrix' has {} entries but dims {:?} require {}",
            raw.matrix.len(),
            raw.dims,
            total * total
        );
    }
    let data: Vec<Complex64> = raw
        .matrix
        .iter()
        .map(|[re, im]| Complex64::new(*re, *im))
        .collect();
    let mat = ComplexMatrix::new(total, total, data).context("field 'matrix'")?;
    DensityMatrix::with_dim_cap(raw.dims, mat, max_dim)
        .context("state violates density-matrix invariants")
}
