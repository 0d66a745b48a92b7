//! CSV state files and the JSON roof configuration.
//!
//! Pure states are written as `index,re,im`; density matrices as
//! `row,col,re,im` in row-major order. Numbers carry 17 significant digits so
//! a load of a saved file reproduces every double exactly.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::roof::RoofConfig;
use crate::state::{CMatrix, DensityMatrix, QuantumState, StateVector, C64};

/// Formats a double with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_state<W: Write>(state: &QuantumState, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    match state {
        QuantumState::Pure(psi) => {
            w.write_record(["index", "re", "im"])?;
            for (i, a) in psi.amplitudes().iter().enumerate() {
                w.write_record([i.to_string(), fmt_f64(a.re), fmt_f64(a.im)])?;
            }
        }
        QuantumState::Mixed(rho) => {
            w.write_record(["row", "col", "re", "im"])?;
            let m = rho.matrix();
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    let x = m[(r, c)];
                    w.write_record([r.to_string(), c.to_string(), fmt_f64(x.re), fmt_f64(x.im)])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_state<R: Read>(input: R) -> Result<QuantumState> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers: Vec<String> = rdr.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let rows: Vec<csv::StringRecord> = rdr.records().collect::<std::result::Result<_, _>>()?;
    let num = |rec: &csv::StringRecord, k: usize| -> Result<f64> {
        rec.get(k)
            .ok_or_else(|| Error::Parse(format!("missing column {k}")))?
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(e.to_string()))
    };
    let idx = |rec: &csv::StringRecord, k: usize| -> Result<usize> {
        rec.get(k)
            .ok_or_else(|| Error::Parse(format!("missing column {k}")))?
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(e.to_string()))
    };
    match headers.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["index", "re", "im"] => {
            let n = qubits_for(rows.len())?;
            let mut amps = vec![C64::new(0.0, 0.0); rows.len()];
            let mut seen = vec![false; rows.len()];
            for rec in &rows {
                let i = idx(rec, 0)?;
                if i >= amps.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(Error::Parse(format!("bad or repeated index {i}")));
                }
                amps[i] = C64::new(num(rec, 1)?, num(rec, 2)?);
            }
            Ok(QuantumState::Pure(StateVector::new(n, amps)?))
        }
        ["row", "col", "re", "im"] => {
            let dim = (rows.len() as f64).sqrt().round() as usize;
            if dim * dim != rows.len() {
                return Err(Error::Parse(format!("{} entries is not a square matrix", rows.len())));
            }
            let n = qubits_for(dim)?;
            let mut m = CMatrix::zeros(dim, dim);
            let mut seen = vec![false; rows.len()];
            for rec in &rows {
                let (r, c) = (idx(rec, 0)?, idx(rec, 1)?);
                if r >= dim || c >= dim || std::mem::replace(&mut seen[r * dim + c], true) {
                    return Err(Error::Parse(format!("bad or repeated entry ({r}, {c})")));
                }
                m[(r, c)] = C64::new(num(rec, 2)?, num(rec, 3)?);
            }
            Ok(QuantumState::Mixed(DensityMatrix::new(n, m)?))
        }
        other => Err(Error::Parse(format!("unrecognized header {other:?}"))),
    }
}

fn qubits_for(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::Parse(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

pub fn save_state(path: &Path, state: &QuantumState) -> Result<()> {
    write_state(state, File::create(path)?)
}

pub fn load_state(path: &Path) -> Result<QuantumState> {
    read_state(File::open(path)?)
}

/// Reads a roof configuration; absent keys keep their defaults.
pub fn load_config(path: &Path) -> Result<RoofConfig> {
    let cfg: RoofConfig = serde_json::from_reader(File::open(path)?)?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{psi6, rho_ghz_w};
    use proptest::prelude::*;

    fn round_trip(state: &QuantumState) -> QuantumState {
        let mut buf = Vec::new();
        write_state(state, &mut buf).unwrap();
        read_state(buf.as_slice()).unwrap()
    }

    #[test]
    fn density_file_layout() {
        let state = QuantumState::Mixed(rho_ghz_w(0.5).unwrap());
        let mut buf = Vec::new();
        write_state(&state, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("row,col,re,im\n"));
        assert_eq!(text.lines().count(), 65);
        assert_eq!(round_trip(&state), state);
    }

    #[test]
    fn vector_file_layout() {
        let state = QuantumState::Pure(psi6(1.0).unwrap());
        let mut buf = Vec::new();
        write_state(&state, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("index,re,im\n"));
        assert_eq!(text.lines().count(), 65);
    }

    #[test]
    fn malformed_files() {
        assert!(read_state("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_state("index,re,im\n0,1,0\n1,0,0\n2,0,0\n".as_bytes()).is_err());
        assert!(read_state("index,re,im\n0,1,0\n0,0,0\n".as_bytes()).is_err());
        assert!(read_state("index,re,im\n0,1,0\n1,1,0\n".as_bytes()).is_err());
        assert!(read_state("row,col,re,im\n0,0,1,0\n0,1,0,0\n1,0,0,0\n1,1,1,0\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn pure_round_trip_is_bit_exact(raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8)) {
            let amps: Vec<C64> = raw.iter().map(|&(r, i)| C64::new(r, i)).collect();
            prop_assume!(amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6);
            let psi = StateVector::from_unnormalized(3, amps).unwrap();
            let state = QuantumState::Pure(psi);
            prop_assert_eq!(round_trip(&state), state);
        }

        #[test]
        fn mixed_round_trip_is_bit_exact(p in 0.0f64..=1.0) {
            let state = QuantumState::Mixed(crate::catalog::smolin(p).unwrap());
            prop_assert_eq!(round_trip(&state), state);
        }
    }
}
