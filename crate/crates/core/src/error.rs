use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state on {n_qubits} qubits needs length {expected}, got {actual}")]
    Dimension {
        n_qubits: usize,
        expected: usize,
        actual: usize,
    },
    #[error("state vector not normalized: norm^2 = {0}")]
    NotNormalized(f64),
    #[error("matrix not Hermitian: max deviation {0:e}")]
    NotHermitian(f64),
    #[error("matrix has eigenvalue {0:e} below -1e-10")]
    NotPositive(f64),
    #[error("trace {0} differs from 1")]
    BadTrace(f64),
    #[error("invalid qubit subset: {0}")]
    Subset(String),
    #[error("operands have different kinds (pure vs mixed)")]
    KindMismatch,
    #[error("parameter {name} = {value} outside {range}")]
    Parameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("measure {measure} produced {value:e}, outside its range")]
    MeasureRange { measure: &'static str, value: f64 },
    #[error("{0}")]
    Unsupported(String),
    #[error("rank mismatch: state has rank {rank}, isometry has {cols} columns")]
    RankMismatch { rank: usize, cols: usize },
    #[error("invalid POVM: {0}")]
    Povm(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("malformed state file: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
