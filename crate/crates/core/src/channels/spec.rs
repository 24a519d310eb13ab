// SPDX-License-Identifier: Apache-2.0

//! JSON channel descriptions.
//!
//! ```json
//! {"form": "qubit_affine", "lambda": [0.5, 0.5, 0.5], "t": [0, 0, 0]}
//! {"form": "kraus", "kraus": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}
//! {"form": "cq", "basis": [...vectors...], "outputs": [...matrices...]}
//! {"form": "qc", "povm": [...matrices...], "basis": [...vectors...]}
//! {"form": "tensor", "left": {...}, "right": {...}}
//! ```
//!
//! Complex entries are `[re, im]` pairs, matrices are lists of rows.

use serde::{Deserialize, Serialize};

use crate::error::{invalid_input, Result};
use crate::matcore::{c, CMatrix, CVector, DensityMatrix};

use super::{make_cq, make_qc, tensor_channels, Channel, ChannelForm, QubitAffineParams};

pub type VectorSpec = Vec<[f64; 2]>;
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ChannelSpec {
    Kraus {
        kraus: Vec<MatrixSpec>,
    },
    Cq {
        basis: Vec<VectorSpec>,
        outputs: Vec<MatrixSpec>,
    },
    Qc {
        povm: Vec<MatrixSpec>,
        basis: Vec<VectorSpec>,
    },
    QubitAffine {
        lambda: [f64; 3],
        t: [f64; 3],
    },
    Tensor {
        left: Box<ChannelSpec>,
        right: Box<ChannelSpec>,
    },
}

pub fn matrix_to_spec(m: &CMatrix) -> MatrixSpec {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn matrix_from_spec(rows: &MatrixSpec) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if n == 0 || m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(invalid_input("matrix rows are empty or ragged"));
    }
    Ok(CMatrix::from_fn(n, m, |i, j| c(rows[i][j][0], rows[i][j][1])))
}

fn vector_to_spec(v: &CVector) -> VectorSpec {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn vector_from_spec(v: &VectorSpec) -> Result<CVector> {
    if v.is_empty() {
        return Err(invalid_input("empty vector"));
    }
    Ok(CVector::from_iterator(v.len(), v.iter().map(|z| c(z[0], z[1]))))
}

impl ChannelSpec {
    pub fn build(&self) -> Result<Channel> {
        match self {
            ChannelSpec::Kraus { kraus } => {
                Channel::kraus(kraus.iter().map(matrix_from_spec).collect::<Result<_>>()?)
            }
            ChannelSpec::Cq { basis, outputs } => {
                let basis = basis.iter().map(vector_from_spec).collect::<Result<_>>()?;
                let outputs = outputs
                    .iter()
                    .map(|m| DensityMatrix::new(matrix_from_spec(m)?))
                    .collect::<Result<_>>()?;
                make_cq(basis, outputs)
            }
            ChannelSpec::Qc { povm, basis } => {
                let povm = povm.iter().map(matrix_from_spec).collect::<Result<_>>()?;
                let basis = basis.iter().map(vector_from_spec).collect::<Result<_>>()?;
                make_qc(povm, basis)
            }
            ChannelSpec::QubitAffine { lambda, t } => {
                if lambda.iter().chain(t).any(|x| !x.is_finite()) {
                    return Err(invalid_input("qubit parameters must be finite"));
                }
                Ok(Channel::qubit_affine(QubitAffineParams::new(*lambda, *t)))
            }
            ChannelSpec::Tensor { left, right } => Ok(tensor_channels(&left.build()?, &right.build()?)),
        }
    }
}

impl Channel {
    pub fn to_spec(&self) -> ChannelSpec {
        match self.form() {
            ChannelForm::Kraus(ops) => ChannelSpec::Kraus {
                kraus: ops.iter().map(matrix_to_spec).collect(),
            },
            ChannelForm::Cq { basis, outputs } => ChannelSpec::Cq {
                basis: basis.iter().map(vector_to_spec).collect(),
                outputs: outputs.iter().map(|q| matrix_to_spec(q)).collect(),
            },
            ChannelForm::Qc { povm, basis } => ChannelSpec::Qc {
                povm: povm.iter().map(matrix_to_spec).collect(),
                basis: basis.iter().map(vector_to_spec).collect(),
            },
            ChannelForm::QubitAffine(p) => ChannelSpec::QubitAffine {
                lambda: p.lambda,
                t: p.t,
            },
            ChannelForm::Tensor(a, b) => ChannelSpec::Tensor {
                left: Box::new(a.to_spec()),
                right: Box::new(b.to_spec()),
            },
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ChannelSpec = serde_json::from_str(text)?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("channel specs always serialize")
    }
}
