//! JSON form of states and matrices: complex entries are `[re, im]` pairs.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{CMatrix, CVector};
use crate::qstate::{DensityMatrix, HilbertPartition, Operator, OperatorKind, StateVector};
use crate::scalar::{lit, to_f64, Real, C};

type Pair = [f64; 2];

fn pair<T: Real>(z: &C<T>) -> Pair {
    [to_f64(z.re), to_f64(z.im)]
}

fn unpair<T: Real>(p: &Pair) -> C<T> {
    C::new(lit(p[0]), lit(p[1]))
}

fn rows<T: Real>(m: &CMatrix<T>) -> Vec<Vec<Pair>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| pair(&m[(r, c)])).collect()).collect()
}

fn from_rows<T: Real, E: serde::de::Error>(rows: &[Vec<Pair>]) -> Result<CMatrix<T>, E> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(E::custom("matrix must be square"));
    }
    Ok(CMatrix::from_fn(n, n, |r, c| unpair(&rows[r][c])))
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    partition: HilbertPartition,
    amplitudes: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    partition: HilbertPartition,
    matrix: Vec<Vec<Pair>>,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    partition: HilbertPartition,
    kind: OperatorKind,
    matrix: Vec<Vec<Pair>>,
}

impl<T: Real> Serialize for StateVector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StateRepr { partition: self.partition().clone(), amplitudes: self.amplitudes().iter().map(pair).collect() }
            .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for StateVector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = StateRepr::deserialize(d)?;
        let v = CVector::from_iterator(r.amplitudes.len(), r.amplitudes.iter().map(unpair));
        StateVector::new(v, r.partition).map_err(D::Error::custom)
    }
}

impl<T: Real> Serialize for DensityMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr { partition: self.partition().clone(), matrix: rows(self.matrix()) }.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for DensityMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        DensityMatrix::new(from_rows(&r.matrix)?, r.partition).map_err(D::Error::custom)
    }
}

impl<T: Real> Serialize for Operator<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OperatorRepr { partition: self.partition().clone(), kind: self.kind(), matrix: rows(self.matrix()) }
            .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Operator<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = OperatorRepr::deserialize(d)?;
        Operator::new(from_rows(&r.matrix)?, r.partition, r.kind).map_err(D::Error::custom)
    }
}
