//! The similarity map `G(q) = q·u + v`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum QhtError {
    #[error("transform is not invertible (u = 0)")]
    NonInvertible,
    #[error("ratio denominator vanishes (q = q2)")]
    CoincidentPoints,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", deny_unknown_fields)]
pub struct QhtTransform<S> {
    pub u: Quaternion<S>,
    pub v: Quaternion<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixedPointKind {
    AllPoints,
    InfinityOnly,
    FiniteAndInfinity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct FixedPointResult<S> {
    pub kind: FixedPointKind,
    pub finite_point: Option<Quaternion<S>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimilarityDecomposition {
    pub rotation: Quaternion<f64>,
    pub dilation: f64,
    pub translation: Quaternion<f64>,
}

impl SimilarityDecomposition {
    pub fn recompose(&self) -> QhtTransform<f64> {
        QhtTransform::new(self.rotation.scale(&self.dilation), self.translation.clone())
    }
}

impl<S: Scalar> QhtTransform<S> {
    pub fn new(u: Quaternion<S>, v: Quaternion<S>) -> Self {
        Self { u, v }
    }

    pub fn identity() -> Self {
        Self::new(Quaternion::one(), Quaternion::zero())
    }

    pub fn is_invertible(&self) -> bool {
        !self.u.is_zero()
    }

    /// `q·u + v`.
    pub fn apply(&self, q: &Quaternion<S>) -> Quaternion<S> {
        q * &self.u + &self.v
    }

    /// `self ∘ first`: `q ↦ self(first(q))`.
    pub fn compose(&self, first: &Self) -> Self {
        Self::new(&first.u * &self.u, &first.v * &self.u + &self.v)
    }

    pub fn inverse(&self) -> Result<Self, QhtError> {
        let inv = self.u.inverse().map_err(|_| QhtError::NonInvertible)?;
        let v = -(&self.v * &inv);
        Ok(Self::new(inv, v))
    }

    /// Fixed points of `q ↦ q·u + v` besides ∞; the finite one is `v(1 − u)⁻¹`.
    pub fn fixed_points(&self) -> FixedPointResult<S> {
        if self.u.is_one() {
            let kind = if self.v.is_zero() { FixedPointKind::AllPoints } else { FixedPointKind::InfinityOnly };
            return FixedPointResult { kind, finite_point: None };
        }
        let denom = (Quaternion::one() - &self.u).inverse().expect("u != 1");
        FixedPointResult { kind: FixedPointKind::FiniteAndInfinity, finite_point: Some(&self.v * &denom) }
    }

    /// `G(q) − G(q1)`, which equals `(q − q1)·u`.
    pub fn difference_factor(&self, q: &Quaternion<S>, q1: &Quaternion<S>) -> Quaternion<S> {
        self.apply(q) - self.apply(q1)
    }
}

impl QhtTransform<f64> {
    /// `u = rotation · dilation` with `dilation = ‖u‖`.
    pub fn decompose(&self) -> Result<SimilarityDecomposition, QhtError> {
        let dilation = self.u.norm();
        if dilation == 0.0 {
            return Err(QhtError::NonInvertible);
        }
        Ok(SimilarityDecomposition {
            rotation: self.u.scale(&(1.0 / dilation)),
            dilation,
            translation: self.v.clone(),
        })
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.u.distance(&other.u).max(self.v.distance(&other.v))
    }
}

/// `(q − q1)(q − q2)⁻¹`, invariant under every invertible QHT.
pub fn three_point_ratio<S: Scalar>(
    q: &Quaternion<S>,
    q1: &Quaternion<S>,
    q2: &Quaternion<S>,
) -> Result<Quaternion<S>, QhtError> {
    let inv = (q - q2).inverse().map_err(|_| QhtError::CoincidentPoints)?;
    Ok((q - q1) * inv)
}
