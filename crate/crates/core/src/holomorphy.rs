//! Finite-difference classification of quaternion functions against the
//! left-derivative Cauchy-Riemann conditions.
//!
//! A function is left-holomorphic when the four real partial derivatives
//! satisfy `∂₀F = −i∂₁F = −j∂₂F = −k∂₃F`. The mirrored chain
//! `∂₀F = i∂₁F = j∂₂F = k∂₃F` characterises functions of `q̄`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::quaternion::Quaternion;
use crate::scalar::Scalar;

type Q = Quaternion<f64>;

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_SAMPLE_COUNT: usize = 20;
/// Sample components are drawn uniformly from `[-SAMPLE_RANGE, SAMPLE_RANGE]`.
pub const SAMPLE_RANGE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("function evaluation failed: {0}")]
pub struct EvalError(pub String);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HolomorphyError {
    #[error("no sample points given")]
    EmptySampleSet,
    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error(transparent)]
    Evaluation(#[from] EvalError),
}

/// `F(q) = q·a + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFunction<S> {
    pub a: Quaternion<S>,
    pub b: Quaternion<S>,
}

impl<S: Scalar> AffineFunction<S> {
    pub fn new(a: Quaternion<S>, b: Quaternion<S>) -> Self {
        Self { a, b }
    }

    pub fn eval(&self, q: &Quaternion<S>) -> Quaternion<S> {
        affine_eval(self, q)
    }
}

pub fn affine_eval<S: Scalar>(f: &AffineFunction<S>, q: &Quaternion<S>) -> Quaternion<S> {
    q * &f.a + &f.b
}

/// The four candidate left derivatives of `F` at a point, plus its
/// symplectic components `F = ℰ₀ + ℰ₁ j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeEstimates {
    /// `∂₀F`, `−i∂₁F`, `−j∂₂F`, `−k∂₃F`.
    pub d: [Q; 4],
    /// Raw central differences `∂ᵤF`.
    pub partials: [Q; 4],
    pub e0: Complex64,
    pub e1: Complex64,
    pub value: Q,
}

impl DerivativeEstimates {
    pub fn d0(&self) -> &Q {
        &self.d[0]
    }
    pub fn d1(&self) -> &Q {
        &self.d[1]
    }
    pub fn d2(&self) -> &Q {
        &self.d[2]
    }
    pub fn d3(&self) -> &Q {
        &self.d[3]
    }

    /// `∂₀F`, `i∂₁F`, `j∂₂F`, `k∂₃F`.
    pub fn conjugate_chain(&self) -> [Q; 4] {
        let [p0, p1, p2, p3] = &self.partials;
        [p0.clone(), Q::i() * p1, Q::j() * p2, Q::k() * p3]
    }

    pub fn left_spread(&self) -> f64 {
        max_pairwise_distance(&self.d)
    }

    pub fn conjugate_spread(&self) -> f64 {
        max_pairwise_distance(&self.conjugate_chain())
    }
}

fn max_pairwise_distance(v: &[Q; 4]) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..4 {
        for b in a + 1..4 {
            worst = worst.max(v[a].distance(&v[b]));
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum HolomorphyClass {
    LeftHolomorphic,
    ConjugateLeftHolomorphic,
    Neither,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HolomorphyVerdict {
    pub class: HolomorphyClass,
    pub max_residual: f64,
    pub worst_point: Q,
}

fn unit(axis: usize) -> Q {
    match axis {
        0 => Q::one(),
        1 => Q::i(),
        2 => Q::j(),
        _ => Q::k(),
    }
}

fn check_step(h: f64) -> Result<(), HolomorphyError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(HolomorphyError::InvalidStep(h))
    }
}

fn central_partials<F>(f: &F, q: &Q, h: f64) -> Result<[Q; 4], HolomorphyError>
where
    F: Fn(&Q) -> Result<Q, EvalError>,
{
    let mut out: [Q; 4] = Default::default();
    for (axis, slot) in out.iter_mut().enumerate() {
        let step = unit(axis).scale(&h);
        let plus = f(&(q + &step))?;
        let minus = f(&(q - &step))?;
        *slot = (plus - minus).scale(&(0.5 / h));
    }
    Ok(out)
}

/// Central-difference estimates of the left derivative along each real axis.
pub fn left_derivative_fd<F>(f: &F, q: &Q, h: f64) -> Result<DerivativeEstimates, HolomorphyError>
where
    F: Fn(&Q) -> Result<Q, EvalError>,
{
    check_step(h)?;
    let partials = central_partials(f, q, h)?;
    let value = f(q)?;
    let d = [
        partials[0].clone(),
        -(Q::i() * &partials[1]),
        -(Q::j() * &partials[2]),
        -(Q::k() * &partials[3]),
    ];
    let p = value.symplectic_split();
    Ok(DerivativeEstimates { d, partials, e0: p.z, e1: p.zeta, value })
}

/// Maximum of the two symplectic residuals
/// `|∂_z ℰ₀ − ∂_ζ̄ ℰ̄₁|` and `|∂_ζ ℰ₀ + ∂_z̄ ℰ̄₁|`,
/// with `∂_z = ∂₀ − i∂₁` and `∂_ζ = ∂₂ − i∂₃`. Not normalised.
pub fn cr_residual<F>(f: &F, q: &Q, h: f64) -> Result<f64, HolomorphyError>
where
    F: Fn(&Q) -> Result<Q, EvalError>,
{
    check_step(h)?;
    let partials = central_partials(f, q, h)?;
    let i = Complex64::i();
    let e0: Vec<Complex64> = partials.iter().map(|p| Complex64::new(p.x0, p.x1)).collect();
    let e1_bar: Vec<Complex64> = partials.iter().map(|p| Complex64::new(p.x2, -p.x3)).collect();

    let d_z = |v: &[Complex64]| v[0] - i * v[1];
    let d_zbar = |v: &[Complex64]| v[0] + i * v[1];
    let d_zeta = |v: &[Complex64]| v[2] - i * v[3];
    let d_zetabar = |v: &[Complex64]| v[2] + i * v[3];

    let first = (d_z(&e0) - d_zetabar(&e1_bar)).norm();
    let second = (d_zeta(&e0) + d_zbar(&e1_bar)).norm();
    Ok(first.max(second))
}

/// Classifies `f` on the sample set.
///
/// The residual at a point is the largest pairwise distance among the four
/// chain estimates divided by `1 + ‖F(q)‖`. The left system is tested first,
/// so functions satisfying both (constants) are reported as left-holomorphic.
/// For `Neither`, the reported residual is that of the closer system.
pub fn classify_holomorphy<F>(
    f: &F,
    sample_points: &[Q],
    h: f64,
    tol: f64,
) -> Result<HolomorphyVerdict, HolomorphyError>
where
    F: Fn(&Q) -> Result<Q, EvalError>,
{
    if sample_points.is_empty() {
        return Err(HolomorphyError::EmptySampleSet);
    }
    let mut left = (f64::NEG_INFINITY, sample_points[0].clone());
    let mut conj = (f64::NEG_INFINITY, sample_points[0].clone());
    for q in sample_points {
        let est = left_derivative_fd(f, q, h)?;
        let scale = 1.0 + est.value.norm();
        let l = est.left_spread() / scale;
        let c = est.conjugate_spread() / scale;
        // NaN residuals must never count as agreement
        if l > left.0 || l.is_nan() {
            left = (if l.is_nan() { f64::INFINITY } else { l }, q.clone());
        }
        if c > conj.0 || c.is_nan() {
            conj = (if c.is_nan() { f64::INFINITY } else { c }, q.clone());
        }
    }
    let (class, (max_residual, worst_point)) = if left.0 <= tol {
        (HolomorphyClass::LeftHolomorphic, left)
    } else if conj.0 <= tol {
        (HolomorphyClass::ConjugateLeftHolomorphic, conj)
    } else if left.0 <= conj.0 {
        (HolomorphyClass::Neither, left)
    } else {
        (HolomorphyClass::Neither, conj)
    };
    Ok(HolomorphyVerdict { class, max_residual, worst_point })
}

/// `count` points with components uniform in `[-2, 2]`, reproducible from `seed`.
pub fn sample_points(count: usize, seed: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut c = || rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
            Q::new(c(), c(), c(), c())
        })
        .collect()
}

pub fn default_sample_points() -> Vec<Q> {
    sample_points(DEFAULT_SAMPLE_COUNT, DEFAULT_SEED)
}
