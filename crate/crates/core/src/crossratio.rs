//! Complex Möbius maps on the extended plane, the cross-ratio and the
//! similarity ratio.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CrossRatioError {
    #[error("degenerate Möbius parameters (ad - bc = 0)")]
    DegenerateParams,
    #[error("fewer than three distinct points")]
    TooManyCoincidences,
    #[error("coincident points")]
    CoincidentPoints,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedComplex {
    Finite(Complex64),
    Infinity,
}

use ExtendedComplex::{Finite, Infinity};

impl ExtendedComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        Finite(Complex64::new(re, im))
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            Finite(z) => Some(*z),
            Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    /// Distance between finite points; 0 between two infinities, ∞ otherwise.
    pub fn distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (Finite(a), Finite(b)) => (a - b).norm(),
            (Infinity, Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl From<Complex64> for ExtendedComplex {
    fn from(z: Complex64) -> Self {
        Finite(z)
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(z) => write!(f, "{z}"),
            Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Finite(z) => [z.re, z.im].serialize(serializer),
            Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([f64; 2]),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair([re, im]) => Ok(Finite(Complex64::new(re, im))),
            Repr::Text(s) if s == "inf" => Ok(Infinity),
            Repr::Text(s) => Err(de::Error::custom(format!("expected [re, im] or \"inf\", got {s:?}"))),
        }
    }
}

/// `z ↦ (az + b)/(cz + d)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobiusParams {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl MobiusParams {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, CrossRatioError> {
        let det = a * d - b * c;
        let scale = a.norm() * d.norm() + b.norm() * c.norm() + 1.0;
        if det.norm().is_nan() || det.norm() < 1e-12 * scale {
            return Err(CrossRatioError::DegenerateParams);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        let (o, z) = (Complex64::new(1.0, 0.0), Complex64::zero());
        Self { a: o, b: z, c: z, d: o }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self · rhs`, i.e. `z ↦ self(rhs(z))`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, CrossRatioError> {
        Self::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    pub fn scaled(&self, lambda: Complex64) -> Result<Self, CrossRatioError> {
        Self::new(self.a * lambda, self.b * lambda, self.c * lambda, self.d * lambda)
    }
}

pub fn mobius_apply(m: &MobiusParams, z: &ExtendedComplex) -> ExtendedComplex {
    match z {
        Infinity if m.c.is_zero() => Infinity,
        Infinity => Finite(m.a / m.c),
        Finite(z) => {
            let den = m.c * z + m.d;
            if den.is_zero() {
                Infinity
            } else {
                Finite((m.a * z + m.b) / den)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Factor {
    Zero,
    Inf,
    Finite(Complex64),
}

fn difference(p: &ExtendedComplex, q: &ExtendedComplex) -> Factor {
    match (p, q) {
        (Infinity, Infinity) => Factor::Zero,
        (Infinity, _) | (_, Infinity) => Factor::Inf,
        (Finite(a), Finite(b)) if a == b => Factor::Zero,
        (Finite(a), Finite(b)) => Factor::Finite(a - b),
    }
}

/// `Π num / Π den`, cancelling matching infinities.
fn ratio(num: &[Factor], den: &[Factor]) -> Result<ExtendedComplex, CrossRatioError> {
    #[derive(Default)]
    struct Tally {
        zeros: usize,
        infs: usize,
        value: Option<Complex64>,
    }
    let tally = |fs: &[Factor]| {
        fs.iter().fold(Tally::default(), |mut t, f| {
            match f {
                Factor::Zero => t.zeros += 1,
                Factor::Inf => t.infs += 1,
                Factor::Finite(z) => t.value = Some(t.value.map_or(*z, |v| v * z)),
            }
            t
        })
    };
    let (n, d) = (tally(num), tally(den));
    let one = Complex64::new(1.0, 0.0);
    match (n.zeros > 0, d.zeros > 0) {
        (true, true) => Err(CrossRatioError::TooManyCoincidences),
        (true, false) => Ok(Finite(Complex64::zero())),
        (false, true) => Ok(Infinity),
        (false, false) if n.infs > d.infs => Ok(Infinity),
        (false, false) if n.infs < d.infs => Ok(Finite(Complex64::zero())),
        (false, false) => Ok(Finite(n.value.unwrap_or(one) / d.value.unwrap_or(one))),
    }
}

fn distinct_count(points: &[ExtendedComplex]) -> usize {
    let mut seen: Vec<&ExtendedComplex> = Vec::new();
    for p in points {
        if !seen.contains(&p) {
            seen.push(p);
        }
    }
    seen.len()
}

/// `(z − z1)(z2 − z3) / ((z − z3)(z2 − z1))`, with the usual limits at ∞.
pub fn cross_ratio(
    z: &ExtendedComplex,
    z1: &ExtendedComplex,
    z2: &ExtendedComplex,
    z3: &ExtendedComplex,
) -> Result<ExtendedComplex, CrossRatioError> {
    if distinct_count(&[*z, *z1, *z2, *z3]) < 3 {
        return Err(CrossRatioError::TooManyCoincidences);
    }
    ratio(&[difference(z, z1), difference(z2, z3)], &[difference(z, z3), difference(z2, z1)])
}

/// `(z − z1)/(z − z2)`.
pub fn similarity_ratio(
    z: &ExtendedComplex,
    z1: &ExtendedComplex,
    z2: &ExtendedComplex,
) -> Result<ExtendedComplex, CrossRatioError> {
    if z == z2 {
        return Err(CrossRatioError::CoincidentPoints);
    }
    ratio(&[difference(z, z1)], &[difference(z, z2)]).map_err(|_| CrossRatioError::CoincidentPoints)
}

/// The Möbius map with `M(0) = z1`, `M(1) = z2`, `M(∞) = z3`.
pub fn mobius_from_three_points(
    z1: &ExtendedComplex,
    z2: &ExtendedComplex,
    z3: &ExtendedComplex,
) -> Result<MobiusParams, CrossRatioError> {
    if distinct_count(&[*z1, *z2, *z3]) < 3 {
        return Err(CrossRatioError::CoincidentPoints);
    }
    let (o, zero) = (Complex64::new(1.0, 0.0), Complex64::zero());
    // Forward map sending (z1, z2, z3) to (0, 1, ∞); its adjugate is the inverse.
    let [a, b, c, d] = match (z1, z2, z3) {
        (Infinity, Finite(p2), Finite(p3)) => [zero, p2 - p3, o, -p3],
        (Finite(p1), Infinity, Finite(p3)) => [o, -p1, o, -p3],
        (Finite(p1), Finite(p2), Infinity) => [o, -p1, zero, p2 - p1],
        (Finite(p1), Finite(p2), Finite(p3)) => {
            [p2 - p3, -p1 * (p2 - p3), p2 - p1, -p3 * (p2 - p1)]
        }
        _ => unreachable!("at most one point is infinite"),
    };
    MobiusParams::new(d, -b, -c, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(re: f64, im: f64) -> ExtendedComplex {
        ExtendedComplex::finite(re, im)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn inversion() -> MobiusParams {
        MobiusParams::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap()
    }

    fn arb_point() -> impl Strategy<Value = ExtendedComplex> {
        (-5.0..5.0f64, -5.0..5.0f64).prop_map(|(a, b)| f(a, b))
    }

    fn arb_mobius() -> impl Strategy<Value = MobiusParams> {
        prop::array::uniform8(-3.0..3.0f64)
            .prop_filter_map("non-degenerate", |x| {
                let m = MobiusParams::new(c(x[0], x[1]), c(x[2], x[3]), c(x[4], x[5]), c(x[6], x[7])).ok()?;
                (m.determinant().norm() > 0.1).then_some(m)
            })
    }

    #[test]
    fn apply_examples() {
        let z = f(1.5, -2.0);
        assert_eq!(mobius_apply(&MobiusParams::identity(), &z), z);
        assert_eq!(mobius_apply(&inversion(), &f(2.0, 0.0)), f(0.5, 0.0));
        assert_eq!(mobius_apply(&inversion(), &f(0.0, 0.0)), Infinity);
        assert_eq!(mobius_apply(&inversion(), &Infinity), f(0.0, 0.0));
        assert_eq!(mobius_apply(&MobiusParams::identity(), &Infinity), Infinity);
    }

    #[test]
    fn degenerate_params() {
        let one = c(1.0, 0.0);
        assert_eq!(MobiusParams::new(one, one, one, one), Err(CrossRatioError::DegenerateParams));
        let nan = c(f64::NAN, 0.0);
        assert!(MobiusParams::new(nan, one, one, one).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let p = |x: f64| f(x, 0.0);
        assert_eq!(cross_ratio(&p(1.0), &p(1.0), &p(2.0), &p(3.0)).unwrap(), p(0.0));
        assert_eq!(cross_ratio(&p(2.0), &p(0.0), &p(1.0), &p(3.0)).unwrap(), p(4.0));
        assert_eq!(cross_ratio(&p(1.0), &p(1.0), &p(1.0), &p(3.0)), Err(CrossRatioError::TooManyCoincidences));
    }

    #[test]
    fn cross_ratio_at_infinity() {
        let (z, z1, z2, z3) = (c(2.0, 1.0), c(0.0, -1.0), c(1.0, 0.0), c(3.0, 2.0));
        let close = |a: ExtendedComplex, b: Complex64| a.distance(&Finite(b)) < 1e-14;
        assert!(close(cross_ratio(&Infinity, &z1.into(), &z2.into(), &z3.into()).unwrap(), (z2 - z3) / (z2 - z1)));
        assert!(close(cross_ratio(&z.into(), &Infinity, &z2.into(), &z3.into()).unwrap(), (z2 - z3) / (z - z3)));
        assert!(close(cross_ratio(&z.into(), &z1.into(), &Infinity, &z3.into()).unwrap(), (z - z1) / (z - z3)));
        assert!(close(cross_ratio(&z.into(), &z1.into(), &z2.into(), &Infinity).unwrap(), (z - z1) / (z2 - z1)));
        assert_eq!(cross_ratio(&Infinity, &Infinity, &z2.into(), &z3.into()).unwrap(), f(0.0, 0.0));
        assert_eq!(cross_ratio(&Infinity, &z1.into(), &z2.into(), &Infinity).unwrap(), Infinity);
        assert_eq!(cross_ratio(&Infinity, &z1.into(), &Infinity, &z3.into()).unwrap(), f(1.0, 0.0));
    }

    #[test]
    fn similarity_examples() {
        let p = |x: f64| f(x, 0.0);
        assert_eq!(similarity_ratio(&p(1.0), &p(1.0), &p(3.0)).unwrap(), p(0.0));
        assert_eq!(similarity_ratio(&p(5.0), &p(1.0), &p(3.0)).unwrap(), p(2.0));
        assert_eq!(similarity_ratio(&p(5.0), &p(1.0), &p(5.0)), Err(CrossRatioError::CoincidentPoints));
        assert_eq!(similarity_ratio(&Infinity, &p(1.0), &p(5.0)).unwrap(), p(1.0));
    }

    #[test]
    fn similarity_not_invariant_under_inversion() {
        let (z, z1, z2) = (f(5.0, 0.0), f(1.0, 0.0), f(3.0, 0.0));
        let m = inversion();
        let before = similarity_ratio(&z, &z1, &z2).unwrap();
        let after = similarity_ratio(&mobius_apply(&m, &z), &mobius_apply(&m, &z1), &mobius_apply(&m, &z2)).unwrap();
        assert!(before.distance(&after) > 0.1);
    }

    #[test]
    fn three_point_examples() {
        let (zero, one) = (f(0.0, 0.0), f(1.0, 0.0));
        let id = mobius_from_three_points(&zero, &one, &Infinity).unwrap();
        let z = f(0.3, -0.7);
        assert_eq!(mobius_apply(&id, &z), z);
        let m = mobius_from_three_points(&one, &zero, &Infinity).unwrap();
        assert_eq!(mobius_apply(&m, &zero), one);
        assert_eq!(mobius_apply(&m, &one), zero);
        assert_eq!(mobius_apply(&m, &f(3.0, 0.0)), f(-2.0, 0.0));
        assert_eq!(mobius_from_three_points(&one, &one, &zero), Err(CrossRatioError::CoincidentPoints));
        for (a, b, cc) in [(Infinity, one, zero), (one, Infinity, zero)] {
            let m = mobius_from_three_points(&a, &b, &cc).unwrap();
            assert!(mobius_apply(&m, &zero).distance(&a) < 1e-14 || a.is_infinite() && mobius_apply(&m, &zero).is_infinite());
            assert!(mobius_apply(&m, &one).distance(&b) < 1e-14 || b.is_infinite() && mobius_apply(&m, &one).is_infinite());
            assert!(mobius_apply(&m, &Infinity).distance(&cc) < 1e-14);
        }
    }

    #[test]
    fn json_shape() {
        let pts = vec![f(1.0, -2.0), Infinity];
        let s = serde_json::to_string(&pts).unwrap();
        assert_eq!(s, r#"[[1.0,-2.0],"inf"]"#);
        assert_eq!(serde_json::from_str::<Vec<ExtendedComplex>>(&s).unwrap(), pts);
        assert!(serde_json::from_str::<ExtendedComplex>("\"oo\"").is_err());
    }

    proptest! {
        #[test]
        fn cross_ratio_invariance(m in arb_mobius(), z in arb_point(), z1 in arb_point(), z2 in arb_point(), z3 in arb_point()) {
            let before = cross_ratio(&z, &z1, &z2, &z3).unwrap();
            let img = |p: &ExtendedComplex| mobius_apply(&m, p);
            let after = cross_ratio(&img(&z), &img(&z1), &img(&z2), &img(&z3)).unwrap();
            let (b, a) = (before.as_finite().unwrap(), after.as_finite().unwrap());
            prop_assert!((a - b).norm() <= 1e-8 * (1.0 + b.norm()));
        }

        #[test]
        fn composition_and_scale(m1 in arb_mobius(), m2 in arb_mobius(), z in arb_point(), re in 0.5..2.0f64, im in -2.0..2.0f64) {
            let direct = mobius_apply(&m1.compose(&m2).unwrap(), &z);
            let nested = mobius_apply(&m1, &mobius_apply(&m2, &z));
            if let (Some(a), Some(b)) = (direct.as_finite(), nested.as_finite()) {
                prop_assert!((a - b).norm() <= 1e-8 * (1.0 + b.norm()));
            }
            let scaled = mobius_apply(&m1.scaled(c(re, im)).unwrap(), &z);
            let plain = mobius_apply(&m1, &z);
            if let (Some(a), Some(b)) = (scaled.as_finite(), plain.as_finite()) {
                prop_assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()));
            }
        }

        #[test]
        fn three_points_reapply(z1 in arb_point(), z2 in arb_point(), z3 in arb_point()) {
            prop_assume!(z1.distance(&z2) > 1e-2 && z2.distance(&z3) > 1e-2 && z1.distance(&z3) > 1e-2);
            let m = mobius_from_three_points(&z1, &z2, &z3).unwrap();
            let close = |a: ExtendedComplex, b: &ExtendedComplex| a.distance(b) <= 1e-10 * (1.0 + b.as_finite().map_or(0.0, |x| x.norm()));
            prop_assert!(close(mobius_apply(&m, &f(0.0, 0.0)), &z1));
            prop_assert!(close(mobius_apply(&m, &f(1.0, 0.0)), &z2));
            prop_assert!(close(mobius_apply(&m, &Infinity), &z3));
        }

        #[test]
        fn similarity_invariance(z in arb_point(), z1 in arb_point(), z2 in arb_point()) {
            prop_assume!(z.distance(&z2) > 1e-2);
            let n = MobiusParams::new(c(2.0, 1.0), c(7.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
            let img = |p: &ExtendedComplex| mobius_apply(&n, p);
            let before = similarity_ratio(&z, &z1, &z2).unwrap().as_finite().unwrap();
            let after = similarity_ratio(&img(&z), &img(&z1), &img(&z2)).unwrap().as_finite().unwrap();
            prop_assert!((before - after).norm() <= 1e-12 * (1.0 + before.norm()) * 10.0);
        }
    }
}
