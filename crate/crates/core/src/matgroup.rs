//! 3×3 matrix representations acting on `(z, ζ, 1)`: the algebra generators
//! `x̂ᵢ` and `ĝᵢ`, the group `X`, its exponential map and subgroup flags.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{express_in_span, Ring, SparseVector};
use crate::quaternion::{Quaternion, SymplecticPair};
use crate::symop::{published_table, verify_table, AlgebraElement, Catalog, DiscrepancyReport, GaussianRational};

pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatgroupError {
    #[error("generator index {0} is out of range 1..6")]
    UnknownIndex(usize),
    #[error("element is singular (ad - bc = 0)")]
    SingularElement,
    #[error("bottom row is not (0, 0, 1)")]
    NotInX,
    #[error("matrix is not of QHT form")]
    NotQhtForm,
    #[error("unknown matrix catalog '{0}'")]
    UnknownCatalog(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<T> {
    pub rows: [[T; 3]; 3],
}

pub type ExactMat3 = Mat3<GaussianRational>;
pub type ComplexMat3 = Mat3<Complex64>;

impl<T: Ring> Mat3<T> {
    pub fn new(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn zeros() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { T::one() } else { T::zero() })
    }

    /// Matrix unit `E_{rc}` (1-based).
    pub fn unit(r: usize, c: usize) -> Self {
        Self::from_fn(|i, j| if (i + 1, j + 1) == (r, c) { T::one() } else { T::zero() })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Self { rows: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))) }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.rows[r][c]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3 { rows: std::array::from_fn(|r| std::array::from_fn(|c| f(&self.rows[r][c]))) }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.rows[r][c].clone() + rhs.rows[r][c].clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| self.rows[r][c].clone() - rhs.rows[r][c].clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        Self::from_fn(|r, c| {
            (0..3).fold(T::zero(), |acc, k| acc + self.rows[r][k].clone() * rhs.rows[k][c].clone())
        })
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }
}

impl ExactMat3 {
    pub fn to_complex(&self) -> ComplexMat3 {
        self.map(GaussianRational::to_complex64)
    }

    fn coordinates(&self) -> SparseVector<(usize, usize)> {
        let mut v = SparseVector::new();
        for r in 0..3 {
            for c in 0..3 {
                if !self.rows[r][c].is_zero() {
                    v.insert((r, c), self.rows[r][c].clone());
                }
            }
        }
        v
    }
}

impl ComplexMat3 {
    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.rows.iter().map(|row| row.iter().map(|x| x.norm()).sum()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .map(|(r, c)| (self.rows[r][c] - other.rows[r][c]).norm())
            .fold(0.0, f64::max)
    }
}

fn complex_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Serialize for ComplexMat3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> =
            self.rows.iter().map(|row| row.iter().map(complex_pair).collect()).collect();
        let mut st = serializer.serialize_struct("Mat3", 1)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

impl Serialize for ExactMat3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[String; 2]>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(|x| [x.re.to_string(), x.im.to_string()]).collect())
            .collect();
        let mut st = serializer.serialize_struct("Mat3", 1)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MatrixCatalog {
    XHat,
    GHat,
}

impl MatrixCatalog {
    pub fn name(self) -> &'static str {
        match self {
            MatrixCatalog::XHat => "XHAT",
            MatrixCatalog::GHat => "GHAT",
        }
    }

    /// The commutator-table catalog these matrices are compared against.
    pub fn table_catalog(self) -> Catalog {
        match self {
            MatrixCatalog::XHat => Catalog::X,
            MatrixCatalog::GHat => Catalog::G,
        }
    }

    pub fn basis(self) -> Vec<ExactMat3> {
        (1..=6).map(|i| algebra_generator(self, i).expect("index in range")).collect()
    }
}

impl fmt::Display for MatrixCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixCatalog {
    type Err = MatgroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [MatrixCatalog::XHat, MatrixCatalog::GHat]
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| MatgroupError::UnknownCatalog(s.to_string()))
    }
}

/// The printed generator matrices (1-based index).
pub fn algebra_generator(catalog: MatrixCatalog, i: usize) -> Result<ExactMat3, MatgroupError> {
    if !(1..=6).contains(&i) {
        return Err(MatgroupError::UnknownIndex(i));
    }
    let e = |r, c| ExactMat3::unit(r, c);
    let neg = |m: ExactMat3| m.scale(&GaussianRational::real(-1));
    let im = GaussianRational::i();
    Ok(match (catalog, i) {
        (MatrixCatalog::XHat, 1) => e(1, 3),
        (MatrixCatalog::XHat, 2) => neg(e(1, 1)),
        (MatrixCatalog::XHat, 3) => e(1, 2),
        (MatrixCatalog::XHat, 4) => neg(e(2, 3)),
        (MatrixCatalog::XHat, 5) => neg(e(2, 2)),
        (MatrixCatalog::XHat, _) => e(2, 1),
        (MatrixCatalog::GHat, 1) => e(1, 2).add(&e(2, 1)),
        (MatrixCatalog::GHat, 2) => e(2, 1).sub(&e(1, 2)).scale(&im),
        (MatrixCatalog::GHat, 3) => e(1, 1).sub(&e(2, 2)),
        (MatrixCatalog::GHat, 4) => e(1, 1).add(&e(2, 2)),
        (MatrixCatalog::GHat, 5) => e(1, 3),
        (MatrixCatalog::GHat, _) => e(2, 3),
    })
}

/// Exact commutator table `[Mᵢ, Mⱼ]`, `i < j`, in the catalog's own basis.
/// `None` if some commutator leaves the span.
pub fn matrix_commutator_table(
    catalog: MatrixCatalog,
) -> Option<BTreeMap<(usize, usize), AlgebraElement>> {
    let basis = catalog.basis();
    let coords: Vec<_> = basis.iter().map(ExactMat3::coordinates).collect();
    let mut out = BTreeMap::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let c = basis[i].commutator(&basis[j]);
            let dense = express_in_span(&coords, &c.coordinates())?;
            out.insert((i + 1, j + 1), AlgebraElement::from_dense(catalog.table_catalog(), &dense));
        }
    }
    Some(out)
}

/// Compares the matrix commutator table with the printed operator table.
pub fn verify_matrix_table(catalog: MatrixCatalog) -> DiscrepancyReport {
    let oracle = matrix_commutator_table(catalog).expect("generator matrices close");
    let published = published_table(catalog.table_catalog());
    let mut report = verify_table(catalog.name(), &oracle, published);
    report.notes.clear();
    report
}

/// Scaling-and-squaring Taylor series for `exp(m)`.
pub fn exp_series(m: &ComplexMat3, tol: f64) -> ComplexMat3 {
    let norm = m.norm_inf();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let a = m.scale(&Complex64::new(scale, 0.0));
    let mut sum = ComplexMat3::identity();
    let mut term = ComplexMat3::identity();
    // The series for the scaled matrix is accurate to `tol / 2^s` before squaring.
    let target = tol * scale;
    for k in 1..=60 {
        term = term.matmul(&a).scale(&Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.norm_inf() < target * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Upper block `[[a, b], [c, d]]` with translation column `(t_z, t_ζ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub t_z: Complex64,
    pub t_zeta: Complex64,
}

impl GroupElement {
    pub fn identity() -> Self {
        let (o, z) = (Complex64::one(), Complex64::zero());
        Self { a: o, b: z, c: z, d: o, t_z: z, t_zeta: z }
    }

    pub fn to_mat3(&self) -> ComplexMat3 {
        let (o, z) = (Complex64::one(), Complex64::zero());
        Mat3::new([[self.a, self.b, self.t_z], [self.c, self.d, self.t_zeta], [z, z, o]])
    }

    /// Reads the top two rows; the bottom row must be `(0, 0, 1)` within `tol`.
    pub fn from_mat3(m: &ComplexMat3, tol: f64) -> Result<Self, MatgroupError> {
        let bottom = [Complex64::zero(), Complex64::zero(), Complex64::one()];
        if (0..3).any(|c| (m.rows[2][c] - bottom[c]).norm() > tol) {
            return Err(MatgroupError::NotInX);
        }
        let r = &m.rows;
        Ok(Self { a: r[0][0], b: r[0][1], c: r[1][0], d: r[1][1], t_z: r[0][2], t_zeta: r[1][2] })
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// `self · rhs`; the bottom row is kept exact.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
            t_z: self.a * rhs.t_z + self.b * rhs.t_zeta + self.t_z,
            t_zeta: self.c * rhs.t_z + self.d * rhs.t_zeta + self.t_zeta,
        }
    }

    pub fn invert(&self) -> Result<Self, MatgroupError> {
        let det = self.determinant();
        let scale = self.a.norm() * self.d.norm() + self.b.norm() * self.c.norm();
        if det.norm() <= 1e-14 * scale || det.norm() == 0.0 {
            return Err(MatgroupError::SingularElement);
        }
        let (a, b, c, d) = (self.d / det, -self.b / det, -self.c / det, self.a / det);
        Ok(Self {
            a,
            b,
            c,
            d,
            t_z: -(a * self.t_z + b * self.t_zeta),
            t_zeta: -(c * self.t_z + d * self.t_zeta),
        })
    }

    /// `(z, ζ) ↦ (az + bζ + t_z, cz + dζ + t_ζ)`.
    pub fn act(&self, v: &SymplecticPair<f64>) -> SymplecticPair<f64> {
        SymplecticPair::new(
            self.a * v.z + self.b * v.zeta + self.t_z,
            self.c * v.z + self.d * v.zeta + self.t_zeta,
        )
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("GroupElement", 3)?;
        let m = self.to_mat3();
        let rows: Vec<Vec<[f64; 2]>> = m.rows.iter().map(|row| row.iter().map(complex_pair).collect()).collect();
        st.serialize_field("rows", &rows)?;
        st.serialize_field("t_z", &complex_pair(&self.t_z))?;
        st.serialize_field("t_zeta", &complex_pair(&self.t_zeta))?;
        st.end()
    }
}

/// `(z, ζ) ↦ z + ζj`.
pub fn m_map(p: &SymplecticPair<f64>) -> Quaternion<f64> {
    Quaternion::from_symplectic(p)
}

/// `exp(t·x̂ᵢ)` in closed form.
pub fn exp_generator(i: usize, t: f64) -> Result<GroupElement, MatgroupError> {
    let gen = algebra_generator(MatrixCatalog::XHat, i)?.to_complex();
    let factor = match i {
        2 | 5 => 1.0 - (-t).exp(),
        _ => t,
    };
    let m = ComplexMat3::identity().add(&gen.scale(&Complex64::new(factor, 0.0)));
    GroupElement::from_mat3(&m, 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SubgroupFlag {
    GeneralX,
    Moebius,
    Heisenberg,
    HeisenbergTilde,
    #[serde(rename = "QHT")]
    Qht,
    Unimodular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClassification {
    pub flags: Vec<SubgroupFlag>,
}

impl SubgroupClassification {
    pub fn contains(&self, flag: SubgroupFlag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Subgroup membership flags, each tested entrywise within `tol`.
pub fn classify(m: &ComplexMat3, tol: f64) -> Result<SubgroupClassification, MatgroupError> {
    let g = GroupElement::from_mat3(m, tol)?;
    let near = |x: Complex64, y: Complex64| (x - y).norm() <= tol;
    let (one, zero) = (Complex64::one(), Complex64::zero());
    let checks = [
        (SubgroupFlag::GeneralX, true),
        (SubgroupFlag::Moebius, near(g.t_z, zero) && near(g.t_zeta, zero)),
        (SubgroupFlag::Heisenberg, near(g.a, one) && near(g.d, one) && near(g.c, zero)),
        (SubgroupFlag::HeisenbergTilde, near(g.a, one) && near(g.d, one) && near(g.b, zero)),
        (SubgroupFlag::Qht, near(g.d, g.a.conj()) && near(g.b, -g.c.conj())),
        (SubgroupFlag::Unimodular, near(g.determinant(), one)),
    ];
    Ok(SubgroupClassification { flags: checks.into_iter().filter(|c| c.1).map(|c| c.0).collect() })
}

/// Matrix of `q ↦ q·u + v`.
pub fn from_qht(u: &Quaternion<f64>, v: &Quaternion<f64>) -> GroupElement {
    let u = u.symplectic_split();
    let v = v.symplectic_split();
    GroupElement { a: u.z, b: -u.zeta.conj(), c: u.zeta, d: u.z.conj(), t_z: v.z, t_zeta: v.zeta }
}

pub fn to_qht(m: &GroupElement, tol: f64) -> Result<(Quaternion<f64>, Quaternion<f64>), MatgroupError> {
    let cls = classify(&m.to_mat3(), tol)?;
    if !cls.contains(SubgroupFlag::Qht) {
        return Err(MatgroupError::NotQhtForm);
    }
    let u = m_map(&SymplecticPair::new(m.a, m.c));
    let v = m_map(&SymplecticPair::new(m.t_z, m.t_zeta));
    Ok((u, v))
}
