//! Commutator tables, structure constants and related closure checks.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::catalog::Catalog;
use super::diffop::{commutator, DiffOperator};
use super::poly::coefficient_text;
use super::{GaussianRational, SymopError};
use crate::linalg::{express_in_span, rank, SparseVector, SquareMatrix};

/// A linear combination of the generators of one catalog (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub catalog: Catalog,
    coeffs: BTreeMap<usize, GaussianRational>,
}

impl AlgebraElement {
    pub fn zero(catalog: Catalog) -> Self {
        Self { catalog, coeffs: BTreeMap::new() }
    }

    pub fn basis(catalog: Catalog, index: usize) -> Self {
        Self::from_coefficients(catalog, [(index, GaussianRational::one())])
    }

    pub fn from_coefficients(
        catalog: Catalog,
        coeffs: impl IntoIterator<Item = (usize, GaussianRational)>,
    ) -> Self {
        let mut el = Self::zero(catalog);
        for (i, c) in coeffs {
            el.add(i, &c);
        }
        el
    }

    /// From a dense 0-based coefficient vector.
    pub fn from_dense(catalog: Catalog, dense: &[GaussianRational]) -> Self {
        Self::from_coefficients(catalog, dense.iter().enumerate().map(|(i, c)| (i + 1, c.clone())))
    }

    fn add(&mut self, index: usize, c: &GaussianRational) {
        let entry = self.coeffs.entry(index).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn coefficient(&self, index: usize) -> GaussianRational {
        self.coeffs.get(&index).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_operator(&self) -> DiffOperator {
        let basis = self.catalog.basis();
        self.coeffs
            .iter()
            .fold(DiffOperator::zero(), |acc, (i, c)| &acc + &basis[i - 1].scale(c))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let mut label = self.catalog.label(*i);
            let compound = label.contains(['+', '-']);
            let minus_one = *c == GaussianRational::real(-1);
            if compound && !c.is_one() {
                label = format!("({label})");
            }
            let term = if c.is_one() {
                label
            } else if minus_one {
                format!("-{label}")
            } else {
                format!("{}*{label}", coefficient_text(c))
            };
            if n > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (i, c) in &self.coeffs {
            map.serialize_entry(&self.catalog.label(*i), &c.to_string())?;
        }
        map.end()
    }
}

/// `[bᵢ, bⱼ]` for all `i < j`, expressed in the catalog basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    pub catalog: Catalog,
    pub entries: BTreeMap<(usize, usize), AlgebraElement>,
}

impl CommutatorTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&AlgebraElement> {
        self.entries.get(&(i, j))
    }
}

#[derive(Serialize)]
struct PairRow<'a> {
    i: usize,
    j: usize,
    result: &'a AlgebraElement,
}

impl Serialize for CommutatorTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<PairRow> =
            self.entries.iter().map(|(&(i, j), result)| PairRow { i, j, result }).collect();
        let mut st = serializer.serialize_struct("CommutatorTable", 2)?;
        st.serialize_field("catalog", &self.catalog)?;
        st.serialize_field("pairs", &pairs)?;
        st.end()
    }
}

fn coords(ops: &[DiffOperator]) -> Vec<SparseVector<(super::poly::Var, super::poly::Monomial)>> {
    ops.iter().map(DiffOperator::coordinates).collect()
}

/// Dense coefficients of `target` in `span(ops)`, if it lies there.
pub fn express(ops: &[DiffOperator], target: &DiffOperator) -> Option<Vec<GaussianRational>> {
    express_in_span(&coords(ops), &target.coordinates())
}

pub fn commutator_table(catalog: Catalog) -> Result<CommutatorTable, SymopError> {
    let basis = catalog.basis();
    let mut entries = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let c = commutator(&basis[i], &basis[j]);
            let dense = express(&basis, &c).ok_or(SymopError::NotClosed { witness: c })?;
            entries.insert((i + 1, j + 1), AlgebraElement::from_dense(catalog, &dense));
        }
    }
    Ok(CommutatorTable { catalog, entries })
}

/// A commutator that leaves the span, with the 0-based positions producing it.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureWitness {
    pub i: usize,
    pub j: usize,
    pub commutator: DiffOperator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Closure {
    pub closed: bool,
    pub witness: Option<ClosureWitness>,
}

/// Whether every pairwise commutator lies in the linear span of `ops`.
///
/// Pairs are scanned column by column (`j` ascending, then `i < j`), and the
/// first commutator outside the span is returned as the witness.
pub fn is_closed(ops: &[DiffOperator]) -> Closure {
    let basis = coords(ops);
    for j in 0..ops.len() {
        for i in 0..j {
            let c = commutator(&ops[i], &ops[j]);
            if express_in_span(&basis, &c.coordinates()).is_none() {
                return Closure { closed: false, witness: Some(ClosureWitness { i, j, commutator: c }) };
            }
        }
    }
    Closure { closed: true, witness: None }
}

/// `c[i][j][k]` with `[bᵢ, bⱼ] = Σₖ c_{ij}^k bₖ` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<GaussianRational>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &GaussianRational {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| *self.get(i, j, k) == -self.get(j, i, k)))
        })
    }
}

pub fn structure_constants(basis: &[DiffOperator]) -> Result<StructureConstants, SymopError> {
    let vectors = coords(basis);
    if rank(&vectors) != basis.len() {
        return Err(SymopError::DependentBasis);
    }
    let n = basis.len();
    let mut data = vec![GaussianRational::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let c = commutator(&basis[i], &basis[j]);
            let dense =
                express_in_span(&vectors, &c.coordinates()).ok_or(SymopError::NotClosed { witness: c })?;
            for (k, v) in dense.into_iter().enumerate() {
                data[(i * n + j) * n + k] = v;
            }
        }
    }
    Ok(StructureConstants { dim: n, data })
}

/// Adjoint matrices with `ad(bᵢ)[k][j] = c_{ij}^k`, i.e. `ad(bᵢ)` maps the
/// coordinate column of `bⱼ` to that of `[bᵢ, bⱼ]`.
pub fn adjoint_rep(basis: &[DiffOperator]) -> Result<Vec<SquareMatrix<GaussianRational>>, SymopError> {
    let sc = structure_constants(basis)?;
    Ok(adjoint_from_constants(&sc))
}

pub fn adjoint_from_constants(sc: &StructureConstants) -> Vec<SquareMatrix<GaussianRational>> {
    let n = sc.dim();
    (0..n)
        .map(|i| {
            let mut m = SquareMatrix::zeros(n);
            for j in 0..n {
                for k in 0..n {
                    m.set(k, j, sc.get(i, j, k).clone());
                }
            }
            m
        })
        .collect()
}

/// Checks `[ad bᵢ, ad bⱼ] = Σₖ c_{ij}^k ad bₖ` for all pairs.
pub fn adjoint_is_representation(
    sc: &StructureConstants,
    ads: &[SquareMatrix<GaussianRational>],
) -> bool {
    let n = sc.dim();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = ads[i].commutator(&ads[j]);
            let rhs = (0..n).fold(SquareMatrix::zeros(n), |acc, k| acc + ads[k].scale(sc.get(i, j, k)));
            lhs == rhs
        })
    })
}

/// Whether `span{basis[s] : s ∈ subset}` (0-based) is an ideal of `span(basis)`.
pub fn ideal_check(basis: &[DiffOperator], subset_indices: &[usize]) -> bool {
    let ideal: Vec<DiffOperator> = subset_indices.iter().map(|&s| basis[s].clone()).collect();
    let ideal_coords = coords(&ideal);
    basis.iter().all(|b| {
        ideal
            .iter()
            .all(|s| express_in_span(&ideal_coords, &commutator(b, s).coordinates()).is_some())
    })
}

/// Triples `(i, j, k)`, `i < j < k`, where the Jacobi identity fails.
pub fn jacobi_violations(ops: &[DiffOperator]) -> Vec<(usize, usize, usize)> {
    let mut bad = Vec::new();
    let n = ops.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&ops[i], &ops[j], &ops[k]);
                let sum = &(&commutator(a, &commutator(b, c)) + &commutator(b, &commutator(c, a)))
                    + &commutator(c, &commutator(a, b));
                if !sum.is_zero() {
                    bad.push((i, j, k));
                }
            }
        }
    }
    bad
}

/// Whether some ordering `(X, Y, Z)` of the three operators satisfies
/// `[X, Y] = Z ≠ 0` and `[Z, X] = [Z, Y] = 0`.
pub fn is_heisenberg_triple(ops: &[DiffOperator; 3]) -> bool {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    ORDERS.iter().any(|&[x, y, z]| {
        let (x, y, z) = (&ops[x], &ops[y], &ops[z]);
        !z.is_zero()
            && commutator(x, y) == *z
            && commutator(z, x).is_zero()
            && commutator(z, y).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symop::catalog::generator;

    fn gq(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn op(s: &str) -> DiffOperator {
        s.parse().unwrap()
    }

    fn x(i: usize) -> DiffOperator {
        generator(Catalog::X, i).unwrap()
    }

    #[test]
    fn x_table_spot_checks() {
        let t = commutator_table(Catalog::X).unwrap();
        assert_eq!(t.entries.len(), 15);
        assert_eq!(t.get(1, 2).unwrap(), &AlgebraElement::basis(Catalog::X, 1));
        assert_eq!(t.get(4, 5).unwrap(), &AlgebraElement::basis(Catalog::X, 4));
        let x5_minus_x2 =
            AlgebraElement::from_coefficients(Catalog::X, [(5, gq("1")), (2, gq("-1"))]);
        assert_eq!(t.get(3, 6).unwrap(), &x5_minus_x2);
        assert_eq!(x5_minus_x2.to_string(), "-x2+x5");
    }

    #[test]
    fn sl2_and_g_spot_checks() {
        let sl2 = commutator_table(Catalog::Sl2).unwrap();
        assert_eq!(sl2.get(1, 2).unwrap(), &AlgebraElement::basis(Catalog::Sl2, 3));
        let g = commutator_table(Catalog::G).unwrap();
        assert!(g.get(5, 6).unwrap().is_zero());
        // differential g-generators: [g1, g2] = −2i g3
        assert_eq!(g.get(1, 2).unwrap(), &AlgebraElement::from_coefficients(Catalog::G, [(3, gq("-2i"))]));
    }

    #[test]
    fn closure_examples() {
        assert!(is_closed(&Catalog::X.basis()).closed);
        assert!(is_closed(&[op("dz")]).closed);
        assert!(is_closed(&[]).closed);

        let mut both = Catalog::X.basis();
        both.extend(Catalog::XBar.basis());
        let c = is_closed(&both);
        assert!(!c.closed);
        let w = c.witness.unwrap();
        assert_eq!(w.commutator, op("z*dzbar"));
        assert_eq!((w.i, w.j), (5, 8));
    }

    #[test]
    fn not_closed_table_reports_witness() {
        let err = structure_constants(&[op("dz"), op("z^2*dz")]).unwrap_err();
        assert_eq!(err, SymopError::NotClosed { witness: op("2*z*dz") });
    }

    #[test]
    fn structure_constant_examples() {
        let sc = structure_constants(&Catalog::X.basis()).unwrap();
        assert_eq!(sc.get(0, 1, 0), &gq("1"));
        for k in 1..6 {
            assert!(sc.get(0, 1, k).is_zero());
        }
        assert_eq!(sc.get(2, 5, 4), &gq("1"));
        assert_eq!(sc.get(2, 5, 1), &gq("-1"));
        assert!(sc.is_antisymmetric());

        let abelian = structure_constants(&[op("dz"), op("dzeta")]).unwrap();
        assert!(abelian.is_zero());
        assert_eq!(structure_constants(&[op("dz"), op("2*dz")]), Err(SymopError::DependentBasis));
    }

    #[test]
    fn adjoint_examples() {
        let basis = Catalog::X.basis();
        let ads = adjoint_rep(&basis).unwrap();
        let ad1 = &ads[0];
        let nonzero: Vec<(usize, usize)> = (0..6)
            .flat_map(|r| (0..6).map(move |c| (r, c)))
            .filter(|&(r, c)| !ad1.get(r, c).is_zero())
            .collect();
        // c₁₂¹ = 1 and c₁₆⁴ = 1, stored at (row k, col j)
        assert_eq!(nonzero, vec![(0, 1), (3, 5)]);
        let sc = structure_constants(&basis).unwrap();
        assert!(adjoint_is_representation(&sc, &ads));

        let abelian = adjoint_rep(&[op("dz"), op("dzeta")]).unwrap();
        assert!(abelian.iter().all(SquareMatrix::is_zero));
    }

    #[test]
    fn ideal_examples() {
        let basis = Catalog::X.basis();
        assert!(ideal_check(&basis, &[0, 3]));
        assert!(!ideal_check(&basis, &[1]));
        assert!(ideal_check(&basis, &[0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn jacobi_on_catalogs() {
        for c in Catalog::ALL {
            assert!(jacobi_violations(&c.basis()).is_empty(), "{c}");
        }
    }

    #[test]
    fn heisenberg_binding() {
        assert!(is_heisenberg_triple(&[x(1), x(4), x(3)]));
        assert!(is_heisenberg_triple(&[x(1), x(4), x(6)]));
        assert!(!is_heisenberg_triple(&[op("dz"), op("dzeta"), op("z*dz")]));
        assert!(!is_heisenberg_triple(&[op("dz"), op("dzeta"), op("zeta*dzeta")]));
    }

    #[test]
    fn element_display() {
        let e = AlgebraElement::from_coefficients(Catalog::Sl2, [(3, gq("2"))]);
        assert_eq!(e.to_string(), "2*(x5-x2)");
        let g = AlgebraElement::from_coefficients(Catalog::G, [(3, gq("-2i")), (1, gq("1"))]);
        assert_eq!(g.to_string(), "g1-2i*g3");
        assert_eq!(AlgebraElement::zero(Catalog::X).to_string(), "0");
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"g1":"1","g3":"-2i"}"#);
    }
}
