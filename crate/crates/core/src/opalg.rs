//! Finite-dimensional operator algebra toolkit: *-algebra generation,
//! commutants and centers on a Hilbert space with an exact inner product.
//!
//! A von Neumann subalgebra means a unital *-closed subalgebra here; weak
//! closure is automatic in finite dimensions.

use crate::exact::subspace::left_kernel;
use crate::exact::{Cyclo, Mat, Subspace};
use crate::error::{QgError, QgResult};

pub mod structure;

/// The ambient Hilbert space data: dimension and Gram matrix of the chosen
/// basis. Operator adjoints are taken with respect to this inner product.
#[derive(Clone, Debug)]
pub struct Ambient {
    dim: usize,
    gram: Mat,
    gram_inv: Mat,
}

impl Ambient {
    pub fn orthonormal(dim: usize) -> Ambient {
        Ambient { dim, gram: Mat::identity(dim), gram_inv: Mat::identity(dim) }
    }

    /// Gram matrix must be Hermitian and invertible; positivity is the
    /// caller's concern (checked where states are validated).
    pub fn with_gram(gram: Mat, gram_inv: Mat) -> Ambient {
        assert!(gram.is_square());
        Ambient { dim: gram.rows(), gram, gram_inv }
    }

    /// Tensor product space with the Kronecker Gram matrix.
    pub fn tensor(&self, other: &Ambient) -> Ambient {
        Ambient {
            dim: self.dim * other.dim,
            gram: self.gram.kron(&other.gram),
            gram_inv: self.gram_inv.kron(&other.gram_inv),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Operator adjoint: G^-1 T^H G.
    pub fn adjoint(&self, t: &Mat) -> Mat {
        self.gram_inv.mul(&t.conj_transpose()).mul(&self.gram)
    }

    pub fn is_unitary(&self, t: &Mat) -> bool {
        let id = Mat::identity(self.dim);
        let ta = self.adjoint(t);
        ta.mul(t) == id && t.mul(&ta) == id
    }

    /// <u, v> = u^H G v (conjugate-linear in the first slot).
    pub fn inner(&self, u: &[Cyclo], v: &[Cyclo]) -> Cyclo {
        let gv = self.gram.apply(v);
        let mut acc = Cyclo::zero();
        for (a, b) in u.iter().zip(gv.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(&a.conj() * b);
            }
        }
        acc
    }
}

/// A linear subspace of operators on a `dim`-dimensional space, held in
/// canonical echelon form, with structural flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorSubspace {
    dim: usize,
    space: Subspace,
    star_closed: bool,
    algebra: bool,
    unital: bool,
}

impl OperatorSubspace {
    pub fn from_operators(ambient: &Ambient, ops: &[Mat]) -> OperatorSubspace {
        let dim = ambient.dim();
        let space = Subspace::from_vectors(dim * dim, ops.iter().map(|m| m.vectorize()))
            .expect("operator shape mismatch");
        Self::from_space(ambient, space)
    }

    pub fn from_space(ambient: &Ambient, space: Subspace) -> OperatorSubspace {
        let dim = ambient.dim();
        assert_eq!(space.ambient(), dim * dim);
        let mut s = OperatorSubspace { dim, space, star_closed: false, algebra: false, unital: false };
        s.recompute_flags(ambient);
        s
    }

    pub fn scalars(ambient: &Ambient) -> OperatorSubspace {
        OperatorSubspace::from_operators(ambient, &[Mat::identity(ambient.dim())])
    }

    pub fn full(ambient: &Ambient) -> OperatorSubspace {
        let dim = ambient.dim();
        OperatorSubspace {
            dim,
            space: Subspace::full(dim * dim),
            star_closed: true,
            algebra: true,
            unital: true,
        }
    }

    fn recompute_flags(&mut self, ambient: &Ambient) {
        let ops = self.operators();
        self.unital = self.space.contains_vector(&Mat::identity(self.dim).vectorize());
        self.star_closed = ops
            .iter()
            .all(|t| self.space.contains_vector(&ambient.adjoint(t).vectorize()));
        self.algebra = ops.iter().all(|a| {
            ops.iter()
                .all(|b| self.space.contains_vector(&a.mul(b).vectorize()))
        });
    }

    pub fn hilbert_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn is_star_closed(&self) -> bool {
        self.star_closed
    }

    pub fn is_algebra(&self) -> bool {
        self.algebra
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// The echelon basis as matrices.
    pub fn operators(&self) -> Vec<Mat> {
        self.space
            .basis()
            .iter()
            .map(|v| Mat::from_vector(self.dim, self.dim, v))
            .collect()
    }

    pub fn contains_op(&self, t: &Mat) -> bool {
        self.space.contains_vector(&t.vectorize())
    }

    pub fn contains(&self, other: &OperatorSubspace) -> bool {
        self.space.contains(&other.space)
    }

    pub fn equals(&self, other: &OperatorSubspace) -> bool {
        self.space == other.space
    }

    pub fn intersect(&self, ambient: &Ambient, other: &OperatorSubspace) -> OperatorSubspace {
        OperatorSubspace::from_space(ambient, self.space.intersect(&other.space))
    }

    pub fn sum(&self, ambient: &Ambient, other: &OperatorSubspace) -> OperatorSubspace {
        OperatorSubspace::from_space(ambient, self.space.sum(&other.space))
    }

    /// True when every pair of basis elements commutes.
    pub fn is_abelian(&self) -> bool {
        let ops = self.operators();
        ops.iter()
            .enumerate()
            .all(|(i, a)| ops[i..].iter().all(|b| a.commutator(b).is_zero()))
    }
}

/// Smallest unital *-closed algebra containing the generators.
///
/// Adjoints are adjoined up front; a *-closed generating set stays *-closed
/// under span-and-multiply closure, so the loop only multiplies.
pub fn generate_algebra(ambient: &Ambient, generators: &[Mat], unital: bool) -> QgResult<OperatorSubspace> {
    let dim = ambient.dim();
    for g in generators {
        if g.rows() != dim || g.cols() != dim {
            return Err(QgError::DimensionMismatch { expected: dim, found: g.rows() });
        }
    }
    let mut seed: Vec<Mat> = Vec::new();
    if unital {
        seed.push(Mat::identity(dim));
    }
    for g in generators {
        seed.push(g.clone());
        seed.push(ambient.adjoint(g));
    }
    let mut space = Subspace::from_vectors(dim * dim, seed.iter().map(|m| m.vectorize()))?;
    loop {
        let basis: Vec<Mat> = space
            .basis()
            .iter()
            .map(|v| Mat::from_vector(dim, dim, v))
            .collect();
        let mut grew = false;
        for a in &basis {
            for b in &basis {
                let p = a.mul(b).vectorize();
                if space.insert(p) {
                    grew = true;
                }
            }
        }
        if !grew || space.dim() == dim * dim {
            break;
        }
    }
    Ok(OperatorSubspace::from_space(ambient, space))
}

/// Commutant of a set of operators inside the full algebra.
pub fn commutant(ambient: &Ambient, n: &OperatorSubspace) -> OperatorSubspace {
    let d = n.hilbert_dim();
    let basis = n.operators();
    if basis.is_empty() {
        return OperatorSubspace::full(ambient);
    }
    // Solve [x, a] = 0 for all basis a: rows = linearized constraints, one
    // group of d^2 equations per basis element; unknowns are the entries of x.
    let mut rows: Vec<Vec<Cyclo>> = Vec::new();
    for a in &basis {
        // Constraint matrix C with C[(p,q), (i,j)] = coefficient of x_ij in
        // (x a - a x)_pq = sum_j x_pj a_jq - sum_i a_pi x_iq.
        for p in 0..d {
            for q in 0..d {
                let mut row = vec![Cyclo::zero(); d * d];
                for j in 0..d {
                    let c = &a[(j, q)];
                    if !c.is_zero() {
                        row[p * d + j] = &row[p * d + j] + c;
                    }
                }
                for i in 0..d {
                    let c = &a[(p, i)];
                    if !c.is_zero() {
                        row[i * d + q] = &row[i * d + q] - c;
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = crate::exact::subspace::right_kernel(&rows, d * d);
    let space = Subspace::from_vectors(d * d, kernel).expect("kernel vectors well-formed");
    OperatorSubspace::from_space(ambient, space)
}

/// N' intersected with M.
pub fn relative_commutant(
    ambient: &Ambient,
    n: &OperatorSubspace,
    m: &OperatorSubspace,
) -> OperatorSubspace {
    commutant(ambient, n).intersect(ambient, m)
}

/// Center of an algebra: its relative commutant in itself.
pub fn center_of_algebra(ambient: &Ambient, n: &OperatorSubspace) -> QgResult<OperatorSubspace> {
    if !n.is_algebra() {
        return Err(QgError::InvalidInput("not an algebra".into()));
    }
    Ok(relative_commutant(ambient, n, n))
}

/// Expresses `t` in the span of `basis_ops`, if possible.
pub fn coordinates_in(basis_ops: &[Mat], t: &Mat) -> Option<Vec<Cyclo>> {
    let width = t.rows() * t.cols();
    let mut rows: Vec<Vec<Cyclo>> = basis_ops.iter().map(|m| m.vectorize()).collect();
    rows.push(t.vectorize().iter().map(|c| c.neg()).collect());
    // Coefficients u with sum u_i basis_i - t = 0 and coefficient 1 on t.
    let kernel = left_kernel(&rows, width);
    let k = basis_ops.len();
    for v in kernel {
        if !v[k].is_zero() {
            let inv = v[k].inverse().ok()?;
            return Some(v[..k].iter().map(|c| c * &inv).collect());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(d, d);
        m[(i, j)] = Cyclo::one();
        m
    }

    #[test]
    fn single_matrix_unit_generates_m2() {
        // Hand closure: E12, E21 = E12*, E11 = E12 E21, E22 = E21 E12.
        let amb = Ambient::orthonormal(2);
        let alg = generate_algebra(&amb, &[unit(2, 0, 1)], true).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.is_algebra() && alg.is_star_closed() && alg.is_unital());
    }

    #[test]
    fn empty_generators_give_scalars() {
        let amb = Ambient::orthonormal(3);
        let alg = generate_algebra(&amb, &[], true).unwrap();
        assert_eq!(alg.dim(), 1);
        assert!(alg.is_unital());
    }

    #[test]
    fn selfadjoint_diagonal_generator() {
        let amb = Ambient::orthonormal(2);
        let mut g = Mat::zeros(2, 2);
        g[(0, 0)] = Cyclo::one();
        g[(1, 1)] = Cyclo::from_int(-1);
        let alg = generate_algebra(&amb, &[g], true).unwrap();
        assert_eq!(alg.dim(), 2);
    }

    #[test]
    fn schur_commutants() {
        let amb = Ambient::orthonormal(2);
        let full = OperatorSubspace::full(&amb);
        assert_eq!(commutant(&amb, &full).dim(), 1);
        let scalars = OperatorSubspace::scalars(&amb);
        assert_eq!(commutant(&amb, &scalars).dim(), 4);
    }

    #[test]
    fn diagonal_commutant_is_diagonal() {
        // Solving x a = a x for a = diag(1,2,3) forces x diagonal.
        let amb = Ambient::orthonormal(3);
        let mut a = Mat::zeros(3, 3);
        for i in 0..3 {
            a[(i, i)] = Cyclo::from_int(i as i64 + 1);
        }
        let diag = generate_algebra(&amb, &[a], true).unwrap();
        assert_eq!(diag.dim(), 3);
        let c = commutant(&amb, &diag);
        assert!(c.equals(&diag));
    }

    #[test]
    fn relative_commutant_examples() {
        let amb = Ambient::orthonormal(2);
        // Abelian algebra is its own relative commutant.
        let mut a = Mat::zeros(2, 2);
        a[(0, 0)] = Cyclo::one();
        a[(1, 1)] = Cyclo::from_int(-1);
        let diag = generate_algebra(&amb, &[a], true).unwrap();
        assert!(relative_commutant(&amb, &diag, &diag).equals(&diag));
        // Full algebra has scalar relative commutant in anything.
        let full = OperatorSubspace::full(&amb);
        assert_eq!(relative_commutant(&amb, &full, &full).dim(), 1);
        // Diagonal vs span{1, E12+E21}: intersecting leaves the scalars.
        let x = unit(2, 0, 1).add(&unit(2, 1, 0));
        let span = OperatorSubspace::from_operators(&amb, &[Mat::identity(2), x]);
        let rc = relative_commutant(&amb, &diag, &span);
        assert_eq!(rc.dim(), 1);
        assert!(rc.contains_op(&Mat::identity(2)));
    }

    #[test]
    fn centers() {
        let amb = Ambient::orthonormal(2);
        let full = OperatorSubspace::full(&amb);
        assert_eq!(center_of_algebra(&amb, &full).unwrap().dim(), 1);
        let mut a = Mat::zeros(2, 2);
        a[(0, 0)] = Cyclo::one();
        let diag = generate_algebra(&amb, &[a], true).unwrap();
        assert!(center_of_algebra(&amb, &diag).unwrap().equals(&diag));
        // Non-algebra input is rejected: (E01 + E10)^2 = 1 leaves the span.
        let x = unit(2, 0, 1).add(&unit(2, 1, 0));
        let not_alg = OperatorSubspace::from_operators(&amb, &[x]);
        assert!(!not_alg.is_algebra());
        assert!(center_of_algebra(&amb, &not_alg).is_err());
    }

    #[test]
    fn bicommutant_on_generated_algebras() {
        let amb = Ambient::orthonormal(3);
        let gens = vec![unit(3, 0, 1), unit(3, 1, 2)];
        let alg = generate_algebra(&amb, &gens, true).unwrap();
        let bi = commutant(&amb, &commutant(&amb, &alg));
        assert!(bi.equals(&alg));
    }

    #[test]
    fn coordinates_solver() {
        let a = unit(2, 0, 0);
        let b = unit(2, 1, 1);
        let t = a.add(&b.scale(&Cyclo::from_int(5)));
        let coords = coordinates_in(&[a.clone(), b.clone()], &t).unwrap();
        assert_eq!(coords[0], Cyclo::one());
        assert_eq!(coords[1], Cyclo::from_int(5));
        assert!(coordinates_in(&[a], &unit(2, 0, 1)).is_none());
    }
}
