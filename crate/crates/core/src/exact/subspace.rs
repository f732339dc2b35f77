//! Subspaces of coordinate space in reduced row echelon form.
//!
//! The echelon basis is a canonical form, so subspace equality is plain
//! structural equality of the bases.

use super::cyclo::Cyclo;
use crate::error::{QgError, QgResult};

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// RREF rows, pivots strictly increasing, pivot entries 1, pivot columns
    /// cleared elsewhere.
    basis: Vec<Vec<Cyclo>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Cyclo::zero(); ambient];
                v[i] = Cyclo::one();
                v
            })
            .collect();
        Subspace { ambient, basis }
    }

    /// Span of arbitrary vectors, echelonized.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vec<Cyclo>>) -> QgResult<Subspace> {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(QgError::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Cyclo>] {
        &self.basis
    }

    /// Reduces `v` against the basis, returning the residual.
    pub fn reduce(&self, mut v: Vec<Cyclo>) -> Vec<Cyclo> {
        for row in &self.basis {
            let p = pivot_of(row).expect("basis rows are nonzero");
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[Cyclo]) -> bool {
        self.reduce(v.to_vec()).iter().all(Cyclo::is_zero)
    }

    /// Inserts a vector into the echelon basis; returns true if dim grew.
    pub fn insert(&mut self, v: Vec<Cyclo>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut v = self.reduce(v);
        let Some(p) = pivot_of(&v) else { return false };
        // Normalize pivot to 1.
        let inv = v[p].inverse().expect("pivot nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Clear this column in existing rows.
        for row in self.basis.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, r) in row.iter_mut().zip(v.iter()) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        let pos = self
            .basis
            .binary_search_by_key(&p, |row| pivot_of(row).unwrap())
            .unwrap_err();
        self.basis.insert(pos, v);
        true
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v.clone());
        }
        s
    }

    /// Intersection via the kernel of the stacked coefficient system.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let k = self.dim();
        let m = other.dim();
        if k == 0 || m == 0 {
            return Subspace::zero(self.ambient);
        }
        // Solutions (u, v) of u * A - v * B = 0 parametrize the intersection
        // as u * A. Build the (k+m) x ambient matrix with rows A then -B and
        // take its left kernel.
        let mut rows: Vec<Vec<Cyclo>> = Vec::with_capacity(k + m);
        for r in &self.basis {
            rows.push(r.clone());
        }
        for r in &other.basis {
            rows.push(r.iter().map(|c| c.neg()).collect());
        }
        let kernel = left_kernel(&rows, self.ambient);
        let mut out = Subspace::zero(self.ambient);
        for coeffs in kernel {
            let mut vec = vec![Cyclo::zero(); self.ambient];
            for (i, c) in coeffs.iter().take(k).enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (x, b) in vec.iter_mut().zip(self.basis[i].iter()) {
                    if !b.is_zero() {
                        *x = &*x + &(c * b);
                    }
                }
            }
            out.insert(vec);
        }
        out
    }
}

fn pivot_of(v: &[Cyclo]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

/// Left kernel of the row list: all coefficient vectors `u` with `u * rows = 0`.
pub fn left_kernel(rows: &[Vec<Cyclo>], width: usize) -> Vec<Vec<Cyclo>> {
    // Transpose to columns and compute the right kernel of the transpose,
    // i.e. standard RREF with free-variable back-substitution.
    let n = rows.len();
    if n == 0 {
        return Vec::new();
    }
    // Matrix M with M[i][j] = rows[j][i]  (width x n); kernel of M.
    let mut m: Vec<Vec<Cyclo>> = (0..width)
        .map(|i| rows.iter().map(|r| r[i].clone()).collect())
        .collect();
    right_kernel_inplace(&mut m, n)
}

/// Right kernel of an explicit matrix given as rows.
pub fn right_kernel(matrix_rows: &[Vec<Cyclo>], cols: usize) -> Vec<Vec<Cyclo>> {
    let mut m: Vec<Vec<Cyclo>> = matrix_rows.to_vec();
    right_kernel_inplace(&mut m, cols)
}

fn right_kernel_inplace(m: &mut [Vec<Cyclo>], cols: usize) -> Vec<Vec<Cyclo>> {
    let rows = m.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let mut sel = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(r, sel);
        let inv = m[r][c].inverse().expect("pivot nonzero");
        for j in c..cols {
            if !m[r][j].is_zero() {
                m[r][j] = &m[r][j] * &inv;
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Cyclo::zero(); cols];
        v[free] = Cyclo::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            if !m[row_idx][free].is_zero() {
                v[pc] = m[row_idx][free].neg();
            }
        }
        kernel.push(v);
    }
    kernel
}

/// Coordinate solver for a fixed list of linearly independent vectors:
/// answers "express v in this basis" without re-eliminating each time.
#[derive(Clone)]
pub struct SpanSolver {
    ambient: usize,
    /// Rows (reduced echelon) paired with the coefficients expressing each
    /// row in the original vector list.
    rows: Vec<(Vec<Cyclo>, Vec<Cyclo>)>,
    n: usize,
}

impl SpanSolver {
    /// Vectors must be linearly independent.
    pub fn new(vectors: Vec<Vec<Cyclo>>) -> QgResult<SpanSolver> {
        let n = vectors.len();
        let ambient = vectors.first().map_or(0, |v| v.len());
        let mut solver = SpanSolver { ambient, rows: Vec::new(), n };
        for (idx, v) in vectors.into_iter().enumerate() {
            if v.len() != ambient {
                return Err(QgError::DimensionMismatch { expected: ambient, found: v.len() });
            }
            let mut coeff = vec![Cyclo::zero(); n];
            coeff[idx] = Cyclo::one();
            let (mut v, mut coeff) = solver.reduce_tracked(v, coeff);
            let Some(p) = pivot_of(&v) else {
                return Err(QgError::InvalidInput("span solver needs independent vectors".into()));
            };
            let inv = v[p].inverse().expect("pivot nonzero");
            for x in v.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            for c in coeff.iter_mut() {
                if !c.is_zero() {
                    *c = &*c * &inv;
                }
            }
            // Eliminate the new pivot from existing rows.
            for (row, rc) in solver.rows.iter_mut() {
                if !row[p].is_zero() {
                    let f = row[p].clone();
                    for (x, y) in row.iter_mut().zip(v.iter()) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                    for (x, y) in rc.iter_mut().zip(coeff.iter()) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                }
            }
            solver.rows.push((v, coeff));
            solver.rows.sort_by_key(|(row, _)| pivot_of(row).unwrap());
        }
        Ok(solver)
    }

    fn reduce_tracked(&self, mut v: Vec<Cyclo>, mut coeff: Vec<Cyclo>) -> (Vec<Cyclo>, Vec<Cyclo>) {
        for (row, rc) in &self.rows {
            let p = pivot_of(row).expect("rows nonzero");
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
                for (x, y) in coeff.iter_mut().zip(rc.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        (v, coeff)
    }

    /// Coordinates of `v` in the original vector list, or None if outside.
    pub fn coords(&self, v: &[Cyclo]) -> Option<Vec<Cyclo>> {
        let mut combo = vec![Cyclo::zero(); self.n];
        let mut v = v.to_vec();
        for (row, rc) in &self.rows {
            let p = pivot_of(row).expect("rows nonzero");
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row.iter()) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
                for (c, y) in combo.iter_mut().zip(rc.iter()) {
                    if !y.is_zero() {
                        *c = &*c + &(&f * y);
                    }
                }
            }
        }
        if v.iter().all(Cyclo::is_zero) {
            Some(combo)
        } else {
            None
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Subspace dim {} in {} [", self.dim(), self.ambient)?;
        for row in &self.basis {
            let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Cyclo> {
        xs.iter().map(|&x| Cyclo::from_int(x)).collect()
    }

    #[test]
    fn dependent_vectors_collapse() {
        let s = Subspace::from_vectors(2, vec![v(&[1, 0]), v(&[2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], v(&[1, 0]));
    }

    #[test]
    fn empty_span_is_zero() {
        let s = Subspace::from_vectors(3, Vec::<Vec<Cyclo>>::new()).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn invertible_pair_fills_plane() {
        let s = Subspace::from_vectors(2, vec![v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, Subspace::full(2));
    }

    #[test]
    fn axes_intersect_trivially() {
        let x = Subspace::from_vectors(2, vec![v(&[1, 0])]).unwrap();
        let y = Subspace::from_vectors(2, vec![v(&[0, 1])]).unwrap();
        assert_eq!(x.intersect(&y).dim(), 0);
    }

    #[test]
    fn full_contains_everything() {
        let s = Subspace::from_vectors(3, vec![v(&[1, 2, 3])]).unwrap();
        assert!(Subspace::full(3).contains(&s));
    }

    #[test]
    fn hand_solved_intersection() {
        // span{(1,1,0),(0,0,1)} meets span{(1,1,1)} exactly in span{(1,1,1)}.
        let a = Subspace::from_vectors(3, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let b = Subspace::from_vectors(3, vec![v(&[1, 1, 1])]).unwrap();
        let i = a.intersect(&b);
        assert_eq!(i, b);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let r = Subspace::from_vectors(2, vec![v(&[1, 0, 0])]);
        assert!(matches!(r, Err(QgError::DimensionMismatch { .. })));
    }

    #[test]
    fn echelonize_is_projection() {
        let s = Subspace::from_vectors(3, vec![v(&[2, 4, 6]), v(&[1, 1, 1])]).unwrap();
        let again = Subspace::from_vectors(3, s.basis().to_vec()).unwrap();
        assert_eq!(s, again);
    }
}
