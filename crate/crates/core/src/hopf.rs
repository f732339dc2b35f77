//! Finite-dimensional Hopf *-algebras with Haar state, given by structure
//! constants, with exact validation of every axiom.

use crate::error::{QgError, QgResult};
use crate::exact::realsign;
use crate::exact::{Cyclo, Mat};

pub mod coreps;
pub mod realize;

/// Structure constants of a finite-dimensional Hopf *-algebra with a
/// distinguished state expected to be Haar.
#[derive(Clone, PartialEq, Eq)]
pub struct HopfData {
    pub name: String,
    dim: usize,
    basis_names: Vec<String>,
    /// `mult[i][j]` is the coefficient vector of `e_i e_j`.
    mult: Vec<Vec<Vec<Cyclo>>>,
    unit: Vec<Cyclo>,
    /// `comult[i]` is the coefficient vector of `Delta(e_i)` over the basis
    /// `e_j (x) e_k` ordered as `j*dim + k`.
    comult: Vec<Vec<Cyclo>>,
    counit: Vec<Cyclo>,
    /// Column convention: `S(e_i) = sum_j antipode[(j,i)] e_j`.
    antipode: Mat,
    /// Conjugate-linear star; `(sum c_i e_i)* = sum conj(c_i) star(e_i)` with
    /// `star(e_i) = sum_j star[(j,i)] e_j`.
    star: Mat,
    haar: Vec<Cyclo>,
}

impl HopfData {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        mult: Vec<Vec<Vec<Cyclo>>>,
        unit: Vec<Cyclo>,
        comult: Vec<Vec<Cyclo>>,
        counit: Vec<Cyclo>,
        antipode: Mat,
        star: Mat,
        haar: Vec<Cyclo>,
    ) -> QgResult<HopfData> {
        let dim = basis_names.len();
        let shape_ok = mult.len() == dim
            && mult.iter().all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim))
            && unit.len() == dim
            && comult.len() == dim
            && comult.iter().all(|v| v.len() == dim * dim)
            && counit.len() == dim
            && antipode.rows() == dim
            && antipode.cols() == dim
            && star.rows() == dim
            && star.cols() == dim
            && haar.len() == dim;
        if !shape_ok {
            return Err(QgError::InvalidInput("structure constant shapes are inconsistent".into()));
        }
        Ok(HopfData { name: name.into(), dim, basis_names, mult, unit, comult, counit, antipode, star, haar })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn unit_vec(&self) -> &[Cyclo] {
        &self.unit
    }

    pub fn counit_vec(&self) -> &[Cyclo] {
        &self.counit
    }

    pub fn haar_vec(&self) -> &[Cyclo] {
        &self.haar
    }

    pub fn comult_row(&self, i: usize) -> &[Cyclo] {
        &self.comult[i]
    }

    pub fn mult_coeffs(&self, i: usize, j: usize) -> &[Cyclo] {
        &self.mult[i][j]
    }

    pub fn antipode_mat(&self) -> &Mat {
        &self.antipode
    }

    pub fn star_mat(&self) -> &Mat {
        &self.star
    }

    /// Product of coefficient vectors.
    pub fn mul_vec(&self, a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
        let mut out = vec![Cyclo::zero(); self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Coproduct of a coefficient vector, over the e_j (x) e_k basis.
    pub fn comult_vec(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        let mut out = vec![Cyclo::zero(); self.dim * self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (p, c) in self.comult[i].iter().enumerate() {
                if !c.is_zero() {
                    out[p] = &out[p] + &(x * c);
                }
            }
        }
        out
    }

    pub fn counit_of(&self, a: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (x, c) in a.iter().zip(self.counit.iter()) {
            if !x.is_zero() && !c.is_zero() {
                acc = &acc + &(x * c);
            }
        }
        acc
    }

    pub fn haar_of(&self, a: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (x, c) in a.iter().zip(self.haar.iter()) {
            if !x.is_zero() && !c.is_zero() {
                acc = &acc + &(x * c);
            }
        }
        acc
    }

    pub fn antipode_vec(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        self.antipode.apply(a)
    }

    /// Conjugate-linear star on coefficient vectors.
    pub fn star_vec(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        let conj: Vec<Cyclo> = a.iter().map(Cyclo::conj).collect();
        self.star.apply(&conj)
    }

    /// Left-multiplication matrix of `a` on the underlying vector space;
    /// this is the GNS representation when the Haar form is positive.
    pub fn left_mult(&self, a: &[Cyclo]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] = &m[(k, j)] + &(x * c);
                    }
                }
            }
        }
        m
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Cyclo> {
        let mut v = vec![Cyclo::zero(); self.dim];
        v[i] = Cyclo::one();
        v
    }

    /// Gram matrix `G[i][j] = h(e_i^* e_j)` of the Haar form.
    pub fn gram(&self) -> Mat {
        let d = self.dim;
        let mut g = Mat::zeros(d, d);
        for i in 0..d {
            let star_i = self.star_vec(&self.basis_vec(i));
            for j in 0..d {
                let prod = self.mul_vec(&star_i, &self.basis_vec(j));
                g[(i, j)] = self.haar_of(&prod);
            }
        }
        g
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    pub fn is_cocommutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| self.comult[i][j * d + k] == self.comult[i][k * d + j]))
        })
    }

    /// Structural dual: basis is the dual basis, product is convolution,
    /// coproduct is the transpose of multiplication. The Haar functional of
    /// the dual is solved for as the unique normalized bi-invariant state.
    pub fn dual(&self) -> QgResult<HopfData> {
        let d = self.dim;
        let names = (0..d).map(|i| format!("{}^", self.basis_names[i])).collect();
        // (f^i f^j)(e_k) = (f^i (x) f^j)(Delta e_k) = comult[k][i*d+j]
        let mut mult = vec![vec![vec![Cyclo::zero(); d]; d]; d];
        #[allow(clippy::needless_range_loop)]
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    mult[i][j][k] = self.comult[k][i * d + j].clone();
                }
            }
        }
        // Delta-hat(f^k)(e_i (x) e_j) = f^k(e_i e_j)
        let mut comult = vec![vec![Cyclo::zero(); d * d]; d];
        #[allow(clippy::needless_range_loop)]
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    comult[k][i * d + j] = self.mult[i][j][k].clone();
                }
            }
        }
        let unit = self.counit.clone();
        let counit = self.unit.clone();
        let antipode = self.antipode.transpose();
        // (f*)(a) = conj(f(S(a)*)): matrix of star-dual = (conj of S then star)
        // acting by precomposition; on dual coordinates this is the entrywise
        // conjugate of (star * antipode) transposed.
        let star = self.star.mul(&self.antipode).conj().transpose();
        // Solve for the dual Haar functional: unique vector with
        // (id (x) h)Delta-hat = h(.) unit-hat and (h (x) id) likewise, h(1)=1.
        let haar = solve_invariant_state(d, &mult, &unit, |i| {
            // iterate over dual basis: comult of dual
            comult[i].clone()
        })?;
        HopfData::new(format!("{}^", self.name), names, mult, unit, comult, counit, antipode, star, haar)
    }

    /// Runs every axiom check and reports each outcome.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        let mut checks = Vec::new();
        let mut push = |name: &str, ok: bool, detail: String| {
            checks.push(CheckResult { name: name.to_string(), passed: ok, detail });
        };

        // Associativity.
        let mut assoc = true;
        'assoc: for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                    let left = self.mul_vec(&ij, &self.basis_vec(k));
                    let jk = self.mul_vec(&self.basis_vec(j), &self.basis_vec(k));
                    let right = self.mul_vec(&self.basis_vec(i), &jk);
                    if left != right {
                        assoc = false;
                        break 'assoc;
                    }
                }
            }
        }
        push("associativity", assoc, String::new());

        // Unit law.
        let unit_ok = (0..d).all(|i| {
            self.mul_vec(&self.unit, &self.basis_vec(i)) == self.basis_vec(i)
                && self.mul_vec(&self.basis_vec(i), &self.unit) == self.basis_vec(i)
        });
        push("unit_law", unit_ok, String::new());

        // Coassociativity: (Delta (x) id)Delta = (id (x) Delta)Delta.
        let mut coassoc = true;
        for i in 0..d {
            let di = &self.comult[i];
            let mut left = vec![Cyclo::zero(); d * d * d];
            let mut right = vec![Cyclo::zero(); d * d * d];
            for j in 0..d {
                for k in 0..d {
                    let c = &di[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    for p in 0..d {
                        for q in 0..d {
                            let cj = &self.comult[j][p * d + q];
                            if !cj.is_zero() {
                                let idx = (p * d + q) * d + k;
                                left[idx] = &left[idx] + &(c * cj);
                            }
                            let ck = &self.comult[k][p * d + q];
                            if !ck.is_zero() {
                                let idx = (j * d + p) * d + q;
                                right[idx] = &right[idx] + &(c * ck);
                            }
                        }
                    }
                }
            }
            if left != right {
                coassoc = false;
                break;
            }
        }
        push("coassociativity", coassoc, String::new());

        // Counit law.
        let counit_ok = (0..d).all(|i| {
            let di = &self.comult[i];
            let mut left = vec![Cyclo::zero(); d];
            let mut right = vec![Cyclo::zero(); d];
            for j in 0..d {
                for k in 0..d {
                    let c = &di[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    if !self.counit[j].is_zero() {
                        left[k] = &left[k] + &(c * &self.counit[j]);
                    }
                    if !self.counit[k].is_zero() {
                        right[j] = &right[j] + &(c * &self.counit[k]);
                    }
                }
            }
            left == self.basis_vec(i) && right == self.basis_vec(i)
        });
        push("counit_law", counit_ok, String::new());

        // Bialgebra laws: Delta and counit are unital algebra maps.
        let delta_unit_ok = {
            let du = self.comult_vec(&self.unit);
            let mut expected = vec![Cyclo::zero(); d * d];
            for j in 0..d {
                for k in 0..d {
                    expected[j * d + k] = &self.unit[j] * &self.unit[k];
                }
            }
            du == expected
        };
        push("comult_unital", delta_unit_ok, String::new());

        let mut delta_mult_ok = true;
        'dm: for i in 0..d {
            for j in 0..d {
                let prod = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let lhs = self.comult_vec(&prod);
                let rhs = self.tensor_mul(&self.comult[i], &self.comult[j]);
                if lhs != rhs {
                    delta_mult_ok = false;
                    break 'dm;
                }
            }
        }
        push("comult_multiplicative", delta_mult_ok, String::new());

        let counit_mult_ok = (0..d).all(|i| {
            (0..d).all(|j| {
                let prod = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                self.counit_of(&prod) == &self.counit[i] * &self.counit[j]
            })
        }) && self.counit_of(&self.unit).is_one();
        push("counit_multiplicative", counit_mult_ok, String::new());

        // Antipode law: m(S (x) id)Delta = unit . counit = m(id (x) S)Delta.
        let antipode_ok = (0..d).all(|i| {
            let di = &self.comult[i];
            let mut left = vec![Cyclo::zero(); d];
            let mut right = vec![Cyclo::zero(); d];
            for j in 0..d {
                for k in 0..d {
                    let c = &di[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    let sj = self.antipode_vec(&self.basis_vec(j));
                    let svk = self.antipode_vec(&self.basis_vec(k));
                    let l = self.mul_vec(&sj, &self.basis_vec(k));
                    let r = self.mul_vec(&self.basis_vec(j), &svk);
                    for t in 0..d {
                        if !l[t].is_zero() {
                            left[t] = &left[t] + &(c * &l[t]);
                        }
                        if !r[t].is_zero() {
                            right[t] = &right[t] + &(c * &r[t]);
                        }
                    }
                }
            }
            let target: Vec<Cyclo> = self.unit.iter().map(|u| u * &self.counit[i]).collect();
            left == target && right == target
        });
        push("antipode_law", antipode_ok, String::new());

        // Star structure: involution, antimultiplicative, compatible with
        // comultiplication.
        let star_invol = (0..d).all(|i| self.star_vec(&self.star_vec(&self.basis_vec(i))) == self.basis_vec(i));
        push("star_involutive", star_invol, String::new());

        let star_antimult = (0..d).all(|i| {
            (0..d).all(|j| {
                let lhs = self.star_vec(&self.mul_vec(&self.basis_vec(i), &self.basis_vec(j)));
                let rhs = self.mul_vec(
                    &self.star_vec(&self.basis_vec(j)),
                    &self.star_vec(&self.basis_vec(i)),
                );
                lhs == rhs
            })
        });
        push("star_antimultiplicative", star_antimult, String::new());

        let star_comult = (0..d).all(|i| {
            let si = self.star_vec(&self.basis_vec(i));
            let lhs = self.comult_vec(&si);
            // (* (x) *) Delta(e_i), conjugate-linear in each slot.
            let di = &self.comult[i];
            let mut rhs = vec![Cyclo::zero(); d * d];
            for j in 0..d {
                for k in 0..d {
                    let c = &di[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    let sj = self.star_vec(&self.basis_vec(j));
                    let sk = self.star_vec(&self.basis_vec(k));
                    let cc = c.conj();
                    for p in 0..d {
                        if sj[p].is_zero() {
                            continue;
                        }
                        for q in 0..d {
                            if !sk[q].is_zero() {
                                let t = &(&cc * &sj[p]) * &sk[q];
                                rhs[p * d + q] = &rhs[p * d + q] + &t;
                            }
                        }
                    }
                }
            }
            lhs == rhs
        });
        push("star_comult_compatible", star_comult, String::new());

        // Haar state: normalized, *-invariant, two-sided invariant, tracial.
        push("haar_normalized", self.haar_of(&self.unit).is_one(), String::new());

        let haar_star = (0..d).all(|i| {
            self.haar_of(&self.star_vec(&self.basis_vec(i))) == self.haar_of(&self.basis_vec(i)).conj()
        });
        push("haar_star_invariant", haar_star, String::new());

        let haar_inv = (0..d).all(|i| {
            let di = &self.comult[i];
            let mut right_slice = vec![Cyclo::zero(); d];
            let mut left_slice = vec![Cyclo::zero(); d];
            for j in 0..d {
                for k in 0..d {
                    let c = &di[j * d + k];
                    if c.is_zero() {
                        continue;
                    }
                    if !self.haar[k].is_zero() {
                        right_slice[j] = &right_slice[j] + &(c * &self.haar[k]);
                    }
                    if !self.haar[j].is_zero() {
                        left_slice[k] = &left_slice[k] + &(c * &self.haar[j]);
                    }
                }
            }
            let target: Vec<Cyclo> =
                self.unit.iter().map(|u| u * &self.haar_of(&self.basis_vec(i))).collect();
            right_slice == target && left_slice == target
        });
        push("haar_invariance", haar_inv, String::new());

        let haar_tracial = (0..d).all(|i| {
            (0..d).all(|j| {
                let ij = self.mul_vec(&self.basis_vec(i), &self.basis_vec(j));
                let ji = self.mul_vec(&self.basis_vec(j), &self.basis_vec(i));
                self.haar_of(&ij) == self.haar_of(&ji)
            })
        });
        push("haar_tracial", haar_tracial, String::new());

        // Positivity and faithfulness: the Gram matrix of the Haar form is
        // positive definite, decided exactly.
        let gram = self.gram();
        let (pd, detail) = hermitian_positive_definite(&gram);
        push("haar_positive_faithful", pd, detail);

        // Involutive antipode (finite Kac property).
        let s2 = self.antipode.mul(&self.antipode) == Mat::identity(d);
        push("antipode_involutive", s2, String::new());

        let s_star = {
            // S(a*) = S(a)* as maps: star then S vs S then star.
            (0..d).all(|i| {
                let a = self.basis_vec(i);
                let lhs = self.antipode_vec(&self.star_vec(&a));
                let rhs = self.star_vec(&self.antipode_vec(&a));
                lhs == rhs
            })
        };
        push("antipode_star_compatible", s_star, String::new());

        ValidationReport { checks }
    }

    /// Product in the tensor square, coefficients over e_j (x) e_k.
    pub fn tensor_mul(&self, a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
        let d = self.dim;
        let mut out = vec![Cyclo::zero(); d * d];
        for j1 in 0..d {
            for k1 in 0..d {
                let x = &a[j1 * d + k1];
                if x.is_zero() {
                    continue;
                }
                for j2 in 0..d {
                    for k2 in 0..d {
                        let y = &b[j2 * d + k2];
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        let left = &self.mult[j1][j2];
                        let right = &self.mult[k1][k2];
                        for (p, lc) in left.iter().enumerate() {
                            if lc.is_zero() {
                                continue;
                            }
                            for (q, rc) in right.iter().enumerate() {
                                if !rc.is_zero() {
                                    let t = &(&xy * lc) * rc;
                                    out[p * d + q] = &out[p * d + q] + &t;
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Solves for the unique normalized two-sided invariant functional of a
/// (candidate) Hopf algebra given its multiplication and comultiplication.
pub fn solve_invariant_state(
    d: usize,
    _mult: &[Vec<Vec<Cyclo>>],
    unit: &[Cyclo],
    comult_of: impl Fn(usize) -> Vec<Cyclo>,
) -> QgResult<Vec<Cyclo>> {
    // Unknown h: for each basis i, (id (x) h)Delta(e_i) = h(e_i) unit and
    // (h (x) id)Delta(e_i) = h(e_i) unit. Rows over unknowns h_0..h_{d-1}.
    let mut rows: Vec<Vec<Cyclo>> = Vec::new();
    let mut rhs: Vec<Cyclo> = Vec::new();
    for i in 0..d {
        let di = comult_of(i);
        for t in 0..d {
            // right slice: sum_k Delta[i][t*d+k] h_k - h_i unit[t] = 0
            let mut row = vec![Cyclo::zero(); d];
            for k in 0..d {
                row[k] = &row[k] + &di[t * d + k];
            }
            row[i] = &row[i] - &unit[t];
            rows.push(row);
            rhs.push(Cyclo::zero());
            // left slice: sum_j Delta[i][j*d+t] h_j - h_i unit[t] = 0
            let mut row = vec![Cyclo::zero(); d];
            for j in 0..d {
                row[j] = &row[j] + &di[j * d + t];
            }
            row[i] = &row[i] - &unit[t];
            rows.push(row);
            rhs.push(Cyclo::zero());
        }
    }
    // Normalization: h(unit) = 1.
    rows.push(unit.to_vec());
    rhs.push(Cyclo::one());
    solve_linear(&rows, &rhs, d).ok_or_else(|| {
        QgError::MathCheckFailed("no normalized invariant functional exists".into())
    })
}

/// Solves the (possibly overdetermined) linear system rows * x = rhs, failing
/// on inconsistency or underdetermination.
pub fn solve_linear(rows: &[Vec<Cyclo>], rhs: &[Cyclo], width: usize) -> Option<Vec<Cyclo>> {
    let mut aug: Vec<Vec<Cyclo>> = rows
        .iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let rows_n = aug.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..width {
        let mut sel = None;
        for i in r..rows_n {
            if !aug[i][c].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        aug.swap(r, sel);
        let inv = aug[r][c].inverse().ok()?;
        for j in c..=width {
            if !aug[r][j].is_zero() {
                aug[r][j] = &aug[r][j] * &inv;
            }
        }
        for i in 0..rows_n {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=width {
                    if !aug[r][j].is_zero() {
                        let t = &f * &aug[r][j];
                        aug[i][j] = &aug[i][j] - &t;
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    // Inconsistency.
    for i in r..rows_n {
        if !aug[i][width].is_zero() {
            return None;
        }
    }
    if pivot_cols.len() != width {
        return None;
    }
    let mut x = vec![Cyclo::zero(); width];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[i][width].clone();
    }
    Some(x)
}

/// Exact positive-definiteness of a Hermitian matrix by LDL* pivots.
pub fn hermitian_positive_definite(g: &Mat) -> (bool, String) {
    let d = g.rows();
    // Hermitian check first.
    for i in 0..d {
        for j in 0..d {
            if g[(i, j)].conj() != g[(j, i)] {
                return (false, format!("not Hermitian at ({i},{j})"));
            }
        }
    }
    let mut a = g.clone();
    for k in 0..d {
        let pivot = a[(k, k)].clone();
        if !pivot.is_real() {
            return (false, format!("pivot {k} is not real"));
        }
        match realsign::sign(&pivot) {
            Ok(std::cmp::Ordering::Greater) => {}
            Ok(_) => return (false, format!("pivot {k} is not positive")),
            Err(e) => return (false, format!("pivot {k}: {e}")),
        }
        let inv = pivot.inverse().expect("positive pivot is nonzero");
        for i in (k + 1)..d {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] * &inv;
            for j in k..d {
                let t = &f * &a[(k, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        for j in (k + 1)..d {
            a[(k, j)] = Cyclo::zero();
        }
    }
    (true, String::new())
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn require(&self) -> QgResult<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => Err(QgError::AxiomFailed(c.name.clone())),
        }
    }
}

/// A linear map between Hopf algebras, `rho(e_i) = sum_j matrix[(j,i)] f_j`.
#[derive(Clone)]
pub struct HopfMorphism {
    pub source: HopfData,
    pub target: HopfData,
    pub matrix: Mat,
}

impl HopfMorphism {
    pub fn apply(&self, a: &[Cyclo]) -> Vec<Cyclo> {
        self.matrix.apply(a)
    }

    /// Checks unitality, *-preservation, multiplicativity and comultiplication
    /// intertwining; optionally surjectivity.
    pub fn validate(&self) -> QgResult<()> {
        let s = &self.source;
        let t = &self.target;
        if self.matrix.rows() != t.dim() || self.matrix.cols() != s.dim() {
            return Err(QgError::DimensionMismatch { expected: t.dim(), found: self.matrix.rows() });
        }
        if self.apply(s.unit_vec()) != t.unit_vec() {
            return Err(QgError::AxiomFailed("morphism_unital".into()));
        }
        for i in 0..s.dim() {
            let a = s.basis_vec(i);
            if self.apply(&s.star_vec(&a)) != t.star_vec(&self.apply(&a)) {
                return Err(QgError::AxiomFailed("morphism_star".into()));
            }
            for j in 0..s.dim() {
                let b = s.basis_vec(j);
                let lhs = self.apply(&s.mul_vec(&a, &b));
                let rhs = t.mul_vec(&self.apply(&a), &self.apply(&b));
                if lhs != rhs {
                    return Err(QgError::AxiomFailed("morphism_multiplicative".into()));
                }
            }
            // (rho (x) rho) Delta_s = Delta_t rho
            let ds = s.comult_row(i);
            let mut lhs = vec![Cyclo::zero(); t.dim() * t.dim()];
            for j in 0..s.dim() {
                for k in 0..s.dim() {
                    let c = &ds[j * s.dim() + k];
                    if c.is_zero() {
                        continue;
                    }
                    let rj = self.apply(&s.basis_vec(j));
                    let rk = self.apply(&s.basis_vec(k));
                    for p in 0..t.dim() {
                        if rj[p].is_zero() {
                            continue;
                        }
                        for q in 0..t.dim() {
                            if !rk[q].is_zero() {
                                let v = &(c * &rj[p]) * &rk[q];
                                lhs[p * t.dim() + q] = &lhs[p * t.dim() + q] + &v;
                            }
                        }
                    }
                }
            }
            let rhs = t.comult_vec(&self.apply(&a));
            if lhs != rhs {
                return Err(QgError::AxiomFailed("morphism_comult_intertwine".into()));
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self) -> bool {
        let rows: Vec<Vec<Cyclo>> = (0..self.source.dim())
            .map(|i| self.apply(&self.source.basis_vec(i)))
            .collect();
        crate::exact::Subspace::from_vectors(self.target.dim(), rows)
            .map(|s| s.dim() == self.target.dim())
            .unwrap_or(false)
    }

    /// Identity morphism.
    pub fn identity(h: &HopfData) -> HopfMorphism {
        HopfMorphism { source: h.clone(), target: h.clone(), matrix: Mat::identity(h.dim()) }
    }
}
