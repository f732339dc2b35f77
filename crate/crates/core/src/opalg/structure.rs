//! Block structure of finite-dimensional *-algebras over cyclotomic scalars:
//! minimal central idempotents and matrix units.
//!
//! Splitting happens inside cyclotomic fields only. Eigenvalues are found by
//! idempotent detection, rational-root extraction, quadratic formula with
//! radicand of the shape rational * root-of-unity, or spectral sums of
//! finite-order unitaries; anything needing a larger splitting field is
//! reported as unsupported rather than approximated.

use crate::error::{QgError, QgResult};
use crate::exact::cyclo::sqrt_rational_times_root;
use crate::exact::{Cyclo, Mat, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{coordinates_in, Ambient, OperatorSubspace};

/// Matrix units of one simple block.
#[derive(Clone, Debug)]
pub struct BlockUnits {
    /// The minimal central idempotent supporting the block.
    pub idempotent: Mat,
    /// Size of the block.
    pub size: usize,
    /// `units[i][j]` is the (i,j) matrix unit; `e_ij e_kl = delta_jk e_il`,
    /// `e_ij* = e_ji`, and the diagonal sums to the idempotent.
    pub units: Vec<Vec<Mat>>,
}

/// Full block decomposition of a unital *-closed algebra.
pub fn block_decomposition(ambient: &Ambient, alg: &OperatorSubspace) -> QgResult<Vec<BlockUnits>> {
    if !alg.is_algebra() || !alg.is_unital() || !alg.is_star_closed() {
        return Err(QgError::InvalidInput(
            "block decomposition needs a unital *-closed algebra".into(),
        ));
    }
    let center = super::center_of_algebra(ambient, alg)?;
    let centrals = minimal_idempotents(ambient, &center)?;
    let mut blocks = Vec::new();
    for p in centrals {
        let units = matrix_units(ambient, alg, &p)?;
        let size = units.len();
        // Sanity: block dimension matches size^2.
        let pdim = corner(ambient, alg, &p, &p).dim();
        if pdim != size * size {
            return Err(QgError::SplitFailed(format!(
                "block of dimension {pdim} is not a full {size}x{size} matrix algebra"
            )));
        }
        blocks.push(BlockUnits { idempotent: p, size, units });
    }
    Ok(blocks)
}

/// Minimal idempotents of a commutative unital *-closed algebra, in a
/// deterministic discovery order, summing to the identity.
pub fn minimal_idempotents(ambient: &Ambient, z: &OperatorSubspace) -> QgResult<Vec<Mat>> {
    if !z.is_algebra() || !z.is_abelian() {
        return Err(QgError::InvalidInput("idempotent search needs an abelian algebra".into()));
    }
    let d = ambient.dim();
    let mut done: Vec<Mat> = Vec::new();
    let mut queue: Vec<Mat> = vec![Mat::identity(d)];
    while let Some(p) = queue.pop() {
        let local = compress(ambient, z, &p);
        if local.dim() <= 1 {
            done.push(p);
            continue;
        }
        let parts = split_once(ambient, &local, &p)?;
        debug_assert!(parts.len() >= 2);
        queue.extend(parts);
    }
    // Deterministic order: sort by vectorized coordinates' first nonzero
    // position to keep output stable across runs.
    done.sort_by_key(|m| {
        m.vectorize()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(usize::MAX)
    });
    Ok(done)
}

/// The compression p Z p as a subspace (p central in Z's ambient usage here).
fn compress(ambient: &Ambient, z: &OperatorSubspace, p: &Mat) -> OperatorSubspace {
    let ops: Vec<Mat> = z.operators().iter().map(|m| p.mul(m).mul(p)).collect();
    OperatorSubspace::from_operators(ambient, &ops)
}

fn corner(ambient: &Ambient, alg: &OperatorSubspace, p: &Mat, q: &Mat) -> Subspace {
    let d = ambient.dim();
    Subspace::from_vectors(
        d * d,
        alg.operators().iter().map(|m| p.mul(m).mul(q).vectorize()),
    )
    .expect("operator shapes agree")
}

/// Splits the unit `p` of the local commutative algebra into at least two
/// orthogonal idempotents.
fn split_once(ambient: &Ambient, local: &OperatorSubspace, p: &Mat) -> QgResult<Vec<Mat>> {
    let basis = local.operators();
    // Candidate elements: basis, then self-adjoint combinations.
    let mut candidates: Vec<Mat> = Vec::new();
    for b in &basis {
        candidates.push(b.clone());
    }
    for b in &basis {
        let bs = ambient.adjoint(b);
        candidates.push(b.add(&bs));
        let i = Cyclo::root_of_unity(4, 1).expect("conductor 4");
        candidates.push(b.sub(&bs).scale(&i));
    }
    for cand in &candidates {
        if is_scalar_multiple(cand, p) {
            continue;
        }
        // Direct idempotent.
        if cand.mul(cand) == *cand && !cand.is_zero() && cand != p {
            let rest = p.sub(cand);
            return Ok(vec![cand.clone(), rest]);
        }
        // Eigen-split through the minimal polynomial.
        if let Some(parts) = eigen_split(cand, p)? {
            return Ok(parts);
        }
        // Finite-order unitary: spectral decomposition by roots of unity.
        if let Some(parts) = unitary_split(ambient, cand, p)? {
            return Ok(parts);
        }
    }
    Err(QgError::SplitFailed(
        "no cyclotomic eigenvalue found while refining idempotents".into(),
    ))
}

fn is_scalar_multiple(a: &Mat, b: &Mat) -> bool {
    coordinates_in(&[b.clone()], a).is_some()
}

/// Minimal polynomial of `z` in the unital algebra with unit `p`:
/// monic coefficients, constant term first.
fn minimal_poly(z: &Mat, p: &Mat) -> Vec<Cyclo> {
    let width = z.rows() * z.cols();
    let mut powers: Vec<Mat> = vec![p.clone()];
    let mut span = Subspace::from_vectors(width, vec![p.vectorize()]).unwrap();
    loop {
        let next = powers.last().unwrap().mul(z);
        if !span.insert(next.vectorize()) {
            // next = sum of lower powers: monic minimal polynomial found.
            let coords = coordinates_in(&powers, &next).expect("dependence just detected");
            let mut poly: Vec<Cyclo> = coords.iter().map(Cyclo::neg).collect();
            poly.push(Cyclo::one());
            return poly;
        }
        powers.push(next);
    }
}

/// Tries to find one eigenvalue of `z` in a cyclotomic field and split `p`
/// by the corresponding spectral idempotent.
fn eigen_split(z: &Mat, p: &Mat) -> QgResult<Option<Vec<Mat>>> {
    let mu = minimal_poly(z, p);
    let deg = mu.len() - 1;
    if deg < 2 {
        return Ok(None);
    }
    let mut roots: Vec<Cyclo> = Vec::new();
    if mu.iter().all(Cyclo::is_rational) {
        roots.extend(rational_roots(&mu));
    }
    if roots.is_empty() && deg == 2 {
        // x^2 + bx + c: discriminant route.
        let b = mu[1].clone();
        let c = mu[0].clone();
        let four = Cyclo::from_int(4);
        let disc = &(&b * &b) - &(&four * &c);
        if let Ok(s) = sqrt_rational_times_root(&disc) {
            let half = Cyclo::from_ratio(1, 2);
            roots.push(&(&s - &b) * &half);
        }
    }
    for lambda in roots {
        if let Some(e) = spectral_idempotent(z, p, &mu, &lambda) {
            if !e.is_zero() && e != *p {
                let rest = p.sub(&e);
                return Ok(Some(vec![e, rest]));
            }
        }
    }
    Ok(None)
}

/// For a root `lambda` of the squarefree minimal polynomial, builds the
/// spectral idempotent via the Bezout identity a(x)(x-lambda)+c(x)q(x)=1.
fn spectral_idempotent(z: &Mat, p: &Mat, mu: &[Cyclo], lambda: &Cyclo) -> Option<Mat> {
    // q = mu / (x - lambda); remainder must vanish.
    let (q, rem) = poly_divmod_c(mu, &[lambda.neg(), Cyclo::one()]);
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    // gcd(x - lambda, q) must be 1 for a squarefree mu.
    let lin = vec![lambda.neg(), Cyclo::one()];
    let (g, _u, v) = poly_xgcd_c(&lin, &q);
    let gdeg = g.iter().rposition(|c| !c.is_zero())?;
    if gdeg != 0 {
        return None;
    }
    let ginv = g[0].inverse().ok()?;
    // e = v * q evaluated at z, scaled by 1/g.
    let vq = poly_mul_c(&v, &q);
    let e = eval_poly(&vq, z, p).scale(&ginv);
    if e.mul(&e) == e {
        Some(e)
    } else {
        None
    }
}

fn poly_degree_c(p: &[Cyclo]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_mul_c(a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

fn poly_sub_c(a: &[Cyclo], b: &[Cyclo]) -> Vec<Cyclo> {
    let mut out = vec![Cyclo::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = &out[i] + x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    out
}

fn poly_divmod_c(a: &[Cyclo], b: &[Cyclo]) -> (Vec<Cyclo>, Vec<Cyclo>) {
    let db = poly_degree_c(b).expect("division by zero polynomial");
    let lead_inv = b[db].inverse().expect("leading coefficient nonzero");
    let mut rem = a.to_vec();
    let mut quot = vec![Cyclo::zero(); a.len().saturating_sub(db).max(1)];
    loop {
        let Some(dr) = poly_degree_c(&rem) else { break };
        if dr < db {
            break;
        }
        let c = &rem[dr] * &lead_inv;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            if !b[i].is_zero() {
                let t = &b[i] * &c;
                rem[dr - db + i] = &rem[dr - db + i] - &t;
            }
        }
    }
    (quot, rem)
}

/// Extended gcd for polynomials over the cyclotomic field:
/// returns (g, u, v) with u*a + v*b = g.
fn poly_xgcd_c(a: &[Cyclo], b: &[Cyclo]) -> (Vec<Cyclo>, Vec<Cyclo>, Vec<Cyclo>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![Cyclo::one()];
    let mut u1 = vec![Cyclo::zero()];
    let mut v0 = vec![Cyclo::zero()];
    let mut v1 = vec![Cyclo::one()];
    while poly_degree_c(&r1).is_some() {
        let (q, rem) = poly_divmod_c(&r0, &r1);
        let u2 = poly_sub_c(&u0, &poly_mul_c(&q, &u1));
        let v2 = poly_sub_c(&v0, &poly_mul_c(&q, &v1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    (r0, u0, v0)
}

fn eval_poly(poly: &[Cyclo], z: &Mat, p: &Mat) -> Mat {
    let d = z.rows();
    let mut acc = Mat::zeros(d, d);
    let mut power = p.clone();
    for c in poly {
        if !c.is_zero() {
            acc = acc.add(&power.scale(c));
        }
        power = power.mul(z);
    }
    acc
}

/// All rational roots of a polynomial with rational coefficients.
fn rational_roots(mu: &[Cyclo]) -> Vec<Cyclo> {
    let rats: Vec<BigRational> = mu.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    // Clear denominators.
    let mut lcm = BigInt::from(1);
    for r in &rats {
        lcm = num_integer::lcm(lcm.clone(), r.denom().clone());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    // Zero root.
    if ints[0].is_zero() {
        out.push(Cyclo::zero());
    }
    let lead = ints.last().unwrap().clone();
    let constant = ints[0].clone();
    if constant.is_zero() {
        return out;
    }
    let ps = small_divisors(&constant);
    let qs = small_divisors(&lead);
    for p in &ps {
        for q in &qs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                let mut acc = BigRational::zero();
                let mut pow = BigRational::from_integer(BigInt::from(1));
                for c in &rats {
                    acc += c * &pow;
                    pow *= &cand;
                }
                if acc.is_zero() {
                    let c = Cyclo::from_rational(cand);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    use num_traits::ToPrimitive;
    let m = n.abs();
    let Some(m) = m.to_u64() else { return vec![BigInt::from(1)] };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m && d < 100_000 {
        if m % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(m / d));
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Spectral split of a finite-order unitary in the corner algebra at `p`.
fn unitary_split(ambient: &Ambient, z: &Mat, p: &Mat) -> QgResult<Option<Vec<Mat>>> {
    let zs = ambient.adjoint(z);
    if z.mul(&zs) != *p || zs.mul(z) != *p {
        return Ok(None);
    }
    // Find the order.
    let mut power = z.clone();
    let mut order = 1u64;
    while power != *p {
        power = power.mul(z);
        order += 1;
        if order > 256 {
            return Ok(None);
        }
    }
    if order == 1 {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let inv_order = Cyclo::from_ratio(1, order as i64);
    for j in 0..order {
        let mut e = Mat::zeros(z.rows(), z.cols());
        let mut pw = p.clone();
        for m in 0..order {
            let phase = Cyclo::root_of_unity(order, -((j * m) as i64))
                .map_err(|_| QgError::SplitFailed("order too large for conductor bound".into()))?;
            e = e.add(&pw.scale(&phase));
            pw = pw.mul(z);
        }
        e = e.scale(&inv_order);
        if !e.is_zero() {
            parts.push(e);
        }
    }
    if parts.len() >= 2 {
        Ok(Some(parts))
    } else {
        Ok(None)
    }
}

/// Matrix units of the block cut out by the minimal central idempotent `p`.
fn matrix_units(ambient: &Ambient, alg: &OperatorSubspace, p: &Mat) -> QgResult<Vec<Vec<Mat>>> {
    let d = ambient.dim();
    // Refine p into minimal projections of p alg p.
    let mut minimal: Vec<Mat> = Vec::new();
    let mut queue = vec![p.clone()];
    while let Some(q) = queue.pop() {
        let corner_space = OperatorSubspace::from_space(
            ambient,
            corner(ambient, alg, &q, &q),
        );
        if corner_space.dim() <= 1 {
            minimal.push(q);
            continue;
        }
        // Split q with a self-adjoint non-scalar element of q alg q.
        let mut split = None;
        for b in corner_space.operators() {
            let bs = ambient.adjoint(&b);
            let i = Cyclo::root_of_unity(4, 1).expect("conductor 4");
            for cand in [b.add(&bs), b.sub(&bs).scale(&i), b.clone()] {
                if is_scalar_multiple(&cand, &q) {
                    continue;
                }
                if cand.mul(&cand) == cand && !cand.is_zero() && cand != q {
                    split = Some(vec![cand.clone(), q.sub(&cand)]);
                    break;
                }
                if let Some(parts) = eigen_split(&cand, &q)? {
                    split = Some(parts);
                    break;
                }
                if let Some(parts) = unitary_split(ambient, &cand, &q)? {
                    split = Some(parts);
                    break;
                }
            }
            if split.is_some() {
                break;
            }
        }
        match split {
            Some(parts) => queue.extend(parts),
            None => {
                return Err(QgError::SplitFailed(
                    "could not refine projection inside a matrix block".into(),
                ))
            }
        }
    }
    minimal.sort_by_key(|m| {
        m.vectorize()
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(usize::MAX)
    });
    let n = minimal.len();
    // Partial isometries from the first projection to each other one.
    let q1 = minimal[0].clone();
    let mut w: Vec<Mat> = Vec::with_capacity(n);
    w.push(q1.clone());
    for qj in minimal.iter().skip(1) {
        let link = Subspace::from_vectors(
            d * d,
            alg.operators().iter().map(|m| q1.mul(m).mul(qj).vectorize()),
        )
        .expect("operator shapes agree");
        if link.dim() != 1 {
            return Err(QgError::SplitFailed(format!(
                "link space between minimal projections has dimension {}",
                link.dim()
            )));
        }
        let v = Mat::from_vector(d, d, &link.basis()[0]);
        // v v* = c q1 with c a positive real scalar.
        let vvs = v.mul(&ambient.adjoint(&v));
        let coords = coordinates_in(&[q1.clone()], &vvs).ok_or_else(|| {
            QgError::SplitFailed("partial isometry defect is not scalar".into())
        })?;
        let c = coords[0].clone();
        let root = sqrt_rational_times_root(&c)?;
        // Prefer the positive real square root when the scalar is real.
        let root = if root.is_real() {
            match crate::exact::realsign::sign(&root) {
                Ok(std::cmp::Ordering::Less) => root.neg(),
                _ => root,
            }
        } else {
            root
        };
        let scale = root.inverse()?;
        w.push(v.scale(&scale));
    }
    // e_ij = w_i* w_j.
    let mut units = vec![vec![Mat::zeros(d, d); n]; n];
    for i in 0..n {
        for j in 0..n {
            units[i][j] = ambient.adjoint(&w[i]).mul(&w[j]);
        }
    }
    // Verify the matrix unit relations exactly.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let prod = units[i][j].mul(&units[k][l]);
                    let expect = if j == k {
                        units[i][l].clone()
                    } else {
                        Mat::zeros(d, d)
                    };
                    if prod != expect {
                        return Err(QgError::SplitFailed(
                            "matrix unit relations failed".into(),
                        ));
                    }
                }
            }
            if ambient.adjoint(&units[i][j]) != units[j][i] {
                return Err(QgError::SplitFailed("matrix units are not *-compatible".into()));
            }
        }
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::generate_algebra;

    fn unit(d: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(d, d);
        m[(i, j)] = Cyclo::one();
        m
    }

    #[test]
    fn full_matrix_algebra_single_block() {
        let amb = Ambient::orthonormal(3);
        let alg = OperatorSubspace::full(&amb);
        let blocks = block_decomposition(&amb, &alg).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].size, 3);
        assert_eq!(blocks[0].idempotent, Mat::identity(3));
    }

    #[test]
    fn diagonal_algebra_splits_into_points() {
        let amb = Ambient::orthonormal(3);
        let mut a = Mat::zeros(3, 3);
        for i in 0..3 {
            a[(i, i)] = Cyclo::from_int(i as i64 + 1);
        }
        let alg = generate_algebra(&amb, &[a], true).unwrap();
        let blocks = block_decomposition(&amb, &alg).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.size == 1));
    }

    #[test]
    fn block_sum_of_c2_and_m2() {
        // Algebra C + M2 embedded in M3.
        let amb = Ambient::orthonormal(3);
        let gens = vec![unit(3, 1, 2), unit(3, 0, 0)];
        let alg = generate_algebra(&amb, &gens, true).unwrap();
        assert_eq!(alg.dim(), 5);
        let mut blocks = block_decomposition(&amb, &alg).unwrap();
        blocks.sort_by_key(|b| b.size);
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].size, 1);
        assert_eq!(blocks[1].size, 2);
    }

    #[test]
    fn order_four_unitary_needs_i() {
        // The algebra generated by a 4-cycle permutation: C[Z4], needs
        // conductor 4 idempotents.
        let amb = Ambient::orthonormal(4);
        let mut perm = Mat::zeros(4, 4);
        for i in 0..4 {
            perm[((i + 1) % 4, i)] = Cyclo::one();
        }
        let alg = generate_algebra(&amb, &[perm], true).unwrap();
        assert_eq!(alg.dim(), 4);
        let blocks = block_decomposition(&amb, &alg).unwrap();
        assert_eq!(blocks.len(), 4);
    }

    #[test]
    fn order_three_unitary_needs_zeta3() {
        let amb = Ambient::orthonormal(3);
        let mut perm = Mat::zeros(3, 3);
        for i in 0..3 {
            perm[((i + 1) % 3, i)] = Cyclo::one();
        }
        let alg = generate_algebra(&amb, &[perm], true).unwrap();
        let blocks = block_decomposition(&amb, &alg).unwrap();
        assert_eq!(blocks.len(), 3);
        for b in &blocks {
            assert_eq!(b.size, 1);
        }
    }
}
