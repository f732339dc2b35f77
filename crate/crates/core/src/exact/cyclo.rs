//! Exact arithmetic in cyclotomic number fields.
//!
//! A scalar is an element of `Q(zeta_n)` stored in the power basis
//! `1, zeta_n, ..., zeta_n^(phi(n)-1)` modulo the n-th cyclotomic polynomial.
//! Every value is kept at its minimal conductor, so structural equality is
//! field equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QgError, QgResult};

/// Conductors above this bound are rejected outright.
pub const MAX_CONDUCTOR: u64 = 1 << 20;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Euler totient by trial division.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficients of the n-th cyclotomic polynomial, ascending degree, monic.
fn cyclotomic_poly(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![BigInt::from(0); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::from(1);
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d, memo);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (remainder must vanish).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::from(0); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            rem[k + i] -= &c * dc;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Per-conductor data: degree and power-reduction rows.
struct FieldCtx {
    phi: usize,
    /// `reduce[e]` is `x^e mod Phi_n` for `e` in `0..max_exponent`.
    reduce: Vec<Vec<BigRational>>,
}

impl FieldCtx {
    fn new(n: u64) -> FieldCtx {
        let phi = euler_phi(n) as usize;
        let mut memo = HashMap::new();
        let poly = cyclotomic_poly(n, &mut memo);
        // x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1})
        let max_exp = std::cmp::max(n as usize, 2 * phi).max(1);
        let mut reduce: Vec<Vec<BigRational>> = Vec::with_capacity(max_exp);
        for e in 0..phi.min(max_exp) {
            let mut row = vec![BigRational::zero(); phi];
            row[e] = BigRational::one();
            reduce.push(row);
        }
        for e in phi..max_exp {
            // x^e = x * x^(e-1), then fold the overflow term through Phi_n.
            let prev = reduce[e - 1].clone();
            let mut row = vec![BigRational::zero(); phi];
            for i in 1..phi {
                row[i] = prev[i - 1].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    row[i] -= &top * BigRational::from_integer(poly[i].clone());
                }
            }
            reduce.push(row);
        }
        FieldCtx { phi, reduce }
    }
}

fn ctx(n: u64) -> Arc<FieldCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert_with(|| Arc::new(FieldCtx::new(n))).clone()
}

/// An exact element of a cyclotomic field, at minimal conductor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_int(n: i64) -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![big(n)] }
    }

    pub fn from_ratio(num: i64, den: i64) -> Cyclo {
        assert!(den != 0, "zero denominator");
        Cyclo { conductor: 1, coeffs: vec![BigRational::new(BigInt::from(num), BigInt::from(den))] }
    }

    pub fn from_rational(q: BigRational) -> Cyclo {
        Cyclo { conductor: 1, coeffs: vec![q] }
    }

    /// `zeta_n^k`, reduced to its minimal conductor.
    pub fn root_of_unity(n: u64, k: i64) -> QgResult<Cyclo> {
        if n == 0 {
            return Err(QgError::BadScalar("root of unity needs positive order".into()));
        }
        if n > MAX_CONDUCTOR {
            return Err(QgError::ConductorOverflow { conductor: n });
        }
        let k = k.rem_euclid(n as i64) as usize;
        let c = ctx(n);
        let mut coeffs = vec![BigRational::zero(); c.phi];
        for (i, r) in c.reduce[k].iter().enumerate() {
            coeffs[i] = r.clone();
        }
        let mut z = Cyclo { conductor: n, coeffs };
        z.normalize();
        Ok(z)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    /// Returns the value as a rational if the conductor is 1.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// Raw view of (conductor, power-basis coefficients).
    pub fn parts(&self) -> (u64, &[BigRational]) {
        (self.conductor, &self.coeffs)
    }

    /// Lift to the field of conductor `m` (must be a multiple).
    fn promoted(&self, m: u64) -> Vec<BigRational> {
        debug_assert!(m % self.conductor == 0);
        let c = ctx(m);
        let stride = (m / self.conductor) as usize;
        let mut out = vec![BigRational::zero(); c.phi];
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let row = &c.reduce[j * stride];
            for i in 0..c.phi {
                if !row[i].is_zero() {
                    out[i] += q * &row[i];
                }
            }
        }
        out
    }

    /// Restore the canonical minimal-conductor representation.
    fn normalize(&mut self) {
        if self.is_zero() {
            *self = Cyclo::zero();
            return;
        }
        'outer: loop {
            if self.conductor == 1 {
                return;
            }
            for p in prime_divisors(self.conductor) {
                let m = self.conductor / p;
                if m == 0 {
                    continue;
                }
                if let Some(coeffs) = self.try_descend(m) {
                    self.conductor = m;
                    self.coeffs = coeffs;
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Attempt to rewrite the element in `Q(zeta_m)` for `m | conductor`.
    fn try_descend(&self, m: u64) -> Option<Vec<BigRational>> {
        let n = self.conductor;
        let cn = ctx(n);
        let phi_m = euler_phi(m) as usize;
        // Columns: the embeddings of the power basis of Q(zeta_m), i.e.
        // x^(j * n/m) mod Phi_n; solve for the coordinates of self.
        let stride = (n / m) as usize;
        let mut cols: Vec<&[BigRational]> = Vec::with_capacity(phi_m);
        for j in 0..phi_m {
            cols.push(&cn.reduce[j * stride]);
        }
        // Gaussian elimination on the (phi_n x phi_m) system  cols * x = self.
        let rows = cn.phi;
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0usize;
        let mut pivots = Vec::new();
        for col in 0..phi_m {
            let mut sel = None;
            for r in pivot_row..rows {
                if !aug[r][col].is_zero() {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            aug.swap(pivot_row, sel);
            let inv = aug[pivot_row][col].recip();
            for c in col..=phi_m {
                let v = &aug[pivot_row][c] * &inv;
                aug[pivot_row][c] = v;
            }
            for r in 0..rows {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi_m {
                        let t = &aug[pivot_row][c] * &f;
                        aug[r][c] -= t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        // Inconsistent rows mean the element does not live downstairs.
        for r in pivot_row..rows {
            if !aug[r][phi_m].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); phi_m];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = aug[r][phi_m].clone();
        }
        Some(x)
    }

    fn combine(&self, other: &Cyclo) -> QgResult<(u64, Vec<BigRational>, Vec<BigRational>)> {
        let m = self.conductor.lcm(&other.conductor);
        if m > MAX_CONDUCTOR {
            return Err(QgError::ConductorOverflow { conductor: m });
        }
        Ok((m, self.promoted(m), other.promoted(m)))
    }

    pub fn try_add(&self, other: &Cyclo) -> QgResult<Cyclo> {
        if self.conductor == 1 && other.conductor == 1 {
            return Ok(Cyclo::from_rational(&self.coeffs[0] + &other.coeffs[0]));
        }
        let (m, mut a, b) = self.combine(other)?;
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        let mut z = Cyclo { conductor: m, coeffs: a };
        z.normalize();
        Ok(z)
    }

    pub fn try_sub(&self, other: &Cyclo) -> QgResult<Cyclo> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn try_mul(&self, other: &Cyclo) -> QgResult<Cyclo> {
        if self.is_zero() || other.is_zero() {
            return Ok(Cyclo::zero());
        }
        if self.conductor == 1 && other.conductor == 1 {
            return Ok(Cyclo::from_rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        if self.conductor == 1 {
            let q = &self.coeffs[0];
            return Ok(Cyclo {
                conductor: other.conductor,
                coeffs: other.coeffs.iter().map(|c| c * q).collect(),
            });
        }
        if other.conductor == 1 {
            return other.try_mul(self);
        }
        let (m, a, b) = self.combine(other)?;
        let c = ctx(m);
        let phi = c.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigRational::zero(); phi];
        for (e, q) in prod.into_iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            if e < phi {
                out[e] += q;
            } else {
                let row = &c.reduce[e];
                for i in 0..phi {
                    if !row[i].is_zero() {
                        out[i] += &q * &row[i];
                    }
                }
            }
        }
        let mut z = Cyclo { conductor: m, coeffs: out };
        z.normalize();
        Ok(z)
    }

    /// Galois action `zeta_n -> zeta_n^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclo {
        let n = self.conductor;
        if n == 1 {
            return self.clone();
        }
        let kk = k.rem_euclid(n as i64) as u64;
        assert!(kk.gcd(&n) == 1, "galois exponent must be coprime to conductor");
        let c = ctx(n);
        let mut out = vec![BigRational::zero(); c.phi];
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let e = (j as u64 * kk % n) as usize;
            let row = &c.reduce[e];
            for i in 0..c.phi {
                if !row[i].is_zero() {
                    out[i] += q * &row[i];
                }
            }
        }
        let mut z = Cyclo { conductor: n, coeffs: out };
        z.normalize();
        z
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inverse(&self) -> QgResult<Cyclo> {
        if self.is_zero() {
            return Err(QgError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Cyclo::from_rational(self.coeffs[0].recip()));
        }
        // Extended Euclid in Q[x] against Phi_n, which is irreducible over Q.
        let n = self.conductor;
        let mut memo = HashMap::new();
        let phi_poly: Vec<BigRational> = cyclotomic_poly(n, &mut memo)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let a: Vec<BigRational> = self.coeffs.clone();
        let (g, u) = poly_half_xgcd(&a, &phi_poly);
        // g is a nonzero constant; inverse = u / g.
        debug_assert!(poly_degree(&g) == Some(0));
        let ginv = g[0].recip();
        let c = ctx(n);
        let mut out = vec![BigRational::zero(); c.phi];
        for (e, q) in u.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let q = q * &ginv;
            let row = &c.reduce[e];
            for i in 0..c.phi {
                if !row[i].is_zero() {
                    out[i] += &q * &row[i];
                }
            }
        }
        let mut z = Cyclo { conductor: n, coeffs: out };
        z.normalize();
        Ok(z)
    }

    pub fn try_div(&self, other: &Cyclo) -> QgResult<Cyclo> {
        self.try_mul(&other.inverse()?)
    }

    /// |z|^2 = z * conj(z); always real.
    pub fn norm_sq(&self) -> Cyclo {
        self.try_mul(&self.conj()).expect("conductor does not grow under conjugation")
    }

    /// Approximate complex value under `zeta_n -> exp(2 pi i / n)`.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let v = rational_to_f64(q);
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / n;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    let num = q.numer();
    let den = q.denom();
    // Good enough for heuristics; exact code never relies on this.
    let nf: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

fn poly_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Half extended gcd: returns (g, u) with u*a = g mod b.
fn poly_half_xgcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut u0 = vec![BigRational::one()];
    let mut u1 = vec![BigRational::zero()];
    while poly_degree(&r1).is_some() {
        let (q, rem) = poly_divmod(&r0, &r1);
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    (r0, u0)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let mut rem = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    let lead = b[db].clone();
    loop {
        let Some(dr) = poly_degree(&rem) else { break };
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

// Operator sugar. Add/Sub/Mul panic on conductor overflow (unreachable below
// MAX_CONDUCTOR in library-built data); fallible entry points exist for
// user-supplied scalars.
impl std::ops::Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.try_add(rhs).expect("scalar addition")
    }
}

impl std::ops::Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.try_sub(rhs).expect("scalar subtraction")
    }
}

impl std::ops::Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        self.try_mul(rhs).expect("scalar multiplication")
    }
}

impl std::ops::Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo::neg(self)
    }
}

impl fmt::Display for Cyclo {
    /// Canonical literal: rational terms `p/q`, root terms `p/q*z<n>^<k>`,
    /// joined with `+`/`-`, ascending exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let mag = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "z{}^{}", self.conductor, e)?;
            } else {
                write!(f, "{}*z{}^{}", mag, self.conductor, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for Cyclo {
    type Err = QgError;

    /// Parses the literal grammar produced by `Display`.
    fn from_str(s: &str) -> QgResult<Cyclo> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(QgError::BadScalar("empty scalar literal".into()));
        }
        let bad = |msg: &str| QgError::BadScalar(format!("{msg}: `{s}`"));
        let mut total = Cyclo::zero();
        let mut idx = 0usize;
        let bytes = s.as_bytes();
        while idx < bytes.len() {
            let mut sign = 1i64;
            while idx < bytes.len() && (bytes[idx] == b'+' || bytes[idx] == b'-') {
                if bytes[idx] == b'-' {
                    sign = -sign;
                }
                idx += 1;
            }
            let start = idx;
            while idx < bytes.len() && bytes[idx] != b'+' && bytes[idx] != b'-' {
                idx += 1;
            }
            let term = &s[start..idx];
            if term.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coeff_str, root_str) = match term.find('z') {
                None => (term, None),
                Some(zpos) => {
                    let c = &term[..zpos];
                    let c = c.strip_suffix('*').unwrap_or(c);
                    (c, Some(&term[zpos + 1..]))
                }
            };
            let mut coeff = if coeff_str.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coeff_str).ok_or_else(|| bad("bad rational"))?
            };
            if sign < 0 {
                coeff = -coeff;
            }
            let term_val = match root_str {
                None => Cyclo::from_rational(coeff),
                Some(r) => {
                    let (n_str, k_str) = match r.find('^') {
                        Some(p) => (&r[..p], &r[p + 1..]),
                        None => (r, "1"),
                    };
                    let n: u64 = n_str.parse().map_err(|_| bad("bad root order"))?;
                    let k: i64 = k_str.parse().map_err(|_| bad("bad root exponent"))?;
                    let root = Cyclo::root_of_unity(n, k)?;
                    root.try_mul(&Cyclo::from_rational(coeff))?
                }
            };
            total = total.try_add(&term_val)?;
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.find('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some(p) => {
            let num = s[..p].parse::<BigInt>().ok()?;
            let den = s[p + 1..].parse::<BigInt>().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
    }
}

/// Square root of `q * zeta_n^k` for rational `q`, as an exact cyclotomic.
///
/// Always lands in a cyclotomic field: square roots of rationals are
/// cyclotomic, and roots of unity halve into the doubled conductor.
pub fn sqrt_rational_times_root(value: &Cyclo) -> QgResult<Cyclo> {
    if value.is_zero() {
        return Ok(Cyclo::zero());
    }
    // Split off a root-of-unity factor if the value is q * zeta^k.
    let (q, root_part) = split_rational_unit(value)
        .ok_or_else(|| QgError::SplitFailed("square root of a non-monomial cyclotomic".into()))?;
    let mut result = sqrt_rational(&q)?;
    if let Some((n, k)) = root_part {
        // sqrt(zeta_n^k) = zeta_{2n}^k
        let half = Cyclo::root_of_unity(2 * n, k as i64)?;
        result = result.try_mul(&half)?;
    }
    let sq = result.try_mul(&result)?;
    if &sq == value {
        Ok(result)
    } else if sq == value.neg() {
        // Off by i; fix with a quarter turn.
        let i = Cyclo::root_of_unity(4, 1)?;
        let fixed = result.try_mul(&i)?;
        debug_assert!(fixed.try_mul(&fixed).unwrap() == *value);
        Ok(fixed)
    } else {
        Err(QgError::SplitFailed("square root verification failed".into()))
    }
}

/// Writes `value` as `q * zeta_n^k` if possible, returning `(q, Some((n,k)))`.
fn split_rational_unit(value: &Cyclo) -> Option<(BigRational, Option<(u64, u64)>)> {
    if let Some(q) = value.as_rational() {
        return Some((q.clone(), None));
    }
    let n = value.conductor();
    for k in 0..n {
        let root = Cyclo::root_of_unity(n, k as i64).ok()?;
        let quotient = value.try_div(&root).ok()?;
        if let Some(q) = quotient.as_rational() {
            return Some((q.clone(), Some((n, k))));
        }
    }
    None
}

/// Exact square root of a rational as a cyclotomic number.
fn sqrt_rational(q: &BigRational) -> QgResult<Cyclo> {
    use num_traits::ToPrimitive;
    let num = q.numer().clone();
    let den = q.denom().clone();
    // sqrt(n/d) = sqrt(n*d) / d
    let nd = &num * &den;
    let (sign, mag) = if nd.is_negative() { (-1, -nd) } else { (1, nd) };
    let mut m = mag.to_u64().ok_or_else(|| {
        QgError::SplitFailed("square root operand too large".into())
    })?;
    // Factor out the square part.
    let mut square = 1u64;
    let mut rest = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut count = 0;
        while m % p == 0 {
            m /= p;
            count += 1;
        }
        square *= p.pow(count / 2);
        if count % 2 == 1 {
            rest *= p;
        }
        p += 1;
    }
    if m > 1 {
        rest *= m;
    }
    let mut result = Cyclo::from_rational(BigRational::new(
        BigInt::from(square),
        den,
    ));
    if rest > 1 {
        result = result.try_mul(&sqrt_squarefree(rest)?)?;
    }
    if sign < 0 {
        result = result.try_mul(&Cyclo::root_of_unity(4, 1)?)?;
    }
    Ok(result)
}

/// sqrt of a squarefree positive integer via quadratic Gauss sums.
fn sqrt_squarefree(m: u64) -> QgResult<Cyclo> {
    let mut result = Cyclo::one();
    for p in prime_divisors(m) {
        let s = if p == 2 {
            // sqrt(2) = zeta_8 + zeta_8^-1
            let z = Cyclo::root_of_unity(8, 1)?;
            z.try_add(&z.conj())?
        } else {
            // Gauss sum: sum over j of legendre(j|p) zeta_p^j equals
            // sqrt(p) for p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4.
            let mut g = Cyclo::zero();
            for j in 1..p {
                let legendre = mod_pow(j, (p - 1) / 2, p);
                let term = Cyclo::root_of_unity(p, j as i64)?;
                if legendre == 1 {
                    g = g.try_add(&term)?;
                } else {
                    g = g.try_sub(&term)?;
                }
            }
            if p % 4 == 3 {
                let minus_i = Cyclo::root_of_unity(4, 3)?;
                g = g.try_mul(&minus_i)?;
            }
            g
        };
        result = result.try_mul(&s)?;
    }
    Ok(result)
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclo {
        Cyclo::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, Cyclo::from_int(-1));
    }

    #[test]
    fn conj_inverts_roots() {
        assert_eq!(z(8, 1).conj(), z(8, 7));
    }

    #[test]
    fn half_sum_product() {
        // (1/2)(1 + i) * (1/2)(1 - i) = 1/2, expanded by hand.
        let half = Cyclo::from_ratio(1, 2);
        let i = z(4, 1);
        let a = &half * &(&Cyclo::one() + &i);
        let b = &half * &(&Cyclo::one() - &i);
        assert_eq!(&a * &b, half);
    }

    #[test]
    fn conductor_reduction() {
        // zeta_4^2 = -1 must come back at conductor 1.
        let i = z(4, 1);
        let m1 = &i * &i;
        assert_eq!(m1.conductor(), 1);
        // zeta_8^2 = zeta_4.
        assert_eq!(&z(8, 1) * &z(8, 1), z(4, 1));
        // zeta_6 = -zeta_3^2 lives at conductor 3.
        assert_eq!(z(6, 1).conductor(), 3);
    }

    #[test]
    fn inverse_of_nonzero() {
        let x = &z(8, 3) + &Cyclo::from_ratio(2, 3);
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(Cyclo::zero().inverse().is_err());
    }

    #[test]
    fn division_by_zero_reported() {
        assert!(matches!(
            Cyclo::one().try_div(&Cyclo::zero()),
            Err(QgError::DivisionByZero)
        ));
    }

    #[test]
    fn conductor_overflow_reported() {
        assert!(matches!(
            Cyclo::root_of_unity(MAX_CONDUCTOR + 1, 1),
            Err(QgError::ConductorOverflow { .. })
        ));
    }

    #[test]
    fn display_parse_roundtrip() {
        let samples = vec![
            Cyclo::zero(),
            Cyclo::from_ratio(-3, 4),
            z(4, 1),
            &z(8, 1) + &Cyclo::from_ratio(1, 2),
            &z(12, 5).neg() - &Cyclo::from_int(2),
        ];
        for s in samples {
            let text = s.to_string();
            let back: Cyclo = text.parse().unwrap();
            assert_eq!(back, s, "roundtrip of `{text}`");
        }
    }

    #[test]
    fn sqrt_of_rationals_and_monomials() {
        let two = Cyclo::from_int(2);
        let r = sqrt_rational_times_root(&two).unwrap();
        assert_eq!(&r * &r, two);
        let half = Cyclo::from_ratio(1, 2);
        let r = sqrt_rational_times_root(&half).unwrap();
        assert_eq!(&r * &r, half);
        let m3 = Cyclo::from_int(-3);
        let r = sqrt_rational_times_root(&m3).unwrap();
        assert_eq!(&r * &r, m3);
        let v = &Cyclo::from_int(2) * &z(3, 1);
        let r = sqrt_rational_times_root(&v).unwrap();
        assert_eq!(&r * &r, v);
    }

    #[test]
    fn real_detection() {
        assert!(Cyclo::from_ratio(5, 2).is_real());
        let sqrt2 = &z(8, 1) + &z(8, 7);
        assert!(sqrt2.is_real());
        assert!(!z(4, 1).is_real());
    }
}
