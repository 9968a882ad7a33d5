//! Exact arithmetic in cyclotomic fields `Q(zeta_L)` and exact linear algebra
//! over them.
//!
//! Elements are stored in the power basis of `Q[x]/(Phi_L)`, so a value of
//! conductor `L` is a rational coefficient vector of length `phi(L)`.
//! Equality, rank and kernel questions are therefore decided exactly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

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

/// A root of unity `zeta_L^k`, kept in canonical form: the stored order is
/// minimal, i.e. `gcd(k, L) = 1` unless the value is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    order: u64,
    exp: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exp: i64) -> Self {
        assert!(order > 0, "order must be positive");
        let e = exp.rem_euclid(order as i64) as u64;
        if e == 0 {
            return RootOfUnity { order: 1, exp: 0 };
        }
        let g = gcd(e, order);
        RootOfUnity {
            order: order / g,
            exp: e / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exp: 0 }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent in lowest terms: the value is `zeta_order^exponent`.
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    pub fn mul(self, other: RootOfUnity) -> RootOfUnity {
        let l = lcm(self.order, other.order);
        let e = (self.exp as u128 * (l / self.order) as u128
            + other.exp as u128 * (l / other.order) as u128)
            % l as u128;
        RootOfUnity::new(l, e as i64)
    }

    pub fn inv(self) -> RootOfUnity {
        RootOfUnity::new(self.order, -(self.exp as i64))
    }

    pub fn pow(self, k: i64) -> RootOfUnity {
        let e = (self.exp as i128 * k as i128).rem_euclid(self.order as i128);
        RootOfUnity::new(self.order, e as i64)
    }

    /// The unique square root of odd order: `y^((m+1)/2)` for `ord y = m` odd.
    pub fn sqrt_odd(self) -> Option<RootOfUnity> {
        if self.order % 2 == 0 {
            return None;
        }
        Some(self.pow(((self.order + 1) / 2) as i64))
    }

    /// Smallest `a >= 0` with `base^a = self`, if any.
    pub fn log_in_base(self, base: RootOfUnity) -> Option<u64> {
        let mut cur = RootOfUnity::one();
        for a in 0..base.order.max(1) {
            if cur == self {
                return Some(a);
            }
            cur = cur.mul(base);
        }
        None
    }

    /// Power-basis representation of this root inside `Q(zeta_conductor)`.
    pub fn embed(self, conductor: u64) -> Result<CycloNum> {
        if conductor % self.order != 0 {
            return Err(Error::ConductorMismatch {
                order: self.order,
                conductor,
            });
        }
        Ok(CycloNum::root_power(
            conductor,
            (self.exp * (conductor / self.order)) as i64,
        ))
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "z{}^{}", self.order, self.exp)
        }
    }
}

/// Precomputed data for a fixed conductor: the cyclotomic polynomial and the
/// reductions of `x^m` modulo it for every exponent arithmetic can produce.
struct ConductorTable {
    phi: usize,
    /// `pow_red[m]` is the coefficient vector of `x^m mod Phi_L`, integer
    /// coefficients; provided for `m < max(L, 2*phi - 1)`.
    pow_red: Vec<Vec<BigInt>>,
}

fn cyclotomic_polynomial(l: u64) -> Vec<BigInt> {
    // Phi_l = (x^l - 1) / prod_{d | l, d < l} Phi_d, all divisions exact.
    let mut memo: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for d in 1..=l {
        if l % d != 0 {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for e in 1..d {
            if d % e == 0 {
                num = poly_div_exact(&num, &memo[&e]);
            }
        }
        memo.insert(d, num);
    }
    memo.remove(&l).unwrap()
}

/// Exact division of integer polynomials with monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let qd = rem.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        q[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    q
}

fn conductor_table(l: u64) -> Arc<ConductorTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ConductorTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.get(&l) {
        return Arc::clone(t);
    }
    let cyclo = cyclotomic_polynomial(l);
    let phi = cyclo.len() - 1;
    let max_pow = std::cmp::max(l as usize, 2 * phi) + 1;
    let mut pow_red: Vec<Vec<BigInt>> = Vec::with_capacity(max_pow);
    for m in 0..max_pow {
        if m < phi {
            let mut v = vec![BigInt::zero(); phi];
            v[m] = BigInt::one();
            pow_red.push(v);
        } else {
            // x^m = x * x^(m-1), then cancel the degree-phi term against Phi.
            let prev = &pow_red[m - 1];
            let mut v = vec![BigInt::zero(); phi + 1];
            for (i, c) in prev.iter().enumerate() {
                v[i + 1] = c.clone();
            }
            let top = v[phi].clone();
            if !top.is_zero() {
                for i in 0..phi {
                    v[i] -= &top * &cyclo[i];
                }
            }
            v.truncate(phi);
            pow_red.push(v);
        }
    }
    let table = Arc::new(ConductorTable { phi, pow_red });
    guard.insert(l, Arc::clone(&table));
    table
}

/// Exact element of the cyclotomic field `Q(zeta_L)` in the power basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloNum {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(conductor: u64) -> Self {
        let phi = conductor_table(conductor).phi;
        CycloNum {
            conductor,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u64, r: BigRational) -> Self {
        let mut v = Self::zero(conductor);
        v.coeffs[0] = r;
        v
    }

    pub fn from_integer(conductor: u64, n: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(n)))
    }

    /// `x^k mod Phi_L`, i.e. `zeta_L^k`.
    pub fn root_power(conductor: u64, k: i64) -> Self {
        let table = conductor_table(conductor);
        let e = k.rem_euclid(conductor as i64) as usize;
        let coeffs = table.pow_red[e]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycloNum { conductor, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Re-express in `Q(zeta_m)` for a multiple `m` of the conductor.
    pub fn lift(&self, m: u64) -> Result<CycloNum> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch {
                order: self.conductor,
                conductor: m,
            });
        }
        let step = (m / self.conductor) as usize;
        let table = conductor_table(m);
        let mut out = vec![BigRational::zero(); table.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, rc) in table.pow_red[i * step].iter().enumerate() {
                if !rc.is_zero() {
                    out[j] += c * BigRational::from_integer(rc.clone());
                }
            }
        }
        Ok(CycloNum {
            conductor: m,
            coeffs: out,
        })
    }

    fn aligned(&self, other: &CycloNum) -> (CycloNum, CycloNum) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let l = lcm(self.conductor, other.conductor);
            (self.lift(l).unwrap(), other.lift(l).unwrap())
        }
    }

    pub fn add(&self, other: &CycloNum) -> CycloNum {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycloNum) -> CycloNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycloNum) -> CycloNum {
        let (a, b) = self.aligned(other);
        let table = conductor_table(a.conductor);
        let phi = table.phi;
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out = vec![BigRational::zero(); phi];
        for (m, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m < phi {
                out[m] += c;
            } else {
                for (j, rc) in table.pow_red[m].iter().enumerate() {
                    if !rc.is_zero() {
                        out[j] += &c * BigRational::from_integer(rc.clone());
                    }
                }
            }
        }
        CycloNum {
            conductor: a.conductor,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &BigRational) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_L`. Panics on zero.
    pub fn inv(&self) -> CycloNum {
        assert!(!self.is_zero(), "division by zero in Q(zeta_L)");
        let table = conductor_table(self.conductor);
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        // Invariant: r0 = s0 * f mod Phi, r1 = s1 * f mod Phi.
        let mut r0 = phi;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0 = vec![];
        let mut s1 = vec![BigRational::one()];
        while poly_deg(&r1) > 0 {
            let (q, rem) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        assert!(!r1.is_empty(), "element not invertible: Phi_L not squarefree?");
        let c = r1[0].recip();
        let mut out = vec![BigRational::zero(); table.phi];
        // s1 may exceed the basis length only transiently; reduce defensively.
        for (i, v) in s1.iter().enumerate() {
            let scaled = v * &c;
            if scaled.is_zero() {
                continue;
            }
            for (j, rc) in conductor_table(self.conductor).pow_red[i].iter().enumerate() {
                if !rc.is_zero() {
                    out[j] += &scaled * BigRational::from_integer(rc.clone());
                }
            }
        }
        CycloNum {
            conductor: self.conductor,
            coeffs: out,
        }
    }

    pub fn div(&self, other: &CycloNum) -> CycloNum {
        let (a, b) = self.aligned(other);
        a.mul(&b.inv())
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn poly_deg(v: &[BigRational]) -> usize {
    v.len().saturating_sub(1)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
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
    trim(out)
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = trim(den.to_vec());
    assert!(!den.is_empty());
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let lead = den[dd].recip();
    let mut q = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let i = rem.len() - 1 - dd;
        let c = rem.last().unwrap() * &lead;
        q[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[i + j] -= t;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() <= dd {
            break;
        }
    }
    (q, rem)
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// Dense matrix over a cyclotomic field. All entries share one conductor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, conductor: u64) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![CycloNum::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            *m.get_mut(i, i) = CycloNum::one(conductor);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut CycloNum {
        &mut self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: out,
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let conductor = self
            .entries
            .first()
            .map(|e| e.conductor())
            .unwrap_or(1);
        let mut out = vec![CycloNum::zero(conductor); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() && !v[j].is_zero() {
                    out[i] = out[i].add(&e.mul(&v[j]));
                }
            }
        }
        Ok(out)
    }

    /// Exact rank by pivoted Gaussian elimination over `Q(zeta_L)`.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<CycloNum>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        echelon_rank(&mut rows)
    }
}

/// Dimension of the span of the given coefficient vectors.
pub fn row_space_dim(vectors: &[Vec<CycloNum>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let n = vectors[0].len();
    for v in vectors {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let mut rows = vectors.to_vec();
    Ok(echelon_rank(&mut rows))
}

fn echelon_rank(rows: &mut Vec<Vec<CycloNum>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv();
        for c in col..cols {
            rows[rank][c] = rows[rank][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..cols {
                    let t = factor.mul(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub(&t);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
