//! Exact base fields (ℚ and 𝔽_p) and dense linear algebra over them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of the split algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum BaseRing {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl BaseRing {
    /// `𝔽_p`, with `p` checked for primality by trial division.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidRing(format!("{p} exceeds the supported modulus size")));
        }
        Ok(Self::PrimeField(p))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Self::Rationals => Scalar::Q(BigRational::zero()),
            Self::PrimeField(p) => Scalar::Fp(0, p),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Self::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Self::PrimeField(p) => Scalar::Fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// `num/den`; `den` must be invertible.
    pub fn fraction(&self, num: i64, den: i64) -> Scalar {
        self.from_i64(num).div(&self.from_i64(den))
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rationals => write!(f, "q"),
            Self::PrimeField(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for BaseRing {
    type Err = Error;

    /// `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Self::Rationals);
        }
        match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::InvalidRing(format!("bad modulus `{p}`")))?;
                Self::prime_field(p)
            }
            None => Err(Error::InvalidRing(format!("unknown ring `{s}`; use q or fp:<p>"))),
        }
    }
}

/// A field element in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(u64, u64),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Q(q) => write!(f, "{q}"),
            Self::Fp(v, _) => write!(f, "{v}"),
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn ring(&self) -> BaseRing {
        match self {
            Self::Q(_) => BaseRing::Rationals,
            Self::Fp(_, p) => BaseRing::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Q(q) => q.is_zero(),
            Self::Fp(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Self::Q(q) => q.is_one(),
            Self::Fp(v, _) => *v == 1,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (Self::Q(a), Self::Q(b)) => Self::Q(a + b),
            (Self::Fp(a, p), Self::Fp(b, q)) if p == q => Self::Fp((a + b) % p, *p),
            _ => panic!("mixed base rings"),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Q(a) => Self::Q(-a),
            Self::Fp(a, p) => Self::Fp((p - a) % p, *p),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Self::Q(a), Self::Q(b)) => Self::Q(a * b),
            (Self::Fp(a, p), Self::Fp(b, q)) if p == q => Self::Fp(a * b % p, *p),
            _ => panic!("mixed base rings"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Self::Q(a) => Self::Q(a.recip()),
            Self::Fp(a, p) => Self::Fp(mod_pow(*a, p - 2, *p), *p),
        })
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }

    /// Whether the value is an integer, for compact printing.
    pub fn is_integral(&self) -> bool {
        match self {
            Self::Q(q) => q.is_integer(),
            Self::Fp(..) => true,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Self::Q(q) => q.is_negative(),
            Self::Fp(..) => false,
        }
    }
}

/// Dense row-major matrix over a [`BaseRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ring: BaseRing,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: BaseRing, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            ring,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: BaseRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_i64(ring: BaseRing, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| ring.from_i64(v)).collect();
        Ok(Self {
            rows: r,
            cols: c,
            ring,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(self.ring.zero(), |acc, c| {
                    let a = self.get(r, c);
                    if a.is_zero() || x[c].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&x[c]))
                    }
                })
            })
            .collect())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch("matrix product".into()));
        }
        let mut out = Matrix::zeros(self.ring, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    /// Pivots are the first nonzero entry scanning columns left to right.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let pv = self.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c).sub(&f.mul(pv));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.ring, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.ring.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(self.ring, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }
}

/// Some `x` with `A·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if a.rows != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows against right-hand side of length {}",
            a.rows,
            b.len()
        )));
    }
    let mut aug = Matrix::zeros(a.ring, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![a.ring.zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols).clone();
    }
    Ok(Some(x))
}

/// Basis of the null space read off the reduced echelon form: one vector
/// per free column, with a `1` in that column.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<Scalar>> {
    let mut m = a.clone();
    let pivots = m.rref();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![a.ring.zero(); a.cols];
            v[f] = a.ring.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.get(r, f).neg();
            }
            v
        })
        .collect()
}

/// Square and of full rank.
pub fn is_bijective(a: &Matrix) -> bool {
    a.rows == a.cols && a.rank() == a.cols
}
