//! Exact rational characteristic polynomials and real-root isolation.
//!
//! The characteristic polynomial is computed with Faddeev–LeVerrier over the
//! integers (the matrix is first scaled by the lcm of its denominators), so
//! every division in the recurrence is exact. Real roots are isolated per
//! square-free factor with Sturm sequences and refined by exact bisection.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient-growth guard for [`charpoly_exact`].
pub const MAX_EXACT_DIM: usize = 64;
/// Bisection steps allowed per isolated root.
pub const MAX_BISECTIONS: usize = 400;
/// Interval width at which root refinement stops.
const ROOT_WIDTH: f64 = 1e-13;

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Euclidean norm of the coefficient vector, in floating point.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| rat_to_f64(c).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at `x`, computed exactly.
    fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval_exact(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    /// Multiplies by a positive rational so the coefficients become coprime
    /// integers. Signs are preserved, which Sturm chains depend on.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(
            ints.into_iter()
                .map(|c| BigRational::from_integer(c / &g))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.is_zero() || self.degree() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (dd..=self.degree()).rev() {
            let c = &rem[k] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &c * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1.primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns `(factor, multiplicity)` with
    /// square-free, pairwise coprime, non-constant monic factors whose
    /// product (with multiplicities) is the monic input.
    pub fn square_free_factors(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = sub(&c, &b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = sub(&c, &b.derivative());
            i += 1;
        }
        out
    }

    /// Evaluates in floating point (coefficients rounded to f64 first).
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rat_to_f64(c))
    }
}

fn sub(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    RationalPoly::new((0..n).map(|k| a.coeff(k) - b.coeff(k)).collect())
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator beyond f64 range: shift both down
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
        let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({})", mag)?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix of exact rationals, row-major. Need not be symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigRational>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RationalMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }
}

/// det(λI − M) with exact coefficients.
pub fn charpoly_exact(m: &RationalMatrix) -> Result<RationalPoly> {
    let n = m.dim();
    if n > MAX_EXACT_DIM {
        return Err(Error::Dimension {
            n,
            cap: MAX_EXACT_DIM,
        });
    }
    if n == 0 {
        return Ok(RationalPoly::from_i64(&[1]));
    }
    let scale = m
        .data
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // sparse rows of the integer matrix N = scale·M
    let rows: Vec<Vec<(usize, BigInt)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let v = m.get(i, j);
                    (!v.is_zero()).then(|| {
                        (
                            j,
                            (v * BigRational::from_integer(scale.clone())).to_integer(),
                        )
                    })
                })
                .collect()
        })
        .collect();

    let int_coeffs = faddeev_leverrier(n, &rows);

    // det(λI − N/s) = s^{−n} det(sλ I − N) = Σ c_k s^{k−n} λ^k
    let mut coeffs = Vec::with_capacity(n + 1);
    for (k, c) in int_coeffs.into_iter().enumerate() {
        let denom = num_traits::pow(scale.clone(), n - k);
        coeffs.push(BigRational::new(c, denom));
    }
    Ok(RationalPoly::new(coeffs))
}

/// Integer Faddeev–LeVerrier. Returns ascending coefficients c_0..c_n of
/// det(λI − N) with c_n = 1.
fn faddeev_leverrier(n: usize, rows: &[Vec<(usize, BigInt)>]) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // M_1 = I
    let mut mk: Vec<BigInt> = (0..n * n)
        .map(|idx| {
            if idx / n == idx % n {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    for k in 1..=n {
        // AM = N · M_k
        let mut am = vec![BigInt::zero(); n * n];
        for (i, row) in rows.iter().enumerate() {
            for (t, a) in row {
                let src = &mk[t * n..(t + 1) * n];
                let dst = &mut am[i * n..(i + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d += a * s;
                    }
                }
            }
        }
        let tr: BigInt = (0..n).map(|i| &am[i * n + i]).sum();
        let c = -(tr / BigInt::from(k));
        coeffs[n - k] = c.clone();
        if k < n {
            for i in 0..n {
                am[i * n + i] += &c;
            }
            mk = am;
        }
    }
    coeffs
}

/// Real roots with multiplicity, non-increasing. Assumes every root is real
/// (as for the characteristic polynomial of a symmetric matrix); complex
/// roots are silently absent from the result.
pub fn poly_roots_real(pl: &RationalPoly) -> Result<Vec<f64>> {
    let mut roots = Vec::new();
    for (factor, mult) in pl.square_free_factors() {
        for r in isolate_and_refine(&factor)? {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots)
}

fn sturm_chain(f: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = vec![f.primitive(), f.derivative().primitive()];
    loop {
        let n = chain.len();
        if chain[n - 1].degree() == 0 {
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        let neg = RationalPoly::new(r.coeffs.iter().map(|c| -c).collect());
        chain.push(neg.primitive());
    }
    chain
}

fn sign_changes(chain: &[RationalPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
    }
    count
}

/// Isolates every real root of a square-free polynomial and refines each to
/// [`ROOT_WIDTH`].
fn isolate_and_refine(f: &RationalPoly) -> Result<Vec<f64>> {
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    if f.degree() == 1 {
        let root = -(f.coeff(0) / f.coeff(1));
        return Ok(vec![rat_to_f64(&root)]);
    }
    let chain = sturm_chain(f);
    // Cauchy bound, made strict
    let lead = f.leading().abs();
    let bound = f.coeffs[..f.degree()]
        .iter()
        .fold(BigRational::zero(), |m, c| m.max(c.abs() / &lead))
        + BigRational::from_integer(2.into());
    let lo = -bound.clone();
    let hi = bound;

    let mut out = Vec::new();
    let mut stack = vec![(
        lo.clone(),
        hi.clone(),
        sign_changes(&chain, &lo),
        sign_changes(&chain, &hi),
    )];
    let two = BigRational::from_integer(2.into());
    let mut steps = 0usize;
    while let Some((a, b, va, vb)) = stack.pop() {
        let count = va - vb; // distinct roots in (a, b]
        if count == 0 {
            continue;
        }
        if count == 1 {
            out.push(refine(f, a, b)?);
            continue;
        }
        steps += 1;
        if steps > MAX_BISECTIONS * f.degree() {
            return Err(Error::RootNotConverged { iterations: steps });
        }
        let mid = (&a + &b) / &two;
        let vm = sign_changes(&chain, &mid);
        stack.push((a, mid.clone(), va, vm));
        stack.push((mid, b, vm, vb));
    }
    Ok(out)
}

/// Bisection for the single root in (a, b] of a square-free polynomial.
fn refine(f: &RationalPoly, mut a: BigRational, mut b: BigRational) -> Result<f64> {
    let two = BigRational::from_integer(2.into());
    let sb = f.sign_at(&b);
    if sb == 0 {
        return Ok(rat_to_f64(&b));
    }
    for _ in 0..MAX_BISECTIONS {
        if rat_to_f64(&(&b - &a)) <= ROOT_WIDTH * (1.0 + rat_to_f64(&b).abs()) {
            let mid = (&a + &b) / &two;
            let k = mid.round();
            if k > a && k <= b && f.sign_at(&k) == 0 {
                return Ok(rat_to_f64(&k));
            }
            return Ok(rat_to_f64(&mid));
        }
        let mid = (&a + &b) / &two;
        match f.sign_at(&mid) {
            0 => return Ok(rat_to_f64(&mid)),
            s if s == sb => b = mid,
            _ => a = mid,
        }
    }
    Err(Error::RootNotConverged {
        iterations: MAX_BISECTIONS,
    })
}
