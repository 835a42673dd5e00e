//! A_α = αD + (1−α)A, its spectrum, and the A_α-energy
//! Σ|λ_i − 2αq/p| measured from the graph's own mean diagonal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, rat_to_f64, EigenGroup, RationalMatrix, Spectrum, SymMatrix};

/// Maximum number of decimal digits for which a decimal α string is also
/// carried as an exact rational.
pub const EXACT_DECIMAL_DIGITS: usize = 6;

/// α ∈ [0, 1], optionally with an exact rational twin.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaValue {
    numeric: f64,
    exact: Option<BigRational>,
}

impl AlphaValue {
    /// Accepts any α in [0, 1]. Values that are exact multiples of 10⁻⁶
    /// (up to f64 rounding) also get an exact rational.
    pub fn new(numeric: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&numeric) {
            return Err(Error::AlphaOutOfRange(numeric));
        }
        let scaled = numeric * 1e6;
        let exact = ((scaled - scaled.round()).abs() < 1e-6).then(|| {
            BigRational::new(BigInt::from(scaled.round() as i64), BigInt::from(1_000_000))
        });
        Ok(AlphaValue { numeric, exact })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::MalformedAlpha(format!("{num}/{den}")));
        }
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Result<Self> {
        let numeric = rat_to_f64(&r);
        if r < BigRational::zero() || r > BigRational::one() {
            return Err(Error::AlphaOutOfRange(numeric));
        }
        Ok(AlphaValue {
            numeric,
            exact: Some(r),
        })
    }

    pub fn zero() -> Self {
        AlphaValue {
            numeric: 0.0,
            exact: Some(BigRational::zero()),
        }
    }

    pub fn numeric(&self) -> f64 {
        self.numeric
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    /// Energy is defined only for α < 1.
    pub fn check_energy(&self) -> Result<()> {
        if self.numeric >= 1.0 {
            return Err(Error::AlphaOneEnergy);
        }
        Ok(())
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.numeric)
    }
}

impl FromStr for AlphaValue {
    type Err = Error;

    /// Decimal (`0.25`, `.5`, `1`) or fraction (`1/4`) syntax.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedAlpha(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            return Self::from_ratio(n, d);
        }
        let numeric: f64 = s.parse().map_err(|_| bad())?;
        if !numeric.is_finite() {
            return Err(bad());
        }
        if !(0.0..=1.0).contains(&numeric) {
            return Err(Error::AlphaOutOfRange(numeric));
        }
        let exact = parse_decimal(s);
        Ok(AlphaValue { numeric, exact })
    }
}

/// Exact value of a plain decimal literal with at most
/// [`EXACT_DECIMAL_DIGITS`] fractional digits.
fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > EXACT_DECIMAL_DIGITS
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || (int.is_empty() && frac.is_empty())
    {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(digits, den))
}

pub fn a_alpha_matrix(g: &Graph, a: &AlphaValue) -> SymMatrix {
    let alpha = a.numeric();
    let mut m = SymMatrix::zeros(g.p());
    for v in 0..g.p() {
        m.set(v, v, alpha * g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        m.set(u, v, 1.0 - alpha);
    }
    m
}

/// Exact A_α for rational α.
pub fn a_alpha_matrix_exact(g: &Graph, a: &AlphaValue) -> Result<RationalMatrix> {
    let alpha = a.exact().ok_or(Error::AlphaNotRational)?;
    let off = BigRational::one() - alpha;
    let mut m = RationalMatrix::zeros(g.p());
    for v in 0..g.p() {
        m.set(v, v, alpha * BigRational::from_integer(g.degree(v).into()));
    }
    for &(u, v) in g.edges() {
        m.set(u, v, off.clone());
        m.set(v, u, off.clone());
    }
    Ok(m)
}

pub fn alpha_spectrum(g: &Graph, a: &AlphaValue) -> Result<Spectrum> {
    linalg::sym_eigenvalues(&a_alpha_matrix(g, a))
}

/// 2αq/p, the mean diagonal entry of A_α.
pub fn mean_offset(p: usize, q: usize, alpha: f64) -> f64 {
    if p == 0 {
        return 0.0;
    }
    2.0 * alpha * q as f64 / p as f64
}

/// One (graph, α) energy measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub graph_id: String,
    pub alpha: AlphaValue,
    pub p: usize,
    pub q: usize,
    pub regular: Option<usize>,
    pub offset: f64,
    pub eigenvalues: Spectrum,
    pub energy: f64,
}

impl EnergyReport {
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.graph_id = id.into();
        self
    }

    /// `{graph:{id,p,q,regular}, alpha, offset, eigenvalues:[{value,multiplicity}], energy}`
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct GraphInfo<'a> {
            id: &'a str,
            p: usize,
            q: usize,
            regular: Option<usize>,
        }
        #[derive(Serialize)]
        struct View<'a> {
            graph: GraphInfo<'a>,
            alpha: f64,
            offset: f64,
            eigenvalues: &'a [EigenGroup],
            energy: f64,
        }
        serde_json::to_value(View {
            graph: GraphInfo {
                id: &self.graph_id,
                p: self.p,
                q: self.q,
                regular: self.regular,
            },
            alpha: self.alpha.numeric(),
            offset: self.offset,
            eigenvalues: self.eigenvalues.groups(),
            energy: self.energy,
        })
        .expect("report serializes")
    }
}

pub fn alpha_energy(g: &Graph, a: &AlphaValue) -> Result<EnergyReport> {
    a.check_energy()?;
    let eigenvalues = alpha_spectrum(g, a)?;
    let offset = mean_offset(g.p(), g.q(), a.numeric());
    let energy = eigenvalues.deviation_sum(offset);
    Ok(EnergyReport {
        graph_id: String::new(),
        alpha: a.clone(),
        p: g.p(),
        q: g.q(),
        regular: g.regularity(),
        offset,
        eigenvalues,
        energy,
    })
}

/// One report per α, in input order.
pub fn energy_sweep(g: &Graph, alphas: &[AlphaValue]) -> Result<Vec<EnergyReport>> {
    alphas.par_iter().map(|a| alpha_energy(g, a)).collect()
}
