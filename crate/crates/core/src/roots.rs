//! Complex roots of integer polynomials and the unit-disk scan around 1.
//!
//! Roots at 0 and 1 are split off exactly, the rest is separated into
//! squarefree factors, and each factor is solved with Aberth iteration in
//! double precision. Every root is then polished by Newton steps in 256-bit
//! fixed point, and residuals are measured in the same precision.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{enumerate, GenSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::poly::CoeffPoly;
use crate::relpoly::{reliability_poly, ReliabilityMeasure};
use crate::sturm::squarefree_decomposition;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Slack on `|z - 1| <= 1`.
pub const DISK_TOLERANCE: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 10_000;

const FRAC_BITS: usize = 256;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    /// All roots with multiplicity, zero roots first, then roots at 1.
    pub roots: Vec<Complex64>,
    pub zero_multiplicity: usize,
    pub one_multiplicity: usize,
    /// Largest `|p(z)| / (1 + |lc| |z|^deg)` over the roots.
    pub residual: f64,
    pub max_dist_from_one: f64,
    pub inside_disk: bool,
    /// Indices of computed roots with `||z - 1| - 1| <= DISK_TOLERANCE`.
    /// Exact roots at 0 and 1 are never listed.
    pub borderline: Vec<usize>,
    /// Distinct real roots in the open interval `(0, 1)`.
    pub real_roots_in_01: usize,
}

impl RootReport {
    /// `|Σ z - (-c_{d-1} / c_d)|` relative to `max(1, |c_{d-1} / c_d|)`.
    pub fn vieta_error(&self, p: &CoeffPoly) -> f64 {
        let d = self.roots.len();
        let expected = -to_f64(&p.coeff(d - 1)) / to_f64(&p.coeff(d));
        let sum: Complex64 = self.roots.iter().sum();
        (sum - expected).norm() / expected.abs().max(1.0)
    }
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point complex number with `FRAC_BITS` fractional bits.
#[derive(Clone, Debug, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

fn fixed_from_f64(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let (mantissa, exp, sign) = x.integer_decode();
    let shift = exp as i64 + FRAC_BITS as i64;
    let m = BigInt::from(mantissa);
    let v = if shift >= 0 {
        m << shift as usize
    } else {
        m >> (-shift) as usize
    };
    if sign < 0 {
        -v
    } else {
        v
    }
}

fn fixed_to_f64(x: &BigInt) -> f64 {
    // Keep 64 significant bits before converting.
    let bits = x.bits() as i64;
    let drop = (bits - 64).max(0);
    let head = to_f64(&(x >> drop as usize));
    head * 2f64.powi((drop - FRAC_BITS as i64) as i32)
}

impl Fx {
    fn from_c64(z: Complex64) -> Self {
        Fx {
            re: fixed_from_f64(z.re),
            im: fixed_from_f64(z.im),
        }
    }

    fn integer(c: &BigInt) -> Self {
        Fx {
            re: c << FRAC_BITS,
            im: BigInt::zero(),
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re), fixed_to_f64(&self.im))
    }

    fn mul(&self, o: &Fx) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> FRAC_BITS,
            im: (&self.re * &o.im + &self.im * &o.re) >> FRAC_BITS,
        }
    }

    fn add(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn div(&self, o: &Fx) -> Option<Fx> {
        let den = (&o.re * &o.re + &o.im * &o.im) >> FRAC_BITS;
        if den.is_zero() {
            return None;
        }
        Some(Fx {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        })
    }

    fn abs_f64(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Magnitude bound in units of `2^-FRAC_BITS`, as a bit length.
    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

fn eval_fx(p: &CoeffPoly, z: &Fx) -> Fx {
    let mut acc = Fx {
        re: BigInt::zero(),
        im: BigInt::zero(),
    };
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(z).add(&Fx::integer(c));
    }
    acc
}

fn eval_c64(p: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Aberth iteration for a squarefree integer polynomial of degree >= 1.
fn aberth(p: &CoeffPoly) -> Result<Vec<Complex64>> {
    let deg = p.degree().expect("nonzero polynomial");
    let lc = to_f64(p.leading().expect("nonzero"));
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c) / lc).collect();
    if deg == 1 {
        return Ok(vec![Complex64::new(-coeffs[0], 0.0)]);
    }
    let radius = coeffs[0].abs().powf(1.0 / deg as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / deg as f64))
        .collect();
    let abs_coeffs: Vec<f64> = coeffs.iter().map(|c| c.abs()).collect();
    let mut done = vec![false; deg];
    for _ in 0..MAX_ITERATIONS {
        for i in 0..deg {
            if done[i] {
                continue;
            }
            let (v, d) = eval_c64(&coeffs, z[i]);
            // Stop once the value is at the rounding-noise floor.
            let noise = abs_coeffs
                .iter()
                .rev()
                .fold(0.0, |acc, c| acc * z[i].norm() + c)
                * 16.0
                * f64::EPSILON;
            if v.norm() <= noise {
                done[i] = true;
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                if step.norm() <= 1e-15 * (1.0 + z[i].norm()) {
                    done[i] = true;
                }
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Newton polishing in fixed point on a squarefree factor.
fn polish(p: &CoeffPoly, dp: &CoeffPoly, z: Complex64) -> Fx {
    let mut x = Fx::from_c64(z);
    for _ in 0..64 {
        let v = eval_fx(p, &x);
        let d = eval_fx(dp, &x);
        let Some(step) = v.div(&d) else { break };
        x = x.sub(&step);
        if step.bits() < 24 {
            break;
        }
    }
    x
}

fn scaled_residual(p: &CoeffPoly, z: &Fx) -> f64 {
    let deg = p.degree().unwrap_or(0) as i32;
    let lc = to_f64(p.leading().expect("nonzero")).abs();
    eval_fx(p, z).abs_f64() / (1.0 + lc * z.abs_f64().powi(deg))
}

/// All complex roots of `p`, certified to the scaled residual `tol`.
pub fn complex_roots(p: &CoeffPoly, tol: f64) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zero_multiplicity = p.low_order();
    let rest = p.unshift(zero_multiplicity);
    let one = BigInt::one();
    let x_minus_one = CoeffPoly::new(vec![-one.clone(), one]).to_rat();

    let mut one_multiplicity = 0;
    let mut computed: Vec<(Fx, usize)> = Vec::new();
    for (factor, mult) in squarefree_decomposition(&rest.to_rat())? {
        let mut f = factor;
        if f.eval(&num_rational::BigRational::one()).is_zero() {
            one_multiplicity += mult;
            f = f.div_rem(&x_minus_one).0;
        }
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let f = f.to_primitive();
        let df = f.derivative();
        let approx = aberth(&f)?;
        let polished: Vec<Fx> = approx.into_iter().map(|z| polish(&f, &df, z)).collect();
        for i in 0..polished.len() {
            for j in 0..i {
                if polished[i] == polished[j] {
                    return Err(Error::NoConvergence {
                        iterations: MAX_ITERATIONS,
                    });
                }
            }
        }
        computed.extend(polished.into_iter().map(|z| (z, mult)));
    }

    let mut residual = 0f64;
    for (z, _) in &computed {
        let r = scaled_residual(p, z);
        if !(r <= tol) {
            return Err(Error::NoConvergence {
                iterations: MAX_ITERATIONS,
            });
        }
        residual = residual.max(r);
    }

    let real_limit = BigInt::one() << (FRAC_BITS - 100);
    let unit = BigInt::one() << FRAC_BITS;
    let real_roots_in_01 = computed
        .iter()
        .filter(|(z, _)| z.im.abs() < real_limit && z.re.is_positive() && z.re < unit)
        .count();

    let mut roots = vec![Complex64::zero(); zero_multiplicity];
    roots.extend(std::iter::repeat_n(Complex64::one(), one_multiplicity));
    let exact = roots.len();
    for (z, mult) in &computed {
        roots.extend(std::iter::repeat_n(z.to_c64(), *mult));
    }
    let dist = |z: &Complex64| (z - Complex64::one()).norm();
    let max_dist_from_one = roots.iter().map(dist).fold(0f64, f64::max);
    let borderline = roots
        .iter()
        .enumerate()
        .skip(exact)
        .filter(|(_, z)| (dist(z) - 1.0).abs() <= DISK_TOLERANCE)
        .map(|(i, _)| i)
        .collect();
    Ok(RootReport {
        roots,
        zero_multiplicity,
        one_multiplicity,
        residual,
        max_dist_from_one,
        inside_disk: max_dist_from_one <= 1.0 + DISK_TOLERANCE,
        borderline,
        real_roots_in_01,
    })
}

/// One line of a root scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootRecord {
    pub graph6: String,
    pub measure: ReliabilityMeasure,
    pub coefficients: CoeffPoly,
    /// `(re, im)` pairs.
    pub roots: Vec<Complex64>,
    pub max_dist_from_one: f64,
    pub inside_disk: bool,
    pub borderline: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskSummary {
    pub measure: ReliabilityMeasure,
    pub graphs: usize,
    /// Maximum of `|z - 1|` over the class; 0 for an empty class.
    pub max_dist_from_one: f64,
    pub all_inside: bool,
    /// graph6 of graphs with a root outside the disk.
    pub outside: Vec<String>,
    pub records: Vec<RootRecord>,
}

/// Root reports of the reliability polynomials of `graphs`.
pub fn disk_scan_graphs(
    graphs: &[Graph],
    measure: ReliabilityMeasure,
    tol: f64,
) -> Result<DiskSummary> {
    let records = graphs
        .par_iter()
        .map(|g| {
            let poly = reliability_poly(g, measure)?;
            let report = complex_roots(&poly, tol)?;
            Ok(RootRecord {
                graph6: emit_graph6(g),
                measure,
                coefficients: poly,
                roots: report.roots,
                max_dist_from_one: report.max_dist_from_one,
                inside_disk: report.inside_disk,
                borderline: report.borderline.len(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_dist_from_one = records
        .iter()
        .map(|r| r.max_dist_from_one)
        .fold(0f64, f64::max);
    let outside: Vec<String> = records
        .iter()
        .filter(|r| !r.inside_disk)
        .map(|r| r.graph6.clone())
        .collect();
    Ok(DiskSummary {
        measure,
        graphs: records.len(),
        max_dist_from_one,
        all_inside: outside.is_empty(),
        outside,
        records,
    })
}

pub fn disk_scan(spec: GenSpec, measure: ReliabilityMeasure, tol: f64) -> Result<DiskSummary> {
    disk_scan_graphs(&enumerate(spec)?, measure, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn c4_edge_polynomial() {
        // 4q^3 (1 - q)
        let p = CoeffPoly::from_i64s(&[0, 0, 0, 4, -4]);
        let r = complex_roots(&p, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert_eq!((r.zero_multiplicity, r.one_multiplicity), (3, 1));
        assert_eq!(r.max_dist_from_one, 1.0);
        assert!(r.inside_disk);
        assert!(r.borderline.is_empty());
    }

    #[test]
    fn trivial_examples() {
        let r = complex_roots(&CoeffPoly::from_i64s(&[-1, 0, 1]), DEFAULT_TOLERANCE).unwrap();
        let mut re: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
        assert!((r.max_dist_from_one - 2.0).abs() < 1e-12);
        assert!(!r.inside_disk);
        let r = complex_roots(&CoeffPoly::from_i64s(&[0, 1]), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.roots, vec![Complex64::zero()]);
        assert!(r.inside_disk);
        assert!(matches!(
            complex_roots(&CoeffPoly::zero(), 1e-12),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn repeated_and_complex_roots() {
        // (x^2 + 1)^2 (2x - 1)^3
        let a = CoeffPoly::from_i64s(&[1, 0, 1]);
        let b = CoeffPoly::from_i64s(&[-1, 2]);
        let p = &a.pow(2) * &b.pow(3);
        let r = complex_roots(&p, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.roots.len(), 7);
        assert_eq!(r.roots.iter().filter(|z| close(**z, 0.0, 1.0)).count(), 2);
        assert_eq!(r.roots.iter().filter(|z| close(**z, 0.0, -1.0)).count(), 2);
        assert_eq!(r.roots.iter().filter(|z| close(**z, 0.5, 0.0)).count(), 3);
        assert_eq!(r.real_roots_in_01, 1);
        assert!(r.vieta_error(&p) < 1e-8);
    }

    #[test]
    fn wide_coefficients() {
        // Wilkinson-like product of (x - k) for k = 1..12
        let p = (1..=12).fold(CoeffPoly::one(), |acc, k| {
            &acc * &CoeffPoly::from_i64s(&[-k, 1])
        });
        let r = complex_roots(&p, DEFAULT_TOLERANCE).unwrap();
        for k in 1..=12 {
            assert!(r.roots.iter().any(|z| close(*z, k as f64, 0.0)), "root {k}");
        }
        assert!(r.residual <= DEFAULT_TOLERANCE);
    }
}
