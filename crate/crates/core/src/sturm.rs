//! Exact real-root counting with Sturm sequences over the rationals.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// Interval endpoint; the infinite ends are symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(v: i64) -> Self {
        Bound::Finite(BigRational::from_integer(v.into()))
    }
}

impl From<BigRational> for Bound {
    fn from(x: BigRational) -> Self {
        Bound::Finite(x)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => f.write_str("-inf"),
            Bound::Finite(x) => write!(f, "{x}"),
            Bound::PosInf => f.write_str("+inf"),
        }
    }
}

fn le(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, _) | (_, Bound::PosInf) => true,
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        (Bound::Finite(x), Bound::Finite(y)) => x <= y,
    }
}

/// Sign of `p` at a finite point or in the limit towards an infinite end.
pub fn sign_at(p: &RatPoly, x: &Bound) -> i8 {
    let Some(lc) = p.leading() else { return 0 };
    let lead = if lc.is_positive() { 1 } else { -1 };
    match x {
        Bound::PosInf => lead,
        Bound::NegInf => {
            if p.degree().unwrap_or(0) % 2 == 0 {
                lead
            } else {
                -lead
            }
        }
        Bound::Finite(v) => {
            let y = p.eval(v);
            if y.is_zero() {
                0
            } else if y.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}

/// `p / gcd(p, p')`, made monic. Panics on the zero polynomial.
pub fn squarefree_part(p: &RatPoly) -> RatPoly {
    assert!(!p.is_zero(), "squarefree part of the zero polynomial");
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).0.monic()
}

/// Yun's decomposition `p = c · Π f_k^k` into pairwise coprime monic
/// squarefree factors. Returns the nonconstant `(f_k, k)` pairs.
pub fn squarefree_decomposition(p: &RatPoly) -> Result<Vec<(RatPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = sub(&c, &b.derivative());
    let mut k = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = sub(&c, &b.derivative());
        k += 1;
    }
    Ok(out)
}

fn sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let len = a.coeffs().len().max(b.coeffs().len());
    let zero = BigRational::zero();
    RatPoly::new(
        (0..len)
            .map(|i| a.coeffs().get(i).unwrap_or(&zero) - b.coeffs().get(i).unwrap_or(&zero))
            .collect(),
    )
}

/// The Sturm chain `f, f', -rem(f, f'), ...`.
pub fn sturm_sequence(f: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let k = seq.len();
        let r = seq[k - 2].div_rem(&seq[k - 1]).1;
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn variations(seq: &[RatPoly], x: &Bound) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_root_count(p: &RatPoly, a: &Bound, b: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if le(b, a) {
        return Err(Error::InvalidArgument(format!("empty interval ({a}, {b}]")));
    }
    if matches!(a, Bound::PosInf) || matches!(b, Bound::NegInf) {
        return Err(Error::InvalidArgument(format!("empty interval ({a}, {b}]")));
    }
    let f = squarefree_part(p);
    if f.degree() == Some(0) {
        return Ok(0);
    }
    let seq = sturm_sequence(&f);
    Ok(count_with(&seq, a, b))
}

/// For a squarefree chain, `V(a) - V(b)` counts roots in `(a, b]`: a zero
/// value at an endpoint drops out and reads as the limit from the right.
fn count_with(seq: &[RatPoly], a: &Bound, b: &Bound) -> usize {
    variations(seq, a) - variations(seq, b)
}

/// Roots of a nonzero polynomial inside the open interval `(0, 1)`, split by
/// parity of multiplicity. Only odd-multiplicity roots change sign.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RootCensus {
    pub odd: usize,
    pub even: usize,
}

impl RootCensus {
    pub fn distinct(&self) -> usize {
        self.odd + self.even
    }
}

pub fn census_open_unit(p: &RatPoly) -> Result<RootCensus> {
    let zero = Bound::int(0);
    let one = Bound::int(1);
    let mut census = RootCensus::default();
    for (f, k) in squarefree_decomposition(p)? {
        let mut c = sturm_root_count(&f, &zero, &one)?;
        if f.eval(&BigRational::one()).is_zero() {
            c -= 1;
        }
        if k % 2 == 1 {
            census.odd += c;
        } else {
            census.even += c;
        }
    }
    Ok(census)
}

/// Points of `(0, 1)` at which `p` is nonzero, one in every gap between
/// consecutive distinct roots (plus the two outer gaps). The sign of `p` on
/// `(0, 1)` away from its roots is determined by its values here.
pub fn separating_points(p: &RatPoly) -> Result<Vec<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let one_r = BigRational::one();
    let mut f = squarefree_part(p);
    if f.eval(&one_r).is_zero() {
        f = f.div_rem(&RatPoly::from_i64s(&[-1, 1])).0;
    }
    let half = BigRational::new(1.into(), 2.into());
    if f.degree() == Some(0) {
        return Ok(vec![half]);
    }
    let seq = sturm_sequence(&f);
    let count = |a: &BigRational, b: &BigRational| {
        count_with(&seq, &Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
    };

    let mut stack = vec![(BigRational::zero(), one_r.clone())];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = (&a + &b) * &half;
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    if isolated.is_empty() {
        return Ok(vec![half]);
    }
    isolated.sort();

    let shrink = |(a, b): &(BigRational, BigRational)| {
        let m = (a + b) * &half;
        if count(a, &m) == 1 {
            (a.clone(), m)
        } else {
            (m, b.clone())
        }
    };
    // Refine until consecutive intervals leave a strict gap, and the outer
    // intervals stay away from 0 and 1.
    loop {
        let mut changed = false;
        let k = isolated.len();
        if isolated[0].0.is_zero() {
            isolated[0] = shrink(&isolated[0]);
            changed = true;
        }
        if isolated[k - 1].1 == one_r {
            isolated[k - 1] = shrink(&isolated[k - 1]);
            changed = true;
        }
        for i in 0..k - 1 {
            if isolated[i].1 >= isolated[i + 1].0 {
                isolated[i] = shrink(&isolated[i]);
                isolated[i + 1] = shrink(&isolated[i + 1]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut points = Vec::with_capacity(isolated.len() + 1);
    points.push(&isolated[0].0 * &half);
    for w in isolated.windows(2) {
        points.push((&w[0].1 + &w[1].0) * &half);
    }
    let last = &isolated[isolated.len() - 1].1;
    points.push((last + &one_r) * &half);
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn simple_counts() {
        let p = RatPoly::from_i64s(&[-2, 0, 1]);
        assert_eq!(
            sturm_root_count(&p, &Bound::int(0), &Bound::int(2)).unwrap(),
            1
        );
        assert_eq!(
            sturm_root_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(),
            2
        );
        let q = RatPoly::from_i64s(&[1, -4, 4]);
        assert_eq!(
            sturm_root_count(&q, &Bound::int(0), &Bound::int(1)).unwrap(),
            1
        );
        assert!(matches!(
            sturm_root_count(&RatPoly::zero(), &Bound::int(0), &Bound::int(1)),
            Err(Error::ZeroPolynomial)
        ));
        assert!(sturm_root_count(&p, &Bound::int(1), &Bound::int(1)).is_err());
    }

    #[test]
    fn half_open_endpoints() {
        // roots 0, 1, 2
        let p = RatPoly::from_i64s(&[0, 2, -3, 1]);
        assert_eq!(
            sturm_root_count(&p, &Bound::int(0), &Bound::int(1)).unwrap(),
            1
        );
        assert_eq!(
            sturm_root_count(&p, &Bound::int(-1), &Bound::int(0)).unwrap(),
            1
        );
        assert_eq!(
            sturm_root_count(&p, &Bound::int(0), &Bound::int(2)).unwrap(),
            2
        );
        assert_eq!(
            sturm_root_count(&p, &Bound::int(1), &Bound::int(2)).unwrap(),
            1
        );
    }

    #[test]
    fn decomposition() {
        // x (x-1)^2 (x+2)^3
        let x = RatPoly::from_i64s(&[0, 1]);
        let a = RatPoly::from_i64s(&[-1, 1]);
        let b = RatPoly::from_i64s(&[2, 1]);
        let p = &(&x * &(&a * &a)) * &(&b * &(&b * &b));
        let parts = squarefree_decomposition(&p.scale(&rat(3, 1))).unwrap();
        assert_eq!(parts, vec![(x, 1), (a, 2), (b, 3)]);
    }

    #[test]
    fn census() {
        // (2x-1)^2 (3x-1)
        let s = RatPoly::from_i64s(&[-1, 2]);
        let t = RatPoly::from_i64s(&[-1, 3]);
        let p = &(&s * &s) * &t;
        assert_eq!(
            census_open_unit(&p).unwrap(),
            RootCensus { odd: 1, even: 1 }
        );
        // roots at 0 and 1 are excluded
        let q = RatPoly::from_i64s(&[0, -1, 1]);
        assert_eq!(census_open_unit(&q).unwrap().distinct(), 0);
    }

    #[test]
    fn separating_points_avoid_roots() {
        let s = RatPoly::from_i64s(&[-1, 2]);
        let t = RatPoly::from_i64s(&[-1, 3]);
        let p = &(&s * &t) * &RatPoly::from_i64s(&[0, -1, 1]);
        let pts = separating_points(&p).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(
            pts[0] < rat(1, 3) && pts[1] > rat(1, 3) && pts[1] < rat(1, 2) && pts[2] > rat(1, 2)
        );
        for x in &pts {
            assert!(!p.eval(x).is_zero());
        }
        assert_eq!(
            separating_points(&RatPoly::from_i64s(&[3])).unwrap(),
            vec![rat(1, 2)]
        );
        assert_eq!(
            separating_points(&RatPoly::from_i64s(&[-4, 0, 1])).unwrap(),
            vec![rat(1, 2)]
        );
    }
}
