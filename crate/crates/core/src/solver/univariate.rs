//! Dense univariate polynomials over ℚ(i) and exact root extraction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustfft::num_complex::Complex64;

use crate::algebra::{GaussianRational, Monomial, MultiPoly, VarSet};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> &GaussianRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Read a polynomial that uses only `var`.
    pub fn from_multi(p: &MultiPoly, var: &str) -> Option<Self> {
        let i = p.vars().index_of(var);
        let mut coeffs: Vec<GaussianRational> = Vec::new();
        for (m, c) in p.terms() {
            let e = match i {
                Some(i) => {
                    if m.degree() != m.exp(i) as u32 {
                        return None;
                    }
                    m.exp(i) as usize
                }
                None => {
                    if !m.is_one() {
                        return None;
                    }
                    0
                }
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, GaussianRational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_multi(&self, vars: &VarSet, var: &str) -> MultiPoly {
        let i = vars.index_of(var).expect("variable in registry");
        MultiPoly::from_terms(
            vars,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| {
                    let mut m = Monomial::one();
                    m.set_exp(i, e as u16);
                    (m, c.clone())
                }),
        )
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * &GaussianRational::from_int(e as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero");
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (UniPoly::zero(), self.clone());
        }
        let inv = d.lc().inv().expect("nonzero");
        let dd = d.degree();
        let mut q = vec![GaussianRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs
            .iter()
            .map(|c| {
                let (re, im) = c.to_f64();
                Complex64::new(re, im)
            })
            .collect()
    }
}

/// All roots of a square-free polynomial in f64, by Aberth–Ehrlich iteration.
fn numeric_roots(p: &UniPoly) -> Vec<Complex64> {
    let n = p.degree();
    if n == 0 {
        return Vec::new();
    }
    let c = p.monic().to_complex();
    let horner = |z: Complex64, cs: &[Complex64]| {
        cs.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
    };
    let dc: Vec<Complex64> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(e, a)| a * e as f64)
        .collect();
    let bound = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                0.5 * bound,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let f = horner(z[k], &c);
            let df = horner(z[k], &dc);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn round_to(x: &GaussianRational, den: &BigInt) -> GaussianRational {
    let d = BigRational::from_integer(den.clone());
    let r = |q: &BigRational| BigRational::new((q * &d).round().to_integer(), den.clone());
    GaussianRational::new(r(x.re()), r(x.im()))
}

fn bit_length(x: &BigInt) -> u64 {
    x.abs().bits()
}

/// Roots of `p` that lie in ℚ(i), each exactly once, sorted by
/// (real, imaginary) part.
pub fn rational_roots(p: &UniPoly) -> Vec<GaussianRational> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let s = p.squarefree();
    // any ℚ(i) root r of a Gaussian-integer primitive polynomial has lc·r a
    // Gaussian integer; scale so that this is the case
    let mut l = BigInt::one();
    for c in &s.coeffs {
        l = num_integer::Integer::lcm(&l, &c.denominator_lcm());
    }
    let scaled = UniPoly::new(
        s.coeffs
            .iter()
            .map(|c| c * &GaussianRational::real(BigRational::from_integer(l.clone())))
            .collect(),
    );
    let lc = scaled.lc().clone();
    let need = 64 + bit_length(lc.re().numer()) + bit_length(lc.im().numer()) + 8;
    let ds = s.derivative();
    let mut out: Vec<GaussianRational> = Vec::new();
    for z0 in numeric_roots(&s) {
        let Some(mut z) = GaussianRational::from_f64_with_den(z0.re, z0.im, &pow2(52)) else {
            continue;
        };
        // exact Newton with rounding, doubling the working precision
        let mut bits = 52u64;
        for _ in 0..12 {
            let f = s.eval(&z);
            if f.is_zero() {
                break;
            }
            let dfz = ds.eval(&z);
            if dfz.is_zero() {
                break;
            }
            z = &z - &(&f / &dfz);
            bits = (bits * 2).min(need.max(104));
            z = round_to(&z, &pow2(bits));
            if bits >= need {
                break;
            }
        }
        // candidate with denominator dividing lc: r = round(lc·z)/lc
        let lz = &lc * &z;
        let cand = &lz.round() / &lc;
        if s.eval(&cand).is_zero() && !out.contains(&cand) {
            out.push(cand);
            continue;
        }
        // the root may be exact at small denominators even if lc is large
        let small = round_to(&z, &pow2(0));
        if s.eval(&small).is_zero() && !out.contains(&small) {
            out.push(small);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(cs: &[(i64, i64)]) -> UniPoly {
        UniPoly::new(
            cs.iter()
                .map(|(n, d)| GaussianRational::ratio(*n, *d))
                .collect(),
        )
    }

    #[test]
    fn division_and_gcd() {
        // (x−1)(x+2) = x² + x − 2
        let p = up(&[(-2, 1), (1, 1), (1, 1)]);
        let d = up(&[(-1, 1), (1, 1)]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, up(&[(2, 1), (1, 1)]));
        let sq = UniPoly::new(vec![1.into(), 2.into(), 1.into()]); // (x+1)²
        assert_eq!(sq.squarefree(), up(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn rational_and_gaussian_roots() {
        // (48x + 1)(2x − 1)(x² + 1)(x² − 2)
        let f = |c: &[(i64, i64)]| up(c);
        let mut p = f(&[(1, 1), (48, 1)]);
        for q in [
            f(&[(-1, 1), (2, 1)]),
            f(&[(1, 1), (0, 1), (1, 1)]),
            f(&[(-2, 1), (0, 1), (1, 1)]),
        ] {
            p = mul(&p, &q);
        }
        let r = rational_roots(&p);
        let want = vec![
            GaussianRational::ratio(-1, 48),
            GaussianRational::complex((0, 1), (-1, 1)),
            GaussianRational::complex((0, 1), (1, 1)),
            GaussianRational::ratio(1, 2),
        ];
        let mut want = want;
        want.sort();
        assert_eq!(r, want);
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut c = vec![GaussianRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        UniPoly::new(c)
    }

    #[test]
    fn multiple_roots_reported_once() {
        // (x − 3/7)³
        let base = up(&[(-3, 7), (1, 1)]);
        let p = mul(&mul(&base, &base), &base);
        assert_eq!(rational_roots(&p), vec![GaussianRational::ratio(3, 7)]);
    }
}
