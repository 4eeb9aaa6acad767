//! The seventh-order KdV family
//!
//! u_t + a1 u³u_x + a2 u_x³ + a3 u u_x u_xx + a4 u² u_xxx + a5 u_xx u_xxx
//!     + a6 u_x u_4x + a7 u u_5x + u_7x = 0,
//!
//! its named presets and its traveling-wave reduction.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::GaussianRational;
use crate::error::{Error, Result};
use crate::expr::{replace_derivatives, Derivative, Expr};

pub const U: &str = "u";
pub const V: &str = "v";
pub const X: &str = "x";
pub const T: &str = "t";
pub const XI: &str = "xi";
pub const LAMBDA: &str = "lambda";

/// The seven coefficients, stored as a1..a7.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdeCoefficients {
    pub a: [GaussianRational; 7],
}

impl PdeCoefficients {
    pub fn new(a: [GaussianRational; 7]) -> Self {
        Self { a }
    }

    pub fn from_ints(a: [i64; 7]) -> Self {
        Self {
            a: a.map(GaussianRational::from_int),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 7])
    }

    pub fn kk7() -> Self {
        Self::from_ints([2016, 630, 2268, 504, 252, 147, 42])
    }

    pub fn lax7() -> Self {
        Self::from_ints([140, 70, 280, 70, 70, 42, 14])
    }

    pub fn ski7() -> Self {
        Self::from_ints([252, 63, 378, 126, 63, 42, 21])
    }

    /// The u_x³ multiple left after integrating every term by parts:
    /// a2 − a3/2 + a4.
    pub fn flux_obstruction(&self) -> GaussianRational {
        let half = GaussianRational::ratio(1, 2);
        &(&self.a[1] - &(&self.a[2] * &half)) + &self.a[3]
    }
}

/// Look up `ski7`, `lax7` or `kk7`.
pub fn preset(name: &str) -> Result<PdeCoefficients> {
    match name.to_ascii_lowercase().as_str() {
        "kk7" => Ok(PdeCoefficients::kk7()),
        "lax7" => Ok(PdeCoefficients::lax7()),
        "ski7" => Ok(PdeCoefficients::ski7()),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

impl FromStr for PdeCoefficients {
    type Err = Error;
    /// A preset name or seven comma-separated exact rationals.
    fn from_str(s: &str) -> Result<Self> {
        if !s.contains(',') {
            return preset(s.trim());
        }
        let parts: Vec<&str> = s.split(',').map(|p| p.trim()).collect();
        if parts.len() != 7 {
            return Err(Error::Parse(format!(
                "expected 7 comma-separated coefficients, got {}",
                parts.len()
            )));
        }
        let mut a: [GaussianRational; 7] = Default::default();
        for (slot, p) in a.iter_mut().zip(parts) {
            *slot = p.parse()?;
        }
        Ok(Self { a })
    }
}

impl fmt::Display for PdeCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.a.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

fn ux(i: u32) -> Expr {
    Expr::fun(U, &[X, T], &[i, 0])
}

/// The seven nonlinear terms (without coefficients), in coefficient order.
pub fn nonlinear_terms() -> [Expr; 7] {
    let u = ux(0);
    [
        Expr::product([u.pow(3), ux(1)]),
        ux(1).pow(3),
        Expr::product([u.clone(), ux(1), ux(2)]),
        Expr::product([u.pow(2), ux(3)]),
        Expr::product([ux(2), ux(3)]),
        Expr::product([ux(1), ux(4)]),
        Expr::product([u, ux(5)]),
    ]
}

/// Everything except u_t: the seven nonlinear terms plus u_7x.
pub fn spatial_part(coeffs: &PdeCoefficients) -> Expr {
    let mut terms: Vec<Expr> = nonlinear_terms()
        .into_iter()
        .zip(&coeffs.a)
        .map(|(t, c)| &Expr::Num(c.clone()) * &t)
        .collect();
    terms.push(ux(7));
    Expr::sum(terms)
}

/// The PDE residual u_t + (spatial part) in the unknown u(x, t).
pub fn build_pde(coeffs: &PdeCoefficients) -> Expr {
    &Expr::fun(U, &[X, T], &[0, 1]) + &spatial_part(coeffs)
}

/// The ODE obtained from u(x,t) = v(ξ), ξ = x + λt.
#[derive(Clone, Debug, PartialEq)]
pub struct TravelingWaveOde {
    pub residual: Expr,
    pub speed: String,
}

/// Chain rule: ∂x → d/dξ, ∂t → λ d/dξ.
pub fn reduce_to_traveling_ode(pde: &Expr) -> TravelingWaveOde {
    let lambda = Expr::sym(LAMBDA);
    let residual = replace_derivatives(pde, &|d: &Derivative| {
        if d.name != U {
            return Expr::Fun(d.clone());
        }
        let i = d.order_in(X);
        let j = d.order_in(T);
        &lambda.pow(j as i64) * &Expr::fun(V, &[XI], &[i + j])
    });
    TravelingWaveOde {
        residual,
        speed: LAMBDA.to_string(),
    }
}

/// A flux F with u_t + ∂x F = 0 for solutions, when one exists inside the
/// differential-polynomial class of the family.
pub fn flux_decompose(coeffs: &PdeCoefficients) -> Option<Expr> {
    if !coeffs.flux_obstruction().is_zero() {
        return None;
    }
    let u = ux(0);
    let n = |c: &GaussianRational| Expr::Num(c.clone());
    let h = |p: i64, q: i64| Expr::rat(p, q);
    let [a1, _, a3, a4, a5, a6, a7] = &coeffs.a;
    // integration-by-parts table, one primitive per term shape
    let primitives = [
        &n(a1) * &(&h(1, 4) * &u.pow(4)),
        &n(a3) * &(&h(1, 2) * &Expr::product([u.clone(), ux(1).pow(2)])),
        &n(a4) * &(&Expr::product([u.pow(2), ux(2)]) - &Expr::product([u.clone(), ux(1).pow(2)])),
        &n(a5) * &(&h(1, 2) * &ux(2).pow(2)),
        &n(a6) * &(&Expr::product([ux(1), ux(3)]) - &(&h(1, 2) * &ux(2).pow(2))),
        &n(a7)
            * &Expr::sum([
                Expr::product([u.clone(), ux(4)]),
                -Expr::product([ux(1), ux(3)]),
                &h(1, 2) * &ux(2).pow(2),
            ]),
        ux(6),
    ];
    Some(Expr::sum(primitives))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::differentiate;

    #[test]
    fn presets_and_parsing() {
        assert_eq!(
            preset("kk7").unwrap().to_string(),
            "2016,630,2268,504,252,147,42"
        );
        assert_eq!(
            preset("lax7").unwrap(),
            PdeCoefficients::from_ints([140, 70, 280, 70, 70, 42, 14])
        );
        assert_eq!(
            preset("ski7").unwrap(),
            PdeCoefficients::from_ints([252, 63, 378, 126, 63, 42, 21])
        );
        assert!(matches!(preset("kdv5"), Err(Error::UnknownPreset(_))));
        let c: PdeCoefficients = "1, 1/2, 0, 0, 0, -3/4, 0".parse().unwrap();
        assert_eq!(c.a[1], GaussianRational::ratio(1, 2));
        assert!("1,2,3".parse::<PdeCoefficients>().is_err());
        assert!("1,2,3,4,5,6,x".parse::<PdeCoefficients>().is_err());
    }

    #[test]
    fn linear_core_and_constant_solution() {
        let pde = build_pde(&PdeCoefficients::zero());
        let want = &Expr::fun(U, &[X, T], &[0, 1]) + &Expr::fun(U, &[X, T], &[7, 0]);
        assert_eq!(pde, want);
        let pde = build_pde(&PdeCoefficients::kk7());
        let r = pde.subs(U, &Expr::sym("B")).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn kk7_traveling_wave_ode() {
        let ode = reduce_to_traveling_ode(&build_pde(&PdeCoefficients::kk7()));
        let v = |n: u32| Expr::fun(V, &[XI], &[n]);
        let want = Expr::sum([
            &Expr::int(2016) * &Expr::product([v(0).pow(3), v(1)]),
            &Expr::int(504) * &Expr::product([v(0).pow(2), v(3)]),
            &Expr::int(2268) * &Expr::product([v(0), v(1), v(2)]),
            &Expr::int(42) * &Expr::product([v(5), v(0)]),
            &Expr::int(630) * &v(1).pow(3),
            &Expr::sym(LAMBDA) * &v(1),
            &Expr::int(252) * &Expr::product([v(2), v(3)]),
            &Expr::int(147) * &Expr::product([v(1), v(4)]),
            v(7),
        ]);
        assert_eq!(ode.residual, want);
        assert!(!ode.residual.depends_on(X) && !ode.residual.depends_on(T));
    }

    #[test]
    fn flux_identity_and_obstruction() {
        let kk7 = PdeCoefficients::kk7();
        assert!(kk7.flux_obstruction().is_zero());
        let f = flux_decompose(&kk7).unwrap();
        assert_eq!(differentiate(&f, X, 1).unwrap(), spatial_part(&kk7));
        assert!(flux_decompose(&PdeCoefficients::from_ints([0, 1, 0, 0, 0, 0, 0])).is_none());
        let only_a = PdeCoefficients::from_ints([3, 0, 0, 0, 0, 0, 0]);
        let f = flux_decompose(&only_a).unwrap();
        assert_eq!(f, &"3/4".parse::<Expr>().unwrap() * &ux(0).pow(4) + ux(6));
    }
}
