//! The known closed-form solutions of the kk7 equation.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::ansatz::AnsatzFamily;
use crate::expr::Expr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Soliton,
    Periodic,
    SingularHyperbolic,
    SingularPeriodic,
}

impl Kind {
    pub fn is_singular(&self) -> bool {
        matches!(self, Kind::SingularHyperbolic | Kind::SingularPeriodic)
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, Kind::Periodic | Kind::SingularPeriodic)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Soliton => "soliton",
            Kind::Periodic => "periodic",
            Kind::SingularHyperbolic => "singular-hyperbolic",
            Kind::SingularPeriodic => "singular-periodic",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Catalog,
    Pipeline,
}

/// u(x, t) in closed form together with the parameter values that produced
/// it.
///
/// `relations` are polynomial expressions that vanish on the solution; they
/// define radical symbols such as `r` with r² = d² − 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormSolution {
    pub id: String,
    pub family: AnsatzFamily,
    pub expr: Expr,
    pub kind: Kind,
    pub provenance: Provenance,
    /// `k` or `mu`
    pub scale: String,
    pub params: BTreeMap<String, Expr>,
    /// (`omega` or `lambda`, value)
    pub speed: (String, Expr),
    pub relations: Vec<Expr>,
    /// symbols defined only through `relations`
    pub radicals: Vec<String>,
}

impl ClosedFormSolution {
    /// Parameter symbols other than x, t.
    pub fn parameters(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .expr
            .symbols()
            .into_iter()
            .filter(|s| s != "x" && s != "t")
            .collect();
        for r in &self.relations {
            out.extend(r.symbols());
        }
        out.sort();
        out.dedup();
        out
    }

    /// The id of the paired entry under μ → iμ (u1 ↔ u2, ...).
    pub fn partner(&self) -> Option<String> {
        let n: u32 = self.id.strip_prefix('u')?.parse().ok()?;
        match n {
            0 => None,
            n if n % 2 == 1 => Some(format!("u{}", n + 1)),
            n => Some(format!("u{}", n - 1)),
        }
    }
}

impl fmt::Display for ClosedFormSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.id, self.expr)?;
        if !self.relations.is_empty() {
            let rs: Vec<String> = self.relations.iter().map(|r| format!("{r} = 0")).collect();
            write!(f, " where {}", rs.join(", "))?;
        }
        Ok(())
    }
}

fn e(s: &str) -> Expr {
    s.parse()
        .unwrap_or_else(|err| panic!("catalog expression {s:?}: {err}"))
}

struct Row {
    id: &'static str,
    family: AnsatzFamily,
    expr: &'static str,
    kind: Kind,
    params: &'static [(&'static str, &'static str)],
    speed: &'static str,
    relations: &'static [&'static str],
    radicals: &'static [&'static str],
}

const TC: AnsatzFamily = AnsatzFamily::TanhCoth;
const SC: AnsatzFamily = AnsatzFamily::SinhCosh;

const ROWS: &[Row] = &[
    Row {
        id: "u0",
        family: AnsatzFamily::ColeHopf,
        expr: "-k^2/24 + k^2/(4*(1 + cosh(k*x + k^7*t/48 + delta)))",
        kind: Kind::Soliton,
        params: &[("A", "1/2"), ("B", "-k^2/24")],
        speed: "-k^7/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u1",
        family: TC,
        expr: "mu^2/3 - mu^2/2*coth(mu*(x + 4*mu^6*t/3))^2",
        kind: Kind::SingularHyperbolic,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "0"),
            ("d", "-mu^2/2"),
            ("p", "mu^2/3"),
        ],
        speed: "4*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u2",
        family: TC,
        expr: "-mu^2/3 - mu^2/2*cot(mu*(x - 4*mu^6*t/3))^2",
        kind: Kind::SingularPeriodic,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "0"),
            ("d", "-mu^2/2"),
            ("p", "-mu^2/3"),
        ],
        speed: "-4*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u3",
        family: TC,
        expr: "mu^2/3 - mu^2/2*tanh(mu*(x + 4*mu^6*t/3))^2",
        kind: Kind::Soliton,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "0"),
            ("p", "mu^2/3"),
        ],
        speed: "4*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u4",
        family: TC,
        expr: "-mu^2/3 - mu^2/2*tan(mu*(x - 4*mu^6*t/3))^2",
        kind: Kind::SingularPeriodic,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "0"),
            ("p", "-mu^2/3"),
        ],
        speed: "-4*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u5",
        family: TC,
        expr:
            "mu^2/3 - mu^2/2*coth(mu*(x + 256*mu^6*t/3))^2 - mu^2/2*tanh(mu*(x + 256*mu^6*t/3))^2",
        kind: Kind::SingularHyperbolic,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "-mu^2/2"),
            ("p", "mu^2/3"),
        ],
        speed: "256*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u6",
        family: TC,
        expr: "-mu^2/3 - mu^2/2*cot(mu*(x - 256*mu^6*t/3))^2 - mu^2/2*tan(mu*(x - 256*mu^6*t/3))^2",
        kind: Kind::SingularPeriodic,
        params: &[
            ("a", "0"),
            ("b", "0"),
            ("c", "-mu^2/2"),
            ("d", "-mu^2/2"),
            ("p", "-mu^2/3"),
        ],
        speed: "-256*mu^6/3",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u7",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 - cosh(mu*(x + mu^6*t/48))))",
        kind: Kind::SingularHyperbolic,
        params: &[
            ("c", "0"),
            ("d", "-1"),
            ("kappa", "mu^2/4"),
            ("p", "-mu^2/24"),
        ],
        speed: "mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u8",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 - cos(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[
            ("c", "0"),
            ("d", "-1"),
            ("kappa", "-mu^2/4"),
            ("p", "mu^2/24"),
        ],
        speed: "-mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u9",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 + cosh(mu*(x + mu^6*t/48))))",
        kind: Kind::Soliton,
        params: &[
            ("c", "0"),
            ("d", "1"),
            ("kappa", "mu^2/4"),
            ("p", "-mu^2/24"),
        ],
        speed: "mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u10",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 + cos(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[
            ("c", "0"),
            ("d", "1"),
            ("kappa", "-mu^2/4"),
            ("p", "mu^2/24"),
        ],
        speed: "-mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u11",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 - I*sinh(mu*(x + mu^6*t/48))))",
        kind: Kind::Soliton,
        params: &[
            ("c", "-I"),
            ("d", "0"),
            ("kappa", "mu^2/4"),
            ("p", "-mu^2/24"),
        ],
        speed: "mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u12",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 + sin(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[
            ("c", "1"),
            ("d", "0"),
            ("kappa", "-mu^2/4"),
            ("p", "mu^2/24"),
        ],
        speed: "-mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u13",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 + I*sinh(mu*(x + mu^6*t/48))))",
        kind: Kind::Soliton,
        params: &[
            ("c", "I"),
            ("d", "0"),
            ("kappa", "mu^2/4"),
            ("p", "-mu^2/24"),
        ],
        speed: "mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u14",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 - sin(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[
            ("c", "-1"),
            ("d", "0"),
            ("kappa", "-mu^2/4"),
            ("p", "mu^2/24"),
        ],
        speed: "-mu^6/48",
        relations: &[],
        radicals: &[],
    },
    Row {
        id: "u15",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 + d*cosh(mu*(x + mu^6*t/48)) + r*sinh(mu*(x + mu^6*t/48))))",
        kind: Kind::Soliton,
        params: &[("c", "r"), ("kappa", "mu^2/4"), ("p", "-mu^2/24")],
        speed: "mu^6/48",
        relations: &["r^2 - d^2 + 1"],
        radicals: &["r"],
    },
    Row {
        id: "u16",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 + d*cos(mu*(x - mu^6*t/48)) + s*sin(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[("c", "s"), ("kappa", "-mu^2/4"), ("p", "mu^2/24")],
        speed: "-mu^6/48",
        relations: &["s^2 + d^2 - 1"],
        radicals: &["s"],
    },
    Row {
        id: "u17",
        family: SC,
        expr: "-mu^2/24 + mu^2/(4*(1 + d*cosh(mu*(x + mu^6*t/48)) - r*sinh(mu*(x + mu^6*t/48))))",
        kind: Kind::Soliton,
        params: &[("c", "-r"), ("kappa", "mu^2/4"), ("p", "-mu^2/24")],
        speed: "mu^6/48",
        relations: &["r^2 - d^2 + 1"],
        radicals: &["r"],
    },
    Row {
        id: "u18",
        family: SC,
        expr: "mu^2/24 - mu^2/(4*(1 + d*cos(mu*(x - mu^6*t/48)) - s*sin(mu*(x - mu^6*t/48))))",
        kind: Kind::SingularPeriodic,
        params: &[("c", "-s"), ("kappa", "-mu^2/4"), ("p", "mu^2/24")],
        speed: "-mu^6/48",
        relations: &["s^2 + d^2 - 1"],
        radicals: &["s"],
    },
];

fn build(row: &Row) -> ClosedFormSolution {
    let (scale, speed) = match row.family {
        AnsatzFamily::ColeHopf => ("k", "omega"),
        _ => ("mu", "lambda"),
    };
    ClosedFormSolution {
        id: row.id.to_string(),
        family: row.family,
        expr: e(row.expr),
        kind: row.kind,
        provenance: Provenance::Catalog,
        scale: scale.to_string(),
        params: row
            .params
            .iter()
            .map(|(k, v)| (k.to_string(), e(v)))
            .collect(),
        speed: (speed.to_string(), e(row.speed)),
        relations: row.relations.iter().map(|s| e(s)).collect(),
        radicals: row.radicals.iter().map(|s| s.to_string()).collect(),
    }
}

/// The nineteen entries u0 … u18. Odd entries are hyperbolic, even entries
/// (from u2) their trigonometric partners; u0 is the Cole-Hopf soliton.
pub fn catalog() -> Vec<ClosedFormSolution> {
    ROWS.iter().map(build).collect()
}

/// Look up a catalog entry by id.
pub fn entry(id: &str) -> Option<ClosedFormSolution> {
    ROWS.iter().find(|r| r.id == id).map(build)
}

/// The Cole-Hopf soliton with the second term exactly as it is usually
/// printed, 1/(4(1 + cosh θ)) without the k² factor. It is not a solution
/// for generic k and is kept as a negative fixture.
pub fn misprinted_u0() -> ClosedFormSolution {
    let mut s = build(&ROWS[0]);
    s.id = "u0-misprint".into();
    s.expr = e("-k^2/24 + 1/(4*(1 + cosh(k*x + k^7*t/48 + delta)))");
    s
}

/// Parameter values that keep every entry real where possible and satisfy
/// its relations: μ = k = 1, δ = 1/3, and d = 5/3 (r = 4/3) on the
/// hyperbolic side, d = 3/5 (s = 4/5) on the trigonometric side.
pub fn sample_parameters(sol: &ClosedFormSolution) -> BTreeMap<String, Expr> {
    let mut out = BTreeMap::new();
    let trig = sol.radicals.iter().any(|r| r == "s");
    for p in sol.parameters() {
        let v = match p.as_str() {
            "mu" | "k" => "1",
            "delta" => "1/3",
            "d" if trig => "3/5",
            "d" => "5/3",
            "r" => "4/3",
            "s" => "4/5",
            _ => "1/2",
        };
        out.insert(p, e(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nineteen_entries_nine_periodic() {
        let c = catalog();
        assert_eq!(c.len(), 19);
        assert_eq!(c.iter().filter(|s| s.kind.is_periodic()).count(), 9);
        for s in &c {
            let n: u32 = s.id[1..].parse().unwrap();
            assert_eq!(
                s.kind.is_periodic(),
                n > 0 && n.is_multiple_of(2),
                "{}",
                s.id
            );
        }
    }

    #[test]
    fn parameter_examples() {
        let u5 = entry("u5").unwrap();
        assert_eq!(u5.speed.1, e("256*mu^6/3"));
        let u9 = entry("u9").unwrap();
        assert_eq!(u9.params["p"], e("-mu^2/24"));
        assert_eq!(u9.params["kappa"], e("mu^2/4"));
        assert_eq!(u9.speed, ("lambda".to_string(), e("mu^6/48")));
        assert_eq!(u9.partner().as_deref(), Some("u10"));
        assert_eq!(entry("u16").unwrap().partner().as_deref(), Some("u15"));
    }

    #[test]
    fn sample_parameters_satisfy_relations() {
        for s in catalog() {
            let p = sample_parameters(&s);
            for r in &s.relations {
                let v = crate::expr::substitute(r, &p).unwrap();
                assert!(v.is_zero(), "{}: {r} -> {v}", s.id);
            }
        }
    }
}
