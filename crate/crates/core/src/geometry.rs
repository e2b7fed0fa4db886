//! Dimensions, structure constants and Ricci components for the two
//! fibrations of `Sp(n)/Sp(n-p)`.
//!
//! Wallach(k1, k2, k3) has isotropy summands labelled `1, 2, 12, 13, 23` with
//! metric parameters `x1, x2, x12, x13, x23`; Flag(n, p) has summands `0..3`
//! with parameters `u0..u3`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::{Exact, RationalExpr};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "fibration", rename_all = "lowercase")]
pub enum FibrationSpec {
    Wallach { k1: u32, k2: u32, k3: u32 },
    Flag { n: u32, p: u32 },
}

pub const WALLACH_LABELS: [&str; 5] = ["1", "2", "12", "13", "23"];
pub const WALLACH_VARS: [&str; 5] = ["x1", "x2", "x12", "x13", "x23"];
pub const FLAG_LABELS: [&str; 4] = ["0", "1", "2", "3"];
pub const FLAG_VARS: [&str; 4] = ["u0", "u1", "u2", "u3"];

impl FibrationSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FibrationSpec::Wallach { k1, k2, k3 } => {
                if k1 == 0 || k2 == 0 || k3 == 0 {
                    return Err(Error::SpecError("Wallach parameters must be positive".into()));
                }
            }
            FibrationSpec::Flag { n, p } => {
                if p >= n {
                    return Err(Error::SpecError(format!("flag needs p < n, got n={n}, p={p}")));
                }
                if p < 2 {
                    // d1 = p^2 - 1 vanishes at p = 1, leaving an empty summand.
                    return Err(Error::SpecError(format!("flag needs p >= 2, got p={p}")));
                }
            }
        }
        Ok(())
    }

    /// `(n, p)` of the Stiefel manifold `Sp(n)/Sp(n-p)`.
    pub fn np(&self) -> (u32, u32) {
        match *self {
            FibrationSpec::Wallach { k1, k2, k3 } => (k1 + k2 + k3, k1 + k2),
            FibrationSpec::Flag { n, p } => (n, p),
        }
    }

    pub fn labels(&self) -> &'static [&'static str] {
        match self {
            FibrationSpec::Wallach { .. } => &WALLACH_LABELS,
            FibrationSpec::Flag { .. } => &FLAG_LABELS,
        }
    }

    pub fn var_names(&self) -> &'static [&'static str] {
        match self {
            FibrationSpec::Wallach { .. } => &WALLACH_VARS,
            FibrationSpec::Flag { .. } => &FLAG_VARS,
        }
    }

    /// The metric parameter fixed to 1 when solving.
    pub fn normalized_var(&self) -> &'static str {
        match self {
            FibrationSpec::Wallach { .. } => "x23",
            FibrationSpec::Flag { .. } => "u3",
        }
    }

    pub fn summand_count(&self) -> usize {
        self.labels().len()
    }
}

impl fmt::Display for FibrationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibrationSpec::Wallach { k1, k2, k3 } => write!(f, "wallach({k1},{k2},{k3})"),
            FibrationSpec::Flag { n, p } => write!(f, "flag({n},{p})"),
        }
    }
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Dimensions of the isotropy summands, in label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandDims {
    pub labels: &'static [&'static str],
    pub dims: Vec<BigRational>,
}

impl SummandDims {
    pub fn get(&self, label: &str) -> Option<&BigRational> {
        self.labels.iter().position(|l| *l == label).map(|i| &self.dims[i])
    }
}

pub fn summand_dims(spec: &FibrationSpec) -> Result<SummandDims> {
    spec.validate()?;
    let dims = match *spec {
        FibrationSpec::Wallach { k1, k2, k3 } => {
            let (k1, k2, k3) = (k1 as i64, k2 as i64, k3 as i64);
            vec![k1 * (2 * k1 + 1), k2 * (2 * k2 + 1), 4 * k1 * k2, 4 * k1 * k3, 4 * k2 * k3]
        }
        FibrationSpec::Flag { n, p } => {
            let (n, p) = (n as i64, p as i64);
            vec![1, p * p - 1, 4 * p * (n - p), p * (p + 1)]
        }
    };
    Ok(SummandDims { labels: spec.labels(), dims: dims.into_iter().map(q).collect() })
}

/// Fully symmetric table of the nonzero `A_{ijk}`, keyed by sorted summand
/// indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub labels: &'static [&'static str],
    table: BTreeMap<[usize; 3], BigRational>,
}

impl StructureConstants {
    fn key(i: usize, j: usize, k: usize) -> [usize; 3] {
        let mut key = [i, j, k];
        key.sort_unstable();
        key
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> BigRational {
        self.table.get(&Self::key(i, j, k)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn get_labels(&self, a: &str, b: &str, c: &str) -> Option<BigRational> {
        let idx = |l: &str| self.labels.iter().position(|x| *x == l);
        Some(self.get(idx(a)?, idx(b)?, idx(c)?))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&[usize; 3], &BigRational)> {
        self.table.iter()
    }
}

pub fn structure_constants(spec: &FibrationSpec) -> Result<StructureConstants> {
    spec.validate()?;
    let mut table = BTreeMap::new();
    let mut put = |i: usize, j: usize, k: usize, v: BigRational| {
        table.insert(StructureConstants::key(i, j, k), v);
    };
    match *spec {
        FibrationSpec::Wallach { k1, k2, k3 } => {
            let (n, _) = spec.np();
            let np1 = q(n as i64 + 1);
            let (k1, k2, k3) = (q(k1 as i64), q(k2 as i64), q(k3 as i64));
            let one = q(1);
            let two = q(2);
            let aaa = |k: &BigRational| k * (k + &one) * (&two * k + &one) / &np1;
            let abab = |ka: &BigRational, kb: &BigRational| ka * kb * (&two * ka + &one) / &np1;
            // Indices: 0 = 1, 1 = 2, 2 = 12, 3 = 13, 4 = 23.
            put(0, 0, 0, aaa(&k1));
            put(1, 1, 1, aaa(&k2));
            put(2, 2, 0, abab(&k1, &k2));
            put(2, 2, 1, abab(&k2, &k1));
            put(3, 3, 0, abab(&k1, &k3));
            put(4, 4, 1, abab(&k2, &k3));
            put(2, 4, 3, &two * &k1 * &k2 * &k3 / &np1);
        }
        FibrationSpec::Flag { .. } => {
            let d = summand_dims(spec)?.dims;
            let (d1, d2, d3) = (&d[1], &d[2], &d[3]);
            let den = d2 + q(4) * d3;
            put(2, 2, 0, d2 / &den);
            put(3, 3, 0, q(4) * d3 / &den);
            put(1, 1, 1, q(2) * d3 * (q(2) * d1 + q(2) - d3) / &den);
            put(1, 2, 2, d1 * d2 / &den);
            // Denominator d2 + 4 d3, consistent with the other triples and
            // with the closed-form Ricci components.
            put(1, 3, 3, q(2) * d3 * (d3 - q(2)) / &den);
            put(3, 2, 2, d2 * d3 / &den);
        }
    }
    table.retain(|_, v| !v.is_zero());
    Ok(StructureConstants { labels: spec.labels(), table })
}

/// Ricci components from the general formula
/// `r_k = 1/(2 x_k) + 1/(4 d_k) sum x_k/(x_j x_i) A_jik - 1/(2 d_k) sum x_j/(x_k x_i) A_kij`.
pub fn ricci_general(dims: &SummandDims, a: &StructureConstants, x: &[BigRational]) -> Result<Vec<BigRational>> {
    let s = dims.dims.len();
    if x.len() != s {
        return Err(Error::DomainError(format!("expected {s} metric parameters, got {}", x.len())));
    }
    if x.iter().any(|v| !v.is_positive()) {
        return Err(Error::DomainError("metric parameters must be positive".into()));
    }
    let mut out = Vec::with_capacity(s);
    for k in 0..s {
        let mut plus = BigRational::zero();
        let mut minus = BigRational::zero();
        for i in 0..s {
            for j in 0..s {
                let c = a.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                plus += &x[k] / (&x[j] * &x[i]) * &c;
                minus += &x[j] / (&x[k] * &x[i]) * &c;
            }
        }
        let dk = &dims.dims[k];
        out.push(q(1) / (q(2) * &x[k]) + plus / (q(4) * dk) - minus / (q(2) * dk));
    }
    Ok(out)
}

fn c(v: i64) -> RationalExpr {
    RationalExpr::int(v)
}

fn v(name: &str) -> RationalExpr {
    RationalExpr::var(name)
}

fn wallach_exprs(k1: u32, k2: u32, k3: u32) -> Vec<RationalExpr> {
    let n1 = (k1 + k2 + k3 + 1) as i64;
    let (k1, k2, k3) = (k1 as i64, k2 as i64, k3 as i64);
    let fr = |a: i64, b: i64| RationalExpr::rat(BigRational::new(a.into(), b.into()));
    let (x1, x2, x12, x13, x23) = (v("x1"), v("x2"), v("x12"), v("x13"), v("x23"));
    let r1 = fr(k1 + 1, 4 * n1) / x1.clone()
        + fr(k2, 4 * n1) * (x1.clone() / x12.clone().pow(2))
        + fr(k3, 4 * n1) * (x1.clone() / x13.clone().pow(2));
    let r2 = fr(k2 + 1, 4 * n1) / x2.clone()
        + fr(k1, 4 * n1) * (x2.clone() / x12.clone().pow(2))
        + fr(k3, 4 * n1) * (x2.clone() / x23.clone().pow(2));
    let r12 = c(1) / (c(2) * x12.clone())
        + fr(k3, 4 * n1)
            * (x12.clone() / (x13.clone() * x23.clone())
                - x13.clone() / (x12.clone() * x23.clone())
                - x23.clone() / (x12.clone() * x13.clone()))
        - fr(2 * k1 + 1, 8 * n1) * (x1.clone() / x12.clone().pow(2))
        - fr(2 * k2 + 1, 8 * n1) * (x2.clone() / x12.clone().pow(2));
    let r13 = c(1) / (c(2) * x13.clone())
        + fr(k2, 4 * n1)
            * (x13.clone() / (x12.clone() * x23.clone())
                - x12.clone() / (x13.clone() * x23.clone())
                - x23.clone() / (x12.clone() * x13.clone()))
        - fr(2 * k1 + 1, 8 * n1) * (x1.clone() / x13.clone().pow(2));
    let r23 = c(1) / (c(2) * x23.clone())
        + fr(k1, 4 * n1)
            * (x23.clone() / (x13.clone() * x12.clone())
                - x13.clone() / (x12.clone() * x23.clone())
                - x12.clone() / (x23.clone() * x13.clone()))
        - fr(2 * k2 + 1, 8 * n1) * (x2.clone() / x23.clone().pow(2));
    vec![r1, r2, r12, r13, r23]
}

/// Flag components with `n` and `p` given as expressions (numbers or
/// symbols).
fn flag_exprs(n: RationalExpr, p: RationalExpr) -> Vec<RationalExpr> {
    let d1 = p.clone().pow(2) - c(1);
    let d2 = c(4) * p.clone() * (n - p.clone());
    let d3 = p.clone() * (p + c(1));
    let den = d2.clone() + c(4) * d3.clone();
    let (u0, u1, u2, u3) = (v("u0"), v("u1"), v("u2"), v("u3"));
    let r0 = u0.clone() / (c(4) * u2.clone().pow(2)) * (d2.clone() / den.clone())
        + u0.clone() / (c(4) * u3.clone().pow(2)) * (c(4) * d3.clone() / den.clone());
    let r1 = c(1) / (c(4) * d1.clone() * u1.clone())
        * (c(2) * d3.clone() * (c(2) * d1.clone() + c(2) - d3.clone()) / den.clone())
        + u1.clone() / (c(4) * u2.clone().pow(2)) * (d2.clone() / den.clone())
        + u1.clone() / (c(2) * d1.clone() * u3.clone().pow(2)) * (d3.clone() * (d3.clone() - c(2)) / den.clone());
    let r2 = c(1) / (c(2) * u2.clone())
        - u3.clone() / (c(2) * u2.clone().pow(2)) * (d3.clone() / den.clone())
        - c(1) / (c(2) * u2.clone().pow(2))
            * (u0.clone() * (c(1) / den.clone()) + u1.clone() * (d1.clone() / den.clone()));
    let r3 = c(1) / u3.clone() * (fr_half() - fr_half() * (d2.clone() / den.clone()))
        + u3.clone() / (c(4) * u2.clone().pow(2)) * (d2 / den.clone())
        - c(1) / u3.clone().pow(2) * (u0 * (c(2) / den.clone()) + u1 * ((d3 - c(2)) / den));
    vec![r0, r1, r2, r3]
}

fn fr_half() -> RationalExpr {
    RationalExpr::rat(BigRational::new(1.into(), 2.into()))
}

/// Closed-form Ricci components as expressions in the metric parameters.
pub fn ricci_closed_form(spec: &FibrationSpec) -> Result<Vec<RationalExpr>> {
    spec.validate()?;
    Ok(match *spec {
        FibrationSpec::Wallach { k1, k2, k3 } => wallach_exprs(k1, k2, k3),
        FibrationSpec::Flag { n, p } => flag_exprs(c(n as i64), c(p as i64)),
    })
}

/// Flag components with `n` and `p` left as the symbols `n` and `p`.
pub fn flag_ricci_symbolic() -> Vec<RationalExpr> {
    flag_exprs(v("n"), v("p"))
}

/// Exact evaluation of the closed forms at a rational metric point given in
/// label order.
pub fn ricci_at(spec: &FibrationSpec, x: &[BigRational]) -> Result<Vec<BigRational>> {
    let exprs = ricci_closed_form(spec)?;
    let names = spec.var_names();
    if x.len() != names.len() {
        return Err(Error::DomainError(format!("expected {} metric parameters", names.len())));
    }
    if x.iter().any(|v| !v.is_positive()) {
        return Err(Error::DomainError("metric parameters must be positive".into()));
    }
    let lookup = |name: &str| -> Result<BigRational> {
        names
            .iter()
            .position(|n| *n == name)
            .map(|i| x[i].clone())
            .ok_or_else(|| Error::EvalError(format!("unknown variable {name}")))
    };
    exprs.iter().map(|e| e.eval_in(&Exact, &lookup)).collect()
}

/// For Wallach(k, k, m): the swap `x1 <-> x2, x13 <-> x23` of metric
/// parameters (label order).
pub fn wallach_swap<T: Clone>(x: &[T]) -> Vec<T> {
    vec![x[1].clone(), x[0].clone(), x[2].clone(), x[4].clone(), x[3].clone()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    #[test]
    fn dimension_examples() {
        let f = summand_dims(&FibrationSpec::Flag { n: 3, p: 2 }).unwrap();
        assert_eq!(f.dims, vec![int(1), int(3), int(8), int(6)]);
        let w = summand_dims(&FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }).unwrap();
        assert_eq!(w.dims, vec![int(3), int(3), int(4), int(4), int(4)]);
        assert!(matches!(summand_dims(&FibrationSpec::Flag { n: 3, p: 3 }), Err(Error::SpecError(_))));
        assert!(matches!(summand_dims(&FibrationSpec::Flag { n: 3, p: 1 }), Err(Error::SpecError(_))));
    }

    #[test]
    fn structure_constant_examples() {
        let w = structure_constants(&FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }).unwrap();
        assert_eq!(w.get_labels("1", "1", "1").unwrap(), frac(3, 2));
        assert_eq!(w.get_labels("12", "12", "1").unwrap(), frac(3, 4));
        assert_eq!(w.get_labels("12", "23", "13").unwrap(), frac(1, 2));
        assert_eq!(w.get_labels("23", "13", "12").unwrap(), frac(1, 2));
        let f = structure_constants(&FibrationSpec::Flag { n: 3, p: 2 }).unwrap();
        assert_eq!(f.get(2, 2, 0), frac(1, 4));
        assert_eq!(f.get(3, 3, 0), frac(3, 4));
        assert_eq!(f.get(1, 2, 2), frac(3, 4));
    }

    #[test]
    fn all_ones_values() {
        let ones = |k| vec![int(1); k];
        let w = ricci_at(&FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }, &ones(5)).unwrap();
        assert_eq!(w, vec![frac(1, 4), frac(1, 4), frac(1, 4), frac(11, 32), frac(11, 32)]);
        let f = ricci_at(&FibrationSpec::Flag { n: 3, p: 2 }, &ones(4)).unwrap();
        assert_eq!(f, vec![frac(1, 4), frac(1, 4), frac(11, 32), frac(1, 4)]);
        let spec = FibrationSpec::Flag { n: 3, p: 2 };
        let g = ricci_general(&summand_dims(&spec).unwrap(), &structure_constants(&spec).unwrap(), &ones(4)).unwrap();
        assert_eq!(g, f);
    }
}
