//! Machine checks of the sign and identity claims behind the existence
//! argument for the flag family `Sp(n)/Sp(n-p)` with generic `u1`.
//!
//! The certificate polynomials are stored as text under `data/` and embedded
//! at build time. Everything here is exact rational arithmetic; the only
//! non-proof status is the sampled fallback of the expansion certificate,
//! which is reported as such.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{frac, int, rat_string, sign_of};
use crate::algebra::{parse_poly, MultiPoly, PolyFile, VarContext};
use crate::error::{Error, Result};
use crate::geometry::FibrationSpec;
use crate::groebner::Budget;
use crate::solver::{branch_eliminant, Branch};
use crate::univar::UniPoly;

macro_rules! data {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../data/", $name, ".poly")))),*]
    };
}

/// Every embedded data file as `(stem, contents)`.
pub const DATA: &[(&str, &str)] = data!(
    "u1", "u1_at_0", "u1_at_1", "u_np", "u_expansion", "u2", "u2_first_form", "b0", "b1", "b2", "b3", "b4",
    "b5", "b6", "b7", "b8", "h_111", "system_111", "system_112", "system_flag",
);

pub fn data_file(stem: &str) -> Result<PolyFile> {
    let (_, text) = DATA
        .iter()
        .find(|(s, _)| *s == stem)
        .ok_or_else(|| Error::Io(format!("no embedded data file {stem}.poly")))?;
    PolyFile::parse(text)
}

/// The transcribed certificates, expanded to standard form.
#[derive(Clone, Debug)]
pub struct Certificates {
    /// `U1` in `(u1, n, p)`.
    pub u1: MultiPoly,
    /// Printed value of `U1(0)` in `(n, p)`.
    pub u1_at_0: MultiPoly,
    /// Printed factorizations of `U1(1)`: product form, then the form
    /// grouped in powers of `n - p`.
    pub u1_at_1: Vec<MultiPoly>,
    pub u_np: MultiPoly,
    /// `u(n, p)` as printed in powers of `n - 4p/3`.
    pub u_expansion: MultiPoly,
    /// `U2` in `(u2, n, p)`, grouped form.
    pub u2: MultiPoly,
    pub u2_first_form: MultiPoly,
    /// `b0 .. b8` in `(n, p)`.
    pub b: Vec<MultiPoly>,
}

fn single(stem: &str) -> Result<MultiPoly> {
    let f = data_file(stem)?;
    match f.polys.as_slice() {
        [p] => Ok(p.clone()),
        _ => Err(Error::Parse { line: 0, msg: format!("{stem}.poly should hold one polynomial") }),
    }
}

fn np_ctx() -> VarContext {
    VarContext::new(&["n", "p"]).expect("distinct names")
}

fn load() -> Result<Certificates> {
    let np = np_ctx();
    let in_np = |stem: &str| single(stem)?.to_context(&np);
    Ok(Certificates {
        u1: single("u1")?,
        u1_at_0: in_np("u1_at_0")?,
        u1_at_1: data_file("u1_at_1")?.polys.iter().map(|p| p.to_context(&np)).collect::<Result<_>>()?,
        u_np: in_np("u_np")?,
        u_expansion: in_np("u_expansion")?,
        u2: single("u2")?,
        u2_first_form: single("u2_first_form")?,
        b: (0..=8).map(|j| in_np(&format!("b{j}"))).collect::<Result<_>>()?,
    })
}

pub fn certificates() -> &'static Certificates {
    static CELL: OnceLock<Certificates> = OnceLock::new();
    CELL.get_or_init(|| load().expect("embedded certificate data parses"))
}

/// Specializes `n`, `p` and reads the result as a polynomial in `var`.
fn at_np(f: &MultiPoly, var: &str, n: i64, p: i64) -> Result<UniPoly> {
    let g = f.set_var("n", &int(n))?.set_var("p", &int(p))?;
    UniPoly::from_multipoly(&g, var)
}

fn eval_np(f: &MultiPoly, n: i64, p: i64) -> Result<BigRational> {
    let g = f.set_var("n", &int(n))?.set_var("p", &int(p))?;
    Ok(g.constant_term())
}

/// `U0(u0) = sum_j b_j u0^j` at a point.
fn u0_at(n: i64, p: i64) -> Result<UniPoly> {
    let c = certificates();
    Ok(UniPoly::new("u0", c.b.iter().map(|b| eval_np(b, n, p)).collect::<Result<_>>()?))
}

// ---------------------------------------------------------------------------
// Identities

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Exact,
    /// A positive rational multiple is accepted; the ratio is reported.
    PositiveMultiple,
    /// Reported only.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Match {
    Exact,
    Multiple { ratio: String },
    Mismatch,
}

fn compare(lhs: &MultiPoly, rhs: &MultiPoly) -> Match {
    if lhs == rhs {
        return Match::Exact;
    }
    match lhs.positive_multiple_of(rhs) {
        Some(r) => Match::Multiple { ratio: rat_string(&r) },
        None => Match::Mismatch,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub claim: String,
    pub requirement: Requirement,
    pub outcome: Match,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        match (self.requirement, &self.outcome) {
            (Requirement::Informational, _) => true,
            (_, Match::Exact) => true,
            (Requirement::PositiveMultiple, Match::Multiple { .. }) => true,
            _ => false,
        }
    }
}

/// Polynomial identities in `(n, p)` between the transcribed certificates.
pub fn identity_checks() -> Result<Vec<IdentityCheck>> {
    let c = certificates();
    let np = np_ctx();
    let u1_at = |v: BigRational| -> Result<MultiPoly> { c.u1.set_var("u1", &v)?.to_context(&np) };
    let at0 = u1_at(BigRational::zero())?;
    let at1 = u1_at(BigRational::one())?;
    let fifth = u1_at(frac(1, 5))?.scale(&-frac(390625, 64));
    let check = |claim: &str, requirement, lhs: &MultiPoly, rhs: &MultiPoly| IdentityCheck {
        claim: claim.to_string(),
        requirement,
        outcome: compare(lhs, rhs),
    };
    Ok(vec![
        check("U1(0) = (4np-3p^2+p+2)^2 (2np-p^2+p+1)^2", Requirement::Exact, &at0, &c.u1_at_0),
        check("U1(1) = product form", Requirement::Exact, &at1, &c.u1_at_1[0]),
        check("U1(1) = form grouped in n-p", Requirement::PositiveMultiple, &at1, &c.u1_at_1[1]),
        check("-(390625/64) U1(1/5) = u(n,p)", Requirement::Exact, &fifth, &c.u_np),
        check("u(n,p) = expansion in n-4p/3", Requirement::Exact, &c.u_np, &c.u_expansion),
        check("U2 grouped form = U2 first form", Requirement::Informational, &c.u2, &c.u2_first_form),
    ])
}

// ---------------------------------------------------------------------------
// Pointwise signs

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointSigns {
    pub at_0: i8,
    pub at_1: i8,
    pub at_fifth: i8,
    /// `U1(0)` and `U1(1)` agree with the printed closed forms at the point.
    pub matches_printed: bool,
}

impl EndpointSigns {
    /// The pattern `(+, +, -)` that puts a root of `U1` in each of `(0, 1/5)`
    /// and `(1/5, 1)`.
    pub fn brackets_two_roots(&self) -> bool {
        self.at_0 > 0 && self.at_1 > 0 && self.at_fifth < 0
    }
}

/// Signs of `U1` at `0`, `1` and `1/5`.
pub fn endpoint_signs(n: i64, p: i64) -> Result<EndpointSigns> {
    if p < 1 || p > n {
        return Err(Error::SpecError(format!("endpoint signs need 1 <= p <= n, got n={n}, p={p}")));
    }
    let c = certificates();
    let u = at_np(&c.u1, "u1", n, p)?;
    let (v0, v1, vf) = (u.eval(&BigRational::zero()), u.eval(&BigRational::one()), u.eval(&frac(1, 5)));
    let matches_printed = v0 == eval_np(&c.u1_at_0, n, p)? && v1 == eval_np(&c.u1_at_1[0], n, p)?;
    Ok(EndpointSigns { at_0: sign_of(&v0), at_1: sign_of(&v1), at_fifth: sign_of(&vf), matches_printed })
}

/// Every coefficient nonzero with sign `(-1)^k` on degree `k`.
fn alternates(f: &UniPoly) -> bool {
    f.coeffs().iter().enumerate().all(|(k, c)| if k % 2 == 0 { c.is_positive() } else { c.is_negative() })
}

/// Coefficients of `U2` at `(n, p)` alternate in sign, even degrees positive.
pub fn u2_sign_pattern(n: i64, p: i64) -> Result<bool> {
    if p < 1 || p >= n {
        return Err(Error::SpecError(format!("U2 sign pattern needs 1 <= p < n, got n={n}, p={p}")));
    }
    Ok(alternates(&at_np(&certificates().u2, "u2", n, p)?))
}

/// The transcribed `b_j(n, p)` alternate in sign, `b_8 > 0`.
pub fn b_sign_pattern(n: i64, p: i64) -> Result<bool> {
    if p < 2 || 4 * p > 3 * n {
        return Err(Error::SpecError(format!("b_j sign pattern needs 2 <= p <= 3n/4, got n={n}, p={p}")));
    }
    Ok(alternates(&u0_at(n, p)?))
}

// ---------------------------------------------------------------------------
// Expansion certificate

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Positivity {
    /// All coefficients of `c(q + 1)` are nonnegative, one positive.
    Certified,
    /// Shift test inconclusive; positive at every integer `1 ..= p_max`.
    Sampled { p_max: i64 },
    /// Not positive at this integer.
    Fails { p: i64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionCoefficient {
    /// Power of `m = n - 4p/3`.
    pub power: usize,
    /// Coefficient as a polynomial in `p`.
    pub coeff: String,
    pub positivity: Positivity,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    pub coefficients: Vec<ExpansionCoefficient>,
}

impl ExpansionReport {
    pub fn all_positive(&self) -> bool {
        self.coefficients.iter().all(|c| !matches!(c.positivity, Positivity::Fails { .. }))
    }

    pub fn fully_certified(&self) -> bool {
        self.coefficients.iter().all(|c| c.positivity == Positivity::Certified)
    }
}

/// Coefficients of `u(n, p)` in powers of `m = n - 4p/3`.
pub fn u_expansion_coefficients() -> Result<Vec<UniPoly>> {
    let ctx = VarContext::new(&["m", "n", "p"])?;
    let u = certificates().u_np.to_context(&ctx)?;
    let shifted = u.substitute("n", &parse_poly(&ctx, "m + 4*p/3")?)?;
    let mp = VarContext::new(&["m", "p"])?;
    let shifted = shifted.to_context(&mp)?;
    shifted.coeffs_in(0).iter().map(|c| UniPoly::from_multipoly(c, "p")).collect()
}

/// `f(p + 1)`, by Horner's scheme.
fn taylor_shift(f: &UniPoly) -> UniPoly {
    let x_plus_1 = UniPoly::new(f.var(), vec![BigRational::one(), BigRational::one()]);
    let mut acc = UniPoly::new(f.var(), vec![]);
    for c in f.coeffs().iter().rev() {
        let mut next = acc.mul(&x_plus_1).coeffs().to_vec();
        if next.is_empty() {
            next.push(BigRational::zero());
        }
        next[0] += c;
        acc = UniPoly::new(f.var(), next);
    }
    acc
}

/// Positivity for `p >= 1` of every coefficient of the expansion of
/// `u(n, p)` about `n = 4p/3`.
pub fn u_expansion_certificate(p_max: i64) -> Result<ExpansionReport> {
    if p_max < 1 {
        return Err(Error::DomainError("p_max must be at least 1".into()));
    }
    let mut coefficients = Vec::new();
    for (power, c) in u_expansion_coefficients()?.into_iter().enumerate() {
        let s = taylor_shift(&c);
        let shift_ok = !s.is_zero()
            && s.coeffs().iter().all(|a| !a.is_negative())
            && s.coeffs().iter().any(|a| a.is_positive());
        let positivity = if shift_ok {
            Positivity::Certified
        } else {
            match (1..=p_max).find(|&p| !c.eval(&int(p)).is_positive()) {
                Some(p) => Positivity::Fails { p },
                None => Positivity::Sampled { p_max },
            }
        };
        coefficients.push(ExpansionCoefficient { power, coeff: c.to_string(), positivity });
    }
    Ok(ExpansionReport { coefficients })
}

// ---------------------------------------------------------------------------
// Cross-checks against the Gröbner pipeline

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    U0,
    U1,
    U2,
}

impl Certificate {
    fn var(self) -> &'static str {
        match self {
            Certificate::U0 => "u0",
            Certificate::U1 => "u1",
            Certificate::U2 => "u2",
        }
    }
}

/// Coefficientwise comparison of a transcribed certificate with the
/// eliminant of the saturated generic flag ideal at one `(n, p)`.
#[derive(Clone, Debug, Serialize)]
pub struct Agreement {
    pub certificate: Certificate,
    pub n: i64,
    pub p: i64,
    pub computed_degree: usize,
    pub transcribed_degree: usize,
    /// `transcribed / computed`, read off the constant coefficients.
    pub ratio: Option<String>,
    /// Degrees whose coefficients disagree under that ratio.
    pub mismatched_degrees: Vec<usize>,
    /// The computed eliminant itself has alternating coefficient signs.
    pub computed_alternates: bool,
}

impl Agreement {
    /// The transcription is a positive multiple of the eliminant.
    pub fn is_positive_multiple(&self) -> bool {
        self.computed_degree == self.transcribed_degree
            && self.mismatched_degrees.is_empty()
            && self.ratio.as_deref().is_some_and(|r| !r.starts_with('-'))
    }
}

pub fn cross_check(which: Certificate, n: i64, p: i64, budget: &Budget) -> Result<Agreement> {
    let spec = FibrationSpec::Flag { n: n.try_into().unwrap_or(0), p: p.try_into().unwrap_or(0) };
    if n < 0 || p < 0 {
        return Err(Error::SpecError(format!("negative parameters n={n}, p={p}")));
    }
    spec.validate()?;
    let var = which.var();
    let (computed, _) = branch_eliminant(&spec, Branch::Generic, Some(var), budget)?;
    let c = certificates();
    let transcribed = match which {
        Certificate::U0 => u0_at(n, p)?,
        Certificate::U1 => at_np(&c.u1, var, n, p)?,
        Certificate::U2 => at_np(&c.u2, var, n, p)?,
    };
    let (a0, b0) = (computed.coeff(0), transcribed.coeff(0));
    let ratio = (!a0.is_zero() && !b0.is_zero()).then(|| &b0 / &a0);
    let top = computed.degree().max(transcribed.degree());
    let mismatched_degrees = match &ratio {
        Some(r) => (0..=top).filter(|&k| computed.coeff(k) * r != transcribed.coeff(k)).collect(),
        None => (0..=top).collect(),
    };
    Ok(Agreement {
        certificate: which,
        n,
        p,
        computed_degree: computed.degree(),
        transcribed_degree: transcribed.degree(),
        ratio: ratio.as_ref().map(rat_string),
        mismatched_degrees,
        computed_alternates: alternates(&computed),
    })
}

/// The `u1`-eliminant of the saturated generic flag ideal at `(n, p)` is a
/// positive rational multiple of the transcribed `U1(n, p)`.
pub fn verify_u1_against_groebner(n: i64, p: i64, budget: &Budget) -> Result<bool> {
    Ok(cross_check(Certificate::U1, n, p, budget)?.is_positive_multiple())
}

// ---------------------------------------------------------------------------
// Grid

#[derive(Clone, Debug, Serialize)]
pub struct GridPoint {
    pub n: i64,
    pub p: i64,
    pub endpoints: EndpointSigns,
    pub u2_alternates: bool,
    pub b_alternates: bool,
}

impl GridPoint {
    pub fn passed(&self) -> bool {
        self.endpoints.brackets_two_roots() && self.endpoints.matches_printed && self.u2_alternates && self.b_alternates
    }
}

pub fn check_point(n: i64, p: i64) -> Result<GridPoint> {
    Ok(GridPoint {
        n,
        p,
        endpoints: endpoint_signs(n, p)?,
        u2_alternates: u2_sign_pattern(n, p)?,
        b_alternates: b_sign_pattern(n, p)?,
    })
}

/// All integer points `2 <= p <= floor(3n/4)`, `n <= n_max`, in order.
pub fn grid_points(n_max: i64) -> Vec<(i64, i64)> {
    (3..=n_max).flat_map(|n| (2..=3 * n / 4).map(move |p| (n, p))).collect()
}

/// Pointwise checks over the grid, spread across threads. The result is in
/// grid order regardless of scheduling.
pub fn grid_check(n_max: i64) -> Result<Vec<GridPoint>> {
    let points = grid_points(n_max);
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(points.len().max(1));
    let chunk = points.len().div_ceil(threads).max(1);
    certificates();
    let parts: Vec<Result<Vec<GridPoint>>> = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(|&(n, p)| check_point(n, p)).collect::<Result<Vec<_>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("grid worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(points.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_parses() {
        let c = certificates();
        assert_eq!(c.b.len(), 9);
        assert_eq!(c.u1.degree_in(0), 8);
        assert_eq!(c.u2.degree_in(0), 8);
    }

    #[test]
    fn u1_at_zero_example() {
        let s = endpoint_signs(4, 3).unwrap();
        let u = at_np(&certificates().u1, "u1", 4, 3).unwrap();
        assert_eq!(u.eval(&BigRational::zero()), int(26 * 26 * 19 * 19));
        assert_eq!((s.at_0, s.at_1, s.at_fifth), (1, 1, -1));
        assert!(s.matches_printed);
    }

    #[test]
    fn leading_expansion_coefficients() {
        let cs = u_expansion_coefficients().unwrap();
        assert_eq!(cs.len(), 7);
        assert_eq!(cs[6], UniPoly::from_ints("p", &[640000, -160000, 160000]));
        assert_eq!(cs[5], UniPoly::from_ints("p", &[2548800, 2744000, -1049600, 876800]));
    }

    #[test]
    fn shift() {
        let f = UniPoly::from_ints("p", &[1, -2, 1]);
        assert_eq!(taylor_shift(&f), UniPoly::from_ints("p", &[0, 0, 1]));
    }

    #[test]
    fn sign_patterns() {
        assert!(u2_sign_pattern(3, 2).unwrap());
        assert!(u2_sign_pattern(8, 6).unwrap());
        assert!(b_sign_pattern(4, 3).unwrap());
        assert!(b_sign_pattern(8, 6).unwrap());
        assert!(matches!(b_sign_pattern(4, 4), Err(Error::SpecError(_))));
        assert!(matches!(u2_sign_pattern(3, 3), Err(Error::SpecError(_))));
    }

    #[test]
    fn u1_cross_check_rejects_bad_spec() {
        assert!(matches!(verify_u1_against_groebner(2, 2, &Budget::default()), Err(Error::SpecError(_))));
    }
}
