use std::fmt::Write as _;
use std::io::Read as _;

use einstein_sp::algebra::rational::{parse_rational, rat_string, to_decimal};
use einstein_sp::algebra::{BigRational, PolyFile};
use einstein_sp::geometry::{ricci_at, FibrationSpec};
use einstein_sp::groebner::{buchberger_with, BasisJson, Budget, GbMethod, GbStats, IdealJson};
use einstein_sp::proofs::{self, Agreement, Certificate, GridPoint, IdentityCheck};
use einstein_sp::solver::{self, BranchReport, CensusFamily, SolveOptions};
use einstein_sp::univar::{isolate_and_refine, IsolatingInterval, UniPoly};
use einstein_sp::{Error, Result};
use serde::Serialize;

use crate::args::{BranchChoice, Command, Fibration, Global, Method, SpecArgs};

pub const BUDGET_ENV: &str = "EINSTEIN_SP_BUDGET_SECONDS";

/// Rendered output and exit code of one command.
pub struct Outcome {
    pub out: String,
    pub code: i32,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { out, code: 0 }
    }
}

struct Ctx<'a> {
    g: &'a Global,
    tol: BigRational,
    budget: Budget,
}

impl Ctx<'_> {
    fn digits(&self) -> usize {
        self.g.digits as usize
    }

    fn stats(&self, s: &GbStats) -> GbStats {
        let mut s = s.clone();
        if !self.g.timing {
            s.elapsed_ms = 0;
        }
        s
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::SpecError(msg.into())
}

fn budget(g: &Global) -> Result<Budget> {
    let mut seconds = g.max_seconds;
    if let Ok(v) = std::env::var(BUDGET_ENV) {
        let s: f64 = v.trim().parse().map_err(|_| invalid(format!("{BUDGET_ENV} is not a number: {v}")))?;
        seconds = Some(s);
    }
    if seconds.is_some_and(|s| !(s > 0.0)) || g.max_pairs == Some(0) {
        return Err(invalid("budgets must be positive"));
    }
    Ok(Budget { max_pairs: g.max_pairs, max_reductions: None, max_seconds: seconds })
}

fn spec_of(a: &SpecArgs) -> Result<FibrationSpec> {
    let spec = match a.fibration {
        Fibration::Wallach => match a.k.as_slice() {
            [k1, k2, k3] => FibrationSpec::Wallach { k1: *k1, k2: *k2, k3: *k3 },
            _ => return Err(invalid("wallach needs --k k1,k2,k3")),
        },
        Fibration::Flag => match (a.n, a.p) {
            (Some(n), Some(p)) => FibrationSpec::Flag { n, p },
            _ => return Err(invalid("flag needs --n and --p")),
        },
    };
    if a.fibration == Fibration::Flag && !a.k.is_empty() || a.fibration == Fibration::Wallach && (a.n, a.p) != (None, None) {
        return Err(invalid("--k belongs to wallach, --n/--p to flag"));
    }
    spec.validate()?;
    Ok(spec)
}

pub fn run(g: &Global, cmd: &Command) -> Result<Outcome> {
    let tol = parse_rational(&g.tol).filter(|t| t > &BigRational::from_integer(0.into()));
    let tol = tol.ok_or_else(|| invalid(format!("--tol must be a positive number, got {}", g.tol)))?;
    let cx = Ctx { g, tol, budget: budget(g)? };
    match cmd {
        Command::Solve { spec, branch } => solve(&cx, &spec_of(spec)?, *branch),
        Command::System { spec } => system(&cx, spec),
        Command::Ricci { spec, metric } => ricci(&cx, &spec_of(spec)?, metric),
        Command::Groebner { input, method } => groebner(&cx, input, *method),
        Command::Roots { poly, positive } => roots(&cx, poly, *positive),
        Command::VerifyTheoremB { n, p, grid, p_max, no_groebner } => {
            verify(&cx, n.zip(*p), *grid, *p_max, !no_groebner)
        }
        Command::Census { family, n_min, n_max } => census(&cx, family, *n_min, *n_max),
    }
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SolveJson {
    spec: FibrationSpec,
    solutions: Vec<solver::SolutionJson>,
    uncertified: Vec<String>,
    branches: Vec<BranchReport>,
}

fn solve(cx: &Ctx, spec: &FibrationSpec, branch: BranchChoice) -> Result<Outcome> {
    let opts = SolveOptions {
        tol: cx.tol.clone(),
        budget: cx.budget.clone(),
        generic: branch != BranchChoice::Special,
        special: branch != BranchChoice::Generic,
        ..Default::default()
    };
    let mut rep = solver::solve_einstein(spec, &opts)?;
    for b in &mut rep.branches {
        b.gb = cx.stats(&b.gb);
    }
    let d = cx.digits();
    if cx.g.json {
        return Ok(Outcome::ok(json(&SolveJson {
            spec: *spec,
            solutions: rep.solutions.iter().map(|s| s.to_json(d)).collect(),
            uncertified: rep.uncertified,
            branches: rep.branches,
        })));
    }
    let mut o = String::new();
    writeln!(o, "{spec}: {} certified solutions", rep.solutions.len()).unwrap();
    let w = d + 4;
    let mut head = format!("{:>3}  {:<16}  {:<6}", "#", "branch", "class");
    for name in spec.var_names() {
        write!(head, "  {name:>w$}").unwrap();
    }
    write!(head, "  {:>w$}  {:>9}  partner", "lambda", "residual").unwrap();
    writeln!(o, "{head}").unwrap();
    for (i, s) in rep.solutions.iter().enumerate() {
        let branch = serde_json::to_value(s.branch).unwrap();
        let class = serde_json::to_value(s.class).unwrap();
        let mut line = format!("{i:>3}  {:<16}  {:<6}", branch.as_str().unwrap(), class.as_str().unwrap());
        for (_, iv) in &s.coords {
            write!(line, "  {:>w$}", iv.approx(d)).unwrap();
        }
        let partner = s.symmetry_partner.map_or("-".to_string(), |p| p.to_string());
        let residual = format!("{:.1e}", einstein_sp::algebra::rational::to_f64(&s.residual_bound));
        write!(line, "  {:>w$}  {residual:>9}  {partner}", s.lambda.approx(d)).unwrap();
        writeln!(o, "{line}").unwrap();
    }
    for b in &rep.branches {
        writeln!(
            o,
            "branch {:?}: {}-eliminant of degree {}, {} positive roots, basis via {}",
            b.branch, b.eliminant_var, b.eliminant_degree, b.positive_roots, b.gb.route
        )
        .unwrap();
    }
    for u in &rep.uncertified {
        writeln!(o, "uncertified: {u}").unwrap();
    }
    Ok(Outcome::ok(o))
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SystemJson {
    spec: Option<FibrationSpec>,
    vars: Vec<String>,
    normalized_variable: String,
    polys: Vec<String>,
    provenance: Vec<(String, String)>,
}

fn system(cx: &Ctx, a: &SpecArgs) -> Result<Outcome> {
    let sys = if a.fibration == Fibration::Flag && a.n.is_none() && a.p.is_none() && a.k.is_empty() {
        solver::assemble_flag_symbolic()?
    } else {
        solver::assemble_system(&spec_of(a)?)?
    };
    if cx.g.json {
        return Ok(Outcome::ok(json(&SystemJson {
            spec: sys.spec,
            vars: sys.ctx.names().to_vec(),
            normalized_variable: sys.normalized_variable.clone(),
            polys: sys.polys.iter().map(|p| p.to_string()).collect(),
            provenance: sys.provenance.clone(),
        })));
    }
    let mut o = String::new();
    let what = sys.spec.map_or("flag(n,p)".to_string(), |s| s.to_string());
    writeln!(o, "# {what}, {} = 1", sys.normalized_variable).unwrap();
    writeln!(o, "vars: {}", sys.ctx.names().join(", ")).unwrap();
    for (p, (i, j)) in sys.polys.iter().zip(&sys.provenance) {
        writeln!(o, "# r_{i} - r_{j}").unwrap();
        writeln!(o, "{p}").unwrap();
    }
    Ok(Outcome::ok(o))
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Component {
    label: String,
    value: String,
    approx: String,
}

#[derive(Serialize)]
struct RicciJson {
    spec: FibrationSpec,
    metric: Vec<String>,
    components: Vec<Component>,
}

fn ricci(cx: &Ctx, spec: &FibrationSpec, metric: &[String]) -> Result<Outcome> {
    let x: Vec<BigRational> = metric
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| invalid(format!("bad metric value {s}"))))
        .collect::<Result<_>>()?;
    let r = ricci_at(spec, &x)?;
    let components: Vec<Component> = spec
        .labels()
        .iter()
        .zip(&r)
        .map(|(l, v)| Component { label: l.to_string(), value: rat_string(v), approx: to_decimal(v, cx.digits()) })
        .collect();
    if cx.g.json {
        let metric = x.iter().map(rat_string).collect();
        return Ok(Outcome::ok(json(&RicciJson { spec: *spec, metric, components })));
    }
    let mut o = String::new();
    for c in &components {
        writeln!(o, "r_{:<3} = {:<12} {}", c.label, c.value, c.approx).unwrap();
    }
    Ok(Outcome::ok(o))
}

// ---------------------------------------------------------------------------

fn read_input(path: &std::path::Path) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn groebner(cx: &Ctx, input: &std::path::Path, method: Method) -> Result<Outcome> {
    let ideal: IdealJson = serde_json::from_str(&read_input(input)?)
        .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    let (ideal, order) = ideal.parse()?;
    let method = match method {
        Method::Modular => GbMethod::Modular,
        Method::FractionFree => GbMethod::FractionFree,
    };
    let gb = buchberger_with(&ideal, &order, &cx.budget, method)?;
    let mut out: BasisJson = gb.to_json();
    out.stats = cx.stats(&out.stats);
    if cx.g.json {
        return Ok(Outcome::ok(json(&out)));
    }
    let mut o = String::new();
    let order_name = serde_json::to_value(out.order.kind).unwrap();
    let kind = order_name.as_str().unwrap_or("?");
    writeln!(o, "# {kind} basis for {}, {} elements", out.order.precedence.join(" > "), out.polys.len()).unwrap();
    writeln!(o, "vars: {}", out.vars.join(", ")).unwrap();
    for p in &out.polys {
        writeln!(o, "{p}").unwrap();
    }
    Ok(Outcome::ok(o))
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RootJson {
    interval: IsolatingInterval,
    approx: String,
}

fn roots(cx: &Ctx, path: &std::path::Path, positive: bool) -> Result<Outcome> {
    let file = PolyFile::parse(&read_input(path)?)?;
    let [f] = file.polys.as_slice() else {
        return Err(invalid("roots expects exactly one polynomial"));
    };
    let support = f.support();
    let var = match support.as_slice() {
        [i] => file.ctx.name(*i).to_string(),
        [] => return Err(invalid("constant polynomial has no roots to isolate")),
        _ => return Err(invalid("polynomial is not univariate")),
    };
    let u = UniPoly::from_multipoly(f, &var)?;
    let rs = isolate_and_refine(&u, positive, &cx.tol)?;
    let d = cx.digits();
    if cx.g.json {
        let rs: Vec<RootJson> = rs.into_iter().map(|r| RootJson { approx: r.approx(d), interval: r }).collect();
        return Ok(Outcome::ok(json(&rs)));
    }
    let mut o = String::new();
    writeln!(o, "{} {}real roots of a degree-{} polynomial in {var}", rs.len(), if positive { "positive " } else { "" }, u.degree())
        .unwrap();
    for r in &rs {
        writeln!(o, "{}  in ({}, {}]", r.approx(d), to_decimal(&r.lo, d + 6), to_decimal(&r.hi, d + 6)).unwrap();
    }
    Ok(Outcome::ok(o))
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct VerifyJson {
    identities: Vec<IdentityCheck>,
    expansion: proofs::ExpansionReport,
    points: Vec<GridPoint>,
    /// Points where only the claims valid there were checked.
    partial_points: Vec<PartialPoint>,
    cross_checks: Vec<Agreement>,
    passed: bool,
}

#[derive(Serialize)]
struct PartialPoint {
    n: i64,
    p: i64,
    endpoints: proofs::EndpointSigns,
    u2_alternates: Option<bool>,
    passed: bool,
}

fn verify(cx: &Ctx, point: Option<(u32, u32)>, grid: Option<u32>, p_max: u32, groebner: bool) -> Result<Outcome> {
    let identities = proofs::identity_checks()?;
    let expansion = proofs::u_expansion_certificate(p_max as i64)?;
    let mut points = Vec::new();
    let mut partial_points = Vec::new();
    let mut gb_points: Vec<(i64, i64)> = vec![(3, 2), (4, 2), (4, 3), (5, 3)];
    match (point, grid) {
        (Some((n, p)), _) => {
            let (n, p) = (n as i64, p as i64);
            if p >= 2 && 4 * p <= 3 * n {
                points.push(proofs::check_point(n, p)?);
            } else {
                // Outside the range of the argument only the sign claims
                // stated for all p <= n (p < n for U2) apply.
                let endpoints = proofs::endpoint_signs(n, p)?;
                let u2 = (p < n).then(|| proofs::u2_sign_pattern(n, p)).transpose()?;
                let passed = endpoints.at_0 > 0 && endpoints.at_1 > 0 && endpoints.matches_printed && u2 != Some(false);
                partial_points.push(PartialPoint { n, p, endpoints, u2_alternates: u2, passed });
            }
            gb_points = if (2..n).contains(&p) { vec![(n, p)] } else { vec![] };
        }
        (None, Some(n_max)) => points = proofs::grid_check(n_max as i64)?,
        (None, None) => return Err(invalid("verify-theorem-b needs --n N --p P or --grid N_MAX")),
    }
    let mut cross_checks = Vec::new();
    if groebner {
        for &(n, p) in &gb_points {
            cross_checks.push(proofs::cross_check(Certificate::U1, n, p, &cx.budget)?);
        }
    }
    let passed = identities.iter().all(|c| c.passed())
        && expansion.all_positive()
        && points.iter().all(|p| p.passed())
        && partial_points.iter().all(|p| p.passed)
        && cross_checks.iter().all(|a| a.is_positive_multiple());
    let code = if passed { 0 } else { 3 };
    let report = VerifyJson { identities, expansion, points, partial_points, cross_checks, passed };
    if cx.g.json {
        return Ok(Outcome { out: json(&report), code });
    }
    let mark = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut o = String::new();
    for c in &report.identities {
        let how = match &c.outcome {
            proofs::Match::Exact => "exact".to_string(),
            proofs::Match::Multiple { ratio } => format!("up to the factor {ratio}"),
            proofs::Match::Mismatch => "differs".to_string(),
        };
        let tag = if c.requirement == proofs::Requirement::Informational { "NOTE" } else { mark(c.passed()) };
        writeln!(o, "{tag} identity {}: {how}", c.claim).unwrap();
    }
    for c in &report.expansion.coefficients {
        let status = match &c.positivity {
            proofs::Positivity::Certified => "positive for p >= 1 (shift test)".to_string(),
            proofs::Positivity::Sampled { p_max } => format!("positive at p = 1..{p_max} (sampled, not proven)"),
            proofs::Positivity::Fails { p } => format!("not positive at p = {p}"),
        };
        let ok = !matches!(c.positivity, proofs::Positivity::Fails { .. });
        writeln!(o, "{} expansion coefficient of m^{}: {status}", mark(ok), c.power).unwrap();
    }
    if !report.points.is_empty() {
        let failed: Vec<String> =
            report.points.iter().filter(|p| !p.passed()).map(|p| format!("({},{})", p.n, p.p)).collect();
        writeln!(
            o,
            "{} signs U1(0) > 0, U1(1) > 0, U1(1/5) < 0, U2 and b_j alternating at {} points (n,p){}",
            mark(failed.is_empty()),
            report.points.len(),
            if failed.is_empty() { String::new() } else { format!("; failed at {}", failed.join(" ")) }
        )
        .unwrap();
    }
    for p in &report.partial_points {
        let s = p.endpoints;
        writeln!(
            o,
            "{} ({},{}) outside 2 <= p <= 3n/4: signs of U1 at 0, 1, 1/5 are {:+}, {:+}, {:+}; U2 alternating: {}",
            mark(p.passed),
            p.n,
            p.p,
            s.at_0,
            s.at_1,
            s.at_fifth,
            p.u2_alternates.map_or("n/a".to_string(), |b| b.to_string())
        )
        .unwrap();
    }
    for a in &report.cross_checks {
        writeln!(
            o,
            "{} U1 eliminant from the Gröbner basis at ({},{}): transcription = {} x eliminant",
            mark(a.is_positive_multiple()),
            a.n,
            a.p,
            a.ratio.as_deref().unwrap_or("?")
        )
        .unwrap();
    }
    writeln!(o, "certificates: {}", mark(passed)).unwrap();
    Ok(Outcome { out: o, code })
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CensusJson {
    family: String,
    rows: Vec<CensusRowJson>,
}

#[derive(Serialize)]
struct CensusRowJson {
    #[serde(flatten)]
    row: solver::CensusRow,
    /// Jensen and New-plus-ADN counts equal the conjectured pair.
    agrees: Option<bool>,
}

fn census(cx: &Ctx, family: &str, n_min: u32, n_max: u32) -> Result<Outcome> {
    let fam = CensusFamily::parse(family)?;
    if n_max < n_min {
        return Err(invalid("--n-max is below --n-min"));
    }
    let opts = SolveOptions { tol: cx.tol.clone(), budget: cx.budget.clone(), ..Default::default() };
    let rows: Vec<CensusRowJson> = solver::census(fam, n_min, n_max, &opts)
        .into_iter()
        .map(|row| {
            let agrees = row.conjectured.map(|(j, nw)| row.complete && row.jensen == j && row.new_including_adn == nw);
            CensusRowJson { row, agrees }
        })
        .collect();
    let budget_hit = rows.iter().any(|r| r.row.note.as_deref().is_some_and(|n| n.starts_with("budget exceeded")));
    let code = if budget_hit { 2 } else { 0 };
    if cx.g.json {
        return Ok(Outcome { out: json(&CensusJson { family: family.to_string(), rows }), code });
    }
    let mut o = String::new();
    writeln!(o, "family ({family}); conjectured counts are reported, not asserted").unwrap();
    writeln!(o, "{:>3}  {:<16}  {:>6}  {:>3}  {:>3}  {:>7}  {:>11}  {}", "n", "spec", "Jensen", "ADN", "New", "New+ADN", "conjectured", "agreement")
        .unwrap();
    for r in &rows {
        let row = &r.row;
        let conj = row.conjectured.map_or("-".to_string(), |(j, nw)| format!("{j}, {nw}"));
        let agree = match r.agrees {
            Some(true) => "agrees".to_string(),
            Some(false) => "differs".to_string(),
            None => "-".to_string(),
        };
        let note = row.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        writeln!(
            o,
            "{:>3}  {:<16}  {:>6}  {:>3}  {:>3}  {:>7}  {:>11}  {agree}{note}",
            row.n,
            row.spec.to_string(),
            row.jensen,
            row.adn,
            row.new,
            row.new_including_adn,
            conj
        )
        .unwrap();
    }
    Ok(Outcome { out: o, code })
}
