//! Acceptance run: one `criterion N: PASS|FAIL` line per criterion, in order.
//! Runs without the libtest harness so the report stays readable; the long
//! CLI runs start in the background first.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::thread::{self, JoinHandle};
use std::time::{Duration, Instant};

use einstein_sp::algebra::rational::{frac, int, parse_rational, to_f64};
use einstein_sp::algebra::{BigRational, PolyFile};
use einstein_sp::geometry::*;
use einstein_sp::groebner::{eliminant, is_reduced, s_polys_reduce_to_zero, Budget, GroebnerBasis};
use einstein_sp::proofs::data_file;
use einstein_sp::solver::{branch_lex_basis, solve_einstein, swap_renormalized, Branch, SolveOptions};
use einstein_sp::univar::{exact_divide, SturmSequence, UniPoly};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::Value;

type Check = Result<String, String>;

struct Run {
    code: i32,
    stdout: String,
    elapsed: Duration,
}

fn run_cli(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_einstein-sp")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 output"),
        elapsed: t.elapsed(),
    }
}

fn spawn_cli(args: &[&str]) -> JoinHandle<Run> {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    thread::spawn(move || run_cli(&args.iter().map(String::as_str).collect::<Vec<_>>()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data_path(stem: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", &format!("{stem}.poly")].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json_of(run: &Run) -> Result<Value, String> {
    serde_json::from_str(&run.stdout).map_err(|e| format!("output is not JSON: {e}"))
}

fn rat(v: &Value) -> BigRational {
    parse_rational(v.as_str().expect("rational string")).expect("parsable rational")
}

fn mid(interval: &Value) -> f64 {
    to_f64(&((rat(&interval[0]) + rat(&interval[1])) / int(2)))
}

// ---------------------------------------------------------------------------

fn c1() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (&["system", "--fibration", "wallach", "--k", "1,1,1"], "system_111"),
        (&["system", "--fibration", "wallach", "--k", "1,1,2"], "system_112"),
        (&["system", "--fibration", "flag"], "system_flag"),
    ];
    let mut slowest = Duration::ZERO;
    for (args, stem) in cases {
        let run = run_cli(args);
        ensure(run.code == 0, || format!("{args:?} exited with {}", run.code))?;
        let got = PolyFile::parse(&run.stdout).map_err(|e| e.to_string())?;
        let want = data_file(stem).map_err(|e| e.to_string())?;
        ensure(got.ctx == want.ctx && got.polys.len() == want.polys.len(), || format!("{stem}: shape differs"))?;
        for (i, (g, w)) in got.polys.iter().zip(&want.polys).enumerate() {
            ensure(g.positive_multiple_of(w).is_some(), || format!("{stem} f{} is not a positive multiple", i + 1))?;
        }
        slowest = slowest.max(run.elapsed);
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest system run took {slowest:?}"))?;
    Ok(format!("3 systems match as positive multiples, slowest {} ms", slowest.as_millis()))
}

fn c2(basis: &Result<(GroebnerBasis, String), String>, elapsed: Duration) -> Check {
    let (gb, var) = basis.as_ref().map_err(Clone::clone)?;
    let e = eliminant(gb, var).map_err(|e| e.to_string())?;
    let h = exact_divide(&e, &UniPoly::from_ints(var, &[-1, 1])).map_err(|e| format!("x13 - 1 does not divide: {e}"))?;
    let h = h.normalized();
    let printed = UniPoly::from_multipoly(&data_file("h_111").unwrap().polys[0], "x13").unwrap();
    let end: BigRational = parse_rational("26264641347161101886463").unwrap();
    ensure(h.degree() == 30, || format!("degree {}", h.degree()))?;
    ensure(h == printed, || "h differs from the printed coefficients".into())?;
    ensure(h.lc() == end && h.coeff(0) == end, || "end coefficients differ".into())?;
    ensure(h.is_palindromic(), || "h is not palindromic".into())?;
    Ok(format!("all 31 coefficients equal, palindromic, basis via {} in {:.1} s", gb.stats.route, elapsed.as_secs_f64()))
}

fn c3() -> Check {
    let run = run_cli(&["roots", "--poly", &data_path("h_111"), "--positive", "--json"]);
    ensure(run.code == 0, || format!("roots exited with {}", run.code))?;
    let roots = json_of(&run)?;
    let got: Vec<f64> = roots.as_array().unwrap().iter().map(|r| mid(&Value::Array(vec![r["interval"]["lo"].clone(), r["interval"]["hi"].clone()]))).collect();
    let want = [0.568723, 0.595776, 1.67848, 1.75833];
    ensure(got.len() == 4, || format!("{} positive roots", got.len()))?;
    let err = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    ensure(err <= 1e-5, || format!("max deviation {err:e}"))?;
    Ok(format!("4 positive roots, max deviation {err:.1e}"))
}

const NEW_111: [[f64; 5]; 4] = [
    [0.276281, 0.251266, 0.460887, 0.568722, 1.0],
    [1.112249, 0.417937, 1.598741, 0.595776, 1.0],
    [0.701500, 1.866891, 2.683459, 1.678482, 1.0],
    [0.441809, 0.485793, 0.810389, 1.758325, 1.0],
];
const JENSEN_111: [[f64; 5]; 2] = [[0.472797, 0.472797, 0.472797, 1.0, 1.0], [1.812916, 1.812916, 1.812916, 1.0, 1.0]];
const ADN_111: [[f64; 5]; 2] = [[0.344889, 0.344889, 0.80019, 1.0, 1.0], [0.483972, 0.483972, 2.585187, 1.0, 1.0]];
const NEW_112: [[f64; 5]; 4] = [
    [0.227002, 0.207491, 0.362198, 0.643984, 1.0],
    [1.293692, 0.292641, 1.707728, 0.683996, 1.0],
    [0.427841, 1.891372, 2.496690, 1.461995, 1.0],
    [0.322198, 0.352496, 0.562433, 1.552832, 1.0],
];
const JENSEN_112: [[f64; 5]; 2] = [[0.357518, 0.357518, 0.357518, 1.0, 1.0], [1.864703, 1.864703, 1.864703, 1.0, 1.0]];
const ADN_112: [[f64; 5]; 2] = [[0.256403, 0.256403, 0.607404, 1.0, 1.0], [0.309365, 0.309365, 2.398604, 1.0, 1.0]];

const WALLACH_VARS: [&str; 5] = ["x1", "x2", "x12", "x13", "x23"];

/// `(class, coordinates)` of every solution in a `solve --json` report.
fn solutions(report: &Value) -> Vec<(String, Vec<f64>)> {
    report["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let coords = WALLACH_VARS.iter().map(|v| mid(&s["coords"][v]["interval"])).collect();
            (s["class"].as_str().unwrap().to_string(), coords)
        })
        .collect()
}

fn match_tuples(sols: &[(String, Vec<f64>)], groups: [(&str, &[[f64; 5]]); 3]) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for (class, tuples) in groups {
        let n = sols.iter().filter(|(c, _)| c == class).count();
        ensure(n == tuples.len(), || format!("{n} {class} solutions, expected {}", tuples.len()))?;
        for t in tuples {
            let hit = sols.iter().find(|(c, x)| c == class && x.iter().zip(t).all(|(a, b)| (a - b).abs() <= 1e-5));
            let (_, x) = hit.ok_or_else(|| format!("no {class} solution near {t:?}"))?;
            worst = x.iter().zip(t).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
        }
    }
    Ok(worst)
}

fn c4(r111: &Run, r112: &Run) -> Check {
    let mut detail = Vec::new();
    for (name, run, groups) in [
        ("wallach(1,1,1)", r111, [("New", &NEW_111[..]), ("Jensen", &JENSEN_111[..]), ("ADN", &ADN_111[..])]),
        ("wallach(1,1,2)", r112, [("New", &NEW_112[..]), ("Jensen", &JENSEN_112[..]), ("ADN", &ADN_112[..])]),
    ] {
        ensure(run.code == 0, || format!("{name}: solve exited with {}", run.code))?;
        let report = json_of(run)?;
        let sols = solutions(&report);
        ensure(sols.len() == 8, || format!("{name}: {} certified solutions", sols.len()))?;
        let uncertified = report["uncertified"].as_array().map_or(0, Vec::len);
        ensure(uncertified == 0, || format!("{name}: {uncertified} uncertified candidates"))?;
        let worst = match_tuples(&sols, groups).map_err(|e| format!("{name}: {e}"))?;
        detail.push(format!("{name} 8 = 4 New + 2 Jensen + 2 ADN, max deviation {worst:.1e} in {:.0} s", run.elapsed.as_secs_f64()));
    }
    Ok(detail.join("; "))
}

fn c5() -> Check {
    let fifth = frac(1, 5);
    let mut points = 0;
    for n in 3..=8u32 {
        for p in 2..=3 * n / 4 {
            let spec = FibrationSpec::Flag { n, p };
            let rep = solve_einstein(&spec, &SolveOptions::default()).map_err(|e| format!("{spec}: {e}"))?;
            let generic: Vec<_> = rep
                .solutions
                .iter()
                .filter(|s| {
                    let u1 = s.coord("u1").unwrap();
                    (to_f64(&u1.lo) - 1.0).abs() > 1e-8 && s.residual_bound < frac(1, 1_000_000_000)
                })
                .collect();
            let below = generic.iter().any(|s| s.coord("u1").unwrap().hi < fifth);
            let between = generic.iter().any(|s| {
                let u1 = s.coord("u1").unwrap();
                u1.lo > fifth && u1.hi < int(1)
            });
            ensure(generic.len() >= 2 && below && between, || format!("{spec}: {} generic solutions", generic.len()))?;
            points += 1;
        }
    }
    Ok(format!("{points} grid points, each with u1 in (0, 1/5) and in (1/5, 1)"))
}

fn small_specs() -> Vec<FibrationSpec> {
    let mut out = Vec::new();
    for k1 in 1..=6 {
        for k2 in 1..=6 {
            for k3 in 1..=6 {
                out.push(FibrationSpec::Wallach { k1, k2, k3 });
            }
        }
    }
    for n in 3..=6 {
        for p in 2..n {
            out.push(FibrationSpec::Flag { n, p });
        }
    }
    out
}

fn random_metric(rng: &mut StdRng, k: usize) -> Vec<BigRational> {
    (0..k).map(|_| frac(rng.gen_range(1..400), rng.gen_range(1..60))).collect()
}

fn c6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let specs = small_specs();
    for s in &specs {
        let dims = summand_dims(s).map_err(|e| e.to_string())?;
        let a = structure_constants(s).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let x = random_metric(&mut rng, s.summand_count());
            let general = ricci_general(&dims, &a, &x).map_err(|e| e.to_string())?;
            ensure(general == ricci_at(s, &x).unwrap(), || format!("{s} differs at {x:?}"))?;
        }
    }
    Ok(format!("{} specs x 20 points, exact equality", specs.len()))
}

fn c7(run: &Run) -> Check {
    ensure(run.code == 0, || format!("verify-theorem-b exited with {}", run.code))?;
    let r = json_of(run)?;
    ensure(r["passed"] == Value::Bool(true), || "report not passed".into())?;
    let ids = r["identities"].as_array().unwrap();
    let sampled = r["expansion"]["coefficients"].as_array().unwrap().iter().filter(|c| c["positivity"]["status"] == "sampled").count();
    let points = r["points"].as_array().unwrap().len();
    let cross = r["cross_checks"].as_array().unwrap().len();
    ensure(cross == 4, || format!("{cross} Gröbner cross-checks"))?;
    ensure(run.elapsed < Duration::from_secs(600), || format!("took {:?}", run.elapsed))?;
    Ok(format!(
        "{} identities, expansion certified ({sampled} sampled), {points} grid points, U1 = GB eliminant at 4 points, {:.0} s",
        ids.len(),
        run.elapsed.as_secs_f64()
    ))
}

fn c8(basis: &Result<(GroebnerBasis, String), String>, r111: &Run, r112: &Run) -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let specs = small_specs();
    for _ in 0..200 {
        let s = specs[rng.gen_range(0..specs.len())];
        let x = random_metric(&mut rng, s.summand_count());
        let t = frac(rng.gen_range(1..100), rng.gen_range(1..30));
        let tx: Vec<BigRational> = x.iter().map(|v| v * &t).collect();
        let (r, rt) = (ricci_at(&s, &x).unwrap(), ricci_at(&s, &tx).unwrap());
        ensure(r.iter().zip(&rt).all(|(a, b)| a / &t == *b), || format!("{s}: r(tx) != r(x)/t"))?;
        if let FibrationSpec::Wallach { k1, k3, .. } = s {
            let sym = FibrationSpec::Wallach { k1, k2: k1, k3 };
            let x: Vec<BigRational> = random_metric(&mut rng, 5);
            let swapped = ricci_at(&sym, &wallach_swap(&x)).unwrap();
            ensure(swapped == wallach_swap(&ricci_at(&sym, &x).unwrap()), || format!("{sym}: swap symmetry"))?;
        }
    }
    for (name, run) in [("wallach(1,1,1)", r111), ("wallach(1,1,2)", r112)] {
        let report = json_of(run)?;
        let sols = solutions(&report);
        for (i, s) in report["solutions"].as_array().unwrap().iter().enumerate() {
            let j = s["symmetry_partner"].as_u64().ok_or_else(|| format!("{name} #{i} has no partner"))? as usize;
            let image = swap_renormalized(&sols[i].1);
            let close = image.iter().zip(&sols[j].1).all(|(a, b)| (a - b).abs() <= 1e-6);
            ensure(close, || format!("{name} #{i} and #{j} are not swap images"))?;
        }
    }
    let (gb, _) = basis.as_ref().map_err(Clone::clone)?;
    let mut bases = vec![gb.clone()];
    for (spec, branch) in [
        (FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }, Branch::NormalizedEqual),
        (FibrationSpec::Flag { n: 3, p: 2 }, Branch::Generic),
        (FibrationSpec::Flag { n: 4, p: 3 }, Branch::Generic),
        (FibrationSpec::Flag { n: 4, p: 3 }, Branch::NormalizedEqual),
    ] {
        bases.push(branch_lex_basis(&spec, branch, None, &Budget::default()).map_err(|e| e.to_string())?.0);
    }
    for (i, b) in bases.iter().enumerate() {
        ensure(is_reduced(b), || format!("basis #{i} is not reduced"))?;
        ensure(s_polys_reduce_to_zero(b), || format!("basis #{i}: an S-polynomial does not reduce to 0"))?;
    }
    let h = UniPoly::from_multipoly(&data_file("h_111").unwrap().polys[0], "x13").unwrap();
    let seq = SturmSequence::new(&h);
    for _ in 0..100 {
        let mut cuts: Vec<BigRational> = (0..3).map(|_| frac(rng.gen_range(-300..300), rng.gen_range(1..100))).collect();
        cuts.sort();
        let (a, b, c) = (&cuts[0], &cuts[1], &cuts[2]);
        ensure(seq.count(a, c) == seq.count(a, b) + seq.count(b, c), || format!("Sturm counts not additive at {cuts:?}"))?;
    }
    let w = FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 };
    let r = ricci_at(&w, &[int(1), int(1), int(1), int(1), int(1)]).unwrap();
    let spread = r.iter().max().unwrap() - r.iter().min().unwrap();
    ensure(spread >= frac(3, 32), || format!("all-ones residual {spread}"))?;
    Ok(format!(
        "homogeneity and swap symmetry on 200 samples, 16 swap partners, {} bases reduced with S-pairs to 0, Sturm additivity, all-ones residual = {spread}",
        bases.len()
    ))
}

fn c9(run: &Run) -> Check {
    ensure(run.code == 0, || format!("census exited with {}", run.code))?;
    let r = json_of(run)?;
    let rows = r["rows"].as_array().unwrap();
    ensure(rows.len() == 3, || format!("{} rows", rows.len()))?;
    let mut parts = Vec::new();
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        ensure(row["complete"] == Value::Bool(true), || format!("n = {n} incomplete: {}", row["note"]))?;
        ensure(row["jensen"] == 2, || format!("n = {n}: {} Jensen", row["jensen"]))?;
        let conj = &row["conjectured"];
        parts.push(format!(
            "n={n}: Jensen {} ADN {} New {} (New+ADN {}) vs conjectured ({}, {}) {}",
            row["jensen"],
            row["adn"],
            row["new"],
            row["new_including_adn"],
            conj[0],
            conj[1],
            if row["agrees"] == Value::Bool(true) { "agrees" } else { "differs" }
        ));
    }
    Ok(parts.join("; "))
}

fn main() {
    let started = Instant::now();
    let solve111 = spawn_cli(&["solve", "--fibration", "wallach", "--k", "1,1,1", "--json"]);
    let solve112 = spawn_cli(&["solve", "--fibration", "wallach", "--k", "1,1,2", "--json"]);
    let census = spawn_cli(&["census", "--family", "n-2,1,1", "--n-max", "5", "--json"]);
    let verify = spawn_cli(&["verify-theorem-b", "--grid", "40", "--json"]);

    let t = Instant::now();
    let spec = FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 };
    let basis = branch_lex_basis(&spec, Branch::Generic, None, &Budget::default()).map_err(|e| e.to_string());
    let basis_time = t.elapsed();

    let r111 = solve111.join().expect("solve thread");
    let r112 = solve112.join().expect("solve thread");
    let rverify = verify.join().expect("verify thread");
    let rcensus = census.join().expect("census thread");

    let criteria: Vec<Box<dyn Fn() -> Check + '_>> = vec![
        Box::new(c1),
        Box::new(|| c2(&basis, basis_time)),
        Box::new(c3),
        Box::new(|| c4(&r111, &r112)),
        Box::new(c5),
        Box::new(c6),
        Box::new(|| c7(&rverify)),
        Box::new(|| c8(&basis, &r111, &r112)),
        Box::new(|| c9(&rcensus)),
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let verdict = catch_unwind(AssertUnwindSafe(c)).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.0} s", 9 - failed, started.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
