use einstein_sp::algebra::rational::int;
use einstein_sp::geometry::FibrationSpec;
use einstein_sp::proofs::data_file;
use einstein_sp::solver::{assemble_flag_symbolic, assemble_system, EinsteinSystem};

fn assert_positive_multiples(sys: &EinsteinSystem, stem: &str) {
    let printed = data_file(stem).unwrap();
    assert_eq!(sys.ctx, printed.ctx);
    assert_eq!(sys.polys.len(), printed.polys.len());
    for (i, (got, want)) in sys.polys.iter().zip(&printed.polys).enumerate() {
        assert!(got.positive_multiple_of(want).is_some(), "{stem} f{}: got {got}", i + 1);
    }
}

#[test]
fn wallach_111() {
    let sys = assemble_system(&FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }).unwrap();
    assert_eq!(sys.normalized_variable, "x23");
    assert_positive_multiples(&sys, "system_111");
}

#[test]
fn wallach_112() {
    assert_positive_multiples(&assemble_system(&FibrationSpec::Wallach { k1: 1, k2: 1, k3: 2 }).unwrap(), "system_112");
}

#[test]
fn flag_symbolic() {
    assert_positive_multiples(&assemble_flag_symbolic().unwrap(), "system_flag");
}

#[test]
fn flag_numeric_is_the_symbolic_system_specialized() {
    let sym = assemble_flag_symbolic().unwrap();
    let num = assemble_system(&FibrationSpec::Flag { n: 5, p: 3 }).unwrap();
    for (s, f) in sym.polys.iter().zip(&num.polys) {
        let s = s
            .set_var("n", &int(5))
            .unwrap()
            .set_var("p", &int(3))
            .unwrap()
            .to_context(&num.ctx)
            .unwrap();
        assert!(s.positive_multiple_of(f).is_some(), "{s} vs {f}");
    }
}
