mod common;

use common::*;
use proptest::prelude::*;
use tstein_core::kernel::{eigenvalues, min_singular_value, two_norm, GeneralizedEigenvalue};
use tstein_core::solvers::{solve_cg_from, stein_residual, sylvester_residual, DEFAULT_TOL, SMITH_MAX_ITERATIONS};
use tstein_core::{
    build_pencil, generate_problem, qz, solve_bartels_stewart, solve_cg, solve_deflating, solve_direct,
    solve_smith, solve_t_sylvester, DenseMatrix, Method, PencilVariant, Profile, Shift, SolveOutcome, TsteinError,
    C64,
};
use tstein_core::solvers::deflate_pencil;

fn remark() -> (DenseMatrix, DenseMatrix, DenseMatrix) {
    (scalar(-1.0), scalar(1.0), scalar(3.0))
}

fn check_outcome(o: &SolveOutcome, a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix) {
    assert_eq!(o.x.shape(), c.shape());
    let r = stein_residual(a, b, c, &o.x).fro_norm();
    assert!((r - o.residual_fro).abs() <= 1e-14);
}

#[test]
fn direct_examples() {
    let (a, b, c) = remark();
    let o = solve_direct(&a, &b, &c).unwrap();
    check_outcome(&o, &a, &b, &c);
    assert_eq!(o.method, Method::Direct);
    assert!((o.x[(0, 0)].re - 1.5).abs() < 1e-15);

    let mut r = rng(41);
    let bb = real(&mut r, 3, 3);
    let cc = real(&mut r, 3, 3);
    let o = solve_direct(&DenseMatrix::zeros(3, 3), &bb, &cc).unwrap();
    assert!(o.x.distance(&cc) < 1e-15);

    let o = solve_direct(&scalar(0.5), &scalar(0.5), &scalar(3.0)).unwrap();
    assert!((o.x[(0, 0)].re - 4.0).abs() < 1e-14);
}

#[test]
fn direct_rejects_unsolvable_with_report() {
    let a = DenseMatrix::identity(2);
    let b = DenseMatrix::from_rows(&[[2.0, 0.0], [0.0, 0.5]]);
    match solve_direct(&a, &b, &DenseMatrix::identity(2)) {
        Err(TsteinError::Unsolvable(report)) => {
            assert!(!report.uniquely_solvable);
            assert!(report.margin < 1e-12);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn bartels_stewart_examples() {
    let (a, b, c) = remark();
    let o = solve_bartels_stewart(&a, &b, &c).unwrap();
    check_outcome(&o, &a, &b, &c);
    assert!((o.x[(0, 0)].re - 1.5).abs() < 1e-15);

    let mut r = rng(42);
    for _ in 0..5 {
        let (a, b, c) = (real(&mut r, 1, 1), real(&mut r, 1, 1), real(&mut r, 1, 1));
        let d = solve_direct(&a, &b, &c).unwrap();
        assert!(rel(&solve_bartels_stewart(&a, &b, &c).unwrap().x, &d.x) < 1e-14);
    }
    for complex_data in [false, true] {
        for _ in 0..5 {
            let gen = if complex_data { complex } else { real };
            let (a, b, c) = (gen(&mut r, 5, 5), gen(&mut r, 5, 5), gen(&mut r, 5, 5));
            let d = solve_direct(&a, &b, &c).unwrap();
            let o = solve_bartels_stewart(&a, &b, &c).unwrap();
            check_outcome(&o, &a, &b, &c);
            assert!(rel(&o.x, &d.x) <= 1e-8, "{}", rel(&o.x, &d.x));
        }
    }
}

#[test]
fn bartels_stewart_singular_coefficients() {
    let mut r = rng(43);
    let mut a = real(&mut r, 4, 4);
    for j in 0..4 {
        a[(3, j)] = a[(1, j)];
    }
    let b = real(&mut r, 4, 4);
    let c = real(&mut r, 4, 4);
    let d = solve_direct(&a, &b, &c).unwrap();
    assert!(rel(&solve_bartels_stewart(&a, &b, &c).unwrap().x, &d.x) <= 1e-8);
}

#[test]
fn minus_one_routes_to_direct_and_bartels_stewart() {
    for n in 1..=5 {
        let p = generate_problem(n, 7, Profile::MinusOneSimple).unwrap();
        let d = solve_direct(&p.a, &p.b, &p.c).unwrap();
        let bs = solve_bartels_stewart(&p.a, &p.b, &p.c).unwrap();
        assert!(rel(&bs.x, &d.x) <= 1e-8);
        for v in [PencilVariant::Ml, PencilVariant::M1l1] {
            assert!(matches!(
                solve_deflating(&p.a, &p.b, &p.c, v),
                Err(TsteinError::MethodInapplicable(_))
            ));
        }
        assert!(matches!(
            solve_smith(&p.a, &p.b, &p.c, SMITH_MAX_ITERATIONS, DEFAULT_TOL),
            Err(TsteinError::MethodInapplicable(_))
        ));
    }
}

#[test]
fn smith_examples() {
    let z = DenseMatrix::zeros(3, 3);
    let mut r = rng(44);
    let (a, b) = (real(&mut r, 3, 3).scale_real(0.3), real(&mut r, 3, 3).scale_real(0.3));
    let o = solve_smith(&a, &b, &z, SMITH_MAX_ITERATIONS, DEFAULT_TOL).unwrap();
    assert_eq!(o.iterations, 1);
    assert_eq!(o.x, z);

    let o = solve_smith(&scalar(0.5), &scalar(0.5), &scalar(3.0), SMITH_MAX_ITERATIONS, DEFAULT_TOL).unwrap();
    assert!(o.converged);
    assert!((o.x[(0, 0)].re - 4.0).abs() < 1e-13);

    for seed in 0..5 {
        let p = generate_problem(4, seed, Profile::Contractive).unwrap();
        let d = solve_direct(&p.a, &p.b, &p.c).unwrap();
        let o = solve_smith(&p.a, &p.b, &p.c, SMITH_MAX_ITERATIONS, DEFAULT_TOL).unwrap();
        check_outcome(&o, &p.a, &p.b, &p.c);
        assert!(o.converged && o.iterations <= 7, "{} iterations", o.iterations);
        assert_eq!(o.trace.len(), o.iterations);
        assert!(rel(&o.x, &d.x) <= 1e-10);
    }
}

#[test]
fn smith_partial_sums_match_explicit_series() {
    // after k steps the iterate is Σ_{i<2^k} 𝒜ⁱ𝒞ℬⁱ
    let p = generate_problem(3, 9, Profile::Contractive).unwrap();
    let big_a = &p.a * &p.b.transpose();
    let big_b = &p.a.transpose() * &p.b;
    let big_c = &p.c + &(&(&p.a * &p.c.transpose()) * &p.b);
    for k in 1..=3 {
        let o = solve_smith(&p.a, &p.b, &p.c, k, 0.0).unwrap();
        let mut sum = DenseMatrix::zeros(3, 3);
        let mut term = big_c.clone();
        for _ in 0..(1 << k) {
            sum = &sum + &term;
            term = &(&big_a * &term) * &big_b;
        }
        assert!(rel(&o.x, &sum) < 1e-13);
    }
}

#[test]
fn smith_refuses_large_spectral_radius() {
    let a = DenseMatrix::from_rows(&[[1.2, 0.0], [0.0, 0.3]]);
    let b = DenseMatrix::identity(2);
    assert!(matches!(
        solve_smith(&a, &b, &b, SMITH_MAX_ITERATIONS, DEFAULT_TOL),
        Err(TsteinError::MethodInapplicable(_))
    ));
}

#[test]
fn cg_examples() {
    let (a, b, c) = remark();
    let o = solve_cg(&a, &b, &c, None, DEFAULT_TOL).unwrap();
    check_outcome(&o, &a, &b, &c);
    assert!(o.converged && o.iterations <= 2);
    assert!((o.x[(0, 0)].re - 1.5).abs() < 1e-14);

    let exact = solve_direct(&a, &b, &c).unwrap().x;
    let o = solve_cg_from(&a, &b, &c, &exact, None, DEFAULT_TOL).unwrap();
    assert_eq!(o.iterations, 0);
    assert_eq!(o.residual_fro, 0.0);

    for seed in 0..5 {
        let p = generate_problem(4, seed, Profile::WellSeparated).unwrap();
        let d = solve_direct(&p.a, &p.b, &p.c).unwrap();
        let o = solve_cg(&p.a, &p.b, &p.c, None, DEFAULT_TOL).unwrap();
        assert!(o.converged);
        assert!(o.iterations <= 16 + 10, "{} iterations", o.iterations);
        assert!(rel(&o.x, &d.x) <= 1e-8);
    }
}

#[test]
fn cg_reports_cap_without_convergence() {
    let p = generate_problem(4, 1, Profile::WellSeparated).unwrap();
    let o = solve_cg(&p.a, &p.b, &p.c, Some(2), DEFAULT_TOL).unwrap();
    assert!(!o.converged);
    assert_eq!(o.iterations, 2);
    assert_eq!(o.trace.len(), 2);
}

#[test]
fn pencil_examples() {
    let (a, b, c) = (scalar(2.0), scalar(1.0), scalar(3.0));
    let (m, l) = build_pencil(&a, &b, &c, PencilVariant::Ml).unwrap();
    assert_eq!(m, DenseMatrix::from_rows(&[[2.0, 0.0], [-6.0, 1.0]]));
    assert_eq!(l, DenseMatrix::from_rows(&[[1.0, 0.0], [6.0, 2.0]]));
    let (m, l) = build_pencil(&a, &b, &c, PencilVariant::M1l1).unwrap();
    assert_eq!(m, DenseMatrix::from_rows(&[[2.0, 0.0], [-9.0, 1.0]]));
    assert_eq!(l, DenseMatrix::from_rows(&[[1.0, 0.0], [0.0, 2.0]]));
}

#[test]
fn pencil_spectrum_splits() {
    let mut r = rng(45);
    let (a, b, c) = (real(&mut r, 3, 3), real(&mut r, 3, 3), real(&mut r, 3, 3));
    let (m, l) = build_pencil(&a, &b, &c, PencilVariant::Ml).unwrap();
    let got: Vec<C64> = qz(&m, &l).unwrap().eigenvalues().iter().map(|e| e.value()).collect();
    let mut expected = eigenvalues(&(&b * &a.transpose())).unwrap();
    expected.extend(eigenvalues(&(&a * &b.transpose())).unwrap().iter().map(|mu| mu.inv()));
    let scale = expected.iter().map(|z| z.norm()).fold(1.0, f64::max);
    assert!(multiset_distance(&got, &expected) <= 1e-9 * scale);
}

#[test]
fn deflating_examples() {
    for v in [PencilVariant::Ml, PencilVariant::M1l1] {
        let o = solve_deflating(&scalar(2.0), &scalar(1.0), &scalar(3.0), v).unwrap();
        assert!((o.x[(0, 0)] - C64::new(-3.0, 0.0)).norm() < 1e-13);
        let o = solve_deflating(&scalar(0.5), &scalar(0.5), &scalar(3.0), v).unwrap();
        assert!((o.x[(0, 0)] - C64::new(4.0, 0.0)).norm() < 1e-13);
    }
    for seed in 0..5 {
        let p = generate_problem(4, seed, Profile::WellSeparated).unwrap();
        let d = solve_direct(&p.a, &p.b, &p.c).unwrap();
        for v in [PencilVariant::Ml, PencilVariant::M1l1] {
            let o = solve_deflating(&p.a, &p.b, &p.c, v).unwrap();
            check_outcome(&o, &p.a, &p.b, &p.c);
            assert!(rel(&o.x, &d.x) <= 1e-8);
        }
    }
}

#[test]
fn deflating_needs_invertible_a_only_for_ml() {
    let a = DenseMatrix::from_rows(&[[0.5, 0.2], [0.0, 0.0]]);
    let b = DenseMatrix::from_rows(&[[0.3, -0.1], [0.4, 0.2]]);
    let c = DenseMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
    assert!(matches!(
        solve_deflating(&a, &b, &c, PencilVariant::Ml),
        Err(TsteinError::MethodInapplicable(_))
    ));
    let d = solve_direct(&a, &b, &c).unwrap();
    assert!(rel(&solve_deflating(&a, &b, &c, PencilVariant::M1l1).unwrap().x, &d.x) <= 1e-8);
}

fn stacked(top: &DenseMatrix, bottom: &DenseMatrix) -> DenseMatrix {
    let mut s = DenseMatrix::zeros(top.rows() + bottom.rows(), top.cols());
    s.set_submatrix(0, 0, top);
    s.set_submatrix(top.rows(), 0, bottom);
    s
}

fn side_by_side(left: &DenseMatrix, right: &DenseMatrix) -> DenseMatrix {
    let mut s = DenseMatrix::zeros(left.rows(), left.cols() + right.cols());
    s.set_submatrix(0, 0, left);
    s.set_submatrix(0, left.cols(), right);
    s
}

fn finite(values: &[C64]) -> Vec<GeneralizedEigenvalue> {
    values
        .iter()
        .map(|&alpha| GeneralizedEigenvalue {
            alpha,
            beta: C64::new(1.0, 0.0),
        })
        .collect()
}

#[test]
fn deflation_identities_and_rank() {
    for seed in 0..5 {
        let p = generate_problem(4, seed, Profile::Contractive).unwrap();
        let (m, l) = build_pencil(&p.a, &p.b, &p.c, PencilVariant::Ml).unwrap();
        let targets = eigenvalues(&(&p.b * &p.a.transpose())).unwrap();
        let d = deflate_pencil(&m, &l, &finite(&targets)).unwrap();
        let z1 = stacked(&d.u1, &d.v1);
        let w = stacked(&d.u2, &d.v2);
        let scale = m.fro_norm().max(l.fro_norm());
        assert!((&m * &z1).distance(&(&w * &d.t1)) <= 1e-10 * scale);
        assert!((&l * &z1).distance(&(&w * &d.t2)) <= 1e-10 * scale);
        assert!(min_singular_value(&z1) > 1e-10);
        assert!(min_singular_value(&w) > 1e-10);
    }
}

#[test]
fn complementary_deflation_has_zero_top_blocks() {
    // the deflating subspace for σ(I − λABᵀ) lies in {0} × ℂⁿ
    for seed in 0..5 {
        let p = generate_problem(3, seed, Profile::Contractive).unwrap();
        let (m, l) = build_pencil(&p.a, &p.b, &p.c, PencilVariant::Ml).unwrap();
        let targets: Vec<GeneralizedEigenvalue> = eigenvalues(&(&p.a * &p.b.transpose()))
            .unwrap()
            .into_iter()
            .map(|mu| GeneralizedEigenvalue {
                alpha: C64::new(1.0, 0.0),
                beta: mu,
            })
            .collect();
        let d = deflate_pencil(&m, &l, &targets).unwrap();
        assert!(d.u1.fro_norm() <= 1e-9 * m.fro_norm().max(1.0), "{}", d.u1.fro_norm());
        assert!(d.u2.fro_norm() <= 1e-9 * m.fro_norm().max(1.0), "{}", d.u2.fro_norm());
    }
}

#[test]
fn sylvester_examples() {
    let o = solve_t_sylvester(&scalar(1.0), &scalar(1.0), &scalar(2.0), Shift::Auto).unwrap();
    assert!((o.x[(0, 0)].re - 1.0).abs() < 1e-14);
    let o = solve_t_sylvester(&scalar(1.0), &scalar(0.0), &scalar(5.0), Shift::Auto).unwrap();
    assert!((o.x[(0, 0)].re - 5.0).abs() < 1e-14);
    let mut r = rng(46);
    for _ in 0..10 {
        let (a, b, c) = (real(&mut r, 3, 3), real(&mut r, 3, 3), real(&mut r, 3, 3));
        let o = solve_t_sylvester(&a, &b, &c, Shift::Auto).unwrap();
        let res = sylvester_residual(&a, &b, &c, &o.x).fro_norm();
        assert!((res - o.residual_fro).abs() < 1e-14);
        assert!(res <= 1e-8 * c.fro_norm());
    }
}

#[test]
fn sylvester_symmetric_shift_is_rejected() {
    let mut r = rng(47);
    let (a, b, c) = (real(&mut r, 3, 3), real(&mut r, 3, 3), real(&mut r, 3, 3));
    for shift in [Shift::Fixed(1.0, 1.0), Shift::Fixed(1.0, -1.0)] {
        assert!(matches!(solve_t_sylvester(&a, &b, &c, shift), Err(TsteinError::IrregularPencil)));
    }
    let o = solve_t_sylvester(&a, &b, &c, Shift::Fixed(1.0, 0.0)).unwrap();
    assert_eq!(o.shift, (1.0, 0.0));
}

#[test]
fn sylvester_irregular_pencil() {
    // A − λBᵀ ≡ 0 for A = B = 0
    let z = DenseMatrix::zeros(2, 2);
    assert!(matches!(
        solve_t_sylvester(&z, &z, &DenseMatrix::identity(2), Shift::Auto),
        Err(TsteinError::IrregularPencil)
    ));
}

fn all_methods(a: &DenseMatrix, b: &DenseMatrix, c: &DenseMatrix) -> Vec<(String, DenseMatrix)> {
    let mut out = vec![
        ("direct".to_string(), solve_direct(a, b, c).unwrap().x),
        ("bs".to_string(), solve_bartels_stewart(a, b, c).unwrap().x),
        ("smith".to_string(), solve_smith(a, b, c, SMITH_MAX_ITERATIONS, DEFAULT_TOL).unwrap().x),
        ("cg".to_string(), solve_cg(a, b, c, None, DEFAULT_TOL).unwrap().x),
    ];
    for v in [PencilVariant::Ml, PencilVariant::M1l1] {
        out.push((format!("{v:?}"), solve_deflating(a, b, c, v).unwrap().x));
    }
    out
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn methods_agree_and_satisfy_identities(n in 1usize..=6, seed in any::<u64>()) {
        let p = generate_problem(n, seed, Profile::Contractive).unwrap();
        let (a, b, c) = (&p.a, &p.b, &p.c);
        let results = all_methods(a, b, c);
        let reference = &results[0].1;
        for (name, x) in &results {
            prop_assert!(rel(x, reference) <= 1e-7, "{} differs by {:e}", name, rel(x, reference));
        }
        let x = reference;
        let xn = x.fro_norm().max(f64::MIN_POSITIVE);
        // W = ABᵀ W AᵀB + ACᵀB + C
        let abt = a * &b.transpose();
        let atb = &a.transpose() * b;
        let stein = &(&(&(&abt * x) * &atb) + &(&(a * &c.transpose()) * b)) + c;
        prop_assert!(x.distance(&stein) <= 1e-9 * xn);
        // Y = BᵀYᵀAᵀ + Cᵀ with Y = Xᵀ
        let y = x.transpose();
        let dual = &(&(&b.transpose() * &y.transpose()) * &a.transpose()) + &c.transpose();
        prop_assert!(y.distance(&dual) <= 1e-9 * xn);
        // ℳ[I; XAᵀ] = [I; AXᵀ]BAᵀ and ℒ[I; XAᵀ] = [I; AXᵀ]
        let (m, l) = build_pencil(a, b, c, PencilVariant::Ml).unwrap();
        let id = DenseMatrix::identity(n);
        let left = stacked(&id, &(x * &a.transpose()));
        let right = stacked(&id, &(a * &x.transpose()));
        let scale = m.fro_norm().max(l.fro_norm()) * left.fro_norm();
        prop_assert!((&m * &left).distance(&(&right * &(b * &a.transpose()))) <= 1e-9 * scale);
        prop_assert!((&l * &left).distance(&right) <= 1e-9 * scale);
        // [−AXᵀ I]ℳ = [−XAᵀ I] and [−AXᵀ I]ℒ = ABᵀ[−XAᵀ I]
        let row_a = side_by_side(&(a * &x.transpose()).scale_real(-1.0), &id);
        let row_x = side_by_side(&(x * &a.transpose()).scale_real(-1.0), &id);
        prop_assert!((&row_a * &m).distance(&row_x) <= 1e-9 * scale);
        prop_assert!((&row_a * &l).distance(&(&abt * &row_x)) <= 1e-9 * scale);
    }

    #[test]
    fn smith_converges_quadratically(n in 1usize..=6, seed in any::<u64>()) {
        let p = generate_problem(n, seed, Profile::Contractive).unwrap();
        let o = solve_smith(&p.a, &p.b, &p.c, SMITH_MAX_ITERATIONS, DEFAULT_TOL).unwrap();
        prop_assert!(o.converged && o.iterations <= 7);
        // log(res_{k+1}) ≈ 2·log(res_k) while above roundoff, past the first step
        let floor = 1e3 * f64::EPSILON;
        for w in o.trace.windows(2).skip(1) {
            if w[0] < 0.5 && w[1] > floor {
                prop_assert!(w[1].ln() / w[0].ln() >= 1.4, "{:?}", o.trace);
            }
        }
        // ‖X − C_k‖^{1/2^k} against ρ(𝒜)ρ(ℬ) = ρ(ABᵀ)²
        let d = solve_direct(&p.a, &p.b, &p.c).unwrap().x;
        let k = o.iterations.min(3);
        let partial = solve_smith(&p.a, &p.b, &p.c, k, 0.0).unwrap().x;
        let err = rel(&partial, &d);
        if err > floor {
            let rho = eigenvalues(&(&p.a * &p.b.transpose())).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(err.powf(1.0 / (1u64 << k) as f64) <= 2.0 * rho * rho, "{err:e} at k = {k}");
        }
    }

    #[test]
    fn bartels_stewart_matches_direct((a, b, c) in triple(1, 6)) {
        let rep = tstein_core::check_solvability(&a, &b).unwrap();
        prop_assume!(rep.uniquely_solvable && rep.margin > 1e-6);
        let d = solve_direct(&a, &b, &c).unwrap();
        let o = solve_bartels_stewart(&a, &b, &c).unwrap();
        let q = tstein_core::solvers::stein_matrix(&a, &b).unwrap();
        let kappa = two_norm(&q) / min_singular_value(&q);
        prop_assert!(rel(&o.x, &d.x) <= 1e-13 * kappa.max(1.0) * (a.rows() * a.rows()) as f64);
    }
}
