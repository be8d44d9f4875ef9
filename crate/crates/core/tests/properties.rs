use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;

use synthsqueeze::experiments::{sweep_gap_vs_mu, sweep_temperature};
use synthsqueeze::lindblad::{eigenspectrum, vectorize};
use synthsqueeze::operator::CMatrix;
use synthsqueeze::schemes::{
    ideal_tms, synthetic_reduced, tl_model, Amplitudes, SqueezeParams, TLParams,
};
use synthsqueeze::{
    concurrence, embed, evolve, kron, liouvillian, partial_trace, DensityMatrix, LindbladModel,
    Operator, C64,
};

fn matrix(n: usize, vals: &[f64]) -> CMatrix {
    DMatrix::from_fn(n, n, |i, j| {
        C64::new(vals[2 * (i * n + j)], vals[2 * (i * n + j) + 1])
    })
}

fn op(dims: &[usize], vals: &[f64]) -> Operator {
    let n = dims.iter().product();
    Operator::new(matrix(n, vals), dims.to_vec()).unwrap()
}

fn hermitian(dims: &[usize], vals: &[f64]) -> Operator {
    let a = op(dims, vals);
    (&a + &a.dagger()).scaled(0.5)
}

fn unitary(dims: &[usize], vals: &[f64]) -> Operator {
    let h = hermitian(dims, vals);
    let u = (h.matrix() * C64::new(0.0, 1.0)).exp();
    Operator::new(u, dims.to_vec()).unwrap()
}

fn density(dims: &[usize], vals: &[f64]) -> DensityMatrix {
    let a = op(dims, vals);
    let m = a.matrix() * a.matrix().adjoint();
    let tr = m.trace();
    DensityMatrix::new(Operator::new(m / tr, dims.to_vec()).unwrap()).unwrap()
}

fn model(dims: &[usize], vals: &[f64], rates: &[f64]) -> LindbladModel {
    let n: usize = dims.iter().product();
    let block = 2 * n * n;
    let h = hermitian(dims, &vals[..block]);
    let jumps = rates
        .iter()
        .enumerate()
        .map(|(k, &g)| (g, op(dims, &vals[(k + 1) * block..(k + 2) * block])))
        .collect();
    LindbladModel::new(h, jumps).unwrap()
}

fn entries(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2 * n * n)
}

fn model_entries(n: usize, jumps: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (
        prop::collection::vec(-1.0f64..1.0, 2 * n * n * (jumps + 1)),
        prop::collection::vec(0.0f64..2.0, jumps),
    )
}

fn sorted_spectrum(m: &LindbladModel) -> Vec<C64> {
    eigenspectrum(&liouvillian(m)).unwrap().eigenvalues
}

fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    let mut used = vec![false; b.len()];
    a.iter().fold(0.0, |worst, x| {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[k] = true;
        f64::max(worst, d)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dagger_distributes_over_kron(a in entries(2), b in entries(3)) {
        let (x, y) = (op(&[2], &a), op(&[3], &b));
        let lhs = kron(&x, &y).dagger();
        let rhs = kron(&x.dagger(), &y.dagger());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn partial_trace_keeps_trace(v in entries(6), keep in 0usize..2) {
        let rho = density(&[2, 3], &v);
        let red = partial_trace(&rho, &[keep]).unwrap();
        assert_abs_diff_eq!(red.trace().re, 1.0, epsilon = 1e-12);
        prop_assert!(red.trace().im.abs() < 1e-12);
    }

    #[test]
    fn embedding_repeats_the_spectrum(v in entries(2), site in 0usize..3) {
        let h = hermitian(&[2], &v);
        let big = embed(&h, site, &[2, 2, 2]).unwrap();
        let small = h.hermitian_eigenvalues();
        let ev = big.hermitian_eigenvalues();
        for (k, x) in ev.iter().enumerate() {
            prop_assert!((x - small[k / 4]).abs() < 1e-12);
        }
    }

    #[test]
    fn liouvillian_is_trace_preserving((v, g) in model_entries(2, 2)) {
        let l = liouvillian(&model(&[2], &v, &g));
        let id = vectorize(&CMatrix::identity(2, 2));
        let row = id.adjoint() * l.matrix();
        prop_assert!(row.iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn liouvillian_preserves_hermiticity((v, g) in model_entries(4, 1), r in entries(4)) {
        let m = model(&[2, 2], &v, &g);
        let rho = density(&[2, 2], &r);
        let out = liouvillian(&m).apply(rho.as_operator());
        prop_assert!(out.is_hermitian(1e-12));
        prop_assert!(out.trace().norm() < 1e-12);
    }

    #[test]
    fn spectrum_is_frame_covariant((v, g) in model_entries(4, 2), u in entries(4)) {
        let m = model(&[2, 2], &v, &g);
        let rotated = m.conjugated_by(&unitary(&[2, 2], &u));
        let d = multiset_distance(&sorted_spectrum(&m), &sorted_spectrum(&rotated));
        prop_assert!(d < 1e-8, "spectra differ by {d}");
    }

    #[test]
    fn evolve_matches_exponential((v, g) in model_entries(2, 2), r in entries(2), t in 0.1f64..2.0) {
        let m = model(&[2], &v, &g);
        let rho0 = density(&[2], &r);
        let traj = evolve(&m, &rho0, t, 1e-3).unwrap();
        let l = liouvillian(&m);
        let exact = (l.matrix() * C64::new(t, 0.0)).exp() * vectorize(rho0.matrix());
        let got = vectorize(traj.last().unwrap().1.matrix());
        prop_assert!((got - exact).camax() < 1e-6);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(r in entries(4), a in entries(2), b in entries(2)) {
        let rho = density(&[2, 2], &r);
        let u = kron(&unitary(&[2], &a), &unitary(&[2], &b));
        let c0 = concurrence(&rho).unwrap();
        let c1 = concurrence(&rho.conjugated_by(&u)).unwrap();
        prop_assert!((0.0..=1.0).contains(&c0));
        prop_assert!((c0 - c1).abs() < 1e-9);
    }

    #[test]
    fn reduced_model_reproduces_ideal_tms(r in 0.0f64..2.5, alpha in 0.1f64..2.0, kappa in 1.0f64..20.0) {
        let p = SqueezeParams::new(r, alpha, 1.0, kappa).unwrap();
        let reduced = liouvillian(&synthetic_reduced(&p, &Amplitudes::tms(alpha, r), false).unwrap());
        let ideal = liouvillian(&ideal_tms(r, p.gamma(), p.gamma()).unwrap());
        prop_assert!(reduced.max_abs_diff(&ideal) < 1e-10 * ideal.matrix().camax().max(1.0));
    }

    #[test]
    fn aligned_transmission_line_doubles_the_rate(r in 0.0f64..3.0) {
        let k1 = 2.0 * std::f64::consts::PI;
        let tl = TLParams::new(r, k1, 1.5 * k1, 0.0).unwrap();
        let lhs = liouvillian(&tl_model(&tl, true).unwrap());
        let rhs = liouvillian(&ideal_tms(r, 1.0, 1.0).unwrap()).scaled(2.0);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * rhs.matrix().camax().max(1.0));
    }
}

#[test]
fn sweeps_do_not_depend_on_thread_count() {
    let grid: Vec<f64> = (0..12).map(|k| 0.01 * k as f64).collect();
    let default = sweep_temperature(1.0, 1.0, 6.0, &grid).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| sweep_temperature(1.0, 1.0, 6.0, &grid).unwrap());
    assert_eq!(default, single);

    let mu = [0.01, 0.1, 1.0, 10.0];
    let a = sweep_gap_vs_mu(&[0.5, 1.0], &mu, 1.0).unwrap();
    let b = pool.install(|| sweep_gap_vs_mu(&[0.5, 1.0], &mu, 1.0).unwrap());
    assert_eq!(a, b);
}
