//! Property-based checks of the analytic building blocks.

use proptest::prelude::*;

use perilap::*;

proptest! {
    #[test]
    fn power_moment_additivity(
        p in 0u32..=3,
        s in 0.01f64..0.99,
        alpha in 0.01f64..5.0,
        gap1 in 0.01f64..5.0,
        gap2 in 0.01f64..5.0,
    ) {
        let beta = alpha + gap1;
        let gamma = beta + gap2;
        let ab = power_moment(p, alpha, beta, s).unwrap();
        let bc = power_moment(p, beta, gamma, s).unwrap();
        let ac = power_moment(p, alpha, gamma, s).unwrap();
        prop_assert!((ab + bc - ac).abs() <= 1e-12 * ac.abs().max(1.0));
    }

    #[test]
    fn collar_tail_below_infinite_tail(
        s in 0.05f64..0.95,
        x in 0.01f64..0.99,
        delta in 0.01f64..4.0,
    ) {
        let p = FracParams::new(1, s).unwrap();
        let spec = KernelSpec::new(p, delta).unwrap();
        let tau = collar_tail(x, &spec, 0.0, 1.0).unwrap();
        let psi = infinite_tail(x, p, 0.0, 1.0).unwrap();
        prop_assert!(tau >= 0.0);
        prop_assert!(tau <= psi + 1e-12 * psi);
        // with delta covering the domain the defect is exactly delta^{-2s}/s
        if delta >= 1.0 {
            let defect = psi - tau;
            let expect = delta.powf(-2.0 * s) / s;
            prop_assert!((defect - expect).abs() <= 1e-10 * expect);
        }
    }

    #[test]
    fn kappa_identity_random_params(n in 1u32..=3, s in 0.05f64..0.95) {
        let p = FracParams::new(n, s).unwrap();
        let lhs = kappa(p) * c_norm(p) * surface_measure(n).unwrap();
        let rhs = 4.0 * n as f64 * (1.0 - s);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn gamma_recurrence(x in 0.05f64..29.0) {
        let lhs = gamma_fn(x + 1.0).unwrap();
        let rhs = x * gamma_fn(x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn mesh_partition_invariants(n_int in 2u64..200, m in 1u64..64) {
        let mesh = build_mesh(0.0, 1.0, n_int, m).unwrap();
        prop_assert_eq!(mesh.node_count(), n_int + 2 * m + 1);
        prop_assert_eq!(mesh.free_count() as u64, n_int - 1);
        prop_assert!((mesh.delta() - m as f64 * mesh.h).abs() == 0.0);
        // coverage of the completed domain
        prop_assert!((mesh.node(0) - (0.0 - mesh.delta())).abs() < 1e-12);
        let last = mesh.node(mesh.node_count() - 1);
        prop_assert!((last - (1.0 + mesh.delta())).abs() < 1e-12);
        // free/constrained partition
        let mut free = 0u64;
        for i in 0..mesh.node_count() {
            if mesh.is_free(i) {
                free += 1;
                let x = mesh.node(i);
                prop_assert!(x > 0.0 && x < 1.0);
            }
        }
        prop_assert_eq!(free, n_int - 1);
    }

    #[test]
    fn config_roundtrip(
        s in 0.05f64..0.95,
        n_int in 2u64..500,
        m in 1u64..64,
        k in 1usize..8,
    ) {
        let text = format!(
            r#"{{"mode":"eigs","domain":{{"a":0.0,"b":1.0}},"s":{s},"n_int":{n_int},"m":{m},"k":{k}}}"#
        );
        let cfg = cli::parse_config(&text).unwrap();
        let serialized = serde_json::to_string(&cfg).unwrap();
        let back = cli::parse_config(&serialized).unwrap();
        prop_assert_eq!(cfg, back);
    }

    #[test]
    fn g_entries_sign_and_zero_row_sum(
        s in 0.05f64..0.95,
        m in 1u64..64,
    ) {
        let g0 = assembly::g_entry(0, m, 0.1, s).unwrap();
        prop_assert!(g0 > 0.0);
        let mut sum = g0;
        for d in 1..=m + 1 {
            let gd = assembly::g_entry(d, m, 0.1, s).unwrap();
            sum += 2.0 * gd;
            // far couplings (pure -psi(d-t) range) are attractive
            if d >= 2 {
                prop_assert!(gd < 0.0, "d={} g={}", d, gd);
            }
        }
        // a globally constant function carries no energy
        prop_assert!(sum.abs() <= 1e-10 * g0);
    }

    #[test]
    fn rescale_inverts(lambda in 0.001f64..100.0, delta in 0.001f64..10.0, s in 0.05f64..0.95) {
        let p = FracParams::new(1, s).unwrap();
        let r = rescale_eigen(lambda, delta, p);
        let back = r * delta.powf(2.0 * (1.0 - s)) / kappa(p);
        prop_assert!((back - lambda).abs() <= 1e-12 * lambda);
    }
}
