mod common;

use common::{oracle_gaps, pendulum_oracle, random_circuit_points};
use monodromy_core::pendulum::{pendulum_roots, rotation_and_period, PendulumPoint};

#[test]
fn gaps_agree_with_bisection() {
    for p in random_circuit_points(50, 7) {
        let r = pendulum_roots(p).unwrap();
        let (u, v, w) = oracle_gaps(p);
        for (a, b) in [(r.u, u), (r.v, v), (r.w, w)] {
            assert!((a - b).abs() <= 1e-13 * b.abs(), "{p:?}: {a} vs {b}");
        }
    }
}

#[test]
fn carlson_theta_and_period_match_quadrature() {
    let mut worst = (0.0f64, 0.0f64);
    for p in random_circuit_points(50, 9) {
        let (theta, t) = rotation_and_period(p).unwrap();
        let (theta_q, t_q) = pendulum_oracle(p);
        let et = ((theta - theta_q) / theta_q).abs();
        let ep = ((t - t_q) / t_q).abs();
        worst = (worst.0.max(et), worst.1.max(ep));
        assert!(et < 1e-8, "{p:?}: Θ {theta} vs {theta_q}");
        assert!(ep < 1e-8, "{p:?}: T {t} vs {t_q}");
    }
    println!("worst relative error: Θ {:.2e}, T {:.2e}", worst.0, worst.1);
}

#[test]
fn fixed_point_on_the_j_axis_side() {
    let p = PendulumPoint::new(0.05, 1.0);
    let (theta, t) = rotation_and_period(p).unwrap();
    let (theta_q, t_q) = pendulum_oracle(p);
    assert!(((theta - theta_q) / theta_q).abs() < 1e-8);
    assert!(((t - t_q) / t_q).abs() < 1e-8);
}

#[test]
fn points_far_from_the_circuit() {
    for (j, h) in [(0.3, 0.5), (0.5, 1.5), (-0.8, 2.0), (0.1, -0.5)] {
        let p = PendulumPoint::new(j, h);
        let (theta, t) = rotation_and_period(p).unwrap();
        let (theta_q, t_q) = pendulum_oracle(p);
        assert!(((theta - theta_q) / theta_q).abs() < 1e-9, "{p:?}");
        assert!(((t - t_q) / t_q).abs() < 1e-9, "{p:?}");
    }
}
