use std::f64::consts::PI;

use qbilliard::circular::{closed_orbits, lz_moments, CircBilliard, CircWindow};
use qbilliard::polygonal::Launch;
use qbilliard::special::{bessel_j, quad_radial, GaussLegendreRule};
use qbilliard::wavepacket::angular_momentum_moments;
use qbilliard::wkb::{wkb_energies, Potential1D};
use qbilliard::{autocorrelation, Complex64, GaussianPacket2D, PhysicalUnits, StateLabel};

fn disk() -> CircBilliard {
    CircBilliard::standard(PhysicalUnits::default())
}

/// `∫∫ conj(f) g r dr dθ` over the unit disk.
fn disk_inner<F, G>(f: F, g: G) -> Complex64
where
    F: Fn(f64, f64) -> Complex64,
    G: Fn(f64, f64) -> Complex64,
{
    let rule = GaussLegendreRule::new(30);
    let n_theta = 64;
    let mut total = Complex64::new(0.0, 0.0);
    for (r, w) in rule.composite(0.0, 1.0, 4) {
        for k in 0..n_theta {
            let th = 2.0 * PI * k as f64 / n_theta as f64;
            total += f(r, th).conj() * g(r, th) * (w * r * 2.0 * PI / n_theta as f64);
        }
    }
    total
}

#[test]
fn normalization_matches_quadrature() {
    let d = disk();
    let z = 2.404_825_557_695_773;
    let n = d.normalization(0, z).unwrap();
    let integral = quad_radial(|r| r * bessel_j(0, z * r).unwrap().powi(2), 1.0, 60).unwrap();
    assert!((n * n - 1.0 / integral).abs() < 1e-9 * n * n);
    for s in d.spectrum(6, 5).unwrap() {
        let i = quad_radial(|r| r * bessel_j(s.m.unsigned_abs(), s.z * r).unwrap().powi(2), 1.0, 80)
            .unwrap();
        assert!((s.norm * s.norm * i - 1.0).abs() < 1e-10, "{s:?}");
    }
}

#[test]
fn low_states_orthonormal() {
    let d = disk();
    let mut states = d.spectrum(3, 3).unwrap();
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    states.truncate(10);
    for a in &states {
        for b in &states {
            let g = disk_inner(
                |r, t| d.eigenfunction(a, r, t).unwrap(),
                |r, t| d.eigenfunction(b, r, t).unwrap(),
            );
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!((g - expect).norm() < 1e-8, "{a:?} {b:?}: {g}");
        }
    }
}

#[test]
fn half_disk_orthonormal() {
    let h = disk().half_circle();
    let states: Vec<_> = [(1, 0), (2, 0), (1, 1), (3, 0), (2, 1), (4, 0)]
        .iter()
        .map(|&(m, n)| h.state(m, n).unwrap())
        .collect();
    let rule = GaussLegendreRule::new(30);
    for a in &states {
        for b in &states {
            let mut g = 0.0;
            for (r, wr) in rule.composite(0.0, 1.0, 4) {
                for (t, wt) in rule.composite(0.0, PI, 2) {
                    g += wr * wt * r * h.eigenfunction(a, r, t) * h.eigenfunction(b, r, t);
                }
            }
            let expect = if a == b { 1.0 } else { 0.0 };
            assert!((g - expect).abs() < 1e-8, "{a:?} {b:?}: {g}");
        }
        assert_eq!(h.eigenfunction(a, 0.5, 0.0), 0.0);
    }
    assert!(h.state(0, 1).is_err());
}

#[test]
fn centered_rest_packet_is_pure_m_zero() {
    let d = disk();
    let p = GaussianPacket2D::with_spread(0.0, 0.0, 0.0, 0.0, 0.05).unwrap();
    let window = CircWindow {
        m: -3..=3,
        ..d.default_window(&p)
    };
    let e = d.coefficients(&p, &window).unwrap();
    for t in e.terms() {
        let StateLabel::Circle { m, .. } = t.line.label else {
            unreachable!()
        };
        if m != 0 {
            assert!(t.coeff.norm() < 1e-10, "{t:?}");
        }
    }
    assert!(e.captured_probability() > 1.0 - 1e-9);
}

#[test]
fn centered_moving_packet_has_mirror_symmetry() {
    let d = disk();
    let p = GaussianPacket2D::with_spread(0.0, 0.0, 0.0, 60.0, 0.05).unwrap();
    let e = d.expand(&p).unwrap();
    for t in e.terms() {
        let StateLabel::Circle { m, n_r } = t.line.label else {
            unreachable!()
        };
        let mirror = e.coefficient(&StateLabel::Circle { m: -m, n_r }).unwrap();
        assert!((t.coeff.norm() - mirror.norm()).abs() < 1e-10);
    }
}

#[test]
fn disk_packets_close() {
    let d = disk();
    for x0 in [-0.5, 0.0, 0.7] {
        let p = GaussianPacket2D::with_spread(x0, 0.0, 0.0, 100.0, 0.05).unwrap();
        let e = d.expand(&p).unwrap();
        let total = e.captured_probability();
        let energy = e.mean_energy() / total;
        let (lz, lz2) = lz_moments(&e);
        let l = angular_momentum_moments(&p, &d.units);
        let expect_e = p.mean_energy(&d.units);
        println!(
            "x0={x0}: states={} sum={total:.9} E={energy:.3}/{expect_e:.3} Lz={lz:.4}/{} Lz2={lz2:.2}/{:.2}",
            e.len(),
            l.mean,
            l.mean_sq
        );
        assert!(total >= 0.999);
        assert!((energy - expect_e).abs() < 0.01 * expect_e);
        assert!((lz - l.mean).abs() <= 0.005 * l.mean.abs().max(1.0));
        assert!((lz2 - l.mean_sq).abs() < 0.02 * l.mean_sq);
    }
}

#[test]
fn window_convergence() {
    let d = disk();
    let p = GaussianPacket2D::with_spread(0.3, -0.2, 40.0, 25.0, 0.06).unwrap();
    let w = d.default_window(&p);
    let e = d.coefficients(&p, &w).unwrap();
    let (a, b) = (*w.m.start(), *w.m.end());
    let mid = (a + b) / 2;
    let zc = 0.5 * (w.z_lo + w.z_hi);
    let wide = CircWindow {
        m: (mid - 2 * (mid - a))..=(mid + 2 * (b - mid)),
        z_lo: (zc - 2.0 * (zc - w.z_lo)).max(0.0),
        z_hi: zc + 2.0 * (w.z_hi - zc),
    };
    let f = d.coefficients(&p, &wide).unwrap();
    assert!((e.captured_probability() - f.captured_probability()).abs() < 1e-6);
}

#[test]
fn half_disk_packet() {
    let h = disk().half_circle();
    let p = GaussianPacket2D::with_spread(0.2, 0.45, 30.0, -20.0, 0.05).unwrap();
    let e = h.expand(&p).unwrap();
    assert!(e.warnings().is_empty());
    assert!(e.captured_probability() > 1.0 - 1e-8, "{}", e.captured_probability());
    let expect = p.mean_energy(&h.disk().units);
    assert!((e.mean_energy() - expect).abs() < 1e-3 * expect);
}

#[test]
fn wkb_matches_bessel_energies() {
    let d = disk();
    for m in [0i32, 5, 20] {
        let pot = Potential1D::centrifugal(m as u32, 1.0, d.units).unwrap();
        let levels = wkb_energies(&pot, 30).unwrap();
        for n_r in 5..=30u32 {
            let exact = d.state(m, n_r).unwrap().energy;
            let closed = d.wkb_energy(m, n_r).unwrap();
            let generic = levels[n_r as usize];
            assert!((closed - exact).abs() < 1e-3 * exact, "m={m} n_r={n_r}");
            assert!((generic - closed).abs() < 1e-6 * closed, "m={m} n_r={n_r}");
        }
    }
}

#[test]
fn disk_orbit_rows() {
    let expect: &[(u32, u32, &str, &str)] = &[
        (2, 1, "4.00", "0.00"),
        (3, 1, "5.20", "0.50"),
        (4, 1, "5.66", "0.71"),
        (0, 1, "6.28", "1.00"),
        (4, 2, "8.00", "0.00"),
        (5, 2, "9.51", "0.31"),
        (6, 2, "10.39", "0.50"),
        (7, 2, "10.95", "0.62"),
        (0, 2, "12.57", "1.00"),
        (6, 3, "12.00", "0.00"),
        (7, 3, "13.65", "0.22"),
        (8, 3, "14.78", "0.38"),
        (9, 3, "15.59", "0.50"),
        (10, 3, "16.18", "0.59"),
        // cos(3π/11) = 0.65486
        (11, 3, "16.63", "0.65"),
        (12, 3, "16.97", "0.71"),
        (13, 3, "17.24", "0.75"),
        (0, 3, "18.85", "1.00"),
    ];
    let orbits = closed_orbits(20.0);
    for &(p, q, len, rmin) in expect {
        let o = orbits.iter().find(|o| o.p == p && o.q == q).unwrap();
        let Launch::ClosestApproach(r) = o.launch else {
            unreachable!()
        };
        assert_eq!(format!("{:.2}", o.length), len, "({p},{q})");
        assert_eq!(format!("{r:.2}"), rmin, "({p},{q})");
    }
    let first = orbits.iter().find(|o| o.p == 2 && o.q == 1).unwrap();
    let shown: Vec<String> = first.recurrences.iter().map(|t| format!("{t:.2}")).collect();
    assert_eq!(shown, ["4.00", "8.00", "12.00", "16.00"]);
    let limit = orbits.iter().find(|o| o.p == 0 && o.q == 1).unwrap();
    let shown: Vec<String> = limit.recurrences.iter().map(|t| format!("{t:.2}")).collect();
    assert_eq!(shown, ["6.28", "12.57", "18.85"]);
}

#[test]
fn no_exact_revival() {
    let d = disk();
    let p = GaussianPacket2D::with_spread(0.31, 0.17, 55.0, 80.0, 0.05).unwrap();
    let e = d.expand(&p).unwrap();
    let tau = d.tau(p.momentum());
    let total = e.captured_probability();
    let times = qbilliard::wavepacket::uniform_times(tau, 50.0 * tau, 20001);
    let a = autocorrelation(&e, &times).unwrap();
    let max = a.magnitudes_sq.iter().copied().fold(0.0, f64::max);
    println!("max |A|^2 over [tau, 50 tau] = {max}");
    assert!(max < total * total - 1e-3);
}
