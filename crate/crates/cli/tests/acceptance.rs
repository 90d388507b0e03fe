//! Acceptance suite. Runs every criterion, prints one line each and exits
//! non-zero if any failed. Pass criterion numbers as arguments to run a subset.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qbilliard::circular::{closed_orbits, lz_moments, CircBilliard};
use qbilliard::polygonal::{square_closed_orbits, IsoscelesBilliard, Launch, RectBilliard, TriangleBilliard};
use qbilliard::special::{asymptotic_zero_seed, bessel_j, bessel_zero, BesselZeroTable};
use qbilliard::wavepacket::{angular_momentum_moments, uniform_times, DEFAULT_PEAK_THRESHOLD};
use qbilliard::well1d::Well1D;
use qbilliard::wkb::{classical_period, period_from_spectrum, wkb_energies, Potential1D};
use qbilliard::{autocorrelation, detect_peaks, Expansion, GaussianPacket1D, GaussianPacket2D, PhysicalUnits};
use qbilliard_cli::commands::scan_wall_proximity;
use qbilliard_cli::scenario::ScanSpec;

type Outcome = Result<String, String>;

fn units() -> PhysicalUnits {
    PhysicalUnits::default()
}

fn abs2_at(exp: &Expansion, t: f64) -> f64 {
    autocorrelation(exp, &[t]).unwrap().magnitudes_sq[0]
}

fn revival_gap(exp: &Expansion, t: f64) -> f64 {
    let c = exp.captured_probability();
    (abs2_at(exp, t) - c * c).abs()
}

fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}

/// Square orbits against the reference table: (θ, periods, p, q, list continues).
fn criterion_1() -> Outcome {
    let table: &[(&str, &[&str], u32, u32, bool)] = &[
        ("0.00", &["1.00", "2.00", "3.00"], 1, 0, true),
        ("6.34", &["9.06"], 9, 1, false),
        ("7.13", &["8.06"], 8, 1, false),
        ("8.13", &["7.07"], 7, 1, false),
        ("9.46", &["6.08"], 6, 1, false),
        ("11.31", &["5.10"], 5, 1, false),
        ("12.53", &["9.22"], 9, 2, false),
        ("14.04", &["4.12", "8.25"], 4, 1, false),
        ("15.95", &["7.28"], 7, 2, false),
        ("18.43", &["3.16", "6.32", "9.49"], 3, 1, false),
        ("20.56", &["8.54"], 8, 3, false),
        ("21.80", &["5.38"], 5, 2, false),
        ("23.20", &["7.62"], 7, 3, false),
        ("23.96", &["9.85"], 9, 4, false),
        ("26.57", &["2.24", "4.47", "6.71", "8.94"], 2, 1, false),
        ("29.74", &["8.06"], 5, 3, false),
        ("30.96", &["5.83"], 7, 4, false),
        ("32.00", &["9.43"], 8, 5, false),
        ("33.69", &["3.61", "7.21"], 3, 2, false),
        ("35.54", &["8.60"], 7, 5, false),
        ("36.87", &["5.00", "10.00"], 4, 3, false),
        ("38.66", &["6.40"], 5, 4, false),
        ("39.81", &["7.81"], 6, 5, false),
        ("40.60", &["9.22"], 7, 6, false),
        ("45.00", &["1.41", "2.83", "4.24"], 1, 1, true),
    ];
    let orbits = square_closed_orbits(10.0);
    if orbits.len() != table.len() {
        return Err(format!("{} rows, expected {}", orbits.len(), table.len()));
    }
    let mut bad = Vec::new();
    for &(theta, periods, p, q, open) in table {
        let Some(o) = orbits.iter().find(|o| o.p == p && o.q == q) else {
            bad.push(format!("({p},{q}) missing"));
            continue;
        };
        let angle = fmt2(o.angle_degrees().unwrap_or(f64::NAN));
        let shown: Vec<String> = o.recurrences.iter().map(|&t| fmt2(t)).collect();
        let want: Vec<String> = periods.iter().map(|s| s.to_string()).collect();
        let periods_match = if open { shown.starts_with(&want) } else { shown == want };
        if angle != theta {
            bad.push(format!("({p},{q}) θ {angle} vs printed {theta}"));
        }
        if !periods_match {
            bad.push(format!("({p},{q}) T/τ {shown:?} vs printed {periods:?}"));
        }
    }
    if bad.is_empty() {
        Ok("25 rows match the reference square table".into())
    } else {
        Err(bad.join("; "))
    }
}

/// Circular orbits against the reference table: (p, q, lengths, R_min/R); p = 0 is the limit row.
fn criterion_2() -> Outcome {
    let table: &[(u32, u32, &[&str], &str)] = &[
        (2, 1, &["4.00", "8.00", "12.00", "16.00"], "0.00"),
        (3, 1, &["5.20", "10.39"], "0.50"),
        (4, 1, &["5.66", "11.31"], "0.71"),
        (0, 1, &["6.28", "12.57"], "1.00"),
        (4, 2, &["8.00", "16.00"], "0.00"),
        (5, 2, &["9.51"], "0.31"),
        (6, 2, &["10.39"], "0.50"),
        (7, 2, &["10.95"], "0.62"),
        (0, 2, &["12.57"], "1.00"),
        (6, 3, &["12.00"], "0.00"),
        (7, 3, &["13.65"], "0.22"),
        (8, 3, &["14.78"], "0.38"),
        (9, 3, &["15.59"], "0.50"),
        (10, 3, &["16.18"], "0.59"),
        (11, 3, &["16.63"], "0.66"),
        (12, 3, &["16.97"], "0.71"),
        (13, 3, &["17.24"], "0.75"),
        (0, 3, &["18.85"], "1.00"),
    ];
    let orbits = closed_orbits(20.0);
    let mut bad = Vec::new();
    for &(p, q, lengths, rmin) in table {
        let Some(o) = orbits.iter().find(|o| o.p == p && o.q == q) else {
            bad.push(format!("({p},{q}) missing"));
            continue;
        };
        let Launch::ClosestApproach(r) = o.launch else {
            bad.push(format!("({p},{q}) has no closest approach"));
            continue;
        };
        let shown: Vec<String> = o.recurrences.iter().map(|&t| fmt2(t)).collect();
        let want: Vec<String> = lengths.iter().map(|s| s.to_string()).collect();
        if fmt2(o.length) != lengths[0] || !shown.starts_with(&want) {
            bad.push(format!("({p},{q}) L/R {shown:?} vs {lengths:?}"));
        }
        if fmt2(r) != rmin {
            bad.push(format!("({p},{q}) R_min/R {} ({r:.5}) vs printed {rmin}", fmt2(r)));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} rows match the reference disk table", table.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn interior_2d(
    rng: &mut ChaCha8Rng,
    dx0: std::ops::Range<f64>,
    accept: impl Fn(&GaussianPacket2D) -> bool,
) -> GaussianPacket2D {
    loop {
        let dx0 = rng.gen_range(dx0.clone());
        let p = GaussianPacket2D::launched(
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..300.0),
            rng.gen_range(0.0..2.0 * PI),
            dx0,
        )
        .unwrap();
        if accept(&p) {
            return p;
        }
    }
}

fn triangle_packet(rng: &mut ChaCha8Rng, t: &TriangleBilliard) -> GaussianPacket2D {
    loop {
        let dx0 = rng.gen_range(0.015..0.025);
        let p = GaussianPacket2D::launched(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(0.0..t.height()),
            rng.gen_range(0.0..60.0),
            rng.gen_range(0.0..2.0 * PI),
            dx0,
        )
        .unwrap();
        if t.margin(&p) >= 7.0 * p.b {
            return p;
        }
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = [0.0f64; 5];

    let well = Well1D::standard(units());
    for _ in 0..10 {
        let b = rng.gen_range(0.02..0.045) * 2f64.sqrt();
        let x0 = 7.0 * b + rng.gen_range(0.0..1.0) * (1.0 - 14.0 * b);
        let p = GaussianPacket1D::new(x0, rng.gen_range(-300.0..300.0), b).unwrap();
        worst[0] = worst[0].max(revival_gap(&well.expand(&p).unwrap(), well.revival_time()));
    }

    let sq = RectBilliard::square(units());
    for _ in 0..10 {
        let p = interior_2d(&mut rng, 0.03..0.07, |p| sq_margin(p) > 7.0 * p.b);
        worst[1] = worst[1].max(revival_gap(&sq.expand(&p).unwrap(), sq.axis_revival_times().0));
    }

    let iso = IsoscelesBilliard::standard(units());
    for _ in 0..10 {
        // the inradius (0.29a) is too small for a 7b margin; keep 4 spreads
        let p = interior_2d(&mut rng, 0.02..0.05, |p| iso.margin(p) > 4.0 * p.spread());
        worst[2] = worst[2].max(revival_gap(&iso.expand(&p).unwrap(), iso.revival_time()));
    }

    let tri = TriangleBilliard::standard(units());
    for _ in 0..10 {
        let p = triangle_packet(&mut rng, &tri);
        worst[3] = worst[3].max(revival_gap(&tri.expand(&p).unwrap(), tri.revival_time()));
    }

    let half = tri.fold_306090();
    for _ in 0..10 {
        let p = loop {
            let mut p = triangle_packet(&mut rng, &tri);
            p.x0 = p.x0.abs();
            if half.margin(&p) >= 7.0 * p.b {
                break p;
            }
        };
        worst[4] = worst[4].max(revival_gap(&half.expand(&p).unwrap(), half.revival_time()));
    }

    let detail = format!(
        "max ||A(T_rev)|^2 - (sum|a|^2)^2|: well {:.1e}, square {:.1e}, 45-45-90 {:.1e}, triangle {:.1e}, 30-60-90 {:.1e}",
        worst[0], worst[1], worst[2], worst[3], worst[4]
    );
    if worst.iter().all(|&w| w < 1e-10) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sq_margin(p: &GaussianPacket2D) -> f64 {
    p.x0.min(1.0 - p.x0).min(p.y0).min(1.0 - p.y0)
}

fn criterion_4() -> Outcome {
    let well = Well1D::standard(units());
    let t_rev = well.revival_time();
    let expand = |x0: f64| well.expand(&GaussianPacket1D::with_spread(x0, 0.0, 0.05).unwrap()).unwrap();

    let half = expand(0.5);
    let eighths: Vec<f64> = (1..=7).map(|k| abs2_at(&half, k as f64 * t_rev / 8.0)).collect();
    let third = expand(2.0 / 3.0);
    let thirds: Vec<f64> = (1..=2).map(|k| abs2_at(&third, k as f64 * t_rev / 3.0)).collect();
    let off = expand(0.8);
    let partial = [abs2_at(&off, 0.4 * t_rev), abs2_at(&off, 0.6 * t_rev)];

    let dev = eighths.iter().chain(&thirds).map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    let detail = format!(
        "max |1 - |A|^2| at kT/8, kT/3 = {dev:.1e}; x0=0.8a: {:.4}, {:.4}",
        partial[0], partial[1]
    );
    if dev <= 1e-6 && partial.iter().all(|&v| v > 0.5 && v < 0.999) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Roundoff allowance for "monotone": the captured norm wiggles at ~1e-14
/// while the packet is still far inside.
const MONOTONE_SLACK: f64 = 1e-12;

fn criterion_5() -> Outcome {
    let well = Well1D::standard(units());
    let spec = ScanSpec {
        x0_min: 0.5,
        x0_max: 1.2,
        steps: 141,
        widths: vec![0.05, 0.1],
        p0: 0.0,
        states: 40,
    };
    let rows = scan_wall_proximity(&well, &spec).map_err(|e| e.to_string())?;
    let mut departure = Vec::new();
    for dx0 in [0.05, 0.1] {
        let curve: Vec<_> = rows.iter().filter(|r| r.dx0 == dx0).collect();
        if let Some(w) = curve.windows(2).find(|w| w[1].norm > w[0].norm + MONOTONE_SLACK) {
            return Err(format!("Δx0={dx0}: norm rises from {} to {} at x0={}", w[0].norm, w[1].norm, w[1].x0));
        }
        let x = curve.iter().find(|r| r.norm < 1.0 - 1e-3).map(|r| r.x0).unwrap_or(f64::INFINITY);
        departure.push(x);
    }
    let at = |x0: f64| {
        rows.iter()
            .find(|r| r.dx0 == 0.05 && (r.x0 - x0).abs() < 1e-9)
            .map(|r| r.energy)
            .unwrap()
    };
    let growth = at(0.95) / at(0.5) - 1.0;
    let detail = format!(
        "norm below 1-1e-3 from x0={:.3} (Δx0=0.05), x0={:.3} (Δx0=0.1); energy growth at 0.95: {:.0}%",
        departure[0],
        departure[1],
        100.0 * growth
    );
    if departure[1] < departure[0] && growth > 0.1 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_6() -> Outcome {
    let well = Well1D::standard(units());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for _ in 0..100 {
        let b = rng.gen_range(0.02..0.045) * 2f64.sqrt();
        let x0 = 7.0 * b + rng.gen_range(0.0..1.0) * (1.0 - 14.0 * b);
        let p = GaussianPacket1D::new(x0, rng.gen_range(-500.0 * PI..500.0 * PI), b).unwrap();
        for n in well.n_window(&p).range() {
            let exact = well.exact_coefficient(&p, n).map_err(|e| e.to_string())?;
            worst = worst.max((well.closed_form_coefficient(&p, n) - exact).norm());
            count += 1;
        }
    }
    let detail = format!("{count} coefficients, max deviation {worst:.1e}");
    if worst < 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_7() -> Outcome {
    let sq = RectBilliard::square(units());
    let p0 = 400.0 * PI;
    let tau = sq.tau(p0);
    let cases = [(0.0, 1.0, 0.0), (18.43, 3.0, 1.0), (26.57, 2.0, 1.0), (33.69, 3.0, 2.0), (45.0, 1.0, 1.0)];
    let mut worst = 0.0f64;
    for (theta, p, q) in cases {
        let expect = f64::hypot(p, q);
        for (x0, y0) in [(0.5, 0.5), (0.35, 0.6)] {
            let packet = GaussianPacket2D::launched(x0, y0, p0, f64::to_radians(theta), 0.05).unwrap();
            let exp = sq.expand(&packet).map_err(|e| e.to_string())?;
            let t_end = 1.2 * expect * tau;
            let samples = (600.0 * t_end / tau) as usize;
            let series = autocorrelation(&exp, &uniform_times(0.0, t_end, samples)).unwrap();
            let first = detect_peaks(&series, DEFAULT_PEAK_THRESHOLD)
                .first()
                .map(|pk| pk.time / tau)
                .ok_or_else(|| format!("θ={theta} at ({x0},{y0}): no peak"))?;
            let rel = (first / expect - 1.0).abs();
            if rel > 0.02 {
                return Err(format!("θ={theta} at ({x0},{y0}): first peak {first:.3}τ, expected {expect:.3}τ"));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!("10 packets, max relative offset of first peak {:.2}%", 100.0 * worst))
}

fn criterion_8() -> Outcome {
    let d = CircBilliard::standard(units());
    let mut lines = Vec::new();
    let mut ok = true;
    for x0 in [-0.5, 0.0, 0.7] {
        let p = GaussianPacket2D::with_spread(x0, 0.0, 0.0, 100.0, 0.05).unwrap();
        let e = d.expand(&p).map_err(|e| e.to_string())?;
        let total = e.captured_probability();
        let energy = e.mean_energy() / total;
        let expect_e = p.mean_energy(&d.units);
        let (lz, _) = lz_moments(&e);
        let expect_l = angular_momentum_moments(&p, &d.units).mean;
        let de = (energy - expect_e).abs() / expect_e;
        let dl = (lz / total - expect_l).abs() / expect_l.abs().max(d.units.hbar);
        ok &= total >= 0.999 && de < 0.01 && dl < 0.01;
        lines.push(format!("x0={x0}: sum {total:.6}, dE {de:.1e}, Lz {lz:.3}/{expect_l}"));
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

/// Disk recurrence peaks are 0.07 to 0.2 high, below the default detection threshold.
const DISK_PEAK_THRESHOLD: f64 = 0.02;

fn criterion_9() -> Outcome {
    let d = CircBilliard::standard(units());
    let cases = [(0.0, 2.0, 1.0), (0.5, 3.0, 1.0), ((PI / 4.0).cos(), 4.0, 1.0)];
    let mut lines = Vec::new();
    let mut ok = true;
    for (x0, p, q) in cases {
        let packet = GaussianPacket2D::with_spread(x0, 0.0, 0.0, 100.0, 0.05).unwrap();
        let exp = d.expand(&packet).map_err(|e| e.to_string())?;
        let tau = d.tau(packet.momentum());
        let expect = 2.0 * p * (PI * q / p).sin();
        let t_end = 1.5 * expect * tau;
        let series = autocorrelation(&exp, &uniform_times(0.0, t_end, 3001)).unwrap();
        let found = detect_peaks(&series, DISK_PEAK_THRESHOLD)
            .into_iter()
            .map(|pk| (pk.time / tau, pk.magnitude))
            .find(|(t, _)| (t / expect - 1.0).abs() < 0.05);
        match found {
            Some((t, h)) => lines.push(format!("({p},{q}) {t:.3}τ vs {expect:.3}τ, |A|^2 {h:.3}")),
            None => {
                ok = false;
                lines.push(format!("({p},{q}) no peak near {expect:.3}τ"));
            }
        }
    }
    if ok {
        Ok(lines.join("; "))
    } else {
        Err(lines.join("; "))
    }
}

fn criterion_10() -> Outcome {
    let u = units();
    let omega = 1.3;
    let harmonic = Potential1D::harmonic(omega, u).unwrap();
    let levels = wkb_energies(&harmonic, 30).map_err(|e| e.to_string())?;
    let dev = levels
        .iter()
        .enumerate()
        .map(|(n, e)| (e - (n as f64 + 0.5) * omega).abs())
        .fold(0.0, f64::max);
    if dev >= 1e-10 {
        return Err(format!("harmonic levels off by {dev:.1e}"));
    }

    let mut period_dev = Vec::new();
    for (name, v) in [
        ("harmonic", harmonic),
        ("quartic", Potential1D::quartic(1.0, u).unwrap()),
        ("well", Potential1D::infinite_well(1.0, u).unwrap()),
    ] {
        let es = wkb_energies(&v, 30).map_err(|e| e.to_string())?;
        let mut worst = 0.0f64;
        for n0 in [5usize, 10, 20] {
            let a = period_from_spectrum(&es, n0, u.hbar).map_err(|e| e.to_string())?;
            let b = classical_period(&v, es[n0]).map_err(|e| e.to_string())?;
            worst = worst.max((a - b).abs() / b);
        }
        if worst >= 5e-3 {
            return Err(format!("{name}: period from spectrum off by {:.2}%", 100.0 * worst));
        }
        period_dev.push(format!("{name} {worst:.1e}"));
    }

    let d = CircBilliard::standard(u);
    let mut circ = 0.0f64;
    for m in [0i32, 5, 20] {
        let pot = Potential1D::centrifugal(m as u32, 1.0, u).unwrap();
        let generic = wkb_energies(&pot, 40).map_err(|e| e.to_string())?;
        for n_r in 5..=40u32 {
            let exact = d.state(m, n_r).map_err(|e| e.to_string())?.energy;
            let closed = d.wkb_energy(m, n_r).map_err(|e| e.to_string())?;
            circ = circ.max((closed - exact).abs() / exact);
            circ = circ.max((generic[n_r as usize] - exact).abs() / exact);
        }
    }
    let detail = format!(
        "harmonic levels {dev:.1e}; period deviations {}; circular WKB {circ:.1e}",
        period_dev.join(", ")
    );
    if circ < 1e-3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_11() -> Outcome {
    let table = BesselZeroTable::build(51, 51).map_err(|e| e.to_string())?;
    let mut worst_j = 0.0f64;
    for m in 0..=50u32 {
        for n in 0..=50u32 {
            let z = table.get(m, n).unwrap();
            worst_j = worst_j.max(bessel_j(m, z).map_err(|e| e.to_string())?.abs());
            let right = table.get(m + 1, n).unwrap();
            if !(z < right && right < table.get(m, n + 1).unwrap()) {
                return Err(format!("interlacing fails at m={m} n_r={n}"));
            }
        }
    }
    if worst_j >= 1e-12 {
        return Err(format!("max |J_m(z)| = {worst_j:.1e}"));
    }
    // seed bound applies to m = 0, 1 (larger orders carry an O(m²/β) McMahon term)
    let mut seed = 0.0f64;
    for m in 0..=1 {
        for n in 5..=50 {
            seed = seed.max((asymptotic_zero_seed(m, n) - bessel_zero(m, n).unwrap()).abs());
        }
    }
    let detail = format!("max |J_m(z)| {worst_j:.1e}, interlacing holds, seed error {seed:.1e}");
    if seed < 0.05 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_12() -> Outcome {
    let d = CircBilliard::standard(units());
    let p = GaussianPacket2D::with_spread(0.31, 0.17, 55.0, 80.0, 0.05).unwrap();
    let e = d.expand(&p).map_err(|e| e.to_string())?;
    let tau = d.tau(p.momentum());
    let total = e.captured_probability();
    // the t = 0 lobe is excluded by starting at τ
    let series = autocorrelation(&e, &uniform_times(tau, 50.0 * tau, 20001)).unwrap();
    let max = series.magnitudes_sq.iter().copied().fold(0.0, f64::max);
    let detail = format!("max |A|^2 over [τ, 50τ] = {max:.4}, (sum|a|^2)^2 = {:.6}", total * total);
    if max < total * total - 1e-3 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct Criterion {
    number: u32,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let all = [
        Criterion { number: 1, limit: secs(1), run: criterion_1 },
        Criterion { number: 2, limit: secs(1), run: criterion_2 },
        Criterion { number: 3, limit: secs(60), run: criterion_3 },
        Criterion { number: 4, limit: secs(30), run: criterion_4 },
        Criterion { number: 5, limit: secs(60), run: criterion_5 },
        Criterion { number: 6, limit: secs(120), run: criterion_6 },
        Criterion { number: 7, limit: secs(300), run: criterion_7 },
        Criterion { number: 8, limit: secs(600), run: criterion_8 },
        Criterion { number: 9, limit: secs(600), run: criterion_9 },
        Criterion { number: 10, limit: secs(30), run: criterion_10 },
        Criterion { number: 11, limit: secs(10), run: criterion_11 },
        Criterion { number: 12, limit: secs(600), run: criterion_12 },
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = Vec::new();
    for c in all.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.number)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} limit", c.limit)),
            Err(d) => (false, d),
        };
        println!(
            "criterion {:>2}: {} [{:.2}s] {detail}",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !pass {
            failed.push(c.number);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
