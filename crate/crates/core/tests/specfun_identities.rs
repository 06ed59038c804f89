use meanvalue::quadrature::gauss_legendre_on;
use meanvalue::specfun::{bessel_i, bessel_j, bessel_j_zero, Order, ZeroIndex};

fn z_grid() -> Vec<f64> {
    (1..=500).map(|k| k as f64 * 0.1).collect()
}

/// Orders 1/2, 1, ..., 9/2 as multiples of one half.
fn orders() -> impl Iterator<Item = u32> {
    1..=9
}

#[test]
fn recurrence_modified() {
    for k in orders().filter(|&k| k >= 2) {
        let nu = k as f64 / 2.0;
        for z in z_grid() {
            let up = bessel_i(Order::half(k + 2), z).unwrap();
            let mid = bessel_i(Order::half(k), z).unwrap();
            let down = bessel_i(Order::half(k - 2), z).unwrap();
            let terms = [z * up, 2.0 * nu * mid, z * down];
            let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
            let res = (terms[0] + terms[1] - terms[2]).abs();
            assert!(
                res <= 1e-10 * scale,
                "nu={nu} z={z} res={res:e} scale={scale:e}"
            );
        }
    }
}

#[test]
fn recurrence_helmholtz() {
    for k in orders().filter(|&k| k >= 2) {
        let nu = k as f64 / 2.0;
        for z in z_grid() {
            let up = bessel_j(Order::half(k + 2), z).unwrap();
            let mid = bessel_j(Order::half(k), z).unwrap();
            let down = bessel_j(Order::half(k - 2), z).unwrap();
            let terms = [z * up, 2.0 * nu * mid, z * down];
            let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
            let res = (terms[0] - terms[1] + terms[2]).abs();
            assert!(res <= 1e-10 * scale, "nu={nu} z={z} res={res:e}");
        }
    }
}

#[test]
fn recurrences_at_order_one_half() {
    // nu = 1/2 needs J_{-1/2} = sqrt(2/(pi z)) cos z and I_{-1/2} = sqrt(2/(pi z)) cosh z.
    let nu = 0.5;
    for z in z_grid().into_iter().filter(|&z| z <= 50.0) {
        let c = (2.0 / (std::f64::consts::PI * z)).sqrt();
        let terms = [
            z * bessel_j(Order::half(3), z).unwrap(),
            2.0 * nu * bessel_j(Order::half(1), z).unwrap(),
            z * c * z.cos(),
        ];
        let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        assert!((terms[0] - terms[1] + terms[2]).abs() <= 1e-10 * scale);

        let terms = [
            z * bessel_i(Order::half(3), z).unwrap(),
            2.0 * nu * bessel_i(Order::half(1), z).unwrap(),
            z * c * z.cosh(),
        ];
        let scale = terms.iter().fold(0.0f64, |a, t| a.max(t.abs()));
        assert!((terms[0] + terms[1] - terms[2]).abs() <= 1e-10 * scale);
    }
}

#[test]
fn derivative_identities() {
    let h = 1e-5;
    for k in orders() {
        let nu = k as f64 / 2.0;
        for z in (1..=50).map(|i| i as f64) {
            let gi = |x: f64| x.powf(-nu) * bessel_i(Order::half(k), x).unwrap();
            let fd = (gi(z + h) - gi(z - h)) / (2.0 * h);
            let exact = z.powf(-nu) * bessel_i(Order::half(k + 2), z).unwrap();
            assert!((fd - exact).abs() <= 1e-6 * exact.abs(), "I nu={nu} z={z}");

            let gj = |x: f64| x.powf(-nu) * bessel_j(Order::half(k), x).unwrap();
            let fd = (gj(z + h) - gj(z - h)) / (2.0 * h);
            let exact = -z.powf(-nu) * bessel_j(Order::half(k + 2), z).unwrap();
            assert!(
                (fd - exact).abs() <= 1e-6 * exact.abs(),
                "J nu={nu} z={z} fd={fd} exact={exact}"
            );
        }
    }
}

#[test]
fn integral_identity() {
    for k in 0..=3u32 {
        let nu = k as f64 / 2.0;
        for z in [1.0, 5.0, 10.0] {
            // Composite Gauss-Legendre on unit panels.
            let panels = (z as usize).max(1);
            let mut sum = 0.0;
            for p in 0..panels {
                let a = z * p as f64 / panels as f64;
                let b = z * (p + 1) as f64 / panels as f64;
                for (x, w) in gauss_legendre_on(30, a, b) {
                    sum += w * x.powf(1.0 + nu) * bessel_j(Order::half(k), x).unwrap();
                }
            }
            let exact = z.powf(1.0 + nu) * bessel_j(Order::half(k + 2), z).unwrap();
            assert!(
                (sum - exact).abs() <= 1e-8,
                "nu={nu} z={z} {sum} vs {exact}"
            );
        }
    }
}

#[test]
fn zeros_annihilate() {
    for k in 0..=9 {
        for n in 1..=5 {
            let nu = Order::half(k);
            let z = bessel_j_zero(ZeroIndex::new(nu, n).unwrap());
            assert!(bessel_j(nu, z).unwrap().abs() <= 1e-8, "k={k} n={n}");
        }
    }
}
