use fracprop::mittag_leffler::{ml, MLParams};
use num_complex::Complex64;

struct Row {
    alpha: f64,
    delta: f64,
    z: Complex64,
    e: Complex64,
    tol: f64,
}

fn fixture() -> Vec<Row> {
    let text = include_str!("fixtures/ml_reference.csv");
    text.lines()
        .skip(1)
        .map(|line| {
            let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
            Row {
                alpha: v[0],
                delta: v[1],
                z: Complex64::new(v[2], v[3]),
                e: Complex64::new(v[4], v[5]),
                tol: v[6],
            }
        })
        .collect()
}

#[test]
fn matches_high_precision_reference() {
    let mut worst = 0.0f64;
    for r in fixture() {
        let p = MLParams::new(r.alpha, r.delta).unwrap();
        let got = ml(p, r.z).unwrap();
        let err = (got - r.e).norm() / r.e.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(err);
        assert!(
            err <= r.tol,
            "E_({}, {})({}) = {got}, reference {}, rel {err:e}",
            r.alpha,
            r.delta,
            r.z,
            r.e
        );
    }
    assert!(worst < 1e-9);
}
