use fracprop::harness::{log_ladder, run_bound, ExperimentConfig};
use fracprop::spectral::{counting_function, exponent_fit, CatalogRow, SpectralProfile};

#[test]
fn discrete_count_is_strict() {
    let p = SpectralProfile::discrete(vec![0.0, 1.0, 1.0, 2.5]).unwrap();
    assert_eq!(p.count(1.0).unwrap(), 0.0);
    assert_eq!(p.count_through(1.0).unwrap(), 2.0);
    assert_eq!(p.count(3.0).unwrap(), 3.0);
    assert_eq!(counting_function(&p, 2.5).unwrap(), 2.0);
}

#[test]
fn torus_counts_match_brute_force() {
    let p = SpectralProfile::torus(2, 40).unwrap();
    for s in [0.5, 1.0, 2.0, 10.0, 50.0, 99.5] {
        let mut n = 0;
        for k in -40i64..=40 {
            for l in -40i64..=40 {
                let e = (k * k + l * l) as f64;
                if e > 0.0 && e < s {
                    n += 1;
                }
            }
        }
        assert_eq!(p.count(s).unwrap(), n as f64, "s = {s}");
    }
}

#[test]
fn vladimirov_steps_and_exponent() {
    let p = SpectralProfile::vladimirov(3, 0.5).unwrap();
    // ball volume 3^floor(log_3 s^2)
    assert_eq!(p.count(3f64.sqrt()).unwrap(), 3.0);
    assert_eq!(p.count(2.9).unwrap(), 3.0);
    assert_eq!(p.count(5.2).unwrap(), 27.0);
    let fit = exponent_fit(&p, 1e1, 1e5, 60).unwrap();
    assert!((fit - 2.0).abs() < 0.05, "fit {fit}");
    assert!(SpectralProfile::vladimirov(4, 1.0).is_err());
}

#[test]
fn profiles_round_trip_through_csv() {
    for p in [
        SpectralProfile::discrete(vec![0.5, 3.0]).unwrap(),
        SpectralProfile::power_law(1.5, 2.0).unwrap(),
        SpectralProfile::vladimirov(5, 2.0).unwrap(),
        SpectralProfile::torus(1, 64).unwrap(),
    ] {
        assert_eq!(SpectralProfile::from_csv(&p.to_csv()).unwrap(), p);
    }
    assert!(SpectralProfile::from_csv("torus,3,8").is_err());
}

#[test]
fn catalog_names_parse_back() {
    for row in CatalogRow::defaults() {
        assert_eq!(row.to_string().parse::<CatalogRow>().unwrap(), row);
    }
}

#[test]
fn bound_trajectory_follows_power_law() {
    let times = log_ladder(0.5, 200.0, 12).unwrap();
    let traj = run_bound(0.7, 1.0, 3.0, &times).unwrap();
    traj.check().unwrap();
    assert!((traj.slope + 0.7 / 3.0).abs() < 1e-9);
}

#[test]
fn config_rejects_unknown_keys() {
    let cfg = ExperimentConfig::parse("experiment = table4\nalpha = 0.5\nqq = 3\n").unwrap();
    assert!(cfg.expect_keys(&["alpha", "p", "q"]).is_err());
    assert_eq!(cfg.get("alpha", 1.0).unwrap(), 0.5);
    assert!(cfg.get::<f64>("qq", 0.0).is_ok());
}
