//! Acceptance gate: the twelve criteria the crate must satisfy, each
//! printed as one PASS/FAIL line with its measured residual, pinned
//! tolerance, and runtime. Run with `cargo test --test acceptance --
//! --nocapture` to see the lines on success as well.

use pemc::verify::{run_battery, BatteryConfig, CheckResult};

/// Criterion list: battery check name, one-line description, and an
/// optional wall-clock budget in seconds.
const CRITERIA: [(&str, &str, Option<f64>); 12] = [
    (
        "casimir_limit",
        "like plates reproduce -pi^2/240 by all three routes, rel 1e-10",
        Some(1.0),
    ),
    (
        "boyer_ratio",
        "opposite ideal plates give f(pi/2)/f(0) = -7/8 within 1e-12",
        None,
    ),
    (
        "zero_force_angle",
        "bisection matches the closed-form zero within 1e-10; ratio to pi/4 in 0.96 +/- 0.005",
        None,
    ),
    (
        "sum_rule",
        "quarter-period integral of f vanishes within 1e-10 of |f(0)|*pi/2",
        None,
    ),
    (
        "three_way_agreement",
        "quadrature, series, and quartic routes agree to 1e-10 at 50 angles",
        Some(10.0),
    ),
    (
        "duality_and_periodicity",
        "common angle shifts leave the force bit-identical; parity/period residual <= 1e-12",
        None,
    ),
    (
        "parameterization_consistency",
        "M and theta parameterizations agree entrywise to 1e-12; ideal limits exact",
        None,
    ),
    (
        "resolvent_oracle",
        "closed-form resolvent matches I minus the Neumann sum to 1e-12 for |b| <= 0.8",
        None,
    ),
    (
        "fresnel_pemc_limit",
        "scaled bi-isotropic Fresnel matrices converge to the ideal-plate matrix within 10/s",
        None,
    ),
    (
        "angular_dyadics",
        "closed-form azimuthal dyadic integrals match 512-point quadrature to 1e-10",
        None,
    ),
    (
        "curl_equality",
        "magnetic and electric stress parts agree to 1e-11 over the (kappa*L, delta) grid",
        None,
    ),
    (
        "si_sanity",
        "PEC-PEC pressure at 1 um is -1.30e-3 N/m^2 within 0.5%",
        None,
    ),
];

#[test]
fn acceptance_criteria() {
    let results = run_battery(&BatteryConfig::default());
    let find = |name: &str| -> &CheckResult {
        results
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("battery is missing check {name}"))
    };

    let mut all_passed = true;
    for (index, (name, description, budget)) in CRITERIA.iter().enumerate() {
        let check = find(name);
        let mut passed = check.passed;
        let timing = match budget {
            Some(limit) => {
                passed &= check.seconds < *limit;
                format!("{:.3}s / budget {:.0}s", check.seconds, limit)
            }
            None => format!("{:.3}s", check.seconds),
        };
        println!(
            "{} criterion {:02} [{}] measured {:.3e} vs tolerance {:.1e} ({}) - {}",
            if passed { "PASS" } else { "FAIL" },
            index + 1,
            name,
            check.measured,
            check.tolerance,
            timing,
            description,
        );
        if !passed {
            println!("      detail: {}", check.detail);
        }
        all_passed &= passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}
