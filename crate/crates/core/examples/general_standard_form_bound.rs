//! Angle-averaged work of general standard-form states against the
//! separable bound at lambda = 3.

use gaussian_work::quadrature::AngleQuadrature;
use gaussian_work::states::{classify, SeparabilityClass, TwoModeStandardForm};
use gaussian_work::work::{separable_bound_branches, work_avg_angle, work_max_standard_form};
use gaussian_work::Result;

fn main() -> Result<()> {
    let quad = AngleQuadrature::default();
    let lambda = 3.0;
    for (a, b) in [(0.6, 0.7), (1.5, 2.0), (4.0, 4.0)] {
        let branches = separable_bound_branches(a, b, lambda, &quad)?;
        println!(
            "a = {a}, b = {b}: STS branch {:.6}, boundary branch {:.6}, W_max {:.6}",
            branches.sts,
            branches.prime,
            work_max_standard_form(a, b, lambda)?.value
        );
        let cp = TwoModeStandardForm::prime_boundary(a, b);
        for (c, d) in [(cp, 0.0), (0.3, -0.1), (0.9 * cp, -0.9 * cp)] {
            let Ok(sigma) = (TwoModeStandardForm { a, b, c, d }).build() else {
                continue;
            };
            let w = work_avg_angle(&sigma, lambda, &quad)?.value;
            let sep = classify(&sigma)?.class == SeparabilityClass::Separable;
            println!("   c = {c:+.4}, d = {d:+.4}: <W> = {w:.6} separable = {sep} below bound = {}", w <= branches.value() + 1e-9);
        }
    }
    Ok(())
}
