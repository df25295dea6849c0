//! Work when Alice only learns her mode through her own measurement record,
//! and its relation to mutual informations.

use std::f64::consts::FRAC_PI_2;

use gaussian_work::quadrature::AngleQuadrature;
use gaussian_work::states::SqueezedThermalParams;
use gaussian_work::work::{
    homodyne_qp_work, renyi2_mutual_info, wehrl_mutual_info, work_one_measurement, work_two_measurements,
    work_two_measurements_avg,
};
use gaussian_work::{GaussianMeasurement, Result};

fn main() -> Result<()> {
    let sigma = SqueezedThermalParams::symmetric(3.0, 2.0).build()?;
    let het = GaussianMeasurement::heterodyne();
    let hom = GaussianMeasurement::homodyne;

    println!("W(1)   = {:.6}", work_one_measurement(&sigma, &het)?.value);
    println!("W(1,1) = {:.6} (ln 49/33 = {:.6})", work_two_measurements(&sigma, &het, &het)?.value, (49.0f64 / 33.0).ln());
    println!("Wehrl mutual information = {:.6}", wehrl_mutual_info(&sigma)?);

    for psi in [0.0, 0.5, 1.0, FRAC_PI_2] {
        let w = work_two_measurements(&sigma, &hom(0.0), &hom(psi))?.value;
        println!("W(0,0) at phi + theta = {psi:.3}: {w:.6}");
    }
    let avg = work_two_measurements_avg(&sigma, 0.0, 0.0, &AngleQuadrature::default())?;
    println!("W(0,0) averaged over both angles: {:.6}", avg.value);

    println!("Renyi-2 mutual information = {:.6}", renyi2_mutual_info(&sigma)?);
    println!("homodyne q then p on Bob's mode = {:.6}", homodyne_qp_work(&sigma)?);
    Ok(())
}
