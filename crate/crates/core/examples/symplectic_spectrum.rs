//! Symplectic spectra, physicality and partial transposition of a two-mode
//! squeezed thermal state.

use gaussian_work::states::SqueezedThermalParams;
use gaussian_work::Result;

fn main() -> Result<()> {
    let sigma = SqueezedThermalParams::symmetric(3.0, 2.0).build()?;
    println!("sigma =\n{}", sigma.entries());
    println!("symplectic eigenvalues: {:?}", sigma.symplectic_eigenvalues()?);
    println!("physical: {}", sigma.is_physical(1e-9));
    println!("Renyi-2 entropy: {:.6}", sigma.renyi2_entropy()?);

    let pt = sigma.partial_transpose(&[1])?;
    println!("after transposing mode b: {:?}", pt.symplectic_eigenvalues()?);

    let inv = sigma.invariants()?;
    println!("I1={} I2={} I3={} I4={:.3} Delta={}", inv.i1, inv.i2, inv.i3, inv.i4, inv.delta);

    let boundary = SqueezedThermalParams::symmetric(3.0, 8.75f64.sqrt()).build()?;
    println!("at c_max the state is pure: nu_min = {:.12}", boundary.min_symplectic_eigenvalue()?);
    Ok(())
}
