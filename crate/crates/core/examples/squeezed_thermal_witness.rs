//! Work as an entanglement witness on squeezed thermal states: the work
//! beats its value at the separability threshold exactly when the state is
//! PPT-entangled.

use gaussian_work::states::{classify, SqueezedThermalParams};
use gaussian_work::work::{witness, work_sep_symmetric, work_sts_closed, work_sts_separable, work_symmetric_closed};
use gaussian_work::Result;

fn main() -> Result<()> {
    let a = 3.0;
    println!("symmetric a = {a}, c_sep = {}", SqueezedThermalParams::c_sep(a, a));
    for lambda in [0.0, 1.0, 5.0] {
        let w_sep = work_sep_symmetric(a, lambda)?.value;
        println!("lambda = {lambda}: W_sep = {w_sep:.6}, W_max = {:.6}", (2.0 * a).ln());
        for c in [1.0, 2.0, 2.5, 2.8, 8.75f64.sqrt()] {
            let w = work_symmetric_closed(a, c, lambda)?.value;
            let ppt = classify(&SqueezedThermalParams::symmetric(a, c).build()?)?;
            println!("  c = {c:.4}  W = {w:.6}  witness: {:?}  PPT: {:?}", witness(w, w_sep), ppt.class);
        }
    }

    let (a, b) = (2.0, 3.0);
    let w_sep = work_sts_separable(a, b, 0.0)?.value;
    let c = 1.8;
    let w = work_sts_closed(a, b, c, 0.0)?.value;
    println!("STS a = {a}, b = {b}, c = {c}: W = {w:.6}, W_sep = {w_sep:.6}, {:?}", witness(w, w_sep));
    Ok(())
}
