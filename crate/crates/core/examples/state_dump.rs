//! Tensor-product states and sparse operators on the labelled factor space,
//! then a CSV dump of the switch output.

use num_complex::Complex64;
use qswitch::hilbert::{self, level::*, Factor, SparseOperator, StateVector};
use qswitch::switch_model::{self, AmplitudeModel};

fn main() -> qswitch::Result<()> {
    // a bit flip on detA
    let one = Complex64::new(1.0, 0.0);
    let flip = SparseOperator::new(&[Factor::DetA], vec![(0, 1, one), (1, 0, one)])?;
    let s = StateVector::basis(&[(Factor::Path, A_BEFORE_B), (Factor::DetA, ABSENT)])?;
    let t = hilbert::apply(&flip, &s)?;
    println!("detA after flip: {:?}", t.amplitude(&[(Factor::Path, A_BEFORE_B), (Factor::DetA, PRESENT)])?);

    let out = switch_model::run_switch(&switch_model::basis_input(E2)?, &AmplitudeModel::ideal())?;
    println!("dimension {}", out.state.dim());
    out.state.write_csv(std::io::stdout().lock())?;
    Ok(())
}
