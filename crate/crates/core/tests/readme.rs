//! Keeps the README's library example honest.

use quadric_core::goeven::eq_go_even;
use quadric_core::gysin::boundary_even_to_odd;
use quadric_core::{make_ring, Polynomial, RingFamily, VarKey};

#[test]
fn readme_example_runs_as_printed() -> Result<(), quadric_core::AlgebraError> {
    // the even-rank similitude ring of rank 4
    let even = make_ring(RingFamily::BGOEven, 4)?;
    let a1 = Polynomial::var(&even, VarKey::a(1))?;
    let a3 = Polynomial::var(&even, VarKey::a(3))?;
    let b4 = Polynomial::var(&even, VarKey::b(4))?;
    let b8 = Polynomial::var(&even, VarKey::b(8))?;
    let d12 = Polynomial::var(&even, VarKey::dt(&[1, 2]))?;

    // the defining relation holds in the quotient
    let lhs = &d12 * &d12;
    let rhs = &(&(&a1 * &a1) * &b8) + &(&(&a3 * &a3) * &b4);
    assert!(eq_go_even(&lhs, &rhs)?);

    // the connecting boundary lands one rank down
    let boundary = boundary_even_to_odd(&(&(&a1 * &a3) + &b4), true)?;
    assert_eq!(boundary.to_string(), "wh3");
    Ok(())
}
