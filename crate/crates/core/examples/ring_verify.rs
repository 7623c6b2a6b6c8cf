//! Checks the axioms of a few small Z₊-rings and finds their based structure.

use num_bigint::BigInt;
use zplus::ring::ZPlusRing;
use zplus::sl2::{fusion_ring, Sl2Level};

fn report(name: &str, ring: &ZPlusRing) -> Result<(), zplus::error::Error> {
    let violations = ring.verify();
    if !violations.is_empty() {
        println!("{name}: {} violation(s), first: {}", violations.len(), violations[0]);
        return Ok(());
    }
    match ring.find_based_structure()? {
        Some(inv) => println!("{name}: based, involution {inv:?}, bound {}", ring.prop1_bound()),
        None => println!("{name}: valid but not based"),
    }
    Ok(())
}

fn main() -> Result<(), zplus::error::Error> {
    report("Z", &ZPlusRing::integers())?;
    report("Z[C4]", &ZPlusRing::cyclic_group_ring(4))?;
    for l in 1..=3 {
        report(&format!("sl2 level {l}"), &fusion_ring(Sl2Level::new(l)?))?;
    }

    // x² = 1 + x, but with the unit written as 2·1, breaking the unit axiom.
    let n = |k: i64| BigInt::from(k);
    let broken = ZPlusRing::from_constants(
        vec![vec![vec![n(2), n(0)], vec![n(0), n(1)]], vec![vec![n(0), n(1)], vec![n(1), n(1)]]],
        vec![0],
    )?;
    report("broken Fibonacci", &broken)?;
    Ok(())
}
