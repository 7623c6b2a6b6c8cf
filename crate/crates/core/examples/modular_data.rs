//! Prints the rescaled S matrix and T classes of sl(2) at level 2 as exact cyclotomic numbers,
//! and checks unitarity of Ŝ up to a rational scalar.

use zplus::cyclotomic::CyclotomicNumber;
use zplus::sl2::{modular_data, Sl2Level};

fn main() -> Result<(), zplus::error::Error> {
    let md = modular_data(Sl2Level::new(2)?);
    println!("T classes: {:?}", md.t_class);
    for row in &md.s_hat {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }

    let n = md.s_hat.len();
    for i in 0..n {
        for j in 0..n {
            let mut acc = CyclotomicNumber::zero();
            for k in 0..n {
                acc = &acc + &(&md.s_hat[i][k] * &md.s_hat[j][k].conjugate());
            }
            let kind = if acc.is_zero() { "0" } else if acc.is_rational() { "rational" } else { "irrational" };
            print!("{kind:>9}");
        }
        println!();
    }
    Ok(())
}
