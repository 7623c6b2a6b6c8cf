//! Finds every connected graph with norm below 2 up to six vertices by brute force and
//! recognises it, then prints Coxeter data for the named types.

use zplus::dynkin::{build, coxeter_exponents, coxeter_number, enumerate_norm_lt_2, recognize, DynkinType};

fn main() -> Result<(), zplus::error::Error> {
    let found = enumerate_norm_lt_2(6);
    let mut names = Vec::new();
    for g in &found {
        names.push(recognize(g)?.map_or("unknown".into(), |t| t.to_string()));
    }
    println!("{} graphs with norm < 2 on at most 6 vertices: {}", found.len(), names.join(" "));

    for name in ["A5", "D6", "E6", "E7", "E8", "T4"] {
        let t: DynkinType = name.parse()?;
        let g = build(t)?;
        println!(
            "{t}: {} vertices, h = {}, exponents {:?}",
            g.size(),
            coxeter_number(t),
            coxeter_exponents(t)?
        );
    }
    Ok(())
}
