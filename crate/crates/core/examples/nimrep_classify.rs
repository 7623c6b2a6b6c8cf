//! Lists the NIM-representations of the sl(2) fusion ring for each level up to 30, with the
//! module category existence flag.

use zplus::sl2::{classify_nimreps, module_category_exists, Sl2Level};

fn main() -> Result<(), zplus::error::Error> {
    for l in 1..=30 {
        let types = classify_nimreps(Sl2Level::new(l)?);
        let names: Vec<String> = types
            .iter()
            .map(|t| {
                let mark = if module_category_exists(*t).exists { "" } else { "*" };
                format!("{t}{mark}")
            })
            .collect();
        println!("l = {l:2}: {}", names.join(" "));
    }
    println!("(* = NIM-rep without a module category)");
    Ok(())
}
