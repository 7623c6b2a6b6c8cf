//! Graded dimensions of essential paths on the E6 graph at level 10.

use zplus::dynkin::build;
use zplus::sl2::{essential_path_dims, Sl2Level};

fn main() -> Result<(), zplus::error::Error> {
    let g = build("E6".parse()?)?;
    let paths = essential_path_dims(&g, Sl2Level::new(10)?)?;
    for (i, total) in paths.grade_totals.iter().enumerate() {
        println!("grade {i:2}: {total}");
    }
    println!("total: {}", paths.total);
    Ok(())
}
