//! Enumerates the irreducible Z₊-modules over the sl(2) fusion rings at levels 1 and 2 within
//! the default search bounds, marking the based ones.

use zplus::enumerate::{enumerate_with, SearchBounds, DEFAULT_NODE_BUDGET};
use zplus::module::is_based;
use zplus::sl2::{fusion_ring, Sl2Level};

fn main() -> Result<(), zplus::error::Error> {
    for l in [1, 2] {
        let ring = fusion_ring(Sl2Level::new(l)?);
        let bounds = SearchBounds::from_ring(&ring)?;
        let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
        let modules = enumerate_with(&ring, bounds, DEFAULT_NODE_BUDGET, jobs)?;
        println!("level {l}: bounds rank <= {}, entries <= {}", bounds.max_rank, bounds.max_entry);
        for m in &modules {
            let tag = if is_based(&ring, m)? { "based" } else { "not based" };
            println!("  rank {} ({tag}), M_1 = {:?}", m.module_rank(), m.matrix(1).to_i64_rows().unwrap_or_default());
        }
    }
    Ok(())
}
