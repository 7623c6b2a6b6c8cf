//! Solves for the physical modular invariants of sl(2) at every level up to 28 and matches
//! each against the NIM-rep it comes from.

use zplus::minv::{check_claims, commutant_lattice, describe_blocks, enumerate_invariants};
use zplus::sl2::{classify_nimreps, module_category_exists, nimrep_from_graph, Sl2Level};

fn main() -> Result<(), zplus::error::Error> {
    for l in 1..=28 {
        let level = Sl2Level::new(l)?;
        let rank = commutant_lattice(level).rank();
        let invariants = enumerate_invariants(level, 4)?;
        println!("level {l}: commutant rank {rank}, {} invariant(s)", invariants.len());
        for inv in &invariants {
            let partner = classify_nimreps(level).into_iter().find_map(|t| {
                if !module_category_exists(t).exists {
                    return None;
                }
                let g = zplus::dynkin::build(t).ok()?;
                let m = nimrep_from_graph(&g, level).ok()?.into_inner();
                let r = check_claims(inv, &m).ok()?;
                (r.trace_ok && r.exponents_ok).then_some(t)
            });
            let partner = partner.map_or("?".to_string(), |t| t.to_string());
            println!("  {partner:4} {}", describe_blocks(inv));
        }
    }
    Ok(())
}
