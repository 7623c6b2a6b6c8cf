//! Counts module categories and fiber functors over Rep(G) for the small groups where both
//! counts are in range.

use zplus::repg::{builtin, builtin_names, fiber_functor_count, module_category_count, subgroup_classes};

fn main() -> Result<(), zplus::error::Error> {
    for name in builtin_names() {
        let g = builtin(name)?;
        let classes = subgroup_classes(&g).len();
        let modcats = module_category_count(&g).map_or("-".into(), |n| n.to_string());
        let fibers = fiber_functor_count(&g).map_or("-".into(), |n| n.to_string());
        println!("{name:10} |G| = {:2}  classes {classes:2}  modcats {modcats:>3}  fiber functors {fibers:>2}", g.order());
    }
    Ok(())
}
