//! Automorphism counts of special stable curves against the Hurwitz bound.

use cyclic_covers::sing_stable::aut_bounds;
use cyclic_covers::Result;

fn main() -> Result<()> {
    for g in [2, 3, 5, 10, 20] {
        let b = aut_bounds(g)?;
        println!(
            "g={g:<3} 2^g={:<8} 2g*6^g={:<28} 84(g-1)={}",
            b.generic_lower, b.special_config, b.hurwitz_smooth
        );
    }
    Ok(())
}
