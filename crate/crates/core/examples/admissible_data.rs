//! Admissible branching data and their loci for a few small genera.

use cyclic_covers::branching::{enumerate_admissible, locus};
use cyclic_covers::Result;

fn main() -> Result<()> {
    for g in 2..=4 {
        for d in [2, 3, 5, 7] {
            for (datum, h) in enumerate_admissible(g, d)? {
                let l = locus(g, &datum)?;
                println!("{:<24} h={h} dim={} codim={}", l.label(), l.dim, l.codim);
            }
        }
    }
    Ok(())
}
