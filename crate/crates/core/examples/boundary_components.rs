//! Boundary components of the singular locus of the compactified moduli space.

use cyclic_covers::sing_stable::boundary_scan;
use cyclic_covers::Result;

fn main() -> Result<()> {
    let g = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let (components, notices) = boundary_scan(g, 2 * g + 1)?;
    for c in &components {
        println!(
            "d={} dim={} codim={} {:?} {}",
            c.d, c.dim, c.codim, c.flags, c.graph
        );
    }
    println!("{} components", components.len());
    for n in notices {
        println!("note: {n}");
    }
    Ok(())
}
