//! Components of the singular locus of `M_g` and the loci discarded on the way.

use cyclic_covers::sing_smooth::decompose_sing;
use cyclic_covers::Result;

fn main() -> Result<()> {
    let g = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let report = decompose_sing(g)?;
    println!("genus {g}: {} components", report.components.len());
    for r in &report.components {
        println!("  {} dim {}", r.locus.label(), r.locus.dim);
    }
    for r in &report.redundant {
        let c = r.container.as_ref().unwrap();
        println!(
            "  redundant {} ({:?}) inside dim {}",
            r.locus.label(),
            r.case_tag.unwrap(),
            c.dim
        );
    }
    for r in report.excluded.iter().chain(&report.manual_review) {
        println!("  {:?} {}", r.verdict, r.locus.label());
    }
    Ok(())
}
