//! Eigensheaves of `w^4 = f` over a surface with Picard group `Z + Z/2`, with
//! all branching at residue 2. The cover is irreducible exactly when the branch
//! class carries the torsion part.

use cyclic_covers::cover_algebra::{is_irreducible, l_chi, BranchAssignment};
use cyclic_covers::picard::PicardModel;
use cyclic_covers::Result;

fn main() -> Result<()> {
    let pic = PicardModel::new(1, vec![2])?;
    let l = pic.class(vec![1], vec![0])?;
    for twist in [0, 1] {
        let branch = pic.class(vec![2], vec![twist])?;
        let divisors = [(2, [("B".to_string(), branch.clone())].into())].into();
        let ba = BranchAssignment::new(4, pic.clone(), divisors, l.clone())?;
        println!("B = {:?}", branch);
        for chi in 0..4 {
            println!("  L_{chi} = {:?}", l_chi(&ba, chi)?);
        }
        let w = is_irreducible(&ba);
        println!("  m = {}, irreducible = {}", w.m, w.irreducible);
    }
    Ok(())
}
