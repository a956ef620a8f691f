//! Permutation isomorphism with certificates.

use qlocal::catalog::{named, regular, symmetric};
use qlocal::iso::{perm_isomorphic, DEFAULT_NODE_BUDGET};
use qlocal::Permutation;

fn main() -> qlocal::Result<()> {
    let g = named("PSL(2,7)")?;
    let x = Permutation::parse("(0 3 5)(1 7)", Some(8))?;
    let c = perm_isomorphic(&g, &g.conjugate(&x)?, DEFAULT_NODE_BUDGET);
    println!("PSL(2,7) vs a conjugate: {:?}, certificate checks: {}", c.verdict, c.verify());
    if let Some(b) = &c.point_bijection {
        println!("  point map {b:?}");
    }
    // Same abstract group, different actions.
    let agl = named("AGammaL(1,8)")?;
    let c = perm_isomorphic(&g, &agl, DEFAULT_NODE_BUDGET);
    println!("PSL(2,7) vs AGammaL(1,8): {:?} ({})", c.verdict, c.reason);
    let s3 = symmetric(3);
    let c = perm_isomorphic(&regular(&s3)?, &qlocal::catalog::cyclic(6), DEFAULT_NODE_BUDGET);
    println!("regular S3 vs C6: {:?} ({})", c.verdict, c.reason);
    Ok(())
}
