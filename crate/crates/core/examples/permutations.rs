//! Permutations, stabilizer chains, membership and orbits.

use qlocal::catalog::named;
use qlocal::{PermGroup, Permutation};

fn main() -> qlocal::Result<()> {
    let a = Permutation::parse("(0 1 2)(3 4)", Some(6))?;
    let b = Permutation::parse("(0 5)", None)?.extend(6);
    println!("a = {a}, b = {b}");
    println!("a then b = {}", a.compose(&b));
    println!("a^b = {}, order of a = {}", a.conjugate_by(&b), a.order());

    let g = named("PSL(2,7)")?;
    let chain = g.chain();
    println!("PSL(2,7) on {} points: order {}", g.degree(), g.order());
    println!("base {:?}, basic orbit sizes {:?}", chain.base(), chain.orbit_sizes());

    let x = g.generators()[0].compose(&g.generators()[1]);
    let odd = Permutation::parse("(0 1)", Some(8))?;
    println!("product of generators is a member: {}", g.contains(&x));
    println!("(0 1) is a member: {}", g.contains(&odd));

    let h = PermGroup::from_cycle_strings(6, &["(0 1)(2 3)", "(4 5)"])?;
    println!("orbits of {h:?}: {:?}", h.orbits());
    println!("point stabilizer of 0 in PSL(2,7) has order {}", g.stabilizer(0)?.order());
    Ok(())
}
