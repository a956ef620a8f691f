//! Isomorphic normal subgroups give a compatible pair of regular groups.

use qlocal::catalog::{alternating, direct_product, symmetric};
use qlocal::compat::{regular_pair_witness, SearchOptions};
use qlocal::structure::composition_multiset;
use qlocal::PermGroup;

fn main() -> qlocal::Result<()> {
    let h = direct_product(&[alternating(5), symmetric(5)])?;
    let a = direct_product(&[alternating(5), PermGroup::trivial(5)])?;
    let b = direct_product(&[PermGroup::trivial(5), alternating(5)])?;
    let pairs: Vec<_> = alternating(5)
        .generators()
        .iter()
        .map(|x| (x.extend(10), x.shifted(5, 10)))
        .collect();
    let (w, checks) = regular_pair_witness(&h, &a, &b, &pairs, &SearchOptions::default())?;
    println!("H = A5 x S5, A = A5 x 1, B = 1 x A5");
    println!("witness verified: {}", w.verified());
    println!(
        "L- order {} factors {}, L+ order {} factors {}",
        w.l_minus.image.order(),
        composition_multiset(&w.l_minus.image)?,
        w.l_plus.image.order(),
        composition_multiset(&w.l_plus.image)?
    );
    println!("both regular: {}", checks.l_minus_regular && checks.l_plus_regular);
    Ok(())
}
