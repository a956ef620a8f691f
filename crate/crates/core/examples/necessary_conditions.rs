//! Conditions every compatible pair meets, and a pair that fails them.

use qlocal::catalog::{alternating, cyclic, direct_product, named, regular, symmetric};
use qlocal::compat::necessary_compat_check;
use qlocal::structure::SearchBudget;

fn main() -> qlocal::Result<()> {
    let budget = SearchBudget::default();
    let sl = regular(&named("SL(2,5)")?)?;
    let pairs = [
        ("A5 x C2 vs SL(2,5)", regular(&direct_product(&[alternating(5), cyclic(2)])?)?, sl.clone()),
        ("SL(2,5) vs S5", sl, regular(&symmetric(5))?),
    ];
    for (name, l, r) in pairs {
        let rep = necessary_compat_check(&l, &r, &budget)?;
        println!("{name}: passes {}, certified incompatible {}", rep.passes, rep.certified_incompatible);
        if let Some(c) = &rep.common_simple_quotient {
            println!("  common simple quotient: {} ({})", c.holds, c.evidence);
        }
    }
    Ok(())
}
