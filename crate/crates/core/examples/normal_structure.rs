//! Composition factors, socle, simple sections and simple quotients.

use qlocal::catalog::{direct_product, named, regular, symmetric};
use qlocal::structure::{
    composition_multiset, minimal_normal_subgroups, simple_quotients, simple_sections, socle, SearchBudget,
};

fn main() -> qlocal::Result<()> {
    let budget = SearchBudget::default();
    let groups = [
        ("S4", symmetric(4)),
        ("AGL(3,2)", named("AGL(3,2)")?),
        ("S5 x S3", direct_product(&[symmetric(5), symmetric(3)])?),
        ("SL(2,5) regular", regular(&named("SL(2,5)")?)?),
        ("S5 regular", regular(&symmetric(5))?),
    ];
    for (name, g) in &groups {
        let mins = minimal_normal_subgroups(g, &budget)?;
        let (soc, _) = socle(g, &budget)?;
        let q = simple_quotients(g, &budget)?;
        println!("{name} (order {})", g.order());
        println!("  composition factors {}", composition_multiset(g)?);
        println!(
            "  minimal normal subgroups of orders {:?}, socle order {}",
            mins.subgroups.iter().map(|w| w.subgroup.order()).collect::<Vec<_>>(),
            soc.order()
        );
        println!("  simple sections {:?}", simple_sections(g)?.names());
        println!("  simple quotients {:?}", q.ids.iter().map(|t| t.to_string()).collect::<Vec<_>>());
    }
    Ok(())
}
