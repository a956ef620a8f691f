//! The bundled groups and the spec format for building new ones.

use qlocal::catalog::{make_group, named_entries, GroupSpec};

fn main() -> qlocal::Result<()> {
    for e in named_entries() {
        println!("{:<14} degree {:>3}  order {}", e.name, e.degree, e.order);
    }
    let spec = GroupSpec::parse(
        r#"{"constructor": "wreath-product-action",
            "base": {"constructor": "named", "name": "PSL(2,7)"},
            "top": {"constructor": "generators", "degree": 2, "generators": ["(0 1)"]}}"#,
    )?;
    let g = make_group(&spec)?;
    println!("PSL(2,7) wr C2 in product action: degree {}, order {}", g.degree(), g.order());
    let r = make_group(&GroupSpec::parse("catalog:A5:regular")?)?;
    println!("A5 regular: degree {}, order {}", r.degree(), r.order());
    Ok(())
}
