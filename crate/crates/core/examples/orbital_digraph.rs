//! Orbital digraphs, local actions, the stabilizer series and DOT output.

use qlocal::catalog::named;
use qlocal::digraph::{local_action, orbital_digraph, stabilizer_series, strongly_connected, Direction};
use qlocal::structure::simple_sections;

fn main() -> qlocal::Result<()> {
    let g = named("PSL(2,7)")?;
    for v in [1, 2] {
        let d = orbital_digraph(&g, 0, v)?;
        let out = local_action(&d, 0, Direction::Out)?;
        let inn = local_action(&d, 0, Direction::In)?;
        println!("orbital of (0,{v}): {} arcs, strongly connected {}", d.arcs.len(), strongly_connected(&d).strongly_connected);
        for (label, r) in [("out", &out), ("in", &inn)] {
            println!(
                "  {label}-local action: degree {}, order {}, {} orbits, sections {:?}",
                r.induced_group.degree(),
                r.induced_group.order(),
                r.induced_group.orbits().len(),
                simple_sections(&r.induced_group)?.names()
            );
        }
        let s = stabilizer_series(&d)?;
        println!("  stabilizer series of length {}, verified {}", s.steps.len(), s.verified);
    }
    let d = orbital_digraph(&g, 0, 1)?;
    print!("{}", d.to_dot());
    Ok(())
}
