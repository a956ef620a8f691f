//! A quasiprimitive group next to a quasiprimitive quotient of the same degree.

use qlocal::catalog::{alternating, cyclic, holomorph_sym, named, wreath_product_action};
use qlocal::qp::quotient_pair;
use qlocal::structure::SearchBudget;

fn main() -> qlocal::Result<()> {
    let budget = SearchBudget::default();
    let fam = holomorph_sym(&alternating(5), 1)?;
    let agl = named("AGL(3,2)")?;
    let gl = named("AGammaL(1,8)")?;
    let cases = [
        ("holomorph of A5", fam.h, fam.h_plus),
        ("AGL(3,2)", agl.clone(), gl.clone()),
        ("AGL(3,2) wr C2", wreath_product_action(&agl, &cyclic(2))?, wreath_product_action(&gl, &cyclic(2))?),
    ];
    for (name, g, k) in cases {
        let q = quotient_pair(&g, &k, &budget)?;
        println!(
            "{name}: degree {}, kernel order {}, types ({}, {}), allowed {}",
            q.degree, q.kernel_order, q.g.qp_type, q.h.qp_type, q.allowed
        );
    }
    Ok(())
}
