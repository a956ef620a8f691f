//! Compatible pairs from a subnormal series.

use qlocal::catalog::{cyclic, dihedral, symmetric};
use qlocal::compat::subnormal_series_witness;
use qlocal::PermGroup;

fn main() -> qlocal::Result<()> {
    let series = [
        ("C3 < S3", vec![PermGroup::from_cycle_strings(3, &["(0 1 2)"])?, symmetric(3)]),
        ("C2 < C4", vec![PermGroup::from_cycle_strings(4, &["(0 2)(1 3)"])?, cyclic(4)]),
        (
            "C2 < V4 < D8",
            vec![
                PermGroup::from_cycle_strings(4, &["(0 2)(1 3)"])?,
                PermGroup::from_cycle_strings(4, &["(0 2)(1 3)", "(1 3)"])?,
                dihedral(4),
            ],
        ),
    ];
    for (name, s) in &series {
        let w = subnormal_series_witness(s)?;
        println!(
            "{name}: |H| = {}, [H/A] = {}, [H/B] = {}, predicted {}, verified {}",
            w.problem.order(),
            w.quotient_minus,
            w.quotient_plus,
            w.predicted,
            w.verified
        );
    }
    Ok(())
}
